use std::io::{BufWriter, Write};

use eulerprod::coeffio::{write_binary, write_text_line};
use eulerprod::CoeffTable;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::CliError;

/// Destination for coefficient records: streamed text lines, or a table
/// written in the binary layout once complete.
pub struct Sink<'a> {
    w: BufWriter<Box<dyn Write + 'a>>,
    table: Option<CoeffTable>,
}

impl<'a> Sink<'a> {
    pub fn new(w: Box<dyn Write + 'a>, binary: bool, width: usize) -> Self {
        Sink {
            w: BufWriter::new(w),
            table: binary.then(|| CoeffTable::new(width)),
        }
    }

    pub fn is_binary(&self) -> bool {
        self.table.is_some()
    }

    pub fn row_i64(&mut self, index: u64, row: &[i64]) -> Result<(), CliError> {
        match &mut self.table {
            Some(t) => t.push(index, row)?,
            None => write_text_line(&mut self.w, index, row)?,
        }
        Ok(())
    }

    pub fn row_rat(&mut self, index: u64, row: &[BigRational]) -> Result<(), CliError> {
        if self.table.is_none() {
            write_text_line(&mut self.w, index, row)?;
            return Ok(());
        }
        let ints = row
            .iter()
            .map(|x| {
                x.is_integer()
                    .then(|| x.to_integer().to_i64())
                    .flatten()
                    .ok_or_else(|| CliError::Usage(format!("coefficient {x} at index {index} is not a 64-bit integer; use text output")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.row_i64(index, &ints)
    }

    /// A `name=value` line; text mode only.
    pub fn metric(&mut self, name: &str, value: impl std::fmt::Display) -> Result<(), CliError> {
        if self.table.is_none() {
            writeln!(self.w, "{name}={value}").map_err(eulerprod::Error::from)?;
        }
        Ok(())
    }

    pub fn line(&mut self, text: &str) -> Result<(), CliError> {
        writeln!(self.w, "{text}").map_err(eulerprod::Error::from)?;
        Ok(())
    }

    pub fn finish(mut self) -> Result<(), CliError> {
        if let Some(t) = self.table.take() {
            write_binary(&mut self.w, &t)?;
        }
        self.w.flush().map_err(eulerprod::Error::from)?;
        Ok(())
    }
}
