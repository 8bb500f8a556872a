//! Coefficient files: one record per index, as text or fixed-width binary.
//!
//! Text: `index v_1 ... v_w` per line, single spaces, `\n` endings.
//!
//! Binary (all little-endian): a 16-byte header
//! `b"LSER"`, version `u16 = 1`, width `u16`, record count `u64`,
//! followed by records of `index: u64` and `width` values `i64`.

use std::io::{BufRead, Read, Write};

use crate::error::{Error, Result};

pub const MAGIC: [u8; 4] = *b"LSER";
pub const VERSION: u16 = 1;
pub const HEADER_LEN: usize = 16;

/// Integer records sharing one width.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CoeffTable {
    pub width: usize,
    pub indices: Vec<u64>,
    /// Row-major, `values[t * width + i]`.
    pub values: Vec<i64>,
}

impl CoeffTable {
    pub fn new(width: usize) -> Self {
        CoeffTable {
            width,
            ..Default::default()
        }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn push(&mut self, index: u64, row: &[i64]) -> Result<()> {
        if row.len() != self.width {
            return Err(Error::InvalidArgument(format!(
                "record of width {} in a table of width {}",
                row.len(),
                self.width
            )));
        }
        self.indices.push(index);
        self.values.extend_from_slice(row);
        Ok(())
    }

    pub fn row(&self, t: usize) -> &[i64] {
        &self.values[t * self.width..(t + 1) * self.width]
    }
}

/// Writes `index v_1 ... v_w` lines for arbitrary displayable values.
pub fn write_text_line<W: Write, T: std::fmt::Display>(w: &mut W, index: u64, row: &[T]) -> Result<()> {
    write!(w, "{index}")?;
    for v in row {
        write!(w, " {v}")?;
    }
    w.write_all(b"\n")?;
    Ok(())
}

pub fn write_text<W: Write>(w: &mut W, table: &CoeffTable) -> Result<()> {
    for t in 0..table.len() {
        write_text_line(w, table.indices[t], table.row(t))?;
    }
    Ok(())
}

pub fn write_binary<W: Write>(w: &mut W, table: &CoeffTable) -> Result<()> {
    let width = u16::try_from(table.width)
        .map_err(|_| Error::Capacity(format!("record width {} exceeds u16", table.width)))?;
    w.write_all(&MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&width.to_le_bytes())?;
    w.write_all(&(table.len() as u64).to_le_bytes())?;
    for t in 0..table.len() {
        w.write_all(&table.indices[t].to_le_bytes())?;
        for v in table.row(t) {
            w.write_all(&v.to_le_bytes())?;
        }
    }
    Ok(())
}

pub fn read_text<R: BufRead>(r: R) -> Result<CoeffTable> {
    let mut table: Option<CoeffTable> = None;
    for (lineno, line) in r.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |what: &str| Error::Parse(format!("line {}: {what}", lineno + 1));
        let mut it = line.split_whitespace();
        let index: u64 = it.next().unwrap().parse().map_err(|_| bad("bad index"))?;
        let row = it
            .map(|s| s.parse::<i64>().map_err(|_| bad("non-integer value")))
            .collect::<Result<Vec<_>>>()?;
        let t = table.get_or_insert_with(|| CoeffTable::new(row.len()));
        if row.len() != t.width {
            return Err(bad("inconsistent record width"));
        }
        t.push(index, &row)?;
    }
    Ok(table.unwrap_or_default())
}

pub fn read_binary<R: Read>(mut r: R) -> Result<CoeffTable> {
    let mut head = [0u8; HEADER_LEN];
    r.read_exact(&mut head)
        .map_err(|_| Error::Parse("binary coefficient file shorter than its header".into()))?;
    if head[..4] != MAGIC {
        return Err(Error::Parse("bad magic in binary coefficient file".into()));
    }
    let version = u16::from_le_bytes([head[4], head[5]]);
    if version != VERSION {
        return Err(Error::Parse(format!("unsupported binary version {version}")));
    }
    let width = u16::from_le_bytes([head[6], head[7]]) as usize;
    let count = u64::from_le_bytes(head[8..16].try_into().unwrap());
    let mut table = CoeffTable::new(width);
    let mut buf = [0u8; 8];
    let mut row = vec![0i64; width];
    for _ in 0..count {
        r.read_exact(&mut buf)
            .map_err(|_| Error::Parse("truncated binary coefficient file".into()))?;
        let index = u64::from_le_bytes(buf);
        for v in row.iter_mut() {
            r.read_exact(&mut buf)
                .map_err(|_| Error::Parse("truncated binary coefficient file".into()))?;
            *v = i64::from_le_bytes(buf);
        }
        table.push(index, &row)?;
    }
    let mut rest = [0u8; 1];
    if r.read(&mut rest)? != 0 {
        return Err(Error::Parse("trailing bytes after the last record".into()));
    }
    Ok(table)
}

/// Reads either format, telling them apart by the magic bytes.
pub fn read_any(bytes: &[u8]) -> Result<CoeffTable> {
    if bytes.starts_with(&MAGIC) {
        read_binary(bytes)
    } else {
        read_text(bytes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> CoeffTable {
        let mut t = CoeffTable::new(2);
        t.push(2, &[-1, 1]).unwrap();
        t.push(3, &[i64::MIN, i64::MAX]).unwrap();
        t
    }

    #[test]
    fn text_round_trip() {
        let mut out = Vec::new();
        write_text(&mut out, &sample()).unwrap();
        assert!(String::from_utf8(out.clone()).unwrap().starts_with("2 -1 1\n3 "));
        assert_eq!(read_any(&out).unwrap(), sample());
    }

    #[test]
    fn binary_layout() {
        let mut out = Vec::new();
        write_binary(&mut out, &sample()).unwrap();
        assert_eq!(out.len(), HEADER_LEN + 2 * 24);
        assert_eq!(&out[..8], b"LSER\x01\x00\x02\x00");
        assert_eq!(&out[8..16], &2u64.to_le_bytes());
        assert_eq!(&out[16..24], &2u64.to_le_bytes());
        assert_eq!(&out[24..32], &(-1i64).to_le_bytes());
        assert_eq!(read_any(&out).unwrap(), sample());
        assert!(read_binary(&out[..out.len() - 1]).is_err());
    }
}
