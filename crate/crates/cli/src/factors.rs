//! Euler-factor files and `--override` arguments.
//!
//! A factor file is a JSON object:
//!
//! ```json
//! { "default": [1, -1], "primes": { "2": [1, 2, 2], "11": [1, -1] },
//!   "ramified": [11], "weight": 1 }
//! ```
//!
//! Each list holds the ascending coefficients 1, c_1, ..., c_d of F_p as
//! integers or rational strings. Primes without an entry use `default`.

use std::collections::BTreeMap;

use eulerprod::bgform::{parse_rational, parse_rational_str};
use eulerprod::{ArithmeticObject, FactorRepr, GoodFactor, Rationals};
use num_rational::BigRational;
use serde_json::Value;

use crate::CliError;

fn bad(path: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Usage(format!("{path}: {msg}"))
}

fn coeff_list(v: &Value, path: &str) -> Result<Vec<BigRational>, CliError> {
    let arr = v.as_array().ok_or_else(|| bad(path, "factor must be a list of coefficients"))?;
    Ok(arr.iter().map(parse_rational).collect::<eulerprod::Result<Vec<_>>>()?)
}

fn factor(c: &[BigRational]) -> Result<FactorRepr<BigRational>, CliError> {
    Ok(FactorRepr::from_coeffs(&Rationals, c)?)
}

/// The object described by a factor file, with explicit factors at every
/// prime below `n`.
pub fn load_object(path: &str, primes: &[u32]) -> Result<ArithmeticObject<BigRational>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| bad(path, e))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| bad(path, e))?;
    let obj = v.as_object().ok_or_else(|| bad(path, "expected a JSON object"))?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "default" | "primes" | "ramified" | "weight") {
            return Err(bad(path, format!("unknown field {key:?}")));
        }
    }
    let default = match obj.get("default") {
        Some(d) => Some(factor(&coeff_list(d, path)?)?),
        None => None,
    };
    let mut explicit = BTreeMap::new();
    if let Some(ps) = obj.get("primes") {
        let ps = ps.as_object().ok_or_else(|| bad(path, "\"primes\" must map primes to factors"))?;
        for (k, c) in ps {
            let p: u64 = k.parse().map_err(|_| bad(path, format!("bad prime key {k:?}")))?;
            explicit.insert(p, factor(&coeff_list(c, path)?)?);
        }
    }
    let ramified = match obj.get("ramified") {
        Some(r) => r
            .as_array()
            .and_then(|a| a.iter().map(Value::as_u64).collect::<Option<Vec<_>>>())
            .ok_or_else(|| bad(path, "\"ramified\" must list primes"))?,
        None => Vec::new(),
    };
    let weight = match obj.get("weight") {
        Some(w) => w
            .as_u64()
            .and_then(|w| u32::try_from(w).ok())
            .ok_or_else(|| bad(path, "\"weight\" must be a small non-negative integer"))?,
        None => 0,
    };

    let mut table = BTreeMap::new();
    for &p in primes {
        let p = p as u64;
        let f = match explicit.remove(&p) {
            Some(f) => f,
            None => default
                .clone()
                .ok_or_else(|| bad(path, format!("no factor at p={p} and no default")))?,
        };
        table.insert(p, f);
    }
    let degree = table.values().map(|f| f.degree).max().unwrap_or(0);
    Ok(ArithmeticObject {
        degree,
        weight,
        rule: GoodFactor::Table(table),
        ramified,
        overrides: BTreeMap::new(),
    })
}

/// `p=c0,c1,...` with ascending coefficients.
pub fn parse_override(s: &str) -> Result<(u64, FactorRepr<BigRational>), CliError> {
    let usage = || CliError::Usage(format!("override {s:?} must look like p=1,c1,c2"));
    let (p, cs) = s.split_once('=').ok_or_else(usage)?;
    let p: u64 = p.trim().parse().map_err(|_| usage())?;
    let c = cs
        .split(',')
        .map(parse_rational_str)
        .collect::<eulerprod::Result<Vec<_>>>()
        .map_err(|_| usage())?;
    Ok((p, factor(&c)?))
}

pub fn parse_overrides(list: &[String]) -> Result<BTreeMap<u64, FactorRepr<BigRational>>, CliError> {
    list.iter().map(|s| parse_override(s)).collect()
}
