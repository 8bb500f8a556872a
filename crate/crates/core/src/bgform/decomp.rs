use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::Value;

use crate::arith::{gcd, lcm};
use crate::chars::{conrey_character, DirichletCharacter};
use crate::error::{Error, Result};
use crate::ring::{Cyclotomic, PrimeField};

/// An exact scalar of a decomposition matrix.
#[derive(Debug, Clone, PartialEq)]
pub enum ExactScalar {
    Rational(BigRational),
    /// sum c_i z^i with z = e(1/order).
    Cyclotomic { order: u64, coeffs: Vec<BigRational> },
}

impl ExactScalar {
    pub fn order(&self) -> u64 {
        match self {
            ExactScalar::Rational(_) => 1,
            ExactScalar::Cyclotomic { order, .. } => *order,
        }
    }

    /// Image in F_q given the image of e(1/order).
    pub fn reduce(&self, field: &PrimeField, zeta: u64) -> Result<u64> {
        match self {
            ExactScalar::Rational(r) => field.from_rational(r),
            ExactScalar::Cyclotomic { order, coeffs } => {
                Cyclotomic::new(*order)?.reduce_mod(coeffs, field, zeta)
            }
        }
    }

    /// Element of Q(zeta_L) for a multiple L of the order.
    pub fn to_cyclotomic(&self, target: &Cyclotomic) -> Result<Vec<BigRational>> {
        match self {
            ExactScalar::Rational(r) => Ok(target.from_rational(r)),
            ExactScalar::Cyclotomic { order, coeffs } => {
                let own = Cyclotomic::new(*order)?;
                own.embed_into(&own.from_coeffs(coeffs), target)
            }
        }
    }
}

/// One product E_l^{phi_i,phi_j}|B_d * E_{k-l}^{phi_i2,phi_j2}|B_d2, with
/// 0-based character indices. When l = k the second factor is absent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EisProduct {
    pub l: u32,
    pub i: usize,
    pub j: usize,
    pub i2: usize,
    pub j2: usize,
    pub d: u64,
    pub d2: u64,
}

/// Power basis 1, y, ..., y^(d-1) of Z[y] with y a root of `minpoly`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basis {
    /// Ascending coefficients of the monic minimal polynomial.
    pub minpoly: Vec<i64>,
    pub names: Vec<String>,
}

impl Basis {
    pub fn dim(&self) -> usize {
        self.minpoly.len() - 1
    }
}

/// A cusp form written as a linear combination of products of Eisenstein
/// series. Column j of `matrix` holds the basis coordinates of the scalar
/// multiplying product j.
#[derive(Debug, Clone, PartialEq)]
pub struct BGDecomposition {
    pub name: Option<String>,
    pub weight: u32,
    pub level: u64,
    pub chars: Vec<(u64, u64)>,
    pub products: Vec<EisProduct>,
    pub basis: Basis,
    pub matrix: Vec<Vec<ExactScalar>>,
    /// a_1..a_t as basis coordinates.
    pub header: Vec<Vec<i64>>,
    pub nebentypus: Option<(u64, u64)>,
}

fn perr<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse(msg.into()))
}

fn as_u64(v: &Value, what: &str) -> Result<u64> {
    v.as_u64()
        .ok_or_else(|| Error::Parse(format!("{what}: expected a non-negative integer")))
}

fn as_i64(v: &Value, what: &str) -> Result<i64> {
    v.as_i64()
        .ok_or_else(|| Error::Parse(format!("{what}: expected an integer")))
}

/// "p/q", "p", or a JSON integer.
pub fn parse_rational(v: &Value) -> Result<BigRational> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(BigRational::from_integer(BigInt::from(i))),
            None => perr(format!("rational {n} is not an integer")),
        },
        Value::String(s) => parse_rational_str(s),
        _ => perr(format!("expected a rational, got {v}")),
    }
}

pub fn parse_rational_str(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("malformed rational {s:?}"));
    match s.split_once('/') {
        Some((a, b)) => {
            let num: BigInt = a.trim().parse().map_err(|_| bad())?;
            let den: BigInt = b.trim().parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(num, den))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn parse_scalar(v: &Value) -> Result<ExactScalar> {
    if let Value::Object(o) = v {
        let order = as_u64(o.get("zeta_order").unwrap_or(&Value::Null), "zeta_order")?;
        if order == 0 {
            return perr("zeta_order must be positive");
        }
        let Some(Value::Array(cs)) = o.get("exponent_poly") else {
            return perr("cyclotomic scalar needs exponent_poly");
        };
        let coeffs = cs.iter().map(parse_rational).collect::<Result<Vec<_>>>()?;
        return Ok(ExactScalar::Cyclotomic { order, coeffs });
    }
    parse_rational(v).map(ExactScalar::Rational)
}

fn pair(v: &Value, what: &str) -> Result<(u64, u64)> {
    match v.as_array().map(Vec::as_slice) {
        Some([a, b]) => Ok((as_u64(a, what)?, as_u64(b, what)?)),
        _ => perr(format!("{what}: expected [modulus, index]")),
    }
}

impl BGDecomposition {
    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("decomposition: {e}")))?;
        let field = |k: &str| v.get(k).ok_or_else(|| Error::Parse(format!("missing field {k:?}")));

        let weight = as_u64(field("weight")?, "weight")? as u32;
        let level = as_u64(field("level")?, "level")?;
        let chars = field("chars")?
            .as_array()
            .ok_or_else(|| Error::Parse("chars must be a list".into()))?
            .iter()
            .map(|c| pair(c, "chars"))
            .collect::<Result<Vec<_>>>()?;
        let mut products = Vec::new();
        for p in field("products")?
            .as_array()
            .ok_or_else(|| Error::Parse("products must be a list".into()))?
        {
            let t = p
                .as_array()
                .filter(|t| t.len() == 7)
                .ok_or_else(|| Error::Parse("product tuples have 7 entries".into()))?;
            let u = t
                .iter()
                .map(|x| as_u64(x, "product"))
                .collect::<Result<Vec<_>>>()?;
            let idx = |x: u64| -> Result<usize> {
                if x == 0 || x as usize > chars.len() {
                    return perr(format!("character index {x} out of range"));
                }
                Ok(x as usize - 1)
            };
            products.push(EisProduct {
                l: u[0] as u32,
                i: idx(u[1])?,
                j: idx(u[2])?,
                i2: idx(u[3])?,
                j2: idx(u[4])?,
                d: u[5],
                d2: u[6],
            });
        }
        let basis_v = field("basis")?;
        let minpoly = basis_v
            .get("minpoly")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("basis.minpoly missing".into()))?
            .iter()
            .map(|c| as_i64(c, "minpoly"))
            .collect::<Result<Vec<_>>>()?;
        let names = match basis_v.get("names").and_then(Value::as_array) {
            Some(ns) => ns
                .iter()
                .map(|n| n.as_str().map(str::to_owned))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::Parse("basis.names must be strings".into()))?,
            None => Vec::new(),
        };
        let matrix = field("matrix")?
            .as_array()
            .ok_or_else(|| Error::Parse("matrix must be a list of rows".into()))?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::Parse("matrix rows must be lists".into()))?
                    .iter()
                    .map(parse_scalar)
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let header_v = field("header")?;
        let header = header_v
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("header.coeffs missing".into()))?
            .iter()
            .map(|c| {
                c.as_array()
                    .ok_or_else(|| Error::Parse("header entries are coordinate lists".into()))?
                    .iter()
                    .map(|x| as_i64(x, "header"))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(len) = header_v.get("length") {
            if as_u64(len, "header.length")? as usize != header.len() {
                return perr("header.length disagrees with header.coeffs");
            }
        }
        let nebentypus = match v.get("nebentypus") {
            None | Some(Value::Null) => None,
            Some(n) => Some(pair(n, "nebentypus")?),
        };
        let dec = BGDecomposition {
            name: v.get("name").and_then(Value::as_str).map(str::to_owned),
            weight,
            level,
            chars,
            products,
            basis: Basis { minpoly, names },
            matrix,
            header,
            nebentypus,
        };
        dec.validate()?;
        Ok(dec)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Parse(m));
        if self.weight == 0 {
            return bad("weight must be positive".into());
        }
        if self.basis.minpoly.len() < 2 || *self.basis.minpoly.last().unwrap() != 1 {
            return bad("basis.minpoly must be monic of degree >= 1".into());
        }
        let d = self.basis.dim();
        if !self.basis.names.is_empty() && self.basis.names.len() != d {
            return bad("basis.names has the wrong length".into());
        }
        for &(m, a) in &self.chars {
            if m == 0 || gcd(a % m, m) != 1 {
                return bad(format!("character [{m}, {a}] is not a Conrey label"));
            }
        }
        for p in &self.products {
            if p.l == 0 || p.l > self.weight || p.d == 0 || p.d2 == 0 {
                return bad(format!("invalid product {p:?}"));
            }
        }
        if self.products.is_empty() {
            return bad("decomposition has no products".into());
        }
        if self.matrix.len() != d || self.matrix.iter().any(|r| r.len() != self.products.len()) {
            return bad(format!(
                "matrix must be {d} x {} (basis dimension x products)",
                self.products.len()
            ));
        }
        if self.header.is_empty() || self.header.iter().any(|c| c.len() != d) {
            return bad("header needs at least a_1, each with one coordinate per basis element".into());
        }
        let mut one = vec![0; d];
        one[0] = 1;
        if self.header[0] != one {
            return bad("header must start with a_1 = 1".into());
        }
        if let Some((m, a)) = self.nebentypus {
            if m == 0 || gcd(a % m, m) != 1 {
                return bad("nebentypus is not a Conrey label".into());
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn characters(&self) -> Result<Vec<DirichletCharacter>> {
        self.chars
            .iter()
            .map(|&(m, a)| conrey_character(m, a))
            .collect()
    }

    /// lcm of every character order and cyclotomic scalar order.
    pub fn root_order(&self) -> Result<u64> {
        let mut l = 1;
        for c in self.characters()? {
            l = lcm(l, c.order());
        }
        for row in &self.matrix {
            for s in row {
                l = lcm(l, s.order());
            }
        }
        Ok(l)
    }

    /// Whether every matrix entry is rational.
    pub fn is_rational(&self) -> bool {
        self.matrix
            .iter()
            .flatten()
            .all(|s| matches!(s, ExactScalar::Rational(_)))
    }

    /// The identity matrix entry check used by tests: an entry is exactly 1.
    pub fn entry_is_one(&self, i: usize, j: usize) -> bool {
        matches!(&self.matrix[i][j], ExactScalar::Rational(r) if r.is_one())
    }
}
