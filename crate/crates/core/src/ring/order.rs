use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use super::Ring;
use crate::error::{invalid, Error, Result};

/// The order Z[y]/(f) for a monic integer polynomial f, elements as
/// coordinates on 1, y, ..., y^(d-1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumberOrder {
    /// Ascending coefficients of the monic defining polynomial.
    minpoly: Vec<BigInt>,
}

impl NumberOrder {
    pub fn new(minpoly: Vec<BigInt>) -> Result<Self> {
        if minpoly.len() < 2 || !minpoly.last().unwrap().is_one() {
            return invalid("defining polynomial must be monic of degree >= 1");
        }
        Ok(NumberOrder { minpoly })
    }

    pub fn from_i64_poly(minpoly: &[i64]) -> Result<Self> {
        Self::new(minpoly.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The ring Z itself, as Z[y]/(y).
    pub fn integers() -> Self {
        NumberOrder {
            minpoly: vec![BigInt::zero(), BigInt::one()],
        }
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn minpoly(&self) -> &[BigInt] {
        &self.minpoly
    }

    pub fn from_coords(&self, c: &[i64]) -> Vec<BigInt> {
        let mut v: Vec<BigInt> = c.iter().map(|&x| BigInt::from(x)).collect();
        v.resize(self.degree(), BigInt::zero());
        v
    }

    pub fn from_bigint(&self, v: BigInt) -> Vec<BigInt> {
        let mut e = vec![BigInt::zero(); self.degree()];
        e[0] = v;
        e
    }

    pub fn is_integer(&self, e: &[BigInt]) -> bool {
        e.iter().skip(1).all(|c| c.is_zero())
    }

    fn reduce(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        let d = self.degree();
        for i in (d..v.len()).rev() {
            let c = std::mem::take(&mut v[i]);
            if c.is_zero() {
                continue;
            }
            for j in 0..d {
                if !self.minpoly[j].is_zero() {
                    v[i - d + j] -= &c * &self.minpoly[j];
                }
            }
        }
        v.truncate(d);
        v
    }
}

impl Ring for NumberOrder {
    type Elem = Vec<BigInt>;

    fn name(&self) -> &'static str {
        "Z[y]"
    }
    fn zero(&self) -> Self::Elem {
        vec![BigInt::zero(); self.degree()]
    }
    fn one(&self) -> Self::Elem {
        self.from_bigint(BigInt::one())
    }
    fn from_i64(&self, v: i64) -> Self::Elem {
        self.from_bigint(BigInt::from(v))
    }
    fn from_u64_pow(&self, base: u64, exp: u32) -> Self::Elem {
        self.from_bigint(BigInt::from(base).pow(exp))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| -x).collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let d = self.degree();
        if d == 1 {
            return vec![&a[0] * &b[0]];
        }
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        self.reduce(prod)
    }
    fn div_small(&self, a: &Self::Elem, k: u64) -> Result<Self::Elem> {
        let kk = BigInt::from(k);
        let mut out = Vec::with_capacity(a.len());
        for x in a {
            let (q, r) = x.div_rem(&kk);
            if k == 0 || !r.is_zero() {
                return Err(Error::Divisibility { k, ring: "Z[y]" });
            }
            out.push(q);
        }
        Ok(out)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|x| x.is_zero())
    }
}
