use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use super::{PrimeField, Ring};
use crate::error::{invalid, Error, Result};

/// The cyclotomic field Q(zeta_o) with elements as coordinate vectors on
/// 1, z, ..., z^(phi(o)-1) where z = e(1/o).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cyclotomic {
    order: u64,
    /// Monic cyclotomic polynomial, ascending coefficients.
    modulus: Vec<i64>,
}

/// Integer polynomial of Phi_n, ascending.
pub fn cyclotomic_poly(n: u64) -> Vec<i64> {
    // x^n - 1 divided by Phi_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            num = div_exact(&num, &cyclotomic_poly(d));
        }
    }
    num
}

fn div_exact(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let mut quo = vec![0i64; a.len() - db];
    for i in (0..quo.len()).rev() {
        let c = rem[i + db];
        quo[i] = c;
        for (j, &bj) in b.iter().enumerate() {
            rem[i + j] -= c * bj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quo
}

impl Cyclotomic {
    pub fn new(order: u64) -> Result<Self> {
        if order == 0 || order > 100_000 {
            return invalid(format!("unsupported cyclotomic order {order}"));
        }
        Ok(Cyclotomic {
            order,
            modulus: cyclotomic_poly(order),
        })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Reduce an arbitrary-length coordinate vector modulo Phi_o.
    pub fn reduce(&self, mut v: Vec<BigRational>) -> Vec<BigRational> {
        let d = self.degree();
        for i in (d..v.len()).rev() {
            let c = std::mem::replace(&mut v[i], BigRational::zero());
            if c.is_zero() {
                continue;
            }
            for (j, &mj) in self.modulus.iter().enumerate().take(d) {
                if mj != 0 {
                    v[i - d + j] -= &c * BigRational::from_integer(BigInt::from(mj));
                }
            }
        }
        v.resize(d, BigRational::zero());
        v
    }

    pub fn from_rational(&self, r: &BigRational) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.degree()];
        v[0] = r.clone();
        v
    }

    /// Element from coordinates on powers of z (any length).
    pub fn from_coeffs(&self, coeffs: &[BigRational]) -> Vec<BigRational> {
        self.reduce(coeffs.to_vec())
    }

    /// z^t for any integer t.
    pub fn zeta_pow(&self, t: i64) -> Vec<BigRational> {
        let t = t.rem_euclid(self.order as i64) as usize;
        let mut v = vec![BigRational::zero(); t + 1];
        v[t] = BigRational::one();
        self.reduce(v)
    }

    /// Image in Q(zeta_L) for a multiple L of the order.
    pub fn embed_into(&self, e: &[BigRational], target: &Cyclotomic) -> Result<Vec<BigRational>> {
        if target.order % self.order != 0 {
            return invalid(format!(
                "Q(zeta_{}) does not contain Q(zeta_{})",
                target.order, self.order
            ));
        }
        let step = (target.order / self.order) as usize;
        let mut v = vec![BigRational::zero(); step * e.len().max(1)];
        for (i, c) in e.iter().enumerate() {
            v[i * step] = c.clone();
        }
        Ok(target.reduce(v))
    }

    /// Evaluate at a chosen image of z in F_q.
    pub fn reduce_mod(&self, e: &[BigRational], field: &PrimeField, zeta: u64) -> Result<u64> {
        let mut acc = field.zero();
        for c in e.iter().rev() {
            acc = field.mul(&acc, &zeta);
            acc = field.add(&acc, &field.from_rational(c)?);
        }
        Ok(acc)
    }

    pub fn is_rational(&self, e: &[BigRational]) -> bool {
        e.iter().skip(1).all(|c| c.is_zero())
    }

    pub fn format(&self, e: &[BigRational]) -> String {
        let mut s = String::new();
        for (i, c) in e.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !s.is_empty() {
                s.push_str(" + ");
            }
            match i {
                0 => write!(s, "{c}").unwrap(),
                1 => write!(s, "({c})*z").unwrap(),
                _ => write!(s, "({c})*z^{i}").unwrap(),
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

impl Ring for Cyclotomic {
    type Elem = Vec<BigRational>;

    fn name(&self) -> &'static str {
        "Q(zeta)"
    }
    fn zero(&self) -> Self::Elem {
        vec![BigRational::zero(); self.degree()]
    }
    fn one(&self) -> Self::Elem {
        self.from_rational(&BigRational::one())
    }
    fn from_i64(&self, v: i64) -> Self::Elem {
        self.from_rational(&BigRational::from_integer(BigInt::from(v)))
    }
    fn from_u64_pow(&self, base: u64, exp: u32) -> Self::Elem {
        self.from_rational(&BigRational::from_integer(BigInt::from(base).pow(exp)))
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
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        self.reduce(prod)
    }
    fn div_small(&self, a: &Self::Elem, k: u64) -> Result<Self::Elem> {
        if k == 0 {
            return Err(Error::Divisibility { k, ring: "Q(zeta)" });
        }
        let k = BigRational::from_integer(BigInt::from(k));
        Ok(a.iter().map(|x| x / &k).collect())
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|x| x.is_zero())
    }
}
