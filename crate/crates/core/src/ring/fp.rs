use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use super::Ring;
use crate::arith;
use crate::error::{invalid, Error, Result};

/// Prime field F_q for odd primes q < 2^63, elements kept in Montgomery form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeField {
    q: u64,
    /// -q^{-1} mod 2^64
    qinv_neg: u64,
    /// 2^128 mod q
    r2: u64,
    one: u64,
}

impl PrimeField {
    pub fn new(q: u64) -> Result<Self> {
        if q < 3 || q % 2 == 0 || q >= 1 << 63 || !arith::is_prime(q) {
            return invalid(format!("{q} is not an odd prime below 2^63"));
        }
        let mut inv: u64 = 1;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(q.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % q as u128) as u64;
        let r2 = arith::mul_mod(r, r, q);
        Ok(PrimeField {
            q,
            qinv_neg: inv.wrapping_neg(),
            r2,
            one: r,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    #[inline]
    pub fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.qinv_neg);
        let u = ((t + m as u128 * self.q as u128) >> 64) as u64;
        if u >= self.q {
            u - self.q
        } else {
            u
        }
    }

    #[inline]
    pub fn mont_mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline]
    pub fn mont_add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    #[inline]
    pub fn mont_sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    /// Residue in [0, q) to Montgomery form.
    #[inline]
    pub fn to_mont(&self, x: u64) -> u64 {
        self.mont_mul(x % self.q, self.r2)
    }

    /// Montgomery form to residue in [0, q).
    #[inline]
    pub fn residue(&self, e: u64) -> u64 {
        self.redc(e as u128)
    }

    pub fn inverse(&self, e: u64) -> Option<u64> {
        let r = self.residue(e);
        arith::inv_mod(r, self.q).map(|i| self.to_mont(i))
    }

    pub fn from_bigint(&self, v: &BigInt) -> u64 {
        let r = v.mod_floor(&BigInt::from(self.q));
        self.to_mont(r.to_u64().expect("reduced residue fits"))
    }

    pub fn from_rational(&self, v: &BigRational) -> Result<u64> {
        let num = self.from_bigint(v.numer());
        let den = self.from_bigint(v.denom());
        match self.inverse(den) {
            Some(inv) => Ok(self.mont_mul(num, inv)),
            None => Err(Error::Divisibility {
                k: v.denom().abs().to_u64().unwrap_or(u64::MAX),
                ring: "F_q",
            }),
        }
    }

    /// Balanced representative in (-q/2, q/2].
    pub fn balanced(&self, e: u64) -> i64 {
        let r = self.residue(e);
        if r > self.q / 2 {
            -((self.q - r) as i64)
        } else {
            r as i64
        }
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn name(&self) -> &'static str {
        "F_q"
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        self.one
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.to_mont(v.rem_euclid(self.q as i64) as u64)
    }
    fn from_u64_pow(&self, base: u64, exp: u32) -> u64 {
        self.to_mont(arith::pow_mod(base, exp as u64, self.q))
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        self.mont_add(*a, *b)
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        self.mont_sub(*a, *b)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.q - a
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.mont_mul(*a, *b)
    }
    fn div_small(&self, a: &u64, k: u64) -> Result<u64> {
        match arith::inv_mod(k % self.q, self.q) {
            Some(inv) => Ok(self.mont_mul(*a, self.to_mont(inv))),
            None => Err(Error::Divisibility { k, ring: "F_q" }),
        }
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
}
