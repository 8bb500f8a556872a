use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use super::Ring;
use crate::error::{Error, Result};

/// Arbitrary-precision integers. Division by k succeeds only when exact.
#[derive(Debug, Clone, Copy, Default)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn name(&self) -> &'static str {
        "Z"
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_i64(&self, v: i64) -> BigInt {
        BigInt::from(v)
    }
    fn from_u64_pow(&self, base: u64, exp: u32) -> BigInt {
        BigInt::from(base).pow(exp)
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn div_small(&self, a: &BigInt, k: u64) -> Result<BigInt> {
        let (q, r) = a.div_rem(&BigInt::from(k));
        if k == 0 || !r.is_zero() {
            return Err(Error::Divisibility { k, ring: "Z" });
        }
        Ok(q)
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
}

/// Arbitrary-precision rationals.
#[derive(Debug, Clone, Copy, Default)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn name(&self) -> &'static str {
        "Q"
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_u64_pow(&self, base: u64, exp: u32) -> BigRational {
        BigRational::from_integer(BigInt::from(base).pow(exp))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn div_small(&self, a: &BigRational, k: u64) -> Result<BigRational> {
        if k == 0 {
            return Err(Error::Divisibility { k, ring: "Q" });
        }
        Ok(a / BigRational::from_integer(BigInt::from(k)))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
}
