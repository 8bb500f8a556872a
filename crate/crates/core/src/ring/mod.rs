//! Coefficient rings used by the expansion algorithms.
//!
//! Algorithms are generic over [`Ring`]; elements are plain values and all
//! arithmetic goes through the ring handle, which lets [`Counted`] observe
//! every addition, multiplication and division.

use std::cell::Cell;
use std::fmt::Debug;

use crate::error::Result;

mod cyclo;
mod exact;
mod fp;
mod order;

pub use cyclo::Cyclotomic;
pub use exact::{Integers, Rationals};
pub use fp::PrimeField;
pub use order::NumberOrder;

pub trait Ring {
    type Elem: Clone + PartialEq + Debug;

    fn name(&self) -> &'static str;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// The integer `base^exp` as a ring element. This is constant
    /// preparation, not ring arithmetic, and is never counted.
    fn from_u64_pow(&self, base: u64, exp: u32) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Exact division by a small positive integer.
    fn div_small(&self, a: &Self::Elem, k: u64) -> Result<Self::Elem>;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

impl<R: Ring + ?Sized> Ring for &R {
    type Elem = R::Elem;
    fn name(&self) -> &'static str {
        (**self).name()
    }
    fn zero(&self) -> Self::Elem {
        (**self).zero()
    }
    fn one(&self) -> Self::Elem {
        (**self).one()
    }
    fn from_i64(&self, v: i64) -> Self::Elem {
        (**self).from_i64(v)
    }
    fn from_u64_pow(&self, base: u64, exp: u32) -> Self::Elem {
        (**self).from_u64_pow(base, exp)
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (**self).add(a, b)
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (**self).sub(a, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        (**self).neg(a)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (**self).mul(a, b)
    }
    fn div_small(&self, a: &Self::Elem, k: u64) -> Result<Self::Elem> {
        (**self).div_small(a, k)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        (**self).is_zero(a)
    }
}

/// Totals of ring operations observed by [`Counted`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCounter {
    pub adds: u64,
    pub muls: u64,
    pub divs: u64,
}

/// Ring wrapper that counts operations. Additions, subtractions and
/// negations count as additions.
#[derive(Debug)]
pub struct Counted<R> {
    inner: R,
    counts: Cell<OpCounter>,
}

impl<R: Ring> Counted<R> {
    pub fn new(inner: R) -> Self {
        Counted {
            inner,
            counts: Cell::new(OpCounter::default()),
        }
    }

    pub fn counts(&self) -> OpCounter {
        self.counts.get()
    }

    pub fn reset(&self) {
        self.counts.set(OpCounter::default());
    }

    pub fn inner(&self) -> &R {
        &self.inner
    }

    fn bump(&self, f: impl FnOnce(&mut OpCounter)) {
        let mut c = self.counts.get();
        f(&mut c);
        self.counts.set(c);
    }
}

impl<R: Ring> Ring for Counted<R> {
    type Elem = R::Elem;
    fn name(&self) -> &'static str {
        self.inner.name()
    }
    fn zero(&self) -> Self::Elem {
        self.inner.zero()
    }
    fn one(&self) -> Self::Elem {
        self.inner.one()
    }
    fn from_i64(&self, v: i64) -> Self::Elem {
        self.inner.from_i64(v)
    }
    fn from_u64_pow(&self, base: u64, exp: u32) -> Self::Elem {
        self.inner.from_u64_pow(base, exp)
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.bump(|c| c.adds += 1);
        self.inner.add(a, b)
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.bump(|c| c.adds += 1);
        self.inner.sub(a, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.bump(|c| c.adds += 1);
        self.inner.neg(a)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.bump(|c| c.muls += 1);
        self.inner.mul(a, b)
    }
    fn div_small(&self, a: &Self::Elem, k: u64) -> Result<Self::Elem> {
        self.bump(|c| c.divs += 1);
        self.inner.div_small(a, k)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.inner.is_zero(a)
    }
}
