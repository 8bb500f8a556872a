use std::collections::BTreeMap;

use crate::chars::CharValues;
use crate::error::{Error, Result};
use crate::euler::{expand_precomp, CoeffSeq, EulerFactorProvider};
use crate::ring::Ring;
use crate::sieve::rough_coprime_sieve;
use crate::symfun::FactorRepr;

/// Euler data of a normalized eigenform of weight k: a_p at primes and
/// F_p = 1 - a_p T + chi(p) p^{k-1} T^2 away from the level.
pub struct EigenformEuler<'a, E> {
    pub weight: u32,
    pub level: u64,
    /// Ascending primes with their a_p.
    pub primes: &'a [u64],
    pub ap: &'a [E],
    /// Nebentypus values; `None` means trivial.
    pub nebentypus: Option<&'a CharValues<E>>,
    /// Ascending coefficients 1, c_1, ... at primes dividing the level.
    pub bad: &'a BTreeMap<u64, Vec<E>>,
}

impl<E: Clone + PartialEq> EigenformEuler<'_, E> {
    fn ap(&self, p: u64) -> Result<&E> {
        self.primes
            .binary_search(&p)
            .map(|i| &self.ap[i])
            .map_err(|_| Error::MissingFactor(p))
    }

    /// Primes dividing the level, up to `n`, with no supplied factor.
    pub fn missing_bad_primes(&self, n: u64) -> Vec<u64> {
        crate::arith::factorize(self.level)
            .into_iter()
            .map(|(p, _)| p)
            .filter(|p| *p <= n && !self.bad.contains_key(p))
            .collect()
    }
}

impl<R: Ring> EulerFactorProvider<R> for EigenformEuler<'_, R::Elem> {
    fn degree(&self) -> usize {
        2
    }

    fn local_factor(&self, ring: &R, p: u64, _prec: usize) -> Result<FactorRepr<R::Elem>> {
        if self.level % p == 0 {
            let c = self.bad.get(&p).ok_or(Error::BadPrimes(vec![p]))?;
            return FactorRepr::from_coeffs(ring, c);
        }
        let a = self.ap(p)?.clone();
        let pk = ring.from_u64_pow(p, self.weight - 1);
        let s2 = match self.nebentypus {
            Some(chi) => ring.mul(chi.at(p), &pk),
            None => pk,
        };
        Ok(FactorRepr::poly(vec![a, s2]))
    }
}

/// a_1..a_n from prime coefficients by Euler-product expansion.
/// `values[0]` is left zero.
pub fn multiplicative_extend<R: Ring>(
    ring: &R,
    data: &EigenformEuler<'_, R::Elem>,
    n: u64,
) -> Result<CoeffSeq<R::Elem>> {
    if data.weight == 0 {
        return Err(Error::InvalidArgument("weight must be positive".into()));
    }
    if n < 2 {
        return Ok(CoeffSeq {
            values: vec![ring.zero(), ring.one()],
        });
    }
    let missing = data.missing_bad_primes(n);
    if !missing.is_empty() {
        return Err(Error::BadPrimes(missing));
    }
    let table = rough_coprime_sieve(n + 1)?;
    expand_precomp(ring, data, &table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Integers;
    use num_bigint::BigInt;

    #[test]
    fn level_eleven_prefix() {
        let z = Integers;
        let primes = [2u64, 3, 5, 7, 11];
        let ap: Vec<BigInt> = [-2, -1, 1, -2, 1].iter().map(|&v| BigInt::from(v)).collect();
        let mut bad = BTreeMap::new();
        bad.insert(11, vec![BigInt::from(1), BigInt::from(-1)]);
        let data = EigenformEuler {
            weight: 2,
            level: 11,
            primes: &primes,
            ap: &ap,
            nebentypus: None,
            bad: &bad,
        };
        let a = multiplicative_extend(&z, &data, 11).unwrap();
        let expect: Vec<BigInt> = [1, -2, -1, 2, 1, 2, -2, 0, -2, -2, 1]
            .iter()
            .map(|&v| BigInt::from(v))
            .collect();
        assert_eq!(a.coefficients(), &expect[..]);
        let short = multiplicative_extend(&z, &data, 1).unwrap();
        assert_eq!(short.coefficients(), &[BigInt::from(1)][..]);
    }

    #[test]
    fn missing_bad_prime_is_listed() {
        let z = Integers;
        let bad = BTreeMap::new();
        let data = EigenformEuler::<BigInt> {
            weight: 2,
            level: 35,
            primes: &[],
            ap: &[],
            nebentypus: None,
            bad: &bad,
        };
        match multiplicative_extend(&z, &data, 40) {
            Err(Error::BadPrimes(v)) => assert_eq!(v, vec![5, 7]),
            other => panic!("{other:?}"),
        }
    }
}
