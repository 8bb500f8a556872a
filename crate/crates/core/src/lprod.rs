//! Direct sums, tensor products and symmetric powers of L-series given by
//! per-prime Euler data.

use std::collections::BTreeMap;

use crate::arith;
use crate::chars::CharValues;
use crate::error::{invalid, Error, Result};
use crate::euler::{expand_precomp, provider_fn, CoeffSeq};
use crate::ring::Ring;
use crate::sieve::CoprimeTable;
use crate::symfun::{self, FactorRepr};

/// How the local factor at a prime outside the ramified set is formed.
#[derive(Debug, Clone)]
pub enum GoodFactor<E> {
    /// The same factor at every prime, e.g. zeta with F_p = 1 - T.
    Constant(FactorRepr<E>),
    /// F_p = 1 - chi(p) p^shift T.
    Character { chi: CharValues<E>, shift: u32 },
    /// F_p = 1 - a_p T + chi(p) p^{k-1} T^2 from a_p at ascending primes;
    /// at ramified primes the newform factor 1 - a_p T.
    Modular {
        weight: u32,
        primes: Vec<u64>,
        ap: Vec<E>,
        nebentypus: Option<CharValues<E>>,
    },
    /// Explicit factors.
    Table(BTreeMap<u64, FactorRepr<E>>),
}

/// An L-series known through its local factors.
#[derive(Debug, Clone)]
pub struct ArithmeticObject<E> {
    pub degree: usize,
    /// Motivic weight w; inverse roots satisfy |alpha| <= p^{w/2}.
    pub weight: u32,
    pub rule: GoodFactor<E>,
    /// Primes where the object ramifies.
    pub ramified: Vec<u64>,
    /// Factors used instead of the rule.
    pub overrides: BTreeMap<u64, FactorRepr<E>>,
}

impl<E: Clone + PartialEq> ArithmeticObject<E> {
    /// The Riemann zeta function.
    pub fn zeta<R: Ring<Elem = E>>(ring: &R) -> Self {
        ArithmeticObject {
            degree: 1,
            weight: 0,
            rule: GoodFactor::Constant(FactorRepr::poly(vec![ring.one()])),
            ramified: Vec::new(),
            overrides: BTreeMap::new(),
        }
    }

    /// L(chi, s - shift).
    pub fn character(chi: CharValues<E>, shift: u32) -> Self {
        ArithmeticObject {
            degree: 1,
            weight: 2 * shift,
            ramified: arith::factorize(chi.modulus).into_iter().map(|(p, _)| p).collect(),
            rule: GoodFactor::Character { chi, shift },
            overrides: BTreeMap::new(),
        }
    }

    /// A newform of weight k and level N from its prime coefficients.
    pub fn modular(
        weight: u32,
        level: u64,
        primes: Vec<u64>,
        ap: Vec<E>,
        nebentypus: Option<CharValues<E>>,
    ) -> Result<Self> {
        if primes.len() != ap.len() || primes.windows(2).any(|w| w[0] >= w[1]) {
            return invalid("a_p table must list ascending primes, one value each");
        }
        if weight == 0 {
            return invalid("weight must be positive");
        }
        Ok(ArithmeticObject {
            degree: 2,
            weight: weight - 1,
            ramified: arith::factorize(level).into_iter().map(|(p, _)| p).collect(),
            rule: GoodFactor::Modular {
                weight,
                primes,
                ap,
                nebentypus,
            },
            overrides: BTreeMap::new(),
        })
    }

    pub fn is_ramified(&self, p: u64) -> bool {
        self.ramified.contains(&p) && !self.overrides.contains_key(&p)
    }

    /// a_p for modular objects.
    pub fn ap(&self, p: u64) -> Result<&E> {
        match &self.rule {
            GoodFactor::Modular { primes, ap, .. } => primes
                .binary_search(&p)
                .map(|i| &ap[i])
                .map_err(|_| Error::MissingFactor(p)),
            _ => invalid("a_p is only stored for modular objects"),
        }
    }

    /// F_p as a polynomial factor.
    pub fn local_factor<R: Ring<Elem = E>>(&self, ring: &R, p: u64) -> Result<FactorRepr<E>> {
        if let Some(f) = self.overrides.get(&p) {
            return Ok(f.clone());
        }
        match &self.rule {
            GoodFactor::Constant(f) => Ok(f.clone()),
            GoodFactor::Character { chi, shift } => {
                let v = chi.at(p);
                if ring.is_zero(v) {
                    return Ok(FactorRepr::unit());
                }
                Ok(FactorRepr::poly(vec![ring.mul(v, &ring.from_u64_pow(p, *shift))]))
            }
            GoodFactor::Modular {
                weight, nebentypus, ..
            } => {
                let a = self.ap(p)?.clone();
                if self.ramified.contains(&p) {
                    return FactorRepr::from_coeffs(ring, &[ring.one(), ring.neg(&a)]);
                }
                let pk = ring.from_u64_pow(p, weight - 1);
                let s2 = match nebentypus {
                    Some(chi) => ring.mul(chi.at(p), &pk),
                    None => pk,
                };
                Ok(FactorRepr::poly(vec![a, s2]))
            }
            GoodFactor::Table(t) => t.get(&p).cloned().ok_or(Error::MissingFactor(p)),
        }
    }
}

/// Coefficients a_1..a_{n-1} (n = table.n()) of prod_i L(f_i).
pub fn dirichlet_direct_sum<R: Ring>(
    ring: &R,
    objs: &[ArithmeticObject<R::Elem>],
    table: &CoprimeTable,
) -> Result<CoeffSeq<R::Elem>> {
    let degree = objs.iter().map(|o| o.degree).sum();
    let provider = provider_fn(degree, |ring: &R, p, _prec| {
        let mut acc = FactorRepr::unit();
        for o in objs {
            let f = o.local_factor(ring, p)?;
            acc = symfun::direct_sum(ring, &acc, &f, 0)?;
        }
        Ok(acc)
    });
    expand_precomp(ring, &provider, table)
}

/// Coefficients of the tensor product L-series. `overrides` replace the
/// tensor factor at given primes; a prime where two or more objects
/// ramify must be overridden.
pub fn dirichlet_tensor<R: Ring>(
    ring: &R,
    objs: &[ArithmeticObject<R::Elem>],
    overrides: &BTreeMap<u64, FactorRepr<R::Elem>>,
    table: &CoprimeTable,
) -> Result<CoeffSeq<R::Elem>> {
    if objs.is_empty() {
        return invalid("tensor product of no objects");
    }
    let n = table.n();
    let mut missing: Vec<u64> = objs
        .iter()
        .flat_map(|o| o.ramified.iter().copied())
        .filter(|&p| p < n && !overrides.contains_key(&p))
        .filter(|&p| objs.iter().filter(|o| o.is_ramified(p)).count() >= 2)
        .collect();
    missing.sort_unstable();
    missing.dedup();
    if !missing.is_empty() {
        return Err(Error::BadPrimes(missing));
    }
    let degree = objs.iter().map(|o| o.degree).product();
    let provider = provider_fn(degree, |ring: &R, p, prec| {
        if let Some(f) = overrides.get(&p) {
            return Ok(f.clone());
        }
        let factors = objs
            .iter()
            .map(|o| o.local_factor(ring, p))
            .collect::<Result<Vec<_>>>()?;
        symfun::tensor_product(ring, &factors, prec)
    });
    expand_precomp(ring, &provider, table)
}

/// (1 - alpha T)(1 - p alpha T)^2 with alpha = a_p(f) a_p(g) a_p(h): the
/// triple-product factor at a prime dividing the common level.
pub fn triple_product_bad_factor<R: Ring>(
    ring: &R,
    ap_f: &R::Elem,
    ap_g: &R::Elem,
    ap_h: &R::Elem,
    p: u64,
) -> Result<FactorRepr<R::Elem>> {
    let alpha = ring.mul(&ring.mul(ap_f, ap_g), ap_h);
    let pe = ring.from_i64(p as i64);
    let pa = ring.mul(&pe, &alpha);
    let lin = |c: &R::Elem| vec![ring.one(), ring.neg(c)];
    let c = symfun::mul_trunc(ring, &lin(&alpha), &lin(&pa), 3);
    let c = symfun::mul_trunc(ring, &c, &lin(&pa), 4);
    FactorRepr::from_coeffs(ring, &c)
}

/// L(f x g x h) for three newforms of common level N0, with the bad
/// factors at primes dividing N0.
pub fn triple_product<R: Ring>(
    ring: &R,
    f: &ArithmeticObject<R::Elem>,
    g: &ArithmeticObject<R::Elem>,
    h: &ArithmeticObject<R::Elem>,
    level: u64,
    table: &CoprimeTable,
) -> Result<CoeffSeq<R::Elem>> {
    let mut overrides = BTreeMap::new();
    for (p, _) in arith::factorize(level) {
        if p < table.n() {
            let fac = triple_product_bad_factor(ring, f.ap(p)?, g.ap(p)?, h.ap(p)?, p)?;
            overrides.insert(p, fac);
        }
    }
    dirichlet_tensor(ring, &[f.clone(), g.clone(), h.clone()], &overrides, table)
}

/// Coefficients of L(Sym^k f). Ramified primes use Sym^k of the supplied
/// local factor unless overridden.
pub fn dirichlet_sym_power<R: Ring>(
    ring: &R,
    obj: &ArithmeticObject<R::Elem>,
    k: usize,
    overrides: &BTreeMap<u64, FactorRepr<R::Elem>>,
    table: &CoprimeTable,
) -> Result<CoeffSeq<R::Elem>> {
    if k == 0 {
        return invalid("symmetric power must be positive");
    }
    let degree = symfun::binomial((obj.degree + k - 1) as u64, k as u64) as usize;
    let provider = provider_fn(degree, |ring: &R, p, prec| {
        if let Some(f) = overrides.get(&p) {
            return Ok(f.clone());
        }
        let f = obj.local_factor(ring, p)?;
        if f.degree == 0 {
            return Ok(f);
        }
        symfun::sym_power(ring, &f, k, prec)
    });
    expand_precomp(ring, &provider, table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Integers;
    use crate::sieve::rough_coprime_sieve;
    use num_bigint::BigInt;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn zeta_squared_is_divisor_count() {
        let z = Integers;
        let t = rough_coprime_sieve(13).unwrap();
        let a = dirichlet_direct_sum(&z, &[ArithmeticObject::zeta(&z), ArithmeticObject::zeta(&z)], &t)
            .unwrap();
        assert_eq!(a.coefficients(), &big(&[1, 2, 2, 3, 2, 4, 2, 4, 3, 4, 2, 6])[..]);
    }

    #[test]
    fn bad_factor_expansions() {
        let z = Integers;
        let one = BigInt::from(1);
        let m1 = BigInt::from(-1);
        let f = triple_product_bad_factor(&z, &m1, &one, &one, 5).unwrap();
        assert_eq!(f.coeffs(&z).unwrap(), big(&[1, 11, 35, 25]));
        let f = triple_product_bad_factor(&z, &one, &m1, &m1, 7).unwrap();
        assert_eq!(f.coeffs(&z).unwrap(), big(&[1, -15, 63, -49]));
        let zero = BigInt::from(0);
        let f = triple_product_bad_factor(&z, &zero, &one, &one, 7).unwrap();
        assert_eq!(f.degree, 0);
    }
}
