mod common;

use common::{ap_11a, eta11, gcd, lemma_sums, primes_below, q};
use eulerprod::euler::provider_fn;
use eulerprod::{
    expand_precomp, expand_reference, rough_coprime_sieve, Counted, FactorRepr, Integers, PrimeField,
    Rationals, Ring,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Deterministic pseudo-random value per (seed, p, slot).
fn mix(seed: u64, p: u64, slot: u64) -> u64 {
    let mut x = seed ^ p.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ slot.wrapping_mul(0xC2B2_AE3D_27D4_EB4F);
    x ^= x >> 31;
    x = x.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x ^ (x >> 29)
}

fn rational_factor(seed: u64, p: u64, degree: usize, newton: bool, prec: usize) -> FactorRepr<BigRational> {
    let val = |slot: u64| {
        let v = mix(seed, p, slot);
        q((v % 13) as i64 - 6, (v >> 8) as i64 % 3 + 1)
    };
    if newton {
        FactorRepr::newton(degree, (0..prec.max(1) as u64).map(val).collect())
    } else {
        FactorRepr::poly((0..degree as u64).map(val).collect())
    }
}

#[test]
fn precomputed_schedule_matches_reference_over_rationals() {
    let r = Rationals;
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for trial in 0..100u64 {
        let degree = rng.gen_range(1..=3);
        let newton = trial % 4 == 3;
        let n = rng.gen_range(2..400u64);
        let prov = provider_fn(degree, move |_: &Rationals, p, prec| Ok(rational_factor(trial, p, degree, newton, prec)));
        let t = rough_coprime_sieve(n).unwrap();
        let a = expand_precomp(&r, &prov, &t).unwrap();
        let b = expand_reference(&r, &prov, n).unwrap();
        assert_eq!(a, b, "trial {trial}, n = {n}");
    }
}

#[test]
fn precomputed_schedule_matches_reference_over_prime_field() {
    let f = PrimeField::new(998_244_353).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    for trial in 0..100u64 {
        let degree = rng.gen_range(1..=4);
        let n = rng.gen_range(2..3000u64);
        let prov = provider_fn(degree, move |f: &PrimeField, p, _| {
            Ok(FactorRepr::poly(
                (0..degree as u64).map(|s| f.to_mont(mix(trial, p, s) % f.modulus())).collect(),
            ))
        });
        let t = rough_coprime_sieve(n).unwrap();
        let a = expand_precomp(&f, &prov, &t).unwrap();
        let b = expand_reference(&f, &prov, n).unwrap();
        assert_eq!(a, b, "trial {trial}, n = {n}");
    }
}

#[test]
fn coefficients_are_multiplicative() {
    let f = PrimeField::new(1_000_000_007).unwrap();
    let prov = provider_fn(2, |f: &PrimeField, p, _| {
        Ok(FactorRepr::poly(vec![f.to_mont(mix(5, p, 0) % 1000), f.to_mont(p)]))
    });
    let n = 2000u64;
    let a = expand_precomp(&f, &prov, &rough_coprime_sieve(n).unwrap()).unwrap();
    for m in 1..45u64 {
        for k in 1..45u64 {
            if gcd(m, k) == 1 {
                let lhs = *a.get((m * k) as usize);
                assert_eq!(lhs, f.mul(a.get(m as usize), a.get(k as usize)), "{m} * {k}");
            }
        }
    }
}

fn level11_provider() -> impl Fn(&Integers, u64, usize) -> eulerprod::Result<FactorRepr<BigInt>> {
    |_, p, _| {
        Ok(match p {
            2 => FactorRepr::poly(vec![BigInt::from(-2), BigInt::from(2)]),
            11 => FactorRepr::poly(vec![BigInt::from(1)]),
            _ => FactorRepr::poly(vec![BigInt::from(ap_11a(p)), BigInt::from(p)]),
        })
    }
}

#[test]
fn level_eleven_from_point_counts_matches_eta_product() {
    let z = Integers;
    let n = 3000usize;
    let prov = provider_fn(2, level11_provider());
    let a = expand_precomp(&z, &prov, &rough_coprime_sieve(n as u64 + 1).unwrap()).unwrap();
    let eta = eta11(n);
    for m in 1..=n {
        assert_eq!(a.get(m), &BigInt::from(eta[m]), "a_{m}");
    }
}

/// Degree-2 factors with counted ring operations.
fn degree_two_counts(n: u64) -> (u64, u64) {
    let z = Counted::new(PrimeField::new(1_000_000_007).unwrap());
    let prov = provider_fn(2, |z: &Counted<PrimeField>, p, _| {
        let f = z.inner();
        Ok(FactorRepr::poly(vec![f.to_mont(mix(1, p, 0) % 2000 + 1), f.to_mont(p)]))
    });
    let t = rough_coprime_sieve(n).unwrap();
    expand_precomp(&z, &prov, &t).unwrap();
    let c = z.counts();
    (c.muls, c.adds)
}

#[test]
fn degree_two_expansion_uses_fewer_than_n_operations() {
    for n in [1_000u64, 10_000, 100_000] {
        let (muls, adds) = degree_two_counts(n);
        assert!(muls < n, "n = {n}: {muls} multiplications");
        assert!(adds < n, "n = {n}: {adds} additions");
    }
}

#[test]
fn newton_input_stays_linear() {
    for n in [1_000u64, 10_000, 100_000] {
        let z = Counted::new(PrimeField::new(1_000_000_007).unwrap());
        let prov = provider_fn(2, |z: &Counted<PrimeField>, p, prec| {
            let f = z.inner();
            Ok(FactorRepr::newton(2, (0..prec as u64).map(|s| f.to_mont(mix(2, p, s) % 97 + 1)).collect()))
        });
        let t = rough_coprime_sieve(n).unwrap();
        expand_precomp(&z, &prov, &t).unwrap();
        let c = z.counts();
        // h_e from N_1..N_e: e - 1 products and sums per power of p
        let extra = extra_newton_muls(n);
        assert_eq!(c.muls, t.num_decomps() as u64 + extra, "n = {n}");
        assert_eq!(c.adds, extra, "n = {n}");
        assert!(c.muls < n);
    }
}

/// sum over p and e <= log_p n of (e - 1).
fn extra_newton_muls(n: u64) -> u64 {
    primes_below(n as usize)
        .iter()
        .map(|&p| {
            let mut e = 0u64;
            let mut v = p;
            let mut total = 0;
            while v < n {
                e += 1;
                total += e - 1;
                v = v.saturating_mul(p);
            }
            total
        })
        .sum()
}

#[test]
fn prime_power_count_inequalities() {
    let primes = primes_below(3001);
    for n in 2..=3000u64 {
        let (s2, s1, pi_n) = lemma_sums(n, &primes);
        assert!(s2 < pi_n, "first inequality at n = {n}");
        if n >= 137 {
            assert!(s1 < pi_n, "second inequality at n = {n}");
        }
    }
    // 136 is the last failure of the second one
    let (_, s1, pi_n) = lemma_sums(136, &primes);
    assert!(s1 >= pi_n);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn random_providers_agree_with_reference(seed in any::<u64>(), degree in 1usize..=3, n in 2u64..1500) {
        let f = PrimeField::new(2_305_843_009_213_693_951).unwrap();
        let prov = provider_fn(degree, move |f: &PrimeField, p, _| {
            Ok(FactorRepr::poly((0..degree as u64).map(|s| f.to_mont(mix(seed, p, s) % f.modulus())).collect()))
        });
        let a = expand_precomp(&f, &prov, &rough_coprime_sieve(n).unwrap()).unwrap();
        let b = expand_reference(&f, &prov, n).unwrap();
        prop_assert_eq!(a, b);
    }
}
