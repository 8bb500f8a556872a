mod common;

use common::schoolbook;
use eulerprod::ntt::{find_fft_prime_from, series_mul, transform_log, NttPlan};
use eulerprod::{find_fft_prime, Error, FftPrime, PrimeField, Ring};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn setup(n: usize) -> (FftPrime, PrimeField, NttPlan) {
    let prime = find_fft_prime(n, &[], 52).unwrap();
    let f = prime.field();
    let plan = NttPlan::new(&prime, transform_log(n).unwrap()).unwrap();
    (prime, f, plan)
}

fn mont(f: &PrimeField, v: &[u64]) -> Vec<u64> {
    v.iter().map(|&x| f.to_mont(x)).collect()
}

fn canon(f: &PrimeField, v: &[u64]) -> Vec<u64> {
    v.iter().map(|&x| f.residue(x)).collect()
}

#[test]
fn matches_schoolbook_on_random_inputs() {
    let (prime, f, plan) = setup(1 << 11);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..60 {
        let la = rng.gen_range(1..=1500);
        let lb = rng.gen_range(1..=1500);
        let n = rng.gen_range(1..=2048);
        let a: Vec<u64> = (0..la).map(|_| rng.gen_range(0..prime.q)).collect();
        let b: Vec<u64> = (0..lb).map(|_| rng.gen_range(0..prime.q)).collect();
        let c = series_mul(&f, &plan, &mont(&f, &a), &mont(&f, &b), n).unwrap();
        assert_eq!(canon(&f, &c), schoolbook(&a, &b, n, prime.q), "la={la} lb={lb} n={n}");
    }
}

#[test]
fn forward_then_inverse_is_identity() {
    let (prime, _, plan) = setup(1 << 12);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for log in 0..=13 {
        let v: Vec<u64> = (0..1usize << log).map(|_| rng.gen_range(0..prime.q)).collect();
        let mut w = v.clone();
        plan.forward(&mut w);
        plan.inverse(&mut w);
        assert_eq!(w, v, "size 2^{log}");
    }
}

#[test]
fn squaring_path_matches_general_product() {
    let (prime, f, plan) = setup(1 << 10);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let a: Vec<u64> = (0..1000).map(|_| f.to_mont(rng.gen_range(0..prime.q))).collect();
    let copy = a.clone();
    assert_eq!(
        series_mul(&f, &plan, &a, &a, 1024).unwrap(),
        series_mul(&f, &plan, &a, &copy, 1024).unwrap()
    );
}

fn sigma(m: u64, k: u32) -> u64 {
    (1..=m).filter(|d| m % d == 0).map(|d| d.pow(k)).sum()
}

#[test]
fn weight_four_eisenstein_squared_is_weight_eight() {
    // (1 + 240 sum sigma_3 q^m)^2 = 1 + 480 sum sigma_7 q^m
    let n = 50;
    let (_, f, plan) = setup(n);
    let e4: Vec<u64> = (0..n as u64).map(|m| if m == 0 { 1 } else { 240 * sigma(m, 3) }).collect();
    let e4 = mont(&f, &e4);
    let sq = canon(&f, &series_mul(&f, &plan, &e4, &e4, n).unwrap());
    let q = f.modulus();
    for m in 0..n as u64 {
        let expect = if m == 0 { 1 } else { (480 * sigma(m, 7) as u128 % q as u128) as u64 };
        assert_eq!(sq[m as usize], expect, "coefficient {m}");
    }
}

#[test]
fn prime_selection_examples() {
    assert_eq!(find_fft_prime(8, &[1], 6).unwrap().q, 97);
    let p = FftPrime::from_prime(998_244_353, 1 << 20, &[7]).unwrap();
    assert_eq!(p.r, 23);
    assert_eq!(p.primitive_root, 3);
    assert!(FftPrime::from_prime(998_244_353, 1 << 23, &[]).is_err());
    assert!(matches!(
        FftPrime::from_prime(998_244_353, 8, &[11]),
        Err(Error::IncompatiblePrime { order: 11, .. })
    ));
    assert!(FftPrime::from_prime(998_244_351, 8, &[]).is_err());

    let p = find_fft_prime(1 << 16, &[22, 12], 52).unwrap();
    assert!(p.q >= 1 << 52);
    assert_eq!((p.q - 1) % (132 << 17), 0);
    let next = find_fft_prime_from(1 << 16, &[22, 12], p.q + 1).unwrap();
    assert!(next.q > p.q);
    assert_eq!((next.q - 1) % (132 << 17), 0);
    assert!(find_fft_prime(8, &[], 63).is_err());
}

#[test]
fn plans_reject_sizes_beyond_the_prime() {
    let p = FftPrime::from_prime(97, 8, &[]).unwrap();
    assert!(NttPlan::new(&p, 6).is_err());
    let plan = NttPlan::new(&p, 3).unwrap();
    let f = p.field();
    let a = vec![f.one(); 8];
    assert!(matches!(series_mul(&f, &plan, &a, &a, 8), Err(Error::Capacity(_))));
    assert_eq!(series_mul(&f, &plan, &a, &[], 4).unwrap(), vec![0; 4]);
}

fn vecs(q: u64) -> impl Strategy<Value = Vec<u64>> {
    proptest::collection::vec(0..q, 1..200)
}

const Q: u64 = 4_179_340_454_199_820_289; // 29 * 2^57 + 1

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn product_laws(a in vecs(Q), b in vecs(Q), c in vecs(Q), n in 1usize..256) {
        let p = FftPrime::from_prime(Q, 512, &[]).unwrap();
        let f = p.field();
        let plan = NttPlan::new(&p, 10).unwrap();
        let (a, b, c) = (mont(&f, &a), mont(&f, &b), mont(&f, &c));
        let mul = |x: &[u64], y: &[u64]| series_mul(&f, &plan, x, y, n).unwrap();
        prop_assert_eq!(mul(&a, &b), mul(&b, &a));
        prop_assert_eq!(mul(&mul(&a, &b), &c), mul(&a, &mul(&b, &c)));
        let len = a.len().max(b.len());
        let sum: Vec<u64> = (0..len)
            .map(|i| f.add(a.get(i).unwrap_or(&0), b.get(i).unwrap_or(&0)))
            .collect();
        let lhs = mul(&sum, &c);
        let rhs: Vec<u64> = mul(&a, &c).iter().zip(mul(&b, &c)).map(|(x, y)| f.add(x, &y)).collect();
        prop_assert_eq!(lhs, rhs);
    }
}
