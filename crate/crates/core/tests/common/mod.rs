//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn bigs(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Plain sieve of Eratosthenes.
pub fn primes_below(n: usize) -> Vec<u64> {
    let mut comp = vec![false; n.max(2)];
    let mut out = Vec::new();
    for i in 2..n {
        if !comp[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j < n {
                comp[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Trial-division factorization.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Coefficients of prod_{m>=1} (1 - x^m) up to x^n by the pentagonal
/// number theorem, as sparse (exponent, sign) pairs.
fn pentagonal(n: usize) -> Vec<(usize, i64)> {
    let mut out = vec![(0, 1)];
    let mut k = 1i64;
    loop {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let a = (k * (3 * k - 1) / 2) as usize;
        let b = (k * (3 * k + 1) / 2) as usize;
        if a > n {
            break;
        }
        out.push((a, sign));
        if b <= n {
            out.push((b, sign));
        }
        k += 1;
    }
    out
}

fn mul_sparse(dense: &[i64], sparse: &[(usize, i64)], dilate: usize) -> Vec<i64> {
    let n = dense.len();
    let mut out = vec![0i64; n];
    for &(e, s) in sparse {
        let shift = e * dilate;
        if shift >= n {
            continue;
        }
        for i in 0..n - shift {
            out[i + shift] += s * dense[i];
        }
    }
    out
}

/// a_0..a_n of eta(z)^2 eta(11z)^2 = q prod (1-q^m)^2 (1-q^{11m})^2.
pub fn eta11(n: usize) -> Vec<i64> {
    let pent = pentagonal(n);
    let mut s = vec![0i64; n];
    s[0] = 1;
    for dil in [1, 1, 11, 11] {
        s = mul_sparse(&s, &pent, dil);
    }
    let mut out = vec![0i64; n + 1];
    out[1..].copy_from_slice(&s);
    out
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

/// Legendre symbol by Euler's criterion.
pub fn legendre(a: i64, p: u64) -> i64 {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// a_p of y^2 + y = x^3 - x^2 - 10x - 20 by counting points, p odd.
pub fn ap_11a(p: u64) -> i64 {
    let pi = p as i64;
    let mut s = 0i64;
    for x in 0..pi {
        let x = x as i128;
        let f = (x * x * x - x * x - 10 * x - 20).rem_euclid(pi as i128) as i64;
        s += legendre(1 + 4 * f, p);
    }
    -s
}

pub fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut c = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    c
}

/// prod (1 - r T), ascending.
pub fn from_inverse_roots(roots: &[BigRational]) -> Vec<BigRational> {
    roots.iter().fold(vec![BigRational::one()], |acc, r| {
        poly_mul(&acc, &[BigRational::one(), -r.clone()])
    })
}

pub fn eval(p: &[BigRational], t: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * t + c)
}

pub fn det(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut d = BigRational::one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if piv != c {
            m.swap(piv, c);
            d = -d;
        }
        let pv = m[c][c].clone();
        d *= &pv;
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &pv;
            for j in c..n {
                let v = &f * &m[c][j];
                m[r][j] -= v;
            }
        }
    }
    d
}

/// Resultant of two polynomials (ascending coefficients, formal degrees
/// len-1) via the Sylvester matrix.
pub fn resultant(f: &[BigRational], g: &[BigRational]) -> BigRational {
    let (m, n) = (f.len() - 1, g.len() - 1);
    let size = m + n;
    if size == 0 {
        return BigRational::one();
    }
    let mut s = vec![vec![BigRational::zero(); size]; size];
    for r in 0..n {
        for (i, c) in f.iter().rev().enumerate() {
            s[r][r + i] = c.clone();
        }
    }
    for r in 0..m {
        for (i, c) in g.iter().rev().enumerate() {
            s[n + r][r + i] = c.clone();
        }
    }
    det(s)
}

/// (P (x) Q)(t) = Res_x(x^d P(1/x), Q(x t)) for P with constant term 1.
pub fn tensor_by_resultant(p: &[BigRational], qpoly: &[BigRational], t: &BigRational) -> BigRational {
    let rev: Vec<BigRational> = p.iter().rev().cloned().collect();
    let mut tp = BigRational::one();
    let g: Vec<BigRational> = qpoly
        .iter()
        .map(|c| {
            let v = c * &tp;
            tp *= t;
            v
        })
        .collect();
    resultant(&rev, &g)
}

/// pi(x) = #{p <= x}.
pub fn pi(x: u64, primes: &[u64]) -> u64 {
    primes.partition_point(|&p| p <= x) as u64
}

/// floor(n^(1/e)).
pub fn iroot(n: u64, e: u32) -> u64 {
    let mut r = (n as f64).powf(1.0 / e as f64).round() as u64;
    while r > 0 && r.pow(e) > n {
        r -= 1;
    }
    while (r + 1).checked_pow(e).is_some_and(|v| v <= n) {
        r += 1;
    }
    r
}

/// (sum_{e>=2} (e-2) pi(n^{1/e}), sum_{e>=2} (e-1) pi(n^{1/e}), pi(n)).
pub fn lemma_sums(n: u64, primes: &[u64]) -> (u64, u64, u64) {
    let (mut s2, mut s1) = (0, 0);
    let mut e = 2u32;
    while (1u64 << e) <= n {
        let c = pi(iroot(n, e), primes);
        s2 += (e as u64 - 2) * c;
        s1 += (e as u64 - 1) * c;
        e += 1;
    }
    (s2, s1, pi(n, primes))
}

/// Schoolbook truncated product mod q on canonical residues.
pub fn schoolbook(a: &[u64], b: &[u64], n: usize, qm: u64) -> Vec<u64> {
    let mut out = vec![0u64; n];
    for (i, &x) in a.iter().enumerate().take(n) {
        for (j, &y) in b.iter().enumerate().take(n - i) {
            out[i + j] = ((out[i + j] as u128 + x as u128 * y as u128) % qm as u128) as u64;
        }
    }
    out
}

/// The fixture file of PARI-computed newform coefficients on (1, y).
pub fn newform_fixture(name: &str) -> Vec<Vec<i64>> {
    let text = include_str!("../data/newforms.json");
    let v: serde_json::Value = serde_json::from_str(text).unwrap();
    v[name]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r.as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect())
        .collect()
}
