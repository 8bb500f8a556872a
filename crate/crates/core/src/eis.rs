//! Coefficients of the Eisenstein series E_k^{phi,psi}, with
//! a_m = sum_{d | m} phi(m/d) psi(d) d^{k-1}.
//!
//! The Dirichlet series is L(phi, s) L(psi, s+1-k), so a_m is multiplicative
//! with a_{p^e} = (p^{k-1} psi(p)) a_{p^{e-1}} + phi(p^e). Prime powers cost
//! one multiplication and one addition, composites one multiplication.

use crate::chars::CharValues;
use crate::error::{invalid, Result};
use crate::euler::CoeffSeq;
use crate::ring::Ring;
use crate::sieve::CoprimeTable;

/// a_1..a_n of E_k^{phi,psi}; `values[0]` is left zero.
pub fn eisenstein_coeffs<R: Ring>(
    ring: &R,
    k: u32,
    phi: &CharValues<R::Elem>,
    psi: &CharValues<R::Elem>,
    n: usize,
    table: &CoprimeTable,
) -> Result<CoeffSeq<R::Elem>> {
    if k == 0 || n == 0 {
        return invalid("Eisenstein series need k >= 1 and n >= 1");
    }
    if (table.n() as usize) < n + 1 {
        return invalid(format!("sieve table below {} is too short for n = {n}", table.n()));
    }
    let mut values = vec![ring.zero(); n + 1];
    values[1] = ring.one();
    for (i, &p) in table.primes().iter().enumerate() {
        let p = p as u64;
        if p as usize > n {
            break;
        }
        let psi_p = psi.at(p);
        let c = if ring.is_zero(psi_p) {
            None
        } else if k == 1 {
            Some(psi_p.clone())
        } else {
            Some(ring.mul(&ring.from_u64_pow(p, k - 1), psi_p))
        };
        let mut prev: Option<R::Elem> = Some(ring.one());
        for &pe in table.prime_powers(i) {
            if pe as usize > n {
                break;
            }
            let left = match (&c, &prev) {
                (Some(c), Some(a)) => Some(if *a == ring.one() { c.clone() } else { ring.mul(a, c) }),
                _ => None,
            };
            let right = phi.at(pe as u64);
            let v = match left {
                Some(l) if !ring.is_zero(right) => ring.add(&l, right),
                Some(l) => l,
                None => right.clone(),
            };
            prev = if ring.is_zero(&v) { None } else { Some(v.clone()) };
            values[pe as usize] = v;
        }
    }
    let (ks, pes, ms) = table.decomp_arrays();
    for j in 0..ks.len() {
        let kk = ks[j] as usize;
        if kk > n {
            break;
        }
        values[kk] = ring.mul(&values[pes[j] as usize], &values[ms[j] as usize]);
    }
    Ok(CoeffSeq { values })
}

/// Direct divisor-sum evaluation in O(n log n); reference path.
pub fn eisenstein_coeffs_naive<R: Ring>(
    ring: &R,
    k: u32,
    phi: &CharValues<R::Elem>,
    psi: &CharValues<R::Elem>,
    n: usize,
) -> Result<CoeffSeq<R::Elem>> {
    if k == 0 || n == 0 {
        return invalid("Eisenstein series need k >= 1 and n >= 1");
    }
    let mut values = vec![ring.zero(); n + 1];
    for d in 1..=n {
        let psi_d = psi.at(d as u64);
        if ring.is_zero(psi_d) {
            continue;
        }
        let w = ring.mul(psi_d, &ring.from_u64_pow(d as u64, k - 1));
        for (j, m) in (d..=n).step_by(d).enumerate() {
            let f = phi.at(j as u64 + 1);
            if !ring.is_zero(f) {
                values[m] = ring.add(&values[m], &ring.mul(f, &w));
            }
        }
    }
    Ok(CoeffSeq { values })
}
