use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith;
use crate::error::{invalid, Error, Result};

/// Representative of r mod q in (-q/2, q/2].
pub fn balanced(q: u64, r: u64) -> i64 {
    let r = r % q;
    if r > q / 2 {
        -((q - r) as i64)
    } else {
        r as i64
    }
}

/// Whether values bounded by `bound` in absolute value are determined by
/// their residues mod `modulus`.
pub fn liftable(bound: f64, modulus: f64) -> bool {
    bound * (1.0 + 1e-12) <= (modulus - 1.0) / 2.0
}

/// Balanced lift of `residues[t]` (index `indices[t]`), each bounded by
/// `bound(index)`. Fails at the first index whose bound is too large for q.
pub fn lift_balanced(
    q: u64,
    indices: &[u64],
    residues: &[u64],
    per_index: usize,
    bound: impl Fn(u64) -> f64,
) -> Result<Vec<i64>> {
    if residues.len() != indices.len() * per_index {
        return invalid("residue array does not match the index list");
    }
    let mut out = Vec::with_capacity(residues.len());
    for (t, &m) in indices.iter().enumerate() {
        if !liftable(bound(m), q as f64) {
            return Err(Error::Lift { index: m });
        }
        out.extend(residues[t * per_index..(t + 1) * per_index].iter().map(|&r| balanced(q, r)));
    }
    Ok(out)
}

/// Balanced CRT reconstruction of each position from runs modulo distinct
/// primes.
pub fn crt_combine(runs: &[(u64, &[u64])]) -> Result<Vec<BigInt>> {
    let Some(&(_, first)) = runs.first() else {
        return invalid("CRT needs at least one run");
    };
    let len = first.len();
    for (i, (qi, ri)) in runs.iter().enumerate() {
        if ri.len() != len {
            return invalid("CRT runs have different lengths");
        }
        if *qi < 2 || !arith::is_prime(*qi) {
            return invalid(format!("CRT modulus {qi} is not prime"));
        }
        if runs[..i].iter().any(|(qj, _)| qj == qi) {
            return invalid(format!("CRT modulus {qi} repeated"));
        }
    }
    let mut modulus = BigInt::one();
    let mut acc: Vec<BigInt> = vec![BigInt::zero(); len];
    for &(q, res) in runs {
        let qb = BigInt::from(q);
        if modulus.is_one() {
            acc = res.iter().map(|&r| BigInt::from(r % q)).collect();
        } else {
            // x = acc + M * ((r - acc) * M^{-1} mod q)
            let m_mod = (&modulus % &qb).to_u64().unwrap();
            let inv = arith::inv_mod(m_mod, q).expect("distinct primes");
            for (x, &r) in acc.iter_mut().zip(res) {
                let x_mod = (&*x % &qb).to_u64().unwrap();
                let diff = (r % q + q - x_mod) % q;
                let t = arith::mul_mod(diff, inv, q);
                *x += &modulus * BigInt::from(t);
            }
        }
        modulus *= qb;
    }
    let half = &modulus >> 1;
    for x in acc.iter_mut() {
        *x = x.mod_floor(&modulus);
        if *x > half {
            *x -= &modulus;
        }
    }
    Ok(acc)
}

/// CRT reconstruction checked against per-position bounds.
pub fn crt_combine_bounded(runs: &[(u64, &[u64])], bounds: &[f64]) -> Result<Vec<BigInt>> {
    let modulus: f64 = runs.iter().map(|&(q, _)| q as f64).product();
    let out = crt_combine(runs)?;
    if bounds.len() != out.len() {
        return invalid("one bound per reconstructed value");
    }
    for (t, (x, &b)) in out.iter().zip(bounds).enumerate() {
        if !liftable(b, modulus) {
            return Err(Error::Lift { index: t as u64 });
        }
        if x.abs().to_f64().unwrap_or(f64::INFINITY) > b * (1.0 + 1e-9) + 1.0 {
            return Err(Error::Integrity(format!(
                "reconstructed value {x} at position {t} exceeds its bound {b}"
            )));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn balanced_examples() {
        assert_eq!(balanced(97, 95), -2);
        assert_eq!(balanced(97, 0), 0);
        assert_eq!(balanced(97, 48), 48);
        assert_eq!(balanced(97, 49), -48);
    }

    #[test]
    fn lift_reports_first_failing_index() {
        let r = lift_balanced(97, &[2, 3, 5], &[1, 2, 3], 1, |m| if m >= 3 { 60.0 } else { 1.0 });
        assert!(matches!(r, Err(Error::Lift { index: 3 })));
    }

    #[test]
    fn crt_two_primes() {
        let (q1, q2) = (1_000_003u64, 998_244_353u64);
        let v: i128 = -123_456_789_012;
        let r1 = v.rem_euclid(q1 as i128) as u64;
        let r2 = v.rem_euclid(q2 as i128) as u64;
        let out = crt_combine(&[(q1, &[r1, 5]), (q2, &[r2, 5])]).unwrap();
        assert_eq!(out[0], BigInt::from(v));
        assert_eq!(out[1], BigInt::from(5));
        let single = crt_combine(&[(97, &[95])]).unwrap();
        assert_eq!(single[0], BigInt::from(-2));
        assert!(crt_combine(&[(97, &[1]), (97, &[1])]).is_err());
    }
}
