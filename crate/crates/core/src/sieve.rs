//! Primes below n and one coprime factorization k = p^e * m for every
//! composite k that is not a prime power.
//!
//! The table is built with a doubly linked list over the odd integers. When
//! the smallest surviving element p > 1 is reached it is prime; every list
//! element m (ascending) then yields k = p^e * m, which is removed so that
//! after the pass the list holds exactly the integers free of primes <= p.
//! Each node is removed once, so construction takes O(n) word operations.

use crate::error::{invalid, try_vec, Result};

const NIL: u32 = u32::MAX;

/// Largest supported exclusive bound.
pub const MAX_TABLE_LEN: u64 = 1 << 32;

#[derive(Debug, Clone)]
pub struct CoprimeTable {
    n: u64,
    primes: Vec<u32>,
    pp_start: Vec<u32>,
    pp_values: Vec<u32>,
    ks: Vec<u32>,
    pes: Vec<u32>,
    ms: Vec<u32>,
    unlinks: u64,
}

impl CoprimeTable {
    /// Exclusive bound: the table covers 1 < k < n.
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    /// p, p^2, ... below n for the i-th prime.
    pub fn prime_powers(&self, i: usize) -> &[u32] {
        &self.pp_values[self.pp_start[i] as usize..self.pp_start[i + 1] as usize]
    }

    /// All prime powers p^e (e >= 1) below n, grouped by prime.
    pub fn all_prime_powers(&self) -> &[u32] {
        &self.pp_values
    }

    /// Parallel arrays (k, p^e, m) sorted by k.
    pub fn decomp_arrays(&self) -> (&[u32], &[u32], &[u32]) {
        (&self.ks, &self.pes, &self.ms)
    }

    pub fn decomps(&self) -> impl Iterator<Item = (u32, u32, u32)> + '_ {
        self.ks
            .iter()
            .zip(&self.pes)
            .zip(&self.ms)
            .map(|((&k, &pe), &m)| (k, pe, m))
    }

    pub fn num_decomps(&self) -> usize {
        self.ks.len()
    }

    /// Number of list nodes removed during construction.
    pub fn unlink_count(&self) -> u64 {
        self.unlinks
    }
}

pub fn rough_coprime_sieve(n: u64) -> Result<CoprimeTable> {
    if n < 2 {
        return invalid(format!("sieve bound must be at least 2, got {n}"));
    }
    if n > MAX_TABLE_LEN {
        return Err(crate::Error::Capacity(format!(
            "sieve bound {n} exceeds 2^32"
        )));
    }
    let nu = n as usize;
    let half = nu / 2;
    let mut next = try_vec(half, NIL, "sieve list")?;
    let mut prev = try_vec(half, NIL, "sieve list")?;
    for i in 0..half {
        next[i] = if i + 1 < half { (i + 1) as u32 } else { NIL };
        prev[i] = if i > 0 { (i - 1) as u32 } else { NIL };
    }
    let mut pe_of = try_vec(nu, 0u32, "sieve factor table")?;
    let mut primes = Vec::new();
    let mut pp_start = vec![0u32];
    let mut pp_values = Vec::new();
    let mut unlinks = 0u64;

    let mut unlink = |i: u32, next: &mut [u32], prev: &mut [u32]| {
        let (a, b) = (prev[i as usize], next[i as usize]);
        if a != NIL {
            next[a as usize] = b;
        }
        if b != NIL {
            prev[b as usize] = a;
        }
        unlinks += 1;
    };

    if n > 2 {
        primes.push(2);
        let mut pe = 2u64;
        while pe < n {
            pp_values.push(pe as u32);
            pe *= 2;
        }
        pp_start.push(pp_values.len() as u32);
        let mut m = 3u64;
        while 2 * m < n {
            let mut pe = 2u64;
            while pe * m < n {
                pe_of[(pe * m) as usize] = pe as u32;
                pe *= 2;
            }
            m += 2;
        }
    }

    while half > 0 {
        let pi = next[0];
        if pi == NIL {
            break;
        }
        let p = 2 * pi as u64 + 1;
        primes.push(p as u32);
        let mut pe = p;
        while pe < n {
            pp_values.push(pe as u32);
            unlink((pe / 2) as u32, &mut next, &mut prev);
            pe *= p;
        }
        pp_start.push(pp_values.len() as u32);

        let mut mi = next[0];
        while mi != NIL {
            let m = 2 * mi as u64 + 1;
            if p * m >= n {
                break;
            }
            let mut pe = p;
            while pe * m < n {
                let k = pe * m;
                pe_of[k as usize] = pe as u32;
                unlink((k / 2) as u32, &mut next, &mut prev);
                pe *= p;
            }
            mi = next[mi as usize];
        }
    }
    drop(next);
    drop(prev);

    let count = pe_of.iter().filter(|&&x| x != 0).count();
    let mut ks = try_vec(count, 0u32, "decomposition table")?;
    let mut pes = try_vec(count, 0u32, "decomposition table")?;
    let mut ms = try_vec(count, 0u32, "decomposition table")?;
    let mut j = 0;
    for (k, &pe) in pe_of.iter().enumerate() {
        if pe != 0 {
            ks[j] = k as u32;
            pes[j] = pe;
            ms[j] = (k as u32) / pe;
            j += 1;
        }
    }
    Ok(CoprimeTable {
        n,
        primes,
        pp_start,
        pp_values,
        ks,
        pes,
        ms,
        unlinks,
    })
}

/// The baseline schedule: every composite non-prime-power k < n as
/// (k, p^e, m) with p the largest prime factor of k, ordered so that m
/// always precedes k. O(n log log n) to build; used as a reference path.
pub fn smooth_sieve_expand_order(n: u64) -> Result<Vec<(u32, u32, u32)>> {
    if n < 2 {
        return invalid(format!("sieve bound must be at least 2, got {n}"));
    }
    if n > MAX_TABLE_LEN {
        return Err(crate::Error::Capacity(format!(
            "sieve bound {n} exceeds 2^32"
        )));
    }
    let nu = n as usize;
    let mut lpf = try_vec(nu, 0u32, "largest prime factor table")?;
    for p in 2..nu {
        if lpf[p] == 0 {
            let mut k = p;
            while k < nu {
                lpf[k] = p as u32;
                k += p;
            }
        }
    }
    let mut out = Vec::new();
    for k in 2..nu {
        let p = lpf[k] as usize;
        let mut pe = 1;
        let mut m = k;
        while m % p == 0 {
            m /= p;
            pe *= p;
        }
        if m > 1 {
            out.push((k as u32, pe as u32, m as u32));
        }
    }
    out.sort_by_key(|&(k, pe, m)| (lpf[k as usize], k, pe, m));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_bounds() {
        let t = rough_coprime_sieve(2).unwrap();
        assert!(t.primes().is_empty());
        assert_eq!(t.num_decomps(), 0);
        let t = rough_coprime_sieve(3).unwrap();
        assert_eq!(t.primes(), &[2]);
        let t = rough_coprime_sieve(4).unwrap();
        assert_eq!(t.primes(), &[2, 3]);
        assert_eq!(t.num_decomps(), 0);
        assert!(rough_coprime_sieve(1).is_err());
    }

    #[test]
    fn bound_twenty() {
        let t = rough_coprime_sieve(20).unwrap();
        assert_eq!(t.primes(), &[2, 3, 5, 7, 11, 13, 17, 19]);
        let d: Vec<_> = t.decomps().collect();
        assert_eq!(
            d,
            vec![
                (6, 2, 3),
                (10, 2, 5),
                (12, 4, 3),
                (14, 2, 7),
                (15, 3, 5),
                (18, 2, 9)
            ]
        );
        assert_eq!(t.prime_powers(0), &[2, 4, 8, 16]);
        assert_eq!(t.prime_powers(1), &[3, 9]);
    }

    #[test]
    fn seventy_five() {
        let t = rough_coprime_sieve(76).unwrap();
        assert!(t.decomps().any(|d| d == (75, 3, 25)));
    }

    #[test]
    fn smooth_order_examples() {
        let s = smooth_sieve_expand_order(20).unwrap();
        assert!(s.contains(&(12, 3, 4)));
        assert!(s.contains(&(18, 9, 2)));
        assert!(smooth_sieve_expand_order(4).unwrap().is_empty());
    }
}
