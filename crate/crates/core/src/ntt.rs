//! Truncated power-series products over word-size FFT primes.

use crate::arith::{self, lcm};
use crate::error::{invalid, try_vec, Error, Result};
use crate::ring::PrimeField;

/// Longest operand accepted by [`series_mul`].
pub const MAX_OPERAND_LEN: usize = 1 << 32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FftPrime {
    pub q: u64,
    /// 2-adic valuation of q - 1.
    pub r: u32,
    pub extra_orders: Vec<u64>,
    pub primitive_root: u64,
}

impl FftPrime {
    /// Wrap a known prime, checking it supports length-n products and the
    /// given root-of-unity orders.
    pub fn from_prime(q: u64, n: usize, orders: &[u64]) -> Result<Self> {
        if q >= 1 << 63 || q < 3 || !arith::is_prime(q) {
            return invalid(format!("{q} is not an odd prime below 2^63"));
        }
        let r = (q - 1).trailing_zeros();
        let need = transform_log(n)?;
        if r < need {
            return invalid(format!(
                "q - 1 has 2-adic valuation {r}, length {n} needs {need}"
            ));
        }
        for &o in orders {
            if o == 0 || (q - 1) % o != 0 {
                return Err(Error::IncompatiblePrime { order: o, q });
            }
        }
        Ok(FftPrime {
            q,
            r,
            extra_orders: orders.to_vec(),
            primitive_root: arith::primitive_root(q),
        })
    }

    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.q).expect("FFT prime is prime")
    }
}

/// log2 of the least power of two >= 2n.
pub fn transform_log(n: usize) -> Result<u32> {
    if n > MAX_OPERAND_LEN {
        return Err(Error::Capacity(format!(
            "series length {n} exceeds 2^32"
        )));
    }
    let size = (2 * n.max(1)).next_power_of_two();
    Ok(size.trailing_zeros())
}

/// Smallest prime q >= 2^min_bits with q = 1 mod 2^r * lcm(orders), where
/// 2^r is the least power of two >= 2n.
pub fn find_fft_prime(n: usize, orders: &[u64], min_bits: u32) -> Result<FftPrime> {
    if min_bits > 62 {
        return invalid("min_bits must be at most 62");
    }
    find_fft_prime_from(n, orders, 1 << min_bits)
}

/// Same congruence conditions, smallest such prime >= `lower`.
pub fn find_fft_prime_from(n: usize, orders: &[u64], lower: u64) -> Result<FftPrime> {
    let r = transform_log(n)?;
    let l = orders.iter().fold(1u64, |acc, &o| if o == 0 { acc } else { lcm(acc, o) });
    let step = (l as u128) << r;
    let limit = 1u128 << 63;
    if step >= limit {
        return Err(Error::Capacity("no FFT prime below 2^63 for these orders".into()));
    }
    let lo = (lower as u128).max(2);
    let mut m = (lo - 1).div_ceil(step).max(1);
    loop {
        let q = m * step + 1;
        if q >= limit {
            return Err(Error::Capacity(format!(
                "no FFT prime below 2^63 for length {n}"
            )));
        }
        if arith::is_prime(q as u64) {
            return FftPrime::from_prime(q as u64, n, orders);
        }
        m += 1;
    }
}

#[inline]
fn shoup(w: u64, q: u64) -> u64 {
    (((w as u128) << 64) / q as u128) as u64
}

/// x * w mod q for a constant w with precomputed shoup(w); x may be in
/// Montgomery form, the result then is too.
#[inline(always)]
fn mul_shoup(x: u64, w: u64, wp: u64, q: u64) -> u64 {
    let hi = ((x as u128 * wp as u128) >> 64) as u64;
    let r = x.wrapping_mul(w).wrapping_sub(hi.wrapping_mul(q));
    if r >= q {
        r - q
    } else {
        r
    }
}

/// Twiddle tables for radix-2 transforms up to a fixed size. Entry h + j
/// holds w_{2h}^j for each level h, so every smaller size reuses them.
#[derive(Debug, Clone)]
pub struct NttPlan {
    q: u64,
    log_size: u32,
    tw: Vec<u64>,
    tw_shoup: Vec<u64>,
}

impl NttPlan {
    pub fn new(prime: &FftPrime, log_size: u32) -> Result<Self> {
        if log_size > prime.r {
            return invalid(format!(
                "transform of size 2^{log_size} needs 2^{log_size} | q - 1"
            ));
        }
        let q = prime.q;
        let size = 1usize << log_size;
        let mut tw = try_vec(size.max(2), 0u64, "twiddle table")?;
        let mut tw_shoup = try_vec(size.max(2), 0u64, "twiddle table")?;
        let mut h = 1usize;
        while h < size {
            let w = arith::pow_mod(prime.primitive_root, (q - 1) / (2 * h as u64), q);
            let mut x = 1u64;
            for j in 0..h {
                tw[h + j] = x;
                tw_shoup[h + j] = shoup(x, q);
                x = arith::mul_mod(x, w, q);
            }
            h *= 2;
        }
        Ok(NttPlan {
            q,
            log_size,
            tw,
            tw_shoup,
        })
    }

    pub fn max_size(&self) -> usize {
        1 << self.log_size
    }

    /// In-place forward transform, natural order in, bit-reversed out.
    pub fn forward(&self, a: &mut [u64]) {
        let q = self.q;
        let size = a.len();
        debug_assert!(size.is_power_of_two() && size <= self.max_size());
        let mut h = size / 2;
        while h >= 1 {
            for block in a.chunks_exact_mut(2 * h) {
                let (lo, hi) = block.split_at_mut(h);
                for j in 0..h {
                    let u = lo[j];
                    let v = hi[j];
                    let s = u + v;
                    lo[j] = if s >= q { s - q } else { s };
                    let d = u + q - v;
                    hi[j] = mul_shoup(d, self.tw[h + j], self.tw_shoup[h + j], q);
                }
            }
            h /= 2;
        }
    }

    /// In-place inverse transform, bit-reversed in, natural order out,
    /// including the 1/size scaling.
    pub fn inverse(&self, a: &mut [u64]) {
        let q = self.q;
        let size = a.len();
        debug_assert!(size.is_power_of_two() && size <= self.max_size());
        let mut h = 1;
        while h < size {
            for block in a.chunks_exact_mut(2 * h) {
                let (lo, hi) = block.split_at_mut(h);
                // w^{-j} = -w^{h-j} for j >= 1
                let u = lo[0];
                let v = hi[0];
                let s = u + v;
                lo[0] = if s >= q { s - q } else { s };
                hi[0] = if u >= v { u - v } else { u + q - v };
                for j in 1..h {
                    let u = lo[j];
                    let t = mul_shoup(hi[j], self.tw[2 * h - j], self.tw_shoup[2 * h - j], q);
                    lo[j] = if u >= t { u - t } else { u + q - t };
                    let s = u + t;
                    hi[j] = if s >= q { s - q } else { s };
                }
            }
            h *= 2;
        }
        let inv = arith::inv_mod(size as u64 % q, q).expect("size invertible");
        let invp = shoup(inv, q);
        for x in a.iter_mut() {
            *x = mul_shoup(*x, inv, invp, q);
        }
    }
}

/// First n coefficients of a * b for sequences in Montgomery form over the
/// plan's prime. Missing entries count as zero.
pub fn series_mul(
    field: &PrimeField,
    plan: &NttPlan,
    a: &[u64],
    b: &[u64],
    n: usize,
) -> Result<Vec<u64>> {
    if field.modulus() != plan.q {
        return invalid("operands and plan use different primes");
    }
    if a.len() > MAX_OPERAND_LEN || b.len() > MAX_OPERAND_LEN {
        return Err(Error::Capacity("operand longer than 2^32".into()));
    }
    let la = a.len().min(n);
    let lb = b.len().min(n);
    if la == 0 || lb == 0 {
        return Ok(vec![0; n]);
    }
    let size = (la + lb - 1).next_power_of_two();
    if size > plan.max_size() {
        return Err(Error::Capacity(format!(
            "transform of size {size} exceeds plan size {}",
            plan.max_size()
        )));
    }
    let square = std::ptr::eq(a.as_ptr(), b.as_ptr()) && la == lb;
    let mut fa = try_vec(size, 0u64, "transform buffer")?;
    fa[..la].copy_from_slice(&a[..la]);
    plan.forward(&mut fa);
    if square {
        for x in fa.iter_mut() {
            *x = field.mont_mul(*x, *x);
        }
    } else {
        let mut fb = try_vec(size, 0u64, "transform buffer")?;
        fb[..lb].copy_from_slice(&b[..lb]);
        plan.forward(&mut fb);
        for (x, y) in fa.iter_mut().zip(&fb) {
            *x = field.mont_mul(*x, *y);
        }
    }
    plan.inverse(&mut fa);
    fa.truncate(n);
    fa.resize(n, 0);
    Ok(fa)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    #[test]
    fn prime_for_length_eight() {
        let p = find_fft_prime(8, &[1], 6).unwrap();
        assert_eq!(p.q, 97);
        assert!(p.r >= 5);
    }

    #[test]
    fn prime_congruences() {
        let p = find_fft_prime(1 << 20, &[10], 50).unwrap();
        assert_eq!((p.q - 1) % (10 << 21), 0);
        assert!(p.q >= 1 << 50);
        let p = find_fft_prime(1000, &[22], 40).unwrap();
        assert_eq!((p.q - 1) % 22, 0);
    }

    #[test]
    fn square_of_one_plus_x() {
        let prime = find_fft_prime(4, &[], 20).unwrap();
        let f = prime.field();
        let plan = NttPlan::new(&prime, prime.r.min(3)).unwrap();
        let a = vec![f.one(), f.one()];
        let c = series_mul(&f, &plan, &a, &a, 3).unwrap();
        let got: Vec<i64> = c.iter().map(|&x| f.balanced(x)).collect();
        assert_eq!(got, vec![1, 2, 1]);
    }

    #[test]
    fn oversized_requests_fail() {
        assert!(matches!(transform_log(MAX_OPERAND_LEN + 1), Err(Error::Capacity(_))));
    }
}
