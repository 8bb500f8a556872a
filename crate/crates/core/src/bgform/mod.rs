//! Cusp forms as linear combinations of products of Eisenstein series,
//! evaluated modulo FFT primes and lifted to exact coordinates on a power
//! basis of the Hecke order.

mod decomp;
mod extend;
mod hasse;
mod lift;

pub use decomp::{parse_rational, parse_rational_str, BGDecomposition, Basis, EisProduct, ExactScalar};
pub use extend::{multiplicative_extend, EigenformEuler};
pub use hasse::{complex_roots, hasse_bound, HasseBound};
pub use lift::{balanced, crt_combine, crt_combine_bounded, lift_balanced, liftable};

use crate::arith;
use crate::chars::{eis_constant_term, CharValues, RingEmbedding};
use crate::eis::eisenstein_coeffs;
use crate::error::{invalid, Error, Result};
use crate::euler::CoeffSeq;
use crate::ntt::{find_fft_prime, find_fft_prime_from, series_mul, transform_log, FftPrime, NttPlan};
use crate::ring::{PrimeField, Ring};
use crate::sieve::{rough_coprime_sieve, CoprimeTable};

/// out_m = seq_{m/d} when d | m, else 0, for m = 0..=n. The constant term
/// is kept; no d^{k/2} scalar is applied.
pub fn expand_operator<E: Clone>(seq: &CoeffSeq<E>, d: u64, n: usize, zero: E) -> CoeffSeq<E> {
    let d = d.max(1) as usize;
    let mut values = vec![zero; n + 1];
    for (t, v) in seq.values.iter().enumerate() {
        let m = t * d;
        if m > n {
            break;
        }
        values[m] = v.clone();
    }
    CoeffSeq { values }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    PrimesOnly,
    All,
}

/// Residues of the coordinates a_{m,i} modulo one prime.
#[derive(Debug, Clone, PartialEq)]
pub struct MfResidues {
    pub q: u64,
    pub dim: usize,
    pub indices: Vec<u64>,
    /// Row-major: `values[t * dim + i]` is a_{indices[t], i} mod q, in [0, q).
    pub values: Vec<u64>,
}

struct Prepared {
    field: PrimeField,
    chars: Vec<CharValues<u64>>,
    /// matrix[i][j] in Montgomery form
    matrix: Vec<Vec<u64>>,
}

fn prepare(dec: &BGDecomposition, prime: &FftPrime) -> Result<Prepared> {
    let field = prime.field();
    let q = prime.q;
    let l = dec.root_order()?;
    if (q - 1) % l != 0 {
        return Err(Error::IncompatiblePrime { order: l, q });
    }
    let emb = RingEmbedding::finite_field_with_root(&field, l, prime.primitive_root)?;
    let chars = dec
        .characters()?
        .iter()
        .map(|c| CharValues::embed(&field, c, &emb))
        .collect::<Result<Vec<_>>>()?;
    let matrix = dec
        .matrix
        .iter()
        .map(|row| {
            row.iter()
                .map(|s| s.reduce(&field, field.pow(&emb.zeta, l / s.order())))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Prepared {
        field,
        chars,
        matrix,
    })
}

/// E_l^{phi,psi}|B_d for indices 0..=n, constant term included.
fn eisenstein_factor(
    field: &PrimeField,
    l: u32,
    phi: &CharValues<u64>,
    psi: &CharValues<u64>,
    d: u64,
    n: usize,
    table: &CoprimeTable,
) -> Result<Vec<u64>> {
    let m = n / d as usize;
    let mut seq = if m == 0 {
        CoeffSeq { values: vec![0] }
    } else {
        eisenstein_coeffs(field, l, phi, psi, m, table)?
    };
    seq.values[0] = eis_constant_term(field, l, phi, psi)?;
    Ok(expand_operator(&seq, d, n, 0).values)
}

fn product_series(
    p: &Prepared,
    weight: u32,
    prod: &EisProduct,
    n: usize,
    table: &CoprimeTable,
    plan: &NttPlan,
) -> Result<Vec<u64>> {
    let f = &p.field;
    let a = eisenstein_factor(f, prod.l, &p.chars[prod.i], &p.chars[prod.j], prod.d, n, table)?;
    if prod.l == weight {
        return Ok(a);
    }
    let b = eisenstein_factor(
        f,
        weight - prod.l,
        &p.chars[prod.i2],
        &p.chars[prod.j2],
        prod.d2,
        n,
        table,
    )?;
    if a == b {
        series_mul(f, plan, &a, &a, n + 1)
    } else {
        series_mul(f, plan, &a, &b, n + 1)
    }
}

/// Indices reported for a run of length n, plus the header block 0..=t
/// used for certification.
fn extraction_indices(dec: &BGDecomposition, n: usize, mode: Mode, table: &CoprimeTable) -> Vec<u64> {
    let t = dec.header.len().min(n);
    let mut idx: Vec<u64> = (0..=t as u64).collect();
    match mode {
        Mode::All => idx.extend(t as u64 + 1..=n as u64),
        Mode::PrimesOnly => idx.extend(
            table
                .primes()
                .iter()
                .map(|&p| p as u64)
                .filter(|&p| p as usize > t && p as usize <= n),
        ),
    }
    idx
}

/// Coordinates a_{m,i} mod q for m = 1..=n (all mode) or primes m <= n,
/// after checking that the run reproduces a_0 = 0 and the header.
///
/// The products are split over `threads` workers; each keeps its own
/// accumulator, so memory is O(n) per worker plus the extracted rows.
pub fn mf_coefficients(
    dec: &BGDecomposition,
    n: usize,
    prime: &FftPrime,
    mode: Mode,
    threads: usize,
) -> Result<MfResidues> {
    if n == 0 {
        return invalid("length must be positive");
    }
    let need = transform_log(n + 1)?;
    if prime.r < need {
        return invalid(format!(
            "prime {} supports transforms of size 2^{}, length {n} needs 2^{need}",
            prime.q, prime.r
        ));
    }
    let prep = prepare(dec, prime)?;
    let table = rough_coprime_sieve(n as u64 + 1)?;
    let plan = NttPlan::new(prime, need)?;
    let idx = extraction_indices(dec, n, mode, &table);
    let dim = dec.dim();
    let threads = threads.clamp(1, dec.products.len());

    let work = |js: Vec<usize>| -> Result<Vec<u64>> {
        let f = &prep.field;
        let mut acc = vec![0u64; idx.len() * dim];
        for j in js {
            let s = product_series(&prep, dec.weight, &dec.products[j], n, &table, &plan)?;
            for i in 0..dim {
                let b = prep.matrix[i][j];
                if b == 0 {
                    continue;
                }
                for (t, &m) in idx.iter().enumerate() {
                    let v = f.mont_mul(b, s[m as usize]);
                    acc[t * dim + i] = f.mont_add(acc[t * dim + i], v);
                }
            }
        }
        Ok(acc)
    };

    let parts: Vec<Result<Vec<u64>>> = if threads == 1 {
        vec![work((0..dec.products.len()).collect())]
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..threads)
                .map(|w| {
                    let js: Vec<usize> = (w..dec.products.len()).step_by(threads).collect();
                    let work = &work;
                    s.spawn(move || work(js))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("worker panicked"))
                .collect()
        })
    };
    let f = &prep.field;
    let mut acc = vec![0u64; idx.len() * dim];
    for part in parts {
        for (a, b) in acc.iter_mut().zip(part?) {
            *a = f.mont_add(*a, b);
        }
    }
    for v in acc.iter_mut() {
        *v = f.residue(*v);
    }
    certify(dec, prime.q, &idx, &acc)?;

    let t = dec.header.len().min(n);
    let keep: Vec<usize> = idx
        .iter()
        .enumerate()
        .filter(|&(_, &m)| m >= 1 && (mode == Mode::All || (m as usize > t) || arith::is_prime(m)))
        .map(|(pos, _)| pos)
        .collect();
    let mut values = Vec::with_capacity(keep.len() * dim);
    for &pos in &keep {
        values.extend_from_slice(&acc[pos * dim..(pos + 1) * dim]);
    }
    Ok(MfResidues {
        q: prime.q,
        dim,
        indices: keep.iter().map(|&pos| idx[pos]).collect(),
        values,
    })
}

fn certify(dec: &BGDecomposition, q: u64, idx: &[u64], acc: &[u64]) -> Result<()> {
    let dim = dec.dim();
    let to_res = |v: i64| v.rem_euclid(q as i64) as u64;
    for (t, &m) in idx.iter().enumerate() {
        let m = m as usize;
        if m > dec.header.len() {
            break;
        }
        let got = &acc[t * dim..(t + 1) * dim];
        let ok = if m == 0 {
            got.iter().all(|&v| v == 0)
        } else {
            got.iter().zip(&dec.header[m - 1]).all(|(&g, &h)| g == to_res(h))
        };
        if !ok {
            return Err(Error::Integrity(format!(
                "decomposition {} does not reproduce its header at index {m} mod {q}",
                dec.name.as_deref().unwrap_or("(unnamed)")
            )));
        }
    }
    Ok(())
}

/// Bound on |a_{m,i}|: d B 2 p^{(k-1)/2} at primes, d B tau(m) m^{(k-1)/2}
/// in general.
pub fn coefficient_bound(dec: &BGDecomposition, hasse: &HasseBound, m: u64, mode: Mode) -> f64 {
    let w = (m as f64).powf((dec.weight as f64 - 1.0) / 2.0);
    let tau = match mode {
        Mode::PrimesOnly if arith::is_prime(m) => 2.0,
        _ if m <= 1 => 1.0,
        _ => arith::factorize(m)
            .iter()
            .map(|&(_, e)| (e + 1) as f64)
            .product(),
    };
    hasse.coordinate_bound(dec.dim(), tau * w)
}

/// Options for [`mf_coefficients_exact`].
#[derive(Debug, Clone)]
pub struct MfOptions {
    pub mode: Mode,
    pub threads: usize,
    /// Size of the first FFT prime; ignored when `prime` is set.
    pub min_bits: u32,
    pub prime: Option<u64>,
}

impl Default for MfOptions {
    fn default() -> Self {
        MfOptions {
            mode: Mode::PrimesOnly,
            threads: 1,
            min_bits: 52,
            prime: None,
        }
    }
}

/// Exact coordinates on the power basis.
#[derive(Debug, Clone, PartialEq)]
pub struct MfCoefficients {
    pub dim: usize,
    pub indices: Vec<u64>,
    /// Row-major, `values[t * dim + i]`.
    pub values: Vec<i64>,
    /// Primes used; more than one means a CRT reconstruction.
    pub primes: Vec<u64>,
}

impl MfCoefficients {
    pub fn row(&self, t: usize) -> &[i64] {
        &self.values[t * self.dim..(t + 1) * self.dim]
    }

    pub fn get(&self, m: u64) -> Option<&[i64]> {
        self.indices.binary_search(&m).ok().map(|t| self.row(t))
    }
}

/// Runs [`mf_coefficients`] at as many FFT primes as the coefficient bound
/// requires and lifts the result.
pub fn mf_coefficients_exact(dec: &BGDecomposition, n: usize, opts: &MfOptions) -> Result<MfCoefficients> {
    let hasse = hasse_bound(&dec.basis)?;
    let orders = [dec.root_order()?];
    let first = match opts.prime {
        Some(q) => FftPrime::from_prime(q, n + 1, &orders)?,
        None => find_fft_prime(n + 1, &orders, opts.min_bits)?,
    };
    let run = mf_coefficients(dec, n, &first, opts.mode, opts.threads)?;
    let dim = run.dim;
    let max_bound = run
        .indices
        .iter()
        .map(|&m| coefficient_bound(dec, &hasse, m, opts.mode))
        .fold(0.0f64, f64::max);
    if liftable(max_bound, first.q as f64) {
        let values = lift_balanced(first.q, &run.indices, &run.values, dim, |m| {
            coefficient_bound(dec, &hasse, m, opts.mode)
        })?;
        return Ok(MfCoefficients {
            dim,
            indices: run.indices,
            values,
            primes: vec![first.q],
        });
    }
    let mut runs = vec![run];
    let mut modulus = first.q as f64;
    let mut last = first.q;
    while !liftable(max_bound, modulus) {
        let next = find_fft_prime_from(n + 1, &orders, last + 1)?;
        last = next.q;
        modulus *= next.q as f64;
        runs.push(mf_coefficients(dec, n, &next, opts.mode, opts.threads)?);
    }
    let bounds: Vec<f64> = runs[0]
        .indices
        .iter()
        .flat_map(|&m| std::iter::repeat(coefficient_bound(dec, &hasse, m, opts.mode)).take(dim))
        .collect();
    let pairs: Vec<(u64, &[u64])> = runs.iter().map(|r| (r.q, r.values.as_slice())).collect();
    let big = crt_combine_bounded(&pairs, &bounds)?;
    let values = big
        .iter()
        .map(|x| {
            i64::try_from(x).map_err(|_| Error::Capacity(format!("coefficient {x} exceeds 64 bits")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MfCoefficients {
        dim,
        indices: runs[0].indices.clone(),
        values,
        primes: runs.iter().map(|r| r.q).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dilation() {
        let seq = CoeffSeq {
            values: vec![0, 1, 2, 3, 4, 5, 6],
        };
        assert_eq!(expand_operator(&seq, 1, 6, 0), seq);
        assert_eq!(expand_operator(&seq, 2, 6, 0).values, vec![0, 0, 1, 0, 2, 0, 3]);
    }
}
