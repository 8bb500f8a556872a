//! Expansion of Euler products prod_p F_p(p^-s)^-1 into Dirichlet
//! coefficients a_1..a_{n-1}.

use crate::error::{invalid, Error, Result};
use crate::ring::Ring;
use crate::sieve::{smooth_sieve_expand_order, CoprimeTable};
use crate::symfun::{complete_sums_into, h_from_partitions, FactorRepr, ReprKind};

/// Dense coefficients; `values[k]` is a_k for 1 <= k < len, and
/// `values[0]` is a free slot (zero unless a constant term is attached).
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffSeq<E> {
    pub values: Vec<E>,
}

impl<E: Clone> CoeffSeq<E> {
    /// Exclusive index bound.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.len() <= 1
    }

    pub fn get(&self, k: usize) -> &E {
        &self.values[k]
    }

    /// a_1..a_{len-1}.
    pub fn coefficients(&self) -> &[E] {
        self.values.get(1..).unwrap_or(&[])
    }
}

/// Per-prime source of local factors, queried in ascending prime order.
pub trait EulerFactorProvider<R: Ring> {
    /// Declared degree of the local factors.
    fn degree(&self) -> usize;

    /// F_p with at least `prec` terms when not in polynomial form.
    fn local_factor(&self, ring: &R, p: u64, prec: usize) -> Result<FactorRepr<R::Elem>>;
}

/// Provider backed by a closure.
pub struct FnProvider<F> {
    degree: usize,
    f: F,
}

pub fn provider_fn<R, F>(degree: usize, f: F) -> FnProvider<F>
where
    R: Ring,
    F: Fn(&R, u64, usize) -> Result<FactorRepr<R::Elem>>,
{
    FnProvider { degree, f }
}

impl<R, F> EulerFactorProvider<R> for FnProvider<F>
where
    R: Ring,
    F: Fn(&R, u64, usize) -> Result<FactorRepr<R::Elem>>,
{
    fn degree(&self) -> usize {
        self.degree
    }
    fn local_factor(&self, ring: &R, p: u64, prec: usize) -> Result<FactorRepr<R::Elem>> {
        (self.f)(ring, p, prec)
    }
}

fn tag(p: u64) -> impl FnOnce(Error) -> Error {
    move |e| Error::Provider {
        p,
        source: Box::new(e),
    }
}

/// a_p, a_{p^2}, ..., a_{p^e_max} from one local factor.
pub(crate) fn block_from_factor<R: Ring>(
    ring: &R,
    f: &FactorRepr<R::Elem>,
    e_max: usize,
    out: &mut Vec<R::Elem>,
) -> Result<()> {
    match f.kind {
        ReprKind::Poly => complete_sums_into(ring, &f.values, e_max, out),
        ReprKind::Complete => {
            if f.values.len() < e_max {
                return invalid("provider returned too few complete sums");
            }
            out.extend_from_slice(&f.values[..e_max]);
        }
        ReprKind::Newton => {
            let n = &f.values;
            if n.len() < e_max {
                return invalid("provider returned too few power sums");
            }
            let base = out.len();
            for e in 1..=e_max {
                // e h_e = N_e + sum_{j=1}^{e-1} N_j h_{e-j}
                let mut acc = n[e - 1].clone();
                for j in 1..e {
                    let t = ring.mul(&n[j - 1], &out[base + e - j - 1]);
                    acc = ring.add(&acc, &t);
                }
                let h = if e == 1 { acc } else { ring.div_small(&acc, e as u64)? };
                out.push(h);
            }
        }
    }
    Ok(())
}

/// a_{p^e} for e = 1..e_max.
pub fn primepower_block<R: Ring, P: EulerFactorProvider<R> + ?Sized>(
    ring: &R,
    provider: &P,
    p: u64,
    e_max: usize,
) -> Result<Vec<R::Elem>> {
    let f = provider.local_factor(ring, p, e_max).map_err(tag(p))?;
    let mut out = Vec::with_capacity(e_max);
    block_from_factor(ring, &f, e_max, &mut out).map_err(tag(p))?;
    Ok(out)
}

/// Dirichlet coefficients below `table.n()` using one multiplication per
/// composite non-prime-power index.
pub fn expand_precomp<R: Ring, P: EulerFactorProvider<R> + ?Sized>(
    ring: &R,
    provider: &P,
    table: &CoprimeTable,
) -> Result<CoeffSeq<R::Elem>> {
    let n = table.n() as usize;
    let mut values = vec![ring.zero(); n];
    if n > 1 {
        values[1] = ring.one();
    }
    let mut block = Vec::new();
    for (i, &p) in table.primes().iter().enumerate() {
        let powers = table.prime_powers(i);
        block.clear();
        let f = provider
            .local_factor(ring, p as u64, powers.len())
            .map_err(tag(p as u64))?;
        block_from_factor(ring, &f, powers.len(), &mut block).map_err(tag(p as u64))?;
        for (&pe, h) in powers.iter().zip(block.drain(..)) {
            values[pe as usize] = h;
        }
    }
    let (ks, pes, ms) = table.decomp_arrays();
    for j in 0..ks.len() {
        let v = ring.mul(&values[pes[j] as usize], &values[ms[j] as usize]);
        values[ks[j] as usize] = v;
    }
    Ok(CoeffSeq { values })
}

/// Reference expansion: largest-prime-factor schedule, prime-power terms
/// from power-series inversion of F_p (or the partition formula for power
/// sums). Independent of the rough-coprime sieve.
pub fn expand_reference<R: Ring, P: EulerFactorProvider<R> + ?Sized>(
    ring: &R,
    provider: &P,
    n: u64,
) -> Result<CoeffSeq<R::Elem>> {
    if n < 2 {
        return invalid("expansion bound must be at least 2");
    }
    let nu = n as usize;
    let mut values = vec![ring.zero(); nu];
    values[1] = ring.one();
    let mut composite = vec![false; nu];
    for p in 2..nu {
        if composite[p] {
            continue;
        }
        let mut k = p * p;
        while k < nu {
            composite[k] = true;
            k += p;
        }
        let mut powers = vec![p];
        while let Some(next) = powers.last().unwrap().checked_mul(p).filter(|&v| v < nu) {
            powers.push(next);
        }
        let e_max = powers.len();
        let f = provider
            .local_factor(ring, p as u64, e_max)
            .map_err(tag(p as u64))?;
        let h = inverse_series(ring, &f, e_max).map_err(tag(p as u64))?;
        for (pe, v) in powers.into_iter().zip(h) {
            values[pe] = v;
        }
    }
    for (k, pe, m) in smooth_sieve_expand_order(n)? {
        values[k as usize] = ring.mul(&values[pe as usize], &values[m as usize]);
    }
    Ok(CoeffSeq { values })
}

fn inverse_series<R: Ring>(
    ring: &R,
    f: &FactorRepr<R::Elem>,
    e_max: usize,
) -> Result<Vec<R::Elem>> {
    match f.kind {
        ReprKind::Poly => {
            // g = 1/c as a power series, g_e = -sum_{i>=1} c_i g_{e-i}
            let c = f.coeffs(ring)?;
            let mut g = vec![ring.one()];
            for e in 1..=e_max {
                let mut acc = ring.zero();
                for (i, ci) in c.iter().enumerate().skip(1).take(e) {
                    acc = ring.sub(&acc, &ring.mul(ci, &g[e - i]));
                }
                g.push(acc);
            }
            Ok(g.split_off(1))
        }
        ReprKind::Newton => (1..=e_max).map(|k| h_from_partitions(ring, f, k)).collect(),
        ReprKind::Complete => Ok(f.values[..e_max].to_vec()),
    }
}
