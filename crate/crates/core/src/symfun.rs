//! Euler factors as symmetric functions of their inverse roots.
//!
//! A local factor P(T) = prod (1 - a_i T) of degree d is carried in one of
//! three forms: the elementary symmetric functions s_1..s_d with
//! P(T) = sum (-1)^k s_k T^k, the power sums N_k = sum a_i^k, or the
//! complete homogeneous sums h_k, which are the coefficients of 1/P(T).

use crate::error::{invalid, Error, Result};
use crate::ring::Ring;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReprKind {
    /// Elementary symmetric functions s_1..s_d.
    Poly,
    /// Power sums N_1..N_l.
    Newton,
    /// Complete homogeneous sums h_1..h_l.
    Complete,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FactorRepr<E> {
    pub kind: ReprKind,
    pub degree: usize,
    pub values: Vec<E>,
}

/// Target of the exponential recurrence in [`poly_from_newton`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    /// exp(-sum N_k T^k / k) = P(T): yields s_k.
    Minus,
    /// exp(+sum N_k T^k / k) = 1/P(T): yields h_k.
    Plus,
}

impl<E: Clone + PartialEq> FactorRepr<E> {
    /// From s_1..s_d; the degree is the number of values.
    pub fn poly(sigmas: Vec<E>) -> Self {
        FactorRepr {
            kind: ReprKind::Poly,
            degree: sigmas.len(),
            values: sigmas,
        }
    }

    pub fn newton(degree: usize, sums: Vec<E>) -> Self {
        FactorRepr {
            kind: ReprKind::Newton,
            degree,
            values: sums,
        }
    }

    pub fn complete(degree: usize, sums: Vec<E>) -> Self {
        FactorRepr {
            kind: ReprKind::Complete,
            degree,
            values: sums,
        }
    }

    /// The constant factor 1 (degree 0).
    pub fn unit() -> Self {
        Self::poly(Vec::new())
    }

    /// From ascending polynomial coefficients c_0 = 1, c_1, ..., c_d.
    pub fn from_coeffs<R: Ring<Elem = E>>(ring: &R, coeffs: &[E]) -> Result<Self> {
        let Some((c0, rest)) = coeffs.split_first() else {
            return Ok(Self::unit());
        };
        if *c0 != ring.one() {
            return invalid("local factor must have constant term 1");
        }
        let mut sig: Vec<E> = rest
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 0 { ring.neg(c) } else { c.clone() })
            .collect();
        while sig.last().is_some_and(|s| ring.is_zero(s)) {
            sig.pop();
        }
        Ok(Self::poly(sig))
    }

    /// Ascending polynomial coefficients c_0..c_d (poly kind only).
    pub fn coeffs<R: Ring<Elem = E>>(&self, ring: &R) -> Result<Vec<E>> {
        self.expect(ReprKind::Poly)?;
        let mut out = vec![ring.one()];
        for (i, s) in self.values.iter().enumerate() {
            out.push(if i % 2 == 0 { ring.neg(s) } else { s.clone() });
        }
        Ok(out)
    }

    fn expect(&self, kind: ReprKind) -> Result<()> {
        if self.kind != kind {
            return invalid(format!("expected {kind:?} representation, got {:?}", self.kind));
        }
        Ok(())
    }
}

/// acc +/- a*b, tracking the alternating sign of the recurrences.
fn fused<R: Ring>(ring: &R, acc: Option<R::Elem>, term: R::Elem, negate: bool) -> R::Elem {
    match (acc, negate) {
        (None, false) => term,
        (None, true) => ring.neg(&term),
        (Some(a), false) => ring.add(&a, &term),
        (Some(a), true) => ring.sub(&a, &term),
    }
}

/// N_1..N_l from P = sum (-1)^k s_k T^k via N = -P'/P.
pub fn newton_from_poly<R: Ring>(
    ring: &R,
    p: &FactorRepr<R::Elem>,
    l: usize,
) -> Result<FactorRepr<R::Elem>> {
    p.expect(ReprKind::Poly)?;
    let d = p.values.len();
    let mut n: Vec<R::Elem> = Vec::with_capacity(l);
    for k in 1..=l {
        // N_k = sum_{i=1}^{k-1} (-1)^{i-1} s_i N_{k-i} + (-1)^{k-1} k s_k
        let mut acc = None;
        for i in 1..k.min(d + 1) {
            let t = ring.mul(&p.values[i - 1], &n[k - i - 1]);
            acc = Some(fused(ring, acc, t, i % 2 == 0));
        }
        if k <= d {
            let ks = if k == 1 {
                p.values[0].clone()
            } else {
                ring.mul(&ring.from_i64(k as i64), &p.values[k - 1])
            };
            acc = Some(fused(ring, acc, ks, k % 2 == 0));
        }
        n.push(acc.unwrap_or_else(|| ring.zero()));
    }
    Ok(FactorRepr::newton(p.degree, n))
}

/// N_1..N_l from h_1..h_l via k h_k = sum N_j h_{k-j}.
pub fn newton_from_complete<R: Ring>(
    ring: &R,
    h: &FactorRepr<R::Elem>,
    l: usize,
) -> Result<FactorRepr<R::Elem>> {
    h.expect(ReprKind::Complete)?;
    if h.values.len() < l {
        return invalid("not enough complete sums");
    }
    let mut n: Vec<R::Elem> = Vec::with_capacity(l);
    for k in 1..=l {
        let mut acc = if k == 1 {
            h.values[0].clone()
        } else {
            ring.mul(&ring.from_i64(k as i64), &h.values[k - 1])
        };
        for j in 1..k {
            let t = ring.mul(&n[j - 1], &h.values[k - j - 1]);
            acc = ring.sub(&acc, &t);
        }
        n.push(acc);
    }
    Ok(FactorRepr::newton(h.degree, n))
}

/// s_k (sign Minus, truncated at the degree) or h_k (sign Plus) for
/// k <= l from power sums, via k x_k = sum_j (+/-)^{j-1} N_j x_{k-j}.
pub fn poly_from_newton<R: Ring>(
    ring: &R,
    n: &FactorRepr<R::Elem>,
    l: usize,
    sign: Sign,
) -> Result<FactorRepr<R::Elem>> {
    n.expect(ReprKind::Newton)?;
    let len = match sign {
        Sign::Minus => l.min(n.degree),
        Sign::Plus => l,
    };
    if n.values.len() < len {
        return invalid(format!(
            "need {len} power sums, have {}",
            n.values.len()
        ));
    }
    let mut x: Vec<R::Elem> = Vec::with_capacity(len);
    for k in 1..=len {
        let mut acc = n.values[k - 1].clone();
        if sign == Sign::Minus && k % 2 == 0 {
            acc = ring.neg(&acc);
        }
        for j in 1..k {
            let t = ring.mul(&n.values[j - 1], &x[k - j - 1]);
            let negate = sign == Sign::Minus && j % 2 == 0;
            acc = fused(ring, Some(acc), t, negate);
        }
        x.push(if k == 1 { acc } else { ring.div_small(&acc, k as u64)? });
    }
    Ok(match sign {
        Sign::Minus => {
            let mut f = FactorRepr::poly(x);
            f.degree = n.degree;
            f
        }
        Sign::Plus => FactorRepr::complete(n.degree, x),
    })
}

/// h_1..h_l from s_1..s_d by h_e = sum_{i=1}^{min(e,d)} (-1)^{i-1} s_i h_{e-i}.
/// Uses no division; the i = e term needs no multiplication since h_0 = 1.
pub fn complete_from_poly<R: Ring>(
    ring: &R,
    p: &FactorRepr<R::Elem>,
    l: usize,
) -> Result<FactorRepr<R::Elem>> {
    p.expect(ReprKind::Poly)?;
    let mut h = Vec::with_capacity(l);
    complete_sums_into(ring, &p.values, l, &mut h);
    Ok(FactorRepr::complete(p.degree, h))
}

pub(crate) fn complete_sums_into<R: Ring>(
    ring: &R,
    sig: &[R::Elem],
    l: usize,
    h: &mut Vec<R::Elem>,
) {
    let d = sig.len();
    let base = h.len();
    for e in 1..=l {
        let mut acc: Option<R::Elem> = None;
        for i in 1..=e.min(d) {
            let t = if i == e {
                sig[i - 1].clone()
            } else {
                ring.mul(&sig[i - 1], &h[base + e - i - 1])
            };
            acc = Some(fused(ring, acc, t, i % 2 == 0));
        }
        h.push(acc.unwrap_or_else(|| ring.zero()));
    }
}

/// Integer partitions of k as multiplicity vectors m[1..=k].
fn partitions(k: usize) -> Vec<Vec<u32>> {
    fn rec(rest: usize, max: usize, m: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(m.clone());
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            m[part] += 1;
            rec(rest - part, part, m, out);
            m[part] -= 1;
        }
    }
    let mut out = Vec::new();
    rec(k, k, &mut vec![0; k + 1], &mut out);
    out
}

/// h_k = sum over partitions of k of prod N_i^{m_i} / (i^{m_i} m_i!).
/// Each term is scaled by k! (an integer), with one division at the end.
pub fn h_from_partitions<R: Ring>(ring: &R, n: &FactorRepr<R::Elem>, k: usize) -> Result<R::Elem> {
    n.expect(ReprKind::Newton)?;
    if k == 0 {
        return Ok(ring.one());
    }
    if n.values.len() < k || k > 20 {
        return invalid("partition formula needs k <= 20 and N_1..N_k");
    }
    let fact = |x: u64| (1..=x).product::<u64>();
    let kfact = fact(k as u64);
    let mut acc = ring.zero();
    for m in partitions(k) {
        let mut z: u64 = 1;
        let mut term = ring.one();
        for (i, &mi) in m.iter().enumerate().skip(1) {
            if mi == 0 {
                continue;
            }
            z *= (i as u64).pow(mi) * fact(mi as u64);
            term = ring.mul(&term, &ring.pow(&n.values[i - 1], mi as u64));
        }
        let c = ring.from_i64((kfact / z) as i64);
        acc = ring.add(&acc, &ring.mul(&c, &term));
    }
    ring.div_small(&acc, kfact)
}

/// Convert to `kind` with l values (l is ignored for a full polynomial).
pub fn convert<R: Ring>(
    ring: &R,
    f: &FactorRepr<R::Elem>,
    kind: ReprKind,
    l: usize,
) -> Result<FactorRepr<R::Elem>> {
    use ReprKind::*;
    match (f.kind, kind) {
        (a, b) if a == b => {
            let mut g = f.clone();
            if a != Poly {
                if g.values.len() < l {
                    return invalid("not enough terms to convert");
                }
                g.values.truncate(l);
            }
            Ok(g)
        }
        (Poly, Newton) => newton_from_poly(ring, f, l),
        (Poly, Complete) => complete_from_poly(ring, f, l),
        (Newton, Poly) => poly_from_newton(ring, f, l, Sign::Minus),
        (Newton, Complete) => poly_from_newton(ring, f, l, Sign::Plus),
        (Complete, Newton) => newton_from_complete(ring, f, l),
        (Complete, Poly) => {
            let n = newton_from_complete(ring, f, l.min(f.degree))?;
            poly_from_newton(ring, &n, l, Sign::Minus)
        }
        _ => unreachable!(),
    }
}

fn newton_of<R: Ring>(ring: &R, f: &FactorRepr<R::Elem>, l: usize) -> Result<Vec<R::Elem>> {
    Ok(convert(ring, f, ReprKind::Newton, l)?.values)
}

/// Tensor product of local factors: inverse roots are all products
/// a_i b_j ... . Returned as l power sums.
pub fn tensor_product<R: Ring>(
    ring: &R,
    factors: &[FactorRepr<R::Elem>],
    l: usize,
) -> Result<FactorRepr<R::Elem>> {
    let Some((first, rest)) = factors.split_first() else {
        return invalid("tensor product of an empty list");
    };
    let mut n = newton_of(ring, first, l)?;
    let mut degree = first.degree;
    for f in rest {
        let m = newton_of(ring, f, l)?;
        for (a, b) in n.iter_mut().zip(&m) {
            *a = ring.mul(a, b);
        }
        degree *= f.degree;
    }
    Ok(FactorRepr::newton(degree, n))
}

/// The factor with inverse roots a_i^e, as l power sums.
pub fn root_power<R: Ring>(
    ring: &R,
    p: &FactorRepr<R::Elem>,
    e: usize,
    l: usize,
) -> Result<FactorRepr<R::Elem>> {
    if e == 0 {
        return invalid("root power exponent must be positive");
    }
    let n = newton_of(ring, p, e * l)?;
    let sampled = (1..=l).map(|k| n[k * e - 1].clone()).collect();
    Ok(FactorRepr::newton(p.degree, sampled))
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Symmetric power Sym^k P as l power sums: N_i(Sym^k P) = h_k(P^{o i}).
pub fn sym_power<R: Ring>(
    ring: &R,
    p: &FactorRepr<R::Elem>,
    k: usize,
    l: usize,
) -> Result<FactorRepr<R::Elem>> {
    if k == 0 {
        return invalid("symmetric power must be positive");
    }
    let degree = binomial((p.degree + k - 1) as u64, k as u64) as usize;
    let m = newton_of(ring, p, k * l)?;
    let mut out = Vec::with_capacity(l);
    for i in 1..=l {
        let sampled = FactorRepr::newton(p.degree, (1..=k).map(|j| m[i * j - 1].clone()).collect());
        let h = poly_from_newton(ring, &sampled, k, Sign::Plus)?;
        out.push(h.values[k - 1].clone());
    }
    Ok(FactorRepr::newton(degree, out))
}

/// Truncated product of ascending coefficient lists.
pub fn mul_trunc<R: Ring>(ring: &R, a: &[R::Elem], b: &[R::Elem], len: usize) -> Vec<R::Elem> {
    let mut out = vec![ring.zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if ring.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !ring.is_zero(y) {
                out[i + j] = ring.add(&out[i + j], &ring.mul(x, y));
            }
        }
    }
    out
}

/// Direct sum P (+) Q = P*Q. Poly inputs give the full product
/// polynomial; otherwise l power sums are added.
pub fn direct_sum<R: Ring>(
    ring: &R,
    p: &FactorRepr<R::Elem>,
    q: &FactorRepr<R::Elem>,
    l: usize,
) -> Result<FactorRepr<R::Elem>> {
    let degree = p.degree + q.degree;
    if p.kind == ReprKind::Poly && q.kind == ReprKind::Poly {
        let a = p.coeffs(ring)?;
        let b = q.coeffs(ring)?;
        let c = mul_trunc(ring, &a, &b, degree + 1);
        let mut f = FactorRepr::from_coeffs(ring, &c)?;
        f.degree = degree;
        return Ok(f);
    }
    let a = newton_of(ring, p, l)?;
    let b = newton_of(ring, q, l)?;
    let n = a.iter().zip(&b).map(|(x, y)| ring.add(x, y)).collect();
    Ok(FactorRepr::newton(degree, n))
}

/// Numerator A(T) with sum_k prod_i h_k(P_i) T^k = A(T) / (tensor P_i)(T).
/// Returns ascending coefficients of A, of degree below prod d_i.
pub fn rankin_numerator<R: Ring>(
    ring: &R,
    factors: &[FactorRepr<R::Elem>],
    l_max: usize,
) -> Result<Vec<R::Elem>> {
    let dd: usize = factors.iter().map(|f| f.degree).product();
    if factors.is_empty() || l_max < dd {
        return invalid("rankin numerator needs l_max >= product of degrees");
    }
    let mut s = vec![ring.one(); l_max + 1];
    for f in factors {
        let h = convert(ring, f, ReprKind::Complete, l_max)?;
        for (k, hk) in h.values.iter().enumerate() {
            s[k + 1] = ring.mul(&s[k + 1], hk);
        }
    }
    let t = tensor_product(ring, factors, dd)?;
    let t = poly_from_newton(ring, &t, dd, Sign::Minus)?;
    let mut tc = t.coeffs(ring)?;
    tc.resize(dd + 1, ring.zero());
    let mut a = mul_trunc(ring, &s, &tc, l_max + 1);
    if let Some(k) = (dd..=l_max).find(|&k| !ring.is_zero(&a[k])) {
        return Err(Error::Inconsistent(format!(
            "numerator coefficient of T^{k} does not cancel"
        )));
    }
    a.truncate(dd);
    while a.len() > 1 && ring.is_zero(a.last().unwrap()) {
        a.pop();
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Integers, Rationals};
    use num_bigint::BigInt;

    fn zs(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn newton_examples() {
        let z = Integers;
        let p = FactorRepr::poly(zs(&[5, 6]));
        assert_eq!(newton_from_poly(&z, &p, 3).unwrap().values, zs(&[5, 13, 35]));
        let p = FactorRepr::poly(zs(&[7]));
        assert_eq!(newton_from_poly(&z, &p, 3).unwrap().values, zs(&[7, 49, 343]));
        let n = FactorRepr::newton(2, zs(&[5, 13]));
        assert_eq!(poly_from_newton(&z, &n, 2, Sign::Minus).unwrap().values, zs(&[5, 6]));
        let n = FactorRepr::newton(1, zs(&[3, 9, 27]));
        let p = poly_from_newton(&z, &n, 3, Sign::Minus).unwrap();
        assert_eq!(p.values, zs(&[3]));
    }

    #[test]
    fn complete_examples() {
        let z = Integers;
        let p = FactorRepr::poly(zs(&[5, 6]));
        assert_eq!(complete_from_poly(&z, &p, 3).unwrap().values, zs(&[5, 19, 65]));
        let p = FactorRepr::poly(zs(&[1]));
        assert_eq!(complete_from_poly(&z, &p, 4).unwrap().values, zs(&[1, 1, 1, 1]));
        let n = FactorRepr::newton(2, zs(&[5, 13, 35]));
        assert_eq!(h_from_partitions(&z, &n, 3).unwrap(), BigInt::from(65));
    }

    #[test]
    fn divisibility_is_reported() {
        let z = Integers;
        let n = FactorRepr::newton(2, zs(&[1, 0]));
        match poly_from_newton(&z, &n, 2, Sign::Plus) {
            Err(Error::Divisibility { k: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn root_power_example() {
        let z = Integers;
        let p = FactorRepr::poly(zs(&[5, 6]));
        let r = root_power(&z, &p, 2, 2).unwrap();
        let r = convert(&z, &r, ReprKind::Poly, 2).unwrap();
        assert_eq!(r.values, zs(&[13, 36]));
    }

    #[test]
    fn direct_sum_example() {
        let q = Rationals;
        let one = FactorRepr::poly(vec![q.one()]);
        let s = direct_sum(&q, &one, &one, 2).unwrap();
        assert_eq!(s.coeffs(&q).unwrap(), vec![q.one(), q.from_i64(-2), q.one()]);
        let s = direct_sum(&q, &one, &FactorRepr::unit(), 2).unwrap();
        assert_eq!(s, one);
    }

    #[test]
    fn partitions_count() {
        let counts: Vec<usize> = (1..=8).map(|k| partitions(k).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22]);
    }
}
