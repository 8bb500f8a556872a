//! Dirichlet characters in the Conrey labelling, their values in a target
//! ring, generalized Bernoulli numbers and Eisenstein constant terms.

use crate::arith::{self, gcd, lcm};
use crate::error::{invalid, Error, Result};
use crate::ring::{Cyclotomic, PrimeField, Ring};

const ZERO_LOG: u32 = u32::MAX;

/// The character chi_N(a, .). Values are stored as exponents t with
/// chi(r) = z^t, z = e(1/order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirichletCharacter {
    modulus: u64,
    conrey: u64,
    order: u64,
    log_table: Vec<u32>,
}

impl DirichletCharacter {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn conrey_index(&self) -> u64 {
        self.conrey
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Exponent of chi(r), or None when gcd(r, N) > 1.
    pub fn log(&self, r: u64) -> Option<u64> {
        match self.log_table[(r % self.modulus) as usize] {
            ZERO_LOG => None,
            t => Some(t as u64),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// +1 for even characters, -1 for odd ones.
    pub fn parity(&self) -> i32 {
        if self.modulus <= 2 {
            return 1;
        }
        match self.log(self.modulus - 1) {
            Some(t) if t != 0 => -1,
            _ => 1,
        }
    }
}

/// One prime-power component of (Z/NZ)^*, as a map from residues to
/// exponents over a component denominator.
struct Component {
    pe: u64,
    den: u64,
    /// exponent numerator of chi_a(r) over `den`, for r mod pe (unit r)
    num: Vec<Option<u64>>,
}

fn odd_component(p: u64, e: u32, a: u64) -> Component {
    let pe = p.pow(e);
    let phi = pe / p * (p - 1);
    let g = (2..)
        .find(|&g| {
            let m = p * p;
            gcd(g, p) == 1 && arith::mult_order(g % m, m, p * (p - 1)) == p * (p - 1)
        })
        .unwrap();
    let mut dlog = vec![None; pe as usize];
    let mut x = 1u64;
    for i in 0..phi {
        dlog[x as usize] = Some(i);
        x = x * g % pe;
    }
    let nu_a = dlog[(a % pe) as usize].unwrap();
    let num = dlog
        .iter()
        .map(|l| l.map(|nu| nu_a * nu % phi))
        .collect();
    Component { pe, den: phi, num }
}

fn two_component(e: u32, a: u64) -> Component {
    let pe = 1u64 << e;
    if e == 1 {
        return Component {
            pe,
            den: 1,
            num: vec![None, Some(0)],
        };
    }
    // r = eps * 5^alpha with eps = +-1
    let half = if e >= 3 { 1u64 << (e - 2) } else { 1 };
    let mut log5 = vec![0u64; pe as usize];
    let mut x = 1u64;
    for i in 0..half {
        log5[x as usize] = i;
        x = x * 5 % pe;
    }
    let split = |r: u64| -> (bool, u64) {
        let r = r % pe;
        if r % 4 == 1 {
            (false, log5[r as usize])
        } else {
            (true, log5[(pe - r) as usize])
        }
    };
    let (neg_a, al_a) = split(a);
    // value = [both negative]/2 + al_a * al_r / 2^(e-2)
    let den = half.max(2);
    let num = (0..pe)
        .map(|r| {
            if r % 2 == 0 {
                return None;
            }
            let (neg_r, al_r) = split(r);
            let mut t = 0;
            if neg_a && neg_r {
                t += den / 2;
            }
            if e >= 3 {
                t += al_a * al_r % half * (den / half);
            }
            Some(t % den)
        })
        .collect();
    Component { pe, den, num }
}

/// chi_N(a, .) following the LMFDB construction: on each odd p^e the
/// generator is the least primitive root mod p^2, chi(r) = e(nu(a)nu(r)/phi(p^e));
/// on 2^e residues are written +-5^alpha.
pub fn conrey_character(modulus: u64, a: u64) -> Result<DirichletCharacter> {
    if modulus == 0 {
        return invalid("modulus must be positive");
    }
    if modulus > 1_000_000 {
        return Err(Error::Capacity(format!("character modulus {modulus} too large")));
    }
    if gcd(a % modulus, modulus) != 1 {
        return invalid(format!("gcd({a}, {modulus}) != 1"));
    }
    let comps: Vec<Component> = arith::factorize(modulus)
        .into_iter()
        .map(|(p, e)| {
            if p == 2 {
                two_component(e, a)
            } else {
                odd_component(p, e, a)
            }
        })
        .collect();
    let den = comps.iter().fold(1, |d, c| lcm(d, c.den));
    let mut raw = vec![ZERO_LOG as u64; modulus as usize];
    let mut g = den;
    for r in 0..modulus {
        let mut t = 0u64;
        let mut unit = true;
        for c in &comps {
            match c.num[(r % c.pe) as usize] {
                Some(v) => t = (t + v * (den / c.den)) % den,
                None => unit = false,
            }
        }
        if unit || modulus == 1 {
            raw[r as usize] = t;
            g = gcd(g, t);
        }
    }
    let order = den / g;
    let log_table = raw
        .into_iter()
        .map(|t| if t == ZERO_LOG as u64 { ZERO_LOG } else { (t / g) as u32 })
        .collect();
    Ok(DirichletCharacter {
        modulus,
        conrey: if modulus == 1 { 1 } else { a % modulus },
        order,
        log_table,
    })
}

/// Image of z = e(1/order) in a target ring.
#[derive(Debug, Clone, PartialEq)]
pub struct RingEmbedding<E> {
    pub order: u64,
    pub zeta: E,
}

impl<E: Clone + PartialEq> RingEmbedding<E> {
    /// Checks zeta^order = 1 and zeta^(order/p) != 1 for primes p | order.
    pub fn new<R: Ring<Elem = E>>(ring: &R, order: u64, zeta: E) -> Result<Self> {
        if order == 0 || ring.pow(&zeta, order) != ring.one() {
            return invalid(format!("element is not an {order}-th root of unity"));
        }
        for (p, _) in arith::factorize(order) {
            if ring.pow(&zeta, order / p) == ring.one() {
                return invalid(format!("root of unity has order below {order}"));
            }
        }
        Ok(RingEmbedding { order, zeta })
    }
}

impl RingEmbedding<u64> {
    /// z -> g^((q-1)/order) for the least primitive root g of q.
    pub fn finite_field(field: &PrimeField, order: u64) -> Result<Self> {
        let g = arith::primitive_root(field.modulus());
        Self::finite_field_with_root(field, order, g)
    }

    pub fn finite_field_with_root(field: &PrimeField, order: u64, g: u64) -> Result<Self> {
        let q = field.modulus();
        if order == 0 || (q - 1) % order != 0 {
            return Err(Error::IncompatiblePrime { order, q });
        }
        let zeta = field.to_mont(arith::pow_mod(g, (q - 1) / order, q));
        Self::new(field, order, zeta)
    }
}

impl RingEmbedding<Vec<num_rational::BigRational>> {
    /// z_order -> z_L^(L/order) inside Q(zeta_L).
    pub fn cyclotomic(field: &Cyclotomic, order: u64) -> Result<Self> {
        if order == 0 || field.order() % order != 0 {
            return invalid(format!(
                "Q(zeta_{}) has no primitive {order}-th root",
                field.order()
            ));
        }
        Ok(RingEmbedding {
            order,
            zeta: field.zeta_pow((field.order() / order) as i64),
        })
    }
}

/// Values chi(0), ..., chi(N-1) in the target ring. Builds the power table
/// of the root of unity with fewer than `order` multiplications.
pub fn embed_values<R: Ring>(
    ring: &R,
    chi: &DirichletCharacter,
    emb: &RingEmbedding<R::Elem>,
) -> Result<Vec<R::Elem>> {
    let o = chi.order;
    if emb.order % o != 0 {
        return invalid(format!(
            "embedding of order {} cannot carry a character of order {o}",
            emb.order
        ));
    }
    let step = emb.order / o;
    let z = if step == 1 {
        emb.zeta.clone()
    } else {
        ring.pow(&emb.zeta, step)
    };
    let mut powers = Vec::with_capacity(o as usize);
    powers.push(ring.one());
    if o > 1 {
        powers.push(z.clone());
    }
    for i in 2..o as usize {
        let v = ring.mul(&powers[i - 1], &z);
        powers.push(v);
    }
    Ok(chi
        .log_table
        .iter()
        .map(|&t| {
            if t == ZERO_LOG {
                ring.zero()
            } else {
                powers[t as usize].clone()
            }
        })
        .collect())
}

/// Character values with the modulus they are periodic in.
#[derive(Debug, Clone, PartialEq)]
pub struct CharValues<E> {
    pub modulus: u64,
    pub order: u64,
    pub values: Vec<E>,
}

impl<E: Clone + PartialEq> CharValues<E> {
    pub fn embed<R: Ring<Elem = E>>(
        ring: &R,
        chi: &DirichletCharacter,
        emb: &RingEmbedding<E>,
    ) -> Result<Self> {
        Ok(CharValues {
            modulus: chi.modulus,
            order: chi.order,
            values: embed_values(ring, chi, emb)?,
        })
    }

    /// The trivial character modulo 1.
    pub fn one<R: Ring<Elem = E>>(ring: &R) -> Self {
        CharValues {
            modulus: 1,
            order: 1,
            values: vec![ring.one()],
        }
    }

    #[inline]
    pub fn at(&self, r: u64) -> &E {
        &self.values[(r % self.modulus) as usize]
    }
}

fn binom_i64(n: u64, k: u64) -> i64 {
    crate::symfun::binomial(n, k) as i64
}

/// B_{k,chi} = N^{k-1} sum_{a=1}^N chi(a) B_k(a/N), evaluated from the
/// generating function sum chi(a) t e^{at} / (e^{Nt} - 1) as a product of
/// exponential series. With N = 1 this gives B_1 = +1/2.
pub fn gen_bernoulli<R: Ring>(ring: &R, chi: &CharValues<R::Elem>, k: u32) -> Result<R::Elem> {
    if k == 0 || k > 60 {
        return invalid("generalized Bernoulli numbers supported for 1 <= k <= 60");
    }
    let n = chi.modulus;
    let k = k as u64;
    // A_m = sum_{a=1}^N chi(a) a^m
    let a_sums: Vec<R::Elem> = (0..=k)
        .map(|m| {
            (1..=n).fold(ring.zero(), |acc, a| {
                let c = chi.at(a);
                if ring.is_zero(c) {
                    acc
                } else {
                    ring.add(&acc, &ring.mul(c, &ring.from_u64_pow(a, m as u32)))
                }
            })
        })
        .collect();
    // classical B_j for t/(e^t - 1)
    let mut b = vec![ring.one()];
    for m in 1..=k {
        let mut acc = ring.zero();
        for (j, bj) in b.iter().enumerate() {
            acc = ring.add(&acc, &ring.mul(&ring.from_i64(binom_i64(m + 1, j as u64)), bj));
        }
        b.push(ring.neg(&ring.div_small(&acc, m + 1)?));
    }
    let mut total = ring.zero();
    for j in 0..=k {
        let scaled = if j == 0 {
            ring.div_small(&b[0], n)?
        } else {
            ring.mul(&ring.from_u64_pow(n, (j - 1) as u32), &b[j as usize])
        };
        let term = ring.mul(&ring.from_i64(binom_i64(k, j)), &scaled);
        total = ring.add(&total, &ring.mul(&term, &a_sums[(k - j) as usize]));
    }
    Ok(total)
}

/// Constant term of E_k^{phi,psi}: -B_{k,psi}/(2k) when phi has modulus 1,
/// -B_{1,phi}/2 when psi has modulus 1 and k = 1, otherwise 0.
///
/// The sign is the one under which the bundled cusp-form decompositions
/// have vanishing constant term and a_1 = 1.
pub fn eis_constant_term<R: Ring>(
    ring: &R,
    k: u32,
    phi: &CharValues<R::Elem>,
    psi: &CharValues<R::Elem>,
) -> Result<R::Elem> {
    if phi.modulus == 1 {
        let b = gen_bernoulli(ring, psi, k)?;
        return Ok(ring.neg(&ring.div_small(&b, 2 * k as u64)?));
    }
    if psi.modulus == 1 && k == 1 {
        let b = gen_bernoulli(ring, phi, 1)?;
        return Ok(ring.neg(&ring.div_small(&b, 2)?));
    }
    Ok(ring.zero())
}
