use std::io::Write;
use std::time::Instant;

use eulerprod::bgform::mf_coefficients_exact;
use eulerprod::eis::eisenstein_coeffs;
use eulerprod::euler::provider_fn;
use eulerprod::lprod::{dirichlet_direct_sum, dirichlet_sym_power, dirichlet_tensor, triple_product};
use eulerprod::ring::Ring;
use eulerprod::{
    arith, chars, conrey_character, corpus, expand_precomp, find_fft_prime, rough_coprime_sieve, ArithmeticObject,
    BGDecomposition, CharValues, CoeffSeq, Counted, Cyclotomic, FactorRepr, MfOptions, Mode, NumberOrder, PrimeField,
    Rationals, RingEmbedding,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::factors::{load_object, parse_overrides};
use crate::output::Sink;
use crate::{BenchArgs, BenchTarget, CliError};

type Out<'a> = Box<dyn Write + 'a>;

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

pub fn sieve(out: Out<'_>, binary: bool, length: u64, print_decomps: bool, err: &mut dyn Write) -> Result<(), CliError> {
    let t = rough_coprime_sieve(length + 1)?;
    let mut sink = Sink::new(out, binary, 2);
    if print_decomps || binary {
        for (k, pe, m) in t.decomps() {
            if sink.is_binary() {
                sink.row_i64(k as u64, &[pe as i64, m as i64])?;
            } else {
                sink.line(&format!("{k} = {pe} * {m}"))?;
            }
        }
    }
    let stats = [
        ("n", length),
        ("primes", t.primes().len() as u64),
        ("prime_powers", (t.all_prime_powers().len() - t.primes().len()) as u64),
        ("decomps", t.num_decomps() as u64),
        ("unlinks", t.unlink_count()),
    ];
    for (name, v) in stats {
        if binary {
            writeln!(err, "{name}={v}").map_err(eulerprod::Error::from)?;
        } else {
            sink.metric(name, v)?;
        }
    }
    sink.finish()
}

fn eis_rows<R: Ring>(
    ring: &R,
    emb: &RingEmbedding<R::Elem>,
    k: u32,
    labels: [(u64, u64); 2],
    n: usize,
    constant: bool,
) -> Result<(Option<R::Elem>, CoeffSeq<R::Elem>), CliError> {
    let [phi, psi] = labels.map(|(m, a)| -> Result<CharValues<R::Elem>, CliError> {
        Ok(CharValues::embed(ring, &conrey_character(m, a)?, emb)?)
    });
    let (phi, psi) = (phi?, psi?);
    let t = rough_coprime_sieve(n as u64 + 1)?;
    let a = eisenstein_coeffs(ring, k, &phi, &psi, n, &t)?;
    let c = if constant {
        Some(chars::eis_constant_term(ring, k, &phi, &psi)?)
    } else {
        None
    };
    Ok((c, a))
}

#[allow(clippy::too_many_arguments)]
pub fn eisenstein(
    out: Out<'_>,
    binary: bool,
    k: u32,
    phi: (u64, u64),
    psi: (u64, u64),
    n: usize,
    prime: Option<u64>,
    constant: bool,
) -> Result<(), CliError> {
    let order = arith::lcm(conrey_character(phi.0, phi.1)?.order(), conrey_character(psi.0, psi.1)?.order());
    let labels = [phi, psi];
    if let Some(q) = prime {
        let f = PrimeField::new(q)?;
        let emb = RingEmbedding::finite_field(&f, order)?;
        let (c, a) = eis_rows(&f, &emb, k, labels, n, constant)?;
        let mut sink = Sink::new(out, binary, 1);
        if let Some(c) = c {
            sink.row_i64(0, &[f.residue(c) as i64])?;
        }
        for (m, v) in a.coefficients().iter().enumerate() {
            sink.row_i64(m as u64 + 1, &[f.residue(*v) as i64])?;
        }
        return sink.finish();
    }
    if order <= 2 {
        let ring = Rationals;
        let zeta = ring.from_i64(if order == 2 { -1 } else { 1 });
        let emb = RingEmbedding::new(&ring, order, zeta)?;
        let (c, a) = eis_rows(&ring, &emb, k, labels, n, constant)?;
        let mut sink = Sink::new(out, binary, 1);
        if let Some(c) = c {
            sink.row_rat(0, &[c])?;
        }
        for (m, v) in a.coefficients().iter().enumerate() {
            sink.row_rat(m as u64 + 1, std::slice::from_ref(v))?;
        }
        return sink.finish();
    }
    let cyc = Cyclotomic::new(order)?;
    let emb = RingEmbedding::cyclotomic(&cyc, order)?;
    let (c, a) = eis_rows(&cyc, &emb, k, labels, n, constant)?;
    let mut sink = Sink::new(out, binary, cyc.degree());
    if let Some(c) = c {
        sink.row_rat(0, &c)?;
    }
    for (m, v) in a.coefficients().iter().enumerate() {
        sink.row_rat(m as u64 + 1, v)?;
    }
    sink.finish()
}

fn write_rational_seq(out: Out<'_>, binary: bool, a: &CoeffSeq<BigRational>) -> Result<(), CliError> {
    let mut sink = Sink::new(out, binary, 1);
    for (m, v) in a.coefficients().iter().enumerate() {
        sink.row_rat(m as u64 + 1, std::slice::from_ref(v))?;
    }
    sink.finish()
}

fn table_and_objects(
    paths: &[String],
    length: u64,
) -> Result<(eulerprod::CoprimeTable, Vec<ArithmeticObject<BigRational>>), CliError> {
    let t = rough_coprime_sieve(length + 1)?;
    let objs = paths
        .iter()
        .map(|p| load_object(p, t.primes()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((t, objs))
}

pub fn euler_expand(out: Out<'_>, binary: bool, path: &str, length: u64) -> Result<(), CliError> {
    let (t, objs) = table_and_objects(&[path.to_string()], length)?;
    let a = dirichlet_direct_sum(&Rationals, &objs, &t)?;
    write_rational_seq(out, binary, &a)
}

pub fn tensor(out: Out<'_>, binary: bool, paths: &[String], length: u64, overrides: &[String]) -> Result<(), CliError> {
    let over = parse_overrides(overrides)?;
    let (t, objs) = table_and_objects(paths, length)?;
    let a = dirichlet_tensor(&Rationals, &objs, &over, &t)?;
    write_rational_seq(out, binary, &a)
}

pub fn sympow(
    out: Out<'_>,
    binary: bool,
    path: &str,
    k: usize,
    length: u64,
    overrides: &[String],
) -> Result<(), CliError> {
    let over = parse_overrides(overrides)?;
    let (t, objs) = table_and_objects(&[path.to_string()], length)?;
    let a = dirichlet_sym_power(&Rationals, &objs[0], k, &over, &t)?;
    write_rational_seq(out, binary, &a)
}

/// A decomposition file, or a bundled name with or without `.json`.
pub fn load_decomp(spec: &str) -> Result<BGDecomposition, CliError> {
    let path = std::path::Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{spec}: {e}")))?;
        return Ok(BGDecomposition::from_json(&text)?);
    }
    let name = spec.strip_suffix(".json").unwrap_or(spec);
    Ok(corpus::load(name)?)
}

pub fn mf_coefs(out: Out<'_>, binary: bool, decomp: &str, n: usize, opts: &MfOptions) -> Result<(), CliError> {
    let dec = load_decomp(decomp)?;
    let c = mf_coefficients_exact(&dec, n, opts)?;
    let mut sink = Sink::new(out, binary, c.dim);
    for (t, &m) in c.indices.iter().enumerate() {
        sink.row_i64(m, c.row(t))?;
    }
    sink.finish()
}

pub fn triple(out: Out<'_>, binary: bool, specs: [&String; 3], level: u64, n: usize) -> Result<(), CliError> {
    if n == 0 {
        return usage("length must be positive");
    }
    let decs = specs.map(|s| load_decomp(s));
    let decs = decs.into_iter().collect::<Result<Vec<_>, _>>()?;
    let mut minpoly: Option<&[i64]> = None;
    for d in &decs {
        if d.nebentypus.is_some() {
            return usage("triple products are implemented for trivial nebentypus only");
        }
        if level % d.level != 0 {
            return usage(format!("level {} does not divide {level}", d.level));
        }
        if d.dim() > 1 {
            match minpoly {
                Some(m) if m != d.basis.minpoly.as_slice() => {
                    return usage("coefficient fields differ; the forms need a common basis")
                }
                _ => minpoly = Some(&d.basis.minpoly),
            }
        }
    }
    let ring = match minpoly {
        Some(m) => NumberOrder::from_i64_poly(m)?,
        None => NumberOrder::integers(),
    };
    let opts = MfOptions {
        mode: Mode::PrimesOnly,
        ..MfOptions::default()
    };
    let objs = decs
        .iter()
        .map(|d| -> Result<ArithmeticObject<Vec<BigInt>>, CliError> {
            let c = mf_coefficients_exact(d, n, &opts)?;
            let ap = (0..c.indices.len())
                .map(|t| {
                    let mut r = c.row(t).to_vec();
                    r.resize(ring.degree(), 0);
                    ring.from_coords(&r)
                })
                .collect();
            Ok(ArithmeticObject::modular(d.weight, d.level, c.indices.clone(), ap, None)?)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let t = rough_coprime_sieve(n as u64 + 1)?;
    let a = triple_product(&ring, &objs[0], &objs[1], &objs[2], level, &t)?;
    let rational = a.coefficients().iter().all(|x| ring.is_integer(x));
    let width = if rational { 1 } else { ring.degree() };
    let mut sink = Sink::new(out, binary, width);
    for (m, x) in a.coefficients().iter().enumerate() {
        let row = x[..width]
            .iter()
            .map(|v| {
                v.to_i64()
                    .ok_or_else(|| CliError::Core(eulerprod::Error::Capacity(format!("coefficient {v} exceeds 64 bits"))))
            })
            .collect::<Result<Vec<_>, _>>()?;
        sink.row_i64(m as u64 + 1, &row)?;
    }
    sink.finish()
}

pub fn bench(out: Out<'_>, b: &BenchArgs) -> Result<(), CliError> {
    let n = b.length;
    let mut sink = Sink::new(out, false, 1);
    let start = Instant::now();
    let mut counts = None;
    let name = format!("{:?}", b.target).to_lowercase();
    sink.metric("target", name)?;
    match b.target {
        BenchTarget::Sieve => {
            let t = rough_coprime_sieve(n as u64)?;
            let ms = start.elapsed().as_secs_f64() * 1e3;
            sink.metric("n", n)?;
            sink.metric("wall_ms", format!("{ms:.3}"))?;
            sink.metric("decomps", t.num_decomps())?;
            sink.metric("unlinks", t.unlink_count())?;
            return sink.finish();
        }
        BenchTarget::Eisenstein => {
            let o1 = conrey_character(b.phi.0, b.phi.1)?.order();
            let o2 = conrey_character(b.psi.0, b.psi.1)?.order();
            let prime = find_fft_prime(1, &[o1, o2], 52)?;
            let f = prime.field();
            let ring = Counted::new(f.clone());
            let emb = RingEmbedding::finite_field(&f, arith::lcm(o1, o2))?;
            eis_rows(&ring, &emb, b.weight, [b.phi, b.psi], n, false)?;
            counts = Some(ring.counts());
        }
        BenchTarget::Euler => {
            // degree-2 factors 1 - (p mod 7) T + p T^2 over a word-size field
            let f = find_fft_prime(1, &[], 52)?.field();
            let ring = Counted::new(f);
            let t = rough_coprime_sieve(n as u64 + 1)?;
            let provider = provider_fn(2, |r: &Counted<PrimeField>, p, _| {
                Ok(FactorRepr::poly(vec![r.from_u64_pow(p % 7, 1), r.from_u64_pow(p, 1)]))
            });
            expand_precomp(&ring, &provider, &t)?;
            counts = Some(ring.counts());
        }
        BenchTarget::Mf => {
            let dec = load_decomp(&b.decomp)?;
            let opts = MfOptions {
                threads: b.threads,
                ..MfOptions::default()
            };
            let c = mf_coefficients_exact(&dec, n, &opts)?;
            sink.metric("records", c.indices.len())?;
            sink.metric("primes_used", c.primes.len())?;
        }
    }
    let ms = start.elapsed().as_secs_f64() * 1e3;
    sink.metric("n", n)?;
    sink.metric("wall_ms", format!("{ms:.3}"))?;
    if let Some(c) = counts {
        sink.metric("muls", c.muls)?;
        sink.metric("adds", c.adds)?;
    }
    sink.finish()
}
