//! Shared inputs for the benchmarks.

use eulerprod::euler::{provider_fn, FnProvider};
use eulerprod::{CharValues, FactorRepr, PrimeField, Result, RingEmbedding};

/// A word-size field carrying characters of order up to 22.
pub fn field() -> PrimeField {
    eulerprod::find_fft_prime(1 << 21, &[22], 52).unwrap().field()
}

/// Degree-2 factors 1 - (p mod 1999 + 1) T + p T^2.
pub fn degree_two() -> FnProvider<impl Fn(&PrimeField, u64, usize) -> Result<FactorRepr<u64>>> {
    provider_fn(2, |f: &PrimeField, p, _| Ok(FactorRepr::poly(vec![f.to_mont(p % 1999 + 1), f.to_mont(p)])))
}

/// Conrey character 23.a embedded in `f`.
pub fn char23(f: &PrimeField, a: u64) -> CharValues<u64> {
    let chi = eulerprod::conrey_character(23, a).unwrap();
    let emb = RingEmbedding::finite_field(f, chi.order()).unwrap();
    CharValues::embed(f, &chi, &emb).unwrap()
}
