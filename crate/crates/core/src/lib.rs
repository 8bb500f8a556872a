//! Dirichlet-series and modular-form coefficients through Euler products,
//! the symmetric-function algebra of local factors, and products of
//! Eisenstein series evaluated with number-theoretic transforms.

pub mod arith;
pub mod bgform;
pub mod chars;
pub mod coeffio;
pub mod corpus;
pub mod eis;
pub mod error;
pub mod euler;
pub mod lprod;
pub mod ntt;
pub mod ring;
pub mod sieve;
pub mod symfun;

pub use bgform::{BGDecomposition, HasseBound, MfCoefficients, MfOptions, Mode};
pub use chars::{conrey_character, CharValues, DirichletCharacter, RingEmbedding};
pub use coeffio::CoeffTable;
pub use error::{Error, Result};
pub use euler::{expand_precomp, expand_reference, CoeffSeq, EulerFactorProvider};
pub use lprod::{ArithmeticObject, GoodFactor};
pub use ntt::{find_fft_prime, FftPrime};
pub use ring::{Counted, Cyclotomic, Integers, NumberOrder, OpCounter, PrimeField, Rationals, Ring};
pub use sieve::{rough_coprime_sieve, CoprimeTable};
pub use symfun::{FactorRepr, ReprKind};
