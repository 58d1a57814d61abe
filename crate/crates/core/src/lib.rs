//! Exact higher-order autocorrelations of rational signals on finite abelian groups.
//!
//! The crate is organised bottom-up:
//!
//! * [`abelian`]: groups given by cyclic factor moduli, their elements and dual characters.
//! * [`exact`]: big rationals and cyclotomic field elements with Galois automorphisms.
//! * [`spectral`]: the exact Fourier transform, supports, and the Galois rationality certificate.
//! * [`autocorr`]: direct and Fourier-side autocorrelations and order-by-order comparison.
//! * [`homometry`]: the Eisenstein norm form, the `Z_6` classifier and generator, the `Z_30` lift
//!   and a brute-force search oracle.
//! * [`bounds`]: completeness-order bounds computed from a support set.
//! * [`io`]: JSON file formats shared with the command line front end.
//!
//! Fourier transforms are unnormalized (`f^(χ) = Σ f(x) conj(χ(x))`) and inversion carries the
//! `1/|G|` factor. Characters pair with elements as `χ(x) = exp(2πi Σ k_i x_i / N_i)`.

pub mod abelian;
pub mod autocorr;
pub mod bounds;
mod error;
pub mod exact;
pub mod homometry;
pub mod io;
pub mod spectral;

pub use abelian::{Character, Element, Group};
pub use autocorr::{AutocorrTensor, CompareReport, IdentityTuple};
pub use error::{Error, Result};
pub use exact::{Cyclotomic, GaloisAuto, Rational};
pub use spectral::{Signal, Spectrum};
