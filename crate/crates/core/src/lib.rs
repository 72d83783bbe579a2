//! Ruelle-type zeta and L-functions of the integer lattice with Euclidean
//! length, together with the arithmetic that surrounds them: representation
//! counts, exact natural-boundary certificates, determinants of flat torus
//! Laplacians and Tauberian averages.
//!
//! Every quantity that is computed by a truncated series is returned together
//! with the number of terms used and an estimate of the neglected tail.

pub mod arith;
pub mod boundary;
pub mod detlap;
pub mod error;
pub mod lattice;
pub mod quad;
pub mod ruelle;
pub mod special;
pub mod tauber;
mod window;

pub use arith::{BigRational, SieveTable};
pub use boundary::{Certificate, FactorKind, KeyLemmaResult, LocalFactor};
pub use error::{Error, Result};
pub use lattice::{Character, LatticeVector};
pub use ruelle::{SeriesValue, Truncation};
pub use special::EvalResult;
pub use tauber::{AsymptoticReport, Normalization, Parity, Prediction};

pub use num_complex::Complex64;
