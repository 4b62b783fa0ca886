//! Inferentially-private information disclosure.
//!
//! Given a joint prior over a binary state `Y` and a finite secret `S`, and a
//! privacy budget `ε`, this crate builds release mechanisms `P(T|S,Y)` whose
//! signal `T` is as informative about `Y` as possible (in the Blackwell
//! order) while every posterior odds ratio over secrets moves by at most a
//! factor `e^ε`:
//!
//! * [`binary`] solves the two-secret case in closed form, universally for
//!   every convex utility, together with the perfect-privacy baseline.
//! * [`general`] enumerates monotone cut assignments and solves one linear
//!   program per assignment for any number of secrets and a given utility.
//! * [`analysis`] verifies privacy, the structural characterizations of
//!   optimal structures, the convex (Blackwell) order and expected utility.
//! * [`oracle`] holds brute-force challengers used to test the solvers.
//! * [`io`] covers the JSON/CSV file formats and the command-line driver.

pub mod analysis;
pub mod binary;
pub mod error;
pub mod general;
pub mod io;
pub mod model;
pub mod oracle;
pub mod scalar;

pub use error::{Error, Result};

/// Tolerance on probability normalization (row sums, prior mass).
pub const NORMALIZATION_TOL: f64 = 1e-12;
/// Tolerance for grouping signals with equal posteriors.
pub const EQUIVALENCE_TOL: f64 = 1e-9;
/// Tolerance on `Σ_t P(T=t|S=s)·P(Y=1|S=s,T=t) = P(Y=1|S=s)`.
pub const CONSISTENCY_TOL: f64 = 1e-9;
/// Default slack of the verification checks.
pub const CHECK_SLACK: f64 = 1e-9;
