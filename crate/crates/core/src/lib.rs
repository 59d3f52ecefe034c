//! Spectral exponential sums over Laplace eigenvalues of hyperbolic surfaces.
//!
//! The crate is split along the lines of the computation:
//!
//! - [`spectra`]: surface descriptors and ingestion of eigenvalue / zero lists.
//! - [`arith`]: exact integer number theory (von Mangoldt, Pell, class numbers,
//!   Dirichlet characters, the peak detector `kappa`).
//! - [`geodesics`]: prime-geodesic norms from integer traces.
//! - [`lfunc`]: log-gamma, Riemann/Hurwitz zeta and Dirichlet L-functions.
//! - [`scattering`]: scattering determinants and the winding number `M(T)`.
//! - [`sums`]: the exponential sums, their predicted main terms, residuals,
//!   peak detection and equidistribution statistics.

// Negated comparisons deliberately reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod arith;
pub mod error;
pub mod geodesics;
pub mod lfunc;
pub mod scattering;
pub mod spectra;
pub mod sums;

pub use error::{Error, Result};
pub use num_complex::Complex64;
