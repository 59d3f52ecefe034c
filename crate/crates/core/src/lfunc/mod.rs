//! Log-gamma, Riemann and Hurwitz zeta, and Dirichlet L-functions.
//!
//! Everything is evaluated in double precision by Stirling's series and the
//! Euler–Maclaurin formula; arguments with `|im s| > 1e4` are refused.

mod dirichlet;
mod gamma;
mod zeta;

use thiserror::Error;

pub use dirichlet::{dirichlet_l, dirichlet_l_regularized};
pub use gamma::log_gamma;
pub use zeta::{hurwitz_zeta, hurwitz_zeta_regularized, riemann_zeta, riemann_zeta_regularized};

/// Largest `|im s|` accepted by the zeta and L-function routines.
pub const MAX_IMAG: f64 = 1e4;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LfuncError {
    #[error("{op}: pole at s = {at}")]
    Pole { op: &'static str, at: String },
    #[error("{op}: s = {re}{im:+}i outside the supported region ({msg})")]
    OutOfRange {
        op: &'static str,
        re: f64,
        im: f64,
        msg: &'static str,
    },
}
