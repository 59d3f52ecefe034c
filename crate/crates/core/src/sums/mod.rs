//! Exponential sums over spectral data, their predicted main terms,
//! residuals, peak detection, the Riemann-zero analogue and equidistribution.
//!
//! With `L = log X` and spectral parameters `t_j`:
//!
//! - `S(T, X) = sum_{t_j <= T} X^{i t_j}`,
//! - `R = 2 re S`, `P = 2 im S` (cosine and sine kernels),
//! - `Theta1 = R - (vol/pi) sin(T L)/L * T`, `Theta2 = P + (vol/pi) cos(T L)/L * T`,
//! - `Delta1 = R/T`, `Delta2 = P/T`.

mod compensated;
mod equidist;
mod landau;
mod peaks;
mod predict;
mod series;
mod spectral;
mod weyl;

use thiserror::Error;

use crate::geodesics::GeodesicError;
use crate::scattering::ScatteringError;
use crate::spectra::{Family, SpectraError};

pub use compensated::{CompensatedComplex, CompensatedSum};
pub use equidist::{equidistribution, star_discrepancy, Equidistribution};
pub use landau::{landau_prediction, landau_sum};
pub use peaks::{peak_scan, PeakClass, PeakConfig, PeakReport};
pub use predict::{
    fujii_lambda_terms, predict_fujii, predict_generic, predict_kernels, KernelPrediction, Prediction, RemainderClass,
};
pub use series::{Axis, SumKind, SumSeries};
pub use spectral::{
    cis_product, kernels, kernels_of_sum, spectral_sum, spectral_sum_parallel, sum_exponentials, Kernels,
    DEFAULT_WINDOW,
};
pub use weyl::{fit_linear, weyl_residual, WeylFit};

#[derive(Debug, Error)]
pub enum SumsError {
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Scattering(#[from] ScatteringError),
    #[error(transparent)]
    Geodesics(#[from] GeodesicError),
    #[error("{op}: {msg}")]
    Domain { op: &'static str, msg: String },
    #[error("{op}: phase track covers [0, {covered}] but T = {t} was requested")]
    Coverage { op: &'static str, t: f64, covered: f64 },
    #[error("{op}: unsupported surface family {family}")]
    UnsupportedSurface { op: &'static str, family: Family },
}

impl SumsError {
    /// Failures caused by the input datasets rather than the numerics.
    pub fn is_data_error(&self) -> bool {
        matches!(self, SumsError::Spectra(_))
    }
}

pub(crate) fn check_x(op: &'static str, x: f64) -> Result<(), SumsError> {
    if !(x > 1.0 && x.is_finite()) {
        return Err(SumsError::Domain {
            op,
            msg: format!("X = {x} must be a finite number greater than 1"),
        });
    }
    Ok(())
}

pub(crate) fn check_t(op: &'static str, t: f64) -> Result<(), SumsError> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(SumsError::Domain {
            op,
            msg: format!("T = {t} must be a positive finite number"),
        });
    }
    Ok(())
}
