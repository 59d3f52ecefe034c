use thiserror::Error;

use crate::arith::ArithError;
use crate::geodesics::GeodesicError;
use crate::lfunc::LfuncError;
use crate::scattering::ScatteringError;
use crate::spectra::SpectraError;
use crate::sums::SumsError;

/// Crate-level error. The display form always starts with the module name so
/// that callers (the CLI in particular) can report where a failure originated.
#[derive(Debug, Error)]
pub enum Error {
    #[error("spectra: {0}")]
    Spectra(#[from] SpectraError),
    #[error("arith: {0}")]
    Arith(#[from] ArithError),
    #[error("geodesics: {0}")]
    Geodesics(#[from] GeodesicError),
    #[error("lfunc: {0}")]
    Lfunc(#[from] LfuncError),
    #[error("scattering: {0}")]
    Scattering(#[from] ScatteringError),
    #[error("sums: {0}")]
    Sums(#[from] SumsError),
}

impl Error {
    pub fn module(&self) -> &'static str {
        match self {
            Error::Spectra(_) => "spectra",
            Error::Arith(_) => "arith",
            Error::Geodesics(_) => "geodesics",
            Error::Lfunc(_) => "lfunc",
            Error::Scattering(_) => "scattering",
            Error::Sums(_) => "sums",
        }
    }

    /// True for failures caused by input data (missing files, malformed or
    /// incomplete datasets) rather than by a numerical problem.
    pub fn is_data_error(&self) -> bool {
        match self {
            Error::Spectra(_) => true,
            Error::Sums(e) => e.is_data_error(),
            _ => false,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
