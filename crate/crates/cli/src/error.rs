use std::path::PathBuf;

use geodesic_spectra::geodesics::GeodesicError;
use geodesic_spectra::scattering::ScatteringError;
use geodesic_spectra::spectra::SpectraError;
use geodesic_spectra::sums::SumsError;
use geodesic_spectra::Error;
use thiserror::Error;

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DATA: i32 = 3;
pub const EXIT_NUMERIC: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{msg}")]
    Usage { op: &'static str, msg: String },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{source}")]
    Core {
        op: &'static str,
        params: String,
        #[source]
        source: Error,
    },
}

impl CliError {
    pub fn usage(op: &'static str, msg: impl Into<String>) -> Self {
        CliError::Usage { op, msg: msg.into() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage { .. } => EXIT_USAGE,
            CliError::Write { .. } => EXIT_DATA,
            CliError::Core { source, .. } if is_configuration(source) => EXIT_USAGE,
            CliError::Core { source, .. } if source.is_data_error() => EXIT_DATA,
            CliError::Core { .. } => EXIT_NUMERIC,
        }
    }

    /// The single machine-readable line printed on failure.
    pub fn report_line(&self) -> String {
        let (module, op, params) = match self {
            CliError::Usage { op, .. } => ("cli", *op, String::new()),
            CliError::Write { path, .. } => ("cli", "write_output", format!("path={}", path.display())),
            CliError::Core { op, params, source } => (origin(source), *op, params.clone()),
        };
        format!(
            "error: module={module} op={op} params={params:?} exit={} message={:?}",
            self.exit_code(),
            self.to_string()
        )
    }
}

/// Attaches the operation and its parameters to a library error.
pub trait Context<T> {
    fn ctx(self, op: &'static str, params: impl FnOnce() -> String) -> Result<T, CliError>;
}

impl<T, E: Into<Error>> Context<T> for Result<T, E> {
    fn ctx(self, op: &'static str, params: impl FnOnce() -> String) -> Result<T, CliError> {
        self.map_err(|e| CliError::Core {
            op,
            params: params(),
            source: e.into(),
        })
    }
}

/// The module where the failure originated, looking through wrappers.
fn origin(e: &Error) -> &'static str {
    match e {
        Error::Sums(SumsError::Spectra(_)) => "spectra",
        Error::Sums(SumsError::Scattering(ScatteringError::Lfunc(_)))
        | Error::Scattering(ScatteringError::Lfunc(_)) => "lfunc",
        Error::Sums(SumsError::Scattering(_)) => "scattering",
        Error::Sums(SumsError::Geodesics(GeodesicError::Arith(_))) | Error::Geodesics(GeodesicError::Arith(_)) => {
            "arith"
        }
        Error::Sums(SumsError::Geodesics(_)) => "geodesics",
        other => other.module(),
    }
}

/// Failures caused by an unsupported surface or out-of-domain parameters.
fn is_configuration(e: &Error) -> bool {
    fn spectra(e: &SpectraError) -> bool {
        matches!(
            e,
            SpectraError::UnsupportedSurface { .. } | SpectraError::InvalidSurface(_)
        )
    }
    fn scattering(e: &ScatteringError) -> bool {
        matches!(
            e,
            ScatteringError::UnsupportedSurface { .. } | ScatteringError::Model { .. }
        )
    }
    fn geodesics(e: &GeodesicError) -> bool {
        matches!(e, GeodesicError::UnsupportedSurface { .. })
    }
    match e {
        Error::Spectra(s) => spectra(s),
        Error::Scattering(s) => scattering(s),
        Error::Geodesics(g) => geodesics(g),
        Error::Sums(s) => match s {
            SumsError::Spectra(s) => spectra(s),
            SumsError::Scattering(s) => scattering(s),
            SumsError::Geodesics(g) => geodesics(g),
            SumsError::Domain { .. } | SumsError::UnsupportedSurface { .. } => true,
            SumsError::Coverage { .. } => false,
        },
        Error::Arith(_) | Error::Lfunc(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use geodesic_spectra::lfunc::LfuncError;

    fn core(source: Error) -> CliError {
        CliError::Core {
            op: "op",
            params: "a=1".into(),
            source,
        }
    }

    #[test]
    fn exit_codes_by_cause() {
        let numeric = core(
            ScatteringError::Lfunc(LfuncError::Pole {
                op: "zeta",
                at: "1".into(),
            })
            .into(),
        );
        assert_eq!(numeric.exit_code(), EXIT_NUMERIC);
        assert!(numeric.report_line().starts_with("error: module=lfunc op=op "));
        let data = core(SumsError::Spectra(SpectraError::Empty).into());
        assert_eq!(data.exit_code(), EXIT_DATA);
        assert!(data.report_line().contains("module=spectra"));
        let usage = core(
            SumsError::Domain {
                op: "x",
                msg: "X <= 1".into(),
            }
            .into(),
        );
        assert_eq!(usage.exit_code(), EXIT_USAGE);
        assert_eq!(CliError::usage("grid", "bad").exit_code(), EXIT_USAGE);
    }
}
