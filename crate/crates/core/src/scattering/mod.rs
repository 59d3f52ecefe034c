//! Scattering determinants and the winding number `M(T)`.
//!
//! Two closed forms are implemented: the moonshine determinant for
//! `Gamma_0(q)^+` and the Dirichlet L-function product for the congruence
//! groups `Gamma_0(q)`, `Gamma_1(q)` and `Gamma(q)`. On the critical line
//! `|phi(1/2 + it)| = 1`, and `M(T) = -(theta(T) - theta(0)) / (2 pi)` where
//! `theta` is the continuously unwrapped argument of `phi(1/2 + it)`.

mod congruence;
mod moonshine;
mod phase;

use num_bigint::BigUint;
use num_complex::Complex64;
use thiserror::Error;

use crate::lfunc::LfuncError;
use crate::spectra::{Family, SurfaceDescriptor};

pub use congruence::{character_tuples, compute_a, phi_congruence_raw, CharacterTuple};
pub use moonshine::phi_moonshine;
pub use phase::{track_phase, PhaseTrack, INITIAL_STEP, MAX_REFINEMENT_DEPTH};

#[derive(Debug, Error)]
pub enum ScatteringError {
    #[error(transparent)]
    Lfunc(#[from] LfuncError),
    #[error("{op}: pole of the scattering determinant at s = {at}")]
    Pole { op: &'static str, at: String },
    #[error("{op}: no explicit scattering determinant for family {family}")]
    UnsupportedSurface { op: &'static str, family: Family },
    #[error("{op}: {msg}")]
    Model { op: &'static str, msg: String },
    #[error("track_phase: refinement depth exceeded near t = {t} (phase jump {jump})")]
    Track { t: f64, jump: f64 },
}

/// How the global sign `(-1)^{(h - h0)/2}` is handled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SignMode {
    /// Fix the sign to `+1`; the phase track and `M(T)` do not depend on it.
    #[default]
    UpToSign,
    /// Use the given `h0`, which must have the parity of `h`.
    Exact { h0: i64 },
}

#[derive(Debug, Clone)]
enum Backend {
    Moonshine {
        q: u64,
    },
    Congruence {
        tuples: Vec<CharacterTuple>,
        a: BigUint,
        log_a: f64,
        sign: f64,
    },
}

/// An evaluatable scattering determinant for a surface.
#[derive(Debug, Clone)]
pub struct ScatteringModel {
    pub surface: SurfaceDescriptor,
    pub sign_mode: SignMode,
    backend: Backend,
}

impl ScatteringModel {
    pub fn new(surface: &SurfaceDescriptor, sign_mode: SignMode) -> Result<Self, ScatteringError> {
        const OP: &str = "ScatteringModel::new";
        let backend = match surface.family {
            Family::MoonshinePlus | Family::Modular => Backend::Moonshine { q: surface.level },
            Family::Gamma0 | Family::Gamma1 | Family::GammaPrincipal => {
                let tuples = character_tuples(surface.family, surface.level);
                let h = tuples.len() as u64;
                if h != surface.cusps {
                    return Err(ScatteringError::Model {
                        op: OP,
                        msg: format!("{} character tuples but the surface has {} cusps", h, surface.cusps),
                    });
                }
                let a = compute_a(surface.family, surface.level, &tuples);
                let log_a = log_big(&a);
                let sign = match sign_mode {
                    SignMode::UpToSign => 1.0,
                    SignMode::Exact { h0 } => {
                        let diff = h as i64 - h0;
                        if diff % 2 != 0 {
                            return Err(ScatteringError::Model {
                                op: OP,
                                msg: format!("h - h0 = {diff} is odd"),
                            });
                        }
                        if (diff / 2) % 2 == 0 {
                            1.0
                        } else {
                            -1.0
                        }
                    }
                };
                Backend::Congruence { tuples, a, log_a, sign }
            }
            Family::Custom => {
                return Err(ScatteringError::UnsupportedSurface {
                    op: OP,
                    family: surface.family,
                })
            }
        };
        Ok(Self {
            surface: surface.clone(),
            sign_mode,
            backend,
        })
    }

    pub fn character_tuples(&self) -> &[CharacterTuple] {
        match &self.backend {
            Backend::Moonshine { .. } => &[],
            Backend::Congruence { tuples, .. } => tuples,
        }
    }

    /// The integer `A`; 1 for moonshine surfaces where it is unused.
    pub fn a(&self) -> BigUint {
        match &self.backend {
            Backend::Moonshine { .. } => BigUint::from(1u32),
            Backend::Congruence { a, .. } => a.clone(),
        }
    }

    /// The global sign applied to the congruence formula.
    pub fn sign(&self) -> f64 {
        match &self.backend {
            Backend::Moonshine { .. } => 1.0,
            Backend::Congruence { sign, .. } => *sign,
        }
    }

    pub fn phi(&self, s: Complex64) -> Result<Complex64, ScatteringError> {
        match &self.backend {
            Backend::Moonshine { q } => phi_moonshine(*q, s),
            Backend::Congruence {
                tuples, log_a, sign, ..
            } => Ok(phi_congruence_raw(tuples, *log_a, s)? * *sign),
        }
    }
}

/// `phi(s)` for a congruence model; identical to [`ScatteringModel::phi`].
pub fn phi_congruence(model: &ScatteringModel, s: Complex64) -> Result<Complex64, ScatteringError> {
    match &model.backend {
        Backend::Congruence { .. } => model.phi(s),
        Backend::Moonshine { .. } => Err(ScatteringError::UnsupportedSurface {
            op: "phi_congruence",
            family: model.surface.family,
        }),
    }
}

fn log_big(a: &BigUint) -> f64 {
    let bits = a.bits();
    if bits <= 1000 {
        let digits = a.to_u64_digits();
        let mut v = 0.0f64;
        for &dg in digits.iter().rev() {
            v = v * 18446744073709551616.0 + dg as f64;
        }
        v.ln()
    } else {
        let shift = bits - 64;
        let top = (a >> shift).to_u64_digits()[0] as f64;
        top.ln() + shift as f64 * std::f64::consts::LN_2
    }
}
