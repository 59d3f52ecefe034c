use std::f64::consts::PI;

use num_complex::Complex64;

use super::{check_t, check_x, cis_product, SumsError};
use crate::arith::{von_mangoldt_real, DEFAULT_SNAP_REL};
use crate::geodesics::{lambda_gamma, DEFAULT_LAMBDA_EPS};
use crate::scattering::{CharacterTuple, PhaseTrack};
use crate::spectra::{Family, SurfaceDescriptor};

/// Which remainder a prediction leaves out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RemainderClass {
    /// `X^{iT} S(T) + O(G(T))`, with `G(T)` not bounded explicitly.
    SpectralAndZetaIntegral,
    /// `O(T / log T)`.
    TOverLogT,
}

impl RemainderClass {
    pub fn describe(self) -> &'static str {
        match self {
            RemainderClass::SpectralAndZetaIntegral => "X^{iT}S(T)+O(G(T)) omitted",
            RemainderClass::TOverLogT => "O(T/log T) omitted",
        }
    }
}

/// A predicted value of `S(T, X)` split into its terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prediction {
    pub value: Complex64,
    /// `vol/(2 pi i log X) X^{iT} T`.
    pub oscillatory: Complex64,
    /// `(T / 2 pi) (X^{1/2} - X^{-1/2})^{-1} Lambda_Gamma(X)`.
    pub geodesic: f64,
    /// The character term of the congruence formula, or `-int_1^T X^{it} dM`.
    pub continuous: Complex64,
    pub remainder_class: RemainderClass,
}

fn oscillatory_term(volume: f64, t: f64, l: f64) -> Complex64 {
    // vol/(2 pi i L) * e^{i T L} * T
    cis_product(t, l) * Complex64::new(0.0, -volume * t / (2.0 * PI * l))
}

fn geodesic_term(surface: &SurfaceDescriptor, t: f64, x: f64) -> f64 {
    let lg = lambda_gamma(surface, x, DEFAULT_LAMBDA_EPS);
    if lg == 0.0 {
        return 0.0;
    }
    let r = x.sqrt();
    t / (2.0 * PI) * lg / (r - 1.0 / r)
}

/// The two Lambda-terms of the congruence-group formula at `(T, X)`:
/// `(T/2pi)(X^{1/2} - X^{-1/2})^{-1} Lambda_Gamma(X)` and
/// `(T/pi) X^{-1/2} Lambda(X^{1/2}) sum_psi re psi(X^{1/2})`.
pub fn fujii_lambda_terms(surface: &SurfaceDescriptor, tuples: &[CharacterTuple], t: f64, x: f64) -> (f64, f64) {
    let geo = geodesic_term(surface, t, x);
    let r = x.sqrt();
    let lam = von_mangoldt_real(r, DEFAULT_SNAP_REL * r);
    let chars = if lam == 0.0 {
        0.0
    } else {
        let n = r.round() as i64;
        let sum: f64 = tuples.iter().map(|tp| tp.psi.value(n).re).sum();
        t / PI / r * lam * sum
    };
    (geo, chars)
}

/// Main terms of `S(T, X)` for the modular and congruence groups:
///
/// `vol/(2 pi i log X) X^{iT} T + (T/2pi)(X^{1/2} - X^{-1/2})^{-1} Lambda_Gamma(X)
///  + (T/pi) X^{-1/2} Lambda(X^{1/2}) sum*_psi re psi(X^{1/2})`.
///
/// The character sum runs over the `psi` of the given tuples.
pub fn predict_fujii(
    surface: &SurfaceDescriptor,
    tuples: &[CharacterTuple],
    t: f64,
    x: f64,
) -> Result<Prediction, SumsError> {
    const OP: &str = "predict_fujii";
    check_x(OP, x)?;
    check_t(OP, t)?;
    if !matches!(
        surface.family,
        Family::Modular | Family::Gamma0 | Family::Gamma1 | Family::GammaPrincipal
    ) {
        return Err(SumsError::UnsupportedSurface {
            op: OP,
            family: surface.family,
        });
    }
    let oscillatory = oscillatory_term(surface.volume, t, x.ln());
    let (geodesic, chars) = fujii_lambda_terms(surface, tuples, t, x);
    let continuous = Complex64::new(chars, 0.0);
    Ok(Prediction {
        value: oscillatory + geodesic + continuous,
        oscillatory,
        geodesic,
        continuous,
        remainder_class: RemainderClass::SpectralAndZetaIntegral,
    })
}

fn m_integral(op: &'static str, track: &PhaseTrack, t: f64, l: f64) -> Result<Complex64, SumsError> {
    if t < 1.0 {
        return Err(SumsError::Domain {
            op,
            msg: format!("T = {t} must be at least 1 (the winding integral starts at 1)"),
        });
    }
    track
        .integrate_dm(1.0, t, |s| cis_product(s, l))
        .ok_or(SumsError::Coverage {
            op,
            t,
            covered: track.t_max(),
        })
}

/// Main terms for a general cofinite group:
/// `vol/(2 pi i) X^{iT}/log X T + (T/2pi)(X^{1/2} - X^{-1/2})^{-1} Lambda_Gamma(X)
///  - int_1^T X^{it} dM(t)`, the integral taken on the track's grid.
pub fn predict_generic(
    surface: &SurfaceDescriptor,
    track: &PhaseTrack,
    t: f64,
    x: f64,
) -> Result<Prediction, SumsError> {
    const OP: &str = "predict_generic";
    check_x(OP, x)?;
    check_t(OP, t)?;
    let l = x.ln();
    let oscillatory = oscillatory_term(surface.volume, t, l);
    let geodesic = geodesic_term(surface, t, x);
    let continuous = -m_integral(OP, track, t, l)?;
    Ok(Prediction {
        value: oscillatory + geodesic + continuous,
        oscillatory,
        geodesic,
        continuous,
        remainder_class: RemainderClass::TOverLogT,
    })
}

/// Predicted cosine and sine kernels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelPrediction {
    pub r: f64,
    pub p: f64,
    pub remainder_class: RemainderClass,
}

/// `R = (vol/pi)(sin(T L)/L) T + (T/pi)(X^{1/2} - X^{-1/2})^{-1} Lambda_Gamma(X) - 2 int cos(t L) dM`,
/// `P = -(vol/pi)(cos(T L)/L) T - 2 int sin(t L) dM`, with `L = log X`.
pub fn predict_kernels(
    surface: &SurfaceDescriptor,
    track: &PhaseTrack,
    t: f64,
    x: f64,
) -> Result<KernelPrediction, SumsError> {
    const OP: &str = "predict_kernels";
    check_x(OP, x)?;
    check_t(OP, t)?;
    let l = x.ln();
    let (sin, cos) = (t * l).sin_cos();
    let scale = surface.volume / PI * t / l;
    let geo = 2.0 * geodesic_term(surface, t, x);
    let m = m_integral(OP, track, t, l)?;
    Ok(KernelPrediction {
        r: scale * sin + geo - 2.0 * m.re,
        p: -scale * cos - 2.0 * m.im,
        remainder_class: RemainderClass::TOverLogT,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geodesics::norm_from_trace;
    use crate::scattering::{character_tuples, track_phase, ScatteringModel, SignMode};

    #[test]
    fn off_peak_only_oscillatory_term() {
        let m = SurfaceDescriptor::modular();
        let tuples = character_tuples(Family::Modular, 1);
        let (t, x) = (100.0, 5.3);
        let p = predict_fujii(&m, &tuples, t, x).unwrap();
        assert_eq!(p.geodesic, 0.0);
        assert_eq!(p.continuous, Complex64::new(0.0, 0.0));
        let expect = m.volume / (2.0 * PI * x.ln()) * t;
        assert!((p.value.norm() - expect).abs() < 1e-12);
    }

    #[test]
    fn even_prime_power_term() {
        let m = SurfaceDescriptor::modular();
        let tuples = character_tuples(Family::Modular, 1);
        let t = 50.0;
        let p = predict_fujii(&m, &tuples, t, 4.0).unwrap();
        let expect = t / PI * 0.5 * 2f64.ln();
        assert!((p.continuous.re - expect).abs() < 1e-12);
    }

    #[test]
    fn geodesic_norm_term() {
        let m = SurfaceDescriptor::modular();
        let tuples = character_tuples(Family::Modular, 1);
        let t = 80.0;
        let x = norm_from_trace(3).unwrap();
        let p = predict_fujii(&m, &tuples, t, x).unwrap();
        let lam = 2.0 * ((3.0 + 5f64.sqrt()) / 2.0).ln();
        let expect = t / (2.0 * PI) / (x.sqrt() - 1.0 / x.sqrt()) * lam;
        assert!((p.geodesic - expect).abs() < 1e-12);
    }

    #[test]
    fn unsupported_family() {
        let s = SurfaceDescriptor::new(Family::MoonshinePlus, 5).unwrap();
        assert!(matches!(
            predict_fujii(&s, &[], 10.0, 4.0),
            Err(SumsError::UnsupportedSurface { .. })
        ));
    }

    #[test]
    fn compact_mode_and_recombination() {
        let m = SurfaceDescriptor::modular();
        let tr = PhaseTrack::compact(200.0);
        let (t, x) = (150.0, 7.7);
        let g = predict_generic(&m, &tr, t, x).unwrap();
        assert_eq!(g.continuous, Complex64::new(0.0, 0.0));
        let k = predict_kernels(&m, &tr, t, x).unwrap();
        assert!((Complex64::new(k.r, k.p) - 2.0 * g.value).norm() < 1e-10);
        let l = x.ln();
        assert!((k.p + m.volume / PI * (t * l).cos() / l * t).abs() < 1e-10);
        let at_one = predict_generic(&m, &tr, 1.0, x).unwrap();
        assert_eq!(at_one.continuous, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn kernels_recombine_with_winding() {
        let s = SurfaceDescriptor::new(Family::MoonshinePlus, 5).unwrap();
        let model = ScatteringModel::new(&s, SignMode::UpToSign).unwrap();
        let tr = track_phase(&model, 60.0, 1e-2).unwrap();
        for x in [4.0, norm_from_trace(3).unwrap(), 9.0, 12.5] {
            let g = predict_generic(&s, &tr, 60.0, x).unwrap();
            let k = predict_kernels(&s, &tr, 60.0, x).unwrap();
            assert!((Complex64::new(k.r, k.p) - 2.0 * g.value).norm() < 1e-10, "x={x}");
        }
        // Lambda_Gamma enters R only.
        let x = norm_from_trace(3).unwrap();
        let with = predict_kernels(&s, &tr, 60.0, x).unwrap();
        let g = predict_generic(&s, &tr, 60.0, x).unwrap();
        assert!(g.geodesic > 0.0);
        assert!((with.p - 2.0 * g.value.im).abs() < 1e-10);
        assert!(predict_generic(&s, &tr, 61.0, x).is_err());
    }
}
