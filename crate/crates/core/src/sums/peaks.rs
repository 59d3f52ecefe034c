use std::f64::consts::PI;

use rayon::prelude::*;

use super::{check_t, predict_fujii, predict_kernels, sum_exponentials, SumsError};
use crate::arith::{kappa, prime_power};
use crate::geodesics::{norm_from_trace, primitive_in_surface, trace_occurs};
use crate::scattering::{character_tuples, PhaseTrack};
use crate::spectra::{Family, SpectrumDataset, SurfaceDescriptor};

/// How a peak location was explained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PeakClass {
    /// `X` is the norm of the hyperbolic class of trace `trace`, which is the
    /// `power`-th power of the primitive class of trace `primitive_trace`.
    GeodesicNorm {
        trace: u64,
        primitive_trace: u64,
        power: u32,
    },
    /// `X = p^{2k}`.
    EvenPrimePower {
        p: u64,
        k: u32,
    },
    Unclassified,
}

/// A local maximum of `Delta1` over the `X` grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PeakReport {
    /// Location: the exact norm or prime power when classified, else the grid point.
    pub x: f64,
    pub x_grid: f64,
    /// `Delta1` at the grid point.
    pub amplitude: f64,
    pub classification: PeakClass,
    /// Predicted `Delta1` at `x` from the main terms, when available.
    pub predicted_amplitude: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeakConfig {
    /// Peaks must exceed mean + `sigma` standard deviations of `Delta1`.
    pub sigma: f64,
    /// Half-width in `log X` for matching a peak to a norm or prime power;
    /// `pi / T` when `None`.
    pub match_window: Option<f64>,
}

impl Default for PeakConfig {
    fn default() -> Self {
        Self {
            sigma: 3.0,
            match_window: None,
        }
    }
}

/// Scans `Delta1(T, X)` over `x_grid` and classifies its local maxima that
/// exceed the threshold.
///
/// Predicted amplitudes come from the congruence formula for the modular
/// and congruence groups, and from the kernel prediction with the phase
/// track for other surfaces when a track covering `T` is supplied.
pub fn peak_scan(
    d: &SpectrumDataset,
    track: Option<&PhaseTrack>,
    t: f64,
    x_grid: &[f64],
    config: &PeakConfig,
) -> Result<Vec<PeakReport>, SumsError> {
    const OP: &str = "peak_scan";
    check_t(OP, t)?;
    if x_grid.iter().any(|&x| !(x > 1.0 && x.is_finite())) || x_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(SumsError::Domain {
            op: OP,
            msg: "X grid must be strictly ascending with all points above 1".into(),
        });
    }
    let ts = d.window(OP, t)?;
    let delta1: Vec<f64> = x_grid
        .par_iter()
        .map(|&x| 2.0 * sum_exponentials(ts, x.ln()).re / t)
        .collect();
    if delta1.len() < 3 {
        return Ok(Vec::new());
    }
    let n = delta1.len() as f64;
    let mean = delta1.iter().sum::<f64>() / n;
    let var = delta1.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    let threshold = mean + config.sigma * var.sqrt();
    let window = config.match_window.unwrap_or(PI / t);
    let surface = &d.surface;

    let mut out = Vec::new();
    for i in 1..delta1.len() - 1 {
        let v = delta1[i];
        if !(v > threshold && v > delta1[i - 1] && v >= delta1[i + 1]) {
            continue;
        }
        let x_grid_pt = x_grid[i];
        let (x, classification) = classify(surface, x_grid_pt, window);
        let predicted_amplitude = predicted_delta1(surface, track, t, x)?;
        out.push(PeakReport {
            x,
            x_grid: x_grid_pt,
            amplitude: v,
            classification,
            predicted_amplitude,
        });
    }
    Ok(out)
}

/// Nearest norm or even prime power within `window` in `log X`.
fn classify(surface: &SurfaceDescriptor, x: f64, window: f64) -> (f64, PeakClass) {
    let lx = x.ln();
    let mut best: Option<(f64, f64, PeakClass)> = None;
    let mut consider = |xs: f64, class: PeakClass| {
        let dist = (xs.ln() - lx).abs();
        if dist <= window && best.as_ref().is_none_or(|b| dist < b.0) {
            best = Some((dist, xs, class));
        }
    };

    if surface.family != Family::Custom {
        let r = x.sqrt();
        let tau = r + 1.0 / r;
        let lo = (tau.floor() as u64).saturating_sub(1).max(3);
        for tr in lo..=(tau.ceil() as u64 + 1) {
            if !trace_occurs(surface, tr) {
                continue;
            }
            if let (Ok(norm), Ok(Some((t0, j)))) = (norm_from_trace(tr), primitive_in_surface(surface, tr)) {
                consider(
                    norm,
                    PeakClass::GeodesicNorm {
                        trace: tr,
                        primitive_trace: t0,
                        power: j,
                    },
                );
            }
        }
    }
    let r = x.sqrt();
    let lo = (r.floor() as u64).saturating_sub(1).max(2);
    for m in lo..=(r.ceil() as u64 + 1) {
        if let Some((p, k)) = prime_power(m) {
            consider((m * m) as f64, PeakClass::EvenPrimePower { p, k });
        }
    }

    match best {
        None => (x, PeakClass::Unclassified),
        Some((_, xs, class @ PeakClass::GeodesicNorm { trace, .. })) => (refine_norm(trace as f64, xs, window), class),
        Some((_, xs, class)) => (xs, class),
    }
}

/// Bisection on `sqrt(X) + 1/sqrt(X) = trace` around `guess`.
fn refine_norm(trace: f64, guess: f64, window: f64) -> f64 {
    let g = |x: f64| x.sqrt() + 1.0 / x.sqrt() - trace;
    let (mut a, mut b) = (guess * (-window).exp(), guess * window.exp());
    if g(a) > 0.0 || g(b) < 0.0 {
        return guess;
    }
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        if g(mid) < 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    let x = 0.5 * (a + b);
    debug_assert!(kappa(x) < 1e-6);
    x
}

fn predicted_delta1(
    surface: &SurfaceDescriptor,
    track: Option<&PhaseTrack>,
    t: f64,
    x: f64,
) -> Result<Option<f64>, SumsError> {
    match surface.family {
        Family::Modular | Family::Gamma0 | Family::Gamma1 | Family::GammaPrincipal => {
            let tuples = character_tuples(surface.family, surface.level);
            let p = predict_fujii(surface, &tuples, t, x)?;
            Ok(Some(2.0 * p.value.re / t))
        }
        _ => match track {
            Some(tr) if tr.t_max() >= t && t >= 1.0 => Ok(Some(predict_kernels(surface, tr, t, x)?.r / t)),
            _ => Ok(None),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Copies of the arithmetic progressions `2 pi k / log X0`, which produce
    /// peaks at the powers of each `X0`, on top of Weyl-law quantiles.
    fn synthetic(t_end: f64) -> Vec<f64> {
        let vol = PI / 3.0;
        let mut ts: Vec<f64> = (1..)
            .map(|j| (4.0 * PI * j as f64 / vol).sqrt())
            .take_while(|&t| t <= t_end)
            .collect();
        for x0 in [4.0f64, 9.0, norm_from_trace(3).unwrap()] {
            let step = 2.0 * PI / x0.ln();
            ts.extend((1..).map(|k| k as f64 * step).take_while(|&t| t <= t_end));
        }
        ts.sort_by(f64::total_cmp);
        ts
    }

    fn dataset(ts: Vec<f64>, t_end: f64) -> SpectrumDataset {
        SpectrumDataset::new(SurfaceDescriptor::modular(), ts, t_end, "synthetic").unwrap()
    }

    fn grid(step: f64) -> Vec<f64> {
        let n = ((30.0 - 3.0) / step).round() as usize;
        (0..=n).map(|i| 3.0 + i as f64 * step).collect()
    }

    #[test]
    fn synthetic_peaks_are_classified() {
        let t = 125.0;
        let d = dataset(synthetic(t), t);
        assert!(d.len() >= 500);
        let peaks = peak_scan(&d, None, t, &grid(0.01), &PeakConfig::default()).unwrap();
        let has = |pred: &dyn Fn(&PeakReport) -> bool| peaks.iter().any(pred);
        for (p, k) in [(2u64, 1u32), (3, 1), (2, 2)] {
            assert!(
                has(&|r| r.classification == PeakClass::EvenPrimePower { p, k }),
                "missing {p}^{}: {peaks:?}",
                2 * k
            );
        }
        let geo = peaks
            .iter()
            .find(|r| matches!(r.classification, PeakClass::GeodesicNorm { trace: 3, .. }))
            .expect("trace-3 peak");
        assert!((geo.x - norm_from_trace(3).unwrap()).abs() < 1e-9);
        assert!(kappa(geo.x) < 1e-6);
    }

    #[test]
    fn classification_stable_under_grid_halving() {
        let t = 125.0;
        let d = dataset(synthetic(t), t);
        let classes = |step| {
            let mut v: Vec<String> = peak_scan(&d, None, t, &grid(step), &PeakConfig::default())
                .unwrap()
                .into_iter()
                .filter(|r| r.classification != PeakClass::Unclassified)
                .map(|r| format!("{:?}", r.classification))
                .collect();
            v.sort();
            v
        };
        assert_eq!(classes(0.01), classes(0.005));
    }

    #[test]
    fn incommensurate_spectrum_has_no_geodesic_peaks() {
        // Weyl quantiles jittered by a golden-ratio sequence.
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let vol = PI / 3.0;
        let t_end = 125.0;
        let mut ts: Vec<f64> = (1..)
            .map(|j| (4.0 * PI * j as f64 / vol).sqrt() + 0.3 * ((j as f64 * phi).fract() - 0.5))
            .take_while(|&t| t <= t_end)
            .collect();
        ts.sort_by(f64::total_cmp);
        let d = dataset(ts, t_end);
        let peaks = peak_scan(&d, None, t_end, &grid(0.01), &PeakConfig::default()).unwrap();
        assert!(
            peaks
                .iter()
                .all(|r| !matches!(r.classification, PeakClass::GeodesicNorm { .. })),
            "{peaks:?}"
        );
    }
}
