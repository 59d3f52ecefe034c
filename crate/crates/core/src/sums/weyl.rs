use std::f64::consts::PI;

use num_complex::Complex64;

use super::{Axis, SumKind, SumSeries, SumsError};
use crate::scattering::PhaseTrack;
use crate::spectra::{counting_function, SpectrumDataset};

/// Linear Weyl-law coefficient and additive constant used for a residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeylFit {
    pub c_gamma: f64,
    pub constant: f64,
    /// Whether `c_gamma` was fitted (true) or taken from the surface.
    pub fitted_c: bool,
}

/// Least-squares line `y = slope x + intercept`, computed on centred data.
pub fn fit_linear(xs: &[f64], ys: &[f64]) -> Option<(f64, f64)> {
    let n = xs.len();
    if n < 2 || ys.len() != n {
        return None;
    }
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    Some((slope, my - slope * mx))
}

/// `r(T) = N(T) + M(T) - (vol/4pi) T^2 + (h/pi) T log T - c T - const`.
///
/// `c` is the surface's `c_gamma` when set and is fitted by least squares
/// otherwise; the constant is always fitted. `r` estimates `S(T)` up to the
/// slowly varying `w(T)`.
pub fn weyl_residual(
    d: &SpectrumDataset,
    track: &PhaseTrack,
    t_grid: &[f64],
) -> Result<(SumSeries, WeylFit), SumsError> {
    const OP: &str = "weyl_residual";
    let surface = &d.surface;
    let (vol, h) = (surface.volume, surface.cusps as f64);
    let mut ys = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        if !(t > 0.0) {
            return Err(SumsError::Domain {
                op: OP,
                msg: format!("grid point T = {t} must be positive"),
            });
        }
        let n = counting_function(d, t)? as f64;
        let m = track.m_at(t).ok_or(SumsError::Coverage {
            op: OP,
            t,
            covered: track.t_max(),
        })?;
        ys.push(n + m - vol / (4.0 * PI) * t * t + h / PI * t * t.ln());
    }
    let fit = match surface.c_gamma {
        Some(c) => {
            if ys.is_empty() {
                return Err(SumsError::Domain {
                    op: OP,
                    msg: "empty grid".into(),
                });
            }
            let constant = ys.iter().zip(t_grid).map(|(y, t)| y - c * t).sum::<f64>() / ys.len() as f64;
            WeylFit {
                c_gamma: c,
                constant,
                fitted_c: false,
            }
        }
        None => {
            let (c, constant) = fit_linear(t_grid, &ys).ok_or(SumsError::Domain {
                op: OP,
                msg: "fitting c_gamma needs at least two distinct grid points".into(),
            })?;
            WeylFit {
                c_gamma: c,
                constant,
                fitted_c: true,
            }
        }
    };
    let values = ys
        .iter()
        .zip(t_grid)
        .map(|(y, t)| Complex64::new(y - fit.c_gamma * t - fit.constant, 0.0))
        .collect();
    let mut series = SumSeries::new(SumKind::Residual, Axis::T, t_grid.to_vec(), values);
    series.surface = Some(surface.to_string());
    series.metadata.push(("c_gamma".into(), format!("{}", fit.c_gamma)));
    series
        .metadata
        .push(("c_gamma_fitted".into(), format!("{}", fit.fitted_c)));
    series.metadata.push(("constant".into(), format!("{}", fit.constant)));
    Ok((series, fit))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scattering::{track_phase, ScatteringModel, SignMode};
    use crate::spectra::{Family, SurfaceDescriptor};

    /// Eigenvalues placed where the smooth Weyl law plus `c T + k0` minus
    /// `M(T)` reaches each integer, so that `N + M` follows the law exactly
    /// at every listed `t_j`.
    fn law_conforming(track: &PhaseTrack, vol: f64, c: f64, k0: f64, t_end: f64) -> Vec<f64> {
        let f = |t: f64| vol / (4.0 * PI) * t * t - t * t.ln() / PI + c * t + k0 - track.m_at(t).unwrap();
        let mut out = Vec::new();
        assert!(f(1.0) < 1.0);
        let mut lo = 1.0;
        let mut k = 1.0;
        while f(t_end) >= k {
            // f may wiggle; take the first crossing after the previous root.
            let mut a = lo;
            let mut step = 0.01;
            while f(a + step) < k {
                a += step;
                step = (step * 1.5).min(0.05);
            }
            let mut b = a + step;
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                if f(mid) < k {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            out.push(b);
            lo = b;
            k += 1.0;
        }
        out
    }

    #[test]
    fn synthetic_law_conforming_dataset() {
        let surface = SurfaceDescriptor::new(Family::MoonshinePlus, 5).unwrap();
        let model = ScatteringModel::new(&surface, SignMode::UpToSign).unwrap();
        let track = track_phase(&model, 60.0, 1e-3).unwrap();
        let ts = law_conforming(&track, surface.volume, 3.0, -3.0, 60.0);
        assert!(ts.len() > 100);
        let d = SpectrumDataset::new(surface, ts.clone(), 60.0, "synthetic").unwrap();
        let grid: Vec<f64> = ts.iter().copied().filter(|&t| t >= 5.0).collect();
        let (series, fit) = weyl_residual(&d, &track, &grid).unwrap();
        assert!((fit.c_gamma - 3.0).abs() < 1e-8);
        assert!((fit.constant + 3.0).abs() < 1e-6);
        for v in series.real_values() {
            assert!(v.abs() < 1e-8, "{v}");
        }
    }

    #[test]
    fn constant_shift_in_m_is_absorbed() {
        let surface = SurfaceDescriptor::new(Family::MoonshinePlus, 5).unwrap();
        let ts: Vec<f64> = (1..400).map(|j| (4.0 * j as f64).sqrt() + 0.3).collect();
        let d = SpectrumDataset::new(surface, ts, 40.5, "x").unwrap();
        let grid: Vec<f64> = (0..300).map(|i| 10.0 + 0.1 * i as f64).collect();
        let base: Vec<f64> = (0..=400).map(|i| 0.1 * i as f64).collect();
        let m: Vec<f64> = base.iter().map(|t| (t * 1.3).sin() * t).collect();
        let shifted: Vec<f64> = m.iter().map(|v| v + 7.0).collect();
        let mut shifted_m = shifted;
        shifted_m[0] = 0.0;
        let a = PhaseTrack::from_m_values(base.clone(), m).unwrap();
        let b = PhaseTrack::from_m_values(base, shifted_m).unwrap();
        let (ra, _) = weyl_residual(&d, &a, &grid).unwrap();
        let (rb, _) = weyl_residual(&d, &b, &grid).unwrap();
        for (x, y) in ra.real_values().iter().zip(rb.real_values()) {
            assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn coverage_errors() {
        let surface = SurfaceDescriptor::new(Family::MoonshinePlus, 5).unwrap();
        let d = SpectrumDataset::new(surface, vec![1.0, 2.0], 50.0, "x").unwrap();
        let tr = PhaseTrack::compact(10.0);
        assert!(matches!(
            weyl_residual(&d, &tr, &[5.0, 20.0]),
            Err(SumsError::Coverage { .. })
        ));
        assert!(weyl_residual(&d, &tr, &[5.0, 8.0]).is_ok());
    }
}
