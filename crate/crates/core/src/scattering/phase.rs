use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use super::{ScatteringError, ScatteringModel};

/// Default grid spacing in `t` before refinement.
pub const INITIAL_STEP: f64 = 0.05;
/// Number of step halvings allowed before tracking gives up.
pub const MAX_REFINEMENT_DEPTH: u32 = 40;

/// The critical-line values of `phi`, their unwrapped argument and `M(t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseTrack {
    grid: Vec<f64>,
    phi: Vec<Complex64>,
    phase: Vec<f64>,
    m_values: Vec<f64>,
}

impl PhaseTrack {
    /// A track of a surface without continuous spectrum (`M = 0`) on `[0, t]`.
    pub fn compact(t: f64) -> Self {
        Self {
            grid: vec![0.0, t],
            phi: vec![Complex64::new(1.0, 0.0); 2],
            phase: vec![0.0; 2],
            m_values: vec![0.0; 2],
        }
    }

    /// Builds a track from sampled `(t, M(t))` values, e.g. read from a file.
    /// The grid must start at 0 and be strictly ascending.
    pub fn from_m_values(grid: Vec<f64>, m_values: Vec<f64>) -> Option<Self> {
        if grid.len() != m_values.len() || grid.first() != Some(&0.0) {
            return None;
        }
        if grid.windows(2).any(|w| !(w[1] > w[0])) {
            return None;
        }
        let phase = m_values.iter().map(|m| -TAU * m).collect();
        let phi = vec![Complex64::new(f64::NAN, f64::NAN); grid.len()];
        Some(Self {
            grid,
            phi,
            phase,
            m_values,
        })
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn phi_values(&self) -> &[Complex64] {
        &self.phi
    }

    pub fn phase(&self) -> &[f64] {
        &self.phase
    }

    pub fn m_values(&self) -> &[f64] {
        &self.m_values
    }

    pub fn t_max(&self) -> f64 {
        *self.grid.last().expect("track has at least one point")
    }

    /// `M(t)` by linear interpolation; `None` outside the tracked range.
    pub fn m_at(&self, t: f64) -> Option<f64> {
        if !(0.0..=self.t_max()).contains(&t) {
            return None;
        }
        let i = self.grid.partition_point(|&g| g <= t);
        if i == self.grid.len() {
            return self.m_values.last().copied();
        }
        let (t0, t1) = (self.grid[i - 1], self.grid[i]);
        let (m0, m1) = (self.m_values[i - 1], self.m_values[i]);
        Some(m0 + (m1 - m0) * (t - t0) / (t1 - t0))
    }

    /// `int_a^b f(t) dM(t)` by the midpoint rule on the grid increments,
    /// with the end cells cut at `a` and `b` by linear interpolation.
    pub fn integrate_dm<F>(&self, a: f64, b: f64, f: F) -> Option<Complex64>
    where
        F: Fn(f64) -> Complex64,
    {
        if a < 0.0 || b > self.t_max() || a > b {
            return None;
        }
        let mut acc = Complex64::new(0.0, 0.0);
        if a == b {
            return Some(acc);
        }
        let start = self.grid.partition_point(|&g| g <= a);
        let mut t_prev = a;
        let mut m_prev = self.m_at(a)?;
        for i in start..self.grid.len() {
            let (t_next, m_next) = if self.grid[i] >= b {
                (b, self.m_at(b)?)
            } else {
                (self.grid[i], self.m_values[i])
            };
            acc += f(0.5 * (t_prev + t_next)) * (m_next - m_prev);
            t_prev = t_next;
            m_prev = m_next;
            if t_next >= b {
                break;
            }
        }
        Some(acc)
    }
}

/// Follows `theta(t) = arg phi(1/2 + it)` continuously on `[0, t_end]`.
///
/// Steps start at [`INITIAL_STEP`] and are halved until the phase changes by
/// at most `min(2 pi tol, 0.9 pi)`, so `tol` bounds the change of `M` between
/// neighbouring grid points. `M(t) = -(theta(t) - theta(0)) / (2 pi)`.
pub fn track_phase(model: &ScatteringModel, t_end: f64, tol: f64) -> Result<PhaseTrack, ScatteringError> {
    if !(t_end >= 0.0) || !t_end.is_finite() {
        return Err(ScatteringError::Model {
            op: "track_phase",
            msg: format!("T = {t_end} must be a nonnegative finite number"),
        });
    }
    if !(tol > 0.0) {
        return Err(ScatteringError::Model {
            op: "track_phase",
            msg: format!("tol = {tol} must be positive"),
        });
    }
    let max_jump = (TAU * tol).min(0.9 * PI);
    let eval = |t: f64| model.phi(Complex64::new(0.5, t));

    let phi0 = eval(0.0)?;
    let theta0 = phi0.arg();
    let mut grid = vec![0.0];
    let mut phi = vec![phi0];
    let mut phase = vec![theta0];
    let (mut t, mut theta, mut prev) = (0.0f64, theta0, phi0);
    let mut h = INITIAL_STEP;
    while t < t_end {
        let mut depth = 0;
        loop {
            let t_next = (t + h).min(t_end);
            let value = eval(t_next)?;
            let jump = (value / prev).arg();
            if jump.abs() <= max_jump {
                t = t_next;
                theta += jump;
                prev = value;
                grid.push(t);
                phi.push(value);
                phase.push(theta);
                h = (2.0 * h).min(INITIAL_STEP);
                break;
            }
            depth += 1;
            if depth > MAX_REFINEMENT_DEPTH {
                return Err(ScatteringError::Track { t: t_next, jump });
            }
            h *= 0.5;
        }
    }
    let m_values = phase.iter().map(|th| -(th - theta0) / TAU).collect();
    Ok(PhaseTrack {
        grid,
        phi,
        phase,
        m_values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scattering::SignMode;
    use crate::spectra::{Family, SurfaceDescriptor};

    fn moonshine5() -> ScatteringModel {
        let s = SurfaceDescriptor::new(Family::MoonshinePlus, 5).unwrap();
        ScatteringModel::new(&s, SignMode::UpToSign).unwrap()
    }

    #[test]
    fn zero_height() {
        let tr = track_phase(&moonshine5(), 0.0, 1e-2).unwrap();
        assert_eq!(tr.m_values(), &[0.0]);
        assert_eq!(tr.m_at(0.0), Some(0.0));
    }

    #[test]
    fn continuity_and_tolerance_halving() {
        let model = moonshine5();
        let a = track_phase(&model, 40.0, 1e-2).unwrap();
        let b = track_phase(&model, 40.0, 5e-3).unwrap();
        for w in a.phase().windows(2) {
            assert!((w[1] - w[0]).abs() < PI);
        }
        for w in a.m_values().windows(2) {
            assert!((w[1] - w[0]).abs() <= 1e-2 + 1e-12);
        }
        let (ma, mb) = (a.m_at(40.0).unwrap(), b.m_at(40.0).unwrap());
        assert!((ma - mb).abs() < 10.0 * 1e-2, "{ma} vs {mb}");
        assert_eq!(a.t_max(), 40.0);
    }

    #[test]
    fn winding_grows_like_t_log_t() {
        let model = moonshine5();
        let tr = track_phase(&model, 100.0, 1e-2).unwrap();
        for t in [20.0, 50.0, 100.0] {
            let m = tr.m_at(t).unwrap();
            let main = t * t.ln() / PI;
            assert!(((m - main) / t).abs() < 1.0, "t={t} M={m}");
        }
    }

    #[test]
    fn stieltjes_integral_of_one_is_increment() {
        let model = moonshine5();
        let tr = track_phase(&model, 10.0, 1e-2).unwrap();
        let v = tr.integrate_dm(1.0, 7.3, |_| Complex64::new(1.0, 0.0)).unwrap();
        let expect = tr.m_at(7.3).unwrap() - tr.m_at(1.0).unwrap();
        assert!((v.re - expect).abs() < 1e-12 && v.im == 0.0);
        assert_eq!(
            tr.integrate_dm(1.0, 1.0, |_| Complex64::new(1.0, 0.0)),
            Some(Complex64::new(0.0, 0.0))
        );
        assert!(tr.integrate_dm(1.0, 11.0, |_| Complex64::new(1.0, 0.0)).is_none());
    }

    #[test]
    fn compact_track_has_no_winding() {
        let tr = PhaseTrack::compact(50.0);
        assert_eq!(tr.m_at(20.0), Some(0.0));
    }
}
