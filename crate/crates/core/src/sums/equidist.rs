use std::f64::consts::TAU;

use num_complex::Complex64;

use super::{sum_exponentials, SumsError};
use crate::spectra::SpectrumDataset;

/// Weyl sums and star discrepancy of `{alpha t_j}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Equidistribution {
    /// `W_m = (1/N) sum_j exp(2 pi i m alpha t_j)` for `m = 1..=m_max`.
    pub weyl_sums: Vec<Complex64>,
    pub discrepancy: f64,
}

/// Star discrepancy of points in `[0, 1)`:
/// `max_i max(i/N - x_(i), x_(i) - (i-1)/N)` over the sorted points.
pub fn star_discrepancy(points: &mut [f64]) -> f64 {
    points.sort_by(f64::total_cmp);
    let n = points.len() as f64;
    points
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let i = i as f64;
            ((i + 1.0) / n - x).max(x - i / n)
        })
        .fold(0.0, f64::max)
}

pub fn equidistribution(d: &SpectrumDataset, alpha: f64, m_max: u32) -> Result<Equidistribution, SumsError> {
    const OP: &str = "equidistribution";
    if alpha == 0.0 || !alpha.is_finite() {
        return Err(SumsError::Domain {
            op: OP,
            msg: format!("alpha = {alpha} must be finite and nonzero"),
        });
    }
    let ts = d.t_values();
    if ts.is_empty() {
        return Err(SumsError::Domain {
            op: OP,
            msg: "dataset is empty".into(),
        });
    }
    let n = ts.len() as f64;
    let weyl_sums = (1..=m_max)
        .map(|m| sum_exponentials(ts, TAU * m as f64 * alpha) / n)
        .collect();
    let mut points: Vec<f64> = ts.iter().map(|t| (alpha * t).rem_euclid(1.0)).collect();
    let discrepancy = star_discrepancy(&mut points);
    Ok(Equidistribution { weyl_sums, discrepancy })
}
