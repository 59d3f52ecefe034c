use std::f64::consts::PI;

use num_complex::Complex64;

use super::{check_x, sum_exponentials, SumsError};
use crate::arith::{von_mangoldt_real, DEFAULT_SNAP_REL};
use crate::spectra::ZeroDataset;

/// `sum_{0 < gamma <= T} x^{1/2 + i gamma}`, zeros taken on the critical line.
pub fn landau_sum(z: &ZeroDataset, t: f64, x: f64) -> Result<Complex64, SumsError> {
    check_x("landau_sum", x)?;
    let gammas = z.window("landau_sum", t)?;
    Ok(x.sqrt() * sum_exponentials(gammas, x.ln()))
}

/// `-(T / 2 pi) Lambda(x)`.
pub fn landau_prediction(t: f64, x: f64) -> f64 {
    // Written as a difference so that Lambda(x) = 0 gives +0 rather than -0.
    0.0 - t / (2.0 * PI) * von_mangoldt_real(x, DEFAULT_SNAP_REL * x)
}
