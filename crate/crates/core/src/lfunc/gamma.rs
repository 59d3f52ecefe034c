use num_complex::Complex64;

use super::LfuncError;

/// `B_{2k} / (2k (2k - 1))` for `k = 1..=10`.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
];

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// `log Gamma(s)`, continued analytically from the positive reals with the
/// branch cut along the negative real axis.
///
/// Arguments with `re s < 10` are shifted by the recurrence
/// `log Gamma(s) = log Gamma(s + n) - sum_{k<n} log(s + k)` and then
/// Stirling's series is applied.
pub fn log_gamma(s: Complex64) -> Result<Complex64, LfuncError> {
    if !s.re.is_finite() || !s.im.is_finite() {
        return Err(LfuncError::OutOfRange {
            op: "log_gamma",
            re: s.re,
            im: s.im,
            msg: "non-finite argument",
        });
    }
    if s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0 {
        return Err(LfuncError::Pole {
            op: "log_gamma",
            at: format!("{}", s.re as i64),
        });
    }
    let mut z = s;
    let mut shift = Complex64::new(0.0, 0.0);
    if z.re < 10.0 {
        let n = (10.0 - z.re).ceil() as usize;
        for _ in 0..n {
            shift += z.ln();
            z += 1.0;
        }
    }
    Ok(stirling(z) - shift)
}

fn stirling(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut term = inv;
    let mut series = Complex64::new(0.0, 0.0);
    for c in STIRLING {
        series += term * c;
        term *= inv2;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_2PI + series
}
