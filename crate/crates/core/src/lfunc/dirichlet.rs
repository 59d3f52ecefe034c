use num_complex::Complex64;

use super::zeta::{hurwitz_zeta, hurwitz_zeta_finite_part, hurwitz_zeta_regularized};
use super::LfuncError;
use crate::arith::DirichletCharacter;

/// `L(s, chi) = m^{-s} sum_{a=1}^{m} chi(a) zeta(s, a/m)`.
///
/// For non-principal characters the `1/(s-1)` parts of the Hurwitz values
/// cancel, so only their finite parts are summed and `s = 1` is regular.
pub fn dirichlet_l(s: Complex64, chi: &DirichletCharacter) -> Result<Complex64, LfuncError> {
    let m = chi.modulus();
    if chi.is_principal() && s == Complex64::new(1.0, 0.0) {
        return Err(LfuncError::Pole {
            op: "dirichlet_L",
            at: format!("1 (principal character mod {m})"),
        });
    }
    let mf = m as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for a in 1..=m {
        let v = chi.value(a as i64);
        if v == Complex64::new(0.0, 0.0) {
            continue;
        }
        let x = a as f64 / mf;
        let z = if chi.is_principal() {
            hurwitz_zeta(s, x)
        } else {
            hurwitz_zeta_finite_part(s, x)
        }
        .map_err(rename)?;
        sum += v * z;
    }
    Ok(sum * (-s * mf.ln()).exp())
}

/// `(s - 1) L(s, chi)`, regular at `s = 1` for every character.
pub fn dirichlet_l_regularized(s: Complex64, chi: &DirichletCharacter) -> Result<Complex64, LfuncError> {
    if !chi.is_principal() {
        return dirichlet_l(s, chi).map(|l| (s - 1.0) * l);
    }
    let m = chi.modulus();
    let mf = m as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for a in 1..=m {
        if chi.exponent(a as i64).is_none() {
            continue;
        }
        sum += hurwitz_zeta_regularized(s, a as f64 / mf).map_err(rename)?;
    }
    Ok(sum * (-s * mf.ln()).exp())
}

fn rename(e: LfuncError) -> LfuncError {
    match e {
        LfuncError::Pole { at, .. } => LfuncError::Pole { op: "dirichlet_L", at },
        LfuncError::OutOfRange { re, im, msg, .. } => LfuncError::OutOfRange {
            op: "dirichlet_L",
            re,
            im,
            msg,
        },
    }
}
