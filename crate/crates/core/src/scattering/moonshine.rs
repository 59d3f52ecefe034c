use num_complex::Complex64;

use super::ScatteringError;
use crate::arith::factorize;
use crate::lfunc::{log_gamma, riemann_zeta, riemann_zeta_regularized};

/// Scattering determinant of `Gamma_0(q)^+` at the cusp `i infinity`:
///
/// `phi(s) = sqrt(pi) q^{-s} Gamma(s - 1/2) zeta(2s - 1) / (Gamma(s) zeta(2s))
///           * prod_{p | q} (1 + p^{1-s}) / (1 + p^{-s})`.
///
/// The factor `Gamma(s - 1/2) / zeta(2s)` has a removable singularity at
/// `s = 1/2`. It is evaluated as `2 Gamma(s + 1/2) / ((2s - 1) zeta(2s))`,
/// which is regular there, so `phi(1/2) = -1` needs no special branch.
pub fn phi_moonshine(q: u64, s: Complex64) -> Result<Complex64, ScatteringError> {
    const OP: &str = "phi_moonshine";
    if s == Complex64::new(1.0, 0.0) {
        return Err(ScatteringError::Pole {
            op: OP,
            at: "1 (pole of zeta(2s - 1))".into(),
        });
    }
    let one = Complex64::new(1.0, 0.0);
    let log_gammas = log_gamma(s + 0.5)? - log_gamma(s)?;
    let zeta_num = riemann_zeta(2.0 * s - 1.0)?;
    let zeta_den = riemann_zeta_regularized(2.0 * s)?;
    let qf = q as f64;
    let mut local = one;
    for (p, _) in factorize(q) {
        let lp = (p as f64).ln();
        let den = one + (-s * lp).exp();
        if den.norm() < 1e-300 {
            return Err(ScatteringError::Pole {
                op: OP,
                at: format!("{s} (local factor at p = {p})"),
            });
        }
        local *= (one + ((1.0 - s) * lp).exp()) / den;
    }
    let prefactor = 2.0 * std::f64::consts::PI.sqrt() * (-s * qf.ln()).exp();
    Ok(prefactor * log_gammas.exp() * zeta_num / zeta_den * local)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn value_at_half() {
        for q in [1u64, 2, 5, 6, 30] {
            let v = phi_moonshine(q, c(0.5, 0.0)).unwrap();
            assert!((v + 1.0).norm() < 1e-12, "q={q}: {v}");
            // Approaching along the real axis.
            let near = phi_moonshine(q, c(0.5 + 1e-7, 0.0)).unwrap();
            assert!((near + 1.0).norm() < 1e-5, "q={q}");
        }
    }

    #[test]
    fn unimodular_on_critical_line() {
        for t in [0.3, 2.0, 17.5, 99.0] {
            let v = phi_moonshine(5, c(0.5, t)).unwrap();
            assert!((v.norm() - 1.0).abs() < 1e-10, "t={t}");
        }
    }

    #[test]
    fn value_at_two() {
        let zeta3 = 1.202_056_903_159_594_2;
        let zeta4 = PI.powi(4) / 90.0;
        let expect = PI / 2.0 * zeta3 / zeta4;
        assert!((expect - 1.745).abs() < 1e-3);
        let v = phi_moonshine(1, c(2.0, 0.0)).unwrap();
        assert!((v - expect).norm() < 1e-12);
    }

    #[test]
    fn functional_equation() {
        // phi(s) phi(1 - s) = 1.
        for s in [c(0.3, 4.0), c(0.8, -11.0), c(2.0, 1.0)] {
            for q in [1u64, 6] {
                let prod = phi_moonshine(q, s).unwrap() * phi_moonshine(q, 1.0 - s).unwrap();
                assert!((prod - 1.0).norm() < 1e-10, "q={q} s={s}");
            }
        }
    }

    #[test]
    fn pole_at_one() {
        assert!(matches!(
            phi_moonshine(5, c(1.0, 0.0)),
            Err(ScatteringError::Pole { .. })
        ));
    }
}
