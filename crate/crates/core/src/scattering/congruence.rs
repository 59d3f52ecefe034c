use num_bigint::BigUint;
use num_complex::Complex64;
use num_integer::Integer;

use super::ScatteringError;
use crate::arith::{divisors, primitive_characters_mod, DirichletCharacter};
use crate::lfunc::{dirichlet_l, dirichlet_l_regularized, log_gamma};
use crate::spectra::Family;

/// One factor of the L-function product: primitive characters `psi1` mod
/// `q1` and `psi2` mod `q2`, integers `m1`, `m2`, and the character
/// `psi = psi1 psi2 omega_{m1 m2}` whose L-functions enter the determinant.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterTuple {
    pub psi1: DirichletCharacter,
    pub psi2: DirichletCharacter,
    pub m1: u64,
    pub m2: u64,
    pub q1: u64,
    pub q2: u64,
    pub psi: DirichletCharacter,
}

impl CharacterTuple {
    fn new(psi1: DirichletCharacter, psi2: DirichletCharacter, m1: u64, m2: u64) -> Self {
        let (q1, q2) = (psi1.modulus(), psi2.modulus());
        let psi = psi1.mul(&psi2).mul(&DirichletCharacter::principal(m1 * m2));
        Self {
            psi1,
            psi2,
            m1,
            m2,
            q1,
            q2,
            psi,
        }
    }
}

/// All tuples `(psi1, psi2, m1, m2, q1, q2)` admitted for the family:
///
/// - `Gamma(q)`: `(m1, m2) = 1`, `m1 q1 | q`, `m2 q2 | q`;
/// - `Gamma_1(q)`: additionally `m1 = 1` and `q1 | m2`;
/// - `Gamma_0(q)`: additionally `q1 = q2` and `psi1 = psi2`.
///
/// The modular group is treated as `Gamma_0(1)`; other families have none.
pub fn character_tuples(family: Family, q: u64) -> Vec<CharacterTuple> {
    let mut out = Vec::new();
    match family {
        Family::Modular => return character_tuples(Family::Gamma0, 1),
        Family::Gamma0 => {
            for m2 in divisors(q) {
                for q1 in divisors(m2) {
                    if !(q / m2).is_multiple_of(q1) {
                        continue;
                    }
                    for psi1 in primitive_characters_mod(q1) {
                        out.push(CharacterTuple::new(psi1.clone(), psi1, 1, m2));
                    }
                }
            }
        }
        Family::Gamma1 => {
            for m2 in divisors(q) {
                for q1 in divisors(m2) {
                    for q2 in divisors(q / m2) {
                        for psi1 in primitive_characters_mod(q1) {
                            for psi2 in primitive_characters_mod(q2) {
                                out.push(CharacterTuple::new(psi1.clone(), psi2, 1, m2));
                            }
                        }
                    }
                }
            }
        }
        Family::GammaPrincipal => {
            for m1 in divisors(q) {
                for m2 in divisors(q) {
                    if m1.gcd(&m2) != 1 {
                        continue;
                    }
                    for q1 in divisors(q / m1) {
                        for q2 in divisors(q / m2) {
                            for psi1 in primitive_characters_mod(q1) {
                                for psi2 in primitive_characters_mod(q2) {
                                    out.push(CharacterTuple::new(psi1.clone(), psi2, m1, m2));
                                }
                            }
                        }
                    }
                }
            }
        }
        Family::MoonshinePlus | Family::Custom => {}
    }
    out
}

/// The integer `A` of the determinant:
/// `prod m1 m2 q1 q` for `Gamma(q)`, `prod q1 q` for `Gamma_1(q)`, and
/// `prod q1 q / (m2, q/m2)` for `Gamma_0(q)`.
pub fn compute_a(family: Family, q: u64, tuples: &[CharacterTuple]) -> BigUint {
    tuples.iter().fold(BigUint::from(1u32), |acc, t| {
        let factor = match family {
            Family::GammaPrincipal => BigUint::from(t.m1 * t.m2 * t.q1) * q,
            Family::Gamma1 => BigUint::from(t.q1) * q,
            _ => BigUint::from(t.q1 * q / t.m2.gcd(&(q / t.m2))),
        };
        acc * factor
    })
}

/// `(Gamma(1-s)/Gamma(s))^h (A / pi^h)^{1-2s} prod L(2-2s, conj psi) / L(2s, psi)`
/// without the global sign, with `log_a = log A`.
///
/// For principal `psi` the quotient is evaluated as
/// `-[(u-1) L(u)]_{u=2-2s} / [(u-1) L(u)]_{u=2s}`, which is regular at `s = 1/2`.
pub fn phi_congruence_raw(tuples: &[CharacterTuple], log_a: f64, s: Complex64) -> Result<Complex64, ScatteringError> {
    let h = tuples.len() as f64;
    let log_pi = std::f64::consts::PI.ln();
    let gamma_ratio = log_gamma(1.0 - s)? - log_gamma(s)?;
    let mut log_part = gamma_ratio * h + (1.0 - 2.0 * s) * (log_a - h * log_pi);
    let mut product = Complex64::new(1.0, 0.0);
    for t in tuples {
        let (num, den) = if t.psi.is_principal() {
            (
                -dirichlet_l_regularized(2.0 - 2.0 * s, &t.psi)?,
                dirichlet_l_regularized(2.0 * s, &t.psi)?,
            )
        } else {
            (
                dirichlet_l(2.0 - 2.0 * s, &t.psi.conj())?,
                dirichlet_l(2.0 * s, &t.psi)?,
            )
        };
        if den.norm() == 0.0 {
            return Err(ScatteringError::Pole {
                op: "phi_congruence",
                at: format!("{s} (zero of L(2s, psi) with psi mod {})", t.psi.modulus()),
            });
        }
        product *= num / den;
        // Keep the running product near unit scale.
        let scale = product.norm();
        if !(1e-100..=1e100).contains(&scale) {
            log_part += scale.ln();
            product /= scale;
        }
    }
    Ok(log_part.exp() * product)
}
