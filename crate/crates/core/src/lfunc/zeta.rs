use num_complex::Complex64;

use std::f64::consts::{FRAC_PI_2, LN_2, PI};

use super::{log_gamma, LfuncError, MAX_IMAG};

/// `B_{2k} / (2k)!` for `k = 1..=14`.
const BERNOULLI_OVER_FACTORIAL: [f64; 14] = [
    0.08333333333333333,
    -0.001388888888888889,
    3.306878306878307e-05,
    -8.267195767195768e-07,
    2.08767569878681e-08,
    -5.284190138687493e-10,
    1.3382536530684679e-11,
    -3.3896802963225827e-13,
    8.586062056277845e-15,
    -2.174868698558062e-16,
    5.5090028283602295e-18,
    -1.3954464685812522e-19,
    3.534707039629467e-21,
    -8.953517427037546e-23,
];

/// Lowest real part accepted; below it the Euler–Maclaurin tail grows.
const MIN_RE: f64 = -20.0;

fn check(op: &'static str, s: Complex64, a: f64) -> Result<(), LfuncError> {
    let out = |msg| {
        Err(LfuncError::OutOfRange {
            op,
            re: s.re,
            im: s.im,
            msg,
        })
    };
    if !s.re.is_finite() || !s.im.is_finite() {
        return out("non-finite argument");
    }
    if s.im.abs() > MAX_IMAG {
        return out("|im s| above 1e4");
    }
    if s.re < MIN_RE {
        return out("re s below -20");
    }
    if !(a > 0.0 && a.is_finite()) {
        return out("Hurwitz shift must be positive");
    }
    Ok(())
}

/// The pieces of the Euler–Maclaurin formula for `zeta(s, a)`:
/// `zeta(s, a) = head + w^{1-s} / (s - 1)` with `w = N + a`.
struct EulerMaclaurin {
    head: Complex64,
    log_w: f64,
}

fn euler_maclaurin(s: Complex64, a: f64) -> EulerMaclaurin {
    // Successive correction terms shrink by about (|s| + 2k)^2 / (2 pi w)^2,
    // so w ~ 5 |s| / (2 pi) keeps 14 terms well below 1e-15 relative.
    let n = (s.norm() / (2.0 * std::f64::consts::PI * 0.2)).ceil() as usize + 15;
    let mut head = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0);
    for k in (0..n).rev() {
        let term = (-s * (k as f64 + a).ln()).exp();
        // Neumaier summation, smallest terms first.
        let t = head + term;
        comp += if head.norm_sqr() >= term.norm_sqr() {
            (head - t) + term
        } else {
            (term - t) + head
        };
        head = t;
    }
    head += comp;
    let w = n as f64 + a;
    let log_w = w.ln();
    let w_pow = (-s * log_w).exp();
    head += w_pow * 0.5;
    // sum_k B_2k/(2k)! * s (s+1) ... (s+2k-2) * w^{-s-2k+1}
    let inv_w = 1.0 / w;
    let mut rising = s;
    let mut w_factor = w_pow * inv_w;
    for (k, &b) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        head += rising * w_factor * b;
        let k2 = 2.0 * (k as f64 + 1.0);
        rising *= (s + k2 - 1.0) * (s + k2);
        w_factor *= inv_w * inv_w;
    }
    EulerMaclaurin { head, log_w }
}

/// `(e^z - 1) / z`, accurate near `z = 0`.
fn expm1_over(z: Complex64) -> Complex64 {
    if z.norm() < 1e-4 {
        return 1.0 + z * (0.5 + z * (1.0 / 6.0 + z / 24.0));
    }
    let (x, y) = (z.re, z.im);
    let half = (0.5 * y).sin();
    let e = Complex64::new(x.exp_m1() * y.cos() - 2.0 * half * half, x.exp() * y.sin());
    e / z
}

/// Hurwitz zeta `zeta(s, a) = sum_{n >= 0} (n + a)^{-s}`.
pub fn hurwitz_zeta(s: Complex64, a: f64) -> Result<Complex64, LfuncError> {
    check("hurwitz_zeta", s, a)?;
    if s == Complex64::new(1.0, 0.0) {
        return Err(LfuncError::Pole {
            op: "hurwitz_zeta",
            at: "1".into(),
        });
    }
    let em = euler_maclaurin(s, a);
    Ok(em.head + ((1.0 - s) * em.log_w).exp() / (s - 1.0))
}

/// `(s - 1) zeta(s, a)`, entire in `s`; equals 1 at `s = 1`.
pub fn hurwitz_zeta_regularized(s: Complex64, a: f64) -> Result<Complex64, LfuncError> {
    check("hurwitz_zeta_regularized", s, a)?;
    let em = euler_maclaurin(s, a);
    Ok((s - 1.0) * em.head + ((1.0 - s) * em.log_w).exp())
}

/// `zeta(s, a) - 1/(s - 1)`, the finite part at the pole; entire in `s`.
pub(crate) fn hurwitz_zeta_finite_part(s: Complex64, a: f64) -> Result<Complex64, LfuncError> {
    check("hurwitz_zeta", s, a)?;
    let em = euler_maclaurin(s, a);
    // (w^{1-s} - 1) / (s - 1) = -log w * expm1((1-s) log w) / ((1-s) log w)
    let z = (1.0 - s) * em.log_w;
    Ok(em.head - em.log_w * expm1_over(z))
}

/// Riemann zeta: Euler–Maclaurin summation for `re s >= 0` and the
/// functional equation `zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s)`
/// for `re s < 0`, where direct summation would cancel catastrophically.
/// Supported region: `re s >= -20`, `|im s| <= 1e4`.
pub fn riemann_zeta(s: Complex64) -> Result<Complex64, LfuncError> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(LfuncError::Pole {
            op: "riemann_zeta",
            at: "1".into(),
        });
    }
    check("riemann_zeta", s, 1.0)?;
    if s.re < 0.0 {
        return reflected(s);
    }
    hurwitz_zeta(s, 1.0).map_err(|e| rename(e, "riemann_zeta"))
}

fn reflected(s: Complex64) -> Result<Complex64, LfuncError> {
    let one_minus = 1.0 - s;
    let z1 = hurwitz_zeta(one_minus, 1.0).map_err(|e| rename(e, "riemann_zeta"))?;
    let log_gamma = log_gamma(one_minus).map_err(|e| rename(e, "riemann_zeta"))?;
    let log_factor = s * LN_2 + (s - 1.0) * PI.ln() + log_sin(0.5 * PI * s) + log_gamma;
    Ok(log_factor.exp() * z1)
}

/// A logarithm of `sin z` that stays finite for large `|im z|`.
fn log_sin(z: Complex64) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    if z.im.abs() < 20.0 {
        return z.sin().ln();
    }
    // sin z = (e^{iz} - e^{-iz}) / 2i; keep the dominant exponential outside.
    if z.im > 0.0 {
        -i * z - LN_2 + i * FRAC_PI_2 + (1.0 - (2.0 * i * z).exp()).ln()
    } else {
        i * z - LN_2 - i * FRAC_PI_2 + (1.0 - (-2.0 * i * z).exp()).ln()
    }
}

/// `(s - 1) zeta(s)`, regular at `s = 1` where it equals 1.
pub fn riemann_zeta_regularized(s: Complex64) -> Result<Complex64, LfuncError> {
    check("riemann_zeta_regularized", s, 1.0)?;
    if s.re < 0.0 {
        return reflected(s).map(|z| (s - 1.0) * z);
    }
    hurwitz_zeta_regularized(s, 1.0).map_err(|e| rename(e, "riemann_zeta_regularized"))
}

fn rename(e: LfuncError, op: &'static str) -> LfuncError {
    match e {
        LfuncError::Pole { at, .. } => LfuncError::Pole { op, at },
        LfuncError::OutOfRange { re, im, msg, .. } => LfuncError::OutOfRange { op, re, im, msg },
    }
}
