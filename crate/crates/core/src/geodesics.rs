//! Prime-geodesic norms from integer traces.
//!
//! A hyperbolic element of `PSL_2(Z)` with trace `t >= 3` has norm
//! `N = lambda^2`, `lambda = (t + sqrt(t^2 - 4)) / 2`. Powers are detected in
//! integer arithmetic through the trace recurrence
//! `tr(g^{k+1}) = tr(g) tr(g^k) - tr(g^{k-1})`.

use thiserror::Error;

use crate::arith::{class_number, hecke_class_number, kappa, ArithError};
use crate::spectra::{Family, SurfaceDescriptor};

/// Default relative tolerance for [`lambda_gamma`].
pub const DEFAULT_LAMBDA_EPS: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum GeodesicError {
    #[error("{op}: trace of a hyperbolic conjugacy class must be a natural number t >= 3, got {t}")]
    Trace { op: &'static str, t: u64 },
    #[error("{op}: unsupported surface family {family}")]
    UnsupportedSurface { op: &'static str, family: Family },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

fn check_trace(op: &'static str, t: u64) -> Result<(), GeodesicError> {
    if t < 3 {
        return Err(GeodesicError::Trace { op, t });
    }
    Ok(())
}

/// `((t + sqrt(t^2 - 4)) / 2)^2`.
pub fn norm_from_trace(t: u64) -> Result<f64, GeodesicError> {
    check_trace("norm_from_trace", t)?;
    let tf = t as f64;
    let radicand = (t as u128 * t as u128 - 4) as f64;
    let lambda = 0.5 * (tf + radicand.sqrt());
    Ok(lambda * lambda)
}

/// Traces of the powers `g, g^2, ...` of an element of trace `t0`, while
/// they stay `<= limit`.
fn power_traces(t0: u64, limit: u64) -> impl Iterator<Item = (u32, u64)> {
    let (mut prev, mut cur) = (2u128, t0 as u128);
    let mut j = 1u32;
    std::iter::from_fn(move || {
        if cur > limit as u128 {
            return None;
        }
        let out = (j, cur as u64);
        let next = t0 as u128 * cur - prev;
        prev = cur;
        cur = next;
        j += 1;
        Some(out)
    })
}

/// The trace of `g^j` for `g` of trace `t0`, or `None` on overflow.
pub fn trace_of_power(t0: u64, j: u32) -> Option<u64> {
    let (mut prev, mut cur) = (2u128, t0 as u128);
    for _ in 1..j {
        let next = (t0 as u128).checked_mul(cur)? - prev;
        prev = cur;
        cur = next;
    }
    u64::try_from(cur).ok()
}

/// Maximal `j` and trace `t0` with `lambda(t0)^j = lambda(t)`.
pub fn primitive_decomposition(t: u64) -> Result<(u64, u32), GeodesicError> {
    check_trace("primitive_decomposition", t)?;
    for t0 in 3..t {
        // trace(g^2) = t0^2 - 2 is the smallest proper power trace.
        if (t0 as u128).pow(2) - 2 > t as u128 {
            break;
        }
        if let Some((j, _)) = power_traces(t0, t).find(|&(j, tr)| j >= 2 && tr == t) {
            return Ok((t0, j));
        }
    }
    Ok((t, 1))
}

/// Whether some element of the group attached to `surface` has trace `±t`.
///
/// Moonshine surfaces are treated through their subgroup `Gamma_0(q)`, which
/// carries all of their integral traces. Custom surfaces have no known traces.
pub fn trace_occurs(surface: &SurfaceDescriptor, t: u64) -> bool {
    let q = surface.level;
    let ti = t as i128;
    match surface.family {
        Family::Modular => true,
        Family::Gamma0 | Family::MoonshinePlus => {
            // Need a, d with a + d = t and ad = 1 mod q.
            let qi = q as i128;
            (0..qi).any(|a| (a * (ti - a) - 1).rem_euclid(qi) == 0)
        }
        Family::Gamma1 => {
            let qi = q as i128;
            (ti - 2).rem_euclid(qi) == 0 || (ti + 2).rem_euclid(qi) == 0
        }
        Family::GammaPrincipal => {
            let q2 = (q as i128) * (q as i128);
            (ti - 2).rem_euclid(q2) == 0 || (ti + 2).rem_euclid(q2) == 0
        }
        Family::Custom => false,
    }
}

/// Primitive decomposition relative to the group of `surface`: among the
/// powers `lambda(t0)^k` with `k | j`, the smallest one whose trace occurs.
/// Returns `None` when the trace `t` itself does not occur.
pub fn primitive_in_surface(surface: &SurfaceDescriptor, t: u64) -> Result<Option<(u64, u32)>, GeodesicError> {
    let (t0, j) = primitive_decomposition(t)?;
    if surface.family == Family::Modular || (surface.level == 1 && surface.family != Family::Custom) {
        return Ok(Some((t0, j)));
    }
    if !trace_occurs(surface, t) {
        return Ok(None);
    }
    for k in 1..=j {
        if j % k != 0 {
            continue;
        }
        let tk = trace_of_power(t0, k).expect("power trace is bounded by t");
        if trace_occurs(surface, tk) {
            return Ok(Some((tk, j / k)));
        }
    }
    Ok(Some((t, 1)))
}

/// A hyperbolic conjugacy-class norm together with its decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicNorm {
    pub trace: u64,
    pub norm: f64,
    pub discriminant: u64,
    pub primitive_trace: u64,
    pub power: u32,
    pub multiplicity: u64,
}

impl GeodesicNorm {
    pub fn is_primitive(&self) -> bool {
        self.power == 1
    }

    pub fn log_primitive_norm(&self) -> f64 {
        norm_from_trace(self.primitive_trace)
            .expect("primitive trace is at least 3")
            .ln()
    }
}

/// All norms up to `x_max` for the modular group or `Gamma_0(q)`, sorted.
///
/// Multiplicities are `h(t^2 - 4)` for the modular group. For `Gamma_0(q)`
/// only traces occurring in the group are listed, with multiplicity
/// `h((t^2 - 4) q^2)` from the class-number relation; these are experimental.
pub fn enumerate_norms(surface: &SurfaceDescriptor, x_max: f64) -> Result<Vec<GeodesicNorm>, GeodesicError> {
    const OP: &str = "enumerate_norms";
    if !matches!(surface.family, Family::Modular | Family::Gamma0) {
        return Err(GeodesicError::UnsupportedSurface {
            op: OP,
            family: surface.family,
        });
    }
    let mut out = Vec::new();
    let mut t = 3u64;
    loop {
        let norm = norm_from_trace(t)?;
        if norm > x_max {
            break;
        }
        let discriminant = t * t - 4;
        let entry = if surface.family == Family::Modular || surface.level == 1 {
            let (t0, j) = primitive_decomposition(t)?;
            Some((t0, j, class_number(discriminant)?))
        } else {
            match primitive_in_surface(surface, t)? {
                Some((t0, j)) => Some((t0, j, hecke_class_number(discriminant, surface.level)?)),
                None => None,
            }
        };
        if let Some((primitive_trace, power, multiplicity)) = entry {
            out.push(GeodesicNorm {
                trace: t,
                norm,
                discriminant,
                primitive_trace,
                power,
                multiplicity,
            });
        }
        t += 1;
    }
    Ok(out)
}

/// The geometric von Mangoldt function: `log N(P0)` when `X` is (within the
/// relative tolerance `eps`) the norm of a power of the primitive class
/// `P0`, and 0 otherwise.
pub fn lambda_gamma(surface: &SurfaceDescriptor, x: f64, eps: f64) -> f64 {
    match norm_trace_of(x, eps) {
        None => 0.0,
        Some(t) => match primitive_in_surface(surface, t) {
            Ok(Some((t0, _))) => norm_from_trace(t0).map_or(0.0, f64::ln),
            _ => 0.0,
        },
    }
}

/// The trace `t >= 3` with `sqrt(X) + 1/sqrt(X)` within `eps sqrt(X)` of `t`.
pub fn norm_trace_of(x: f64, eps: f64) -> Option<u64> {
    if !(x > 1.0) || !x.is_finite() {
        return None;
    }
    let r = x.sqrt();
    if kappa(x) > eps * r {
        return None;
    }
    let t = (r + 1.0 / r).round();
    (t >= 3.0 && t < u64::MAX as f64).then_some(t as u64)
}
