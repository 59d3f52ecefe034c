use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::{isqrt, ArithError};

/// Fundamental solution of `t^2 - d u^2 = 4`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellSolution {
    pub d: u64,
    pub t: BigUint,
    pub u: BigUint,
}

impl PellSolution {
    /// Checks the defining equation in exact arithmetic.
    pub fn satisfies_equation(&self) -> bool {
        let lhs = BigInt::from(&self.t * &self.t) - BigInt::from(&self.u * &self.u * self.d);
        lhs == BigInt::from(4)
    }

    /// `log((t + u sqrt d) / 2)`, the regulator of the norm-one unit.
    pub fn log_unit(&self) -> f64 {
        // (t + u sqrt d)/2 = (t + sqrt(t^2 - 4))/2, so the log is acosh(t/2).
        let half = big_to_f64_log(&self.t);
        match half {
            Log::Exact(t) => (t / 2.0).acosh(),
            Log::Large(log_t) => log_t,
        }
    }
}

enum Log {
    Exact(f64),
    Large(f64),
}

fn big_to_f64_log(x: &BigUint) -> Log {
    let bits = x.bits();
    if bits < 1000 {
        let digits = x.to_u64_digits();
        let mut v = 0.0f64;
        for &dg in digits.iter().rev() {
            v = v * 18446744073709551616.0 + dg as f64;
        }
        Log::Exact(v)
    } else {
        // The correction between log t and acosh(t/2) is below 1/t^2, far
        // beneath double precision at this size.
        let shift = bits - 64;
        let top = (x >> shift).to_u64_digits()[0] as f64;
        Log::Large(top.ln() + shift as f64 * std::f64::consts::LN_2)
    }
}

/// Minimal positive solution of `t^2 - d u^2 = 4`.
///
/// For `d = 0 mod 4` this is `x^2 - (d/4) u^2 = 1` with `t = 2x`. Otherwise the
/// continued fraction of `sqrt d` yields the fundamental solution `(x, y)`
/// of `x^2 - d y^2 = 1`, which gives the candidate `(2x, 2y)`. When the
/// order of discriminant `d` has a unit `(t + u sqrt d)/2` with `t`, `u` odd,
/// its cube is `x + y sqrt d`; that case is detected from `t^3 - 3t = 2x`.
pub fn pell_fundamental(d: u64) -> Result<PellSolution, ArithError> {
    if d < 2 {
        return Err(ArithError::Domain {
            op: "pell_fundamental",
            msg: format!("d={d} must be at least 2"),
        });
    }
    let a0 = isqrt(d);
    if a0 * a0 == d {
        return Err(ArithError::Domain {
            op: "pell_fundamental",
            msg: format!("d={d} is a perfect square"),
        });
    }
    if d.is_multiple_of(4) {
        // t is even, and (t/2)^2 - (d/4) u^2 = 1.
        let (x, y) = pell_unit_equation(d / 4, isqrt(d / 4));
        return Ok(PellSolution { d, t: x << 1u32, u: y });
    }
    let (x, y) = pell_unit_equation(d, a0);

    let two_x: BigUint = &x << 1u32;
    let c = two_x.cbrt();
    for cand in [c.clone(), c + 1u32] {
        let lhs = &cand * &cand * &cand;
        let three_t = &cand * 3u32;
        if lhs < three_t || lhs - three_t != two_x {
            continue;
        }
        let t = cand;
        if t < BigUint::from(3u32) {
            continue;
        }
        let radicand: BigUint = &t * &t - 4u32;
        let dd = BigUint::from(d);
        if !(&radicand % &dd).is_zero() {
            continue;
        }
        let u_sq = radicand / dd;
        let u = u_sq.sqrt();
        if &u * &u == u_sq {
            return Ok(PellSolution { d, t, u });
        }
    }
    Ok(PellSolution {
        d,
        t: x << 1u32,
        u: y << 1u32,
    })
}

/// Fundamental solution of `x^2 - d y^2 = 1` from the continued fraction of
/// `sqrt d`.
fn pell_unit_equation(d: u64, a0: u64) -> (BigUint, BigUint) {
    let (mut m, mut den, mut a) = (0u64, 1u64, a0);
    let (mut p_prev, mut p) = (BigUint::one(), BigUint::from(a0));
    let (mut q_prev, mut q) = (BigUint::zero(), BigUint::one());
    let d_big = BigUint::from(d);
    loop {
        let pp = &p * &p;
        let dqq = &q * &q * &d_big;
        if pp > dqq && pp - dqq == BigUint::one() {
            return (p, q);
        }
        m = den * a - m;
        den = (d - m * m) / den;
        a = (a0 + m) / den;
        let p_next = &p * a + &p_prev;
        let q_next = &q * a + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
    }
}
