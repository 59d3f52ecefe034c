/// Relative width of the window used to decide that a real number is an
/// integer, e.g. `von_mangoldt_real(x, DEFAULT_SNAP_REL * x)`.
pub const DEFAULT_SNAP_REL: f64 = 1e-9;

pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

/// Prime factorization by trial division, primes in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut push = |p: u64, n: &mut u64| {
        let mut k = 0;
        while (*n).is_multiple_of(p) {
            *n /= p;
            k += 1;
        }
        if k > 0 {
            out.push((p, k));
        }
    };
    push(2, &mut n);
    push(3, &mut n);
    let mut p = 5u64;
    while p.saturating_mul(p) <= n {
        push(p, &mut n);
        push(p + 2, &mut n);
        p += 6;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    matches!(factorize(n).as_slice(), [(_, 1)])
}

pub fn is_squarefree(n: u64) -> bool {
    n >= 1 && factorize(n).iter().all(|&(_, k)| k == 1)
}

/// `Some((p, k))` when `n = p^k` with `p` prime and `k >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    match factorize(n).as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// All positive divisors in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, k) in factorize(n) {
        let len = divs.len();
        let mut pk = 1;
        for _ in 0..k {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}

pub fn von_mangoldt(n: u64) -> f64 {
    prime_power(n).map_or(0.0, |(p, _)| (p as f64).ln())
}

/// Von Mangoldt function on the reals: `x` is treated as the integer
/// `round(x)` when it lies within `eps` of it, and gives 0 otherwise.
pub fn von_mangoldt_real(x: f64, eps: f64) -> f64 {
    if !(x > 1.0) || !x.is_finite() {
        return 0.0;
    }
    let n = x.round();
    if (x - n).abs() > eps || n > u64::MAX as f64 {
        return 0.0;
    }
    von_mangoldt(n as u64)
}

/// Legendre symbol `(d/p)` for an odd prime `p`.
pub fn legendre(d: i64, p: u64) -> i8 {
    let p_i = p as i128;
    let a = (d as i128).rem_euclid(p_i) as u128;
    if a == 0 {
        return 0;
    }
    match pow_mod(a, (p as u128 - 1) / 2, p as u128) {
        1 => 1,
        _ => -1,
    }
}

fn pow_mod(mut base: u128, mut exp: u128, m: u128) -> u128 {
    let mut acc = 1u128 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// The character of conductor 8 attached to `Q(sqrt 2)`.
pub fn chi8(d: i64) -> i8 {
    match d.rem_euclid(8) {
        1 | 7 => 1,
        3 | 5 => -1,
        _ => 0,
    }
}

/// `(d/p)` for odd primes and `chi8(d)` for `p = 2`.
pub fn j_symbol(d: i64, p: u64) -> i8 {
    if p == 2 {
        chi8(d)
    } else {
        legendre(d, p)
    }
}

/// Distance from `sqrt(X) + 1/sqrt(X)` to the nearest integer. It vanishes
/// exactly when `X` is the norm of a hyperbolic element with integral trace.
pub fn kappa(x: f64) -> f64 {
    let r = x.sqrt();
    let tau = r + 1.0 / r;
    (tau - tau.round()).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    #[test]
    fn von_mangoldt_values() {
        assert_eq!(von_mangoldt(8), LN_2);
        assert_eq!(von_mangoldt(12), 0.0);
        assert_eq!(von_mangoldt(1), 0.0);
        assert_eq!(von_mangoldt(49), 7f64.ln());
    }

    #[test]
    fn von_mangoldt_snap_window() {
        assert_eq!(von_mangoldt_real(9.0000001, 1e-6), 3f64.ln());
        assert_eq!(von_mangoldt_real(7.5, 1e-6), 0.0);
        assert_eq!(von_mangoldt_real(4.0, 1e-6), LN_2);
        assert_eq!(von_mangoldt_real(6.0, 1e-6), 0.0);
    }

    #[test]
    fn chi8_table() {
        assert_eq!(chi8(7), 1);
        assert_eq!(chi8(3), -1);
        assert_eq!(chi8(6), 0);
        assert_eq!(chi8(-1), 1);
        assert_eq!(chi8(5), -1);
    }

    #[test]
    fn j_symbol_matches_exhaustive_squares() {
        fn by_squares(d: i64, p: u64) -> i8 {
            let a = d.rem_euclid(p as i64) as u64;
            if a == 0 {
                0
            } else if (1..p).any(|x| x * x % p == a) {
                1
            } else {
                -1
            }
        }
        assert_eq!(j_symbol(5, 11), 1);
        assert_eq!(j_symbol(2, 3), -1);
        assert_eq!(j_symbol(9, 3), 0);
        for p in [3u64, 5, 7, 11, 13, 29, 101] {
            for d in -60i64..60 {
                assert_eq!(j_symbol(d, p), by_squares(d, p), "d={d} p={p}");
            }
        }
    }

    #[test]
    fn kappa_examples() {
        let golden_sq = ((3.0 + 5f64.sqrt()) / 2.0).powi(2);
        assert!(kappa(golden_sq) < 1e-12);
        assert!((kappa(4.0) - 0.5).abs() < 1e-15);
        assert!((kappa(9.0) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn divisors_and_phi() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(euler_phi(36), 12);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(isqrt(99), 9);
        assert_eq!(isqrt(100), 10);
        assert!(is_squarefree(30));
        assert!(!is_squarefree(12));
        assert_eq!(prime_power(1), None);
    }
}
