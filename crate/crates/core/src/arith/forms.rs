use std::collections::HashMap;

use num_integer::Integer;

use super::{divisors, factorize, isqrt, j_symbol, pell_fundamental, ArithError};

/// Integral binary quadratic form `a x^2 + b xy + c y^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadForm {
    pub fn discriminant(&self) -> i128 {
        let (a, b, c) = (self.a as i128, self.b as i128, self.c as i128);
        b * b - 4 * a * c
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c) == 1
    }

    /// Gauss reduction for indefinite forms: `0 < b < sqrt D` and
    /// `sqrt D - b < 2|a| < sqrt D + b`.
    pub fn is_reduced(&self) -> bool {
        let d = self.discriminant();
        let (b, two_a) = (self.b as i128, 2 * (self.a as i128).abs());
        b > 0 && b * b < d && (two_a + b).pow(2) > d && (two_a - b < 0 || (two_a - b).pow(2) < d)
    }

    /// One step of the reduction operator: `(a, b, c) -> (c, b', a')` with
    /// `b' = -b mod 2|c|` chosen in `(sqrt D - 2|c|, sqrt D)`. It permutes the
    /// reduced forms of a discriminant, and its cycles are the proper
    /// equivalence classes.
    pub fn rho(&self) -> QuadForm {
        let d = self.discriminant();
        let r = isqrt(d as u64) as i128;
        let c = self.c as i128;
        let b_new = r - (r + self.b as i128).rem_euclid(2 * c.abs());
        let a_new = (b_new * b_new - d) / (4 * c);
        QuadForm {
            a: self.c,
            b: b_new as i64,
            c: a_new as i64,
        }
    }
}

fn check_discriminant(op: &'static str, d: u64) -> Result<(), ArithError> {
    let bad = |msg: String| Err(ArithError::Domain { op, msg });
    if d < 5 {
        return bad(format!("discriminant {d} must be a positive non-square >= 5"));
    }
    if !d.is_multiple_of(4) && d % 4 != 1 {
        return bad(format!("discriminant {d} is not 0 or 1 mod 4"));
    }
    if isqrt(d).pow(2) == d {
        return bad(format!("discriminant {d} is a perfect square"));
    }
    Ok(())
}

/// All reduced primitive forms of discriminant `d`, sorted.
pub fn reduced_forms(d: u64) -> Result<Vec<QuadForm>, ArithError> {
    check_discriminant("reduced_forms", d)?;
    let r = isqrt(d);
    let mut out = Vec::new();
    let mut b = if d.is_multiple_of(2) { 2 } else { 1 };
    while b <= r {
        let n = (d - b * b) / 4;
        for a in divisors(n) {
            let c = (n / a) as i64;
            for (a, c) in [(a as i64, -c), (-(a as i64), c)] {
                let f = QuadForm { a, b: b as i64, c };
                if f.is_reduced() && f.is_primitive() {
                    out.push(f);
                }
            }
        }
        b += 2;
    }
    out.sort_unstable();
    Ok(out)
}

/// Number of proper (`SL_2(Z)`) equivalence classes of primitive forms of
/// discriminant `d`, counted as cycles of reduced forms under [`QuadForm::rho`].
///
/// This is the class number in the narrow sense; it is also the number of
/// conjugacy classes of primitive hyperbolic elements of `PSL_2(Z)` attached
/// to the order of discriminant `d`.
pub fn class_number(d: u64) -> Result<u64, ArithError> {
    let forms = reduced_forms(d)?;
    let index: HashMap<QuadForm, usize> = forms.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let mut seen = vec![false; forms.len()];
    let mut cycles = 0;
    for start in 0..forms.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = index[&forms[i].rho()];
        }
    }
    Ok(cycles)
}

/// Class number of discriminant `d q^2` from that of `d`:
///
/// `h(dq^2) = log(eps_d) / log(eps_{dq^2}) * q * h(d) * prod_{p | q} (1 - j(d,p)/p)`
///
/// with `eps` the norm-one units given by the fundamental Pell solutions of
/// `t^2 - d u^2 = 4` and `t^2 - dq^2 u^2 = 4`. The value is checked to be
/// integral to within `1e-9`.
pub fn hecke_class_number(d: u64, q: u64) -> Result<u64, ArithError> {
    const OP: &str = "hecke_class_number";
    check_discriminant(OP, d)?;
    if q == 0 {
        return Err(ArithError::Domain {
            op: OP,
            msg: "level q must be positive".into(),
        });
    }
    let h_d = class_number(d)?;
    if q == 1 {
        return Ok(h_d);
    }
    let dq2 = d.checked_mul(q * q).ok_or_else(|| ArithError::Domain {
        op: OP,
        msg: format!("d q^2 overflows for d={d}, q={q}"),
    })?;
    let eps_d = pell_fundamental(d)?;
    let eps_dq2 = pell_fundamental(dq2)?;
    let unit_ratio = eps_d.log_unit() / eps_dq2.log_unit();

    let mut num = (q as i128) * h_d as i128;
    let mut den = 1i128;
    for (p, _) in factorize(q) {
        num *= p as i128 - j_symbol(d as i64, p) as i128;
        den *= p as i128;
    }
    let value = unit_ratio * num as f64 / den as f64;
    let nearest = value.round();
    let tol = 1e-9;
    if (value - nearest).abs() > tol || nearest < 1.0 {
        return Err(ArithError::Consistency {
            op: OP,
            value,
            tol,
            detail: format!("d={d}, q={q}, h(d)={h_d}, unit ratio={unit_ratio}"),
        });
    }
    Ok(nearest as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{BTreeSet, HashMap};

    /// Independent oracle: union-find over all primitive forms with
    /// coefficients bounded by `bound`, joined by the generators
    /// `S: (a,b,c) -> (c,-b,a)` and `T: (a,b,c) -> (a, b+2a, a+b+c)`.
    /// Counts the components that contain a Gauss-reduced form.
    fn orbit_count(d: i64, bound: i64) -> usize {
        let mut forms = Vec::new();
        for a in -bound..=bound {
            if a == 0 {
                continue;
            }
            for b in -bound..=bound {
                let num = b * b - d;
                if num % (4 * a) != 0 {
                    continue;
                }
                let c = num / (4 * a);
                let f = QuadForm { a, b, c };
                if c.abs() <= bound && f.is_primitive() {
                    forms.push(f);
                }
            }
        }
        let idx: HashMap<QuadForm, usize> = forms.iter().enumerate().map(|(i, f)| (*f, i)).collect();
        let mut parent: Vec<usize> = (0..forms.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (i, f) in forms.iter().enumerate() {
            let s = QuadForm {
                a: f.c,
                b: -f.b,
                c: f.a,
            };
            let t = QuadForm {
                a: f.a,
                b: f.b + 2 * f.a,
                c: f.a + f.b + f.c,
            };
            for g in [s, t] {
                if let Some(&j) = idx.get(&g) {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    parent[ri] = rj;
                }
            }
        }
        let mut roots = BTreeSet::new();
        for (i, f) in forms.iter().enumerate() {
            if f.is_reduced() {
                roots.insert(find(&mut parent, i));
            }
        }
        roots.len()
    }

    #[test]
    fn small_class_numbers() {
        assert_eq!(class_number(5).unwrap(), 1);
        assert_eq!(class_number(8).unwrap(), 1);
        assert_eq!(class_number(40).unwrap(), 2);
        // Z[sqrt 3] has no unit of norm -1, so the proper classes split.
        assert_eq!(class_number(12).unwrap(), 2);
        assert_eq!(class_number(229).unwrap(), 3);
    }

    #[test]
    fn malformed_discriminants() {
        assert!(class_number(7).is_err());
        assert!(class_number(16).is_err());
        assert!(class_number(0).is_err());
    }

    #[test]
    fn rho_permutes_reduced_forms() {
        for d in [5u64, 12, 13, 40, 60, 145, 316] {
            let forms = reduced_forms(d).unwrap();
            let images: BTreeSet<_> = forms.iter().map(|f| f.rho()).collect();
            assert_eq!(images, forms.iter().copied().collect(), "d={d}");
        }
    }

    #[test]
    fn cycles_match_orbit_oracle_up_to_200() {
        for d in 5..=200i64 {
            if d % 4 > 1 || isqrt(d as u64).pow(2) == d as u64 {
                continue;
            }
            let h = class_number(d as u64).unwrap() as usize;
            assert_eq!(h, orbit_count(d, 3 * d), "D={d}");
        }
    }

    #[test]
    fn hecke_relation_examples() {
        assert_eq!(hecke_class_number(5, 1).unwrap(), class_number(5).unwrap());
        assert_eq!(hecke_class_number(5, 2).unwrap(), class_number(20).unwrap());
        assert_eq!(hecke_class_number(8, 3).unwrap(), class_number(72).unwrap());
        assert_eq!(hecke_class_number(5, 3).unwrap(), 2);
    }

    #[test]
    fn hecke_relation_up_to_2000() {
        for d in 5..=2000u64 {
            if check_discriminant("t", d).is_err() {
                continue;
            }
            for q in 1..=45u64 {
                let dq2 = d * q * q;
                if dq2 > 2000 {
                    break;
                }
                assert_eq!(
                    hecke_class_number(d, q).unwrap(),
                    class_number(dq2).unwrap(),
                    "d={d} q={q}"
                );
            }
        }
    }
}
