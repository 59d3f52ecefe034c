use std::f64::consts::TAU;

use num_complex::Complex64;
use num_integer::Integer;

use super::{divisors, euler_phi, factorize};

/// A Dirichlet character modulo `modulus`.
///
/// Values are stored exactly: `exps[n mod m] = Some(e)` means
/// `chi(n) = exp(2 pi i e / order)`, and `None` marks `gcd(n, m) > 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DirichletCharacter {
    modulus: u64,
    order: u32,
    exps: Vec<Option<u32>>,
    conductor: u64,
}

impl DirichletCharacter {
    /// The principal character modulo `m`.
    pub fn principal(m: u64) -> Self {
        assert!(m >= 1, "modulus must be positive");
        let exps = (0..m).map(|n| (n.gcd(&m) == 1).then_some(0)).collect();
        Self::from_exponents(m, 1, exps)
    }

    fn from_exponents(modulus: u64, order: u32, exps: Vec<Option<u32>>) -> Self {
        // Reduce to the true order of the character.
        let g = exps.iter().flatten().fold(order, |g, &e| g.gcd(&e));
        let order = order / g;
        let exps: Vec<Option<u32>> = exps.into_iter().map(|e| e.map(|e| e / g)).collect();
        let mut chi = Self {
            modulus,
            order,
            exps,
            conductor: modulus,
        };
        chi.conductor = chi.compute_conductor();
        chi
    }

    /// Smallest `f | m` such that `chi` is trivial on units congruent to 1 mod `f`.
    fn compute_conductor(&self) -> u64 {
        let m = self.modulus;
        divisors(m)
            .into_iter()
            .find(|&f| {
                (1..m.max(2))
                    .step_by(f as usize)
                    .filter(|&a| a % m != 0 || m == 1)
                    .all(|a| matches!(self.exps[(a % m) as usize], Some(0) | None))
            })
            .unwrap_or(m)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Order of `chi` in the character group.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus
    }

    pub fn is_principal(&self) -> bool {
        self.order == 1
    }

    /// `chi(n)` as `Some((exponent, order))`, or `None` when `gcd(n, m) > 1`.
    pub fn exponent(&self, n: i64) -> Option<(u32, u32)> {
        let r = n.rem_euclid(self.modulus as i64) as usize;
        self.exps[r].map(|e| (e, self.order))
    }

    pub fn value(&self, n: i64) -> Complex64 {
        match self.exponent(n) {
            None => Complex64::new(0.0, 0.0),
            Some((0, _)) => Complex64::new(1.0, 0.0),
            Some((e, o)) => {
                // Exact values on the real axis and at quarter turns.
                match (4 * e as u64).checked_rem(o as u64) {
                    Some(0) => match 4 * e / o {
                        0 => Complex64::new(1.0, 0.0),
                        1 => Complex64::new(0.0, 1.0),
                        2 => Complex64::new(-1.0, 0.0),
                        _ => Complex64::new(0.0, -1.0),
                    },
                    _ => Complex64::from_polar(1.0, TAU * e as f64 / o as f64),
                }
            }
        }
    }

    pub fn conj(&self) -> Self {
        let o = self.order;
        let exps = self.exps.iter().map(|e| e.map(|e| (o - e) % o)).collect();
        Self::from_exponents(self.modulus, o, exps)
    }

    /// The character modulo a multiple `m` of the modulus induced by `chi`.
    pub fn lift(&self, m: u64) -> Self {
        assert!(
            m.is_multiple_of(self.modulus),
            "lift target must be a multiple of the modulus"
        );
        let exps = (0..m)
            .map(|n| {
                if n.gcd(&m) != 1 {
                    None
                } else {
                    self.exps[(n % self.modulus) as usize]
                }
            })
            .collect();
        Self::from_exponents(m, self.order, exps)
    }

    /// Pointwise product, as a character modulo `lcm` of the two moduli.
    pub fn mul(&self, other: &Self) -> Self {
        let m = self.modulus.lcm(&other.modulus);
        let (a, b) = (self.lift(m), other.lift(m));
        let o = a.order.lcm(&b.order);
        let (sa, sb) = (o / a.order, o / b.order);
        let exps = a
            .exps
            .iter()
            .zip(&b.exps)
            .map(|(x, y)| match (x, y) {
                (Some(x), Some(y)) => Some((x * sa + y * sb) % o),
                _ => None,
            })
            .collect();
        Self::from_exponents(m, o, exps)
    }
}

/// One cyclic factor of `(Z/m)^*`: a residue class generator modulo `p^k`
/// together with its discrete-log table on residues mod `p^k`.
struct CyclicFactor {
    prime_power: u64,
    order: u32,
    /// Discrete logarithm of each residue mod `prime_power` (None if not a unit
    /// or not in the subgroup decomposition slot of this factor).
    log: Vec<Option<u32>>,
}

fn cyclic_factors(m: u64) -> Vec<CyclicFactor> {
    let mut out = Vec::new();
    for (p, k) in factorize(m) {
        let pk = p.pow(k);
        if p == 2 && k >= 3 {
            // (Z/2^k)^* = <-1> x <5>.
            let half = 1u64 << (k - 2);
            let mut sign_log = vec![None; pk as usize];
            let mut five_log = vec![None; pk as usize];
            let mut x = 1u64;
            for e in 0..half {
                for (s, y) in [(0u32, x), (1, pk - x)] {
                    sign_log[y as usize] = Some(s);
                    five_log[y as usize] = Some(e as u32);
                }
                x = x * 5 % pk;
            }
            out.push(CyclicFactor {
                prime_power: pk,
                order: 2,
                log: sign_log,
            });
            out.push(CyclicFactor {
                prime_power: pk,
                order: half as u32,
                log: five_log,
            });
        } else if pk > 2 {
            let n = euler_phi(pk);
            let g = primitive_root(pk, n);
            let mut log = vec![None; pk as usize];
            let mut x = 1u64;
            for e in 0..n {
                log[x as usize] = Some(e as u32);
                x = x * g % pk;
            }
            out.push(CyclicFactor {
                prime_power: pk,
                order: n as u32,
                log,
            });
        }
    }
    out
}

fn primitive_root(pk: u64, n: u64) -> u64 {
    let prime_factors: Vec<u64> = factorize(n).into_iter().map(|(q, _)| q).collect();
    (2..pk)
        .find(|&g| g.gcd(&pk) == 1 && prime_factors.iter().all(|&q| pow_mod(g, n / q, pk) != 1))
        .expect("unit groups of odd prime powers and 4 are cyclic")
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// All `phi(m)` Dirichlet characters modulo `m`, the principal one first.
pub fn characters_mod(m: u64) -> Vec<DirichletCharacter> {
    assert!(m >= 1, "modulus must be positive");
    let factors = cyclic_factors(m);
    let exponent = factors.iter().fold(1u32, |l, f| l.lcm(&f.order));
    // Per residue, the vector of discrete logs in each factor.
    let logs: Vec<Option<Vec<u32>>> = (0..m)
        .map(|n| {
            if n.gcd(&m) != 1 {
                return None;
            }
            Some(
                factors
                    .iter()
                    .map(|f| f.log[(n % f.prime_power) as usize].expect("unit residue"))
                    .collect(),
            )
        })
        .collect();
    let total: u64 = factors.iter().map(|f| f.order as u64).product();
    let mut out = Vec::with_capacity(total as usize);
    for idx in 0..total {
        let mut rem = idx;
        let coeffs: Vec<u32> = factors
            .iter()
            .map(|f| {
                let c = (rem % f.order as u64) as u32;
                rem /= f.order as u64;
                c
            })
            .collect();
        let exps = logs
            .iter()
            .map(|l| {
                l.as_ref().map(|l| {
                    let s: u64 = l
                        .iter()
                        .zip(&coeffs)
                        .zip(&factors)
                        .map(|((&e, &c), f)| e as u64 * c as u64 * (exponent / f.order) as u64)
                        .sum();
                    (s % exponent as u64) as u32
                })
            })
            .collect();
        out.push(DirichletCharacter::from_exponents(m, exponent, exps));
    }
    out
}

pub fn primitive_characters_mod(m: u64) -> Vec<DirichletCharacter> {
    characters_mod(m).into_iter().filter(|c| c.is_primitive()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn examples() {
        let one = characters_mod(1);
        assert_eq!(one.len(), 1);
        assert!(one[0].is_principal() && one[0].is_primitive());

        let three = characters_mod(3);
        assert_eq!(three.len(), 2);
        let nontrivial: Vec<_> = three.iter().filter(|c| !c.is_principal()).collect();
        assert_eq!(nontrivial.len(), 1);
        assert_eq!(nontrivial[0].value(2), Complex64::new(-1.0, 0.0));

        let five = characters_mod(5);
        assert_eq!(five.len(), 4);
        assert_eq!(five.iter().filter(|c| c.order() == 2).count(), 1);
    }

    #[test]
    fn counts_and_primitive_counts() {
        for m in 1..=60u64 {
            let chars = characters_mod(m);
            assert_eq!(chars.len() as u64, euler_phi(m), "m={m}");
            // Distinct characters.
            for i in 0..chars.len() {
                for j in 0..i {
                    assert_ne!(chars[i], chars[j], "m={m}");
                }
            }
            // phi(m) = sum over f | m of the number of primitive characters mod f.
            let prim_total: usize = divisors(m).into_iter().map(|f| primitive_characters_mod(f).len()).sum();
            assert_eq!(prim_total as u64, euler_phi(m), "m={m}");
        }
        // No primitive characters modulo 2 mod 4 numbers above 2.
        assert!(primitive_characters_mod(6).is_empty());
        assert_eq!(primitive_characters_mod(4).len(), 1);
        assert_eq!(primitive_characters_mod(8).len(), 2);
    }

    #[test]
    fn multiplicative_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for m in [3u64, 4, 5, 8, 12, 15, 16, 21, 24, 35, 48, 60, 63] {
            for chi in characters_mod(m) {
                for _ in 0..50 {
                    let a: i64 = rng.gen_range(-500..500);
                    let b: i64 = rng.gen_range(-500..500);
                    assert!(close(chi.value(a * b), chi.value(a) * chi.value(b)), "m={m}");
                }
                assert_eq!(chi.value(0).norm(), if m == 1 { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn orthogonality() {
        for m in [1u64, 5, 8, 9, 12, 20, 24] {
            let chars = characters_mod(m);
            let phi = euler_phi(m) as f64;
            for a in 0..m as i64 {
                for b in 0..m as i64 {
                    if (a as u64).gcd(&m) != 1 || (b as u64).gcd(&m) != 1 {
                        continue;
                    }
                    let s: Complex64 = chars.iter().map(|c| c.value(a) * c.value(b).conj()).sum();
                    let expect = if a == b { phi } else { 0.0 };
                    assert!(close(s, Complex64::new(expect, 0.0)), "m={m} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn conductors() {
        // The character mod 12 induced from the one mod 3 has conductor 3.
        let chi3 = characters_mod(3).into_iter().find(|c| !c.is_principal()).unwrap();
        let lifted = chi3.lift(12);
        assert_eq!(lifted.conductor(), 3);
        assert!(!lifted.is_primitive());
        assert_eq!(DirichletCharacter::principal(7).conductor(), 1);
        let conj = chi3.conj();
        assert_eq!(conj, chi3);
        let sq = chi3.mul(&chi3);
        assert!(sq.is_principal());
        assert_eq!(sq.modulus(), 3);
    }
}
