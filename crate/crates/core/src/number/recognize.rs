//! Exact recognition of quadratic elements of `Q(ζ_m)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use super::cyclo::CycloInt;
use super::predicates::{factorize, legendre, squarefree_part};
use super::quad::QuadInt;

/// The element of `Z[ζ_m]` equal to `√d` under the principal embedding
/// (positive real, or `i√|d|` for `d < 0`). `None` when `Q(√d)` is not a
/// subfield of `Q(ζ_m)`.
pub fn sqrt_element(d: i64, m: u64) -> Option<CycloInt> {
    if d == 0 || d == 1 {
        return None;
    }
    let mut odd_part: i64 = 1;
    let mut odd_primes = Vec::new();
    for (p, e) in factorize(&BigInt::from(d)) {
        if e != 1 {
            return None;
        }
        let p = p.to_i64()?;
        if p != 2 {
            odd_part *= p;
            odd_primes.push(p);
        }
    }
    let minus_three_mod_four = odd_primes.iter().filter(|&&p| p % 4 == 3).count();
    let starred = if minus_three_mod_four % 2 == 0 { odd_part } else { -odd_part };
    // d = starred · c with c ∈ {±1, ±2}
    let c = d / starred;
    let level: i64 = match c {
        1 => 1,
        -1 => 4,
        2 | -2 => 8,
        _ => unreachable!("squarefree d leaves a unit or ±2 cofactor"),
    };
    let conductor = (odd_part * level) as u64;
    if !m.is_multiple_of(conductor) {
        return None;
    }

    let mut root = CycloInt::one(m);
    for &p in &odd_primes {
        // quadratic Gauss sum: √p* = Σ (j/p) ζ_p^j
        let step = (m / p as u64) as usize;
        let mut counts = vec![0i64; m as usize];
        for j in 1..p {
            counts[j as usize * step] = legendre(&BigInt::from(j), p as u64) as i64;
        }
        root = &root * &CycloInt::from_exponent_counts(m, &counts);
    }
    let unit_root = match c {
        1 => CycloInt::one(m),
        -1 => CycloInt::zeta_pow(m, (m / 4) as i64),
        2 => CycloInt::zeta_pow(m, (m / 8) as i64) + CycloInt::zeta_pow(m, (7 * m / 8) as i64),
        _ => CycloInt::zeta_pow(m, (m / 8) as i64) + CycloInt::zeta_pow(m, (3 * m / 8) as i64),
    };
    root = &root * &unit_root;
    // The product equals √|d| · i^e; fix the sign to the principal branch.
    let e = minus_three_mod_four + usize::from(c < 0);
    if e % 4 >= 2 {
        root = -root;
    }
    Some(root)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recognition {
    Rational(BigInt),
    Quadratic(QuadInt),
    /// Degree over `Q` exceeds 2.
    Other,
}

/// Decides exactly whether `z` is rational, quadratic, or neither, using the
/// size of its Galois orbit.
pub fn recognize_quadratic(z: &CycloInt) -> Recognition {
    let orbit = z.galois_orbit();
    match orbit.len() {
        1 => Recognition::Rational(
            z.as_integer()
                .expect("a Galois-invariant element of Z[ζ_m] is a rational integer"),
        ),
        2 => {
            let other = if orbit[0] == *z { &orbit[1] } else { &orbit[0] };
            let m = z.modulus();
            let trace = (z + other).as_integer().expect("trace is rational");
            let diff = z - other;
            let disc = (&diff * &diff).as_integer().expect("(z - z')^2 is rational");
            let d = squarefree_part(&disc).to_i64().expect("field discriminant fits i64");
            let root = sqrt_element(d, m).expect("quadratic subfield of Q(ζ_m)");
            // diff = f·√d, so diff·√d = f·d
            let fd = (&diff * &root).as_integer().expect("diff·√d is rational");
            let f = BigRational::new(fd, BigInt::from(d));
            let two = BigRational::from_integer(2.into());
            let x = BigRational::from_integer(trace) / &two;
            let y = f / two;
            Recognition::Quadratic(QuadInt::new(d, x, y).expect("squarefree d"))
        }
        _ => Recognition::Other,
    }
}

impl QuadInt {
    /// The same number inside `Z[ζ_m]`, when it is an algebraic integer of a
    /// subfield of `Q(ζ_m)`.
    pub fn to_cyclo(&self, m: u64) -> Option<CycloInt> {
        if !self.is_integral() {
            return None;
        }
        let x = self.rational_part();
        let y = self.surd_part();
        let denom = num_integer::Integer::lcm(x.denom(), y.denom());
        let xs = (x * BigRational::from_integer(denom.clone())).to_integer();
        let ys = (y * BigRational::from_integer(denom.clone())).to_integer();
        let scaled = if ys.is_positive() || ys.is_negative() {
            let root = sqrt_element(self.d(), m)?;
            &CycloInt::from_integer(m, xs) + &root.scale(&ys)
        } else {
            CycloInt::from_integer(m, xs)
        };
        scaled.div_exact(&denom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: (f64, f64), b: (f64, f64)) -> bool {
        (a.0 - b.0).abs() < 1e-9 && (a.1 - b.1).abs() < 1e-9
    }

    #[test]
    fn principal_square_roots() {
        for (d, m) in [(-1, 4), (-2, 8), (2, 8), (-7, 7), (5, 5), (-3, 3), (-15, 15), (21, 84), (-21, 84), (-6, 24), (6, 24), (-5, 20), (10, 40)] {
            let r = sqrt_element(d, m).unwrap_or_else(|| panic!("no root for d={d}, m={m}"));
            assert_eq!(&r * &r, CycloInt::from_integer(m, d), "d={d}");
            let expected = if d < 0 {
                (0.0, (-d as f64).sqrt())
            } else {
                ((d as f64).sqrt(), 0.0)
            };
            assert!(close(r.to_complex(), expected), "d={d}, m={m}: {:?}", r.to_complex());
        }
        assert!(sqrt_element(-1, 6).is_none());
        assert!(sqrt_element(-7, 14).is_some());
        assert!(sqrt_element(2, 4).is_none());
    }

    #[test]
    fn recognize_two_i() {
        let z = CycloInt::zeta_pow(4, 1).scale(&BigInt::from(2));
        assert_eq!(
            recognize_quadratic(&z),
            Recognition::Quadratic(QuadInt::from_ints(-1, 0, 2).unwrap())
        );
    }

    #[test]
    fn recognize_gauss_period() {
        let z = CycloInt::zeta_pow(7, 1) + CycloInt::zeta_pow(7, 2) + CycloInt::zeta_pow(7, 4);
        let Recognition::Quadratic(q) = recognize_quadratic(&z) else {
            panic!("expected a quadratic value");
        };
        assert_eq!(q.d(), -7);
        assert_eq!(q.beta_coords(), (BigRational::from_integer(0.into()), BigRational::from_integer(1.into())));
        assert!(q.is_integral());
        // numerical cross-check
        let (re, im) = z.to_complex();
        assert!(close((re, im), q.to_complex()));
        assert!((re + 0.5).abs() < 1e-12 && (im - 7f64.sqrt() / 2.0).abs() < 1e-12);
        assert_eq!(q.to_cyclo(7).unwrap(), z);
    }

    #[test]
    fn recognize_rational_and_other() {
        assert_eq!(recognize_quadratic(&CycloInt::from_integer(12, -3)), Recognition::Rational(BigInt::from(-3)));
        assert_eq!(recognize_quadratic(&CycloInt::zeta_pow(5, 1)), Recognition::Other);
        let s = CycloInt::one(3) + CycloInt::zeta_pow(3, 1) + CycloInt::zeta_pow(3, 2);
        assert_eq!(recognize_quadratic(&s), Recognition::Rational(BigInt::from(0)));
    }

    #[test]
    fn to_cyclo_requires_integrality_and_subfield() {
        let half = QuadInt::new(-1, BigRational::new(1.into(), 2.into()), BigRational::from_integer(0.into())).unwrap();
        assert!(half.to_cyclo(4).is_none());
        assert!(QuadInt::parse("sqrt(-1)").unwrap().to_cyclo(6).is_none());
        assert_eq!(QuadInt::parse("1+sqrt(-1)").unwrap().to_cyclo(8).unwrap(), CycloInt::one(8) + CycloInt::zeta_pow(8, 2));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn cyclo(m: u64) -> impl Strategy<Value = CycloInt> {
            prop::collection::vec(-6i64..6, m as usize)
                .prop_map(move |c| CycloInt::from_exponent_counts(m, &c))
        }

        fn complex_mul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
            (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
        }

        fn near(a: (f64, f64), b: (f64, f64)) -> bool {
            let scale = 1.0 + a.0.abs().max(a.1.abs());
            (a.0 - b.0).abs() < 1e-9 * scale && (a.1 - b.1).abs() < 1e-9 * scale
        }

        fn pair() -> impl Strategy<Value = (CycloInt, CycloInt)> {
            (1u64..=40).prop_flat_map(|m| (cyclo(m), cyclo(m)))
        }

        proptest! {
            #[test]
            fn arithmetic_matches_complex_embedding((a, b) in pair()) {
                let (ca, cb) = (a.to_complex(), b.to_complex());
                let sum = (&a + &b).to_complex();
                prop_assert!(near(sum, (ca.0 + cb.0, ca.1 + cb.1)));
                let diff = (&a - &b).to_complex();
                prop_assert!(near(diff, (ca.0 - cb.0, ca.1 - cb.1)));
                let prod = (&a * &b).to_complex();
                prop_assert!(near(prod, complex_mul(ca, cb)));
            }

            #[test]
            fn galois_is_a_ring_automorphism((a, b) in pair(), t in 1i64..200) {
                let m = a.modulus();
                prop_assume!(num_integer::Integer::gcd(&(t as u64), &m) == 1);
                prop_assert_eq!(
                    (&a * &b).galois(t).unwrap(),
                    &a.galois(t).unwrap() * &b.galois(t).unwrap()
                );
                prop_assert_eq!(
                    (&a + &b).galois(t).unwrap(),
                    &a.galois(t).unwrap() + &b.galois(t).unwrap()
                );
                let (_, im) = a.norm_squared().to_complex();
                prop_assert!(im.abs() < 1e-9);
                // σ_t ∘ σ_u = σ_{tu}
                let u = m as i64 - 1;
                prop_assert_eq!(a.galois(t).unwrap().galois(u).unwrap(), a.galois(t * u).unwrap());
            }

            #[test]
            fn recognition_is_exact_and_consistent((a, _) in pair()) {
                let orbit = a.galois_orbit();
                match recognize_quadratic(&a) {
                    Recognition::Rational(r) => {
                        prop_assert_eq!(orbit.len(), 1);
                        prop_assert!(near(a.to_complex(), (r.to_f64().unwrap(), 0.0)));
                    }
                    Recognition::Quadratic(q) => {
                        prop_assert_eq!(orbit.len(), 2);
                        prop_assert!(near(a.to_complex(), q.to_complex()));
                        prop_assert_eq!(q.to_cyclo(a.modulus()).unwrap(), a);
                    }
                    Recognition::Other => prop_assert!(orbit.len() > 2),
                }
            }

            #[test]
            fn quadratic_sums_are_recognized(m in prop::sample::select(vec![3u64, 4, 7, 8, 11, 12, 15, 20, 24]), x in -9i64..9, y in -9i64..9) {
                // Gaussian periods give quadratic elements; combine them with integers.
                let candidates = [-1i64, -2, 2, -3, 5, -7, -11, -15, 3, 6, -6];
                for d in candidates {
                    if let Some(root) = sqrt_element(d, m) {
                        let z = &CycloInt::from_integer(m, x) + &root.scale(&BigInt::from(y));
                        let rec = recognize_quadratic(&z);
                        if y == 0 {
                            prop_assert_eq!(rec, Recognition::Rational(BigInt::from(x)));
                        } else {
                            prop_assert_eq!(rec, Recognition::Quadratic(QuadInt::from_ints(d, x, y).unwrap()));
                        }
                    }
                }
            }
        }
    }
}
