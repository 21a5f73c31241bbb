//! Elements of imaginary and real quadratic fields `Q(√d)`.
//!
//! Values are kept as `x + y·√d` with rational `x, y`; the ring of integers
//! is `Z[1, β]` with `β = √d` for `d ≡ 2, 3 (mod 4)` and `β = (−1 + √d)/2`
//! for `d ≡ 1 (mod 4)`, and [`QuadInt::beta_coords`] exposes that basis.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::predicates::{factorize, squarefree_part};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadInt {
    d: i64,
    rational: BigRational,
    surd: BigRational,
}

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

fn is_squarefree(d: i64) -> bool {
    factorize(&BigInt::from(d)).iter().all(|(_, e)| *e == 1)
}

impl QuadInt {
    /// `x + y·√d`; `d` must be squarefree and different from 0 and 1.
    pub fn new(d: i64, x: BigRational, y: BigRational) -> Result<Self> {
        if d == 0 || d == 1 || !is_squarefree(d) {
            return Err(Error::MalformedParameters(format!(
                "quadratic parameter d = {d} must be squarefree and not 0 or 1"
            )));
        }
        Ok(QuadInt { d, rational: x, surd: y })
    }

    pub fn from_ints(d: i64, x: impl Into<BigInt>, y: impl Into<BigInt>) -> Result<Self> {
        Self::new(d, rat(x), rat(y))
    }

    /// A rational number viewed inside `Q(√d)`.
    pub fn rational(d: i64, x: BigRational) -> Result<Self> {
        Self::new(d, x, BigRational::zero())
    }

    /// `e + f·β` in the integral basis.
    pub fn from_beta(d: i64, e: BigRational, f: BigRational) -> Result<Self> {
        if d.rem_euclid(4) == 1 {
            let half = &f / rat(2);
            Self::new(d, e - &half, half)
        } else {
            Self::new(d, e, f)
        }
    }

    /// Parses `e+f*sqrt(d)` (also `f*sqrt(d)`, `-sqrt(d)`, `e-f*sqrt(d)`).
    /// A non-squarefree radicand is normalized: `sqrt(-8)` becomes
    /// `2*sqrt(-2)`.
    pub fn parse(text: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("expected e+f*sqrt(d), got {text:?}"));
        let open = s.find("sqrt(").ok_or_else(bad)?;
        let close = s[open..].find(')').map(|i| i + open).ok_or_else(bad)?;
        if close + 1 != s.len() {
            return Err(bad());
        }
        let radicand: BigInt = s[open + 5..close].parse().map_err(|_| bad())?;
        let prefix = s[..open].strip_suffix('*').unwrap_or(&s[..open]);
        let split = prefix
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .map(|(i, _)| i)
            .last();
        let (e_text, f_text) = match split {
            Some(i) => (&prefix[..i], &prefix[i..]),
            None => ("", prefix),
        };
        let e: BigInt = if e_text.is_empty() {
            BigInt::zero()
        } else {
            e_text.parse().map_err(|_| bad())?
        };
        let f: BigInt = match f_text {
            "" | "+" => BigInt::one(),
            "-" => -BigInt::one(),
            t => t.trim_start_matches('+').parse().map_err(|_| bad())?,
        };
        if radicand.is_zero() {
            return Err(bad());
        }
        let d = squarefree_part(&radicand);
        let square = &radicand / &d;
        let root = num_integer::Roots::sqrt(&square);
        let d = d.to_i64().ok_or_else(bad)?;
        Self::new(d, rat(e), rat(f * root))
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// `x` in `x + y·√d`.
    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    /// `y` in `x + y·√d`.
    pub fn surd_part(&self) -> &BigRational {
        &self.surd
    }

    /// Coordinates `(e, f)` with respect to the integral basis `1, β`.
    pub fn beta_coords(&self) -> (BigRational, BigRational) {
        if self.d.rem_euclid(4) == 1 {
            (&self.rational + &self.surd, &self.surd * rat(2))
        } else {
            (self.rational.clone(), self.surd.clone())
        }
    }

    /// Membership in the ring of integers `Z[1, β]`.
    pub fn is_integral(&self) -> bool {
        let (e, f) = self.beta_coords();
        e.is_integer() && f.is_integer()
    }

    pub fn is_rational(&self) -> bool {
        self.surd.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.surd.is_zero()
    }

    /// The integer value, if this is a rational integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        (self.is_rational() && self.rational.is_integer()).then(|| self.rational.to_integer())
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.rational.clone())
    }

    /// The Galois conjugate `x − y·√d` (complex conjugation when `d < 0`).
    pub fn conj(&self) -> Self {
        QuadInt {
            d: self.d,
            rational: self.rational.clone(),
            surd: -&self.surd,
        }
    }

    pub fn norm(&self) -> BigRational {
        &self.rational * &self.rational - rat(self.d) * &self.surd * &self.surd
    }

    pub fn trace(&self) -> BigRational {
        &self.rational * rat(2)
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.d == other.d {
            Ok(())
        } else {
            Err(Error::MalformedParameters(format!(
                "values from different quadratic fields: d = {} and d = {}",
                self.d, other.d
            )))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(QuadInt {
            d: self.d,
            rational: &self.rational + &other.rational,
            surd: &self.surd + &other.surd,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let d = rat(self.d);
        Ok(QuadInt {
            d: self.d,
            rational: &self.rational * &other.rational + d * &self.surd * &other.surd,
            surd: &self.rational * &other.surd + &self.surd * &other.rational,
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = other.norm();
        let num = self.checked_mul(&other.conj())?;
        Ok(QuadInt {
            d: self.d,
            rational: num.rational / &n,
            surd: num.surd / &n,
        })
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        QuadInt {
            d: self.d,
            rational: &self.rational * c,
            surd: &self.surd * c,
        }
    }

    pub fn add_rational(&self, c: &BigRational) -> Self {
        QuadInt {
            d: self.d,
            rational: &self.rational + c,
            surd: self.surd.clone(),
        }
    }

    /// Sign of the imaginary part under the principal embedding (`d < 0`).
    pub fn imaginary_sign(&self) -> i8 {
        if self.d > 0 || self.surd.is_zero() {
            0
        } else if self.surd.is_positive() {
            1
        } else {
            -1
        }
    }

    /// Numerical value with `√d` taken as the positive real root or `i√|d|`.
    pub fn to_complex(&self) -> (f64, f64) {
        let x = self.rational.to_f64().unwrap_or(f64::NAN);
        let y = self.surd.to_f64().unwrap_or(f64::NAN);
        let r = (self.d.unsigned_abs() as f64).sqrt();
        if self.d > 0 {
            (x + y * r, 0.0)
        } else {
            (x, y * r)
        }
    }
}

/// Whether `x` divides `y` in the ring of integers of `Q(√d)`.
pub fn quad_divides(x: &QuadInt, y: &QuadInt) -> Result<bool> {
    if x.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(y.checked_div(x)?.is_integral())
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.surd.is_zero() {
            return write!(f, "{}", self.rational);
        }
        let (sign, y) = if self.surd.is_negative() {
            ("-", -&self.surd)
        } else {
            ("+", self.surd.clone())
        };
        let coeff = if y.is_one() { String::new() } else { format!("{y}*") };
        if self.rational.is_zero() {
            let lead = if sign == "-" { "-" } else { "" };
            write!(f, "{lead}{coeff}sqrt({})", self.d)
        } else {
            write!(f, "{}{sign}{coeff}sqrt({})", self.rational, self.d)
        }
    }
}

impl fmt::Debug for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadInt({self})")
    }
}

macro_rules! forward_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&QuadInt> for &QuadInt {
            type Output = QuadInt;
            fn $method(self, rhs: &QuadInt) -> QuadInt {
                self.$checked(rhs).expect("quadratic fields must agree")
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);

impl Neg for &QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt {
            d: self.d,
            rational: -&self.rational,
            surd: -&self.surd,
        }
    }
}

/// `{e, f, d}` record in the integral basis, rationals as strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadRecord {
    pub d: i64,
    pub e: String,
    pub f: String,
}

impl From<&QuadInt> for QuadRecord {
    fn from(q: &QuadInt) -> Self {
        let (e, f) = q.beta_coords();
        QuadRecord {
            d: q.d,
            e: e.to_string(),
            f: f.to_string(),
        }
    }
}

impl TryFrom<QuadRecord> for QuadInt {
    type Error = Error;
    fn try_from(r: QuadRecord) -> Result<Self> {
        let parse = |s: &str| -> Result<BigRational> {
            s.parse()
                .map_err(|_| Error::Parse(format!("bad rational {s:?}")))
        };
        QuadInt::from_beta(r.d, parse(&r.e)?, parse(&r.f)?)
    }
}

impl Serialize for QuadInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QuadRecord::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadInt {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = QuadRecord::deserialize(d)?;
        QuadInt::try_from(r).map_err(serde::de::Error::custom)
    }
}

/// Exact `a / b` for integers when it divides evenly.
pub(crate) fn exact_quotient(a: &BigInt, b: &BigInt) -> Option<BigInt> {
    if b.is_zero() {
        return None;
    }
    let (q, r) = a.div_rem(b);
    r.is_zero().then_some(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QuadInt {
        QuadInt::parse(s).unwrap()
    }

    #[test]
    fn parse_forms() {
        let a = q("-28+84*sqrt(-7)");
        assert_eq!(a.d(), -7);
        assert_eq!(a.rational_part(), &rat(-28));
        assert_eq!(a.surd_part(), &rat(84));
        assert_eq!(q("2*sqrt(-1)"), QuadInt::from_ints(-1, 0, 2).unwrap());
        assert_eq!(q("-sqrt(-7)"), QuadInt::from_ints(-7, 0, -1).unwrap());
        assert_eq!(q("3 - 2*sqrt(5)"), QuadInt::from_ints(5, 3, -2).unwrap());
        assert_eq!(q("1+sqrt(-8)"), QuadInt::from_ints(-2, 1, 2).unwrap());
        assert!(QuadInt::parse("1+2").is_err());
        assert!(QuadInt::parse("1+sqrt(1)").is_err());
        assert!(QuadInt::parse("1+sqrt(0)").is_err());
    }

    #[test]
    fn beta_basis_for_d_one_mod_four() {
        // (−1 + √−7)/2 is β itself.
        let beta = QuadInt::new(-7, BigRational::new((-1).into(), 2.into()), BigRational::new(1.into(), 2.into())).unwrap();
        assert_eq!(beta.beta_coords(), (rat(0), rat(1)));
        assert!(beta.is_integral());
        assert_eq!(beta.norm(), rat(2));
        let half = QuadInt::new(-1, BigRational::new(1.into(), 2.into()), rat(0)).unwrap();
        assert!(!half.is_integral());
    }

    #[test]
    fn divisibility_examples() {
        // √−7 | 7 with quotient −√−7
        let s7 = q("sqrt(-7)");
        let seven = QuadInt::from_ints(-7, 7, 0).unwrap();
        assert!(quad_divides(&s7, &seven).unwrap());
        assert_eq!(seven.checked_div(&s7).unwrap(), -&s7);
        // 2 | 1 + √−7 since (1 + √−7)/2 = 1 + β
        let two = QuadInt::from_ints(-7, 2, 0).unwrap();
        let y = q("1+sqrt(-7)");
        assert!(quad_divides(&two, &y).unwrap());
        let quotient = y.checked_div(&two).unwrap();
        assert_eq!(quotient.beta_coords(), (rat(1), rat(1)));
        // 3 ∤ √−7
        let three = QuadInt::from_ints(-7, 3, 0).unwrap();
        assert!(!quad_divides(&three, &s7).unwrap());
        // 2 ∤ 1 + √−1
        assert!(!quad_divides(&QuadInt::from_ints(-1, 2, 0).unwrap(), &q("1+sqrt(-1)")).unwrap());
        // division by zero
        let zero = QuadInt::from_ints(-7, 0, 0).unwrap();
        assert_eq!(quad_divides(&zero, &s7), Err(Error::DivisionByZero));
    }

    #[test]
    fn field_mismatch() {
        assert!(q("sqrt(-1)").checked_add(&q("sqrt(-2)")).is_err());
    }

    #[test]
    fn display_round_trip() {
        for s in ["-28+84*sqrt(-7)", "2*sqrt(-1)", "-sqrt(-2)", "3-2*sqrt(5)"] {
            assert_eq!(q(s).to_string(), s);
            assert_eq!(q(&q(s).to_string()), q(s));
        }
    }

    #[test]
    fn serde_record() {
        let a = q("-28+84*sqrt(-7)");
        // −28 + 84√−7 = 56 + 168β
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, r#"{"d":-7,"e":"56","f":"168"}"#);
        let back: QuadInt = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn quad(d: i64) -> impl Strategy<Value = QuadInt> {
            (-50i64..50, -50i64..50).prop_map(move |(e, f)| {
                QuadInt::from_beta(d, rat(e), rat(f)).unwrap()
            })
        }

        proptest! {
            #[test]
            fn divisibility_implies_norm_divisibility(
                d in prop::sample::select(vec![-1i64, -2, -3, -7, -11, 2, 5]),
                e1 in -30i64..30, f1 in -30i64..30,
                e2 in -30i64..30, f2 in -30i64..30,
            ) {
                let x = QuadInt::from_beta(d, rat(e1), rat(f1)).unwrap();
                let y = QuadInt::from_beta(d, rat(e2), rat(f2)).unwrap();
                prop_assume!(!x.is_zero());
                for target in [&x * &y, y.clone()] {
                    if quad_divides(&x, &target).unwrap() {
                        let nx = x.norm().to_integer();
                        let ny = target.norm().to_integer();
                        prop_assert!((ny % nx).is_zero());
                    }
                }
                prop_assert!(quad_divides(&x, &(&x * &y)).unwrap());
            }

            #[test]
            fn norms_of_integers_are_integers(x in quad(-7)) {
                prop_assert!(x.norm().is_integer());
                prop_assert_eq!(&(&x * &x.conj()).as_rational().unwrap(), &x.norm());
            }
        }
    }
}
