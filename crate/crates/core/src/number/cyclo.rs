//! Exact arithmetic in the ring of integers `Z[ζ_m]` of the `m`-th cyclotomic
//! field.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(m)-1}`. Every
//! result is reduced modulo the (monic) cyclotomic polynomial `Φ_m`, so two
//! values are equal exactly when their coefficient vectors are equal.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::predicates::{divisors, euler_phi, gcd_u64};
use crate::error::{Error, Result};

type Poly = Vec<BigInt>;

fn phi_cache() -> &'static RwLock<HashMap<u64, Arc<Poly>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<Poly>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The `m`-th cyclotomic polynomial, coefficients from the constant term up.
pub fn cyclotomic_polynomial(m: u64) -> Arc<Poly> {
    assert!(m >= 1, "cyclotomic polynomial requires m >= 1");
    if let Some(p) = phi_cache().read().unwrap().get(&m) {
        return p.clone();
    }
    // x^m - 1 = prod_{d | m} Φ_d(x)
    let mut num: Poly = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    for d in divisors(m) {
        if d == m {
            continue;
        }
        num = div_monic(&num, &cyclotomic_polynomial(d));
    }
    let poly = Arc::new(num);
    phi_cache().write().unwrap().insert(m, poly.clone());
    poly
}

/// Exact quotient of `num` by a monic divisor.
fn div_monic(num: &Poly, den: &Poly) -> Poly {
    let dd = den.len() - 1;
    let mut rem = num.clone();
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "division was not exact");
    quot
}

/// Reduces a polynomial in ζ modulo Φ_m, returning exactly φ(m) coefficients.
fn reduce(mut poly: Poly, m: u64) -> Poly {
    let phi = cyclotomic_polynomial(m);
    let deg = phi.len() - 1;
    let tail: Vec<(usize, &BigInt)> = phi[..deg]
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect();
    for i in (deg..poly.len()).rev() {
        if poly[i].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut poly[i]);
        for &(j, pj) in &tail {
            poly[i - deg + j] -= &c * pj;
        }
    }
    poly.resize(deg, BigInt::zero());
    poly
}

/// The units `Z_m^*`, in increasing order (`{0}` stands in for `Z_1^*`).
pub fn unit_group(m: u64) -> Vec<u64> {
    if m == 1 {
        return vec![0];
    }
    (1..m).filter(|&t| gcd_u64(t, m) == 1).collect()
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycloInt {
    m: u64,
    #[serde(with = "big_vec")]
    coeffs: Vec<BigInt>,
}

impl CycloInt {
    pub fn zero(m: u64) -> Self {
        assert!(m >= 1, "cyclotomic modulus must be positive");
        CycloInt {
            m,
            coeffs: vec![BigInt::zero(); euler_phi(m) as usize],
        }
    }

    pub fn from_integer(m: u64, n: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(m);
        z.coeffs[0] = n.into();
        z
    }

    pub fn one(m: u64) -> Self {
        Self::from_integer(m, 1)
    }

    /// `ζ_m^j` for any integer `j`.
    pub fn zeta_pow(m: u64, j: i64) -> Self {
        let mut counts = vec![0i64; m as usize];
        counts[j.rem_euclid(m as i64) as usize] = 1;
        Self::from_exponent_counts(m, &counts)
    }

    /// `Σ_j counts[j]·ζ_m^j` for `counts` of length `m`.
    pub fn from_exponent_counts(m: u64, counts: &[i64]) -> Self {
        assert_eq!(counts.len(), m as usize, "need one count per exponent");
        let poly = counts.iter().map(|&c| BigInt::from(c)).collect();
        CycloInt { m, coeffs: reduce(poly, m) }
    }

    pub fn from_exponent_counts_big(m: u64, counts: Vec<BigInt>) -> Self {
        assert_eq!(counts.len(), m as usize, "need one count per exponent");
        CycloInt { m, coeffs: reduce(counts, m) }
    }

    /// Builds a value from power-basis coefficients (any length; reduced).
    pub fn from_coefficients(m: u64, coeffs: Vec<BigInt>) -> Self {
        CycloInt { m, coeffs: reduce(coeffs, m) }
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational integer this value equals, if it lies in `Z`.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coeffs[0].clone())
    }

    fn check_modulus(&self, other: &Self) -> Result<()> {
        if self.m == other.m {
            Ok(())
        } else {
            Err(Error::ModulusMismatch(self.m, other.m))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_modulus(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycloInt { m: self.m, coeffs })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_modulus(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CycloInt { m: self.m, coeffs })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_modulus(other)?;
        let n = self.coeffs.len();
        let mut prod = vec![BigInt::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(CycloInt { m: self.m, coeffs: reduce(prod, self.m) })
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        CycloInt {
            m: self.m,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Divides every coefficient by `c`; `None` unless all divisions are exact.
    pub fn div_exact(&self, c: &BigInt) -> Option<Self> {
        if c.is_zero() {
            return None;
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            let (q, r) = a.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            coeffs.push(q);
        }
        Some(CycloInt { m: self.m, coeffs })
    }

    /// Spreads the value over all `m` exponents (not reduced).
    fn to_exponent_vector(&self) -> Vec<BigInt> {
        let mut v = self.coeffs.clone();
        v.resize(self.m as usize, BigInt::zero());
        v
    }

    /// Multiplication by `ζ_m^j`.
    pub fn mul_zeta_pow(&self, j: i64) -> Self {
        let m = self.m as usize;
        let shift = j.rem_euclid(self.m as i64) as usize;
        let mut v = vec![BigInt::zero(); m];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                v[(i + shift) % m] = c.clone();
            }
        }
        CycloInt { m: self.m, coeffs: reduce(v, self.m) }
    }

    /// The Galois automorphism `σ_t : ζ_m ↦ ζ_m^t`.
    pub fn galois(&self, t: i64) -> Result<Self> {
        let m = self.m as i64;
        let tt = t.rem_euclid(m) as u64;
        if gcd_u64(tt, self.m) != 1 && self.m != 1 {
            return Err(Error::InvalidAutomorphism { t, m: self.m });
        }
        let mut v = vec![BigInt::zero(); self.m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let e = ((i as u64 * tt) % self.m) as usize;
                v[e] += c;
            }
        }
        Ok(CycloInt { m: self.m, coeffs: reduce(v, self.m) })
    }

    /// Complex conjugation, `σ_{-1}`.
    pub fn conj(&self) -> Self {
        self.galois(-1).expect("-1 is always a unit")
    }

    /// `z·σ_{-1}(z)`.
    pub fn norm_squared(&self) -> Self {
        self * &self.conj()
    }

    /// Distinct images under the full Galois group, in canonical order.
    pub fn galois_orbit(&self) -> Vec<Self> {
        let mut orbit: Vec<Self> = unit_group(self.m)
            .into_iter()
            .map(|t| self.galois(t as i64).expect("unit"))
            .collect();
        orbit.sort();
        orbit.dedup();
        orbit
    }

    /// Embeds into `Z[ζ_target]` through `ζ_m = ζ_target^{target/m}`.
    pub fn lift(&self, target: u64) -> Result<Self> {
        if !target.is_multiple_of(self.m) {
            return Err(Error::ModulusMismatch(self.m, target));
        }
        let step = (target / self.m) as usize;
        let mut v = vec![BigInt::zero(); target as usize];
        for (i, c) in self.to_exponent_vector().into_iter().enumerate() {
            v[i * step] = c;
        }
        Ok(CycloInt { m: target, coeffs: reduce(v, target) })
    }

    /// Numerical value under the principal embedding `ζ_m ↦ e^{2πi/m}`.
    ///
    /// Only for display and cross-checks; no decision in the library depends
    /// on it.
    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let theta = 2.0 * PI * j as f64 / self.m as f64;
            re += c * theta.cos();
            im += c * theta.sin();
        }
        (re, im)
    }
}

impl fmt::Debug for CycloInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloInt({}; {self})", self.m)
    }
}

impl fmt::Display for CycloInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match j {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if j == 1 {
                        write!(f, "z{}", self.m)?;
                    } else {
                        write!(f, "z{}^{j}", self.m)?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! forward_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&CycloInt> for &CycloInt {
            type Output = CycloInt;
            /// Panics when the moduli differ; use the `checked_*` form to
            /// recover from that.
            fn $method(self, rhs: &CycloInt) -> CycloInt {
                self.$checked(rhs).expect("cyclotomic moduli must agree")
            }
        }
        impl $tr<CycloInt> for CycloInt {
            type Output = CycloInt;
            fn $method(self, rhs: CycloInt) -> CycloInt {
                (&self).$checked(&rhs).expect("cyclotomic moduli must agree")
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);

impl Neg for &CycloInt {
    type Output = CycloInt;
    fn neg(self) -> CycloInt {
        CycloInt {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycloInt {
    type Output = CycloInt;
    fn neg(self) -> CycloInt {
        -&self
    }
}

/// Serializes big integers as decimal strings.
pub(crate) mod big_vec {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|c| c.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?
            .into_iter()
            .map(|s| s.parse().map_err(D::Error::custom))
            .collect()
    }
}
