use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{AbelianGroup, Character};
use crate::number::CycloInt;

use super::GroupRingElement;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DifferenceSetVerdict {
    pub is_ds: bool,
    #[serde(serialize_with = "crate::strings::big")]
    pub v: BigInt,
    #[serde(serialize_with = "crate::strings::big")]
    pub k: BigInt,
    /// Present when the off-identity coefficients of `D D^(−1)` are constant.
    #[serde(serialize_with = "crate::strings::big_opt")]
    pub lambda: Option<BigInt>,
    #[serde(serialize_with = "crate::strings::big_opt")]
    pub n: Option<BigInt>,
}

/// Checks `D D^(−1) = n + λG` directly in the group ring.
pub fn verify_difference_set(d: &GroupRingElement) -> DifferenceSetVerdict {
    let v = BigInt::from(d.group().order());
    let k = d.weight();
    let prod = d
        .ring_mul(&d.involution())
        .expect("an element and its involution share a group");
    let off = &prod.coeffs()[1..];
    let lambda = match off.first() {
        None => Some(BigInt::zero()),
        Some(first) if off.iter().all(|c| c == first) => Some(first.clone()),
        Some(_) => None,
    };
    let is_ds = d.is_indicator() && lambda.as_ref().is_some_and(|l| !l.is_negative());
    let n = lambda.as_ref().map(|l| &prod.coeffs()[0] - l);
    DifferenceSetVerdict { is_ds, v, k, lambda, n }
}

/// The character criterion: `|χ(D)|² = n` for every nonprincipal χ and
/// `k²` for the principal one, where `λ` is forced by `k(k−1) = λ(v−1)`.
pub fn verify_by_characters(d: &GroupRingElement) -> bool {
    if !d.is_indicator() {
        return false;
    }
    let v = BigInt::from(d.group().order());
    let k = d.weight();
    let lambda = if v.is_one() {
        BigInt::zero()
    } else {
        let num: BigInt = &k * (&k - 1);
        let den: BigInt = &v - 1;
        if !num.is_multiple_of(&den) {
            return false;
        }
        num / den
    };
    let n = &k - &lambda;
    let m = d.group().exponent();
    let principal = CycloInt::from_integer(m, &k * &k);
    let target = CycloInt::from_integer(m, n);
    (0..d.group().order()).into_par_iter().all(|chi| {
        let z = d.evaluate(chi);
        let want = if chi == 0 { &principal } else { &target };
        &(&z * &z.conj()) == want
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourierInversion {
    pub coefficients: Vec<BigRational>,
    /// All coefficients are integers.
    pub integral: bool,
}

impl FourierInversion {
    pub fn to_ring_element(&self, group: &AbelianGroup) -> Result<GroupRingElement> {
        if !self.integral {
            return Err(Error::ContractViolation(
                "inverted coefficients are not integral".into(),
            ));
        }
        GroupRingElement::from_coefficients(group, self.coefficients.iter().map(|c| c.to_integer()).collect())
    }
}

/// Recovers `a_h = (1/v) Σ_χ χ(A) χ(h^{−1})` from one value per character,
/// given in character-index order.
pub fn fourier_invert(group: &AbelianGroup, values: &[CycloInt]) -> Result<FourierInversion> {
    let v = group.order();
    if values.len() != v {
        return Err(Error::ContractViolation(format!(
            "expected {v} character values, got {}",
            values.len()
        )));
    }
    let m = group.exponent();
    if let Some(z) = values.iter().find(|z| z.modulus() != m) {
        return Err(Error::ModulusMismatch(m, z.modulus()));
    }
    let vb = BigInt::from(v);
    let coefficients: Vec<BigRational> = (0..v)
        .into_par_iter()
        .map(|h| {
            let hinv = group.neg(h);
            let mut acc = CycloInt::zero(m);
            for (chi, z) in values.iter().enumerate() {
                acc = &acc + &z.mul_zeta_pow(group.pairing(chi, hinv) as i64);
            }
            acc.as_integer()
                .map(|s| BigRational::new(s, vb.clone()))
                .ok_or(())
        })
        .collect::<std::result::Result<_, ()>>()
        .map_err(|_| Error::ContractViolation("inversion sum is not rational".into()))?;
    let integral = coefficients.iter().all(|c| c.is_integer());
    Ok(FourierInversion { coefficients, integral })
}

/// Values keyed by explicit characters rather than index order.
pub fn fourier_invert_map(
    group: &AbelianGroup,
    values: &[(Character, CycloInt)],
) -> Result<FourierInversion> {
    let mut dense: Vec<Option<CycloInt>> = vec![None; group.order()];
    for (chi, z) in values {
        let i = group.character_index(chi)?;
        dense[i] = Some(z.clone());
    }
    let dense = dense
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::ContractViolation("missing character value".into()))?;
    fourier_invert(group, &dense)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fano() {
        let g = AbelianGroup::new(&[7]).unwrap();
        let d = GroupRingElement::from_indices(&g, &[1, 2, 4]);
        let r = verify_difference_set(&d);
        assert!(r.is_ds);
        assert_eq!(r.lambda, Some(1.into()));
        assert_eq!(r.n, Some(2.into()));
        assert!(verify_by_characters(&d));
    }

    #[test]
    fn degenerate_and_negative() {
        let g = AbelianGroup::new(&[5]).unwrap();
        let one = GroupRingElement::from_indices(&g, &[0]);
        let r = verify_difference_set(&one);
        assert!(r.is_ds);
        assert_eq!((r.k.clone(), r.lambda.clone()), (1.into(), Some(0.into())));
        assert!(verify_by_characters(&one));
        let two = GroupRingElement::from_indices(&g, &[0, 1]);
        assert!(!verify_difference_set(&two).is_ds);
        assert!(!verify_by_characters(&two));
    }

    #[test]
    fn z4_hadamard() {
        let g = AbelianGroup::new(&[4]).unwrap();
        let d = GroupRingElement::from_indices(&g, &[0, 1, 2]);
        let r = verify_difference_set(&d);
        assert!(r.is_ds);
        assert_eq!(r.lambda, Some(2.into()));
        assert_eq!(r.n, Some(1.into()));
        assert!(verify_by_characters(&d));
    }

    #[test]
    fn delta_inverts_to_point() {
        let g = AbelianGroup::new(&[2, 6]).unwrap();
        let g0 = 7;
        let values: Vec<CycloInt> = (0..g.order())
            .map(|chi| CycloInt::zeta_pow(g.exponent(), g.pairing(chi, g0) as i64))
            .collect();
        let inv = fourier_invert(&g, &values).unwrap();
        assert!(inv.integral);
        assert_eq!(
            inv.to_ring_element(&g).unwrap(),
            GroupRingElement::from_indices(&g, &[g0])
        );
    }

    #[test]
    fn inconsistent_values_flagged() {
        let g = AbelianGroup::new(&[3]).unwrap();
        let values = vec![CycloInt::one(3), CycloInt::zero(3), CycloInt::zero(3)];
        let inv = fourier_invert(&g, &values).unwrap();
        assert!(!inv.integral);
        assert!(inv.to_ring_element(&g).is_err());
    }
}
