use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{AbelianGroup, Character};
use crate::number::{recognize_quadratic, unit_group, CycloInt, QuadInt, Recognition};

use super::GroupRingElement;

/// Exact classification of a character value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ValueKind {
    Rational {
        #[serde(serialize_with = "crate::strings::big")]
        value: BigInt,
    },
    Quadratic {
        value: QuadInt,
    },
    Other,
}

impl From<Recognition> for ValueKind {
    fn from(r: Recognition) -> Self {
        match r {
            Recognition::Rational(value) => ValueKind::Rational { value },
            Recognition::Quadratic(value) => ValueKind::Quadratic { value },
            Recognition::Other => ValueKind::Other,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumValue {
    pub value: CycloInt,
    pub recognized: ValueKind,
    /// The characters taking this value (`U_z`), by index.
    #[serde(skip)]
    pub character_indices: Vec<usize>,
    pub characters: Vec<Character>,
    pub count: usize,
}

/// Galois orbit structure of a four-element spectrum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrbitClass {
    /// One orbit of length four.
    Transitive,
    /// A fixed point and an orbit of length three.
    FixedAndTriple,
    /// Two fixed points and an orbit of length two.
    TwoFixedAndPair,
    /// Two orbits of length two.
    TwoPairs,
    /// Any other shape (only possible when `D` is not a difference set).
    Other,
}

/// Data attached to a spectrum `{a, ā, c}` with `c` real.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThreeValued {
    /// Indices into `SpectrumReport::values`.
    pub a_index: usize,
    pub b_index: usize,
    pub c_index: usize,
    #[serde(serialize_with = "crate::strings::big")]
    pub c: BigInt,
    /// `a`, the member of the conjugate pair with positive imaginary part.
    pub a: QuadInt,
    pub d: i64,
    /// `T = {t ∈ Z_m^* : σ_t(a) = a}`.
    pub t_subgroup: Vec<u64>,
    pub t_index: u64,
    pub fixed_by_t: bool,
    /// `c = +√n` with `n = a·ā`.
    pub c_is_positive_root: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumReport {
    pub group: AbelianGroup,
    #[serde(serialize_with = "crate::strings::big")]
    pub k: BigInt,
    /// Coefficient of the identity in `D`.
    #[serde(serialize_with = "crate::strings::big")]
    pub d1: BigInt,
    /// The distinct nonprincipal values in ascending canonical order.
    pub values: Vec<SpectrumValue>,
    /// Partition of `values` (by index) into Galois orbits.
    pub galois_orbits: Vec<Vec<usize>>,
    pub three_valued: Option<ThreeValued>,
    pub orbit_class: Option<OrbitClass>,
}

impl SpectrumReport {
    pub fn size(&self) -> usize {
        self.values.len()
    }

    pub fn value_index(&self, z: &CycloInt) -> Option<usize> {
        self.values.iter().position(|s| &s.value == z)
    }
}

pub fn spectrum(d: &GroupRingElement) -> Result<SpectrumReport> {
    let group = d.group().clone();
    let all = d.character_values();
    let mut buckets: std::collections::BTreeMap<CycloInt, Vec<usize>> = Default::default();
    for (chi, z) in all.iter().enumerate().skip(1) {
        buckets.entry(z.clone()).or_default().push(chi);
    }
    let values: Vec<SpectrumValue> = buckets
        .into_iter()
        .map(|(value, idx)| SpectrumValue {
            recognized: recognize_quadratic(&value).into(),
            characters: idx.iter().map(|&i| group.character(i)).collect(),
            count: idx.len(),
            character_indices: idx,
            value,
        })
        .collect();

    let mut galois_orbits: Vec<Vec<usize>> = Vec::new();
    let mut seen = vec![false; values.len()];
    for i in 0..values.len() {
        if seen[i] {
            continue;
        }
        let orbit: Vec<usize> = values[i]
            .value
            .galois_orbit()
            .iter()
            .filter_map(|z| values.iter().position(|s| &s.value == z))
            .collect();
        for &j in &orbit {
            seen[j] = true;
        }
        galois_orbits.push(orbit);
    }

    let mut report = SpectrumReport {
        group,
        k: all.first().and_then(CycloInt::as_integer).unwrap_or_default(),
        d1: d.coeff(0).clone(),
        values,
        galois_orbits,
        three_valued: None,
        orbit_class: None,
    };
    match report.values.len() {
        3 => report.three_valued = three_valued_data(d, &report)?,
        4 => report.orbit_class = Some(classify_orbits(&report.galois_orbits)),
        _ => {}
    }
    Ok(report)
}

fn classify_orbits(orbits: &[Vec<usize>]) -> OrbitClass {
    let mut sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
    sizes.sort_unstable();
    match sizes.as_slice() {
        [4] => OrbitClass::Transitive,
        [1, 3] => OrbitClass::FixedAndTriple,
        [1, 1, 2] => OrbitClass::TwoFixedAndPair,
        [2, 2] => OrbitClass::TwoPairs,
        _ => OrbitClass::Other,
    }
}

fn three_valued_data(d: &GroupRingElement, report: &SpectrumReport) -> Result<Option<ThreeValued>> {
    let real: Vec<usize> = (0..3)
        .filter(|&i| report.values[i].value.conj() == report.values[i].value)
        .collect();
    match real.len() {
        0 | 2 => {
            return Err(Error::ContractViolation(
                "three-valued spectrum not closed under conjugation with one real value".into(),
            ))
        }
        3 => return Ok(None),
        _ => {}
    }
    let c_index = real[0];
    let pair: Vec<usize> = (0..3).filter(|&i| i != c_index).collect();
    let c = report.values[c_index]
        .value
        .as_integer()
        .ok_or_else(|| Error::ContractViolation("real value outside Q".into()))?;
    let quad = |i: usize| match &report.values[i].recognized {
        ValueKind::Quadratic { value } => Ok(value.clone()),
        _ => Err(Error::ContractViolation("non-real value is not quadratic".into())),
    };
    let (q0, q1) = (quad(pair[0])?, quad(pair[1])?);
    let (a_index, b_index, a) = if q0.imaginary_sign() > 0 {
        (pair[0], pair[1], q0)
    } else {
        (pair[1], pair[0], q1)
    };
    let az = &report.values[a_index].value;
    let m = az.modulus();
    let units = unit_group(m);
    let t_subgroup: Vec<u64> = units
        .iter()
        .copied()
        .filter(|&t| az.galois(t as i64).map(|z| &z == az).unwrap_or(false))
        .collect();
    let t_index = (units.len() / t_subgroup.len()) as u64;
    let fixed_by_t = t_subgroup
        .iter()
        .all(|&t| d.multiplier_image(t as i64).map(|x| &x == d).unwrap_or(false));
    let n = a.norm();
    let c_is_positive_root = c.is_positive() && n.is_integer() && &c * &c == n.to_integer()
        || (c.is_zero() && n.is_zero());
    Ok(Some(ThreeValued {
        a_index,
        b_index,
        c_index,
        c,
        d: a.d(),
        a,
        t_subgroup,
        t_index,
        fixed_by_t,
        c_is_positive_root,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fano_spectrum() {
        let g = AbelianGroup::new(&[7]).unwrap();
        let r = spectrum(&GroupRingElement::from_indices(&g, &[1, 2, 4])).unwrap();
        assert_eq!(r.size(), 2);
        let half = |x: i64| num_rational::BigRational::new(x.into(), 2.into());
        let expect = [
            QuadInt::new(-7, half(-1), half(1)).unwrap(),
            QuadInt::new(-7, half(-1), half(-1)).unwrap(),
        ];
        for v in &r.values {
            match &v.recognized {
                ValueKind::Quadratic { value } => assert!(expect.contains(value)),
                other => panic!("{other:?}"),
            }
        }
        assert_eq!(r.galois_orbits.len(), 1);
    }

    #[test]
    fn z4_three_values() {
        let g = AbelianGroup::new(&[4]).unwrap();
        let d = GroupRingElement::from_indices(&g, &[0, 1, 2]);
        let r = spectrum(&d).unwrap();
        assert_eq!(r.size(), 3);
        let t = r.three_valued.unwrap();
        assert_eq!(t.c, 1.into());
        assert_eq!(t.a, QuadInt::from_ints(-1, 0, 1).unwrap());
        assert_eq!(t.d, -1);
        assert_eq!(t.t_subgroup, vec![1]);
        assert_eq!(t.t_index, 2);
        assert!(t.fixed_by_t);
        assert!(t.c_is_positive_root);
        assert_eq!(r.d1, 1.into());
    }

    #[test]
    fn complement_of_identity() {
        let g = AbelianGroup::new(&[3]).unwrap();
        let r = spectrum(&GroupRingElement::from_indices(&g, &[1, 2])).unwrap();
        assert_eq!(r.size(), 1);
        assert_eq!(r.values[0].recognized, ValueKind::Rational { value: (-1).into() });
        assert_eq!(r.values[0].count, 2);
    }
}
