use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::number::QuadInt;

use super::{GroupRingElement, ThreeValueProfile};

/// The first eigenmatrix of the fusion scheme, rows `1, E₂, E₃, E₄` and
/// columns `χ₀, U_a, U_b, U_c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Eigenmatrix {
    pub rows: Vec<Vec<QuadInt>>,
    pub det: QuadInt,
    /// `v³ / ((a − ā)Δ)`.
    pub expected_det: QuadInt,
    pub det_agrees: bool,
    /// First-row `U_a` entry when `n` is used in place of `√n`.
    #[serde(serialize_with = "crate::strings::rational")]
    pub first_row_alt: BigRational,
}

/// Exact determinant by permutation expansion.
pub fn determinant(m: &[Vec<QuadInt>]) -> Result<QuadInt> {
    let size = m.len();
    let d = m.first().and_then(|r| r.first()).map(QuadInt::d).unwrap_or(-1);
    let mut total = QuadInt::from_ints(d, 0, 0)?;
    let mut perm: Vec<usize> = (0..size).collect();
    loop {
        let mut term = QuadInt::from_ints(d, 1, 0)?;
        for (i, &j) in perm.iter().enumerate() {
            term = term.checked_mul(&m[i][j])?;
        }
        total = if parity(&perm) { total.checked_add(&term)? } else { total.checked_sub(&term)? };
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(total)
}

fn parity(p: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot has a successor");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Builds `P` from the profile (no precondition on `E₁`) and compares its
/// determinant with the closed form.
pub fn eigenmatrix(profile: &ThreeValueProfile) -> Result<Eigenmatrix> {
    let d = profile.a.d();
    let q = |x: BigRational| QuadInt::rational(d, x);
    let int = |x: &BigInt| BigRational::from_integer(x.clone());
    let one = q(BigRational::one())?;
    let r = &profile.r;
    let v_over = int(&profile.v) / int(&profile.delta);
    let mid_c = q(&v_over - BigRational::one() - r * BigRational::from_integer(2.into()))?;
    let omega_r = profile.omega.add_rational(r);
    let rows = vec![
        vec![one.clone(), q(int(&profile.u_a))?, q(int(&profile.u_b))?, q(int(&profile.u_c))?],
        vec![one.clone(), omega_r.clone(), omega_r.conj(), mid_c.clone()],
        vec![one.clone(), omega_r.conj(), omega_r, mid_c],
        vec![
            one,
            q(r.clone())?,
            q(r.clone())?,
            q(-BigRational::one() - r * BigRational::from_integer(2.into()))?,
        ],
    ];
    let det = determinant(&rows)?;
    let v = int(&profile.v);
    let denom = profile.a.checked_sub(&profile.a_bar)?.scale(&int(&profile.delta));
    let expected_det = q(&v * &v * &v)?.checked_div(&denom)?;
    Ok(Eigenmatrix {
        det_agrees: det == expected_det,
        rows,
        det,
        expected_det,
        first_row_alt: profile.u_a_alt.clone(),
    })
}

/// Intersection numbers `p_ij^k` of a translation scheme.
pub type IntersectionNumbers = Vec<Vec<Vec<u64>>>;

/// Checks that `classes` (with `classes[0] = {0}`) partition the group, are
/// permuted by inversion, and have well-defined intersection numbers; returns
/// them if so.
pub fn translation_scheme(group: &AbelianGroup, classes: &[Vec<usize>]) -> Option<IntersectionNumbers> {
    let v = group.order();
    let mut class_of = vec![usize::MAX; v];
    for (c, members) in classes.iter().enumerate() {
        for &x in members {
            if x >= v || class_of[x] != usize::MAX {
                return None;
            }
            class_of[x] = c;
        }
    }
    if class_of.contains(&usize::MAX) || classes.first().map(Vec::as_slice) != Some(&[0][..]) {
        return None;
    }
    for members in classes {
        let inv = class_of[group.neg(members[0])];
        if members.iter().any(|&x| class_of[group.neg(x)] != inv) {
            return None;
        }
    }
    let r = classes.len();
    let mut p = vec![vec![vec![0u64; r]; r]; r];
    for (i, ci) in classes.iter().enumerate() {
        for j in 0..r {
            for (k, ck) in classes.iter().enumerate() {
                let count = |z: usize| ci.iter().filter(|&&x| class_of[group.sub(z, x)] == j).count() as u64;
                let first = count(ck[0]);
                if ck.iter().any(|&z| count(z) != first) {
                    return None;
                }
                p[i][j][k] = first;
            }
        }
    }
    Some(p)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FusionScheme {
    pub eigenmatrix: Eigenmatrix,
    /// Intersection numbers of `{1}, E₂, E₃, E₄` on the group, when an
    /// instance was supplied and the axioms hold.
    pub group_scheme: Option<IntersectionNumbers>,
    /// Same for `{χ₀}, U_a, U_b, U_c` on the character group.
    pub character_scheme: Option<IntersectionNumbers>,
    /// Whether the axioms were checked and hold (`None` without an instance).
    pub axioms_hold: Option<bool>,
}

/// The fusion scheme of a three-valued difference set with `E₁ = ∅ ≠ E₄`.
pub fn fusion_scheme(profile: &ThreeValueProfile, instance: Option<&GroupRingElement>) -> Result<FusionScheme> {
    if !profile.e_sizes[0].is_zero() || profile.e_sizes[3].is_zero() {
        return Err(Error::NotApplicable("needs E₁ empty and E₄ nonempty".into()));
    }
    let eigenmatrix = eigenmatrix(profile)?;
    let mut out = FusionScheme { eigenmatrix, group_scheme: None, character_scheme: None, axioms_hold: None };
    if let Some(d) = instance {
        let group = d.group();
        let dinv = d.involution();
        let mut classes = vec![vec![0], Vec::new(), Vec::new(), Vec::new()];
        for g in 1..group.order() {
            let slot = match (d.coeff(g).is_one(), dinv.coeff(g).is_one()) {
                (true, false) => 1,
                (false, true) => 2,
                (false, false) => 3,
                (true, true) => {
                    return Err(Error::NotApplicable("instance has E₁ nonempty".into()));
                }
            };
            classes[slot].push(g);
        }
        out.group_scheme = translation_scheme(group, &classes);

        let spec = super::spectrum(d)?;
        let tv = spec
            .three_valued
            .as_ref()
            .ok_or_else(|| Error::NotApplicable("instance is not three-valued".into()))?;
        let dual: Vec<Vec<usize>> = std::iter::once(vec![0])
            .chain(
                [tv.a_index, tv.b_index, tv.c_index]
                    .iter()
                    .map(|&i| spec.values[i].character_indices.clone()),
            )
            .collect();
        out.character_scheme = translation_scheme(group, &dual);
        out.axioms_hold = Some(out.group_scheme.is_some() && out.character_scheme.is_some());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::{three_value_profile, ProfileParams};

    fn qi(x: i64, y: i64) -> QuadInt {
        QuadInt::from_ints(-1, x, y).unwrap()
    }

    #[test]
    fn determinant_sixteen() {
        let p = three_value_profile(&ProfileParams::new(16, 10, 4, qi(0, 2), 1)).unwrap();
        let e = eigenmatrix(&p).unwrap();
        assert_eq!(e.rows[1], vec![qi(1, 0), qi(0, -2), qi(0, 2), qi(-1, 0)]);
        assert_eq!(e.det, qi(0, -256));
        assert!(e.det_agrees);
        assert!(matches!(fusion_scheme(&p, None), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn determinant_four() {
        let p = three_value_profile(&ProfileParams::new(4, 3, 1, qi(0, 1), 1)).unwrap();
        let e = eigenmatrix(&p).unwrap();
        assert_eq!(e.rows[0][1], qi(1, 0));
        assert_eq!(e.det, qi(0, -16));
        assert!(e.det_agrees);
    }

    #[test]
    fn cyclotomic_scheme_on_z7() {
        let g = AbelianGroup::new(&[7]).unwrap();
        let p = translation_scheme(&g, &[vec![0], vec![1, 6], vec![2, 5], vec![3, 4]]).unwrap();
        // the valency of each class
        assert_eq!(p[1][1][0], 2);
        assert_eq!(p[1][1][2], 1);
        assert!(translation_scheme(&g, &[vec![0], vec![1, 6], vec![2, 3, 4, 5]]).is_none());
        assert!(translation_scheme(&g, &[vec![0], vec![1, 2, 4], vec![3, 5, 6]]).is_some());
        assert!(translation_scheme(&g, &[vec![0], vec![1, 2], vec![3, 4, 5, 6]]).is_none());
    }

    #[test]
    fn leibniz_matches_hand() {
        let m: Vec<Vec<QuadInt>> = [[2, 1, 0], [1, 3, 1], [0, 1, 4]]
            .iter()
            .map(|r| r.iter().map(|&x| qi(x, 0)).collect())
            .collect();
        assert_eq!(determinant(&m).unwrap(), qi(18, 0));
    }
}
