use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{AbelianGroup, GroupElement};
use crate::number::CycloInt;

/// An integer combination `Σ a_g g` in `Z[G]`, stored densely by element
/// index. A subset `A ⊆ G` is the element with 0/1 coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupRingElement {
    group: AbelianGroup,
    coeffs: Vec<BigInt>,
}

impl GroupRingElement {
    pub fn zero(group: &AbelianGroup) -> Self {
        GroupRingElement {
            group: group.clone(),
            coeffs: vec![BigInt::zero(); group.order()],
        }
    }

    /// `n·1_G`.
    pub fn scalar(group: &AbelianGroup, n: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(group);
        z.coeffs[0] = n.into();
        z
    }

    /// `G` viewed as the sum of all its elements.
    pub fn group_sum(group: &AbelianGroup) -> Self {
        GroupRingElement {
            group: group.clone(),
            coeffs: vec![BigInt::one(); group.order()],
        }
    }

    /// Indicator of a set of element indices (duplicates ignored).
    pub fn from_indices(group: &AbelianGroup, indices: &[usize]) -> Self {
        let mut z = Self::zero(group);
        for &i in indices {
            z.coeffs[i] = BigInt::one();
        }
        z
    }

    pub fn from_subset(group: &AbelianGroup, elements: &[GroupElement]) -> Result<Self> {
        let idx = elements
            .iter()
            .map(|g| group.index_of(g))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_indices(group, &idx))
    }

    pub fn from_coefficients(group: &AbelianGroup, coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() != group.order() {
            return Err(Error::GroupMismatch);
        }
        Ok(GroupRingElement { group: group.clone(), coeffs })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, index: usize) -> &BigInt {
        &self.coeffs[index]
    }

    /// Indices with nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&i| !self.coeffs[i].is_zero()).collect()
    }

    pub fn support_elements(&self) -> Vec<GroupElement> {
        self.support().into_iter().map(|i| self.group.element(i)).collect()
    }

    pub fn is_indicator(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero() || c.is_one())
    }

    /// Sum of coefficients (`|A|` for a subset).
    pub fn weight(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    fn same_group(&self, other: &Self) -> Result<()> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        Ok(GroupRingElement {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        Ok(GroupRingElement {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    /// Product in `Z[G]`.
    pub fn ring_mul(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let mut out = Self::zero(&self.group);
        let rhs = other.support();
        for x in self.support() {
            let a = &self.coeffs[x];
            for &y in &rhs {
                out.coeffs[self.group.add(x, y)] += a * &other.coeffs[y];
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        GroupRingElement {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `A^{(−1)} = Σ a_g g^{−1}`.
    pub fn involution(&self) -> Self {
        self.image_under(|g| self.group.neg(g))
    }

    /// `A^{(t)} = Σ a_g g^t`, defined for `gcd(t, m) = 1`.
    pub fn multiplier_image(&self, t: i64) -> Result<Self> {
        let m = self.group.exponent();
        if m > 1 && (t.rem_euclid(m as i64) as u64).gcd(&m) != 1 {
            return Err(Error::InvalidAutomorphism { t, m });
        }
        Ok(self.image_under(|g| self.group.mul(g, t)))
    }

    /// `g·A`.
    pub fn translate(&self, g: usize) -> Self {
        self.image_under(|x| self.group.add(x, g))
    }

    fn image_under(&self, f: impl Fn(usize) -> usize) -> Self {
        let mut out = Self::zero(&self.group);
        for (x, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.coeffs[f(x)] += c;
            }
        }
        out
    }

    /// `G − A`; for a subset this is its complement.
    pub fn complement(&self) -> Self {
        GroupRingElement {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().map(|c| BigInt::one() - c).collect(),
        }
    }

    /// `χ(A) = Σ a_g χ(g)` for the character with index `chi`.
    pub fn evaluate(&self, chi: usize) -> CycloInt {
        let m = self.group.exponent();
        let mut counts = vec![BigInt::zero(); m as usize];
        for (x, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                counts[self.group.pairing(chi, x) as usize] += c;
            }
        }
        CycloInt::from_exponent_counts_big(m, counts)
    }

    /// `χ(A)` for every character, in character-index order. Characters are
    /// evaluated concurrently.
    pub fn character_values(&self) -> Vec<CycloInt> {
        (0..self.group.order())
            .into_par_iter()
            .map(|chi| self.evaluate(chi))
            .collect()
    }
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .support()
            .into_iter()
            .map(|i| format!("{}·({})", self.coeffs[i], self.group.element(i)))
            .collect();
        write!(f, "Z[{}]{{{}}}", self.group, terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> AbelianGroup {
        AbelianGroup::new(&[n]).unwrap()
    }

    #[test]
    fn involution_of_quadratic_residues() {
        let g = z(7);
        let d = GroupRingElement::from_indices(&g, &[1, 2, 4]);
        assert_eq!(d.involution(), GroupRingElement::from_indices(&g, &[6, 5, 3]));
        assert_eq!(d.involution().involution(), d);
    }

    #[test]
    fn fano_plane_product() {
        // D D^(−1) = 2 + G for the (7,3,1) difference set
        let g = z(7);
        let d = GroupRingElement::from_indices(&g, &[1, 2, 4]);
        let p = d.ring_mul(&d.involution()).unwrap();
        let expected = GroupRingElement::scalar(&g, 2)
            .checked_add(&GroupRingElement::group_sum(&g))
            .unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn multiplier_two_fixes_residues() {
        let g = z(7);
        let d = GroupRingElement::from_indices(&g, &[1, 2, 4]);
        assert_eq!(d.multiplier_image(2).unwrap(), d);
        assert_eq!(d.multiplier_image(-1).unwrap(), d.involution());
        let g12 = z(12);
        let e = GroupRingElement::from_indices(&g12, &[1]);
        assert_eq!(
            e.multiplier_image(4),
            Err(Error::InvalidAutomorphism { t: 4, m: 12 })
        );
    }

    #[test]
    fn group_mismatch() {
        let a = GroupRingElement::scalar(&z(7), 1);
        let b = GroupRingElement::scalar(&z(5), 1);
        assert_eq!(a.ring_mul(&b), Err(Error::GroupMismatch));
        assert_eq!(a.checked_add(&b), Err(Error::GroupMismatch));
    }

    #[test]
    fn evaluation_is_multiplicative() {
        let g = AbelianGroup::new(&[2, 4]).unwrap();
        let a = GroupRingElement::from_coefficients(&g, (0..8).map(|i| BigInt::from(i * 3 % 5) - 2).collect()).unwrap();
        let b = GroupRingElement::from_indices(&g, &[0, 3, 5]);
        let ab = a.ring_mul(&b).unwrap();
        for chi in 0..g.order() {
            assert_eq!(ab.evaluate(chi), &a.evaluate(chi) * &b.evaluate(chi));
            assert_eq!(a.involution().evaluate(chi), a.evaluate(chi).conj());
        }
    }
}
