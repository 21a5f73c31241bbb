//! Finite abelian groups in invariant-factor form, their elements,
//! characters, subgroups and quotients.
//!
//! Elements are addressed by a dense index: the mixed-radix encoding of the
//! coordinate vector with the last coordinate varying fastest, so index order
//! is lexicographic coordinate order. Characters use the same coordinates
//! (`Ĝ ≅ G`): the character with exponent vector `e` sends `g` to
//! `ζ_m^{Σ e_i·g_i·(m/d_i)}`.

mod smith;
mod subgroup;
mod sylow;

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::number::predicates::factorize_u64;
use crate::number::CycloInt;

pub use subgroup::{all_subgroups, annihilator, quotient_map, Quotient, Subgroup};
pub use sylow::{sylow_decompose, two_rank_data, SylowDecomposition, TwoRankData, TwoRankMethod};

pub(crate) use smith::smith_normal_form;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct AbelianGroup {
    factors: Vec<u64>,
}

/// A group element given by its coordinates `coords[i] ∈ [0, d_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    pub coords: Vec<u64>,
}

/// A character, by its exponent vector in the identification `Ĝ ≅ G`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Character {
    pub exps: Vec<u64>,
}

impl AbelianGroup {
    /// Builds a group from any direct-product presentation `Z_{n_1} ⊕ …`,
    /// normalizing to invariant factors by collecting prime powers.
    pub fn new(factors: &[u64]) -> Result<Self> {
        if let Some(&bad) = factors.iter().find(|&&f| f < 2) {
            return Err(Error::InvalidFactor(bad));
        }
        let mut powers: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for &f in factors {
            for (p, e) in factorize_u64(f) {
                powers.entry(p).or_default().push(p.pow(e));
            }
        }
        let rank = powers.values().map(Vec::len).max().unwrap_or(0);
        let mut canonical = vec![1u64; rank];
        for list in powers.values_mut() {
            list.sort_unstable();
            // largest powers go to the last (largest) factor
            for (slot, q) in canonical.iter_mut().rev().zip(list.iter().rev()) {
                *slot *= q;
            }
        }
        Ok(AbelianGroup { factors: canonical })
    }

    pub fn trivial() -> Self {
        AbelianGroup { factors: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        if n == 1 {
            Ok(Self::trivial())
        } else {
            Self::new(&[n])
        }
    }

    /// Parses a comma-separated factor list such as `"4,4"`; `"1"` and the
    /// empty string give the trivial group.
    pub fn parse(literal: &str) -> Result<Self> {
        Ok(Presentation::parse(literal)?.group().clone())
    }

    pub(crate) fn from_canonical(factors: Vec<u64>) -> Self {
        debug_assert!(factors.windows(2).all(|w| w[1] % w[0] == 0));
        debug_assert!(factors.iter().all(|&f| f >= 2));
        AbelianGroup { factors }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// `v`.
    pub fn order(&self) -> usize {
        self.factors.iter().product::<u64>() as usize
    }

    /// `m`, the largest invariant factor (1 for the trivial group).
    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { coords: vec![0; self.rank()] }
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.coords.len() == self.rank() && g.coords.iter().zip(&self.factors).all(|(c, d)| c < d)
    }

    pub fn index_of(&self, g: &GroupElement) -> Result<usize> {
        if !self.contains(g) {
            return Err(Error::ForeignElement(g.coords.clone()));
        }
        Ok(g.coords
            .iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (c, d)| acc * *d as usize + *c as usize))
    }

    pub fn element(&self, mut index: usize) -> GroupElement {
        let mut coords = vec![0; self.rank()];
        for (slot, d) in coords.iter_mut().zip(&self.factors).rev() {
            *slot = (index % *d as usize) as u64;
            index /= *d as usize;
        }
        GroupElement { coords }
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order()).map(|i| self.element(i))
    }

    /// Reduces arbitrary integer coordinates into the group.
    pub fn reduce(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(Error::ForeignElement(coords.iter().map(|&c| c as u64).collect()));
        }
        Ok(GroupElement {
            coords: coords
                .iter()
                .zip(&self.factors)
                .map(|(&c, &d)| c.rem_euclid(d as i64) as u64)
                .collect(),
        })
    }

    /// Index of `g + h`.
    pub fn add(&self, g: usize, h: usize) -> usize {
        self.combine(g, h, |a, b, d| (a + b) % d)
    }

    /// Index of `g − h`.
    pub fn sub(&self, g: usize, h: usize) -> usize {
        self.combine(g, h, |a, b, d| (a + d - b) % d)
    }

    /// Index of `−g`.
    pub fn neg(&self, g: usize) -> usize {
        self.sub(0, g)
    }

    /// Index of `t·g` for any integer `t`.
    pub fn mul(&self, g: usize, t: i64) -> usize {
        let mut x = g;
        let mut out = 0usize;
        let mut weight = 1usize;
        for &d in self.factors.iter().rev() {
            let d = d as usize;
            let c = (x % d) as i64;
            x /= d;
            out += ((c * t).rem_euclid(d as i64) as usize) * weight;
            weight *= d;
        }
        out
    }

    fn combine(&self, g: usize, h: usize, op: impl Fn(usize, usize, usize) -> usize) -> usize {
        let (mut x, mut y) = (g, h);
        let mut out = 0usize;
        let mut weight = 1usize;
        for &d in self.factors.iter().rev() {
            let d = d as usize;
            out += op(x % d, y % d, d) * weight;
            x /= d;
            y /= d;
            weight *= d;
        }
        out
    }

    /// Least `n ≥ 1` with `n·g = 0`.
    pub fn element_order(&self, g: &GroupElement) -> u64 {
        g.coords
            .iter()
            .zip(&self.factors)
            .fold(1u64, |acc, (&c, &d)| acc.lcm(&(d / c.gcd(&d))))
    }

    pub fn element_order_of(&self, index: usize) -> u64 {
        self.element_order(&self.element(index))
    }

    pub fn character(&self, index: usize) -> Character {
        Character { exps: self.element(index).coords }
    }

    pub fn character_index(&self, chi: &Character) -> Result<usize> {
        self.index_of(&GroupElement { coords: chi.exps.clone() })
    }

    /// The exponent `j ∈ Z_m` with `χ(g) = ζ_m^j`, for element and character
    /// indices.
    pub fn pairing(&self, chi: usize, g: usize) -> u64 {
        let m = self.exponent();
        let (mut x, mut y) = (chi, g);
        let mut acc = 0u64;
        for &d in self.factors.iter().rev() {
            let du = d as usize;
            let (e, c) = ((x % du) as u64, (y % du) as u64);
            x /= du;
            y /= du;
            acc = (acc + e * c % d * (m / d)) % m;
        }
        acc
    }

    /// `χ(g)` as an element of `Z[ζ_m]`.
    pub fn evaluate(&self, chi: &Character, g: &GroupElement) -> Result<CycloInt> {
        let c = self.character_index(chi)?;
        let e = self.index_of(g)?;
        Ok(CycloInt::zeta_pow(self.exponent(), self.pairing(c, e) as i64))
    }
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbelianGroup({self})")
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.factors.iter().map(u64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl From<AbelianGroup> for Vec<u64> {
    fn from(g: AbelianGroup) -> Self {
        g.factors
    }
}

impl TryFrom<Vec<u64>> for AbelianGroup {
    type Error = Error;
    fn try_from(factors: Vec<u64>) -> Result<Self> {
        let g = AbelianGroup::new(&factors)?;
        if g.factors != factors {
            return Err(Error::Parse(format!(
                "factors {factors:?} are not in invariant-factor form"
            )));
        }
        Ok(g)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(u64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl GroupElement {
    /// Parses comma-separated coordinates such as `"1,2"`.
    pub fn parse(literal: &str) -> Result<Self> {
        let literal = literal.trim();
        if literal.is_empty() {
            return Ok(GroupElement { coords: Vec::new() });
        }
        literal
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad coordinate {c:?} in {literal:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(|coords| GroupElement { coords })
    }
}

/// A group given by an arbitrary list of cyclic factors, with the
/// isomorphism onto its invariant-factor form.
///
/// Coordinates typed by a user refer to the factors as written (`"2,4,3"`);
/// [`Presentation::map`] carries them to canonical coordinates.
#[derive(Debug, Clone)]
pub struct Presentation {
    written: Vec<u64>,
    group: AbelianGroup,
    /// Column transform restricted to the nonunit invariant factors.
    transform: Vec<Vec<i128>>,
}

impl Presentation {
    pub fn new(written: &[u64]) -> Result<Self> {
        if let Some(&bad) = written.iter().find(|&&f| f < 2) {
            return Err(Error::InvalidFactor(bad));
        }
        let r = written.len();
        let relations: Vec<Vec<i128>> = (0..r)
            .map(|i| (0..r).map(|j| if i == j { written[i] as i128 } else { 0 }).collect())
            .collect();
        let snf = smith_normal_form(relations, r);
        let keep: Vec<usize> = (0..r).filter(|&j| snf.diagonal[j] != 1).collect();
        let factors: Vec<u64> = keep.iter().map(|&j| snf.diagonal[j] as u64).collect();
        let transform = snf
            .transform
            .iter()
            .map(|row| keep.iter().map(|&j| row[j]).collect())
            .collect();
        Ok(Presentation {
            written: written.to_vec(),
            group: AbelianGroup::from_canonical(factors),
            transform,
        })
    }

    pub fn parse(literal: &str) -> Result<Self> {
        let literal = literal.trim();
        if literal.is_empty() || literal == "1" {
            return Self::new(&[]);
        }
        let factors = literal
            .split(',')
            .map(|f| {
                f.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad group factor {f:?} in {literal:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&factors)
    }

    pub fn written_factors(&self) -> &[u64] {
        &self.written
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    /// Maps coordinates in the written presentation to the canonical group.
    pub fn map(&self, g: &GroupElement) -> Result<GroupElement> {
        if g.coords.len() != self.written.len()
            || g.coords.iter().zip(&self.written).any(|(c, d)| c >= d)
        {
            return Err(Error::ForeignElement(g.coords.clone()));
        }
        let coords = self
            .group
            .factors
            .iter()
            .enumerate()
            .map(|(j, &d)| {
                let y: i128 = g
                    .coords
                    .iter()
                    .zip(&self.transform)
                    .map(|(&c, row)| c as i128 * row[j])
                    .sum();
                y.rem_euclid(d as i128) as u64
            })
            .collect();
        Ok(GroupElement { coords })
    }
}
