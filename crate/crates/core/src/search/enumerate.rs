use std::collections::BTreeSet;

use crate::design::{spectrum, GroupRingElement, SpectrumReport};
use crate::error::{Error, Result};
use crate::group::AbelianGroup;

/// A request for all `(v, k, λ)` difference sets in a group.
#[derive(Clone, Debug)]
pub struct EnumSpec {
    pub group: AbelianGroup,
    pub k: usize,
    pub lambda: usize,
    /// Keep one representative per translation class.
    pub up_to_translation: bool,
    /// Keep only sets with exactly three nonprincipal character values.
    pub require_three_valued: bool,
}

impl EnumSpec {
    pub fn new(group: AbelianGroup, k: usize, lambda: usize) -> Self {
        EnumSpec { group, k, lambda, up_to_translation: false, require_three_valued: false }
    }

    pub fn up_to_translation(mut self, on: bool) -> Self {
        self.up_to_translation = on;
        self
    }

    pub fn three_valued(mut self, on: bool) -> Self {
        self.require_three_valued = on;
        self
    }

    fn validate(&self) -> Result<()> {
        let v = self.group.order();
        let (k, lambda) = (self.k as u128, self.lambda as u128);
        if self.k > v {
            return Err(Error::ParameterInconsistent(format!("k = {} exceeds v = {v}", self.k)));
        }
        if k * k.saturating_sub(1) != lambda * (v as u128 - 1) {
            return Err(Error::ParameterInconsistent(format!(
                "k(k−1) = {} but λ(v−1) = {}",
                k * k.saturating_sub(1),
                lambda * (v as u128 - 1)
            )));
        }
        Ok(())
    }
}

struct Search<'a> {
    group: &'a AbelianGroup,
    k: usize,
    lambda: u32,
    counts: Vec<u32>,
    chosen: Vec<usize>,
    found: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Adds `x`, returning false (and undoing nothing) if a count would exceed λ.
    fn push(&mut self, x: usize) -> bool {
        let mut touched = Vec::with_capacity(2 * self.chosen.len());
        let mut ok = true;
        for &y in &self.chosen {
            for diff in [self.group.sub(x, y), self.group.sub(y, x)] {
                self.counts[diff] += 1;
                touched.push(diff);
                if self.counts[diff] > self.lambda {
                    ok = false;
                }
            }
            if !ok {
                break;
            }
        }
        if !ok {
            for d in touched {
                self.counts[d] -= 1;
            }
            return false;
        }
        self.chosen.push(x);
        true
    }

    fn pop(&mut self) {
        let x = self.chosen.pop().expect("pop on empty selection");
        for &y in &self.chosen {
            self.counts[self.group.sub(x, y)] -= 1;
            self.counts[self.group.sub(y, x)] -= 1;
        }
    }

    fn run(&mut self, next: usize) {
        if self.chosen.len() == self.k {
            self.found.push(self.chosen.clone());
            return;
        }
        let v = self.group.order();
        let need = self.k - self.chosen.len();
        for x in next..=v.saturating_sub(need) {
            if self.push(x) {
                self.run(x + 1);
                self.pop();
            }
        }
    }
}

fn sorted_translate(group: &AbelianGroup, set: &[usize], g: usize) -> Vec<usize> {
    let mut t: Vec<usize> = set.iter().map(|&x| group.add(x, g)).collect();
    t.sort_unstable();
    t
}

/// Least translate, as a sorted index list.
fn canonical_translate(group: &AbelianGroup, set: &[usize]) -> Vec<usize> {
    group_indices(group)
        .map(|g| sorted_translate(group, set, g))
        .min()
        .unwrap_or_default()
}

fn group_indices(group: &AbelianGroup) -> std::ops::Range<usize> {
    0..group.order()
}

/// Sets containing the identity, one per translation class, as sorted index lists.
fn representatives(spec: &EnumSpec) -> Vec<Vec<usize>> {
    let group = &spec.group;
    if spec.k == 0 {
        return vec![Vec::new()];
    }
    let mut s = Search {
        group,
        k: spec.k,
        lambda: spec.lambda as u32,
        counts: vec![0; group.order()],
        chosen: Vec::new(),
        found: Vec::new(),
    };
    s.push(0);
    s.run(1);
    let mut reps: Vec<Vec<usize>> = s
        .found
        .iter()
        .map(|d| canonical_translate(group, d))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    reps.sort();
    reps
}

/// Every translate of each set, deduplicated and sorted.
pub fn expand_translates(sets: &[GroupRingElement]) -> Vec<GroupRingElement> {
    let Some(first) = sets.first() else {
        return Vec::new();
    };
    let group = first.group().clone();
    let all: BTreeSet<Vec<usize>> = sets
        .iter()
        .flat_map(|d| {
            let support = d.support();
            group_indices(&group).map(move |g| sorted_translate(d.group(), &support, g))
        })
        .collect();
    all.into_iter().map(|s| GroupRingElement::from_indices(&group, &s)).collect()
}

/// All `(v, k, λ)` difference sets of the group, in ascending order of their
/// sorted index lists. Backtracking never lets a difference occur more than
/// λ times.
pub fn enumerate_difference_sets(spec: &EnumSpec) -> Result<Vec<GroupRingElement>> {
    spec.validate()?;
    let group = &spec.group;
    let reps: Vec<GroupRingElement> =
        representatives(spec).iter().map(|s| GroupRingElement::from_indices(group, s)).collect();
    let pool = if spec.up_to_translation { reps } else { expand_translates(&reps) };
    if !spec.require_three_valued {
        return Ok(pool);
    }
    Ok(find_three_valued(spec)?.into_iter().map(|t| t.set).collect())
}

/// A three-valued instance with its spectrum. When `c = −√n` the complement
/// is attached, which has `c = +√n`.
#[derive(Clone, Debug)]
pub struct ThreeValuedInstance {
    pub set: GroupRingElement,
    pub spectrum: SpectrumReport,
    pub normalized: Option<(GroupRingElement, SpectrumReport)>,
}

/// Difference sets with exactly three nonprincipal character values. The
/// spectrum is not translation invariant, so every translate is examined;
/// with `up_to_translation` only the first hit of each class is kept.
pub fn find_three_valued(spec: &EnumSpec) -> Result<Vec<ThreeValuedInstance>> {
    spec.validate()?;
    let group = &spec.group;
    let reps = representatives(spec);
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    let all = expand_translates(&reps.iter().map(|s| GroupRingElement::from_indices(group, s)).collect::<Vec<_>>());
    for d in all {
        let sp = spectrum(&d)?;
        let Some(tv) = sp.three_valued.as_ref() else { continue };
        if spec.up_to_translation && !seen.insert(canonical_translate(group, &d.support())) {
            continue;
        }
        let normalized = if tv.c_is_positive_root {
            None
        } else {
            let comp = d.complement();
            let csp = spectrum(&comp)?;
            Some((comp, csp))
        };
        out.push(ThreeValuedInstance { set: d, spectrum: sp, normalized });
    }
    Ok(out)
}
