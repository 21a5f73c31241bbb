use std::collections::HashSet;

use super::{smith_normal_form, AbelianGroup, GroupElement};
use crate::error::{Error, Result};

/// A subgroup with its generators and sorted element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    group: AbelianGroup,
    generators: Vec<usize>,
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn generated_by(group: &AbelianGroup, generators: &[usize]) -> Self {
        let v = group.order();
        let mut member = vec![false; v];
        member[0] = true;
        let mut elements = vec![0usize];
        for &g in generators {
            // adjoin the cosets S + k·g until one falls back into S
            let mut frontier = elements.clone();
            loop {
                let next: Vec<usize> = frontier.iter().map(|&x| group.add(x, g)).collect();
                if member[next[0]] {
                    break;
                }
                for &x in &next {
                    member[x] = true;
                }
                elements.extend_from_slice(&next);
                frontier = next;
            }
        }
        elements.sort_unstable();
        Subgroup {
            group: group.clone(),
            generators: generators.to_vec(),
            elements,
        }
    }

    pub fn generated_by_elements(group: &AbelianGroup, generators: &[GroupElement]) -> Result<Self> {
        let idx = generators
            .iter()
            .map(|g| group.index_of(g))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::generated_by(group, &idx))
    }

    /// Wraps an element set, checking that it is a subgroup.
    pub fn from_elements(group: &AbelianGroup, elements: &[usize]) -> Result<Self> {
        let mut sorted = elements.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if !is_subgroup(group, &sorted) {
            return Err(Error::ContractViolation(
                "element set is not closed under the group law".into(),
            ));
        }
        // greedy generating set
        let mut generators = Vec::new();
        let mut span = Self::trivial(group);
        for &x in &sorted {
            if !span.contains(x) {
                generators.push(x);
                span = Self::generated_by(group, &generators);
            }
        }
        Ok(span)
    }

    pub fn trivial(group: &AbelianGroup) -> Self {
        Self::generated_by(group, &[])
    }

    pub fn whole(group: &AbelianGroup) -> Self {
        let gens: Vec<usize> = (0..group.rank())
            .map(|i| {
                let mut c = vec![0; group.rank()];
                c[i] = 1;
                group.index_of(&GroupElement { coords: c }).expect("basis vector")
            })
            .collect();
        Self::generated_by(group, &gens)
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    /// Isomorphism type of the subgroup in invariant-factor form.
    pub fn as_group(&self) -> AbelianGroup {
        group_from_order_profile(&self.element_order_profile())
    }

    /// Element orders of all members (used to identify the isomorphism type).
    fn element_order_profile(&self) -> Vec<u64> {
        self.elements.iter().map(|&x| self.group.element_order_of(x)).collect()
    }
}

/// Reconstructs the invariant factors of a finite abelian group from the
/// multiset of its element orders.
fn group_from_order_profile(orders: &[u64]) -> AbelianGroup {
    use crate::number::predicates::factorize_u64;
    use std::collections::BTreeMap;
    // For each prime p, the number of elements of order dividing p^j
    // determines the p-primary part.
    let mut primes: BTreeMap<u64, u32> = BTreeMap::new();
    for &o in orders {
        for (p, e) in factorize_u64(o) {
            let slot = primes.entry(p).or_insert(0);
            *slot = (*slot).max(e);
        }
    }
    let mut cyclic_parts = Vec::new();
    for (&p, &top) in &primes {
        // n_j = #{x : p^j-part of ord(x) divides p^j}, restricted to p-elements
        let count = |j: u32| -> usize {
            orders
                .iter()
                .filter(|&&o| {
                    let mut pe = 1u64;
                    let mut x = o;
                    while x % p == 0 {
                        x /= p;
                        pe *= p;
                    }
                    x == 1 && pe <= p.pow(j)
                })
                .count()
        };
        // log_p n_j − log_p n_{j−1} = number of cyclic factors of order ≥ p^j
        let log_p = |mut n: usize| {
            let mut k = 0u32;
            while n > 1 {
                n /= p as usize;
                k += 1;
            }
            k
        };
        let logs: Vec<u32> = (0..=top).map(|j| log_p(count(j))).collect();
        let at_least: Vec<u32> = (1..=top).map(|j| logs[j as usize] - logs[j as usize - 1]).collect();
        for j in 1..=top {
            let ge_j = at_least[j as usize - 1];
            let ge_next = if j < top { at_least[j as usize] } else { 0 };
            for _ in 0..(ge_j - ge_next) {
                cyclic_parts.push(p.pow(j));
            }
        }
    }
    AbelianGroup::new(&cyclic_parts).expect("prime powers are at least 2")
}

fn is_subgroup(group: &AbelianGroup, sorted: &[usize]) -> bool {
    if sorted.first() != Some(&0) {
        return false;
    }
    let set: HashSet<usize> = sorted.iter().copied().collect();
    sorted
        .iter()
        .all(|&x| sorted.iter().all(|&y| set.contains(&group.sub(x, y))))
}

/// `H^⊥ = {χ : χ(h) = 1 for all h ∈ H}`, as a subgroup of `Ĝ ≅ G`.
pub fn annihilator(h: &Subgroup) -> Subgroup {
    let g = &h.group;
    let elems: Vec<usize> = (0..g.order())
        .filter(|&chi| h.generators.iter().all(|&x| g.pairing(chi, x) == 0))
        .collect();
    Subgroup::from_elements(g, &elems).expect("an annihilator is a subgroup")
}

/// Every subgroup of `within` (itself a subgroup of its group), found by
/// breadth-first extension one element at a time.
pub fn all_subgroups(within: &Subgroup) -> Vec<Subgroup> {
    let g = &within.group;
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let start = Subgroup::trivial(g);
    seen.insert(start.elements.clone());
    let mut queue = vec![start];
    let mut head = 0;
    while head < queue.len() {
        let h = queue[head].clone();
        head += 1;
        for &x in &within.elements {
            if h.contains(x) {
                continue;
            }
            let mut gens = h.generators.clone();
            gens.push(x);
            let k = Subgroup::generated_by(g, &gens);
            if seen.insert(k.elements.clone()) {
                queue.push(k);
            }
        }
    }
    queue
}

/// `G/N` in canonical form together with the projection of every element.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: AbelianGroup,
    /// `projection[i]` is the index in `group` of the image of element `i`.
    pub projection: Vec<usize>,
}

impl Quotient {
    pub fn project(&self, source: &AbelianGroup, g: &GroupElement) -> Result<GroupElement> {
        Ok(self.group.element(self.projection[source.index_of(g)?]))
    }
}

pub fn quotient_map(group: &AbelianGroup, n: &Subgroup) -> Result<Quotient> {
    if n.group != *group {
        return Err(Error::GroupMismatch);
    }
    let r = group.rank();
    let mut relations: Vec<Vec<i128>> = (0..r)
        .map(|i| (0..r).map(|j| if i == j { group.factors()[i] as i128 } else { 0 }).collect())
        .collect();
    for &x in &n.generators {
        relations.push(group.element(x).coords.iter().map(|&c| c as i128).collect());
    }
    let snf = smith_normal_form(relations, r);
    let keep: Vec<usize> = (0..r).filter(|&j| snf.diagonal[j] != 1).collect();
    let factors: Vec<u64> = keep.iter().map(|&j| snf.diagonal[j] as u64).collect();
    let quotient = AbelianGroup::from_canonical(factors);
    let projection = (0..group.order())
        .map(|i| {
            let x = group.element(i);
            let coords: Vec<u64> = keep
                .iter()
                .map(|&j| {
                    let y: i128 = x
                        .coords
                        .iter()
                        .enumerate()
                        .map(|(k, &c)| c as i128 * snf.transform[k][j])
                        .sum();
                    y.rem_euclid(snf.diagonal[j]) as u64
                })
                .collect();
            quotient.index_of(&GroupElement { coords }).expect("reduced coordinates")
        })
        .collect();
    Ok(Quotient { group: quotient, projection })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(f: &[u64]) -> AbelianGroup {
        AbelianGroup::new(f).unwrap()
    }

    fn idx(grp: &AbelianGroup, c: &[u64]) -> usize {
        grp.index_of(&GroupElement { coords: c.to_vec() }).unwrap()
    }

    #[test]
    fn generated_subgroups() {
        let z44 = g(&[4, 4]);
        let h = Subgroup::generated_by(&z44, &[idx(&z44, &[2, 0]), idx(&z44, &[0, 2])]);
        assert_eq!(h.order(), 4);
        assert_eq!(Subgroup::whole(&z44).order(), 16);
        assert_eq!(Subgroup::trivial(&z44).order(), 1);
        assert!(Subgroup::from_elements(&z44, &[0, 1]).is_err());
    }

    #[test]
    fn annihilator_examples() {
        let z44 = g(&[4, 4]);
        assert_eq!(annihilator(&Subgroup::trivial(&z44)).order(), 16);
        assert_eq!(annihilator(&Subgroup::whole(&z44)).elements(), &[0]);
        let h = Subgroup::generated_by(&z44, &[idx(&z44, &[2, 0]), idx(&z44, &[0, 2])]);
        let perp = annihilator(&h);
        assert_eq!(perp.order(), 4);
        assert_eq!(perp.elements(), h.elements());
    }

    #[test]
    fn double_annihilator_is_identity() {
        for f in [vec![2, 2, 2], vec![2, 4], vec![4, 4], vec![2, 8], vec![3, 3], vec![2, 2, 4], vec![6], vec![2, 12], vec![2, 2, 2, 2], vec![32], vec![2, 2, 8], vec![2, 16]] {
            let grp = g(&f);
            for h in all_subgroups(&Subgroup::whole(&grp)) {
                let perp = annihilator(&h);
                assert_eq!(perp.order() * h.order(), grp.order(), "{f:?}");
                assert_eq!(annihilator(&perp).elements(), h.elements(), "{f:?}");
            }
        }
    }

    #[test]
    fn subgroup_counts() {
        // known counts: Z2^3 has 16 subgroups, Z4⊕Z4 has 15, Z2⊕Z4 has 8
        assert_eq!(all_subgroups(&Subgroup::whole(&g(&[2, 2, 2]))).len(), 16);
        assert_eq!(all_subgroups(&Subgroup::whole(&g(&[4, 4]))).len(), 15);
        assert_eq!(all_subgroups(&Subgroup::whole(&g(&[2, 4]))).len(), 8);
        assert_eq!(all_subgroups(&Subgroup::whole(&g(&[12]))).len(), 6);
    }

    #[test]
    fn quotient_examples() {
        let z44 = g(&[4, 4]);
        let q = quotient_map(&z44, &Subgroup::whole(&z44)).unwrap();
        assert_eq!(q.group.order(), 1);
        let n = Subgroup::generated_by(&z44, &[idx(&z44, &[2, 2])]);
        let q = quotient_map(&z44, &n).unwrap();
        assert_eq!(q.group.order(), 8);
        assert_eq!(q.group.factors(), &[2, 4]);
        let z12 = g(&[12]);
        let n = Subgroup::generated_by(&z12, &[idx(&z12, &[4])]);
        assert_eq!(n.order(), 3);
        let q = quotient_map(&z12, &n).unwrap();
        assert_eq!(q.group.factors(), &[4]);
    }

    #[test]
    fn quotient_is_a_homomorphism_with_kernel_n() {
        for f in [vec![4, 4], vec![2, 8], vec![2, 2, 4], vec![6, 12]] {
            let grp = g(&f);
            for n in all_subgroups(&Subgroup::whole(&grp)) {
                let q = quotient_map(&grp, &n).unwrap();
                assert_eq!(q.group.order() * n.order(), grp.order());
                for x in 0..grp.order() {
                    assert_eq!(q.projection[x] == 0, n.contains(x));
                    for y in (0..grp.order()).step_by(3) {
                        assert_eq!(
                            q.projection[grp.add(x, y)],
                            q.group.add(q.projection[x], q.projection[y])
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn subgroup_isomorphism_type() {
        let grp = g(&[4, 8]);
        let h = Subgroup::generated_by(&grp, &[idx(&grp, &[2, 0]), idx(&grp, &[0, 2])]);
        assert_eq!(h.as_group().factors(), &[2, 4]);
        assert_eq!(Subgroup::whole(&g(&[2, 12])).as_group().factors(), &[2, 12]);
    }
}
