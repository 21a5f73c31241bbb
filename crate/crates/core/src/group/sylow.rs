use serde::Serialize;

use super::{all_subgroups, AbelianGroup, GroupElement, Subgroup};

#[derive(Debug, Clone)]
pub struct SylowDecomposition {
    pub p: u64,
    /// `G_p`, of order `p^s`.
    pub sylow: Subgroup,
    /// `W`, of order `w` coprime to `p`.
    pub complement: Subgroup,
    pub s: u32,
    pub w: u64,
}

/// `G = G_p × W` for a prime `p`.
pub fn sylow_decompose(group: &AbelianGroup, p: u64) -> SylowDecomposition {
    let r = group.rank();
    let mut sylow_gens = Vec::with_capacity(r);
    let mut complement_gens = Vec::with_capacity(r);
    let mut s = 0u32;
    for (i, &d) in group.factors().iter().enumerate() {
        let mut p_part = 1u64;
        while d % (p_part * p) == 0 {
            p_part *= p;
            s += 1;
        }
        let basis = |scale: u64| {
            let mut coords = vec![0; r];
            coords[i] = scale % d;
            group.index_of(&GroupElement { coords }).expect("in range")
        };
        sylow_gens.push(basis(d / p_part));
        complement_gens.push(basis(p_part));
    }
    let sylow = Subgroup::generated_by(group, &sylow_gens);
    let complement = Subgroup::generated_by(group, &complement_gens);
    let w = complement.order() as u64;
    SylowDecomposition { p, sylow, complement, s, w }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TwoRankMethod {
    /// Every subgroup of the Sylow 2-subgroup was examined.
    Exhaustive,
    /// Sylow 2-subgroup too large to enumerate; invariant-factor formulas.
    InvariantFactors,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TwoRankData {
    /// Largest `t` such that some `N` of order `2^{s−t}` leaves an
    /// elementary abelian Sylow 2-subgroup in `G/N`.
    pub rk2: u32,
    /// Least `|N|` with `exp(G/N)` strictly divisible by 4.
    pub l_strict4: Option<u64>,
    /// Least `|N|` with `exp(G/N)` strictly divisible by 2.
    pub l_strict2: Option<u64>,
    pub method: TwoRankMethod,
}

/// Above this Sylow 2-subgroup order the subgroup lattice is not enumerated.
pub const EXHAUSTIVE_SYLOW2_LIMIT: usize = 64;

pub fn two_rank_data(group: &AbelianGroup) -> TwoRankData {
    let dec = sylow_decompose(group, 2);
    if dec.sylow.order() > EXHAUSTIVE_SYLOW2_LIMIT {
        return two_rank_closed_form(group);
    }
    let g2 = &dec.sylow;
    let mut rk2 = 0u32;
    let mut l4: Option<u64> = None;
    let mut l2: Option<u64> = None;
    for n in all_subgroups(g2) {
        let q = quotient_exponent(group, g2, &n);
        let index = (g2.order() / n.order()) as u64;
        if q <= 2 {
            rk2 = rk2.max(index.trailing_zeros());
        }
        let size = n.order() as u64;
        if q == 4 {
            l4 = Some(l4.map_or(size, |cur| cur.min(size)));
        }
        if q == 2 {
            l2 = Some(l2.map_or(size, |cur| cur.min(size)));
        }
    }
    TwoRankData { rk2, l_strict4: l4, l_strict2: l2, method: TwoRankMethod::Exhaustive }
}

/// Exponent of `G_2 / N`.
fn quotient_exponent(group: &AbelianGroup, g2: &Subgroup, n: &Subgroup) -> u64 {
    g2.elements()
        .iter()
        .map(|&x| {
            let mut t = 1u64;
            let mut y = x;
            while !n.contains(y) {
                y = group.add(y, x);
                t += 1;
            }
            t
        })
        .max()
        .unwrap_or(1)
}

/// The same data read off the invariant factors: with `G_2 ≅ ⊕ Z_{2^{e_i}}`,
/// `rk2` is the number of `e_i ≥ 1`, `l_strict4 = |4·G_2|` and
/// `l_strict2 = |2·G_2|` whenever those quotients have the required exponent.
pub fn two_rank_closed_form(group: &AbelianGroup) -> TwoRankData {
    let exps: Vec<u32> = group
        .factors()
        .iter()
        .map(|d| d.trailing_zeros())
        .filter(|&e| e > 0)
        .collect();
    let rk2 = exps.len() as u32;
    let l4 = exps
        .iter()
        .any(|&e| e >= 2)
        .then(|| exps.iter().map(|&e| 1u64 << e.saturating_sub(2)).product());
    let l2 = (!exps.is_empty()).then(|| exps.iter().map(|&e| 1u64 << (e - 1)).product());
    TwoRankData { rk2, l_strict4: l4, l_strict2: l2, method: TwoRankMethod::InvariantFactors }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(f: &[u64]) -> AbelianGroup {
        AbelianGroup::new(f).unwrap()
    }

    #[test]
    fn sylow_examples() {
        let d = sylow_decompose(&g(&[12]), 2);
        assert_eq!((d.s, d.w), (2, 3));
        assert_eq!(d.sylow.as_group().factors(), &[4]);
        assert_eq!(d.complement.as_group().factors(), &[3]);
        let d = sylow_decompose(&g(&[4, 4]), 2);
        assert_eq!((d.s, d.w, d.sylow.order()), (4, 1, 16));
        let d = sylow_decompose(&g(&[7]), 2);
        assert_eq!((d.s, d.w, d.sylow.order()), (0, 7, 1));
    }

    #[test]
    fn sylow_orders_are_coprime_and_multiply_to_v() {
        for f in [vec![12], vec![2, 6], vec![6, 36], vec![2, 2, 30], vec![5], vec![4, 4]] {
            let grp = g(&f);
            for p in [2u64, 3, 5, 7] {
                let d = sylow_decompose(&grp, p);
                let (a, b) = (d.sylow.order(), d.complement.order());
                assert_eq!(a * b, grp.order());
                assert_eq!(num_integer::Integer::gcd(&a, &b), 1);
                assert_eq!(a, p.pow(d.s) as usize);
            }
        }
    }

    #[test]
    fn two_rank_examples() {
        assert_eq!(two_rank_data(&g(&[8, 2])).rk2, 2);
        assert_eq!(two_rank_data(&g(&[8])).l_strict4, Some(2));
        assert_eq!(two_rank_data(&g(&[4, 4])).l_strict2, Some(4));
        assert_eq!(two_rank_data(&g(&[2, 2])).l_strict4, None);
        assert_eq!(two_rank_data(&g(&[7])).l_strict2, None);
        assert_eq!(two_rank_data(&g(&[7])).rk2, 0);
    }

    #[test]
    fn exhaustive_matches_invariant_factor_formulas() {
        for f in [vec![2], vec![4], vec![8], vec![16], vec![2, 2], vec![2, 4], vec![4, 4], vec![2, 8], vec![2, 2, 2], vec![2, 2, 4], vec![4, 8], vec![2, 16], vec![2, 2, 2, 2], vec![12], vec![6, 12], vec![3]] {
            let grp = g(&f);
            let mut exhaustive = two_rank_data(&grp);
            assert_eq!(exhaustive.method, TwoRankMethod::Exhaustive);
            exhaustive.method = TwoRankMethod::InvariantFactors;
            assert_eq!(exhaustive, two_rank_closed_form(&grp), "{f:?}");
        }
    }
}
