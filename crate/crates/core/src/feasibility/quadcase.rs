use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::group::{two_rank_data, AbelianGroup};
use crate::number::predicates::pow;
use crate::number::{exact_quotient, perfect_square_root, QuadInt};

use super::general::{Base, GeneralParams};
use super::{ConditionReport, Ledger};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QuadCase {
    /// `d = −2`.
    MinusTwo,
    /// `d = −1`.
    MinusOne,
}

impl QuadCase {
    pub fn d(self) -> i64 {
        match self {
            QuadCase::MinusTwo => -2,
            QuadCase::MinusOne => -1,
        }
    }

    pub fn from_d(d: i64) -> Result<Self> {
        match d {
            -2 => Ok(QuadCase::MinusTwo),
            -1 => Ok(QuadCase::MinusOne),
            _ => Err(Error::MalformedParameters(format!("d = {d} is neither −1 nor −2"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            QuadCase::MinusTwo => "d-2",
            QuadCase::MinusOne => "d-1",
        }
    }

    /// `l ≤ 2^{s−drop}`.
    fn drop(self) -> u32 {
        match self {
            QuadCase::MinusTwo => 2,
            QuadCase::MinusOne => 1,
        }
    }
}

/// `a = u₁ + u₂√d` with `k = √n + γΔ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadCaseParams {
    pub case: QuadCase,
    pub u1: i64,
    pub u2: i64,
    pub gamma: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadCaseDerived {
    pub n: BigInt,
    pub sqrt_n: BigInt,
    pub a: QuadInt,
    pub delta: BigInt,
    pub k: BigInt,
    pub lambda: BigInt,
    pub v: BigInt,
    pub s: u32,
    pub w: BigInt,
}

impl QuadCaseParams {
    pub fn n(&self) -> BigInt {
        let d = self.case.d();
        BigInt::from(self.u1).pow(2) + BigInt::from(-d) * BigInt::from(self.u2).pow(2)
    }

    pub fn derive(&self) -> Result<QuadCaseDerived> {
        let bad = |m: String| Error::MalformedParameters(m);
        if self.u1 > 0 || self.u2 < 1 || self.gamma < 1 {
            return Err(bad("need u₁ ≤ 0, u₂ ≥ 1, γ ≥ 1".into()));
        }
        let n = self.n();
        let sqrt_n = perfect_square_root(&n).ok_or_else(|| bad(format!("n = {n} is not a perfect square")))?;
        let a = QuadInt::from_ints(self.case.d(), self.u1, self.u2)?;
        let delta = &sqrt_n * 2 - BigInt::from(self.u1) * 2;
        let k = &sqrt_n + BigInt::from(self.gamma) * &delta;
        let lambda: BigInt = &k - &n;
        if !lambda.is_positive() {
            return Err(bad(format!("λ = k − n = {lambda} is not positive")));
        }
        let v = exact_quotient(&(&k * &k - &n), &lambda).ok_or_else(|| bad("v = (k² − n)/λ is not an integer".into()))?;
        let s = v.trailing_zeros().unwrap_or(0) as u32;
        let w = &v >> s;
        Ok(QuadCaseDerived { n, sqrt_n, a, delta, k, lambda, v, s, w })
    }
}

/// Powers of two `l` with `2 ≤ l ≤ 2^{max_exp}` and `√n + (k − √n)l/v ≤ l`.
pub fn feasible_l_values(sqrt_n: &BigInt, k: &BigInt, v: &BigInt, max_exp: u32) -> Vec<BigInt> {
    (1..=max_exp)
        .map(|e| pow(2, e))
        .filter(|l| {
            let lhs = BigRational::from_integer(sqrt_n.clone()) + BigRational::new((k - sqrt_n) * l, v.clone());
            lhs <= BigRational::from_integer(l.clone())
        })
        .collect()
}

/// The `d = −2` or `d = −1` case: general conditions plus the bound on `l`,
/// the least order of a subgroup `N` for which `exp(G/N)` is strictly
/// divisible by 4 (`d = −2`) or by 2 (`d = −1`).
pub fn check_quad_case(params: &QuadCaseParams, group: Option<&AbelianGroup>) -> Result<ConditionReport> {
    let dv = params.derive()?;
    let case = params.case;
    let general = GeneralParams { p: 2, v: dv.v.clone(), k: dv.k.clone(), n: dv.n.clone(), a: dv.a.clone() };
    let base = Base::new(&general, group)?;
    let max_exp = dv.s.saturating_sub(case.drop());
    let ls = feasible_l_values(&dv.sqrt_n, &dv.k, &dv.v, max_exp);
    let (id_exp, id_set, id_grp, exp_stmt, set_stmt, grp_stmt) = match case {
        QuadCase::MinusTwo => (
            "S4.EXP8",
            "8 | exp(G), so s ≥ 3",
            "S4.LSET",
            "some power of two l, 2 ≤ l ≤ 2^{s−2}, has √n + (k − √n)/(v/l) ≤ l",
            "S4.LGRP",
            "the least |N| with exp(G/N) strictly divisible by 4 satisfies √n + (k − √n)/(v/l) ≤ l",
        ),
        QuadCase::MinusOne => (
            "S5.EXP4",
            "4 | exp(G), so s ≥ 2",
            "S5.LSET",
            "some power of two l, 2 ≤ l ≤ 2^{s−1}, has √n + (k − √n)/(v/l) ≤ l",
            "S5.LGRP",
            "the least |N| with exp(G/N) strictly divisible by 2 satisfies √n + (k − √n)/(v/l) ≤ l",
        ),
    };
    let min_s = case.drop() + 1;
    let specific = || {
        let mut l = Ledger::default();
        l.check(id_exp, exp_stmt, dv.s >= min_s, format!("s={}", dv.s));
        l.check(
            id_set,
            set_stmt,
            !ls.is_empty(),
            match ls.first() {
                Some(first) => format!("least l={first}, max l=2^{max_exp}"),
                None => format!("no l up to 2^{max_exp}"),
            },
        );
        match group {
            Some(g) => {
                let data = two_rank_data(g);
                let l_group = match case {
                    QuadCase::MinusTwo => data.l_strict4,
                    QuadCase::MinusOne => data.l_strict2,
                };
                match l_group {
                    Some(lv) => {
                        let lv = BigInt::from(lv);
                        let ok = feasible_l_values(&dv.sqrt_n, &dv.k, &dv.v, 64).contains(&lv);
                        l.check(id_grp, grp_stmt, ok, format!("l={lv}"));
                    }
                    None => l.check(id_grp, grp_stmt, false, "no such subgroup N"),
                }
            }
            None => l.skip(id_grp, grp_stmt, "no group supplied"),
        }
        l
    };
    let ledgers = base.ledgers(|_| Ok(specific()))?;
    let mut map = base.param_map();
    map.insert("u1".into(), params.u1.to_string());
    map.insert("u2".into(), params.u2.to_string());
    map.insert("gamma".into(), params.gamma.to_string());
    map.insert("delta".into(), dv.delta.to_string());
    let mut report = ConditionReport::new(case.name(), map, ledgers);
    if let Some(first) = ls.first() {
        let top = pow(2, max_exp);
        report.notes.push(format!("least feasible l = {first}"));
        if case == QuadCase::MinusTwo && *first == top && dv.s >= min_s {
            report.notes.push(format!(
                "cyclic-sylow-exclusion: least feasible l = 2^{max_exp} = 2^(s−2) forces a cyclic Sylow 2-subgroup, which Turyn's exponent bound rules out"
            ));
        }
    }
    Ok(report)
}
