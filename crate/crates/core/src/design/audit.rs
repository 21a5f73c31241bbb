use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{annihilator, Character, GroupElement, Subgroup};
use crate::number::predicates::factorize_u64;

use super::{concrete_profile, spectrum, verify_difference_set, GroupRingElement};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Hypotheses {
    /// `v = 4n` and `a + ā = 0`.
    pub hadamard: bool,
    /// `G` is a `p`-group.
    pub p_group: bool,
    /// `M = U_c ∪ {χ₀}` is a subgroup of `Ĝ`.
    pub m_subgroup: bool,
}

impl Hypotheses {
    pub fn any(&self) -> bool {
        self.hadamard || self.p_group || self.m_subgroup
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditCheck {
    pub name: &'static str,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub applicable: bool,
    pub reason: Option<String>,
    pub hypotheses: Hypotheses,
    /// `m` with `v = 2^{2m}` when the parameters are in the family.
    pub m: Option<u32>,
    /// `H = D + D^(−1) − G`, when it is a set.
    pub h: Option<Vec<GroupElement>>,
    pub m_set: Vec<Character>,
    pub checks: Vec<AuditCheck>,
}

impl AuditReport {
    fn not_applicable(reason: impl Into<String>) -> Self {
        AuditReport {
            applicable: false,
            reason: Some(reason.into()),
            hypotheses: Hypotheses::default(),
            m: None,
            h: None,
            m_set: Vec::new(),
            checks: Vec::new(),
        }
    }
}

/// `m ≥ 1` with `(v, k, λ) = (2^{2m}, 2^{2m−1} + 2^{m−1}, 2^{2m−2} + 2^{m−1})`.
pub fn hadamard_family_index(v: &BigInt, k: &BigInt, lambda: &BigInt) -> Option<u32> {
    let bits = v.bits();
    if bits < 3 || !(bits - 1).is_multiple_of(2) || *v != BigInt::one() << (bits - 1) {
        return None;
    }
    let m = ((bits - 1) / 2) as u32;
    let pow = |e: u32| BigInt::one() << e;
    (*k == pow(2 * m - 1) + pow(m - 1) && *lambda == pow(2 * m - 2) + pow(m - 1)).then_some(m)
}

/// Detects the structural hypotheses for a three-valued difference set and,
/// when any holds, checks every consequence: the parameter family, `H` a
/// subgroup of order `2√n`, `H^⊥ = M`, the Hadamard table rows and `d₁ = 1`.
pub fn special_case_audit(d: &GroupRingElement) -> Result<AuditReport> {
    let verdict = verify_difference_set(d);
    if !verdict.is_ds {
        return Ok(AuditReport::not_applicable("not a difference set"));
    }
    let spec = spectrum(d)?;
    let Some(tv) = spec.three_valued.as_ref() else {
        return Ok(AuditReport::not_applicable(format!(
            "spectrum has {} values",
            spec.size()
        )));
    };
    if !tv.c_is_positive_root {
        return Ok(AuditReport::not_applicable("c = −√n; audit the complement"));
    }
    let group = d.group();
    let v = group.order();
    let n = verdict.n.clone().expect("difference set has an order");
    let lambda = verdict.lambda.clone().expect("difference set has λ");

    let m_indices: Vec<usize> = std::iter::once(0)
        .chain(spec.values[tv.c_index].character_indices.iter().copied())
        .collect();
    let m_group = Subgroup::from_elements(group, &m_indices).ok();
    let hypotheses = Hypotheses {
        hadamard: verdict.v == &n * 4 && tv.a.trace().is_zero(),
        p_group: v > 1 && factorize_u64(v as u64).len() == 1,
        m_subgroup: m_group.is_some(),
    };
    let mut report = AuditReport {
        applicable: hypotheses.any(),
        reason: None,
        hypotheses,
        m: None,
        h: None,
        m_set: m_indices.iter().map(|&i| group.character(i)).collect(),
        checks: Vec::new(),
    };
    if !hypotheses.any() {
        report.reason = Some("no structural hypothesis holds".into());
        return Ok(report);
    }

    report.m = hadamard_family_index(&verdict.v, &verdict.k, &lambda);
    let h = d
        .checked_add(&d.involution())?
        .checked_sub(&GroupRingElement::group_sum(group))?;
    let h_is_set = h.is_indicator();
    let h_sub = h_is_set.then(|| Subgroup::from_elements(group, &h.support()).ok()).flatten();
    let sqrt_n = tv.c.clone();
    let perp_ok = match (&h_sub, &m_group) {
        (Some(hs), Some(mg)) => annihilator(hs).elements() == mg.elements(),
        _ => false,
    };
    let profile = concrete_profile(d)?;
    let table2_ok = profile
        .table2
        .as_ref()
        .is_some_and(|rows| rows.iter().all(|r| r.mismatches == 0));
    report.h = h_is_set.then(|| h.support_elements());
    report.checks = vec![
        AuditCheck { name: "family", holds: report.m.is_some() },
        AuditCheck { name: "h-is-set", holds: h_is_set },
        AuditCheck { name: "h-subgroup", holds: h_sub.is_some() },
        AuditCheck {
            name: "h-order",
            holds: h_sub.as_ref().is_some_and(|s| BigInt::from(s.order()) == &sqrt_n * 2),
        },
        AuditCheck { name: "h-perp-is-m", holds: perp_ok },
        AuditCheck { name: "table2", holds: table2_ok },
        AuditCheck { name: "d1-is-one", holds: d.coeff(0).is_one() },
        AuditCheck { name: "table1", holds: profile.all_rows_match() && profile.counts_match },
    ];
    let failed: Vec<&str> = report.checks.iter().filter(|c| !c.holds).map(|c| c.name).collect();
    if !failed.is_empty() {
        return Err(Error::TheoremViolation(format!(
            "hypotheses {:?} hold but checks failed: {}",
            hypotheses,
            failed.join(", ")
        )));
    }
    Ok(report)
}
