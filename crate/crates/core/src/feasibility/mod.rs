//! Necessary conditions for three-valued difference sets, evaluated on
//! parameter sets and reported as itemized ledgers.

mod general;
mod odd;
mod quadcase;
mod special;

use std::collections::BTreeMap;

use serde::Serialize;

pub use general::{check_general, GeneralParams};
pub use odd::{check_odd_prime, OddPrimeDerived, OddPrimeParams};
pub(crate) use odd::odd_static_items;
pub use quadcase::{check_quad_case, feasible_l_values, QuadCase, QuadCaseDerived, QuadCaseParams};
pub use special::{check_special_hadamard, SpecialHypothesis, SpecialVerdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl From<bool> for Verdict {
    fn from(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "not-applicable",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Item {
    pub id: &'static str,
    pub statement: &'static str,
    pub verdict: Verdict,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct D1Ledger {
    pub d1: u8,
    pub items: Vec<Item>,
    pub fails: usize,
}

impl D1Ledger {
    pub(crate) fn new(d1: u8, items: Vec<Item>) -> Self {
        let fails = items.iter().filter(|i| i.verdict == Verdict::Fail).count();
        D1Ledger { d1, items, fails }
    }

    pub fn item(&self, id: &str) -> Option<&Item> {
        self.items.iter().find(|i| i.id == id)
    }

    pub fn failing_ids(&self) -> Vec<&'static str> {
        self.items.iter().filter(|i| i.verdict == Verdict::Fail).map(|i| i.id).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub case: &'static str,
    /// Input and derived parameters as exact decimal strings.
    pub params: BTreeMap<String, String>,
    pub d1_ledgers: Vec<D1Ledger>,
    pub feasible: bool,
    pub notes: Vec<String>,
}

impl ConditionReport {
    pub(crate) fn new(case: &'static str, params: BTreeMap<String, String>, d1_ledgers: Vec<D1Ledger>) -> Self {
        let feasible = d1_ledgers.iter().any(|l| l.fails == 0);
        ConditionReport { case, params, d1_ledgers, feasible, notes: Vec::new() }
    }

    pub fn ledger(&self, d1: u8) -> Option<&D1Ledger> {
        self.d1_ledgers.iter().find(|l| l.d1 == d1)
    }

    /// Fewest failures over the `d₁` choices.
    pub fn best_fails(&self) -> usize {
        self.d1_ledgers.iter().map(|l| l.fails).min().unwrap_or(0)
    }

    pub fn param(&self, key: &str) -> Option<&str> {
        self.params.get(key).map(String::as_str)
    }
}

/// Accumulates ledger items.
#[derive(Default)]
pub(crate) struct Ledger {
    items: Vec<Item>,
}

impl Ledger {
    pub(crate) fn check(&mut self, id: &'static str, statement: &'static str, ok: bool, witness: impl Into<String>) {
        self.items.push(Item { id, statement, verdict: ok.into(), witness: witness.into() });
    }

    pub(crate) fn skip(&mut self, id: &'static str, statement: &'static str, why: impl Into<String>) {
        self.items.push(Item { id, statement, verdict: Verdict::NotApplicable, witness: why.into() });
    }

    pub(crate) fn extend(&mut self, other: Ledger) {
        self.items.extend(other.items);
    }

    pub(crate) fn finish(self, d1: u8) -> D1Ledger {
        D1Ledger::new(d1, self.items)
    }
}

const GENERAL_IDS: &[&str] = &[
    "S2.L1", "S2.L2", "S2.C1a", "S2.C1b", "S2.C1c", "S2.C1d", "S2.C2", "S2.C3a", "S2.C3b", "S2.C3c", "S2.C3d",
    "S2.C4", "S2.C5", "S2.UA", "S2.UC", "S2.INT", "S2.P23", "S2.P24R1", "S2.P24R2",
];
const ODD_IDS: &[&str] = &[
    "S3.C6a", "S3.C6b", "S3.C6c", "S3.C6d", "S3.C7", "S3.C8a", "S3.C8b", "S3.C8c", "S3.C8d", "S3.GAM", "S3.L1",
    "S3.L2", "S3.L3", "S3.L4", "S3.L5", "S3.L6", "S3.L7", "S3.L8", "S3.L9", "S3.R3", "S3.R4",
];
const MINUS_TWO_IDS: &[&str] = &["S4.EXP8", "S4.LSET", "S4.LGRP"];
const MINUS_ONE_IDS: &[&str] = &["S5.EXP4", "S5.LSET", "S5.LGRP"];

/// Ledger ids, in ledger order, for a case name (`general`, `odd-prime`,
/// `d-2`, `d-1`). Unknown names give `None`.
pub fn condition_ids(case: &str) -> Option<Vec<&'static str>> {
    let extra: &[&str] = match case {
        "general" => &[],
        "odd-prime" => ODD_IDS,
        "d-2" => MINUS_TWO_IDS,
        "d-1" => MINUS_ONE_IDS,
        _ => return None,
    };
    Some(GENERAL_IDS.iter().chain(extra).copied().collect())
}
