use std::path::Path;

use num_integer::Roots;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::feasibility::{
    check_odd_prime, check_quad_case, condition_ids, odd_static_items, ConditionReport, OddPrimeParams, QuadCase,
    QuadCaseParams,
};
use crate::number::predicates::is_prime;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SweepCase {
    #[serde(rename = "odd-prime")]
    OddPrime,
    #[serde(rename = "d-2")]
    MinusTwo,
    #[serde(rename = "d-1")]
    MinusOne,
}

impl SweepCase {
    pub fn name(self) -> &'static str {
        match self {
            SweepCase::OddPrime => "odd-prime",
            SweepCase::MinusTwo => "d-2",
            SweepCase::MinusOne => "d-1",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "odd-prime" => Ok(SweepCase::OddPrime),
            "d-2" => Ok(SweepCase::MinusTwo),
            "d-1" => Ok(SweepCase::MinusOne),
            _ => Err(Error::Parse(format!("unknown sweep case {s:?}"))),
        }
    }

    /// Names of the components of a tuple key.
    pub fn key_names(self) -> &'static [&'static str] {
        match self {
            SweepCase::OddPrime => &["p", "x", "s", "alpha", "eta", "gamma"],
            _ => &["u1", "u2", "gamma"],
        }
    }
}

/// Ranges and options for a parameter sweep.
///
/// The odd-prime case uses `primes`, `x_max`, `s_max`, `alpha_max`, `eta_max`
/// and `gamma_max` (`None` means the whole range `1 ≤ γ ≤ p^{s−x} − 1`). The
/// quadratic cases use `u1_min ≤ u₁ ≤ 0`, `1 ≤ u₂ ≤ u2_max` and
/// `1 ≤ γ ≤ gamma_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub case: SweepCase,
    #[serde(default)]
    pub primes: Vec<u64>,
    #[serde(default)]
    pub x_max: u32,
    #[serde(default)]
    pub s_max: u32,
    #[serde(default)]
    pub alpha_max: u64,
    #[serde(default)]
    pub eta_max: u64,
    #[serde(default)]
    pub gamma_max: Option<u64>,
    #[serde(default)]
    pub u1_min: i64,
    #[serde(default)]
    pub u2_max: i64,
    /// Emit tuples whose best ledger has at most this many failures.
    pub threshold: usize,
    /// Values of α (or u₁) per work unit.
    pub chunk: u64,
    /// Worker threads; `None` uses the global pool.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jobs: Option<usize>,
}

impl SweepSpec {
    fn base(case: SweepCase) -> Self {
        SweepSpec {
            case,
            primes: Vec::new(),
            x_max: 0,
            s_max: 0,
            alpha_max: 0,
            eta_max: 0,
            gamma_max: None,
            u1_min: 0,
            u2_max: 0,
            threshold: 0,
            chunk: 25,
            jobs: None,
        }
    }

    /// Desk-scale default ranges.
    pub fn reduced(case: SweepCase) -> Self {
        match case {
            SweepCase::OddPrime => SweepSpec {
                primes: vec![3, 5, 7],
                x_max: 4,
                s_max: 4,
                alpha_max: 300,
                eta_max: 300,
                ..Self::base(case)
            },
            _ => SweepSpec { u1_min: -200, u2_max: 400, gamma_max: Some(500), chunk: 10, ..Self::base(case) },
        }
    }

    /// The large ranges: primes up to 19, exponents up to 10 and the other
    /// bounds at 10⁴. γ is capped at 10⁴ in the odd-prime case too.
    pub fn full(case: SweepCase) -> Self {
        match case {
            SweepCase::OddPrime => SweepSpec {
                primes: vec![3, 5, 7, 11, 13, 17, 19],
                x_max: 10,
                s_max: 10,
                alpha_max: 10_000,
                eta_max: 10_000,
                gamma_max: Some(10_000),
                chunk: 250,
                ..Self::base(case)
            },
            _ => SweepSpec { u1_min: -10_000, u2_max: 10_000, gamma_max: Some(10_000), chunk: 50, ..Self::base(case) },
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::MalformedParameters(m.to_string()));
        if self.chunk == 0 {
            return bad("chunk must be positive");
        }
        if self.jobs == Some(0) {
            return bad("jobs must be positive");
        }
        match self.case {
            SweepCase::OddPrime => {
                if self.primes.is_empty() {
                    return bad("no primes given");
                }
                if let Some(p) = self.primes.iter().find(|&&p| p == 2 || !is_prime(p)) {
                    return Err(Error::MalformedParameters(format!("{p} is not an odd prime")));
                }
                if self.x_max == 0 || self.s_max == 0 || self.alpha_max == 0 || self.eta_max == 0 {
                    return bad("x, s, α and η bounds must be positive");
                }
                if self.s_max > 40 {
                    return bad("s bound above 40 is not supported");
                }
                if self.alpha_max > 1 << 30 || self.eta_max > 1 << 30 {
                    return bad("α and η bounds must be below 2^30");
                }
            }
            _ => {
                if self.u1_min > 0 || self.u2_max < 1 {
                    return bad("need u1_min ≤ 0 and u2_max ≥ 1");
                }
                if self.u1_min < -(1 << 30) || self.u2_max > 1 << 30 {
                    return bad("u bounds must be below 2^30 in absolute value");
                }
                match self.gamma_max {
                    Some(g) if g >= 1 => {}
                    _ => return bad("the quadratic cases need a positive gamma_max"),
                }
            }
        }
        if self.gamma_max == Some(0) {
            return bad("gamma_max must be positive");
        }
        Ok(())
    }
}

/// An emitted tuple with its full report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepHit {
    pub key: Vec<i64>,
    pub report: ConditionReport,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub units_total: usize,
    pub units_run: usize,
    /// Tuples that survived the integrality filters and were checked.
    pub checked: u64,
    pub emitted: u64,
    pub notes: Vec<String>,
}

/// Saved sweep state: the spec plus the key of the last finished work unit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub spec: SweepSpec,
    pub cursor: Option<Vec<i64>>,
}

impl Checkpoint {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }

    /// Writes through a temporary file and a rename.
    pub fn save(&self, path: &Path) -> Result<()> {
        let io = |e: std::io::Error| Error::Parse(format!("{}: {e}", path.display()));
        let tmp = path.with_extension("tmp");
        let text = serde_json::to_string_pretty(self).map_err(|e| Error::Parse(e.to_string()))?;
        std::fs::write(&tmp, text).map_err(io)?;
        std::fs::rename(&tmp, path).map_err(io)
    }
}

/// One work unit: a (p, x, s) cell and an α range, or a u₁ range.
#[derive(Clone, Debug)]
enum Unit {
    Odd { p: u64, x: u32, s: u32, alpha: (u64, u64), pairs: std::sync::Arc<Vec<(u64, u64, u64)>> },
    Quad { case: QuadCase, u1: (i64, i64) },
}

impl Unit {
    /// Largest key the unit can produce.
    fn last_key(&self, spec: &SweepSpec) -> Vec<i64> {
        match self {
            Unit::Odd { p, x, s, alpha, .. } => {
                vec![*p as i64, *x as i64, *s as i64, alpha.1 as i64, spec.eta_max as i64, i64::MAX]
            }
            Unit::Quad { u1, .. } => vec![u1.1, spec.u2_max, i64::MAX],
        }
    }
}

fn pow_u128(p: u64, e: u32) -> Option<u128> {
    (p as u128).checked_pow(e)
}

/// `(α, η, u)` with `4u² = α² + pη²`, sorted.
fn odd_pairs(p: u64, alpha_max: u64, eta_max: u64) -> Vec<(u64, u64, u64)> {
    (1..=alpha_max)
        .into_par_iter()
        .flat_map_iter(|alpha| {
            (1..=eta_max).filter_map(move |eta| {
                let t = alpha as u128 * alpha as u128 + p as u128 * eta as u128 * eta as u128;
                if !t.is_multiple_of(4) {
                    return None;
                }
                let q = t / 4;
                let r = q.sqrt();
                (r * r == q).then_some((alpha, eta, r as u64))
            })
        })
        .collect()
}

fn units(spec: &SweepSpec, notes: &mut Vec<String>) -> Vec<Unit> {
    let mut out = Vec::new();
    match spec.case {
        SweepCase::OddPrime => {
            let mut primes = spec.primes.clone();
            primes.sort_unstable();
            primes.dedup();
            for p in primes {
                if p % 4 != 3 {
                    notes.push(format!("p = {p} is not ≡ 3 (mod 4); the odd-prime case has no tuples for it"));
                    continue;
                }
                let pairs = std::sync::Arc::new(odd_pairs(p, spec.alpha_max, spec.eta_max));
                for x in 1..=spec.x_max {
                    for s in x + 1..=spec.s_max {
                        let mut lo = 1;
                        while lo <= spec.alpha_max {
                            let hi = (lo + spec.chunk - 1).min(spec.alpha_max);
                            out.push(Unit::Odd { p, x, s, alpha: (lo, hi), pairs: pairs.clone() });
                            lo = hi + 1;
                        }
                    }
                }
            }
        }
        SweepCase::MinusTwo | SweepCase::MinusOne => {
            let case = if spec.case == SweepCase::MinusTwo { QuadCase::MinusTwo } else { QuadCase::MinusOne };
            let mut lo = spec.u1_min;
            while lo <= 0 {
                let hi = (lo + spec.chunk as i64 - 1).min(0);
                out.push(Unit::Quad { case, u1: (lo, hi) });
                lo = hi + 1;
            }
        }
    }
    out
}

fn after(key: &[i64], cursor: Option<&[i64]>) -> bool {
    cursor.is_none_or(|c| key > c)
}

struct UnitResult {
    hits: Vec<SweepHit>,
    checked: u64,
}

fn run_odd(
    spec: &SweepSpec,
    (p, x, s): (u64, u32, u32),
    alpha: (u64, u64),
    pairs: &[(u64, u64, u64)],
    cursor: Option<&[i64]>,
) -> Result<UnitResult> {
    let mut res = UnitResult { hits: Vec::new(), checked: 0 };
    let Some(psx) = pow_u128(p, s - x) else { return Ok(res) };
    let g_top = (psx - 1).min(spec.gamma_max.map_or(u128::MAX, u128::from));
    let px = pow_u128(p, x);
    let start = pairs.partition_point(|t| t.0 < alpha.0);
    for &(al, eta, u) in pairs[start..].iter().take_while(|t| t.0 <= alpha.1) {
        // (pˣu − 1)u and (pˣu + 1)u for the cheap divisibility filters.
        let l1l2 = px.and_then(|px| {
            let pu = px.checked_mul(u as u128)?;
            Some(((pu - 1).checked_mul(u as u128)?, (pu + 1).checked_mul(u as u128)?))
        });
        for gamma in 1..=g_top as u64 {
            let key = vec![p as i64, x as i64, s as i64, al as i64, eta as i64, gamma as i64];
            if !after(&key, cursor) {
                continue;
            }
            if spec.threshold == 0 {
                if let Some((t1, t2)) = l1l2 {
                    if t1 % gamma as u128 != 0 || t2 % (psx - gamma as u128) != 0 {
                        continue;
                    }
                }
            }
            let params = OddPrimeParams { p, x, s, alpha: al, eta, gamma };
            let dv = match params.derive() {
                Ok(dv) => dv,
                Err(Error::MalformedParameters(_)) => continue,
                Err(e) => return Err(e),
            };
            let static_fails = odd_static_items(&params, &dv)?.finish(0).fails;
            if static_fails > spec.threshold {
                continue;
            }
            res.checked += 1;
            let report = match check_odd_prime(&params) {
                Ok(r) => r,
                Err(Error::MalformedParameters(_)) => continue,
                Err(e) => return Err(e),
            };
            if report.best_fails() <= spec.threshold {
                res.hits.push(SweepHit { key, report });
            }
        }
    }
    Ok(res)
}

fn run_quad(spec: &SweepSpec, case: QuadCase, u1r: (i64, i64), cursor: Option<&[i64]>) -> Result<UnitResult> {
    let mut res = UnitResult { hits: Vec::new(), checked: 0 };
    let dabs = (-case.d()) as i128;
    let g_top = spec.gamma_max.unwrap_or(1);
    for u1 in u1r.0..=u1r.1 {
        for u2 in 1..=spec.u2_max {
            let n = u1 as i128 * u1 as i128 + dabs * u2 as i128 * u2 as i128;
            let r = n.sqrt();
            if r * r != n {
                continue;
            }
            let delta = 2 * r - 2 * u1 as i128;
            for gamma in 1..=g_top {
                let key = vec![u1, u2, gamma as i64];
                if !after(&key, cursor) {
                    continue;
                }
                let k = r + gamma as i128 * delta;
                let lambda = k - n;
                if lambda <= 0 {
                    continue;
                }
                if let Some(k2) = k.checked_mul(k) {
                    if (k2 - n) % lambda != 0 {
                        continue;
                    }
                }
                let params = QuadCaseParams { case, u1, u2, gamma };
                res.checked += 1;
                let report = match check_quad_case(&params, None) {
                    Ok(r) => r,
                    Err(Error::MalformedParameters(_)) => continue,
                    Err(e) => return Err(e),
                };
                if report.best_fails() <= spec.threshold {
                    res.hits.push(SweepHit { key, report });
                }
            }
        }
    }
    Ok(res)
}

fn run_unit(spec: &SweepSpec, unit: &Unit, cursor: Option<&[i64]>) -> Result<UnitResult> {
    match unit {
        Unit::Odd { p, x, s, alpha, pairs } => run_odd(spec, (*p, *x, *s), *alpha, pairs, cursor),
        Unit::Quad { case, u1 } => run_quad(spec, *case, *u1, cursor),
    }
}

/// Runs a sweep, calling `on_unit` after each finished work unit (in range
/// order) with that unit's hits and its cursor. Units at or before `resume`
/// are skipped. Output does not depend on the thread count.
pub fn sweep_with(
    spec: &SweepSpec,
    resume: Option<&[i64]>,
    mut on_unit: impl FnMut(&[SweepHit], &[i64]) -> Result<()>,
) -> Result<SweepSummary> {
    spec.validate()?;
    let pool = match spec.jobs {
        Some(j) => Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build()
                .map_err(|e| Error::MalformedParameters(e.to_string()))?,
        ),
        None => None,
    };
    let in_pool = |f: &(dyn Fn() -> Vec<Result<UnitResult>> + Sync)| match &pool {
        Some(p) => p.install(f),
        None => f(),
    };
    let mut summary = SweepSummary::default();
    let all = units(spec, &mut summary.notes);
    summary.units_total = all.len();
    let pending: Vec<&Unit> = all.iter().filter(|u| after(&u.last_key(spec), resume)).collect();
    let threads = pool.as_ref().map_or_else(rayon::current_num_threads, |p| p.current_num_threads());
    for group in pending.chunks((threads * 4).max(1)) {
        let results = in_pool(&|| group.par_iter().map(|u| run_unit(spec, u, resume)).collect());
        for (unit, r) in group.iter().zip(results) {
            let r = r?;
            summary.units_run += 1;
            summary.checked += r.checked;
            summary.emitted += r.hits.len() as u64;
            on_unit(&r.hits, &unit.last_key(spec))?;
        }
    }
    Ok(summary)
}

/// Runs a sweep to completion and collects every hit.
pub fn sweep(spec: &SweepSpec) -> Result<(Vec<SweepHit>, SweepSummary)> {
    let mut hits = Vec::new();
    let summary = sweep_with(spec, None, |h, _| {
        hits.extend_from_slice(h);
        Ok(())
    })?;
    Ok((hits, summary))
}

/// CSV header: case, key components, `feasible`, `best_fails`, then one
/// column per condition id.
pub fn csv_header(case: SweepCase) -> Vec<String> {
    let mut h: Vec<String> = vec!["case".into()];
    h.extend(case.key_names().iter().map(|s| s.to_string()));
    h.push("feasible".into());
    h.push("best_fails".into());
    h.extend(condition_ids(case.name()).unwrap_or_default().into_iter().map(String::from));
    h
}

/// A CSV row matching [`csv_header`]. Each condition cell reads
/// `<verdict at d₁=0>/<verdict at d₁=1>`.
pub fn csv_record(case: SweepCase, hit: &SweepHit) -> Vec<String> {
    let mut row = vec![case.name().to_string()];
    row.extend(hit.key.iter().map(|k| k.to_string()));
    row.push(hit.report.feasible.to_string());
    row.push(hit.report.best_fails().to_string());
    for id in condition_ids(case.name()).unwrap_or_default() {
        let cell: Vec<&str> = [0u8, 1]
            .iter()
            .map(|&d1| {
                hit.report
                    .ledger(d1)
                    .and_then(|l| l.item(id))
                    .map_or("-", |i| i.verdict.as_str())
            })
            .collect();
        row.push(cell.join("/"));
    }
    row
}
