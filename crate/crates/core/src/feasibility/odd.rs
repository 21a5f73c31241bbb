use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::number::predicates::{divides, exactly_divides, is_prime, pow, prime_set};
use crate::number::{exact_quotient, perfect_square_root, quad_divides, QuadInt};

use super::general::{Base, GeneralParams};
use super::{ConditionReport, Ledger};

/// Parameters of the `d = −p` case, `p ≡ 3 (mod 4)`, with `a = pˣ(−α + η√−p)/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OddPrimeParams {
    pub p: u64,
    pub x: u32,
    pub s: u32,
    pub alpha: u64,
    pub eta: u64,
    pub gamma: u64,
}

/// Everything that follows from [`OddPrimeParams`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddPrimeDerived {
    pub u: BigInt,
    pub sqrt_n: BigInt,
    pub n: BigInt,
    pub lambda: BigInt,
    pub k: BigInt,
    pub w: BigInt,
    pub v: BigInt,
    pub a: QuadInt,
}

impl OddPrimeParams {
    /// `u` with `4u² = α² + pη²`, if integral.
    pub fn u(&self) -> Option<BigInt> {
        let four_u2 = BigInt::from(self.alpha).pow(2) + BigInt::from(self.p) * BigInt::from(self.eta).pow(2);
        let (q, r) = four_u2.div_rem(&BigInt::from(4));
        if !r.is_zero() {
            return None;
        }
        perfect_square_root(&q)
    }

    /// Derives `(u, √n, n, λ, k, w, v, a)`; fails unless `u`, `λ` and `w`
    /// are positive integers.
    pub fn derive(&self) -> Result<OddPrimeDerived> {
        let bad = |m: String| Error::MalformedParameters(m);
        let p = self.p;
        if !is_prime(p) || p % 4 != 3 {
            return Err(bad(format!("p = {p} is not a prime ≡ 3 (mod 4)")));
        }
        if self.eta == 0 || self.gamma == 0 {
            return Err(bad("η and γ must be positive".into()));
        }
        let u = self
            .u()
            .ok_or_else(|| bad("α² + pη² is not 4u² for an integer u".into()))?;
        if self.s <= self.x {
            return Err(bad(format!("need s > x, got s = {}, x = {}", self.s, self.x)));
        }
        let px = pow(p, self.x);
        let psx = pow(p, self.s - self.x);
        let gamma = BigInt::from(self.gamma);
        let den = &psx - &gamma;
        if !den.is_positive() {
            return Err(bad(format!("γ = {gamma} must be below p^(s−x) = {psx}")));
        }
        let sqrt_n = &px * &u;
        let n = &sqrt_n * &sqrt_n;
        let lambda = exact_quotient(&((&sqrt_n + 1) * &u * &px * &gamma), &den)
            .ok_or_else(|| bad("λ is not an integer".into()))?;
        let k = &n + &lambda;
        let w = exact_quotient(&(&k - &sqrt_n), &(&px * &gamma)).ok_or_else(|| bad("w is not an integer".into()))?;
        if !w.is_positive() || !lambda.is_positive() {
            return Err(bad("λ and w must be positive".into()));
        }
        let v = pow(p, self.s) * &w;
        let half = |z: BigInt| BigRational::new(z, BigInt::from(2));
        let a = QuadInt::new(
            -(p as i64),
            half(-(&px * BigInt::from(self.alpha))),
            half(&px * BigInt::from(self.eta)),
        )?;
        Ok(OddPrimeDerived { u, sqrt_n, n, lambda, k, w, v, a })
    }
}

impl OddPrimeDerived {
    /// `w` by its two-term closed form, for cross-checking.
    pub fn w_closed_form(&self, params: &OddPrimeParams) -> BigRational {
        let px = pow(params.p, params.x);
        let psx = pow(params.p, params.s - params.x);
        let g = BigInt::from(params.gamma);
        BigRational::new((&px * &self.u - 1) * &self.u, g.clone())
            + BigRational::new((&px * &self.u + 1) * &self.u, psx - g)
    }

    /// `k` by its closed form `(pˢu + γ)u·pˣ/(p^{s−x} − γ)`.
    pub fn k_closed_form(&self, params: &OddPrimeParams) -> BigRational {
        let px = pow(params.p, params.x);
        let psx = pow(params.p, params.s - params.x);
        let g = BigInt::from(params.gamma);
        BigRational::new((pow(params.p, params.s) * &self.u + &g) * &self.u * px, psx - g)
    }
}

/// Parameter-only items of the odd-prime case that need no `d₁`. They are
/// cheap and shared with the sweep's prefilter.
pub(crate) fn odd_static_items(params: &OddPrimeParams, dv: &OddPrimeDerived) -> Result<Ledger> {
    let OddPrimeParams { p, x, s, alpha, eta, gamma } = *params;
    let px = pow(p, x);
    let psx = pow(p, s - x);
    let u = &dv.u;
    let g = BigInt::from(gamma);
    let al = BigInt::from(alpha);
    let et = BigInt::from(eta);
    let trace = dv.a.trace().to_integer();
    let amab = dv.a.checked_sub(&dv.a.conj())?;
    let k_minus = &dv.k - &dv.sqrt_n;
    let k_plus = &dv.k + &dv.sqrt_n;
    let delta = &dv.sqrt_n * 2 - &trace;
    let mut l = Ledger::default();

    l.check("S3.C6a", "pˣ ‖ (a + ā)", exactly_divides(&trace, p, x), format!("a+ā={trace}"));
    let pxq = QuadInt::from_ints(-(p as i64), px.clone(), 0)?;
    l.check("S3.C6b", "pˣ | (a − ā)", quad_divides(&pxq, &amab)?, format!("a−ā={amab}"));
    l.check("S3.C6c", "pˣ | k", divides(&px, &dv.k), format!("k={}", dv.k));
    l.check("S3.C6d", "s ≥ x + 1", s > x, format!("s={s}, x={x}"));
    l.check("S3.C7", "x ≥ 1", x >= 1, format!("x={x}"));
    l.check("S3.C8a", "pˣ ‖ k", exactly_divides(&dv.k, p, x), format!("k={}", dv.k));
    l.check("S3.C8b", "pˣ ‖ (k − √n)", exactly_divides(&k_minus, p, x), format!("k−√n={k_minus}"));
    l.check("S3.C8c", "pˢ ‖ (k + √n)", exactly_divides(&k_plus, p, s), format!("k+√n={k_plus}"));
    l.check(
        "S3.C8d",
        "Δ | pˣw",
        divides(&delta, &(&px * &dv.w)),
        format!("Δ={delta}, pˣw={}", &px * &dv.w),
    );
    let gam = exact_quotient(&k_minus, &(&px * &dv.w));
    l.check(
        "S3.GAM",
        "γ = (k − √n)/(pˣw) is an integer coprime to p",
        gam.as_ref().is_some_and(|q| !divides(&BigInt::from(p), q)),
        format!("γ={}", gam.map_or("non-integral".to_string(), |q| q.to_string())),
    );
    let t1 = (&px * u - 1) * u;
    l.check("S3.L1", "γ | (pˣu − 1)u", divides(&g, &t1), format!("(pˣu−1)u={t1}"));
    let t2 = (&px * u + 1) * u;
    let den = &psx - &g;
    l.check("S3.L2", "(p^{s−x} − γ) | (pˣu + 1)u", divides(&den, &t2), format!("p^(s−x)−γ={den}, (pˣu+1)u={t2}"));
    let t3 = u * 2 + &al;
    l.check("S3.L3", "(2u + α) | w", divides(&t3, &dv.w), format!("2u+α={t3}, w={}", dv.w));
    let t4 = &px * (u * 2 - &al);
    l.check("S3.L4", "p^{s−x} | pˣ(2u − α)", divides(&psx, &t4), format!("pˣ(2u−α)={t4}"));
    let t5 = &psx * &dv.w;
    l.check("S3.L5", "η | p^{s−x}w", divides(&et, &t5), format!("η={eta}, p^(s−x)w={t5}"));
    l.check("S3.L6", "u + γ ≤ p^{s−x}", u + &g <= psx, format!("u+γ={}", u + &g));
    let pw = prime_set(&dv.w);
    let mut pe = prime_set(&et);
    pe.remove(&BigInt::from(p));
    let fmt_set = |s: &std::collections::BTreeSet<BigInt>| {
        s.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(",")
    };
    l.check(
        "S3.L7",
        "π(w) = π(η) ∖ {p}",
        pw == pe,
        format!("π(w)={{{}}}, π(η)∖{{p}}={{{}}}", fmt_set(&pw), fmt_set(&pe)),
    );
    let lhs = u * u * 4;
    let rhs = &al * &al + BigInt::from(p) * &et * &et;
    l.check("S3.L8", "4u² = α² + pη²", lhs == rhs, format!("4u²={lhs}"));
    l.check(
        "S3.L9",
        "s ≥ x + 1, x ≥ 1, α ≥ 1",
        s > x && x >= 1 && alpha >= 1,
        format!("s={s}, x={x}, α={alpha}"),
    );
    Ok(l)
}

fn odd_d1_items(params: &OddPrimeParams, dv: &OddPrimeDerived, d1: u8) -> Ledger {
    let p = BigInt::from(params.p);
    let d1b = BigInt::from(d1);
    let k_minus = &dv.k - &dv.sqrt_n;
    let r3 = &dv.w * (&d1b - &dv.sqrt_n) - &k_minus;
    let r4 = &dv.w * &dv.sqrt_n - &d1b + &k_minus;
    let pm1 = &p - 1;
    let half = &pm1 / 2;
    let mut l = Ledger::default();
    l.check(
        "S3.R3",
        "(p − 1) | (w(d₁ − √n) − (k − √n))",
        divides(&pm1, &r3),
        format!("value={r3}, mod {pm1} = {}", r3.mod_floor(&pm1)),
    );
    l.check(
        "S3.R4",
        "(p − 1)/2 | (w√n − d₁ + (k − √n))",
        divides(&half, &r4),
        format!("value={r4}, mod {half} = {}", r4.mod_floor(&half)),
    );
    l
}

/// The odd-prime case: every general condition plus the case-specific ones,
/// for `d₁ ∈ {0, 1}`.
pub fn check_odd_prime(params: &OddPrimeParams) -> Result<ConditionReport> {
    let dv = params.derive()?;
    let general = GeneralParams {
        p: params.p,
        v: dv.v.clone(),
        k: dv.k.clone(),
        n: dv.n.clone(),
        a: dv.a.clone(),
    };
    let base = Base::new(&general, None)?;
    let ledgers = base.ledgers(|d1| {
        let mut l = odd_static_items(params, &dv)?;
        l.extend(odd_d1_items(params, &dv, d1));
        Ok(l)
    })?;
    let mut map = base.param_map();
    map.insert("x".into(), params.x.to_string());
    map.insert("alpha".into(), params.alpha.to_string());
    map.insert("eta".into(), params.eta.to_string());
    map.insert("gamma".into(), params.gamma.to_string());
    map.insert("u".into(), dv.u.to_string());
    map.insert("s".into(), params.s.to_string());
    let mut report = ConditionReport::new("odd-prime", map, ledgers);
    report.notes.push("S3.R3 and S3.R4 use d₁ and √n, with a the value of positive imaginary part".into());
    Ok(report)
}
