use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::design::{quantities, ProfileParams, Quantities};
use crate::error::{Error, Result};
use crate::group::{two_rank_data, AbelianGroup};
use crate::number::predicates::{divides, is_prime, legendre, pow, prime_set};
use crate::number::{exact_quotient, ord_p, perfect_square_root, quad_divides, QuadInt};

use super::{ConditionReport, D1Ledger, Ledger};

/// `(p, v, k, n, a)` for the general conditions; `p` is the prime of the
/// discriminant of `Q(a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralParams {
    pub p: u64,
    pub v: BigInt,
    pub k: BigInt,
    pub n: BigInt,
    pub a: QuadInt,
}

/// Validated inputs plus the quantities every condition draws on.
pub(crate) struct Base {
    pub params: GeneralParams,
    pub lambda: BigInt,
    pub sqrt_n: BigInt,
    pub trace: BigInt,
    pub s: u32,
    pub ps: BigInt,
    pub w: BigInt,
    pub two_rank: Option<u32>,
}

fn rat(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

impl Base {
    pub(crate) fn new(params: &GeneralParams, group: Option<&AbelianGroup>) -> Result<Self> {
        let bad = |m: String| Error::MalformedParameters(m);
        let GeneralParams { p, v, k, n, a } = params;
        if !is_prime(*p) {
            return Err(bad(format!("p = {p} is not prime")));
        }
        if v <= &BigInt::one() || !k.is_positive() || k >= v {
            return Err(bad(format!("need 0 < k < v and v > 1, got v = {v}, k = {k}")));
        }
        let sqrt_n = perfect_square_root(n).ok_or_else(|| bad(format!("n = {n} is not a perfect square")))?;
        if !a.is_integral() {
            return Err(bad(format!("a = {a} is not an algebraic integer")));
        }
        if a.norm() != rat(n) {
            return Err(bad(format!("a·ā = {} ≠ n = {n}", a.norm())));
        }
        if a.is_rational() || a.d() > 0 {
            return Err(bad(format!("a = {a} is real")));
        }
        let lambda = exact_quotient(&(k * (k - 1)), &(v - 1))
            .ok_or_else(|| bad(format!("k(k−1) = {} is not a multiple of v−1", k * (k - 1))))?;
        if &(k - &lambda) != n {
            return Err(bad(format!("n = {n} but k − λ = {}", k - &lambda)));
        }
        let s = ord_p(v, *p);
        let ps = pow(*p, s);
        let w = v / &ps;
        let trace = a.trace().to_integer();
        let two_rank = match group {
            Some(g) => {
                if BigInt::from(g.order()) != *v {
                    return Err(bad(format!("group of order {} for v = {v}", g.order())));
                }
                Some(two_rank_data(g).rk2)
            }
            None => None,
        };
        Ok(Base { params: params.clone(), lambda, sqrt_n, trace, s, ps, w, two_rank })
    }

    pub(crate) fn quantities(&self, d1: u8) -> Result<Quantities> {
        quantities(&ProfileParams {
            v: self.params.v.clone(),
            k: self.params.k.clone(),
            n: self.params.n.clone(),
            a: self.params.a.clone(),
            d1,
        })
    }

    pub(crate) fn param_map(&self) -> BTreeMap<String, String> {
        let p = &self.params;
        let mut m = BTreeMap::new();
        m.insert("p".into(), p.p.to_string());
        m.insert("v".into(), p.v.to_string());
        m.insert("k".into(), p.k.to_string());
        m.insert("lambda".into(), self.lambda.to_string());
        m.insert("n".into(), p.n.to_string());
        m.insert("sqrt_n".into(), self.sqrt_n.to_string());
        m.insert("a".into(), p.a.to_string());
        m.insert("d".into(), p.a.d().to_string());
        m.insert("s".into(), self.s.to_string());
        m.insert("w".into(), self.w.to_string());
        if let Some(r) = self.two_rank {
            m.insert("rk2".into(), r.to_string());
        }
        m
    }

    /// The general items for one value of `d₁`.
    pub(crate) fn items(&self, d1: u8) -> Result<Ledger> {
        let GeneralParams { p, v, k, a, .. } = &self.params;
        let p = *p;
        let d = a.d();
        let sn = &self.sqrt_n;
        let q = self.quantities(d1)?;
        let delta = q.delta.to_integer();
        let k_minus = k - sn;
        let mut l = Ledger::default();

        let disc_ok = (d == -(p as i64) && p % 4 == 3) || (p == 2 && (d == -1 || d == -2));
        l.check(
            "S2.L1",
            "the discriminant of Q(a) has the single prime divisor p",
            disc_ok,
            format!("d={d}, p={p}"),
        );
        l.check(
            "S2.L2",
            "a + ā = 0 implies d = −1",
            !self.trace.is_zero() || d == -1,
            format!("a+ā={}, d={d}", self.trace),
        );

        l.check("S2.C1a", "Δ | v", divides(&delta, v), format!("Δ={delta}, v={v}"));
        l.check("S2.C1b", "Δ | (k − √n)", divides(&delta, &k_minus), format!("Δ={delta}, k−√n={k_minus}"));
        let amab = &q.a_minus_abar;
        let sn_q = QuadInt::rational(d, rat(sn))?;
        let lhs = amab.scale(&q.delta);
        let rhs = sn_q.checked_sub(a)?.scale(&rat(v));
        l.check(
            "S2.C1c",
            "(a − ā)Δ | v(√n − a) in the ring of integers",
            quad_divides(&lhs, &rhs)?,
            format!("(a−ā)Δ={lhs}, v(√n−a)={rhs}"),
        );
        let vq = QuadInt::rational(d, rat(v))?;
        l.check(
            "S2.C1d",
            "(a − ā) | v in the ring of integers",
            quad_divides(amab, &vq)?,
            format!("a−ā={amab}, v={v}"),
        );

        let two_sn_tr = sn * 2 + &self.trace;
        let c2 = &k_minus * &two_sn_tr;
        l.check("S2.C2", "v | (k − √n)(2√n + a + ā)", divides(v, &c2), format!("(k−√n)(2√n+a+ā)={c2}, v={v}"));

        let w = &self.w;
        l.check("S2.C3a", "w | (k − √n)", divides(w, &k_minus), format!("w={w}, k−√n={k_minus}"));
        let bound = rat(sn) + BigRational::new(k_minus.clone(), w.clone());
        l.check(
            "S2.C3b",
            "√n + (k − √n)/w ≤ p^s",
            bound <= rat(&self.ps),
            format!("√n+(k−√n)/w={bound}, p^s={}", self.ps),
        );
        match (p, self.two_rank) {
            (2, Some(r)) => {
                let shift = self.s.saturating_sub(r);
                let scaled = pow(2, shift) * &k_minus;
                l.check(
                    "S2.C3c",
                    "v | 2^{s−rk₂(G)}(k − √n)",
                    divides(v, &scaled),
                    format!("rk2={r}, 2^(s−rk2)(k−√n)={scaled}"),
                );
                let lhs = rat(sn) + BigRational::new(k_minus.clone(), pow(2, r) * w);
                let rhs = pow(2, shift);
                l.check(
                    "S2.C3d",
                    "√n + (k − √n)/(2^{rk₂(G)}w) ≤ 2^{s−rk₂(G)}",
                    lhs <= rat(&rhs),
                    format!("lhs={lhs}, rhs={rhs}"),
                );
            }
            (2, None) => {
                let why = "no group supplied; with rk₂ unknown the refinement reduces to S2.C3a/S2.C3b";
                l.skip("S2.C3c", "v | 2^{s−rk₂(G)}(k − √n)", why);
                l.skip("S2.C3d", "√n + (k − √n)/(2^{rk₂(G)}w) ≤ 2^{s−rk₂(G)}", why);
            }
            _ => {
                l.skip("S2.C3c", "v | 2^{s−rk₂(G)}(k − √n)", "p is odd");
                l.skip("S2.C3d", "√n + (k − √n)/(2^{rk₂(G)}w) ≤ 2^{s−rk₂(G)}", "p is odd");
            }
        }

        l.check(
            "S2.C4",
            "p | (2√n + a + ā)",
            divides(&BigInt::from(p), &two_sn_tr),
            format!("2√n+a+ā={two_sn_tr}"),
        );
        let c5 = BigInt::from(2 * d1) - &self.trace;
        l.check("S2.C5", "1 ≤ 2d₁ − a − ā", c5 >= BigInt::one(), format!("2d₁−a−ā={c5}"));

        let nonneg_int = |x: &BigRational| x.is_integer() && !x.is_negative();
        l.check(
            "S2.UA",
            "|U_a| = v(√n − d₁)/Δ + R is a nonnegative integer",
            nonneg_int(&q.u_a),
            format!("|U_a|={}", q.u_a),
        );
        l.check(
            "S2.UC",
            "|U_c| = v(2d₁ − a − ā)/Δ − 1 − 2R is a nonnegative integer",
            nonneg_int(&q.u_c),
            format!("|U_c|={}", q.u_c),
        );
        let product = rat(k) - &q.intersection;
        l.check(
            "S2.INT",
            "0 < (√n − d₁ + (k − √n)/v)(2√n + a + ā) ≤ k, i.e. 0 ≤ |D ∩ D^(−1)| < k",
            product.is_positive() && product <= rat(k),
            format!("(√n−d₁+(k−√n)/v)(2√n+a+ā)={product}, k={k}"),
        );

        let v_primes = prime_set(v);
        let n_primes = prime_set(sn);
        let pb = BigInt::from(p);
        let bad_q: Vec<String> = v_primes
            .iter()
            .filter(|q| **q != pb)
            .filter(|prime| !quad_divides(&QuadInt::rational(d, rat(prime)).expect("same field"), amab).unwrap_or(false))
            .map(|q| q.to_string())
            .collect();
        l.check(
            "S2.P23",
            "every prime q ≠ p dividing v divides a − ā",
            bad_q.is_empty(),
            if bad_q.is_empty() { format!("a−ā={amab}") } else { format!("fails for q ∈ {{{}}}", bad_q.join(",")) },
        );

        let coprime: Vec<&BigInt> = n_primes.iter().filter(|q| !v_primes.contains(*q)).collect();
        let residue_ok = |q: &BigInt| -> bool {
            let r8 = (q % 8u32).to_u32().unwrap_or(0);
            match d {
                -1 => q % 4u32 == BigInt::one(),
                -2 => r8 == 1 || r8 == 3,
                _ => legendre(q, p) == 1,
            }
        };
        let bad_res: Vec<String> = coprime.iter().filter(|q| !residue_ok(q)).map(|q| q.to_string()).collect();
        l.check(
            "S2.P24R1",
            "primes q | n coprime to v satisfy σ_q(√d) = √d",
            bad_res.is_empty(),
            if coprime.is_empty() {
                "no prime of n is coprime to v".to_string()
            } else if bad_res.is_empty() {
                format!("checked q ∈ {{{}}}", coprime.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(","))
            } else {
                format!("fails for q ∈ {{{}}}", bad_res.join(","))
            },
        );

        let abar = &q.a_bar;
        let shared: Vec<&BigInt> = n_primes
            .iter()
            .filter(|q| v_primes.contains(*q) && **q != pb && **q != BigInt::from(2))
            .collect();
        let bad_shared: Vec<String> = shared
            .iter()
            .filter(|prime| {
                let qq = QuadInt::rational(d, rat(prime)).expect("same field");
                !(quad_divides(&qq, a).unwrap_or(false) && quad_divides(&qq, abar).unwrap_or(false))
            })
            .map(|q| q.to_string())
            .collect();
        l.check(
            "S2.P24R2",
            "odd primes q ≠ p dividing both n and v divide a and ā",
            bad_shared.is_empty(),
            if bad_shared.is_empty() {
                format!("checked q ∈ {{{}}}", shared.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(","))
            } else {
                format!("fails for q ∈ {{{}}}", bad_shared.join(","))
            },
        );
        Ok(l)
    }

    pub(crate) fn ledgers(&self, extra: impl Fn(u8) -> Result<Ledger>) -> Result<Vec<D1Ledger>> {
        [0u8, 1]
            .into_iter()
            .map(|d1| {
                let mut l = self.items(d1)?;
                l.extend(extra(d1)?);
                Ok(l.finish(d1))
            })
            .collect()
    }
}

/// The general conditions for both `d₁ = 0` and `d₁ = 1`. A group refines the
/// `p = 2` form of the `w | (k − √n)` condition via `rk₂(G)`.
pub fn check_general(params: &GeneralParams, group: Option<&AbelianGroup>) -> Result<ConditionReport> {
    let base = Base::new(params, group)?;
    let ledgers = base.ledgers(|_| Ok(Ledger::default()))?;
    Ok(ConditionReport::new("general", base.param_map(), ledgers))
}

