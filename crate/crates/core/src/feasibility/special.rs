use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::design::hadamard_family_index;
use crate::error::{Error, Result};
use crate::number::predicates::factorize;
use crate::number::{exact_quotient, perfect_square_root, QuadInt};

/// Which structural hypothesis the parameters are assumed to satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpecialHypothesis {
    /// Hadamard parameters with `a + ā = 0`.
    Hadamard,
    /// `G` is a `p`-group.
    PGroup,
    /// `U_c ∪ {χ₀}` is a subgroup of the character group.
    MSubgroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialVerdict {
    pub hypothesis: SpecialHypothesis,
    pub feasible: bool,
    /// `v = 2^{2m}`.
    pub m: Option<u32>,
    #[serde(serialize_with = "crate::strings::big_opt")]
    pub h_order: Option<BigInt>,
    #[serde(serialize_with = "crate::strings::big_opt")]
    pub m_order: Option<BigInt>,
    pub d1: Option<u8>,
    /// The chain of deductions, in order.
    pub deductions: Vec<String>,
}

impl SpecialVerdict {
    fn new(hypothesis: SpecialHypothesis) -> Self {
        SpecialVerdict {
            hypothesis,
            feasible: false,
            m: None,
            h_order: None,
            m_order: None,
            d1: None,
            deductions: Vec::new(),
        }
    }

    fn infeasible(mut self, why: impl Into<String>) -> Self {
        self.deductions.push(why.into());
        self.feasible = false;
        self
    }
}

/// Parameter consequences of the three structural hypotheses. Each reduces
/// to Hadamard parameters with `a + ā = 0`, where only the plus type
/// `(2^{2m}, 2^{2m−1} + 2^{m−1}, 2^{2m−2} + 2^{m−1})` survives.
pub fn check_special_hadamard(
    v: &BigInt,
    k: &BigInt,
    a: &QuadInt,
    hypothesis: SpecialHypothesis,
) -> Result<SpecialVerdict> {
    let bad = |m: String| Error::MalformedParameters(m);
    if v <= &BigInt::one() || k <= &BigInt::zero() || k >= v {
        return Err(bad(format!("need 0 < k < v, got v = {v}, k = {k}")));
    }
    let lambda = exact_quotient(&(k * (k - 1)), &(v - 1))
        .ok_or_else(|| bad(format!("k(k−1) is not a multiple of v − 1 for v = {v}, k = {k}")))?;
    let n = k - &lambda;
    if a.norm() != num_rational::BigRational::from_integer(n.clone()) {
        return Err(bad(format!("a·ā = {} but n = {n}", a.norm())));
    }
    let sqrt_n = perfect_square_root(&n).ok_or_else(|| bad(format!("n = {n} is not a square")))?;
    let trace = a.trace();
    let mut out = SpecialVerdict::new(hypothesis);

    match hypothesis {
        SpecialHypothesis::Hadamard => {
            if !trace.is_zero() || *v != &n * 4 {
                return Err(Error::NotApplicable("needs v = 4n and a + ā = 0".into()));
            }
        }
        SpecialHypothesis::PGroup => {
            let primes = factorize(v);
            if primes.len() != 1 {
                return Err(Error::NotApplicable(format!("v = {v} is not a prime power")));
            }
            if primes[0].0 != BigInt::from(2) {
                return Ok(out.infeasible("odd p forces w > 1, so G is not a p-group"));
            }
            out.deductions.push("p = 2".into());
            if *v != &n * 4 {
                return Ok(out.infeasible("a 2-group difference set here has Menon parameters v = 4n"));
            }
            let delta = &sqrt_n * 2 - trace.to_integer();
            if delta != &sqrt_n * 2 {
                return Ok(out.infeasible(format!("Δ = {delta} must equal 2√n = {}, i.e. a + ā = 0", &sqrt_n * 2)));
            }
            out.deductions.push("Δ = 2√n, so a + ā = 0".into());
        }
        SpecialHypothesis::MSubgroup => {
            if *v != (k - &sqrt_n) * 2 {
                return Ok(out.infeasible(format!("M a subgroup forces v = 2(k − √n) = {}", (k - &sqrt_n) * 2)));
            }
            out.deductions.push("v = 2(k − √n), so v = 4n and k = 2n + √n".into());
            if trace == num_rational::BigRational::from_integer((-2).into()) {
                return Ok(out.infeasible("a + ā = −2 needs (√n + 1) | n"));
            }
            if !trace.is_zero() {
                return Ok(out.infeasible(format!("a + ā = {trace} is neither 0 nor −2")));
            }
            out.deductions.push("a + ā = 0".into());
        }
    }

    // Hadamard with a + ā = 0: d = −1 and d₁ = 1
    if a.d() != -1 {
        return Ok(out.infeasible(format!("a + ā = 0 forces d = −1, got d = {}", a.d())));
    }
    out.d1 = Some(1);
    out.deductions.push("1 ≤ 2d₁ − a − ā forces d₁ = 1".into());
    if *k == &n * 2 - &sqrt_n {
        let why = if sqrt_n > BigInt::from(2) {
            "minus type: nonnegative coefficients of H² need √n ≤ 2".to_string()
        } else if sqrt_n.is_one() {
            "minus type with n = 1: D = {1} has a single nontrivial value".to_string()
        } else {
            "minus type with n = 4: every involution of the character group lies in U_c, contradicting U_c² = 3 + 2(Ĝ − U_c)".to_string()
        };
        return Ok(out.infeasible(why));
    }
    if *k != &n * 2 + &sqrt_n {
        return Ok(out.infeasible("v = 4n without k = 2n ± √n"));
    }
    let Some(m) = hadamard_family_index(v, k, &lambda) else {
        return Ok(out.infeasible("plus type forces v = 2^{2m}"));
    };
    out.feasible = true;
    out.m = Some(m);
    out.h_order = Some(&sqrt_n * 2);
    out.m_order = Some(&sqrt_n * 2);
    out.deductions.push(format!("family member m = {m}; H is a subgroup of order 2√n and H^⊥ = M"));
    Ok(out)
}
