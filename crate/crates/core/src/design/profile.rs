use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::number::{perfect_square_root, CycloInt, QuadInt};

use super::{spectrum, verify_difference_set, GroupRingElement, SpectrumReport};

/// Parameters `(v, k, n, a, d₁)` of a putative three-valued difference set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileParams {
    pub v: BigInt,
    pub k: BigInt,
    pub n: BigInt,
    pub a: QuadInt,
    pub d1: u8,
}

impl ProfileParams {
    pub fn new(v: impl Into<BigInt>, k: impl Into<BigInt>, n: impl Into<BigInt>, a: QuadInt, d1: u8) -> Self {
        ProfileParams { v: v.into(), k: k.into(), n: n.into(), a, d1 }
    }
}

/// The pattern `(d_g, d'_g)` of `g ≠ 1` in `D` and `D^(−1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RowKey {
    pub dg: u8,
    pub dg_inv: u8,
}

/// Predicted `(g^{−1}(U_a), g^{−1}(U_b), g^{−1}(U_c))` for one row key.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub key: RowKey,
    pub u_a: QuadInt,
    pub u_b: QuadInt,
    pub u_c: QuadInt,
}

/// Rational quantities derived from `(v, k, n, a, d₁)` with no integrality
/// requirement. Shared by the profile and the feasibility checkers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quantities {
    pub sqrt_n: BigInt,
    pub a_bar: QuadInt,
    /// `a + ā`.
    pub trace: BigRational,
    /// `a − ā`.
    pub a_minus_abar: QuadInt,
    pub delta: BigRational,
    pub omega: QuadInt,
    pub r: BigRational,
    pub u_a: BigRational,
    pub u_c: BigRational,
    pub intersection: BigRational,
    /// `v(n − d₁)/Δ + R`, the alternative first-row eigenmatrix entry.
    pub u_a_alt: BigRational,
}

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn quantities(p: &ProfileParams) -> Result<Quantities> {
    let bad = |m: &str| Error::MalformedParameters(m.to_string());
    if !p.v.is_positive() {
        return Err(bad("v must be positive"));
    }
    let sqrt_n = perfect_square_root(&p.n).ok_or_else(|| bad("n is not a perfect square"))?;
    if p.a.d() > 0 || p.a.surd_part().is_zero() {
        return Err(bad("a must be non-real"));
    }
    if p.a.norm() != rat(p.n.clone()) {
        return Err(bad("a·ā ≠ n"));
    }
    if p.d1 > 1 {
        return Err(bad("d₁ must be 0 or 1"));
    }
    let v = rat(p.v.clone());
    let k = rat(p.k.clone());
    let sn = rat(sqrt_n.clone());
    let d1 = rat(p.d1);
    let a_bar = p.a.conj();
    let trace = p.a.trace();
    let a_minus_abar = p.a.checked_sub(&a_bar)?;
    let delta = &sn * rat(2) - &trace;
    if delta.is_zero() {
        return Err(bad("Δ = 0"));
    }
    let sqrt_n_minus_a = QuadInt::rational(p.a.d(), sn.clone())?.checked_sub(&p.a)?;
    let omega = sqrt_n_minus_a
        .scale(&v)
        .checked_div(&a_minus_abar.scale(&delta))?;
    let r = (&k - &sn) / &delta;
    let u_a = &v * (&sn - &d1) / &delta + &r;
    let u_c = &v * (&d1 * rat(2) - &trace) / &delta - BigRational::one() - &r * rat(2);
    let intersection = &k - (&sn - &d1 + (&k - &sn) / &v) * (&sn * rat(2) + &trace);
    let u_a_alt = &v * (rat(p.n.clone()) - &d1) / &delta + &r;
    Ok(Quantities {
        sqrt_n,
        a_bar,
        trace,
        a_minus_abar,
        delta,
        omega,
        r,
        u_a,
        u_c,
        intersection,
        u_a_alt,
    })
}

/// The four-row table of the three-valued analysis: the character sums over `U_a`,
/// `U_b`, `U_c` at `g^{−1}` for `g ≠ 1`, by row key.
pub fn table_one(p: &ProfileParams, q: &Quantities) -> Result<Vec<TableRow>> {
    let d = p.a.d();
    let v = rat(p.v.clone());
    let one = BigRational::one();
    let two = rat(2);
    let r = &q.r;
    let lift = |x: BigRational| QuadInt::rational(d, x);
    let v_over = &v / &q.delta;
    let omega_r = q.omega.add_rational(r);
    let mid_c = &v_over - &one - r * &two;
    Ok(vec![
        TableRow {
            key: RowKey { dg: 1, dg_inv: 1 },
            u_a: lift(-&v_over + r)?,
            u_b: lift(-&v_over + r)?,
            u_c: lift(&v_over * &two - &one - r * &two)?,
        },
        TableRow {
            key: RowKey { dg: 1, dg_inv: 0 },
            u_a: omega_r.clone(),
            u_b: omega_r.conj(),
            u_c: lift(mid_c.clone())?,
        },
        TableRow {
            key: RowKey { dg: 0, dg_inv: 1 },
            u_a: omega_r.conj(),
            u_b: omega_r,
            u_c: lift(mid_c)?,
        },
        TableRow {
            key: RowKey { dg: 0, dg_inv: 0 },
            u_a: lift(r.clone())?,
            u_b: lift(r.clone())?,
            u_c: lift(-one - r * &two)?,
        },
    ])
}

/// The three-row table for the Hadamard specialization `v = 4n`, `a = i√n`.
pub fn table_two(sqrt_n: &BigInt) -> Vec<TableRow> {
    let q = |x: BigInt, y: BigInt| QuadInt::from_ints(-1, x, y).expect("d = −1");
    let s = sqrt_n.clone();
    let z = BigInt::zero;
    vec![
        TableRow {
            key: RowKey { dg: 1, dg_inv: 1 },
            u_a: q(-&s, z()),
            u_b: q(-&s, z()),
            u_c: q(&s * 2 - 1, z()),
        },
        TableRow {
            key: RowKey { dg: 1, dg_inv: 0 },
            u_a: q(z(), -&s),
            u_b: q(z(), s.clone()),
            u_c: q(BigInt::from(-1), z()),
        },
        TableRow {
            key: RowKey { dg: 0, dg_inv: 1 },
            u_a: q(z(), s.clone()),
            u_b: q(z(), -&s),
            u_c: q(BigInt::from(-1), z()),
        },
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThreeValueProfile {
    #[serde(serialize_with = "crate::strings::big")]
    pub v: BigInt,
    #[serde(serialize_with = "crate::strings::big")]
    pub k: BigInt,
    #[serde(serialize_with = "crate::strings::big")]
    pub n: BigInt,
    #[serde(serialize_with = "crate::strings::big")]
    pub sqrt_n: BigInt,
    pub d1: u8,
    pub a: QuadInt,
    pub a_bar: QuadInt,
    #[serde(serialize_with = "crate::strings::big")]
    pub delta: BigInt,
    pub omega: QuadInt,
    #[serde(serialize_with = "crate::strings::rational")]
    pub r: BigRational,
    #[serde(serialize_with = "crate::strings::big")]
    pub u_a: BigInt,
    #[serde(serialize_with = "crate::strings::big")]
    pub u_b: BigInt,
    #[serde(serialize_with = "crate::strings::big")]
    pub u_c: BigInt,
    /// `|D ∩ D^(−1)|`.
    #[serde(serialize_with = "crate::strings::rational")]
    pub intersection: BigRational,
    /// `|E₁|, …, |E₄|`.
    #[serde(serialize_with = "rational_list")]
    pub e_sizes: [BigRational; 4],
    pub table1: Vec<TableRow>,
    /// First-row eigenmatrix entry computed with `n` in place of `√n`.
    #[serde(serialize_with = "crate::strings::rational")]
    pub u_a_alt: BigRational,
}

fn rational_list<S: serde::Serializer>(v: &[BigRational; 4], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(4))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

fn nonnegative_integer(x: &BigRational, what: &str) -> Result<BigInt> {
    if x.is_integer() && !x.is_negative() {
        Ok(x.to_integer())
    } else {
        Err(Error::ProfileInconsistent(format!("{what} = {x} is not a nonnegative integer")))
    }
}

/// Derived three-valued quantities from parameters alone.
pub fn three_value_profile(p: &ProfileParams) -> Result<ThreeValueProfile> {
    let q = quantities(p)?;
    let u_a = nonnegative_integer(&q.u_a, "|U_a|")?;
    let u_c = nonnegative_integer(&q.u_c, "|U_c|")?;
    if !q.delta.is_integer() {
        return Err(Error::MalformedParameters("a is not an algebraic integer".into()));
    }
    let k = rat(p.k.clone());
    let e1 = &q.intersection - rat(p.d1);
    let e2 = &k - &q.intersection;
    let e4 = rat(&p.v - 1) - &e1 - &e2 * rat(2);
    let table1 = table_one(p, &q)?;
    Ok(ThreeValueProfile {
        v: p.v.clone(),
        k: p.k.clone(),
        n: p.n.clone(),
        sqrt_n: q.sqrt_n,
        d1: p.d1,
        a: p.a.clone(),
        a_bar: q.a_bar,
        delta: q.delta.to_integer(),
        omega: q.omega,
        r: q.r,
        u_b: u_a.clone(),
        u_a,
        u_c,
        intersection: q.intersection,
        e_sizes: [e1, e2.clone(), e2, e4],
        table1,
        u_a_alt: q.u_a_alt,
    })
}

/// One row key's comparison against direct character sums.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowCheck {
    pub key: RowKey,
    /// Elements `g ≠ 1` with this key.
    pub elements: usize,
    pub mismatches: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConcreteProfile {
    pub profile: ThreeValueProfile,
    pub spectrum: SpectrumReport,
    /// `E₁, …, E₄` as element lists.
    pub e_sets: Vec<Vec<GroupElement>>,
    pub counts_match: bool,
    pub table1: Vec<RowCheck>,
    pub table2: Option<Vec<RowCheck>>,
}

impl ConcreteProfile {
    pub fn all_rows_match(&self) -> bool {
        self.table1.iter().chain(self.table2.iter().flatten()).all(|r| r.mismatches == 0)
    }
}

/// The profile of a concrete difference set, with every count and table
/// entry checked against direct character summation.
pub fn concrete_profile(d: &GroupRingElement) -> Result<ConcreteProfile> {
    let verdict = verify_difference_set(d);
    if !verdict.is_ds {
        return Err(Error::NotApplicable("not a difference set".into()));
    }
    let spec = spectrum(d)?;
    let tv = spec
        .three_valued
        .clone()
        .ok_or_else(|| Error::NotApplicable(format!("spectrum has {} values", spec.size())))?;
    if !tv.c_is_positive_root {
        return Err(Error::NotApplicable("c = −√n; profile the complement".into()));
    }
    let n = verdict.n.clone().expect("difference set has an order");
    let d1: u8 = if d.coeff(0).is_one() { 1 } else { 0 };
    let params = ProfileParams { v: verdict.v.clone(), k: verdict.k.clone(), n, a: tv.a.clone(), d1 };
    let profile = three_value_profile(&params)?;

    let group = d.group();
    let v = group.order();
    let m = group.exponent();
    let dinv = d.involution();
    let mut e_sets = vec![Vec::new(); 4];
    for g in 1..v {
        let key = (d.coeff(g).is_one(), dinv.coeff(g).is_one());
        let slot = match key {
            (true, true) => 0,
            (true, false) => 1,
            (false, true) => 2,
            (false, false) => 3,
        };
        e_sets[slot].push(group.element(g));
    }
    let actual_inter = (0..v).filter(|&g| d.coeff(g).is_one() && dinv.coeff(g).is_one()).count();
    let u = |i: usize| BigInt::from(spec.values[i].count);
    let counts_match = u(tv.a_index) == profile.u_a
        && u(tv.b_index) == profile.u_b
        && u(tv.c_index) == profile.u_c
        && rat(actual_inter) == profile.intersection
        && e_sets
            .iter()
            .zip(&profile.e_sizes)
            .all(|(s, z)| rat(s.len()) == *z);

    // g^{−1}(U_z) = Σ_{χ ∈ U_z} χ(g^{−1}) for each g ≠ 1
    let sums = |g: usize| -> [CycloInt; 3] {
        let ginv = group.neg(g);
        [tv.a_index, tv.b_index, tv.c_index].map(|i| {
            let mut counts = vec![0i64; m as usize];
            for &chi in &spec.values[i].character_indices {
                counts[group.pairing(chi, ginv) as usize] += 1;
            }
            CycloInt::from_exponent_counts(m, &counts)
        })
    };
    let check = |rows: &[TableRow]| -> Vec<RowCheck> {
        let expected: Vec<(RowKey, Option<[CycloInt; 3]>)> = rows
            .iter()
            .map(|r| {
                let z = [&r.u_a, &r.u_b, &r.u_c].map(|q| q.to_cyclo(m));
                let z = match z {
                    [Some(x), Some(y), Some(w)] => Some([x, y, w]),
                    _ => None,
                };
                (r.key, z)
            })
            .collect();
        let mut out: Vec<RowCheck> = rows
            .iter()
            .map(|r| RowCheck { key: r.key, elements: 0, mismatches: 0 })
            .collect();
        for g in 1..v {
            let key = RowKey { dg: d.coeff(g).is_one() as u8, dg_inv: dinv.coeff(g).is_one() as u8 };
            let Some(pos) = expected.iter().position(|(k, _)| *k == key) else {
                continue;
            };
            out[pos].elements += 1;
            if expected[pos].1.as_ref() != Some(&sums(g)) {
                out[pos].mismatches += 1;
            }
        }
        out
    };
    let table1 = check(&profile.table1);
    let hadamard = verdict.v == &profile.n * 4 && profile.a.trace().is_zero();
    let table2 = hadamard.then(|| {
        let mut rows = check(&table_two(&profile.sqrt_n));
        // g with d_g = d'_g = 0 has no row in the Hadamard table; count them as mismatches
        let stray = e_sets[3].len();
        if stray > 0 {
            rows.push(RowCheck { key: RowKey { dg: 0, dg_inv: 0 }, elements: stray, mismatches: stray });
        }
        rows
    });
    Ok(ConcreteProfile { profile, spectrum: spec, e_sets, counts_match, table1, table2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::AbelianGroup;

    fn qi(x: i64, y: i64) -> QuadInt {
        QuadInt::from_ints(-1, x, y).unwrap()
    }

    #[test]
    fn sixteen_ten_four() {
        let p = three_value_profile(&ProfileParams::new(16, 10, 4, qi(0, 2), 1)).unwrap();
        assert_eq!(p.delta, 4.into());
        assert_eq!(p.r, rat(2));
        assert_eq!((p.u_a.clone(), p.u_b.clone(), p.u_c.clone()), (6.into(), 6.into(), 3.into()));
        assert_eq!(p.intersection, rat(4));
    }

    #[test]
    fn four_three_one() {
        let p = three_value_profile(&ProfileParams::new(4, 3, 1, qi(0, 1), 1)).unwrap();
        assert_eq!(p.delta, 2.into());
        assert_eq!(p.r, rat(1));
        assert_eq!((p.u_a.clone(), p.u_c.clone()), (1.into(), 1.into()));
        assert_eq!(p.omega, qi(-1, -1));
        let row11 = &p.table1[0];
        assert_eq!(row11.u_a, qi(-1, 0));
        assert_eq!(row11.u_c, qi(1, 0));
        // one element of D ∩ D^(−1) besides the identity
        assert_eq!(p.intersection, rat(2));
        assert_eq!(p.e_sizes[0], rat(1));
    }

    #[test]
    fn inconsistent_counts() {
        let e = three_value_profile(&ProfileParams::new(15, 10, 4, qi(0, 2), 1));
        assert!(matches!(e, Err(Error::ProfileInconsistent(_))));
        let real = three_value_profile(&ProfileParams::new(16, 10, 4, qi(2, 0), 1));
        assert!(matches!(real, Err(Error::MalformedParameters(_))));
    }

    #[test]
    fn z4_concrete() {
        let g = AbelianGroup::new(&[4]).unwrap();
        let d = GroupRingElement::from_indices(&g, &[0, 1, 2]);
        let c = concrete_profile(&d).unwrap();
        assert!(c.counts_match);
        assert!(c.all_rows_match());
        let names: Vec<Vec<String>> = c
            .e_sets
            .iter()
            .map(|s| s.iter().map(|g| g.to_string()).collect())
            .collect();
        assert_eq!(names, vec![vec!["2"], vec!["1"], vec!["3"], vec![]]);
        assert!(c.table2.is_some());
    }
}
