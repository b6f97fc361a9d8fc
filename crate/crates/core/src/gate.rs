//! Chern-number gate for morphisms Q^{2n+1} → G(l, 2n+1), l even.
//!
//! A non-constant morphism yields c(f*U∨), c(f*Q) with
//! (1 − c1 t + … ± c_{l+1} t^{l+1})(1 + d1 t + … + d_{2n+1−l} t^{2n+1−l}) = 1 ± c_{l+1}d_{2n+1−l} t^{2n+2},
//! so after t ↦ t/a both sides are products of the normalized cyclotomic
//! factors of 1 − x^{2n+2}. Every split of the factor set is checked against
//! the sign pattern and against nonnegativity of all Schur polynomials of the
//! two globally generated bundles.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::config::Config;
use crate::cyclotomic::{factor_one_minus_xm, CycloFactorization};
use crate::error::{input_err, Result};
use crate::poly::{MultiPoly, Var};
use crate::rational::{is_integer, q, Q};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct FactorAssignment {
    /// Divisors d of 2n+2 whose factors go to the U∨ side, ascending.
    pub s1: Vec<u32>,
    pub s2: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(tag = "verdict"))]
pub enum AssignmentVerdict {
    #[cfg_attr(feature = "serde", serde(rename = "VALID"))]
    Valid {
        #[cfg_attr(feature = "serde", serde(rename = "C", with = "crate::ser::rat_vec"))]
        c: Vec<Q>,
        #[cfg_attr(feature = "serde", serde(rename = "D", with = "crate::ser::rat_vec"))]
        d: Vec<Q>,
    },
    #[cfg_attr(feature = "serde", serde(rename = "INVALID"))]
    Invalid { reason: String },
}

impl AssignmentVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, AssignmentVerdict::Valid { .. })
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CheckedAssignment {
    pub assignment: FactorAssignment,
    pub s1_product: MultiPoly,
    pub s2_product: MultiPoly,
    #[cfg_attr(feature = "serde", serde(flatten))]
    pub verdict: AssignmentVerdict,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct GateReport {
    pub n: u32,
    pub l: u32,
    pub factorization: CycloFactorization,
    pub checked: Vec<CheckedAssignment>,
    pub valid: Vec<FactorAssignment>,
    pub integrality: Vec<IntegralityTrace>,
    pub only_constant: bool,
}

fn check_range(n: u32, l: u32) -> Result<()> {
    if n == 0 || l == 0 || l >= 2 * n {
        return Err(input_err!("need 0 < l < 2n, got n = {n}, l = {l}"));
    }
    Ok(())
}

/// All splits of the factor set of 1 − x^{2n+2} with degree sums (l+1, 2n+1−l),
/// in canonical order.
pub fn enumerate_assignments(n: u32, l: u32, cfg: &Config) -> Result<Vec<FactorAssignment>> {
    check_range(n, l)?;
    let fact = factor_one_minus_xm(2 * n + 2)?;
    let k = fact.factors.len();
    let order = cfg.order(1 << k);
    let mut out = Vec::new();
    for mask in order {
        let (mut s1, mut s2, mut deg) = (Vec::new(), Vec::new(), 0);
        for (i, f) in fact.factors.iter().enumerate() {
            if mask >> i & 1 == 1 {
                s1.push(f.d);
                deg += f.degree();
            } else {
                s2.push(f.d);
            }
        }
        if deg == l + 1 {
            out.push(FactorAssignment { s1, s2 });
        }
    }
    out.sort();
    Ok(out)
}

fn side_product(fact: &CycloFactorization, ds: &[u32]) -> MultiPoly {
    fact.factors
        .iter()
        .filter(|f| ds.contains(&f.d))
        .fold(MultiPoly::one(), |acc, f| &acc * &f.poly)
}

/// Coefficients of p(a·t) as a list in t.
fn scaled_coeffs(p: &MultiPoly, a: &Q) -> Vec<Q> {
    let c = p.to_univariate(Var::X).expect("univariate factor product");
    let mut pw = Q::one();
    c.into_iter()
        .map(|x| {
            let v = x * &pw;
            pw *= a;
            v
        })
        .collect()
}

/// Partitions of `total` with parts ≤ `max_part`, each descending.
fn partitions(total: u32, max_part: u32) -> Vec<Vec<u32>> {
    if total == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=max_part.min(total)).rev() {
        for mut rest in partitions(total - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn det(mut m: Vec<Vec<Q>>) -> Q {
    let n = m.len();
    let mut acc = Q::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Q::zero();
        };
        if p != k {
            m.swap(p, k);
            acc = -acc;
        }
        let piv = m[k][k].clone();
        acc *= &piv;
        for i in k + 1..n {
            let f = &m[i][k] / &piv;
            if f.is_zero() {
                continue;
            }
            for j in k..n {
                let v = &m[k][j] * &f;
                m[i][j] -= v;
            }
        }
    }
    acc
}

/// s_λ(c) = det(c_{λ_i + j − i}), c_0 = 1, c_k = 0 outside [0, rank].
pub fn schur_value(c: &[Q], lambda: &[u32]) -> Q {
    let r = lambda.len();
    let get = |k: i64| -> Q {
        if k < 0 || k as usize >= c.len() {
            Q::zero()
        } else {
            c[k as usize].clone()
        }
    };
    let m = (0..r)
        .map(|i| (0..r).map(|j| get(lambda[i] as i64 + j as i64 - i as i64)).collect())
        .collect();
    det(m)
}

fn fmt_partition(l: &[u32]) -> String {
    let parts: Vec<String> = l.iter().map(|p| alloc::format!("{p}")).collect();
    alloc::format!("({})", parts.join(","))
}

/// First negative Schur value among partitions of size ≤ dim with parts ≤ rank.
fn schur_violation(c: &[Q], dim: u32) -> Option<(Vec<u32>, Q)> {
    let rank = c.len() as u32 - 1;
    for size in 1..=dim {
        for lam in partitions(size, rank) {
            let v = schur_value(c, &lam);
            if v.is_negative() {
                return Some((lam, v));
            }
        }
    }
    None
}

/// Verdict for one split, with the two side polynomials evaluated at x = a·t.
pub fn check_assignment_at(n: u32, asg: &FactorAssignment, a: &Q) -> (MultiPoly, MultiPoly, AssignmentVerdict) {
    let fact = factor_one_minus_xm(2 * n + 2).expect("m ≥ 1");
    let p1 = side_product(&fact, &asg.s1);
    let p2 = side_product(&fact, &asg.s2);
    let c1 = scaled_coeffs(&p1, a);
    let c2 = scaled_coeffs(&p2, a);
    let verdict = (|| {
        // U∨ side: 1 − C1 t + C2 t² − …, all C_i > 0
        let mut cc = vec![Q::one()];
        for (i, v) in c1.iter().enumerate().skip(1) {
            let s = if i % 2 == 1 { -v.clone() } else { v.clone() };
            if !s.is_positive() {
                return AssignmentVerdict::Invalid {
                    reason: alloc::format!(
                        "U-dual side: coefficient of t^{i} is {v}, sign pattern needs {}C_{i} with C_{i} > 0",
                        if i % 2 == 1 { "-" } else { "+" }
                    ),
                };
            }
            cc.push(s);
        }
        let mut dd = vec![Q::one()];
        for (j, v) in c2.iter().enumerate().skip(1) {
            if !v.is_positive() {
                return AssignmentVerdict::Invalid {
                    reason: alloc::format!("Q side: coefficient D_{j} = {v} is not positive"),
                };
            }
            dd.push(v.clone());
        }
        for (side, vals) in [("U-dual", &cc), ("Q", &dd)] {
            if let Some((lam, v)) = schur_violation(vals, 2 * n + 1) {
                return AssignmentVerdict::Invalid {
                    reason: alloc::format!(
                        "{side} side: Schur polynomial s_{} = {v} is negative",
                        fmt_partition(&lam)
                    ),
                };
            }
        }
        AssignmentVerdict::Valid { c: cc[1..].to_vec(), d: dd[1..].to_vec() }
    })();
    (p1, p2, verdict)
}

pub fn check_assignment(n: u32, asg: &FactorAssignment) -> CheckedAssignment {
    let (s1_product, s2_product, verdict) = check_assignment_at(n, asg, &Q::one());
    CheckedAssignment { assignment: asg.clone(), s1_product, s2_product, verdict }
}

/// Integer Chern data attached to a VALID assignment.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct MorphismChernData {
    pub n: u32,
    pub l: u32,
    #[cfg_attr(feature = "serde", serde(with = "crate::ser::rat_vec"))]
    pub c: Vec<Q>,
    #[cfg_attr(feature = "serde", serde(with = "crate::ser::rat_vec"))]
    pub d: Vec<Q>,
    #[cfg_attr(feature = "serde", serde(with = "crate::ser::rat"))]
    pub a_root: Q,
}

impl MorphismChernData {
    /// c_i = a^i C_i, d_j = a^j D_j.
    pub fn from_normalized(n: u32, l: u32, cn: &[Q], dn: &[Q], a: &Q) -> Self {
        let sc = |v: &[Q]| {
            let mut pw = Q::one();
            v.iter()
                .map(|x| {
                    pw *= a;
                    x * &pw
                })
                .collect()
        };
        MorphismChernData { n, l, c: sc(cn), d: sc(dn), a_root: a.clone() }
    }

    /// The product identity (1 − c1 t + …)(1 + d1 t + …) = 1 ± c_{l+1}d_top t^{2n+2}.
    pub fn identity_holds(&self) -> bool {
        let mut lhs1 = vec![Q::one()];
        for (i, v) in self.c.iter().enumerate() {
            lhs1.push(if i % 2 == 0 { -v.clone() } else { v.clone() });
        }
        let mut lhs2 = vec![Q::one()];
        lhs2.extend(self.d.iter().cloned());
        let mut prod = vec![Q::zero(); lhs1.len() + lhs2.len() - 1];
        for (i, a) in lhs1.iter().enumerate() {
            for (j, b) in lhs2.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        let top = prod.len() - 1;
        top as u32 == 2 * self.n + 2
            && prod[0].is_one()
            && prod[1..top].iter().all(|x| x.is_zero())
            && prod[top].abs() == self.c.last().unwrap() * self.d.last().unwrap()
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct IntegralityTrace {
    pub degenerate: bool,
    pub identity_holds: bool,
    pub m: u32,
    #[cfg_attr(feature = "serde", serde(with = "crate::ser::rat_opt"))]
    pub ratio: Option<Q>,
    pub ratio_matches_root: bool,
    pub power_matches: bool,
    pub denominator: String,
    pub denominator_power_divides_4: bool,
    pub half_integral: bool,
    pub accepted: bool,
}

/// a = c_{m+1}/c_m with m = l/2; a^{2n+2} = c_{l+1} d_{2n+1−l}; the reduced
/// denominator t of a satisfies t^{2n+2} | 4, so t = 1.
pub fn verify_a_integrality(cand: &MorphismChernData) -> Result<IntegralityTrace> {
    if cand.l % 2 != 0 {
        return Err(input_err!("integrality of a is argued for even l only"));
    }
    let identity_holds = cand.identity_holds();
    let n = cand.n;
    let m = cand.l / 2;
    let top = cand.c.last().unwrap() * cand.d.last().unwrap();
    let get_c = |i: u32| -> Q { if i == 0 { Q::one() } else { cand.c[(i - 1) as usize].clone() } };
    if top.is_zero() || get_c(m).is_zero() {
        return Ok(IntegralityTrace {
            degenerate: true,
            identity_holds,
            m,
            ratio: None,
            ratio_matches_root: false,
            power_matches: false,
            denominator: "-".into(),
            denominator_power_divides_4: false,
            half_integral: false,
            accepted: false,
        });
    }
    let ratio = get_c(m + 1) / get_c(m);
    let a = &cand.a_root;
    let power_matches = num_traits::pow(a.clone(), (2 * n + 2) as usize) == top;
    let t = a.denom().clone();
    let tp = num_traits::pow(t.clone(), (2 * n + 2) as usize);
    let four = num_bigint::BigInt::from(4);
    let divides = (&four % &tp).is_zero();
    // indices are 1-based: integers below n, half-integers from n on
    let half_ok = |v: &[Q]| {
        v.iter().enumerate().all(|(i, x)| {
            if (i as u32 + 1) < n {
                is_integer(x)
            } else {
                is_integer(&(x * q(2)))
            }
        })
    };
    let half_integral = half_ok(&cand.c) && half_ok(&cand.d);
    let ratio_matches_root = &ratio == a;
    Ok(IntegralityTrace {
        degenerate: false,
        identity_holds,
        m,
        ratio: Some(ratio),
        ratio_matches_root,
        power_matches,
        denominator: alloc::format!("{t}"),
        denominator_power_divides_4: divides,
        half_integral,
        accepted: identity_holds && ratio_matches_root && power_matches && divides && half_integral,
    })
}

/// Exhaustive decision for even l.
pub fn decide_morphism_gate(n: u32, l: u32, cfg: &Config) -> Result<GateReport> {
    check_range(n, l)?;
    if l % 2 != 0 {
        return Err(input_err!("the morphism gate covers even l only, got l = {l}"));
    }
    let factorization = factor_one_minus_xm(2 * n + 2)?;
    let asgs = enumerate_assignments(n, l, cfg)?;
    let order = cfg.order(asgs.len());
    let mut checked: Vec<CheckedAssignment> = order.iter().map(|&i| check_assignment(n, &asgs[i])).collect();
    checked.sort_by(|a, b| a.assignment.cmp(&b.assignment));
    let mut valid = Vec::new();
    let mut integrality = Vec::new();
    for ch in &checked {
        if let AssignmentVerdict::Valid { c, d } = &ch.verdict {
            valid.push(ch.assignment.clone());
            let data = MorphismChernData::from_normalized(n, l, c, d, &Q::one());
            integrality.push(verify_a_integrality(&data)?);
        }
    }
    Ok(GateReport {
        n,
        l,
        factorization,
        only_constant: valid.is_empty(),
        checked,
        valid,
        integrality,
    })
}
