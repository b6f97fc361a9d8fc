//! Star equation: E(T,X1) − a·R = S1(T,X1,X2)·S2(T+X1,X1,X2) with S1, S2
//! symmetric and monic in T, R = Σ_n(X1², X2²).
//!
//! Dividing by a turns it into a factorization P − R = S·F, so every
//! question reduces to a symmetric-divisor search: pick the top coefficient
//! p_{2n} of P (trichotomy), factor p_{2n}X1^{2n} − R into cyclotomic forms,
//! choose s0 = S(0,X1,X2) among symmetric sub-products, and lift.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::config::Config;
use crate::cyclo::{eval_cyclo, CycloElt};
use crate::cyclotomic::{factor_cyclotomic_form, is_squarefree, FormFactorization};
use crate::error::{capability_err, input_err, internal_err, Result};
use crate::gate::{decide_morphism_gate, GateReport};
use crate::lift::{lift, Decision, LiftMode, LiftProblem, LiftReport, LiftSolution, Param};
use crate::poly::{poly_divides, Monomial, MultiPoly, Var};
use crate::rational::{q, Q};
use crate::rings::{relation_r, sigma, sigma_telescoping};
use crate::smooth::{a3_smooth_irreducible, SmoothReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "SCREAMING_SNAKE_CASE"))]
pub enum P2nBranch {
    Zero,
    One,
    /// p_{2n} ∉ {0, 1}: only S(0) = c(X1 + X2) survives, forcing p_{2n} = n + 1.
    DegreeOne,
}

impl P2nBranch {
    pub fn value(self, n: u32) -> Q {
        match self {
            P2nBranch::Zero => q(0),
            P2nBranch::One => q(1),
            P2nBranch::DegreeOne => q(n as i64 + 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct S0Candidate {
    /// Labels of the chosen factors, e.g. ["Phi3", "Phi6"].
    pub labels: Vec<String>,
    pub s0: MultiPoly,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BranchPool {
    pub branch: P2nBranch,
    #[cfg_attr(feature = "serde", serde(with = "crate::ser::rat"))]
    pub p2n: Q,
    /// p_{2n}X1^{2n} − R.
    pub target: MultiPoly,
    pub factorization: Option<FormFactorization>,
    pub candidates: Vec<S0Candidate>,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ClosedBranch {
    pub branch: P2nBranch,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct TrichotomyReport {
    pub n: u32,
    pub d: u32,
    /// (X1²−X2²)(pX1^{2n}−R) + X2²(X1^{2n}−X2^{2n}) = (p−1)X1^{2n}(X1²−X2²), p symbolic.
    pub identity_checked: bool,
    pub roots: Vec<BranchPool>,
    pub closed: Vec<ClosedBranch>,
}

fn x1() -> MultiPoly {
    MultiPoly::var(Var::X1)
}

fn x2() -> MultiPoly {
    MultiPoly::var(Var::X2)
}

fn t() -> MultiPoly {
    MultiPoly::var(Var::T)
}

fn top_identity(n: u32) -> bool {
    let p = MultiPoly::var(Var::param(1));
    let x1n = x1().pow(2 * n);
    let diff = x1().pow(2) - x2().pow(2);
    let lhs = &diff * &(&(&p * &x1n) - &relation_r(n)) + &x2().pow(2) * &(&x1n - &x2().pow(2 * n));
    let rhs = &(&(&p - &MultiPoly::one()) * &x1n) * &diff;
    lhs == rhs
}

/// Symmetric sub-products of degree d, deduplicated, in canonical order.
fn symmetric_subproducts(fact: &FormFactorization, d: u32, cfg: &Config) -> Result<Vec<S0Candidate>> {
    let items = fact.expanded();
    if items.len() > 20 {
        return Err(capability_err!("{} factors exceed the subset-enumeration bound", items.len()));
    }
    let mut out: Vec<S0Candidate> = Vec::new();
    for mask in cfg.order(1usize << items.len()) {
        let chosen: Vec<usize> = (0..items.len()).filter(|i| mask >> i & 1 == 1).collect();
        let deg: u32 = chosen.iter().map(|&i| items[i].degree()).sum();
        if deg != d {
            continue;
        }
        let s0 = chosen.iter().fold(MultiPoly::one(), |acc, &i| &acc * &items[i].poly);
        if !s0.is_symmetric() || out.iter().any(|c| c.s0 == s0) {
            continue;
        }
        let mut labels: Vec<String> = chosen.iter().map(|&i| items[i].label.clone()).collect();
        labels.sort();
        out.push(S0Candidate { labels, s0 });
    }
    out.sort_by(|a, b| a.labels.cmp(&b.labels));
    Ok(out)
}

/// Admissible t = 0 data for a symmetric divisor of degree d of some P − R.
pub fn trichotomy(n: u32, d: u32, cfg: &Config) -> Result<TrichotomyReport> {
    if n == 0 || d == 0 || d >= 2 * n {
        return Err(input_err!("need n ≥ 1 and 0 < d < 2n, got n = {n}, d = {d}"));
    }
    let mut roots = Vec::new();
    let mut closed = Vec::new();
    for branch in [P2nBranch::Zero, P2nBranch::One] {
        let p2n = branch.value(n);
        let target = x1().pow(2 * n).scale(&p2n) - relation_r(n);
        let fact = factor_cyclotomic_form(&target)?;
        let candidates = symmetric_subproducts(&fact, d, cfg)?;
        roots.push(BranchPool { branch, p2n, target, factorization: Some(fact), candidates });
    }
    let branch = P2nBranch::DegreeOne;
    if d == 1 {
        let p2n = branch.value(n);
        let target = x1().pow(2 * n).scale(&p2n) - relation_r(n);
        let s0 = x1() + x2();
        let candidates = if poly_divides(&s0, &target)?.is_some() {
            vec![S0Candidate { labels: vec!["X1+X2".into()], s0 }]
        } else {
            Vec::new()
        };
        roots.push(BranchPool { branch, p2n, target, factorization: None, candidates });
    } else {
        closed.push(ClosedBranch {
            branch,
            reason: format!(
                "for p2n not in {{0,1}}, S(0,X1,X2) divides X1^{}(X1^2 - X2^2); its symmetric divisors have degree at most 1 < {d}",
                2 * n
            ),
        });
    }
    Ok(TrichotomyReport { n, d, identity_checked: top_identity(n), roots, closed })
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SearchBranch {
    pub p2n: P2nBranch,
    pub t0_assignment: Vec<String>,
    pub s0: MultiPoly,
    /// Whether s0(1, y0) = 0 at a primitive 2(n − p2n + 1)-th root y0.
    pub primitive: Option<bool>,
    pub lift: LiftReport,
}

impl SearchBranch {
    pub fn is_empty(&self) -> bool {
        self.lift.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SearchReport {
    pub n: u32,
    pub d: u32,
    pub mode: LiftMode,
    pub trichotomy: TrichotomyReport,
    pub branches: Vec<SearchBranch>,
}

impl SearchReport {
    pub fn is_empty(&self) -> bool {
        self.branches.iter().all(|b| b.is_empty())
    }

    pub fn solutions(&self) -> impl Iterator<Item = (&SearchBranch, &LiftSolution)> {
        self.branches.iter().flat_map(|b| b.lift.solutions().map(move |s| (b, s)))
    }
}

pub fn primitive_root_vanishes(n: u32, branch: P2nBranch, s0: &MultiPoly) -> Result<Option<bool>> {
    let k = match branch {
        P2nBranch::Zero => 2 * (n + 1),
        P2nBranch::One => 2 * n,
        P2nBranch::DegreeOne => return Ok(None),
    };
    let mut a = BTreeMap::new();
    a.insert(Var::X1, CycloElt::rational(q(1)));
    a.insert(Var::X2, CycloElt::zeta(k));
    Ok(Some(crate::upoly::Ring::is_zero(&eval_cyclo(s0, &a)?)))
}

/// All symmetric divisors of degree d of P − R over every admissible branch.
pub fn symmetric_divisor_search(n: u32, d: u32, mode: LiftMode, cfg: &Config) -> Result<SearchReport> {
    if n > cfg.max_n {
        return Err(capability_err!("n = {n} exceeds the desk-scale bound {}", cfg.max_n));
    }
    let tri = trichotomy(n, d, cfg)?;
    let mut jobs: Vec<(P2nBranch, Q, S0Candidate)> = Vec::new();
    for pool in &tri.roots {
        for c in &pool.candidates {
            jobs.push((pool.branch, pool.p2n.clone(), c.clone()));
        }
    }
    let mut results: Vec<(usize, SearchBranch)> = Vec::new();
    for i in cfg.order(jobs.len()) {
        let (branch, p2n, cand) = &jobs[i];
        let pb = LiftProblem { n, d, p2n: p2n.clone(), s0: cand.s0.clone(), mode };
        let report = lift(&pb, cfg)?;
        results.push((
            i,
            SearchBranch {
                p2n: *branch,
                t0_assignment: cand.labels.clone(),
                s0: cand.s0.clone(),
                primitive: primitive_root_vanishes(n, *branch, &cand.s0)?,
                lift: report,
            },
        ));
    }
    results.sort_by_key(|(i, _)| *i);
    Ok(SearchReport { n, d, mode, trichotomy: tri, branches: results.into_iter().map(|(_, b)| b).collect() })
}

// ---------------------------------------------------------------- star equation

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct StarWitness {
    pub p2n: P2nBranch,
    pub t0_assignment: Vec<String>,
    pub s1: MultiPoly,
    pub s2: MultiPoly,
    pub e: MultiPoly,
    #[cfg_attr(feature = "serde", serde(with = "crate::ser::rat"))]
    pub a: Q,
    /// Values chosen for the parameters of a family, empty if rigid.
    pub specialization: Vec<Decision>,
    pub family_params: Vec<Param>,
    pub reconstruction_ok: bool,
    pub no_real_root: bool,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct StarReport {
    pub n: u32,
    pub l: u32,
    pub deg_s1: u32,
    pub deg_s2: u32,
    pub search: SearchReport,
    pub witnesses: Vec<StarWitness>,
}

fn degrees(n: u32, l: u32) -> Result<(u32, u32)> {
    if n == 0 || l + 1 > 2 * n || 2 * n < l + 2 {
        return Err(input_err!("need 1 ≤ 2n − l − 1, got n = {n}, l = {l}"));
    }
    let (d1, d2) = (l + 1, 2 * n - l - 1);
    if d1 < d2 {
        return Err(input_err!("splitting type needs l + 1 ≥ 2n − l − 1, got n = {n}, l = {l}"));
    }
    Ok((d1, d2))
}

/// Admissible l for rank 2n: l + 1 ≥ 2n − l − 1 ≥ 1.
pub fn admissible_ls(n: u32) -> Vec<u32> {
    (1..2 * n).filter(|&l| degrees(n, l).is_ok()).collect()
}

/// Checks E − aR = S1·S2(T+X1) with S1, S2 symmetric and monic, E free of X2.
pub fn reconstruction_check(n: u32, s1: &MultiPoly, s2: &MultiPoly, e: &MultiPoly, a: &Q) -> bool {
    let d1 = s1.degree_in(Var::T).unwrap_or(0);
    let d2 = s2.degree_in(Var::T).unwrap_or(0);
    let monic = |p: &MultiPoly, d: u32| p.coeff(&Monomial::var(Var::T, d)).is_one();
    let rhs = s1 * &s2.substitute(Var::T, &(t() + x1()));
    let no_x2 = !(&rhs + &relation_r(n).scale(a)).involves(Var::X2);
    no_x2
        && !e.involves(Var::X2)
        && e - &relation_r(n).scale(a) == rhs
        && s1.is_symmetric()
        && s2.is_symmetric()
        && monic(s1, d1)
        && monic(s2, d2)
        && d1 + d2 == 2 * n
}

const SAMPLE_VALUES: [i64; 7] = [1, -1, 2, -2, 3, -3, 4];

fn specialize(sol: &LiftSolution, vars: &[Var]) -> Option<Vec<(Var, Q)>> {
    let k = vars.len();
    let total = SAMPLE_VALUES.len().pow(k as u32);
    for code in 0..total {
        let mut c = code;
        let mut vals = Vec::new();
        for v in vars {
            vals.push((*v, q(SAMPLE_VALUES[c % SAMPLE_VALUES.len()])));
            c /= SAMPLE_VALUES.len();
        }
        let ok = sol.nonzero.iter().all(|p| {
            let mut x = p.clone();
            for (v, val) in &vals {
                x = x.substitute(*v, &MultiPoly::constant(val.clone()));
            }
            !x.is_zero()
        });
        if ok {
            return Some(vals);
        }
    }
    None
}

fn star_witness(n: u32, d1: u32, d2: u32, b: &SearchBranch, sol: &LiftSolution) -> Result<StarWitness> {
    let vars: Vec<Var> = sol
        .free_params
        .iter()
        .map(|p| Var::parse(&p.name).ok_or_else(|| internal_err!("bad parameter name {}", p.name)))
        .collect::<Result<_>>()?;
    let vals = specialize(sol, &vars).ok_or_else(|| capability_err!("no sample point avoids the nonvanishing conditions"))?;
    let sub = |p: &MultiPoly| {
        vals.iter().fold(p.clone(), |acc, (v, x)| acc.substitute(*v, &MultiPoly::constant(x.clone())))
    };
    let (s, f, p) = (sub(&sol.s), sub(&sol.f), sub(&sol.p));
    let c = s.coeff(&Monomial::var(Var::T, d1));
    let ft = f.coeff(&Monomial::var(Var::T, d2));
    if c.is_zero() || ft.is_zero() {
        return Err(internal_err!("specialized witness lost a top coefficient"));
    }
    let s1 = s.scale(&c.recip());
    let a = (&c * &ft).recip();
    let g = f.scale(&(&c * &a));
    let s2 = g.substitute(Var::T, &(t() - x1()));
    let e = p.scale(&a);
    let reconstruction_ok = reconstruction_check(n, &s1, &s2, &e, &a);
    Ok(StarWitness {
        p2n: b.p2n,
        t0_assignment: b.t0_assignment.clone(),
        s1,
        s2,
        e,
        no_real_root: a.is_negative(),
        a,
        specialization: vals.into_iter().map(|(v, x)| Decision { param: v.name(), value: x }).collect(),
        family_params: sol.free_params.clone(),
        reconstruction_ok,
    })
}

/// Direct solution of the star equation for the splitting type with l + 1 zeros.
pub fn star_search(n: u32, l: u32, cfg: &Config) -> Result<StarReport> {
    let (d1, d2) = degrees(n, l)?;
    let search = symmetric_divisor_search(n, d1, LiftMode::Star, cfg)?;
    let mut witnesses = Vec::new();
    for (b, sol) in search.solutions() {
        let w = star_witness(n, d1, d2, b, sol)?;
        if !w.reconstruction_ok {
            return Err(internal_err!("witness for (n, l) = ({n}, {l}) fails reconstruction"));
        }
        witnesses.push(w);
    }
    Ok(StarReport { n, l, deg_s1: d1, deg_s2: d2, search, witnesses })
}

// ---------------------------------------------------------------- exclusions

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct TopExclusion {
    pub n: u32,
    /// Relation used in place of R (R itself outside tests).
    pub relation: MultiPoly,
    /// Value of e_{2n}/a forced by X2 | e_{2n}X1^{2n} − a·R.
    #[cfg_attr(feature = "serde", serde(with = "crate::ser::rat"))]
    pub forced_ratio: Q,
    /// g with f = −a·g.
    pub quotient_over_minus_a: MultiPoly,
    pub quotient: String,
    pub symmetric: bool,
    pub impossible: bool,
}

/// l = 2n − 2: c1(E2) = X2, so f·X2 = e_{2n}X1^{2n} − a·r with f symmetric.
pub fn exclude_l_top_with(n: u32, r: &MultiPoly) -> Result<TopExclusion> {
    let top = r.coeff(&Monomial::var(Var::X1, 2 * n));
    if r.substitute(Var::X2, &MultiPoly::zero()) != x1().pow(2 * n).scale(&top) {
        return Err(input_err!("{r} is not a binary form of degree {}", 2 * n));
    }
    // X2 | e X1^{2n} − a r  ⇔  e = a·top
    let g = poly_divides(&x2(), &(&x1().pow(2 * n).scale(&top) - r))?
        .ok_or_else(|| internal_err!("X2 does not divide the reduced relation"))?;
    let g = -g;
    let symmetric = g.is_symmetric();
    Ok(TopExclusion {
        n,
        relation: r.clone(),
        forced_ratio: top,
        quotient: format!("-a*({g})"),
        quotient_over_minus_a: g,
        symmetric,
        impossible: !symmetric,
    })
}

pub fn exclude_l_top(n: u32) -> Result<TopExclusion> {
    if n < 2 {
        return Err(input_err!("exclude_l_top needs n ≥ 2"));
    }
    exclude_l_top_with(n, &relation_r(n))
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Q7Exclusion {
    pub search: SearchReport,
    pub impossible: bool,
}

/// (l, 2n − 1) = (2, 5): no symmetric divisor of degree 3 in either branch.
pub fn exclude_q7(cfg: &Config) -> Result<Q7Exclusion> {
    let search = symmetric_divisor_search(3, 3, LiftMode::Approx { enforce_top: true }, cfg)?;
    let impossible = search.is_empty();
    Ok(Q7Exclusion { search, impossible })
}

/// −a > 0, so t^{2n} − a > 0 on the reals. a = 0 is the split case.
pub fn no_real_root_guard(a: &Q) -> Result<bool> {
    if a.is_zero() {
        return Err(input_err!("a = 0 is the split case"));
    }
    Ok(a.is_negative())
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct EisensteinCheck {
    /// Prime element X1 − ζ X2, ζ a primitive (2n+2)-th root of unity.
    pub prime: String,
    pub divides_r: bool,
    pub square_divides_r: bool,
    pub r_squarefree: bool,
    /// T^{2n} − aR is irreducible in T, so it has no factorization S1·S2(T+X1)
    /// with both factors of positive degree.
    pub irreducible: bool,
}

fn eisenstein(n: u32) -> Result<EisensteinCheck> {
    let k = 2 * n + 2;
    let mut at = BTreeMap::new();
    at.insert(Var::X1, CycloElt::zeta(k));
    at.insert(Var::X2, CycloElt::rational(q(1)));
    use crate::upoly::Ring;
    let r = relation_r(n);
    let divides_r = eval_cyclo(&r, &at)?.is_zero();
    let square_divides_r = divides_r && eval_cyclo(&r.derivative(Var::X1), &at)?.is_zero();
    let r_squarefree = is_squarefree(&sigma(n, &[MultiPoly::var(Var::Z).pow(2), MultiPoly::one()]))?;
    Ok(EisensteinCheck {
        prime: format!("X1 - zeta_{k}*X2"),
        divides_r,
        square_divides_r,
        r_squarefree,
        irreducible: divides_r && !square_divides_r && r_squarefree,
    })
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CaseCheck {
    pub case: String,
    pub excluded: bool,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct OddExclusion {
    pub n: u32,
    pub l: u32,
    pub eisenstein: EisensteinCheck,
    /// (T² − b1X2², Σ_{n−1}(T², b1X1², b1X2²)).
    pub telescoping: (MultiPoly, MultiPoly),
    pub irreducibility: SmoothReport,
    pub shifted_cofactor: MultiPoly,
    pub shifted_cofactor_symmetric: bool,
    pub cases: Vec<CaseCheck>,
    pub guard_rule: String,
    pub direct: StarReport,
    pub impossible: bool,
}

/// l odd: the four shapes left by the classification, plus the direct search.
pub fn odd_l_exclusion(n: u32, l: u32, cfg: &Config) -> Result<OddExclusion> {
    if l % 2 == 0 {
        return Err(input_err!("odd_l_exclusion needs odd l, got {l}"));
    }
    let (d1, d2) = degrees(n, l)?;
    if n < 3 || d2 < 2 {
        return Err(input_err!("odd_l_exclusion needs n ≥ 3 and 2n − l − 1 ≥ 2, got n = {n}, l = {l}"));
    }
    let eis = eisenstein(n)?;
    let b1 = MultiPoly::var(Var::param(1));
    let t2 = t().pow(2);
    let (lin, rest) = sigma_telescoping(n, &t2, &(&b1 * &x1().pow(2)), &(&b1 * &x2().pow(2)))?;
    let irr = a3_smooth_irreducible(n - 1, cfg)?;
    let shifted = lin.substitute(Var::T, &(t() - x1()));
    let shifted_sym = shifted.is_symmetric();
    let cases = vec![
        CaseCheck {
            case: format!("E = T^{}", 2 * n),
            excluded: eis.irreducible && d1 > 0 && d2 > 0,
            reason: "T^{2n} - aR is Eisenstein at X1 - zeta*X2, hence irreducible in T".into(),
        },
        CaseCheck {
            case: format!("E(T - X1, X1) = T^{}", 2 * n),
            excluded: eis.irreducible && d1 > 0 && d2 > 0,
            reason: "the shift T -> T + X1 preserves irreducibility".into(),
        },
        CaseCheck {
            case: "E = Sigma_n(T^2, b1*X1^2)".into(),
            excluded: irr.irreducible && !shifted_sym,
            reason: format!(
                "S1 = Sigma_{}(T^2, b1*X1^2, b1*X2^2) forces S2 = (T - X1)^2 - b1*X2^2, not symmetric",
                n - 1
            ),
        },
        CaseCheck {
            case: "E(T - X1, X1) = Sigma_n(T^2, b2*X1^2)".into(),
            excluded: irr.irreducible && 2 * n - 2 > d2,
            reason: format!("S2 would be Sigma_{} of degree {} > deg S2 = {d2}", n - 1, 2 * n - 2),
        },
    ];
    let direct = star_search(n, l, cfg)?;
    let impossible = cases.iter().all(|c| c.excluded) && direct.witnesses.is_empty();
    Ok(OddExclusion {
        n,
        l,
        eisenstein: eis,
        telescoping: (lin, rest),
        irreducibility: irr,
        shifted_cofactor: shifted,
        shifted_cofactor_symmetric: shifted_sym,
        cases,
        guard_rule: "-a = a_{l+1} b_{2n-1-l} > 0, so t^{2n} - a has no real root".into(),
        direct,
        impossible,
    })
}

// ---------------------------------------------------------------- all splitting types

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(tag = "method", rename_all = "snake_case"))]
pub enum LMethod {
    LTop { exclusion: TopExclusion },
    Q7 { exclusion: Q7Exclusion },
    Gate { gate: GateReport },
    OddL { exclusion: OddExclusion },
    DirectSearch,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct LEntry {
    pub l: u32,
    pub deg_s1: u32,
    pub deg_s2: u32,
    pub method: LMethod,
    /// Direct search of the star equation for this splitting type.
    pub direct: StarReport,
    pub impossible: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "SCREAMING_SNAKE_CASE"))]
pub enum SplitVerdict {
    Splits,
    Impossible,
    WitnessFound,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SplittingReport {
    pub n: u32,
    pub entries: Vec<LEntry>,
    pub verdict: SplitVerdict,
}

fn entry(n: u32, l: u32, cfg: &Config) -> Result<LEntry> {
    let (d1, d2) = degrees(n, l)?;
    let (method, direct, by_method) = if n < 3 {
        let direct = star_search(n, l, cfg)?;
        (LMethod::DirectSearch, direct, true)
    } else if l % 2 == 1 {
        let ex = odd_l_exclusion(n, l, cfg)?;
        let direct = ex.direct.clone();
        let ok = ex.impossible;
        (LMethod::OddL { exclusion: ex }, direct, ok)
    } else if l == 2 * n - 2 {
        let ex = exclude_l_top(n)?;
        let ok = ex.impossible;
        (LMethod::LTop { exclusion: ex }, star_search(n, l, cfg)?, ok)
    } else if (n, l) == (3, 2) {
        let ex = exclude_q7(cfg)?;
        let ok = ex.impossible;
        (LMethod::Q7 { exclusion: ex }, star_search(n, l, cfg)?, ok)
    } else {
        let gate = decide_morphism_gate(n - 1, l, cfg)?;
        let ok = gate.only_constant;
        (LMethod::Gate { gate }, star_search(n, l, cfg)?, ok)
    };
    let impossible = by_method && direct.witnesses.is_empty();
    Ok(LEntry { l, deg_s1: d1, deg_s2: d2, method, direct, impossible })
}

/// Every uniform bundle of rank 2n on Q^{2n+1} splits; n = 2 is the control.
pub fn verify_splitting(n: u32, only_l: Option<u32>, cfg: &Config) -> Result<SplittingReport> {
    if n < 2 {
        return Err(input_err!("verify-splitting needs n ≥ 2"));
    }
    if n > cfg.max_n {
        return Err(capability_err!("n = {n} exceeds the desk-scale bound {}", cfg.max_n));
    }
    let ls = match only_l {
        Some(l) => {
            degrees(n, l)?;
            vec![l]
        }
        None => admissible_ls(n),
    };
    let mut entries = Vec::new();
    for l in ls {
        entries.push(entry(n, l, cfg)?);
    }
    let any_witness = entries.iter().any(|e| !e.direct.witnesses.is_empty());
    let verdict = if any_witness {
        SplitVerdict::WitnessFound
    } else if entries.iter().all(|e| e.impossible) {
        if only_l.is_some() {
            SplitVerdict::Impossible
        } else {
            SplitVerdict::Splits
        }
    } else {
        return Err(internal_err!("an exclusion failed without a witness for n = {n}"));
    };
    Ok(SplittingReport { n, entries, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::p;

    #[test]
    fn pools_at_n3() {
        let tri = trichotomy(3, 3, &Config::default()).unwrap();
        let labels = |i: usize| -> Vec<String> {
            tri.roots[i].factorization.as_ref().unwrap().expanded().iter().map(|f| f.label.clone()).collect()
        };
        assert_eq!(labels(0), vec!["Phi4", "Phi8"]);
        assert_eq!(labels(1), vec!["X2", "X2", "Phi3", "Phi6"]);
        assert!(tri.roots.iter().all(|r| r.candidates.is_empty()));
        assert!(tri.identity_checked);
        assert_eq!(tri.closed.len(), 1);
    }

    #[test]
    fn degree_one_branch() {
        let tri = trichotomy(3, 1, &Config::default()).unwrap();
        let d1 = tri.roots.iter().find(|r| r.branch == P2nBranch::DegreeOne).unwrap();
        assert_eq!(d1.p2n, q(4));
        assert_eq!(d1.candidates[0].s0, p("X1 + X2"));
    }

    #[test]
    fn l_top_quotient() {
        let ex = exclude_l_top(3).unwrap();
        assert_eq!(ex.quotient_over_minus_a, p("X1^4*X2 + X1^2*X2^3 + X2^5"));
        assert!(ex.impossible);
        // a relation divisible by X2 with symmetric cofactor gives a witness
        let r = &p("X2") * &p("X1^3 + X2^3");
        let ctl = exclude_l_top_with(2, &r).unwrap();
        assert!(ctl.symmetric && !ctl.impossible);
    }

    #[test]
    fn control_witness_at_n2() {
        let r = star_search(2, 1, &Config::default()).unwrap();
        assert!(!r.witnesses.is_empty());
        let w = &r.witnesses[0];
        assert!(w.reconstruction_ok);
        assert_eq!(w.a, crate::rational::qf(-1, 4));
        assert!(w.no_real_root);
    }

    #[test]
    fn guard() {
        assert!(no_real_root_guard(&q(-1)).unwrap());
        assert!(!no_real_root_guard(&q(1)).unwrap());
        assert!(no_real_root_guard(&q(0)).is_err());
    }
}
