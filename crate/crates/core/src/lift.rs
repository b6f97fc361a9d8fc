//! Branch-and-lift for factorizations P − R = S·F with S symmetric in X1, X2.
//!
//! Write S = Σ s_k T^k, F = Σ f_k T^k (binary forms s_k, f_k) and
//! P = Σ e_k X1^{2n−k} T^k. Once s0·f0 = e0·X1^{2n} − R is fixed, level k reads
//!
//!   s_k·f0 + s0·f_k − e_k·X1^{2n−k} = −Σ_{0<i<k} s_i·f_{k−i},
//!
//! a linear system with a rational matrix whose right side is polynomial in
//! the parameters introduced so far. Free unknowns become parameters b1, b2, …
//! and inconsistent rows become polynomial constraints on them. Constraints
//! are settled by substitution or by branching over rational roots; anything
//! else left at the end is a capability error.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::config::Config;
use crate::error::{capability_err, input_err, internal_err, Result};
use crate::poly::{poly_divides, Monomial, MultiPoly, Var};
use crate::rational::{rational_roots, Q};
use crate::rings::relation_r;
use crate::upoly::UPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum LiftMode {
    /// Plain approximate-solution search. `enforce_top` requires s_d ≠ 0.
    Approx { enforce_top: bool },
    /// Star equation after dividing by a: additionally F(T − X1) symmetric
    /// and both top coefficients nonzero.
    Star,
}

#[derive(Clone, Debug)]
pub struct LiftProblem {
    pub n: u32,
    /// deg S; deg F = 2n − d.
    pub d: u32,
    pub p2n: Q,
    pub s0: MultiPoly,
    pub mode: LiftMode,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Param {
    pub name: String,
    /// Which unknown it stands for, e.g. "p4" or "s2[0]".
    pub role: String,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct LevelTrace {
    pub level: u32,
    pub unknowns: usize,
    pub rank: usize,
    pub new_params: Vec<String>,
    pub constraints: Vec<MultiPoly>,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Decision {
    pub param: String,
    #[cfg_attr(feature = "serde", serde(with = "crate::ser::rat"))]
    pub value: Q,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct LiftSolution {
    pub s: MultiPoly,
    pub f: MultiPoly,
    pub p: MultiPoly,
    /// p_j = coefficient of X1^j T^{2n−j}, j = 0..=2n.
    pub p_coeffs: Vec<MultiPoly>,
    pub free_params: Vec<Param>,
    /// Polynomials in the free parameters that must not vanish.
    pub nonzero: Vec<MultiPoly>,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(tag = "result", rename_all = "lowercase"))]
pub enum LiftOutcome {
    Empty { reason: String },
    Solution(LiftSolution),
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct LiftBranch {
    pub decisions: Vec<Decision>,
    pub trace: Vec<LevelTrace>,
    pub params: Vec<Param>,
    #[cfg_attr(feature = "serde", serde(flatten))]
    pub outcome: LiftOutcome,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct LiftReport {
    pub f0: MultiPoly,
    pub branches: Vec<LiftBranch>,
}

impl LiftReport {
    pub fn solutions(&self) -> impl Iterator<Item = &LiftSolution> {
        self.branches.iter().filter_map(|b| match &b.outcome {
            LiftOutcome::Solution(s) => Some(s),
            LiftOutcome::Empty { .. } => None,
        })
    }

    pub fn is_empty(&self) -> bool {
        self.solutions().next().is_none()
    }
}

// ---------------------------------------------------------------- constraints

/// Outcome of settling a constraint list.
#[derive(Clone, Debug)]
pub(crate) enum Resolved {
    Alive {
        /// Substitutions to apply in order.
        subs: Vec<(Var, MultiPoly)>,
        decisions: Vec<(Var, Q)>,
        residual: Vec<MultiPoly>,
    },
    Dead {
        decisions: Vec<(Var, Q)>,
        reason: String,
    },
}

fn linear_candidate(eqs: &[MultiPoly]) -> Option<(Var, MultiPoly)> {
    for e in eqs {
        for v in e.vars() {
            if e.degree_in(v) != Some(1) {
                continue;
            }
            if let Some(a) = e.coeff_of(v, 1).as_constant() {
                let rest = e.coeff_of(v, 0);
                return Some((v, rest.scale(&(-a.recip()))));
            }
        }
    }
    None
}

fn dedup_polys(v: &mut Vec<MultiPoly>) {
    let mut out: Vec<MultiPoly> = Vec::new();
    for p in v.drain(..) {
        if !p.is_zero() && !out.contains(&p) {
            out.push(p);
        }
    }
    *v = out;
}

/// Settle constraints `eqs = 0` (polynomials in parameters only).
pub(crate) fn resolve(eqs: Vec<MultiPoly>) -> Result<Vec<Resolved>> {
    resolve_rec(eqs, Vec::new(), Vec::new())
}

fn resolve_rec(
    mut eqs: Vec<MultiPoly>,
    mut subs: Vec<(Var, MultiPoly)>,
    decisions: Vec<(Var, Q)>,
) -> Result<Vec<Resolved>> {
    loop {
        dedup_polys(&mut eqs);
        if let Some(c) = eqs.iter().find(|c| c.is_constant()) {
            return Ok(vec![Resolved::Dead { decisions, reason: format!("constraint {c} = 0 is inconsistent") }]);
        }
        match linear_candidate(&eqs) {
            Some((v, val)) => {
                eqs = eqs.iter().map(|e| e.substitute(v, &val)).collect();
                subs.push((v, val));
            }
            None => break,
        }
    }
    if eqs.is_empty() {
        return Ok(vec![Resolved::Alive { subs, decisions, residual: eqs }]);
    }
    // univariate constraints: branch over the rational roots of their gcd
    let mut uni: BTreeMap<Var, UPoly<Q>> = BTreeMap::new();
    for e in &eqs {
        let vs = e.vars();
        if vs.len() == 1 {
            let v = *vs.iter().next().unwrap();
            let u = UPoly::new(e.to_univariate(v).unwrap());
            let g = match uni.get(&v) {
                Some(g) => g.gcd(&u),
                None => u.monic(),
            };
            uni.insert(v, g);
        }
    }
    let branch_values: Option<(Var, Vec<Q>, String)> = if let Some((v, g)) = uni.into_iter().next() {
        let roots = if g.degree() == Some(0) { Vec::new() } else { rational_roots(g.coeffs())? };
        Some((v, roots, format!("constraints on {v} have no common rational root")))
    } else if let Some(e) = eqs.iter().find(|e| e.num_terms() == 1) {
        // c·monomial = 0: some variable of the monomial vanishes
        let (m, _) = e.leading().unwrap();
        let vs: Vec<Var> = m.vars().map(|(v, _)| v).collect();
        let mut out = Vec::new();
        for v in vs {
            let mut d = decisions.clone();
            d.push((v, Q::zero()));
            let mut s = subs.clone();
            let z = MultiPoly::zero();
            s.push((v, z.clone()));
            let next: Vec<MultiPoly> = eqs.iter().map(|x| x.substitute(v, &z)).collect();
            out.extend(resolve_rec(next, s, d)?);
        }
        return Ok(out);
    } else {
        None
    };
    match branch_values {
        None => Ok(vec![Resolved::Alive { subs, decisions, residual: eqs }]),
        Some((v, roots, reason)) => {
            if roots.is_empty() {
                return Ok(vec![Resolved::Dead { decisions, reason }]);
            }
            let mut out = Vec::new();
            for r in roots {
                let val = MultiPoly::constant(r.clone());
                let next: Vec<MultiPoly> = eqs.iter().map(|x| x.substitute(v, &val)).collect();
                let mut d = decisions.clone();
                d.push((v, r));
                let mut s = subs.clone();
                s.push((v, val));
                out.extend(resolve_rec(next, s, d)?);
            }
            Ok(out)
        }
    }
}

// ---------------------------------------------------------------- linear algebra

pub(crate) struct Rref {
    /// Pivot column of each of the first `rank` rows.
    pub pivots: Vec<usize>,
    pub a: Vec<Vec<Q>>,
    pub rhs: Vec<MultiPoly>,
}

/// Reduced row echelon form of [a | rhs], pivots taken leftmost.
pub(crate) fn rref(mut a: Vec<Vec<Q>>, mut rhs: Vec<MultiPoly>, ncols: usize) -> Rref {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, pr);
        rhs.swap(r, pr);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        rhs[r] = rhs[r].scale(&inv);
        for i in 0..a.len() {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let fct = a[i][c].clone();
            for j in 0..ncols {
                let delta = &fct * &a[r][j];
                a[i][j] -= delta;
            }
            rhs[i] = &rhs[i] - &rhs[r].scale(&fct);
        }
        pivots.push(c);
        r += 1;
    }
    Rref { pivots, a, rhs }
}

/// Symmetric basis of binary forms of degree `dd`.
pub fn symmetric_basis(dd: u32) -> Vec<MultiPoly> {
    (0..=dd / 2)
        .map(|i| {
            let m = |a: u32, b: u32| MultiPoly::term(Monomial::from_pairs(&[(Var::X1, a), (Var::X2, b)]), Q::one());
            if i == dd - i {
                m(i, i)
            } else {
                m(dd - i, i) + m(i, dd - i)
            }
        })
        .collect()
}

pub fn binary_monomials(dd: u32) -> Vec<MultiPoly> {
    (0..=dd)
        .map(|i| MultiPoly::term(Monomial::from_pairs(&[(Var::X1, dd - i), (Var::X2, i)]), Q::one()))
        .collect()
}

/// Coefficient of X1^{dd−j} X2^j, j = 0..=dd, as polynomials in the other variables.
pub(crate) fn binary_coeffs(p: &MultiPoly, dd: u32) -> Result<Vec<MultiPoly>> {
    let parts = p.split_by(&[Var::X1, Var::X2]);
    let mut out = vec![MultiPoly::zero(); dd as usize + 1];
    for (m, c) in parts {
        if m.degree() != dd {
            return Err(internal_err!("{p} is not a form of degree {dd} in X1, X2"));
        }
        out[m.exp(Var::X2) as usize] = c;
    }
    Ok(out)
}

// ---------------------------------------------------------------- engine

#[derive(Clone)]
struct State {
    s: Vec<MultiPoly>,
    f: Vec<MultiPoly>,
    e: Vec<MultiPoly>,
    live: Vec<(Var, Param)>,
    all_params: Vec<Param>,
    constraints: Vec<MultiPoly>,
    decisions: Vec<Decision>,
    trace: Vec<LevelTrace>,
    next_id: u16,
}

impl State {
    fn apply(&mut self, v: Var, val: &MultiPoly) {
        for p in self.s.iter_mut().chain(self.f.iter_mut()).chain(self.e.iter_mut()) {
            if p.involves(v) {
                *p = p.substitute(v, val);
            }
        }
        for c in self.constraints.iter_mut() {
            *c = c.substitute(v, val);
        }
        self.live.retain(|(w, _)| *w != v);
    }

    fn name_of(&self, v: Var) -> String {
        v.name()
    }

    fn fresh(&mut self, role: String, cfg: &Config) -> Result<Var> {
        let v = Var::param(self.next_id);
        self.next_id += 1;
        let p = Param { name: v.name(), role };
        self.live.push((v, p.clone()));
        self.all_params.push(p);
        if self.live.len() > cfg.max_params {
            return Err(capability_err!(
                "lift needs {} live parameters, bound is {}",
                self.live.len(),
                cfg.max_params
            ));
        }
        Ok(v)
    }

    fn into_empty(self, reason: String) -> LiftBranch {
        LiftBranch {
            decisions: self.decisions,
            trace: self.trace,
            params: self.all_params,
            outcome: LiftOutcome::Empty { reason },
        }
    }
}

/// Apply a resolver result to a state; dead branches go to `done`.
fn settle(st: State, done: &mut Vec<LiftBranch>) -> Result<Vec<State>> {
    let mut out = Vec::new();
    for r in resolve(st.constraints.clone())? {
        let mut s = st.clone();
        match r {
            Resolved::Dead { decisions, reason } => {
                for (v, x) in decisions {
                    s.decisions.push(Decision { param: s.name_of(v), value: x });
                }
                done.push(s.into_empty(reason));
            }
            Resolved::Alive { subs, decisions, residual } => {
                for (v, val) in &subs {
                    s.apply(*v, val);
                }
                for (v, x) in decisions {
                    s.decisions.push(Decision { param: s.name_of(v), value: x });
                }
                s.constraints = residual;
                out.push(s);
            }
        }
    }
    Ok(out)
}

fn check_problem(pb: &LiftProblem) -> Result<MultiPoly> {
    let n2 = 2 * pb.n;
    if pb.n == 0 || pb.d == 0 || pb.d >= n2 {
        return Err(input_err!("need 0 < d < 2n, got n = {}, d = {}", pb.n, pb.d));
    }
    if !pb.s0.is_homogeneous() || pb.s0.total_degree() != Some(pb.d) || !pb.s0.is_symmetric() {
        return Err(input_err!("s0 = {} is not a symmetric form of degree {}", pb.s0, pb.d));
    }
    let target = MultiPoly::var(Var::X1).pow(n2).scale(&pb.p2n) - relation_r(pb.n);
    poly_divides(&pb.s0, &target)?
        .ok_or_else(|| input_err!("s0 = {} does not divide {}", pb.s0, target))
}

fn solve_level(st: &mut State, pb: &LiftProblem, s0: &MultiPoly, f0: &MultiPoly, k: u32, cfg: &Config) -> Result<()> {
    let n2 = 2 * pb.n;
    let d2 = n2 - pb.d;
    let dd = n2 - k;
    let x1pow = MultiPoly::var(Var::X1).pow(dd);

    let mut cols: Vec<MultiPoly> = Vec::new();
    let mut roles: Vec<String> = Vec::new();
    let s_basis = if k <= pb.d { symmetric_basis(pb.d - k) } else { Vec::new() };
    let f_basis = if k <= d2 { binary_monomials(d2 - k) } else { Vec::new() };
    for (i, b) in s_basis.iter().enumerate() {
        cols.push(b * f0);
        roles.push(format!("s{k}[{i}]"));
    }
    for (i, b) in f_basis.iter().enumerate() {
        cols.push(s0 * b);
        roles.push(format!("f{k}[{i}]"));
    }
    cols.push(-x1pow);
    roles.push(format!("p{}", n2 - k));

    let mut known = MultiPoly::zero();
    for i in 1..k {
        let j = k - i;
        if (i as usize) < st.s.len() && (j as usize) < st.f.len() {
            known = known + &st.s[i as usize] * &st.f[j as usize];
        }
    }
    let ncols = cols.len();
    let mut a = vec![vec![Q::zero(); ncols]; dd as usize + 1];
    for (c, col) in cols.iter().enumerate() {
        for (r, x) in binary_coeffs(col, dd)?.into_iter().enumerate() {
            a[r][c] = x.as_constant().ok_or_else(|| internal_err!("non-rational matrix entry"))?;
        }
    }
    let rhs: Vec<MultiPoly> = binary_coeffs(&known, dd)?.into_iter().map(|x| -x).collect();
    let red = rref(a, rhs, ncols);

    let rank = red.pivots.len();
    let mut values: Vec<Option<MultiPoly>> = vec![None; ncols];
    let mut new_params = Vec::new();
    for c in 0..ncols {
        if !red.pivots.contains(&c) {
            let v = st.fresh(roles[c].clone(), cfg)?;
            new_params.push(v.name());
            values[c] = Some(MultiPoly::var(v));
        }
    }
    for (r, &c) in red.pivots.iter().enumerate() {
        let mut val = red.rhs[r].clone();
        for j in 0..ncols {
            if j != c && !red.a[r][j].is_zero() {
                val = val - values[j].as_ref().unwrap().scale(&red.a[r][j]);
            }
        }
        values[c] = Some(val);
    }
    let constraints: Vec<MultiPoly> = red.rhs[rank..].iter().filter(|x| !x.is_zero()).cloned().collect();

    let mut idx = 0;
    if k <= pb.d {
        let mut sk = MultiPoly::zero();
        for b in &s_basis {
            sk = sk + b * values[idx].as_ref().unwrap();
            idx += 1;
        }
        st.s.push(sk);
    }
    if k <= d2 {
        let mut fk = MultiPoly::zero();
        for b in &f_basis {
            fk = fk + b * values[idx].as_ref().unwrap();
            idx += 1;
        }
        st.f.push(fk);
    }
    st.e.push(values[idx].take().unwrap());
    st.constraints.extend(constraints.iter().cloned());
    st.trace.push(LevelTrace { level: k, unknowns: ncols, rank, new_params, constraints });
    Ok(())
}

fn assemble(parts: &[MultiPoly]) -> MultiPoly {
    let t = MultiPoly::var(Var::T);
    let mut acc = MultiPoly::zero();
    for (k, c) in parts.iter().enumerate() {
        acc = acc + c * &t.pow(k as u32);
    }
    acc
}

/// Symmetry defect of F(T − X1), coefficient by coefficient.
pub(crate) fn shifted_symmetry_defect(f: &MultiPoly) -> Vec<MultiPoly> {
    let shifted = f.substitute(Var::T, &(MultiPoly::var(Var::T) - MultiPoly::var(Var::X1)));
    let defect = &shifted - &shifted.swap(Var::X1, Var::X2);
    defect.split_by(&[Var::T, Var::X1, Var::X2]).into_values().collect()
}

/// Top-coefficient conditions after closing; None means the branch dies.
fn nonzero_conditions(st: &State, pb: &LiftProblem) -> core::result::Result<Vec<MultiPoly>, String> {
    let d2 = (2 * pb.n - pb.d) as usize;
    let mut conds: Vec<(MultiPoly, &str)> = Vec::new();
    match pb.mode {
        LiftMode::Approx { enforce_top: false } => {}
        LiftMode::Approx { enforce_top: true } => conds.push((st.s[pb.d as usize].clone(), "s_top")),
        LiftMode::Star => {
            conds.push((st.s[pb.d as usize].clone(), "s_top"));
            conds.push((st.f[d2].clone(), "f_top"));
        }
    }
    let mut out = Vec::new();
    for (c, name) in conds {
        if c.is_zero() {
            return Err(format!("top coefficient {name} vanishes"));
        }
        if !c.is_constant() {
            out.push(c);
        }
    }
    Ok(out)
}

pub fn lift(pb: &LiftProblem, cfg: &Config) -> Result<LiftReport> {
    let f0 = check_problem(pb)?;
    let n2 = 2 * pb.n;
    let start = State {
        s: vec![pb.s0.clone()],
        f: vec![f0.clone()],
        e: vec![MultiPoly::constant(pb.p2n.clone())],
        live: Vec::new(),
        all_params: Vec::new(),
        constraints: Vec::new(),
        decisions: Vec::new(),
        trace: Vec::new(),
        next_id: 1,
    };
    let mut done: Vec<LiftBranch> = Vec::new();
    let mut alive = vec![start];
    for k in 1..=n2 {
        let mut next = Vec::new();
        for mut st in alive {
            solve_level(&mut st, pb, &pb.s0, &f0, k, cfg)?;
            next.extend(settle(st, &mut done)?);
        }
        alive = next;
    }
    for st in alive {
        let mut closing = vec![st];
        if pb.mode == LiftMode::Star {
            let mut st = closing.pop().unwrap();
            st.constraints.extend(shifted_symmetry_defect(&assemble(&st.f)));
            closing = settle(st, &mut done)?;
        }
        for st in closing {
            if !st.constraints.is_empty() {
                return Err(capability_err!(
                    "constraint system {:?} is beyond the resolver",
                    st.constraints.iter().map(|c| c.to_text()).collect::<Vec<_>>()
                ));
            }
            let nonzero = match nonzero_conditions(&st, pb) {
                Ok(v) => v,
                Err(reason) => {
                    done.push(st.into_empty(reason));
                    continue;
                }
            };
            let s = assemble(&st.s);
            let f = assemble(&st.f);
            let mut p = MultiPoly::zero();
            for (k, ek) in st.e.iter().enumerate() {
                let m = Monomial::from_pairs(&[(Var::T, k as u32), (Var::X1, n2 - k as u32)]);
                p = p + ek.mul_monomial(&m);
            }
            if &(&p - &relation_r(pb.n)) - &(&s * &f) != MultiPoly::zero() {
                return Err(internal_err!("lift produced S·F ≠ P − R"));
            }
            let p_coeffs = (0..=n2 as usize).rev().map(|k| st.e[k].clone()).collect();
            let free_params = st.live.iter().map(|(_, p)| p.clone()).collect();
            done.push(LiftBranch {
                decisions: st.decisions,
                trace: st.trace,
                params: st.all_params,
                outcome: LiftOutcome::Solution(LiftSolution { s, f, p, p_coeffs, free_params, nonzero }),
            });
        }
    }
    Ok(LiftReport { f0, branches: done })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::p;
    use crate::rational::q;
    use crate::rings::sigma;

    fn approx(n: u32, d: u32, p2n: i64, s0: &str, enforce_top: bool) -> LiftReport {
        let pb = LiftProblem { n, d, p2n: q(p2n), s0: p(s0), mode: LiftMode::Approx { enforce_top } };
        lift(&pb, &Config::default()).unwrap()
    }

    #[test]
    fn sigma_family_appears() {
        let r = approx(3, 4, 1, "X1^4 + X1^2*X2^2 + X2^4", true);
        let sols: Vec<_> = r.solutions().collect();
        assert_eq!(sols.len(), 1);
        let b = MultiPoly::var(Var::param(1));
        let t2 = MultiPoly::var(Var::T).pow(2);
        let expect = sigma(3, &[&b * &t2, MultiPoly::var(Var::X1).pow(2)]);
        assert_eq!(sols[0].p, expect);
        assert_eq!(sols[0].free_params[0].role, "p4");
    }

    #[test]
    fn wrong_divisor_rejected() {
        let pb = LiftProblem {
            n: 3,
            d: 2,
            p2n: q(0),
            s0: p("X1^2 + X1*X2 + X2^2"),
            mode: LiftMode::Approx { enforce_top: true },
        };
        assert!(lift(&pb, &Config::default()).is_err());
    }

    #[test]
    fn resolver_branches_on_roots() {
        let b1 = Var::param(1);
        let out = resolve(vec![p("b1^2 - 1"), p("b1^3 - b1")]).unwrap();
        let vals: Vec<Q> = out
            .iter()
            .map(|r| match r {
                Resolved::Alive { decisions, .. } => decisions[0].1.clone(),
                _ => panic!(),
            })
            .collect();
        assert_eq!(vals, vec![q(-1), q(1)]);
        assert!(matches!(&resolve(vec![p("b1^2 + 1")]).unwrap()[0], Resolved::Dead { .. }));
        match &resolve(vec![p("b1 - 2*b2"), p("b2 - 3")]).unwrap()[0] {
            Resolved::Alive { subs, .. } => {
                assert_eq!(subs[0].0, b1);
            }
            _ => panic!(),
        }
    }
}
