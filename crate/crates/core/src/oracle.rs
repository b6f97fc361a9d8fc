//! Brute-force cross-checks.
//!
//! The search oracle enumerates every factor-subset product of p·X1^{2n} − R,
//! keeps the symmetric ones of the right degree, and solves each level with
//! general (not symmetric-basis) unknowns for s_k plus explicit symmetry rows,
//! by its own elimination. The gate oracle rebuilds the factor list of
//! 1 − x^{2n+2} by trial division and redoes the sign and Schur tests.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::config::Config;
use crate::cyclotomic::{cyclotomic_upoly, factor_cyclotomic_form};
use crate::error::{capability_err, input_err, internal_err, Result};
use crate::gate::{schur_value, FactorAssignment, GateReport};
use crate::lift::{resolve, LiftMode, LiftSolution, Resolved};
use crate::poly::{poly_divides, Monomial, MultiPoly, Var};
use crate::rational::{q, Q};
use crate::resultant::resultant;
use crate::rings::{relation_r, sigma};
use crate::splitter::{P2nBranch, SearchReport};
use crate::upoly::UPoly;

// ---------------------------------------------------------------- gate

fn oracle_partitions(total: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if total == 0 {
        out.push(prefix.clone());
        return;
    }
    for p in 1..=max_part.min(total) {
        prefix.push(p);
        oracle_partitions(total - p, p, prefix, out);
        prefix.pop();
    }
}

/// Normalized factors ±Φ_d of 1 − x^m, found by trial division over d = 1..=m.
pub fn trial_factors(m: u32) -> Result<Vec<(u32, UPoly<Q>)>> {
    if m == 0 {
        return Err(input_err!("need m ≥ 1"));
    }
    let mut rest: UPoly<Q> = UPoly::new((0..=m).map(|i| if i == 0 { q(1) } else if i == m { q(-1) } else { q(0) }).collect());
    let mut factors = Vec::new();
    for d in 1..=m {
        let phi = cyclotomic_upoly(d);
        if let Some(quot) = rest.div_exact(&phi) {
            rest = quot;
            let c0 = phi.coeff(0);
            factors.push((d, phi.scale(&c0.recip())));
        }
    }
    if rest.degree() != Some(0) {
        return Err(internal_err!("trial division left {:?}", rest.coeffs()));
    }
    Ok(factors)
}

/// VALID splits of 1 − x^{2n+2} into sides of degree l + 1 and 2n + 1 − l.
pub fn gate_oracle(n: u32, l: u32) -> Result<Vec<FactorAssignment>> {
    if n == 0 || l == 0 || l >= 2 * n {
        return Err(input_err!("need 0 < l < 2n"));
    }
    let factors = trial_factors(2 * n + 2)?;
    let mut valid = Vec::new();
    for mask in 0u32..1 << factors.len() {
        let pick = |inside: bool| {
            factors
                .iter()
                .enumerate()
                .filter(|(i, _)| (mask >> i & 1 == 1) == inside)
                .fold((Vec::new(), UPoly::constant(q(1))), |(mut ds, p), (_, (d, f))| {
                    ds.push(*d);
                    (ds, p.mul(f))
                })
        };
        let (s1, p1) = pick(true);
        let (s2, p2) = pick(false);
        if p1.degree() != Some(l as usize + 1) {
            continue;
        }
        let c: Vec<Q> = p1.coeffs().iter().enumerate().map(|(i, x)| if i % 2 == 1 { -x.clone() } else { x.clone() }).collect();
        let d: Vec<Q> = p2.coeffs().to_vec();
        if c.iter().chain(d.iter()).any(|x| !x.is_positive()) {
            continue;
        }
        let schur_ok = |v: &[Q]| {
            let mut parts = Vec::new();
            for size in 1..=2 * n + 1 {
                oracle_partitions(size, v.len() as u32 - 1, &mut Vec::new(), &mut parts);
            }
            parts.iter().all(|lam| !schur_value(v, lam).is_negative())
        };
        if schur_ok(&c) && schur_ok(&d) {
            let mut a = FactorAssignment { s1, s2 };
            a.s1.sort();
            a.s2.sort();
            valid.push(a);
        }
    }
    valid.sort();
    Ok(valid)
}

pub fn compare_gate(report: &GateReport) -> Result<bool> {
    Ok(gate_oracle(report.n, report.l)? == report.valid)
}

// ---------------------------------------------------------------- smoothness

/// Σ_n(T², X1², X2²) = 0 is smooth: discriminant on the coordinate lines, and
/// on c = 1 elimination of T (not X1) from the partials of Σ_n(a, b, c).
pub fn smooth_oracle(n: u32, cfg: &Config) -> Result<bool> {
    if n == 0 {
        return Err(input_err!("need n ≥ 1"));
    }
    let z = MultiPoly::var(Var::Z);
    let f = sigma(n, &[z.pow(2), MultiPoly::one()]);
    let disc = resultant(&f, &f.derivative(Var::Z), Var::Z)?;
    let coordinate_ok = disc.as_constant().map(|c| !c.is_zero()).unwrap_or(false);
    let (t, x1, x2) = (MultiPoly::var(Var::T), MultiPoly::var(Var::X1), MultiPoly::var(Var::X2));
    let g = sigma(n, &[t.clone(), x1.clone(), x2]);
    let partials: Vec<MultiPoly> =
        [Var::T, Var::X1, Var::X2].iter().map(|&v| g.derivative(v).substitute(Var::X2, &MultiPoly::one())).collect();
    for lambda in 0..=cfg.max_shears {
        let moved = &x1 + &t.scale(&q(lambda as i64 + 1));
        let sheared: Vec<MultiPoly> = partials.iter().map(|p| p.substitute(Var::X1, &moved)).collect();
        let mut acc: Option<UPoly<Q>> = None;
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let r = resultant(&sheared[i], &sheared[j], Var::T)?;
            if r.is_zero() {
                continue;
            }
            let u = UPoly::new(r.to_univariate(Var::X1).ok_or_else(|| internal_err!("resultant is not univariate"))?);
            acc = Some(match acc {
                None => u.monic(),
                Some(a) => a.gcd(&u),
            });
        }
        if acc.map(|h| h.degree() == Some(0)).unwrap_or(false) {
            return Ok(coordinate_ok);
        }
    }
    Err(capability_err!("oracle elimination for n = {n} stayed inconclusive"))
}

// ---------------------------------------------------------------- search

#[derive(Clone, Debug, PartialEq)]
pub struct OracleBranch {
    pub p2n: P2nBranch,
    pub s0: MultiPoly,
    pub solutions: Vec<LiftSolution>,
}

fn pools(n: u32, d: u32) -> Result<Vec<(P2nBranch, Q, Vec<MultiPoly>)>> {
    let mut out = Vec::new();
    for (branch, p) in [(P2nBranch::Zero, q(0)), (P2nBranch::One, q(1))] {
        let target = MultiPoly::var(Var::X1).pow(2 * n).scale(&p) - relation_r(n);
        let items: Vec<MultiPoly> = factor_cyclotomic_form(&target)?.expanded().into_iter().map(|f| f.poly).collect();
        let mut found: Vec<MultiPoly> = Vec::new();
        for mask in 0u64..1 << items.len() {
            let prod = (0..items.len())
                .filter(|i| mask >> i & 1 == 1)
                .fold(MultiPoly::one(), |acc, i| &acc * &items[i]);
            if prod.total_degree() == Some(d) && prod.is_symmetric() && !found.contains(&prod) {
                found.push(prod);
            }
        }
        out.push((branch, p, found));
    }
    if d == 1 {
        let p = q(n as i64 + 1);
        let target = MultiPoly::var(Var::X1).pow(2 * n).scale(&p) - relation_r(n);
        let s0 = MultiPoly::var(Var::X1) + MultiPoly::var(Var::X2);
        let found = if poly_divides(&s0, &target)?.is_some() { vec![s0] } else { Vec::new() };
        out.push((P2nBranch::DegreeOne, p, found));
    }
    Ok(out)
}

fn form(vars: &[MultiPoly], dd: u32) -> MultiPoly {
    vars.iter().enumerate().fold(MultiPoly::zero(), |acc, (i, c)| {
        acc + c.mul_monomial(&Monomial::from_pairs(&[(Var::X1, dd - i as u32), (Var::X2, i as u32)]))
    })
}

/// Coefficient of X1^{dd−j}X2^j of a linear combination, as (matrix row, constant).
fn coefficient_rows(p: &MultiPoly, dd: u32, unknowns: &[Var]) -> Vec<(Vec<Q>, MultiPoly)> {
    let mut rows = vec![(vec![Q::zero(); unknowns.len()], MultiPoly::zero()); dd as usize + 1];
    for (m, c) in p.split_by(&[Var::X1, Var::X2]) {
        let j = m.exp(Var::X2) as usize;
        let mut rest = c;
        for (u, v) in unknowns.iter().enumerate() {
            let lin = rest.coeff_of(*v, 1);
            if let Some(a) = lin.as_constant() {
                rows[j].0[u] = a;
            }
            rest = rest.coeff_of(*v, 0);
        }
        rows[j].1 = rest;
    }
    rows
}

struct OracleState {
    s: Vec<MultiPoly>,
    f: Vec<MultiPoly>,
    e: Vec<MultiPoly>,
    constraints: Vec<MultiPoly>,
    live: Vec<Var>,
    next: u16,
}

impl Clone for OracleState {
    fn clone(&self) -> Self {
        OracleState {
            s: self.s.clone(),
            f: self.f.clone(),
            e: self.e.clone(),
            constraints: self.constraints.clone(),
            live: self.live.clone(),
            next: self.next,
        }
    }
}

/// Row echelon by forward elimination, then back substitution.
/// Returns pivot columns and the solved value of each column.
fn eliminate(
    mut rows: Vec<(Vec<Q>, MultiPoly)>,
    ncols: usize,
    fresh: &mut dyn FnMut() -> Result<Var>,
) -> Result<(Vec<Option<MultiPoly>>, Vec<MultiPoly>)> {
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i].0[c].is_zero()) else { continue };
        rows.swap(r, pr);
        for i in r + 1..rows.len() {
            if rows[i].0[c].is_zero() {
                continue;
            }
            let fct = &rows[i].0[c] / &rows[r].0[c];
            for j in c..ncols {
                let delta = &fct * &rows[r].0[j];
                rows[i].0[j] -= delta;
            }
            let delta = rows[r].1.scale(&fct);
            rows[i].1 = &rows[i].1 - &delta;
        }
        pivots.push((r, c));
        r += 1;
    }
    let leftover: Vec<MultiPoly> = rows[r..].iter().map(|x| x.1.clone()).filter(|x| !x.is_zero()).collect();
    let mut vals: Vec<Option<MultiPoly>> = vec![None; ncols];
    for c in 0..ncols {
        if !pivots.iter().any(|&(_, pc)| pc == c) {
            vals[c] = Some(MultiPoly::var(fresh()?));
        }
    }
    for &(row, c) in pivots.iter().rev() {
        // row: Σ a_j x_j + rhs_const = 0
        let (a, k) = &rows[row];
        let mut acc = k.clone();
        for j in c + 1..ncols {
            if !a[j].is_zero() {
                acc = acc + vals[j].as_ref().unwrap().scale(&a[j]);
            }
        }
        vals[c] = Some(acc.scale(&(-a[c].recip())));
    }
    Ok((vals, leftover))
}

fn apply_resolved(st: &OracleState, subs: &[(Var, MultiPoly)]) -> OracleState {
    let mut s = st.clone();
    for (v, val) in subs {
        for p in s.s.iter_mut().chain(s.f.iter_mut()).chain(s.e.iter_mut()) {
            *p = p.substitute(*v, val);
        }
        s.live.retain(|w| w != v);
    }
    s
}

fn settle(st: OracleState) -> Result<Vec<OracleState>> {
    let mut out = Vec::new();
    for r in resolve(st.constraints.clone())? {
        if let Resolved::Alive { subs, residual, .. } = r {
            let mut s = apply_resolved(&st, &subs);
            s.constraints = residual;
            out.push(s);
        }
    }
    Ok(out)
}

pub(crate) fn oracle_lift(n: u32, d: u32, p2n: &Q, s0: &MultiPoly, mode: LiftMode, cfg: &Config) -> Result<Vec<LiftSolution>> {
    let n2 = 2 * n;
    let d2 = n2 - d;
    let target = MultiPoly::var(Var::X1).pow(n2).scale(p2n) - relation_r(n);
    let f0 = poly_divides(s0, &target)?.ok_or_else(|| internal_err!("pool product does not divide"))?;
    let mut alive = vec![OracleState {
        s: vec![s0.clone()],
        f: vec![f0.clone()],
        e: vec![MultiPoly::constant(p2n.clone())],
        constraints: Vec::new(),
        live: Vec::new(),
        next: 1000,
    }];
    let bound = 2 * cfg.max_params + 4;
    for k in 1..=n2 {
        let dd = n2 - k;
        let mut next_alive = Vec::new();
        for mut st in alive {
            let ns = if k <= d { (d - k + 1) as usize } else { 0 };
            let nf = if k <= d2 { (d2 - k + 1) as usize } else { 0 };
            let mut unknowns = Vec::new();
            for _ in 0..ns + nf + 1 {
                unknowns.push(Var::param(st.next));
                st.next += 1;
            }
            let sk = form(&unknowns[..ns].iter().map(|v| MultiPoly::var(*v)).collect::<Vec<_>>(), d.saturating_sub(k));
            let fk = form(&unknowns[ns..ns + nf].iter().map(|v| MultiPoly::var(*v)).collect::<Vec<_>>(), d2.saturating_sub(k));
            let ek = MultiPoly::var(unknowns[ns + nf]);
            let mut expr = if ns > 0 { &sk * &f0 } else { MultiPoly::zero() };
            if nf > 0 {
                expr = expr + s0 * &fk;
            }
            expr = expr - &ek * &MultiPoly::var(Var::X1).pow(dd);
            for i in 1..k {
                let j = k - i;
                if (i as usize) < st.s.len() && (j as usize) < st.f.len() {
                    expr = expr + &st.s[i as usize] * &st.f[j as usize];
                }
            }
            let mut rows = coefficient_rows(&expr, dd, &unknowns);
            for i in 0..ns / 2 {
                let mut row = vec![Q::zero(); unknowns.len()];
                row[i] = q(1);
                row[ns - 1 - i] = q(-1);
                rows.push((row, MultiPoly::zero()));
            }
            let mut fresh_vars = Vec::new();
            let mut counter = st.next;
            let (vals, leftover) = eliminate(rows, unknowns.len(), &mut || {
                let v = Var::param(counter);
                counter += 1;
                fresh_vars.push(v);
                Ok(v)
            })?;
            st.next = counter;
            st.live.extend(fresh_vars);
            if st.live.len() > bound {
                return Err(capability_err!("oracle needs {} live parameters", st.live.len()));
            }
            let subs: Vec<(Var, MultiPoly)> = unknowns.iter().zip(vals).map(|(v, x)| (*v, x.unwrap())).collect();
            let sub = |p: &MultiPoly| p.substitute_all(&subs);
            if ns > 0 {
                st.s.push(sub(&sk));
            }
            if nf > 0 {
                st.f.push(sub(&fk));
            }
            st.e.push(sub(&ek));
            st.constraints.extend(leftover);
            next_alive.extend(settle(st)?);
        }
        alive = next_alive;
    }
    let t = MultiPoly::var(Var::T);
    let poly_in_t = |v: &[MultiPoly]| v.iter().enumerate().fold(MultiPoly::zero(), |acc, (k, c)| acc + c * &t.pow(k as u32));
    let mut out = Vec::new();
    for st in alive {
        let mut states = vec![st];
        if mode == LiftMode::Star {
            let mut st = states.pop().unwrap();
            let g = poly_in_t(&st.f).substitute(Var::T, &(&t - &MultiPoly::var(Var::X1)));
            let defect = &g - &g.swap(Var::X1, Var::X2);
            st.constraints.extend(defect.split_by(&[Var::T, Var::X1, Var::X2]).into_values());
            states = settle(st)?;
        }
        for st in states {
            if !st.constraints.is_empty() {
                return Err(capability_err!("oracle left unresolved constraints"));
            }
            let tops: Vec<MultiPoly> = match mode {
                LiftMode::Approx { enforce_top: false } => Vec::new(),
                LiftMode::Approx { enforce_top: true } => vec![st.s[d as usize].clone()],
                LiftMode::Star => vec![st.s[d as usize].clone(), st.f[d2 as usize].clone()],
            };
            if tops.iter().any(|x| x.is_zero()) {
                continue;
            }
            let s = poly_in_t(&st.s);
            let f = poly_in_t(&st.f);
            let p = st.e.iter().enumerate().fold(MultiPoly::zero(), |acc, (k, c)| {
                acc + c.mul_monomial(&Monomial::from_pairs(&[(Var::T, k as u32), (Var::X1, n2 - k as u32)]))
            });
            if &(&p - &relation_r(n)) - &(&s * &f) != MultiPoly::zero() {
                return Err(internal_err!("oracle solution fails P - R = S*F"));
            }
            out.push(LiftSolution {
                s,
                f,
                p,
                p_coeffs: (0..=n2 as usize).rev().map(|k| st.e[k].clone()).collect(),
                free_params: Vec::new(),
                nonzero: tops.into_iter().filter(|x| !x.is_constant()).collect(),
            });
        }
    }
    Ok(out)
}

/// Independent search over the same branches as `symmetric_divisor_search`.
pub fn search_oracle(n: u32, d: u32, mode: LiftMode, cfg: &Config) -> Result<Vec<OracleBranch>> {
    if n == 0 || d == 0 || d >= 2 * n {
        return Err(input_err!("need 0 < d < 2n"));
    }
    let mut out = Vec::new();
    for (branch, p, cands) in pools(n, d)? {
        for s0 in cands {
            let solutions = oracle_lift(n, d, &p, &s0, mode, cfg)?;
            out.push(OracleBranch { p2n: branch, s0, solutions });
        }
    }
    Ok(out)
}

/// Renames every parameter by the first P coefficient equal to it, so two
/// parametrizations of the same family compare equal.
pub fn canonical_family(sol: &LiftSolution) -> Result<(MultiPoly, MultiPoly)> {
    let params: Vec<Var> = sol.p.vars().into_iter().chain(sol.s.vars()).filter(|v| v.is_param()).collect();
    let mut ren: BTreeMap<Var, MultiPoly> = BTreeMap::new();
    for v in params {
        if ren.contains_key(&v) {
            continue;
        }
        let j = sol
            .p_coeffs
            .iter()
            .position(|c| *c == MultiPoly::var(v))
            .ok_or_else(|| capability_err!("parameter {} is not a coefficient of P", v.name()))?;
        ren.insert(v, MultiPoly::var(Var::param(60000 + j as u16)));
    }
    let subs: Vec<(Var, MultiPoly)> = ren.into_iter().collect();
    // rename through fresh names so chains cannot collide
    Ok((sol.p.substitute_all(&subs), sol.s.substitute_all(&subs)))
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct OracleCheck {
    pub branches_compared: usize,
    pub agree: bool,
    pub mismatches: Vec<String>,
}

fn canonical_set(sols: &[LiftSolution]) -> Result<Vec<String>> {
    let mut v = Vec::new();
    for s in sols {
        let (p, s) = canonical_family(s)?;
        v.push(format!("P = {p}; S = {s}"));
    }
    v.sort();
    v.dedup();
    Ok(v)
}

pub fn compare_search(report: &SearchReport, cfg: &Config) -> Result<OracleCheck> {
    let oracle = search_oracle(report.n, report.d, report.mode, cfg)?;
    let mut mismatches = Vec::new();
    let key = |b: P2nBranch, s0: &MultiPoly| format!("{b:?} s0 = {s0}");
    let mut ours: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for b in &report.branches {
        let sols: Vec<LiftSolution> = b.lift.solutions().cloned().collect();
        ours.insert(key(b.p2n, &b.s0), canonical_set(&sols)?);
    }
    let mut theirs: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for b in &oracle {
        theirs.insert(key(b.p2n, &b.s0), canonical_set(&b.solutions)?);
    }
    for k in ours.keys().chain(theirs.keys()) {
        if ours.get(k) != theirs.get(k) && !mismatches.iter().any(|m: &String| m.starts_with(k.as_str())) {
            mismatches.push(format!("{k}: search {:?} vs oracle {:?}", ours.get(k), theirs.get(k)));
        }
    }
    Ok(OracleCheck { branches_compared: theirs.len(), agree: mismatches.is_empty(), mismatches })
}
