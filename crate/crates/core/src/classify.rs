//! Primitive approximate solutions.
//!
//! Near y0 (a primitive 2(n − p_{2n} + 1)-th root of unity) the divisor gives
//! a germ y(x) with
//!
//!   P(x(1+y), 1) − R(y, 1) = 0,   P(x(1+y), y) − R(y, 1) = 0.
//!
//! Matching x^m yields a 2×2 system in (p_{2n−m}, y^{(m)}(0)) solved exactly
//! over Q(ζ)[b]. At the one singular level the coefficient p_{2n−m} is the
//! free parameter b.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::config::Config;
use crate::cyclo::{eval_at, CycloElt};
use crate::cyclotomic::FormFactor;
use crate::error::{capability_err, input_err, internal_err, Result};
use crate::lift::LiftMode;
use crate::oracle::oracle_lift;
use crate::poly::{Monomial, MultiPoly, Var};
use crate::rational::{factorial, q};
use crate::rings::{relation_r, sigma};
use crate::upoly::{Field, Ring, UPoly};

type Coef = UPoly<CycloElt>;
type Series = Vec<Coef>;

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct LevelDeterminant {
    pub m: u32,
    pub det: CycloElt,
    pub closed_form: CycloElt,
    pub matches_closed_form: bool,
    pub nonzero: bool,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ClassifyReport {
    pub n: u32,
    pub p2n: u32,
    /// y0 = ζ_k.
    pub k: u32,
    pub r_prime: CycloElt,
    /// R′ from R(y,1)(y² − 1) = y^{2n+2} − 1 agrees with the direct derivative.
    pub r_prime_checked: bool,
    /// 2n·y0 − y0²R′ = −R′ (p_{2n} = 1 only).
    pub dagger_checked: Option<bool>,
    /// Level where the system is singular and b enters.
    pub free_level: u32,
    pub determinants: Vec<LevelDeterminant>,
    /// p_j for j = 0..=2n as polynomials in b.
    pub coefficients: Vec<MultiPoly>,
    pub p: MultiPoly,
    pub closed_form: MultiPoly,
    pub matches_closed_form: bool,
}

fn b_var() -> Var {
    Var::param(1)
}

fn cst(c: CycloElt) -> Coef {
    UPoly::constant(c)
}

fn ser_mul(a: &Series, b: &Series, len: usize) -> Series {
    let mut out = vec![UPoly::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

fn ser_powers(a: &Series, upto: usize, len: usize) -> Vec<Series> {
    let mut one = vec![UPoly::zero(); len];
    one[0] = cst(CycloElt::one());
    let mut out = vec![one];
    for _ in 0..upto {
        let next = ser_mul(out.last().unwrap(), a, len);
        out.push(next);
    }
    out
}

fn to_rational_poly(c: &Coef) -> Result<MultiPoly> {
    let mut out = MultiPoly::zero();
    for (i, x) in c.coeffs().iter().enumerate() {
        let r = x.as_rational().ok_or_else(|| internal_err!("coefficient {x} is not rational"))?;
        out = out + MultiPoly::var(b_var()).pow(i as u32).scale(&r);
    }
    Ok(out)
}

/// [x^m] of eq1 and eq2 given p (index j = T-degree ↦ p_{2n−j}) and y.
fn residuals(n: u32, p2n_t: &[Coef], y: &Series, m: usize) -> (Coef, Coef) {
    let n2 = 2 * n as usize;
    let len = m + 1;
    let mut one_plus_y = y.clone();
    one_plus_y.truncate(len);
    one_plus_y[0] = one_plus_y[0].add(&cst(CycloElt::one()));
    let ypows = ser_powers(&y[..len].to_vec(), n2, len);
    let opy = ser_powers(&one_plus_y, m, len);
    let mut e1 = vec![UPoly::zero(); len];
    let mut e2 = vec![UPoly::zero(); len];
    for (j, pj) in p2n_t.iter().enumerate().take(m + 1) {
        if pj.is_zero() {
            continue;
        }
        // p_{2n−j} x^j (1+y)^j · w^{2n−j}
        for (i, c) in opy[j].iter().enumerate() {
            if i + j < len {
                e1[i + j] = e1[i + j].add(&pj.mul(c));
            }
        }
        let w = ser_mul(&opy[j], &ypows[n2 - j], len);
        for (i, c) in w.iter().enumerate() {
            if i + j < len {
                e2[i + j] = e2[i + j].add(&pj.mul(c));
            }
        }
    }
    let mut r = vec![UPoly::zero(); len];
    for i in 0..=n as usize {
        for (t, c) in ypows[2 * i].iter().enumerate() {
            r[t] = r[t].add(c);
        }
    }
    (e1[m].sub(&r[m]), e2[m].sub(&r[m]))
}

/// Forced shape of a primitive approximate solution.
pub fn classify_primitive(n: u32, p2n: u32, cfg: &Config) -> Result<ClassifyReport> {
    if n < 2 {
        return Err(input_err!("classify needs n ≥ 2"));
    }
    if p2n > 1 {
        return Err(input_err!("p2n must be 0 or 1, got {p2n}"));
    }
    if n > cfg.max_classify_n {
        return Err(capability_err!("n = {n} exceeds the classify bound {}", cfg.max_classify_n));
    }
    let n2 = 2 * n;
    let k = 2 * (n - p2n + 1);
    let y0 = CycloElt::zeta(k);
    let one = CycloElt::one();
    let yp = |e: u32| y0.pow(e as u64);
    let r_univ = relation_r(n).substitute(Var::X2, &MultiPoly::one()).substitute(Var::X1, &MultiPoly::var(Var::Z));
    let r_at = eval_at(&r_univ, Var::Z, &y0)?;
    let r_direct = eval_at(&r_univ.derivative(Var::Z), Var::Z, &y0)?;
    // R′(y²−1) + 2yR = (2n+2)y^{2n+1}
    let num = yp(n2 + 1).mul(&CycloElt::from_int(n2 as i64 + 2)).sub(&y0.mul(&r_at).mul(&CycloElt::from_int(2)));
    let den = yp(2).sub(&one).inv().ok_or_else(|| internal_err!("y0² = 1"))?;
    let r_prime = num.mul(&den);
    let r_prime_checked = r_prime == r_direct && !r_prime.is_zero();
    let dagger_checked = (p2n == 1).then(|| {
        y0.mul(&CycloElt::from_int(n2 as i64)).sub(&yp(2).mul(&r_prime)) == r_prime.neg()
    });
    let free_level = if p2n == 0 { n2 } else { 2 };

    // p by T-degree: pt[j] = p_{2n−j}
    let mut pt: Vec<Coef> = vec![UPoly::zero(); n2 as usize + 1];
    pt[0] = cst(CycloElt::from_int(p2n as i64));
    let mut y: Series = vec![UPoly::zero(); n2 as usize + 1];
    y[0] = cst(y0.clone());
    let mut determinants = Vec::new();
    for m in 1..=n2 {
        let mu = m as usize;
        let (r1, r2) = residuals(n, &pt, &y, mu);
        let a11 = one.add(&y0).pow(m as u64);
        let a12 = r_prime.neg();
        let a21 = a11.mul(&yp(n2 - m));
        let a22 = yp(n2 - 1).mul(&CycloElt::from_int((n2 * p2n) as i64)).sub(&r_prime);
        let det = a11.mul(&a22).sub(&a12.mul(&a21));
        let mf = CycloElt::rational(factorial(m));
        let (reported, closed) = if p2n == 0 {
            (mf.mul(&det), mf.mul(&yp(n2 - m).sub(&one)).mul(&a11).mul(&r_prime))
        } else {
            (
                mf.mul(&yp(2)).mul(&det).neg(),
                mf.mul(&one.sub(&y0.pow((n2 + 2 - m) as u64))).mul(&a11).mul(&r_prime),
            )
        };
        if m == free_level {
            if !det.is_zero() {
                return Err(internal_err!("level {m} is expected to be singular"));
            }
            // a11·b + a12·c + r1 = 0 and a21·b + a22·c + r2 = 0
            let b = UPoly::x();
            let c = r1.add(&b.scale(&a11)).scale(&r_prime.inv().unwrap());
            let row2 = b.scale(&a21).add(&c.scale(&a22)).add(&r2);
            if !row2.is_zero() {
                return Err(internal_err!("singular level {m} is inconsistent"));
            }
            pt[mu] = b;
            y[mu] = c;
        } else {
            let inv = det.inv().ok_or_else(|| internal_err!("zero determinant at level {m}, y0 is not primitive"))?;
            // Cramer on A·(p, c) = −(r1, r2)
            let (s1, s2) = (r1.neg(), r2.neg());
            let p = s1.scale(&a22).sub(&s2.scale(&a12)).scale(&inv);
            let c = s2.scale(&a11).sub(&s1.scale(&a21)).scale(&inv);
            pt[mu] = p;
            y[mu] = c;
            determinants.push(LevelDeterminant {
                m,
                matches_closed_form: reported == closed,
                nonzero: !reported.is_zero(),
                det: reported,
                closed_form: closed,
            });
        }
    }
    let mut coefficients = Vec::new();
    for j in 0..=n2 {
        coefficients.push(to_rational_poly(&pt[(n2 - j) as usize])?);
    }
    let mut p = MultiPoly::zero();
    for (j, c) in coefficients.iter().enumerate() {
        p = p + c.mul_monomial(&Monomial::from_pairs(&[(Var::X1, j as u32), (Var::T, n2 - j as u32)]));
    }
    let b = MultiPoly::var(b_var());
    let t = MultiPoly::var(Var::T);
    let closed_form = if p2n == 0 {
        &b * &t.pow(n2)
    } else {
        sigma(n, &[&b * &t.pow(2), MultiPoly::var(Var::X1).pow(2)])
    };
    Ok(ClassifyReport {
        n,
        p2n,
        k,
        r_prime,
        r_prime_checked,
        dagger_checked,
        free_level,
        determinants,
        matches_closed_form: p == closed_form,
        coefficients,
        p,
        closed_form,
    })
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ClassifyOracle {
    pub s0: MultiPoly,
    pub families: Vec<MultiPoly>,
    pub agree: bool,
    pub detail: Vec<String>,
}

/// Undetermined-coefficient solve with s0 the primitive factor Φ_k(X1, X2).
pub fn classify_oracle(report: &ClassifyReport, cfg: &Config) -> Result<ClassifyOracle> {
    let n = report.n;
    let s0 = FormFactor::phi(report.k).poly;
    let d = s0.total_degree().unwrap_or(0);
    let sols = oracle_lift(n, d, &q(report.p2n as i64), &s0, LiftMode::Approx { enforce_top: false }, cfg)?;
    let j0 = if report.p2n == 0 { 0 } else { 2 * n as usize - 2 };
    let mut families = Vec::new();
    let mut detail = Vec::new();
    let mut agree = !sols.is_empty();
    for sol in &sols {
        let c = &sol.p_coeffs[j0];
        let expected = if let Some(v) = c.as_constant() {
            report.p.substitute(b_var(), &MultiPoly::constant(v))
        } else if c.num_terms() == 1 && c.vars().len() == 1 && c.leading().map(|(m, x)| m.degree() == 1 && *x == q(1)).unwrap_or(false) {
            let v = *c.vars().iter().next().unwrap();
            let ren: BTreeMap<Var, MultiPoly> = [(v, MultiPoly::var(b_var()))].into_iter().collect();
            let pp = sol.p.substitute_all(&ren.into_iter().collect::<Vec<_>>());
            families.push(pp.clone());
            if pp != report.p {
                agree = false;
                detail.push(format!("oracle family {pp} differs from {}", report.p));
            }
            continue;
        } else {
            agree = false;
            detail.push(format!("p_{j0} = {c} is not a free coefficient"));
            continue;
        };
        families.push(sol.p.clone());
        if sol.p != expected {
            agree = false;
            detail.push(format!("oracle solution {} differs from {expected}", sol.p));
        }
    }
    Ok(ClassifyOracle { s0, families, agree, detail })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::p;

    #[test]
    fn closed_forms_n3() {
        let cfg = Config::default();
        let r0 = classify_primitive(3, 0, &cfg).unwrap();
        assert_eq!(r0.p, p("b1*T^6"));
        let r1 = classify_primitive(3, 1, &cfg).unwrap();
        assert_eq!(r1.p, p("b1^3*T^6 + b1^2*T^4*X1^2 + b1*T^2*X1^4 + X1^6"));
        assert_eq!(r1.dagger_checked, Some(true));
        for r in [&r0, &r1] {
            assert!(r.r_prime_checked);
            assert!(r.determinants.iter().all(|d| d.nonzero && d.matches_closed_form));
        }
    }

    #[test]
    fn oracle_agrees_n3() {
        let cfg = Config::default();
        for p2n in [0, 1] {
            let r = classify_primitive(3, p2n, &cfg).unwrap();
            let o = classify_oracle(&r, &cfg).unwrap();
            assert!(o.agree, "{:?}", o.detail);
        }
    }
}
