//! Cyclotomic polynomials, the factorization of 1 − x^m, and binary forms
//! built from cyclotomic factors.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{input_err, internal_err, Result};
use crate::poly::{Monomial, MultiPoly, Var};
use crate::rational::{q, Q};
use crate::upoly::UPoly;

pub fn totient(d: u32) -> u32 {
    let mut n = d;
    let mut r = d;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            r -= r / p;
        }
        p += 1;
    }
    if n > 1 {
        r -= r / n;
    }
    r
}

pub fn divisors(m: u32) -> Vec<u32> {
    (1..=m).filter(|d| m % d == 0).collect()
}

fn cyclotomic_memo(d: u32, memo: &mut BTreeMap<u32, UPoly<Q>>) -> UPoly<Q> {
    if let Some(p) = memo.get(&d) {
        return p.clone();
    }
    // x^d − 1 = ∏_{e | d} Φ_e
    let mut num = UPoly::monomial(q(1), d as usize).sub(&UPoly::constant(q(1)));
    for e in divisors(d) {
        if e < d {
            let pe = cyclotomic_memo(e, memo);
            num = num.div_exact(&pe).expect("Φ_e divides x^d − 1");
        }
    }
    memo.insert(d, num.clone());
    num
}

/// Φ_d as a dense polynomial.
pub fn cyclotomic_upoly(d: u32) -> UPoly<Q> {
    assert!(d >= 1);
    cyclotomic_memo(d, &mut BTreeMap::new())
}

/// Φ_d in the variable x.
pub fn cyclotomic(d: u32) -> Result<MultiPoly> {
    if d == 0 {
        return Err(input_err!("cyclotomic(0) is undefined"));
    }
    Ok(MultiPoly::from_univariate(Var::X, cyclotomic_upoly(d).coeffs()))
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CycloFactor {
    pub d: u32,
    /// ±Φ_d, normalized to constant term 1.
    pub poly: MultiPoly,
}

impl CycloFactor {
    pub fn degree(&self) -> u32 {
        totient(self.d)
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CycloFactorization {
    pub m: u32,
    pub factors: Vec<CycloFactor>,
}

impl CycloFactorization {
    pub fn product(&self) -> MultiPoly {
        self.factors
            .iter()
            .fold(MultiPoly::one(), |acc, f| &acc * &f.poly)
    }
}

/// 1 − x^m = ∏_{d | m} ±Φ_d, each factor with constant term 1.
pub fn factor_one_minus_xm(m: u32) -> Result<CycloFactorization> {
    if m == 0 {
        return Err(input_err!("factor_one_minus_xm needs m ≥ 1"));
    }
    let mut memo = BTreeMap::new();
    let mut factors = Vec::new();
    for d in divisors(m) {
        let phi = cyclotomic_memo(d, &mut memo);
        let c0 = phi.coeff(0);
        let norm = phi.scale(&c0.recip());
        factors.push(CycloFactor {
            d,
            poly: MultiPoly::from_univariate(Var::X, norm.coeffs()),
        });
    }
    let fact = CycloFactorization { m, factors };
    let target = MultiPoly::one() - MultiPoly::var(Var::X).pow(m);
    if fact.product() != target {
        return Err(internal_err!("factorization of 1 - x^{m} does not reconstruct"));
    }
    Ok(fact)
}

/// X1^deg · p(X2/X1) for p in x.
pub fn homogenize(p: &MultiPoly, target_deg: u32) -> Result<MultiPoly> {
    let coeffs = p
        .to_univariate(Var::X)
        .ok_or_else(|| input_err!("homogenize expects a polynomial in x alone"))?;
    if coeffs.len() as u32 > target_deg + 1 {
        return Err(input_err!("degree of {p} exceeds {target_deg}"));
    }
    Ok(MultiPoly::from_terms(coeffs.iter().enumerate().map(|(i, c)| {
        (
            Monomial::from_pairs(&[(Var::X1, target_deg - i as u32), (Var::X2, i as u32)]),
            c.clone(),
        )
    })))
}

/// X1 → 1, X2 → x.
pub fn dehomogenize(p: &MultiPoly) -> MultiPoly {
    p.substitute(Var::X1, &MultiPoly::one())
        .substitute(Var::X2, &MultiPoly::var(Var::X))
}

/// Squarefree test for a univariate polynomial: gcd(p, p') constant.
pub fn is_squarefree(p: &MultiPoly) -> Result<bool> {
    if p.is_zero() {
        return Err(input_err!("is_squarefree of the zero polynomial"));
    }
    let vars = p.vars();
    if vars.len() > 1 {
        return Err(input_err!("is_squarefree expects a univariate polynomial, got {p}"));
    }
    let Some(&v) = vars.iter().next() else {
        return Ok(true);
    };
    let u = UPoly::new(p.to_univariate(v).unwrap());
    Ok(u.is_squarefree())
}

/// One irreducible factor of a binary form: X1, X2, or a homogenized ±Φ_d.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct FormFactor {
    pub label: String,
    pub poly: MultiPoly,
}

impl FormFactor {
    pub fn degree(&self) -> u32 {
        self.poly.total_degree().unwrap_or(0)
    }

    pub fn x1() -> Self {
        FormFactor { label: "X1".into(), poly: MultiPoly::var(Var::X1) }
    }

    pub fn x2() -> Self {
        FormFactor { label: "X2".into(), poly: MultiPoly::var(Var::X2) }
    }

    /// Homogenized Φ_d normalized to constant term 1 (so Φ_1 ↦ X1 − X2).
    pub fn phi(d: u32) -> Self {
        let u = cyclotomic_upoly(d);
        let u = u.scale(&u.coeff(0).recip());
        let poly = homogenize(&MultiPoly::from_univariate(Var::X, u.coeffs()), totient(d))
            .expect("degree matches");
        FormFactor { label: alloc::format!("Phi{d}"), poly }
    }
}

/// A binary form written as unit · ∏ factor^mult.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct FormFactorization {
    #[cfg_attr(feature = "serde", serde(with = "crate::ser::rat"))]
    pub unit: Q,
    pub factors: Vec<(FormFactor, u32)>,
}

impl FormFactorization {
    pub fn product(&self) -> MultiPoly {
        let mut acc = MultiPoly::constant(self.unit.clone());
        for (f, e) in &self.factors {
            acc = &acc * &f.poly.pow(*e);
        }
        acc
    }

    /// Factor list with multiplicity expanded.
    pub fn expanded(&self) -> Vec<FormFactor> {
        let mut v = Vec::new();
        for (f, e) in &self.factors {
            for _ in 0..*e {
                v.push(f.clone());
            }
        }
        v
    }
}

/// Factor a binary form in X1, X2 whose dehomogenization is a product of
/// cyclotomic polynomials and powers of x. Anything else is reported as an
/// error rather than left unfactored.
pub fn factor_cyclotomic_form(form: &MultiPoly) -> Result<FormFactorization> {
    if form.is_zero() || !form.is_homogeneous() {
        return Err(input_err!("expected a nonzero binary form, got {form}"));
    }
    if form.vars().iter().any(|v| *v != Var::X1 && *v != Var::X2) {
        return Err(input_err!("expected a form in X1, X2, got {form}"));
    }
    let n = form.total_degree().unwrap();
    let coeffs = dehomogenize(form).to_univariate(Var::X).unwrap();
    let mut g = UPoly::new(coeffs);
    let mut factors: Vec<(FormFactor, u32)> = Vec::new();
    let x1pow = n as usize - g.degree().unwrap();
    if x1pow > 0 {
        factors.push((FormFactor::x1(), x1pow as u32));
    }
    let low = g.coeffs().iter().take_while(|c| c.is_zero()).count();
    if low > 0 {
        g = UPoly::new(g.coeffs()[low..].to_vec());
        factors.push((FormFactor::x2(), low as u32));
    }
    let mut memo = BTreeMap::new();
    let mut d = 1u32;
    while g.degree().unwrap() > 0 {
        let phi_deg = totient(d) as usize;
        if phi_deg > g.degree().unwrap() && d > 2 * (g.degree().unwrap() as u32 + 1).pow(2) {
            return Err(internal_err!("{form} has a non-cyclotomic factor"));
        }
        if phi_deg <= g.degree().unwrap() {
            let phi = cyclotomic_memo(d, &mut memo);
            let mut e = 0;
            while let Some(qv) = g.div_exact(&phi) {
                g = qv;
                e += 1;
            }
            if e > 0 {
                factors.push((FormFactor::phi(d), e));
            }
        }
        d += 1;
    }
    // g is now a constant; recover the unit from the normalized factors
    let mut f = FormFactorization { unit: Q::one(), factors };
    let probe = f.product();
    let (m, c) = form.leading().unwrap();
    let pc = probe.coeff(m);
    if pc.is_zero() {
        return Err(internal_err!("factorization of {form} lost its leading term"));
    }
    f.unit = c / &pc;
    f.factors.sort_by(|a, b| {
        (a.0.degree(), a.0.label.len(), &a.0.label).cmp(&(b.0.degree(), b.0.label.len(), &b.0.label))
    });
    if f.product() != *form {
        return Err(internal_err!("factorization of {form} does not reconstruct"));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::p;
    use alloc::vec;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1).unwrap(), p("x - 1"));
        assert_eq!(cyclotomic(6).unwrap(), p("x^2 - x + 1"));
        assert_eq!(cyclotomic(8).unwrap(), p("x^4 + 1"));
        assert_eq!(cyclotomic(12).unwrap(), p("x^4 - x^2 + 1"));
    }

    #[test]
    fn factor_lists() {
        let f = factor_one_minus_xm(6).unwrap();
        let polys: Vec<_> = f.factors.iter().map(|c| c.poly.clone()).collect();
        assert_eq!(polys, vec![p("1 - x"), p("1 + x"), p("1 + x + x^2"), p("1 - x + x^2")]);
        let f = factor_one_minus_xm(8).unwrap();
        let polys: Vec<_> = f.factors.iter().map(|c| c.poly.clone()).collect();
        assert_eq!(polys, vec![p("1 - x"), p("1 + x"), p("1 + x^2"), p("1 + x^4")]);
    }

    #[test]
    fn homogenization() {
        assert_eq!(homogenize(&p("1 + x^2"), 2).unwrap(), p("X1^2 + X2^2"));
        assert_eq!(homogenize(&p("1 - x"), 1).unwrap(), p("X1 - X2"));
        let r3 = homogenize(&(p("1 + x^2") * p("1 + x^4")), 6).unwrap();
        assert_eq!(r3, p("X1^6 + X1^4*X2^2 + X1^2*X2^4 + X2^6"));
        assert_eq!(dehomogenize(&r3), p("1 + x^2 + x^4 + x^6"));
        assert!(homogenize(&p("x^3"), 2).is_err());
    }

    #[test]
    fn squarefree() {
        assert!(is_squarefree(&p("z^2 - 1")).unwrap());
        assert!(!is_squarefree(&p("z^2 - 2*z + 1")).unwrap());
        let s5 = p("1 + z^2 + z^4 + z^6 + z^8 + z^10");
        assert!(is_squarefree(&s5).unwrap());
    }

    #[test]
    fn form_factorization() {
        let f = factor_cyclotomic_form(&p("-X1^4*X2^2 - X1^2*X2^4 - X2^6")).unwrap();
        let labels: Vec<_> = f.factors.iter().map(|(g, e)| (g.label.clone(), *e)).collect();
        assert_eq!(
            labels,
            vec![("X2".into(), 2), ("Phi3".into(), 1), ("Phi6".into(), 1)]
        );
        assert_eq!(f.unit, q(-1));
    }
}
