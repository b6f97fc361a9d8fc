//! Sparse multivariate polynomials over Q.
//!
//! Variables are indexed: T, X1, X2, x, z, then parameters b1, b2, ...
//! Monomials are ordered graded-lexicographically with T > X1 > X2 > x > z > b1 > ...

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{input_err, Error, Result};
use crate::rational::{q, Q};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Var(pub u16);

impl Var {
    pub const T: Var = Var(0);
    pub const X1: Var = Var(1);
    pub const X2: Var = Var(2);
    pub const X: Var = Var(3);
    pub const Z: Var = Var(4);

    /// Parameter `b{k}`, k ≥ 1.
    pub fn param(k: u16) -> Var {
        assert!(k >= 1, "parameters are numbered from 1");
        Var(4 + k)
    }

    pub fn is_param(self) -> bool {
        self.0 >= 5
    }

    pub fn name(self) -> String {
        match self.0 {
            0 => "T".into(),
            1 => "X1".into(),
            2 => "X2".into(),
            3 => "x".into(),
            4 => "z".into(),
            k => alloc::format!("b{}", k - 4),
        }
    }

    pub fn parse(s: &str) -> Option<Var> {
        match s {
            "T" => Some(Var::T),
            "X1" => Some(Var::X1),
            "X2" => Some(Var::X2),
            "x" => Some(Var::X),
            "z" => Some(Var::Z),
            _ => {
                let k: u16 = s.strip_prefix('b')?.parse().ok()?;
                if k >= 1 && !s[1..].starts_with('0') {
                    Some(Var::param(k))
                } else {
                    None
                }
            }
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Exponent vector, trailing zeros trimmed so equal monomials compare equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var, e: u32) -> Self {
        let mut m = Monomial(Vec::new());
        m.set(v, e);
        m
    }

    pub fn from_pairs(pairs: &[(Var, u32)]) -> Self {
        let mut m = Monomial::one();
        for &(v, e) in pairs {
            let old = m.exp(v);
            m.set(v, old + e);
        }
        m
    }

    fn trim(&mut self) {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0.get(v.0 as usize).copied().unwrap_or(0)
    }

    pub fn set(&mut self, v: Var, e: u32) {
        let i = v.0 as usize;
        if self.0.len() <= i {
            if e == 0 {
                return;
            }
            self.0.resize(i + 1, 0);
        }
        self.0[i] = e;
        self.trim();
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vars(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (Var(i as u16), e))
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let n = self.0.len().max(o.0.len());
        let mut v = vec![0u32; n];
        for (i, e) in self.0.iter().enumerate() {
            v[i] += e;
        }
        for (i, e) in o.0.iter().enumerate() {
            v[i] += e;
        }
        Monomial(v)
    }

    /// self / o if o divides self.
    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        if o.0.len() > self.0.len() {
            return None;
        }
        let mut v = self.0.clone();
        for (i, e) in o.0.iter().enumerate() {
            if v[i] < *e {
                return None;
            }
            v[i] -= e;
        }
        let mut m = Monomial(v);
        m.trim();
        Some(m)
    }

    /// Restriction to (or removal of) a set of variables.
    pub fn split(&self, keep: &[Var]) -> (Monomial, Monomial) {
        let mut inside = Monomial::one();
        let mut outside = Monomial::one();
        for (v, e) in self.vars() {
            if keep.contains(&v) {
                inside.set(v, e);
            } else {
                outside.set(v, e);
            }
        }
        (inside, outside)
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        // trimmed vectors compare lexicographically exactly like zero-padded ones
        self.degree()
            .cmp(&o.degree())
            .then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (v, e) in self.vars() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Q>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn int(c: i64) -> Self {
        Self::constant(q(c))
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v, 1), Q::one())
    }

    pub fn term(m: Monomial, c: Q) -> Self {
        let mut p = MultiPoly::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Q)>>(it: I) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn as_constant(&self) -> Option<Q> {
        if self.is_constant() {
            Some(self.coeff(&Monomial::one()))
        } else {
            None
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(v)).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut d = self.terms.keys().map(|m| m.degree());
        match d.next() {
            None => true,
            Some(first) => d.all(|e| e == first),
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.vars().map(|(v, _)| v).collect::<Vec<_>>())
            .collect()
    }

    pub fn involves(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    pub fn scale(&self, c: &Q) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Replace `v` by `expr`.
    pub fn substitute(&self, v: Var, expr: &MultiPoly) -> MultiPoly {
        let maxe = self.degree_in(v).unwrap_or(0);
        let mut powers = vec![MultiPoly::one()];
        for i in 1..=maxe as usize {
            let next = &powers[i - 1] * expr;
            powers.push(next);
        }
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            let mut rest = m.clone();
            rest.set(v, 0);
            let part = powers[e as usize].mul_monomial(&rest).scale(c);
            out = out + part;
        }
        out
    }

    pub fn substitute_all(&self, subs: &[(Var, MultiPoly)]) -> MultiPoly {
        subs.iter().fold(self.clone(), |p, (v, e)| p.substitute(*v, e))
    }

    /// Exchange two variables.
    pub fn swap(&self, a: Var, b: Var) -> MultiPoly {
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| {
            let mut k = m.clone();
            let (ea, eb) = (m.exp(a), m.exp(b));
            k.set(a, eb);
            k.set(b, ea);
            (k, c.clone())
        }))
    }

    pub fn is_symmetric(&self) -> bool {
        self.swap(Var::X1, Var::X2) == *self
    }

    pub fn derivative(&self, v: Var) -> MultiPoly {
        MultiPoly::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let e = m.exp(v);
            if e == 0 {
                return None;
            }
            let mut k = m.clone();
            k.set(v, e - 1);
            Some((k, c * q(e as i64)))
        }))
    }

    /// Coefficient of v^k, as a polynomial in the remaining variables.
    pub fn coeff_of(&self, v: Var, k: u32) -> MultiPoly {
        MultiPoly::from_terms(self.terms.iter().filter_map(|(m, c)| {
            if m.exp(v) != k {
                return None;
            }
            let mut r = m.clone();
            r.set(v, 0);
            Some((r, c.clone()))
        }))
    }

    /// Coefficient list in `v`, index = power.
    pub fn coeffs_in(&self, v: Var) -> Vec<MultiPoly> {
        match self.degree_in(v) {
            None => Vec::new(),
            Some(d) => (0..=d).map(|k| self.coeff_of(v, k)).collect(),
        }
    }

    /// Group terms by their part in `keep`; each value is a polynomial in the other variables.
    pub fn split_by(&self, keep: &[Var]) -> BTreeMap<Monomial, MultiPoly> {
        let mut out: BTreeMap<Monomial, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (inside, outside) = m.split(keep);
            out.entry(inside).or_default().add_term(outside, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Coefficients as a dense ascending list, if `self` is univariate in `v`.
    pub fn to_univariate(&self, v: Var) -> Option<Vec<Q>> {
        let mut out = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if m.degree() != e {
                return None;
            }
            if out.len() <= e as usize {
                out.resize(e as usize + 1, Q::zero());
            }
            out[e as usize] = c.clone();
        }
        Some(out)
    }

    pub fn from_univariate(v: Var, coeffs: &[Q]) -> MultiPoly {
        MultiPoly::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(v, i as u32), c.clone())),
        )
    }

    pub fn eval_q(&self, point: &BTreeMap<Var, Q>) -> Result<Q> {
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.vars() {
                let x = point
                    .get(&v)
                    .ok_or_else(|| input_err!("variable {v} not assigned"))?;
                t *= num_traits::pow(x.clone(), e as usize);
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn map_coeffs(&self, f: impl Fn(&Q) -> Q) -> MultiPoly {
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }
}

/// Exact quotient q/p, or None when p does not divide q.
///
/// Leading-term elimination: if p·r = q then lt(p)·lt(r) = lt(q), so a
/// leading term of the running remainder that lt(p) does not divide proves
/// non-divisibility.
pub fn poly_divides(p: &MultiPoly, q: &MultiPoly) -> Result<Option<MultiPoly>> {
    let (lm, lc) = match p.leading() {
        Some((m, c)) => (m.clone(), c.clone()),
        None => return Err(input_err!("division by the zero polynomial")),
    };
    let mut rem = q.clone();
    let mut quot = MultiPoly::zero();
    while let Some((m, c)) = rem.leading() {
        let Some(tm) = m.div(&lm) else {
            return Ok(None);
        };
        let tc = c / &lc;
        let t = MultiPoly::term(tm, tc);
        rem = &rem - &(&t * p);
        quot = quot + t;
    }
    Ok(Some(quot))
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, o: MultiPoly) -> MultiPoly {
        for (m, c) in o.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(mut self, o: MultiPoly) -> MultiPoly {
        for (m, c) in o.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), -c.clone());
        }
        r
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -self.clone()
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        let mut r = MultiPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        r
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: MultiPoly) -> MultiPoly {
        &self * &o
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for MultiPoly {
    type Err = Error;

    /// Accepts the Display format: `c*v^e*...` terms joined by `+`/`-`.
    fn from_str(s: &str) -> Result<MultiPoly> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(input_err!("empty polynomial"));
        }
        let mut out = MultiPoly::zero();
        let mut rest = s.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let mut sign = Q::one();
            match rest.as_bytes()[0] {
                b'+' if !first => rest = &rest[1..],
                b'-' => {
                    sign = -sign;
                    rest = &rest[1..];
                }
                _ if first => {}
                _ => return Err(input_err!("expected + or - in {s:?}")),
            }
            first = false;
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let term = &rest[..end];
            rest = &rest[end..];
            if term.is_empty() {
                return Err(input_err!("empty term in {s:?}"));
            }
            let mut coef = sign;
            let mut mono = Monomial::one();
            for factor in term.split('*') {
                if factor.starts_with(|c: char| c.is_ascii_digit()) {
                    coef *= crate::rational::parse_q(factor)?;
                } else {
                    let (name, e) = match factor.split_once('^') {
                        Some((n, e)) => (
                            n,
                            e.parse::<u32>()
                                .map_err(|_| input_err!("bad exponent in {factor:?}"))?,
                        ),
                        None => (factor, 1),
                    };
                    let v = Var::parse(name).ok_or_else(|| input_err!("unknown variable {name:?}"))?;
                    mono = mono.mul(&Monomial::var(v, e));
                }
            }
            out.add_term(mono, coef);
        }
        Ok(out)
    }
}

/// Shorthand used throughout: parse a polynomial literal that is known to be valid.
pub fn p(s: &str) -> MultiPoly {
    s.parse().unwrap_or_else(|e| panic!("bad literal {s:?}: {e}"))
}

pub fn t() -> MultiPoly {
    MultiPoly::var(Var::T)
}
pub fn x1() -> MultiPoly {
    MultiPoly::var(Var::X1)
}
pub fn x2() -> MultiPoly {
    MultiPoly::var(Var::X2)
}

impl MultiPoly {
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn difference_of_squares() {
        assert_eq!(&(x1() + x2()) * &(x1() - x2()), p("X1^2 - X2^2"));
        let a = p("3/2*T*X1 - X2^3");
        assert_eq!(&a + &MultiPoly::zero(), a);
    }

    #[test]
    fn one_minus_x6() {
        let f = p("1 - x") * p("1 + x") * p("1 + x + x^2") * p("1 - x + x^2");
        assert_eq!(f, p("1 - x^6"));
    }

    #[test]
    fn division() {
        let r = poly_divides(&p("X1^2 + X2^2"), &p("X1^4 - X2^4")).unwrap();
        assert_eq!(r, Some(p("X1^2 - X2^2")));
        assert_eq!(poly_divides(&x2(), &x1().pow(6)).unwrap(), None);
        let r = poly_divides(&p("X1^2 + X1*X2 + X2^2"), &p("X1^4 + X1^2*X2^2 + X2^4")).unwrap();
        assert_eq!(r, Some(p("X1^2 - X1*X2 + X2^2")));
        assert!(poly_divides(&MultiPoly::zero(), &x1()).is_err());
    }

    #[test]
    fn substitution_and_symmetry() {
        let s = t().pow(2).substitute(Var::T, &(t() + x1()));
        assert_eq!(s, p("T^2 + 2*T*X1 + X1^2"));
        let base = p("T^2 - b1*X2^2");
        let shifted = base.substitute(Var::T, &(t() - x1()));
        assert_eq!(shifted, p("T^2 - 2*T*X1 + X1^2 - b1*X2^2"));
        assert!(!shifted.is_symmetric());
        assert!(p("X1^2*X2 + X1*X2^2").is_symmetric());
        assert!(!p("X1^2*X2").is_symmetric());
    }

    #[test]
    fn text_format() {
        let r = p("X2^6 + X1^2*X2^4 + X1^4*X2^2 + X1^6");
        assert_eq!(r.to_string(), "X1^6 + X1^4*X2^2 + X1^2*X2^4 + X2^6");
        let s = p("-1/4*T*X1 + 3/2 - b12*z^3");
        assert_eq!(s.to_string(), "-z^3*b12 - 1/4*T*X1 + 3/2");
        assert_eq!(s.to_string().parse::<MultiPoly>().unwrap(), s);
        assert_eq!(MultiPoly::zero().to_string(), "0");
        assert!("X3".parse::<MultiPoly>().is_err());
        assert!("b0".parse::<MultiPoly>().is_err());
    }

    #[test]
    fn grlex_order() {
        // T > X1 > X2 within a degree; higher degree wins first
        let m = |s: &str| p(s).leading().unwrap().0.clone();
        assert!(m("T") > m("X1"));
        assert!(m("X1") > m("X2"));
        assert!(m("X2^2") > m("T"));
        assert!(m("T*X2") > m("X1^2"));
        assert!(m("X1*X2") > m("X2^2"));
    }
}
