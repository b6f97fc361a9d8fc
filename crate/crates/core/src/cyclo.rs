//! Elements of Q(ζ_k), stored as residues modulo Φ_k.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use crate::cyclotomic::cyclotomic_upoly;
use crate::error::{input_err, Result};
use crate::poly::{MultiPoly, Var};
use crate::rational::{q, Q};
use crate::upoly::{Field, Ring, UPoly};

/// Largest conductor eval_cyclo will embed into.
pub const MAX_CONDUCTOR: u32 = 4096;

#[derive(Clone, Debug)]
pub struct CycloElt {
    k: u32,
    modulus: Arc<UPoly<Q>>,
    /// Residue, degree < φ(k).
    rep: UPoly<Q>,
}

impl PartialEq for CycloElt {
    fn eq(&self, o: &Self) -> bool {
        if self.k == o.k {
            return self.rep == o.rep;
        }
        self.sub(o).is_zero()
    }
}

impl CycloElt {
    fn with_modulus(k: u32, modulus: Arc<UPoly<Q>>, rep: UPoly<Q>) -> Self {
        let rep = rep.rem(&modulus);
        CycloElt { k, modulus, rep }
    }

    pub fn modulus(k: u32) -> Arc<UPoly<Q>> {
        Arc::new(cyclotomic_upoly(k))
    }

    /// ζ_k.
    pub fn zeta(k: u32) -> Self {
        assert!(k >= 1);
        Self::with_modulus(k, Self::modulus(k), UPoly::x())
    }

    pub fn rational(c: Q) -> Self {
        Self::with_modulus(1, Self::modulus(1), UPoly::constant(c))
    }

    pub fn conductor(&self) -> u32 {
        self.k
    }

    /// Coefficients in the power basis 1, ζ, …, ζ^{φ(k)−1}.
    pub fn coeffs(&self) -> Vec<Q> {
        let d = self.modulus.degree().unwrap();
        (0..d).map(|i| self.rep.coeff(i)).collect()
    }

    pub fn as_rational(&self) -> Option<Q> {
        match self.rep.degree() {
            None => Some(q(0)),
            Some(0) => Some(self.rep.coeff(0)),
            _ => None,
        }
    }

    /// Same element viewed in Q(ζ_l), k | l.
    pub fn embed(&self, l: u32) -> Self {
        assert!(l % self.k == 0, "conductor {} does not divide {}", self.k, l);
        if l == self.k {
            return self.clone();
        }
        let m = Self::modulus(l);
        Self::with_modulus(l, m, self.rep.inflate((l / self.k) as usize))
    }

    fn lift_pair(&self, o: &Self) -> (Self, Self) {
        if self.k == o.k {
            return (self.clone(), o.clone());
        }
        let l = self.k.lcm(&o.k);
        (self.embed(l), o.embed(l))
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = <Self as Ring>::one().embed(self.k);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn scale(&self, c: &Q) -> Self {
        CycloElt { k: self.k, modulus: self.modulus.clone(), rep: self.rep.scale(c) }
    }
}

impl Ring for CycloElt {
    fn zero() -> Self {
        Self::rational(q(0))
    }
    fn one() -> Self {
        Self::rational(q(1))
    }
    fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        let (a, b) = self.lift_pair(o);
        CycloElt { k: a.k, modulus: a.modulus.clone(), rep: a.rep.add(&b.rep) }
    }
    fn sub(&self, o: &Self) -> Self {
        let (a, b) = self.lift_pair(o);
        CycloElt { k: a.k, modulus: a.modulus.clone(), rep: a.rep.sub(&b.rep) }
    }
    fn mul(&self, o: &Self) -> Self {
        let (a, b) = self.lift_pair(o);
        Self::with_modulus(a.k, a.modulus.clone(), a.rep.mul(&b.rep))
    }
    fn neg(&self) -> Self {
        CycloElt { k: self.k, modulus: self.modulus.clone(), rep: self.rep.neg() }
    }
    fn from_int(i: i64) -> Self {
        Self::rational(q(i))
    }
}

impl Field for CycloElt {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let r = self.rep.inverse_mod(&self.modulus)?;
        Some(CycloElt { k: self.k, modulus: self.modulus.clone(), rep: r })
    }
}

impl fmt::Display for CycloElt {
    /// Polynomial in `zeta` (ascending powers), e.g. `1 - zeta^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = MultiPoly::from_univariate(Var::Z, self.rep.coeffs());
        let s = alloc::format!("{p}").replace('z', "zeta");
        write!(f, "{s} (k={})", self.k)
    }
}

/// Evaluate p at cyclotomic values; mixed conductors are embedded in their lcm.
pub fn eval_cyclo(p: &MultiPoly, assignments: &BTreeMap<Var, CycloElt>) -> Result<CycloElt> {
    let mut l = 1u32;
    for v in p.vars() {
        let e = assignments
            .get(&v)
            .ok_or_else(|| input_err!("variable {v} has no cyclotomic value"))?;
        l = l.lcm(&e.conductor());
        if l > MAX_CONDUCTOR {
            return Err(input_err!("conductor lcm {l} exceeds {MAX_CONDUCTOR}"));
        }
    }
    let vals: BTreeMap<Var, CycloElt> = p
        .vars()
        .into_iter()
        .map(|v| (v, assignments[&v].embed(l)))
        .collect();
    let mut acc = CycloElt::rational(q(0)).embed(l);
    let mut cache: BTreeMap<(Var, u32), CycloElt> = BTreeMap::new();
    for (m, c) in p.terms() {
        let mut t = CycloElt::rational(c.clone()).embed(l);
        for (v, e) in m.vars() {
            let pw = cache
                .entry((v, e))
                .or_insert_with(|| vals[&v].pow(e as u64))
                .clone();
            t = t.mul(&pw);
        }
        acc = acc.add(&t);
    }
    Ok(acc)
}

/// Convenience: single-variable evaluation.
pub fn eval_at(p: &MultiPoly, v: Var, x: &CycloElt) -> Result<CycloElt> {
    let mut a = BTreeMap::new();
    a.insert(v, x.clone());
    eval_cyclo(p, &a)
}

/// ζ_k, ζ_k^2, … as a vector, handy for tests.
pub fn powers(k: u32, count: usize) -> Vec<CycloElt> {
    let z = CycloElt::zeta(k);
    let mut out = vec![CycloElt::one().embed(k)];
    for i in 1..count {
        out.push(out[i - 1].mul(&z));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::p;

    #[test]
    fn roots_vanish() {
        let z3 = CycloElt::zeta(3);
        assert!(eval_at(&p("z^2 + z + 1"), Var::Z, &z3).unwrap().is_zero());
        assert!(CycloElt::zeta(7).pow(7) == CycloElt::one());
        let r3 = p("1 + z^2 + z^4 + z^6");
        assert!(eval_at(&r3, Var::Z, &CycloElt::zeta(8)).unwrap().is_zero());
    }

    #[test]
    fn mixed_conductors() {
        let mut a = BTreeMap::new();
        a.insert(Var::X1, CycloElt::one());
        a.insert(Var::X2, CycloElt::zeta(4));
        let v = eval_cyclo(&p("X1 + X2"), &a).unwrap();
        assert!(!v.is_zero());
        // ζ_4 = ζ_12^3
        let z12 = CycloElt::zeta(12);
        assert!(z12.pow(3) == CycloElt::zeta(4));
        // ζ_3^2 = −ζ_6
        assert!(CycloElt::zeta(6).add(&CycloElt::zeta(3).pow(2)).is_zero());
    }

    #[test]
    fn inverses() {
        let z = CycloElt::zeta(10);
        let a = z.add(&CycloElt::from_int(3));
        let b = a.inv().unwrap();
        assert!(a.mul(&b) == CycloElt::one());
        assert!(CycloElt::zero().inv().is_none());
    }
}
