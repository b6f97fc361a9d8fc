//! Dense univariate polynomials over a coefficient ring.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Debug;

use num_traits::{One, Zero};

use crate::rational::{q, Q};

pub trait Ring: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_int(i: i64) -> Self;
}

pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;
}

impl Ring for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn from_int(i: i64) -> Self {
        q(i)
    }
}

impl Field for Q {
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Ascending coefficients, no trailing zeros.
#[derive(Clone, PartialEq, Debug)]
pub struct UPoly<C> {
    c: Vec<C>,
}

impl<C: Ring> UPoly<C> {
    pub fn new(mut c: Vec<C>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn zero() -> Self {
        UPoly { c: Vec::new() }
    }

    pub fn constant(a: C) -> Self {
        Self::new(vec![a])
    }

    pub fn x() -> Self {
        Self::new(vec![C::zero(), C::one()])
    }

    /// a·x^k
    pub fn monomial(a: C, k: usize) -> Self {
        let mut c = vec![C::zero(); k + 1];
        c[k] = a;
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> C {
        self.c.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&C> {
        self.c.last()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.coeff(i).sub(&o.coeff(i))).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.c.iter().map(|a| a.neg()).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut r = vec![C::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                r[i + j] = r[i + j].add(&a.mul(b));
            }
        }
        Self::new(r)
    }

    pub fn scale(&self, a: &C) -> Self {
        Self::new(self.c.iter().map(|x| x.mul(a)).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(C::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, x: &C) -> C {
        self.c.iter().rev().fold(C::zero(), |acc, a| acc.mul(x).add(a))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a.mul(&C::from_int(i as i64)))
                .collect(),
        )
    }

    /// p(x^k)
    pub fn inflate(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut r = vec![C::zero(); (self.c.len() - 1) * k + 1];
        for (i, a) in self.c.iter().enumerate() {
            r[i * k] = a.clone();
        }
        Self::new(r)
    }

    /// Map coefficients into another ring.
    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> UPoly<D> {
        UPoly::new(self.c.iter().map(f).collect())
    }
}

impl<C: Field> UPoly<C> {
    /// Euclidean division; None when dividing by zero.
    pub fn divrem(&self, d: &Self) -> Option<(Self, Self)> {
        let dl = d.lead()?.inv()?;
        let dd = d.degree().unwrap();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut qv = vec![C::zero(); r.len() - dd];
        for i in (0..qv.len()).rev() {
            let coef = r[i + dd].mul(&dl);
            if !coef.is_zero() {
                for (j, b) in d.c.iter().enumerate() {
                    r[i + j] = r[i + j].sub(&coef.mul(b));
                }
            }
            qv[i] = coef;
        }
        r.truncate(dd);
        Some((Self::new(qv), Self::new(r)))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).expect("nonzero divisor").1
    }

    /// Exact quotient, or None if d does not divide self.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (qv, r) = self.divrem(d)?;
        r.is_zero().then_some(qv)
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) => self.scale(&l.inv().expect("field")),
        }
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Inverse of self modulo m, by extended Euclid.
    pub fn inverse_mod(&self, m: &Self) -> Option<Self> {
        let (mut r0, mut r1) = (m.clone(), self.rem(m));
        let (mut s0, mut s1) = (Self::zero(), Self::constant(C::one()));
        while !r1.is_zero() {
            let (qv, r) = r0.divrem(&r1)?;
            let s = s0.sub(&qv.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 = s0·self (mod m); invertible iff r0 is a nonzero constant
        if r0.degree() != Some(0) {
            return None;
        }
        let k = r0.lead()?.inv()?;
        Some(s0.scale(&k).rem(m))
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn up(v: &[i64]) -> UPoly<Q> {
        UPoly::new(v.iter().map(|&a| q(a)).collect())
    }

    #[test]
    fn divrem_and_gcd() {
        let (qq, r) = up(&[-1, 0, 0, 1]).divrem(&up(&[-1, 1])).unwrap();
        assert_eq!(qq, up(&[1, 1, 1]));
        assert!(r.is_zero());
        assert_eq!(up(&[-1, 0, 1]).gcd(&up(&[1, 2, 1])), up(&[1, 1]));
        assert!(up(&[-1, 0, 1]).is_squarefree());
        assert!(!up(&[1, -2, 1]).is_squarefree());
    }

    #[test]
    fn modular_inverse() {
        let m = up(&[1, 1, 1]);
        let a = up(&[2, 3]);
        let inv = a.inverse_mod(&m).unwrap();
        assert_eq!(a.mul(&inv).rem(&m), up(&[1]));
        assert!(up(&[1, 1]).inverse_mod(&up(&[-1, 0, 1])).is_none());
    }
}
