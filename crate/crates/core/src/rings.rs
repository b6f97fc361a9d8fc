//! Σ-polynomials, Chern polynomials, and the cohomology rings of the quadric,
//! the universal family of lines, and the moduli of lines.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::One;

use crate::error::{input_err, internal_err, Result};
use crate::poly::{poly_divides, Monomial, MultiPoly, Var};

/// Complete homogeneous symmetric polynomial Σ_i of the arguments.
pub fn sigma(i: u32, vars: &[MultiPoly]) -> MultiPoly {
    match vars {
        [] => {
            if i == 0 {
                MultiPoly::one()
            } else {
                MultiPoly::zero()
            }
        }
        [a] => a.pow(i),
        [a, rest @ ..] => {
            let mut out = MultiPoly::zero();
            let mut apow = MultiPoly::one();
            for j in 0..=i {
                out = out + &apow * &sigma(i - j, rest);
                apow = &apow * a;
            }
            out
        }
    }
}

/// R = Σ_n(X1², X2²).
pub fn relation_r(n: u32) -> MultiPoly {
    sigma(n, &[MultiPoly::var(Var::X1).pow(2), MultiPoly::var(Var::X2).pow(2)])
}

/// Returns (A − C, Σ_{n−1}(A, B, C)) after checking
/// Σ_n(A,B) − Σ_n(B,C) = (A − C)·Σ_{n−1}(A,B,C).
pub fn sigma_telescoping(
    n: u32,
    a: &MultiPoly,
    b: &MultiPoly,
    c: &MultiPoly,
) -> Result<(MultiPoly, MultiPoly)> {
    if n == 0 {
        return Err(input_err!("sigma_telescoping needs n ≥ 1"));
    }
    let lhs = sigma(n, &[a.clone(), b.clone()]) - sigma(n, &[b.clone(), c.clone()]);
    let f1 = a - c;
    let f2 = sigma(n - 1, &[a.clone(), b.clone(), c.clone()]);
    if &f1 * &f2 != lhs {
        return Err(internal_err!("telescoping identity failed at n = {n}"));
    }
    Ok((f1, f2))
}

/// (x − y)·Σ_n(x, y) = x^{n+1} − y^{n+1}.
pub fn two_var_sigma_identity_check(n: u32) -> bool {
    let x = MultiPoly::var(Var::X);
    let y = MultiPoly::var(Var::Z);
    let lhs = &(&x - &y) * &sigma(n, &[x.clone(), y.clone()]);
    lhs == x.pow(n + 1) - y.pow(n + 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingKind {
    Quadric(u32),
    Universal(u32),
    Moduli(u32),
}

#[derive(Clone, Debug, PartialEq)]
pub struct RingSpec {
    pub kind: RingKind,
    /// Relations as presented.
    pub relations: Vec<MultiPoly>,
    /// Reduction basis generating the same ideal; leading monomials are
    /// pairwise coprime, so reduction against it yields a normal form.
    basis: Vec<MultiPoly>,
}

impl RingSpec {
    pub fn new(kind: RingKind) -> Self {
        let x1 = MultiPoly::var(Var::X1);
        let x2 = MultiPoly::var(Var::X2);
        match kind {
            RingKind::Quadric(n) => {
                let rel = x1.pow(2 * n + 2);
                RingSpec { kind, relations: vec![rel.clone()], basis: vec![rel] }
            }
            RingKind::Universal(n) | RingKind::Moduli(n) => {
                let s0 = relation_r(n);
                let s1 = relation_r(n + 1);
                // Σ_{n+1}(A,B) = A·Σ_n(A,B) + B^{n+1}
                let b = x2.pow(2 * n + 2);
                RingSpec { kind, relations: vec![s0.clone(), s1], basis: vec![s0, b] }
            }
        }
    }

    pub fn name(&self) -> String {
        match self.kind {
            RingKind::Quadric(n) => alloc::format!("H(Q^{})", 2 * n + 1),
            RingKind::Universal(n) => alloc::format!("H(U_{n})"),
            RingKind::Moduli(n) => alloc::format!("H(M_{n})"),
        }
    }

    pub fn basis(&self) -> &[MultiPoly] {
        &self.basis
    }

    /// Normal form modulo the relations. Moduli elements must be symmetric.
    pub fn reduce(&self, p: &MultiPoly) -> Result<MultiPoly> {
        if matches!(self.kind, RingKind::Moduli(_)) && !p.is_symmetric() {
            return Err(input_err!("{} only holds symmetric classes; {p} is not", self.name()));
        }
        let leads: Vec<(Monomial, _)> = self
            .basis
            .iter()
            .map(|g| {
                let (m, c) = g.leading().expect("nonzero relation");
                (m.clone(), c.clone())
            })
            .collect();
        let mut rem = p.clone();
        let mut out = MultiPoly::zero();
        // repeatedly cancel the largest reducible term
        while let Some((m, c)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let hit = leads.iter().zip(&self.basis).find_map(|((lm, lc), g)| {
                m.div(lm).map(|t| (t, g, lc))
            });
            match hit {
                Some((t, g, lc)) => {
                    let f = MultiPoly::term(t, &c / lc);
                    rem = &rem - &(&f * g);
                }
                None => {
                    let single = MultiPoly::term(m, c);
                    rem = &rem - &single;
                    out = out + single;
                }
            }
        }
        Ok(out)
    }

    /// Ideal membership via the normal form.
    pub fn is_zero_class(&self, p: &MultiPoly) -> Result<bool> {
        Ok(self.reduce(p)?.is_zero())
    }
}

/// Chern polynomial: homogeneous of degree `rank`, monic in T.
#[derive(Clone, Debug, PartialEq)]
pub struct ChernPoly {
    pub rank: u32,
    pub poly: MultiPoly,
}

impl ChernPoly {
    pub fn new(rank: u32, poly: MultiPoly) -> Result<Self> {
        if !poly.is_homogeneous() || poly.total_degree() != Some(rank) {
            return Err(input_err!("Chern polynomial {poly} is not homogeneous of degree {rank}"));
        }
        if !poly.coeff(&Monomial::var(Var::T, rank)).is_one() {
            return Err(input_err!("Chern polynomial {poly} is not monic in T"));
        }
        Ok(ChernPoly { rank, poly })
    }

    /// Chern polynomial of the twist by a line bundle with first Chern class h:
    /// C_{F⊗L}(T) = C_F(T − h).
    pub fn twist(&self, h: &MultiPoly) -> Result<Self> {
        let shifted = self.poly.substitute(Var::T, &(&MultiPoly::var(Var::T) - h));
        ChernPoly::new(self.rank, shifted)
    }

    pub fn divides(&self, other: &MultiPoly) -> Result<Option<MultiPoly>> {
        poly_divides(&self.poly, other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::p;

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(2, &[p("x"), p("z")]), p("x^2 + x*z + z^2"));
        assert_eq!(sigma(0, &[p("x"), p("z"), p("T")]), MultiPoly::one());
        assert_eq!(relation_r(3), p("X1^6 + X1^4*X2^2 + X1^2*X2^4 + X2^6"));
    }

    #[test]
    fn telescoping_examples() {
        let (f1, f2) = sigma_telescoping(1, &p("x"), &p("z"), &p("T")).unwrap();
        assert_eq!((f1, f2), (p("x - T"), MultiPoly::one()));
        let (f1, f2) = sigma_telescoping(
            3,
            &p("T^2"),
            &p("b1*X1^2"),
            &p("b1*X2^2"),
        )
        .unwrap();
        assert_eq!(f1, p("T^2 - b1*X2^2"));
        assert_eq!(f2, sigma(2, &[p("T^2"), p("b1*X1^2"), p("b1*X2^2")]));
        let (f1, f2) = sigma_telescoping(2, &p("4"), &p("1"), &p("0")).unwrap();
        assert_eq!(&f1 * &f2, p("20"));
    }

    #[test]
    fn reductions() {
        let q = RingSpec::new(RingKind::Quadric(2));
        assert!(q.reduce(&p("X1^6")).unwrap().is_zero());
        assert_eq!(q.reduce(&MultiPoly::one()).unwrap(), MultiPoly::one());
        let u = RingSpec::new(RingKind::Universal(2));
        assert!(u.reduce(&relation_r(2)).unwrap().is_zero());
        assert!(u.reduce(&relation_r(3)).unwrap().is_zero());
        let m = RingSpec::new(RingKind::Moduli(2));
        assert!(m.reduce(&p("X1")).is_err());
        assert_eq!(m.name(), "H(M_2)");
        assert_eq!(q.name(), "H(Q^5)");
    }

    #[test]
    fn chern_polys() {
        assert!(ChernPoly::new(2, p("T^2 + X1*X2")).is_ok());
        assert!(ChernPoly::new(2, p("2*T^2")).is_err());
        assert!(ChernPoly::new(2, p("T^2 + X1")).is_err());
        let c = ChernPoly::new(1, p("T - X2")).unwrap();
        assert_eq!(c.twist(&p("-X1")).unwrap().poly, p("T + X1 - X2"));
    }
}
