//! Sylvester resultants over polynomial coefficient rings.
//!
//! Sign convention: the Sylvester matrix lists the rows of p before the rows
//! of q, coefficients from the top degree down.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{input_err, internal_err, Result};
use crate::poly::{poly_divides, MultiPoly, Var};

pub fn sylvester_matrix(p: &MultiPoly, q: &MultiPoly, v: Var) -> Result<Vec<Vec<MultiPoly>>> {
    if p.is_zero() || q.is_zero() {
        return Err(input_err!("resultant of a zero polynomial"));
    }
    let a = p.coeffs_in(v);
    let b = q.coeffs_in(v);
    let (dp, dq) = (a.len() - 1, b.len() - 1);
    let n = dp + dq;
    let mut m = vec![vec![MultiPoly::zero(); n]; n];
    for i in 0..dq {
        for (j, c) in a.iter().rev().enumerate() {
            m[i][i + j] = c.clone();
        }
    }
    for i in 0..dp {
        for (j, c) in b.iter().rev().enumerate() {
            m[dq + i][i + j] = c.clone();
        }
    }
    Ok(m)
}

/// Fraction-free (Bareiss) determinant; every division is exact.
pub fn determinant(mut m: Vec<Vec<MultiPoly>>) -> Result<MultiPoly> {
    let n = m.len();
    if n == 0 {
        return Ok(MultiPoly::one());
    }
    let mut negate = false;
    let mut prev = MultiPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(MultiPoly::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = poly_divides(&prev, &num)?
                    .ok_or_else(|| internal_err!("Bareiss step is not exact"))?;
            }
            m[i][k] = MultiPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

/// Res_v(p, q).
pub fn resultant(p: &MultiPoly, q: &MultiPoly, v: Var) -> Result<MultiPoly> {
    determinant(sylvester_matrix(p, q, v)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::p;

    #[test]
    fn small_resultants() {
        assert_eq!(resultant(&p("x - 2"), &p("x^2 - 1"), Var::X).unwrap(), p("3"));
        assert_eq!(resultant(&p("x - b1"), &p("x - b2"), Var::X).unwrap(), p("b1 - b2"));
        let r = resultant(&p("2*T"), &p("2*X1"), Var::T).unwrap();
        assert_eq!(r, p("2*X1"));
        assert!(resultant(&MultiPoly::zero(), &p("x"), Var::X).is_err());
    }

    #[test]
    fn shared_factor_gives_zero() {
        let f = p("x - b1");
        let a = &f * &p("x^2 + b2*x + 1");
        let b = &f * &p("3*x - b2");
        assert!(resultant(&a, &b, Var::X).unwrap().is_zero());
    }
}
