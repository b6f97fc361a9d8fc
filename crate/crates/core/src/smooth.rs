//! Smoothness, hence irreducibility, of the plane curve Σ_n(T², X1², X2²) = 0.
//!
//! Points split into two kinds:
//! - some coordinate vanishes: by the S3 symmetry of the curve take T = 0;
//!   a singular point there is a multiple root of Σ_n(z², 1);
//! - T·X1·X2 ≠ 0: the squaring map is étale there and ∂F/∂T = 2T·G_a(T², X1², X2²)
//!   etc. with G = Σ_n(a, b, c), so it suffices that G has no singular point
//!   with c ≠ 0. That is decided by eliminating b from pairs of partials
//!   and checking that the resultants have no common root.

use alloc::string::String;
use alloc::vec::Vec;

use crate::config::Config;
use crate::cyclotomic::is_squarefree;
use crate::error::{capability_err, input_err, internal_err, Result};
use crate::poly::{MultiPoly, Var};
use crate::rational::{q, Q};
use crate::resultant::resultant;
use crate::rings::sigma;
use crate::upoly::UPoly;

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CoordinateCase {
    pub poly: MultiPoly,
    pub squarefree: bool,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct GenericCase {
    /// G = Σ_n(a, b, c) written with a = T, b = X1, c = X2.
    pub g: MultiPoly,
    pub patch: String,
    /// λ in the projection change a ↦ a + λ·b that made the elimination decisive.
    pub shear: u32,
    pub resultant_degrees: Vec<Option<u32>>,
    pub gcd_degree: u32,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SmoothReport {
    pub n: u32,
    pub curve: MultiPoly,
    pub permutation_symmetric: bool,
    pub coordinate_case: CoordinateCase,
    pub chain_rule_checked: bool,
    pub generic_case: GenericCase,
    pub smooth: bool,
    pub irreducible: bool,
    pub background: String,
}

fn squares(p: &MultiPoly) -> MultiPoly {
    let sq = |v: Var| MultiPoly::var(v).pow(2);
    p.substitute(Var::T, &sq(Var::T))
        .substitute(Var::X1, &sq(Var::X1))
        .substitute(Var::X2, &sq(Var::X2))
}

fn to_upoly(p: &MultiPoly, v: Var) -> Result<UPoly<Q>> {
    p.to_univariate(v)
        .map(UPoly::new)
        .ok_or_else(|| internal_err!("{p} is not univariate in {v}"))
}

pub fn a3_smooth_irreducible(n: u32, cfg: &Config) -> Result<SmoothReport> {
    if n == 0 {
        return Err(input_err!("smooth-check needs n ≥ 1"));
    }
    if n > cfg.max_n {
        return Err(capability_err!("n = {n} exceeds the desk-scale bound {}", cfg.max_n));
    }
    let (t, x1, x2) = (MultiPoly::var(Var::T), MultiPoly::var(Var::X1), MultiPoly::var(Var::X2));
    let curve = sigma(n, &[t.pow(2), x1.pow(2), x2.pow(2)]);
    let permutation_symmetric =
        curve.swap(Var::T, Var::X1) == curve && curve.swap(Var::X1, Var::X2) == curve;

    let z = MultiPoly::var(Var::Z);
    let coord_poly = sigma(n, &[z.pow(2), MultiPoly::one()]);
    let coordinate_case = CoordinateCase { squarefree: is_squarefree(&coord_poly)?, poly: coord_poly };

    let g = sigma(n, &[t.clone(), x1.clone(), x2.clone()]);
    let mut chain_rule_checked = true;
    for v in [Var::T, Var::X1, Var::X2] {
        let lhs = curve.derivative(v);
        let rhs = &(&MultiPoly::var(v) * &MultiPoly::int(2)) * &squares(&g.derivative(v));
        chain_rule_checked &= lhs == rhs;
    }

    // patch c = 1
    let one = MultiPoly::one();
    let partials: Vec<MultiPoly> = [Var::T, Var::X1, Var::X2]
        .iter()
        .map(|&v| g.derivative(v).substitute(Var::X2, &one))
        .collect();
    let mut decided = None;
    for lambda in 0..=cfg.max_shears {
        let moved = &t + &x1.scale(&q(lambda as i64));
        let sheared: Vec<MultiPoly> = partials.iter().map(|p| p.substitute(Var::T, &moved)).collect();
        let mut degrees = Vec::new();
        let mut acc: Option<UPoly<Q>> = None;
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let r = resultant(&sheared[i], &sheared[j], Var::X1)?;
            if r.is_zero() {
                degrees.push(None);
                continue;
            }
            let u = to_upoly(&r, Var::T)?;
            degrees.push(u.degree().map(|d| d as u32));
            acc = Some(match acc {
                None => u.monic(),
                Some(a) => a.gcd(&u),
            });
        }
        if let Some(h) = acc {
            if h.degree() == Some(0) {
                decided = Some(GenericCase {
                    g: g.clone(),
                    patch: "c = 1".into(),
                    shear: lambda,
                    resultant_degrees: degrees,
                    gcd_degree: 0,
                });
                break;
            }
        }
    }
    let generic_case = decided.ok_or_else(|| {
        capability_err!("elimination for n = {n} stayed inconclusive after {} projections", cfg.max_shears + 1)
    })?;

    let smooth = permutation_symmetric && coordinate_case.squarefree && chain_rule_checked;
    Ok(SmoothReport {
        n,
        curve,
        permutation_symmetric,
        coordinate_case,
        chain_rule_checked,
        generic_case,
        smooth,
        irreducible: smooth,
        background: "a smooth plane curve is irreducible (two components would meet in a singular point)".into(),
    })
}
