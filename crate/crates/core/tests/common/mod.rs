#![allow(dead_code)]

use proptest::prelude::*;
use qgr_core::rational::qf;
use qgr_core::{Monomial, MultiPoly, Var};

pub const VARS: [Var; 3] = [Var::T, Var::X1, Var::X2];

/// Small polynomials in T, X1, X2 with small rational coefficients.
pub fn poly(max_deg: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(((0..=max_deg, 0..=max_deg, 0..=max_deg), -6i64..=6, 1i64..=3), 0..=max_terms).prop_map(
        |terms| {
            MultiPoly::from_terms(terms.into_iter().map(|((a, b, c), num, den)| {
                (Monomial::from_pairs(&[(Var::T, a), (Var::X1, b), (Var::X2, c)]), qf(num, den))
            }))
        },
    )
}

pub fn nonzero_poly(max_deg: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    poly(max_deg, max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

/// f + f(X1 ↔ X2).
pub fn symmetric_poly(max_deg: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    poly(max_deg, max_terms).prop_map(|f| &f + &f.swap(Var::X1, Var::X2))
}

pub fn shuffled(seed: u64) -> qgr_core::Config {
    use std::sync::Arc;
    let mut cfg = qgr_core::Config::default();
    cfg.branch_order = Some(Arc::new(move |v: &mut [usize]| {
        // xorshift Fisher–Yates, deterministic per seed
        let mut s = seed | 1;
        for i in (1..v.len()).rev() {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            v.swap(i, (s % (i as u64 + 1)) as usize);
        }
    }));
    cfg
}
