mod common;

use std::time::Instant;

use qgr_core::lift::LiftMode;
use qgr_core::oracle::compare_search;
use qgr_core::poly::p;
use qgr_core::rational::{q, qf};
use qgr_core::splitter::{
    admissible_ls, exclude_l_top, no_real_root_guard, odd_l_exclusion, reconstruction_check, star_search,
    symmetric_divisor_search, trichotomy, verify_splitting, LMethod, SplitVerdict,
};
use qgr_core::{Config, Error};

#[test]
fn degree_three_at_n3_is_empty() {
    let cfg = Config::default();
    let tri = trichotomy(3, 3, &cfg).unwrap();
    assert_eq!(tri.roots.len(), 2);
    assert!(tri.roots.iter().all(|r| r.candidates.is_empty()));
    for mode in [LiftMode::Star, LiftMode::Approx { enforce_top: true }] {
        assert!(symmetric_divisor_search(3, 3, mode, &cfg).unwrap().is_empty());
    }
}

#[test]
fn top_l_excluded_for_3_to_6() {
    for n in 3..=6 {
        let ex = exclude_l_top(n).unwrap();
        assert!(ex.impossible && !ex.symmetric, "n = {n}");
    }
    let ex = exclude_l_top(3).unwrap();
    assert_eq!(ex.quotient_over_minus_a, p("X1^4*X2 + X1^2*X2^3 + X2^5"));
    assert_eq!(ex.quotient, "-a*(X1^4*X2 + X1^2*X2^3 + X2^5)");
}

#[test]
fn guard_rejects_real_roots() {
    assert!(no_real_root_guard(&q(-1)).unwrap());
    assert!(no_real_root_guard(&qf(-1, 4)).unwrap());
    assert!(!no_real_root_guard(&q(1)).unwrap());
    assert!(matches!(no_real_root_guard(&q(0)), Err(Error::Input(_))));
}

#[test]
fn control_case_has_a_witness() {
    let cfg = Config::default();
    let r = verify_splitting(2, None, &cfg).unwrap();
    assert_eq!(r.verdict, SplitVerdict::WitnessFound);
    let w = r.entries.iter().flat_map(|e| &e.direct.witnesses).next().unwrap();
    assert!(w.reconstruction_ok);
    assert!(reconstruction_check(2, &w.s1, &w.s2, &w.e, &w.a));
    assert_eq!(w.a, qf(-1, 4));
}

#[test]
fn splits_for_3_4_5() {
    let cfg = Config::default();
    for n in 3..=5 {
        let start = Instant::now();
        let r = verify_splitting(n, None, &cfg).unwrap();
        assert_eq!(r.verdict, SplitVerdict::Splits, "n = {n}");
        assert_eq!(r.entries.len(), admissible_ls(n).len());
        assert!(r.entries.iter().all(|e| e.impossible && e.direct.witnesses.is_empty()));
        assert!(start.elapsed().as_secs() < 600);
    }
}

#[test]
fn methods_by_l() {
    let r = verify_splitting(4, None, &Config::default()).unwrap();
    for e in &r.entries {
        let ok = match &e.method {
            LMethod::OddL { .. } => e.l % 2 == 1,
            LMethod::LTop { .. } => e.l == 6,
            LMethod::Gate { gate } => e.l % 2 == 0 && gate.n == 3 && gate.only_constant,
            _ => false,
        };
        assert!(ok, "l = {}", e.l);
    }
    let r = verify_splitting(3, Some(2), &Config::default()).unwrap();
    assert!(matches!(r.entries[0].method, LMethod::Q7 { .. }));
    assert_eq!(r.verdict, SplitVerdict::Impossible);
}

#[test]
fn odd_l_cases_all_excluded() {
    let cfg = Config::default();
    for (n, l) in [(3, 3), (4, 3), (4, 5), (5, 7)] {
        let ex = odd_l_exclusion(n, l, &cfg).unwrap();
        assert!(ex.eisenstein.irreducible);
        assert!(ex.irreducibility.smooth && ex.irreducibility.irreducible);
        assert!(ex.cases.iter().all(|c| c.excluded), "n = {n}, l = {l}");
        assert!(ex.impossible);
    }
}

#[test]
fn even_l_star_search_is_empty() {
    let cfg = Config::default();
    for n in 3..=4 {
        for l in admissible_ls(n).into_iter().filter(|l| l % 2 == 0) {
            let r = star_search(n, l, &cfg).unwrap();
            assert!(r.witnesses.is_empty());
        }
    }
}

#[test]
fn bound_is_a_capability_error() {
    let cfg = Config::default().with_max_n(3);
    assert!(matches!(verify_splitting(4, None, &cfg), Err(Error::Capability(_))));
    assert!(matches!(verify_splitting(1, None, &cfg), Err(Error::Input(_))));
}

#[test]
fn search_matches_oracle() {
    let cfg = Config::default();
    for n in 2..=3 {
        for d in 1..=2 * n - 1 {
            for mode in [LiftMode::Star, LiftMode::Approx { enforce_top: true }, LiftMode::Approx { enforce_top: false }] {
                let r = symmetric_divisor_search(n, d, mode, &cfg).unwrap();
                let chk = compare_search(&r, &cfg).unwrap();
                assert!(chk.agree, "n = {n}, d = {d}: {:?}", chk.mismatches);
            }
        }
    }
}

#[test]
fn results_ignore_branch_order() {
    let base = verify_splitting(3, None, &Config::default()).unwrap();
    for seed in [1u64, 7, 42, 1234] {
        assert_eq!(verify_splitting(3, None, &common::shuffled(seed)).unwrap(), base);
    }
    let base = verify_splitting(2, None, &Config::default()).unwrap();
    assert_eq!(verify_splitting(2, None, &common::shuffled(99)).unwrap(), base);
}
