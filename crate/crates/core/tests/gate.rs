mod common;

use std::time::Instant;

use proptest::prelude::*;
use qgr_core::gate::{check_assignment, check_assignment_at, decide_morphism_gate, enumerate_assignments, AssignmentVerdict};
use qgr_core::oracle::compare_gate;
use qgr_core::rational::q;
use qgr_core::Config;

#[test]
fn only_constant_for_even_l() {
    let cfg = Config::default();
    let start = Instant::now();
    for n in 2..=5 {
        for l in (2..2 * n).step_by(2) {
            let r = decide_morphism_gate(n, l, &cfg).unwrap();
            assert_eq!(r.only_constant, (n, l) != (2, 2), "n = {n}, l = {l}");
            assert!(compare_gate(&r).unwrap());
        }
    }
    assert!(start.elapsed().as_secs() < 60);
}

#[test]
fn exception_at_2_2() {
    let r = decide_morphism_gate(2, 2, &Config::default()).unwrap();
    assert_eq!(r.valid.len(), 1);
    let ch = r.checked.iter().find(|c| c.verdict.is_valid()).unwrap();
    match &ch.verdict {
        AssignmentVerdict::Valid { c, d } => {
            assert_eq!(c, &vec![q(2), q(2), q(1)]);
            assert_eq!(d, &vec![q(2), q(2), q(1)]);
        }
        _ => unreachable!(),
    }
    assert_eq!(ch.assignment.s1, vec![1, 6]);
    assert_eq!(ch.assignment.s2, vec![2, 3]);
}

#[test]
fn odd_and_out_of_range_l_rejected() {
    let cfg = Config::default();
    assert!(decide_morphism_gate(3, 3, &cfg).is_err());
    assert!(decide_morphism_gate(3, 6, &cfg).is_err());
    assert!(decide_morphism_gate(3, 0, &cfg).is_err());
}

#[test]
fn assignments_partition_the_factors() {
    let cfg = Config::default();
    for n in 2..=5u32 {
        for l in (2..2 * n).step_by(2) {
            for a in enumerate_assignments(n, l, &cfg).unwrap() {
                let mut all: Vec<u32> = a.s1.iter().chain(&a.s2).copied().collect();
                all.sort();
                let divs: Vec<u32> = (1..=2 * n + 2).filter(|d| (2 * n + 2) % d == 0).collect();
                assert_eq!(all, divs);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn verdict_ignores_branch_order(seed in any::<u64>(), n in 2u32..=4, half in 1u32..4) {
        let l = 2 * (1 + half % (n - 1).max(1));
        prop_assume!(l < 2 * n);
        let base = decide_morphism_gate(n, l, &Config::default()).unwrap();
        let shuffled = decide_morphism_gate(n, l, &common::shuffled(seed)).unwrap();
        prop_assert_eq!(base, shuffled);
    }

    #[test]
    fn verdict_ignores_positive_rescaling(num in 1i64..20, den in 1i64..20, n in 2u32..=4) {
        let a = qgr_core::rational::qf(num, den);
        for l in (2..2 * n).step_by(2) {
            for asg in enumerate_assignments(n, l, &Config::default()).unwrap() {
                let base = check_assignment(n, &asg).verdict.is_valid();
                prop_assert_eq!(check_assignment_at(n, &asg, &a).2.is_valid(), base);
            }
        }
    }
}
