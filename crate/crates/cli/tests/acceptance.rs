//! One PASS/FAIL line per acceptance criterion; exits nonzero on any failure.

mod common;

use std::time::Instant;

use proptest::prelude::*;
use proptest::test_runner::{Config as PtConfig, TestRunner};
use qgr_core::classify::{classify_oracle, classify_primitive};
use qgr_core::cyclotomic::factor_one_minus_xm;
use qgr_core::gate::{decide_morphism_gate, AssignmentVerdict};
use qgr_core::lift::LiftMode;
use qgr_core::oracle::{compare_gate, trial_factors};
use qgr_core::poly::{p, poly_divides};
use qgr_core::rational::{q, qf};
use qgr_core::rings::{relation_r, two_var_sigma_identity_check};
use qgr_core::smooth::a3_smooth_irreducible;
use qgr_core::splitter::{exclude_l_top, symmetric_divisor_search, trichotomy, verify_splitting, SplitVerdict};
use qgr_core::{Config, Monomial, MultiPoly, Var};

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn c1() -> Check {
    let cfg = Config::default();
    let start = Instant::now();
    let mut count = 0;
    for n in 2..=5u32 {
        for l in (2..2 * n).step_by(2) {
            if (n, l) == (2, 2) {
                continue;
            }
            let r = decide_morphism_gate(n, l, &cfg).map_err(|e| e.to_string())?;
            ensure(r.only_constant, format!("n = {n}, l = {l} not ONLY_CONSTANT"))?;
            ensure(compare_gate(&r).map_err(|e| e.to_string())?, format!("oracle disagrees at ({n}, {l})"))?;
            count += 1;
        }
    }
    let ms = start.elapsed().as_millis();
    ensure(ms < 60_000, format!("took {ms} ms"))?;
    Ok(format!("{count} cases ONLY_CONSTANT in {ms} ms"))
}

fn c2() -> Check {
    let r = decide_morphism_gate(2, 2, &Config::default()).map_err(|e| e.to_string())?;
    ensure(!r.only_constant, "not an exception")?;
    let want = vec![q(2), q(2), q(1)];
    let hit = r.checked.iter().any(|c| matches!(&c.verdict, AssignmentVerdict::Valid { c, d } if *c == want && *d == want));
    ensure(hit, "no VALID assignment with C = D = (2,2,1)")?;
    Ok("EXCEPTION_WITNESS with C = D = (2,2,1)".into())
}

fn c3() -> Check {
    for n in 3..=6 {
        let ex = exclude_l_top(n).map_err(|e| e.to_string())?;
        ensure(ex.impossible, format!("n = {n} not excluded"))?;
    }
    let ex = exclude_l_top(3).map_err(|e| e.to_string())?;
    ensure(ex.quotient_over_minus_a == p("X1^4*X2 + X1^2*X2^3 + X2^5"), format!("quotient {}", ex.quotient))?;
    Ok(format!("IMPOSSIBLE for n = 3..6, n = 3 quotient {}", ex.quotient))
}

fn c4() -> Check {
    let cfg = Config::default();
    let tri = trichotomy(3, 3, &cfg).map_err(|e| e.to_string())?;
    ensure(tri.roots.len() == 2 && tri.roots.iter().all(|r| r.candidates.is_empty()), "candidates present")?;
    let s = symmetric_divisor_search(3, 3, LiftMode::Star, &cfg).map_err(|e| e.to_string())?;
    ensure(s.is_empty(), "search not empty")?;
    Ok("both branches empty".into())
}

fn c5() -> Check {
    let cfg = Config::default();
    for n in 3..=5 {
        for p2n in [0, 1] {
            let r = classify_primitive(n, p2n, &cfg).map_err(|e| e.to_string())?;
            ensure(r.matches_closed_form, format!("n = {n}, p2n = {p2n}: P = {}", r.p))?;
            let o = classify_oracle(&r, &cfg).map_err(|e| e.to_string())?;
            ensure(o.agree, format!("oracle disagrees at n = {n}, p2n = {p2n}"))?;
        }
    }
    let mut levels = 0;
    for n in 2..=8 {
        for p2n in [0, 1] {
            let r = classify_primitive(n, p2n, &cfg).map_err(|e| e.to_string())?;
            for d in &r.determinants {
                ensure(d.nonzero && d.matches_closed_form, format!("n = {n}, p2n = {p2n}, level {}", d.m))?;
                levels += 1;
            }
        }
    }
    Ok(format!("closed forms n = 3..5 with oracle, {levels} determinants nonzero for n <= 8"))
}

fn c6() -> Check {
    let cfg = Config::default();
    let mut at5 = 0;
    for n in 1..=5 {
        let start = Instant::now();
        let r = a3_smooth_irreducible(n, &cfg).map_err(|e| e.to_string())?;
        ensure(r.smooth && r.irreducible, format!("n = {n} failed"))?;
        at5 = start.elapsed().as_millis();
    }
    ensure(at5 < 120_000, format!("n = 5 took {at5} ms"))?;
    Ok(format!("smooth and irreducible for n = 1..5, n = 5 in {at5} ms"))
}

fn c7() -> Check {
    let cfg = Config::default();
    let mut times = vec![];
    for n in 3..=5 {
        let start = Instant::now();
        let r = verify_splitting(n, None, &cfg).map_err(|e| e.to_string())?;
        let ms = start.elapsed().as_millis();
        ensure(r.verdict == SplitVerdict::Splits, format!("n = {n}: {:?}", r.verdict))?;
        ensure(ms < 600_000, format!("n = {n} took {ms} ms"))?;
        times.push(format!("n={n} {ms} ms"));
    }
    Ok(format!("SPLITS ({})", times.join(", ")))
}

fn c8() -> Check {
    let r = verify_splitting(2, None, &Config::default()).map_err(|e| e.to_string())?;
    ensure(r.verdict == SplitVerdict::WitnessFound, "no witness")?;
    let w = r.entries.iter().flat_map(|e| &e.direct.witnesses).next().ok_or("empty witness list")?;
    ensure(w.reconstruction_ok, "reconstruction failed")?;
    Ok(format!("WITNESS_FOUND, a = {}, reconstruction checked", w.a))
}

fn small_poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(((0..=3u32, 0..=3u32, 0..=3u32), -5i64..=5, 1i64..=3), 0..=4).prop_map(|terms| {
        MultiPoly::from_terms(
            terms
                .into_iter()
                .map(|((a, b, c), x, y)| (Monomial::from_pairs(&[(Var::T, a), (Var::X1, b), (Var::X2, c)]), qf(x, y))),
        )
    })
}

fn cases() -> PtConfig {
    PtConfig { failure_persistence: None, ..PtConfig::with_cases(1000) }
}

fn c9() -> Check {
    for m in 1..=40 {
        let f = factor_one_minus_xm(m).map_err(|e| e.to_string())?;
        ensure(f.product() == MultiPoly::one() - MultiPoly::var(Var::X).pow(m), format!("m = {m} product"))?;
        let t = trial_factors(m).map_err(|e| e.to_string())?;
        ensure(t.len() == f.factors.len(), format!("m = {m} trial division disagrees"))?;
    }
    let (x1, x2) = (p("X1"), p("X2"));
    for n in 0..=20 {
        ensure(two_var_sigma_identity_check(n), format!("sigma identity n = {n}"))?;
        let lhs = &(&x1.pow(2) - &x2.pow(2)) * &relation_r(n);
        ensure(lhs == x1.pow(2 * n + 2) - x2.pow(2 * n + 2), format!("R identity n = {n}"))?;
    }
    let mut runner = TestRunner::new(cases());
    runner
        .run(&(small_poly(), small_poly()), |(a, f)| {
            prop_assume!(!a.is_zero());
            let prod = &a * &f;
            prop_assert_eq!(poly_divides(&a, &prod).unwrap(), Some(f));
            Ok(())
        })
        .map_err(|e| format!("division: {e}"))?;
    let mut runner = TestRunner::new(cases());
    runner
        .run(&(small_poly(), small_poly()), |(a, b)| {
            let sa = &a + &a.swap(Var::X1, Var::X2);
            let sb = &b + &b.swap(Var::X1, Var::X2);
            prop_assert!((&sa * &sb).is_symmetric() && (&sa + &sb).is_symmetric());
            Ok(())
        })
        .map_err(|e| format!("symmetry: {e}"))?;
    Ok("cyclotomic m <= 40, identities n <= 20, 1000 division and 1000 symmetry cases".into())
}

fn c10() -> Check {
    let lines = [
        "verify-morphism --n 2 --l 2",
        "verify-morphism --n 5 --l 6",
        "verify-splitting --n 2",
        "verify-splitting --n 4",
        "factor --m 36",
        "classify-approx --n 4 --p2n 1",
        "smooth-check --n 3",
        "threshold --family D --n 10 --k 6",
    ];
    let dir = std::env::temp_dir();
    for line in lines {
        let base = common::run(line, &Config::default()).cert.ok_or("no certificate")?;
        let a = base.canonical_json().map_err(|e| e.to_string())?;
        ensure(a == common::run(line, &Config::default()).cert.unwrap().canonical_json().unwrap(), format!("{line}: rerun differs"))?;
        for seed in [3u64, 17, 2024] {
            let b = common::run(line, &common::shuffled(seed)).cert.unwrap().canonical_json().unwrap();
            ensure(a == b, format!("{line}: shuffled seed {seed} differs"))?;
        }
        let path = dir.join(format!("qgr-acceptance-{}.json", std::process::id()));
        base.write(&path).map_err(|e| e.to_string())?;
        let back = qgr::Certificate::read(&path).map_err(|e| e.to_string())?;
        let _ = std::fs::remove_file(&path);
        ensure(back == base, format!("{line}: round trip differs"))?;
    }
    Ok(format!("{} commands byte-identical under 3 shuffles and round trip", lines.len()))
}

fn oracle_invariance() -> Check {
    let mut count = 0;
    for n in 1..=3u32 {
        let mut lines = vec![format!("smooth-check --n {n}")];
        if n >= 2 {
            lines.push(format!("verify-splitting --n {n}"));
            lines.extend((2..2 * n).step_by(2).map(|l| format!("verify-morphism --n {n} --l {l}")));
        }
        if n == 3 {
            lines.push("classify-approx --n 3 --p2n 0".into());
            lines.push("classify-approx --n 3 --p2n 1".into());
        }
        for line in lines {
            let a = common::run(&line, &Config::default());
            let b = common::run(&format!("{line} --oracle"), &Config::default());
            ensure(a.code == b.code, format!("{line}: exit {} vs {}", a.code, b.code))?;
            ensure(a.cert.map(|c| c.verdict) == b.cert.map(|c| c.verdict), format!("{line}: verdict changed"))?;
            count += 1;
        }
    }
    Ok(format!("{count} commands, verdicts unchanged"))
}

fn main() {
    let checks: [(&str, fn() -> Check); 11] = [
        ("1 gate only-constant for even l", c1),
        ("2 exception at (2,2)", c2),
        ("3 top-l exclusion", c3),
        ("4 n = 3, d = 3 search empty", c4),
        ("5 primitive classification", c5),
        ("6 smooth-check", c6),
        ("7 splitting for n = 3,4,5", c7),
        ("8 control witness at n = 2", c8),
        ("9 identities and invariants", c9),
        ("10 canonical certificates", c10),
        ("oracle invariance n <= 3", oracle_invariance),
    ];
    let mut failed = 0;
    for (name, f) in checks {
        let start = Instant::now();
        let res = f();
        let ms = start.elapsed().as_millis();
        match res {
            Ok(msg) => println!("PASS [{name}] {msg} ({ms} ms)"),
            Err(msg) => {
                failed += 1;
                println!("FAIL [{name}] {msg} ({ms} ms)");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
