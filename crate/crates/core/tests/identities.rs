use qgr_core::cyclotomic::{divisors, factor_cyclotomic_form, factor_one_minus_xm, is_squarefree, totient};
use qgr_core::oracle::trial_factors;
use qgr_core::poly::p;
use qgr_core::rational::q;
use qgr_core::resultant::resultant;
use qgr_core::rings::{relation_r, sigma, sigma_telescoping, two_var_sigma_identity_check};
use qgr_core::{MultiPoly, Var};

#[test]
fn sigma_identities_up_to_20() {
    let (x1, x2) = (p("X1"), p("X2"));
    for n in 0..=20 {
        assert!(two_var_sigma_identity_check(n), "n = {n}");
        let lhs = &(&x1.pow(2) - &x2.pow(2)) * &relation_r(n);
        assert_eq!(lhs, x1.pow(2 * n + 2) - x2.pow(2 * n + 2), "n = {n}");
    }
}

#[test]
fn sigma_recursion_up_to_20() {
    let (a, b, c) = (p("T"), p("X1"), p("X2"));
    for n in 1..=20 {
        let lhs = sigma(n, &[a.clone(), b.clone()]);
        let rhs = &a * &sigma(n - 1, &[a.clone(), b.clone()]) + b.pow(n);
        assert_eq!(lhs, rhs);
        assert!(sigma(n, &[a.clone(), b.clone(), c.clone()]).is_symmetric());
    }
}

#[test]
fn telescoping_up_to_12() {
    let (a, b, c) = (p("T^2"), p("z*X1^2"), p("z*X2^2"));
    for n in 1..=12 {
        let (f1, f2) = sigma_telescoping(n, &a, &b, &c).unwrap();
        assert_eq!(&f1 * &f2, sigma(n, &[a.clone(), b.clone()]) - sigma(n, &[b.clone(), c.clone()]));
    }
}

#[test]
fn cyclotomic_reconstruction_up_to_40() {
    for m in 1..=40u32 {
        let f = factor_one_minus_xm(m).unwrap();
        assert_eq!(f.product(), MultiPoly::one() - MultiPoly::var(Var::X).pow(m));
        assert_eq!(f.factors.len(), divisors(m).len());
        assert_eq!(f.factors.iter().map(|x| x.degree()).sum::<u32>(), m);
        for x in &f.factors {
            assert_eq!(x.degree(), totient(x.d));
            assert_eq!(x.poly.to_univariate(Var::X).unwrap()[0], q(1));
        }
        let t: Vec<u32> = trial_factors(m).unwrap().iter().map(|(d, _)| *d).collect();
        assert_eq!(t, f.factors.iter().map(|x| x.d).collect::<Vec<_>>());
    }
}

#[test]
fn six_has_four_factors() {
    let f = factor_one_minus_xm(6).unwrap();
    let polys: Vec<MultiPoly> = f.factors.iter().map(|x| x.poly.clone()).collect();
    assert_eq!(polys, vec![p("1 - x"), p("1 + x"), p("1 + x + x^2"), p("1 - x + x^2")]);
}

#[test]
fn top_forms_factor_and_reconstruct() {
    for n in 1..=8 {
        for top in [0, 1] {
            let form = p("X1").pow(2 * n).scale(&q(top)) - relation_r(n);
            let fact = factor_cyclotomic_form(&form).unwrap();
            assert_eq!(fact.product(), form, "n = {n}, p2n = {top}");
            let x2s = fact.factors.iter().filter(|(f, _)| f.label == "X2").map(|(_, e)| *e).sum::<u32>();
            assert_eq!(x2s, if top == 1 { 2 } else { 0 });
        }
        assert!(is_squarefree(&sigma(n, &[p("z^2"), MultiPoly::one()])).unwrap());
    }
}

#[test]
fn planted_common_factor_kills_resultant() {
    let shared = p("x - 2*z + 1");
    let f = &shared * &p("x^2 + z");
    let g = &shared * &p("x + 3*z^2 - 1");
    assert!(resultant(&f, &g, Var::X).unwrap().is_zero());
    // Res(x − a, x − b) = a − b up to sign
    let r = resultant(&p("x - 3"), &p("x + 4"), Var::X).unwrap();
    assert_eq!(r.as_constant().map(|c| c.clone() * c), Some(q(49)));
    assert!(!resultant(&p("x^2 + 1"), &p("x^2 - 2"), Var::X).unwrap().is_zero());
}
