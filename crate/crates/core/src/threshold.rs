//! Consequences for B_n/P_k and D_n/P_k. Pure arithmetic on (n, k): every
//! 2-plane lies in a P^k or in a quadric Q^{2m+1}, and rank-2m uniform
//! bundles on Q^{2m+1} split for m ≥ 3.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{input_err, Result};
use crate::rational::{fmt_q, qf, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum Family {
    B,
    D,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Inequality {
    pub text: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ThresholdReport {
    pub family: Family,
    pub n: u32,
    pub k: u32,
    /// "B1", "B2", "D1", "D2" or None.
    pub corollary: Option<String>,
    pub checks: Vec<Inequality>,
    pub failed: Option<String>,
    pub statement: String,
    /// The quadric Q^{2m+1} meeting every 2-plane not in P^k, and μ(Q^{2m+1}) = 2m.
    pub quadric_dim: u32,
    pub quadric_mu: Option<u32>,
}

impl ThresholdReport {
    pub fn applies(&self) -> bool {
        self.corollary.is_some()
    }
}

fn ineq(text: String, holds: bool) -> Inequality {
    Inequality { text, holds }
}

pub fn threshold_report(family: Family, n: u32, k: u32) -> Result<ThresholdReport> {
    if n < 2 || k == 0 || k > n {
        return Err(input_err!("need n ≥ 2 and 1 ≤ k ≤ n, got n = {n}, k = {k}"));
    }
    let (name, shift) = match family {
        Family::B => ("B", 0u32),
        Family::D => ("D", 2u32),
    };
    if 2 * n < shift + 2 * k + 1 {
        return Err(input_err!("{name}_{n}/P_{k} has no quadric factor of positive odd dimension"));
    }
    // B: Q^{2n−2k+1}; D: Q^{2n−2k−1}
    let m = n - k - shift / 2;
    let quadric_dim = 2 * m + 1;
    let top = 2 * n - shift;
    let third: Q = qf(top as i64, 3);
    let tt = if shift == 0 { "2n" } else { "(2n-2)" };
    let kq = Q::from_integer((k as i64).into());
    let upper = n as i64 - 3 - shift as i64 / 2;
    let upper_txt = if shift == 0 { "n-3" } else { "n-4" };

    let eq_check = ineq(format!("k = {tt}/3 = {}", fmt_q(&third)), kq == third);
    let six = ineq(format!("k = {k} >= 6"), k >= 6);
    let lower = ineq(format!("k = {k} > {tt}/3 = {}", fmt_q(&third)), kq > third);
    let up = ineq(format!("k = {k} <= {upper_txt} = {upper}"), (k as i64) <= upper);

    let (corollary, checks, statement) = if eq_check.holds {
        let ok = six.holds;
        let st = format!(
            "uniform bundles of rank < {k} on {name}_{n}/P_{k} split; rank {k} ones split or are E_lambda1 (or its dual) twisted by a line bundle"
        );
        (ok.then(|| format!("{name}1")), alloc::vec![eq_check, six], st)
    } else {
        let ok = lower.holds && up.holds;
        let st = format!("every uniform bundle of rank {} on {name}_{n}/P_{k} splits", 2 * m);
        (ok.then(|| format!("{name}2")), alloc::vec![lower, up], st)
    };
    let failed = checks.iter().find(|c| !c.holds).map(|c| format!("{} fails", c.text));
    let statement = if corollary.is_some() { statement } else { format!("NOT_APPLICABLE: {}", failed.clone().unwrap_or_default()) };
    Ok(ThresholdReport {
        family,
        n,
        k,
        corollary,
        checks,
        failed,
        statement,
        quadric_dim,
        quadric_mu: (m >= 3).then_some(2 * m),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let r = threshold_report(Family::B, 9, 6).unwrap();
        assert_eq!(r.corollary.as_deref(), Some("B1"));
        let r = threshold_report(Family::B, 10, 7).unwrap();
        assert_eq!(r.corollary.as_deref(), Some("B2"));
        assert!(r.statement.contains("rank 6"));
        let r = threshold_report(Family::D, 10, 5).unwrap();
        assert!(!r.applies());
        assert_eq!(r.failed.as_deref(), Some("k = 5 > (2n-2)/3 = 6 fails"));
        assert!(threshold_report(Family::B, 3, 4).is_err());
    }
}
