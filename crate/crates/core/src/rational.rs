//! Rational scalars. Display gives `num/den`, or just `num` when den = 1.

use alloc::string::String;
use alloc::vec::Vec;
use core::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{capability_err, input_err, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_q(s: &str) -> Result<Q> {
    Q::from_str(s.trim()).map_err(|_| input_err!("not a rational: {s:?}"))
}

pub fn fmt_q(x: &Q) -> String {
    alloc::format!("{x}")
}

pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

/// Trial-division bound for the rational root search.
const TRIAL_LIMIT: u64 = 2_000_000;

/// Positive divisors of |v|, or a capability error if |v| has a prime factor
/// beyond the trial-division range.
fn divisors(v: &BigInt) -> Result<Vec<BigInt>> {
    let mut rest: BigUint = v.magnitude().clone();
    let mut primes: Vec<(BigUint, u32)> = Vec::new();
    let mut p: u64 = 2;
    while rest > BigUint::one() {
        let pb = BigUint::from(p);
        if &pb * &pb > rest {
            primes.push((rest.clone(), 1));
            break;
        }
        if p > TRIAL_LIMIT {
            return Err(capability_err!(
                "rational root search: cannot factor {v} by trial division"
            ));
        }
        let mut e = 0;
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            e += 1;
        }
        if e > 0 {
            primes.push((pb, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut out = alloc::vec![BigInt::one()];
    for (pr, e) in primes {
        let pr = BigInt::from(pr);
        let mut next = Vec::new();
        for d in &out {
            let mut m = d.clone();
            for _ in 0..=e {
                next.push(m.clone());
                m *= &pr;
            }
        }
        out = next;
    }
    out.sort();
    Ok(out)
}

/// All rational roots of a nonzero polynomial given by ascending
/// coefficients, sorted ascending, without multiplicity.
pub fn rational_roots(coeffs: &[Q]) -> Result<Vec<Q>> {
    let mut c: Vec<Q> = coeffs.to_vec();
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    if c.is_empty() {
        return Err(input_err!("rational_roots of the zero polynomial"));
    }
    let mut roots = Vec::new();
    let lead_zeros = c.iter().take_while(|x| x.is_zero()).count();
    if lead_zeros > 0 {
        roots.push(Q::zero());
        c.drain(..lead_zeros);
    }
    if c.len() >= 2 {
        // clear denominators
        let l = c
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = c.iter().map(|x| (x * &l).to_integer()).collect();
        if ints.len() == 2 {
            roots.push(Q::new(-ints[0].clone(), ints[1].clone()));
        } else {
            let ps = divisors(&ints[0])?;
            let qs = divisors(ints.last().unwrap())?;
            for pp in &ps {
                for qq in &qs {
                    if !pp.gcd(qq).is_one() {
                        continue;
                    }
                    for cand in [Q::new(pp.clone(), qq.clone()), Q::new(-pp.clone(), qq.clone())] {
                        if horner(&c, &cand).is_zero() {
                            roots.push(cand);
                        }
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

fn horner(c: &[Q], x: &Q) -> Q {
    c.iter().rev().fold(Q::zero(), |acc, a| acc * x + a)
}

/// n! as a rational.
pub fn factorial(n: u32) -> Q {
    (1..=n).fold(Q::one(), |acc, k| acc * q(k as i64))
}

/// Small nonnegative integers are common in loops over degrees.
pub fn to_u32(x: &Q) -> Option<u32> {
    if is_integer(x) && !x.is_negative() {
        x.numer().to_u32()
    } else {
        None
    }
}
