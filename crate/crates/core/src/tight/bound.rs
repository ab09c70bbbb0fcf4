//! Exact evaluation of (2r)^(2^(k+4)) + ⌈2^(k+8) · r · ln(2r)⌉.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{input, Result};

/// Beyond this the power term has more than 2^(k+4) · log2(2r) bits and
/// stops being useful to print.
pub const BOUND_MAX_K: usize = 20;

/// Fractional bits used for the logarithm.
const PRECISION: u64 = 320;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremBound {
    pub k: usize,
    pub r: usize,
    #[serde(with = "crate::decimal")]
    pub power_term: BigUint,
    #[serde(with = "crate::decimal")]
    pub log_term: BigUint,
    #[serde(with = "crate::decimal")]
    pub value: BigUint,
    pub log_convention: String,
}

pub fn theorem_bound(k: usize, r: usize) -> Result<TheoremBound> {
    if r < 1 || k < 3 {
        return input(format!("need r >= 1 and k >= 3 (got k = {k}, r = {r})"));
    }
    if k > BOUND_MAX_K {
        return input(format!("k = {k} exceeds {BOUND_MAX_K}; the power term alone has over 2^{} digits", k + 4));
    }
    let power_term = BigUint::from(2 * r).pow(1u32 << (k + 4));
    // ln(2r) scaled by 2^PRECISION, then times 2^(k+8)·r, then ceiling
    let ln = ln_fixed(2 * r as u64);
    let scaled = ln * BigInt::from(r) << (k + 8);
    let (q, rem) = scaled.div_rem(&(BigInt::one() << PRECISION));
    let log_term = if rem.is_zero() { q } else { q + 1 };
    let log_term = log_term.to_biguint().expect("positive");
    Ok(TheoremBound {
        k,
        r,
        value: &power_term + &log_term,
        power_term,
        log_term,
        log_convention: "natural logarithm; ceiling of the non-integer term".into(),
    })
}

/// 2·atanh(p/q) · 2^PRECISION, truncated termwise.
fn atanh2(p: &BigInt, q: &BigInt) -> BigInt {
    let one = BigInt::one() << PRECISION;
    let mut power = &one * p / q;
    let q2 = q * q;
    let p2 = p * p;
    let mut sum = BigInt::zero();
    let mut j = 1u32;
    while !power.is_zero() {
        sum += &power / BigInt::from(j);
        power = power * &p2 / &q2;
        j += 2;
    }
    sum * 2
}

/// ln(m) · 2^PRECISION for m >= 1, via m = 2^e · f with f in [1, 2).
fn ln_fixed(m: u64) -> BigInt {
    let e = 63 - m.leading_zeros() as u64;
    let ln2 = atanh2(&BigInt::one(), &BigInt::from(3));
    let base = BigInt::from(1u64 << e);
    let m = BigInt::from(m);
    // ln f = 2·atanh((m − 2^e)/(m + 2^e))
    ln2 * BigInt::from(e) + atanh2(&(&m - &base), &(&m + &base))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r1_k3() {
        let b = theorem_bound(3, 1).unwrap();
        assert_eq!(b.power_term, BigUint::one() << 128);
        assert_eq!(b.log_term, BigUint::from(1420u32));
        assert_eq!(b.value, (BigUint::one() << 128) + 1420u32);
    }

    #[test]
    fn log_term_matches_floating_point() {
        for k in 3..=6 {
            for r in 1..=9 {
                let want = ((1u64 << (k + 8)) as f64 * r as f64 * (2.0 * r as f64).ln()).ceil();
                let got = theorem_bound(k, r).unwrap().log_term;
                assert_eq!(got, BigUint::from(want as u64), "k={k} r={r}");
            }
        }
    }

    #[test]
    fn ln_digits() {
        // ln 2 = 0.69314718055994530941723212145817656807...
        let ln2 = ln_fixed(2);
        let digits = (ln2 * BigInt::from(10u64).pow(38)) >> PRECISION;
        assert_eq!(digits.to_string(), "69314718055994530941723212145817656807");
    }

    #[test]
    fn monotone_in_r_and_k() {
        for k in 3..=6 {
            for r in 1..=5 {
                let here = theorem_bound(k, r).unwrap().value;
                assert!(theorem_bound(k, r + 1).unwrap().value > here);
                assert!(theorem_bound(k + 1, r).unwrap().value > here);
            }
        }
    }

    #[test]
    fn r2_k3_value() {
        let b = theorem_bound(3, 2).unwrap();
        assert_eq!(b.power_term, BigUint::from(4u32).pow(128));
        assert_eq!(b.log_term, BigUint::from(5679u32));
    }

    #[test]
    fn guards() {
        assert!(theorem_bound(2, 1).is_err());
        assert!(theorem_bound(3, 0).is_err());
        assert!(theorem_bound(BOUND_MAX_K + 1, 1).is_err());
    }
}
