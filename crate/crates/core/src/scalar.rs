//! Numeric abstraction for weights, densities and thresholds.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed, ToPrimitive};

/// A field-like scalar: `f32`, `f64`, or an exact rational.
pub trait Scalar: Clone + PartialOrd + Debug + Display + Num + Signed + Send + Sync + 'static {
    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_usize(n: usize) -> Self {
        Self::from_ratio(n as i64, 1)
    }

    fn to_f64(&self) -> f64;

    /// `true` for exact arithmetic, where equality tests are meaningful.
    fn is_exact() -> bool;

    fn half() -> Self {
        Self::from_ratio(1, 2)
    }

    fn pow_usize(&self, e: usize) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = out * self.clone();
        }
        out
    }

    fn max_of(a: Self, b: Self) -> Self {
        if a >= b {
            a
        } else {
            b
        }
    }

    fn min_of(a: Self, b: Self) -> Self {
        if a <= b {
            a
        } else {
            b
        }
    }
}

impl Scalar for f64 {
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_exact() -> bool {
        false
    }
}

impl Scalar for f32 {
    fn from_ratio(num: i64, den: i64) -> Self {
        (num as f64 / den as f64) as f32
    }
    fn to_f64(&self) -> f64 {
        *self as f64
    }
    fn is_exact() -> bool {
        false
    }
}

impl Scalar for Ratio<i64> {
    fn from_ratio(num: i64, den: i64) -> Self {
        Ratio::new(num, den)
    }
    fn to_f64(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
    fn is_exact() -> bool {
        true
    }
}

impl Scalar for BigRational {
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn is_exact() -> bool {
        true
    }
}

/// δ(r, k) = (2^{2^k + 3k − 5} r^{2^k − 2})^{-1}, the semi-dense matching density.
pub fn semi_dense_delta<S: Scalar>(r: usize, k: usize) -> S {
    assert!(k >= 2 && r >= 1);
    let two_exp = (1usize << k) + 3 * k - 5;
    let r_exp = (1usize << k) - 2;
    let denom = S::from_usize(2).pow_usize(two_exp) * S::from_usize(r).pow_usize(r_exp);
    S::one() / denom
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::from_ratio(n, d)
    }

    #[test]
    fn delta_base_values() {
        for r in 1..=5usize {
            let want = q(1, 32 * (r * r) as i64);
            assert_eq!(semi_dense_delta::<BigRational>(r, 2), want);
        }
        assert_eq!(semi_dense_delta::<BigRational>(2, 3), q(1, 1 << 18));
    }

    #[test]
    fn delta_recursion_matches_closed_form() {
        for k in 2..=4usize {
            for r in 1..=5usize {
                let lhs = semi_dense_delta::<BigRational>(r, k + 1);
                let rhs = semi_dense_delta::<BigRational>(2 * r * r, k)
                    / BigRational::from_usize(32 * r * r);
                assert_eq!(lhs, rhs, "k={k} r={r}");
            }
        }
    }

    #[test]
    fn float_and_exact_agree() {
        let exact = semi_dense_delta::<BigRational>(3, 3);
        let float = semi_dense_delta::<f64>(3, 3);
        assert!((Scalar::to_f64(&exact) - float).abs() < 1e-15);
        let small = semi_dense_delta::<Ratio<i64>>(1, 3);
        assert_eq!(small, Ratio::new(1, 1 << 12));
    }
}
