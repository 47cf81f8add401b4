//! Small exact-arithmetic helpers shared across modules.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// The integer value of `x`, or `None` when `x` has a nontrivial denominator.
pub fn rat_to_int(x: &BigRational) -> Option<BigInt> {
    x.is_integer().then(|| x.to_integer())
}

pub fn factorial(n: usize) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `binom(n, k)` for nonnegative arguments, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `binom(n, k)` with `n` possibly negative, zero for `k < 0`, and
/// `binom(-1,-1) = 1` style conventions left to callers.
pub fn binomial_signed(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `binom(a, k)` for a rational upper argument.
pub fn binomial_rational(a: &BigRational, k: usize) -> BigRational {
    let mut acc = BigRational::one();
    for i in 0..k {
        acc = acc * (a - rat(i as i64)) / rat(i as i64 + 1);
    }
    acc
}

/// Row `0..=n` of Pascal's triangle as a table `t[i][j] = binom(i, j)`.
pub fn pascal(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = Vec::with_capacity(i + 1);
        for j in 0..=i {
            if j == 0 || j == i {
                row.push(BigInt::one());
            } else {
                let v = &rows[i - 1][j - 1] + &rows[i - 1][j];
                row.push(v);
            }
        }
        rows.push(row);
    }
    rows
}

/// Exact quotient, panicking when the division is not exact.
pub fn exact_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    assert!(r.is_zero(), "inexact division");
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(2, 5), BigInt::zero());
        assert_eq!(binomial_signed(-1, 3), BigInt::from(-1));
        assert_eq!(binomial_signed(4, -1), BigInt::zero());
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(binomial_rational(&half, 2), BigRational::new((-1).into(), 8.into()));
        assert_eq!(pascal(4)[4][2], BigInt::from(6));
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(6), BigInt::from(720));
    }
}
