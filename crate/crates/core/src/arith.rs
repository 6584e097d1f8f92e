//! Exact integer and rational helpers.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rational = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(Int::from(num), Int::from(den))
}

pub fn to_rational(n: &Int) -> Rational {
    Rational::from_integer(n.clone())
}

/// Least common multiple of two positive integers.
pub fn lcm(a: &Int, b: &Int) -> Int {
    a.lcm(b)
}

/// Renders `p/q` in lowest terms, or `n` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    let mut out = String::new();
    if r.denom().is_one() {
        let _ = write!(out, "{}", r.numer());
    } else {
        let _ = write!(out, "{}/{}", r.numer(), r.denom());
    }
    out
}

/// Inverse of [`format_rational`]. Accepts `n`, `-n` and `p/q` with `q > 0`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: Int = num.trim().parse().ok()?;
    let den: Int = den.trim().parse().ok()?;
    if !den.is_positive() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Returns the integer value of `r` if it is integral.
pub fn as_integer(r: &Rational) -> Option<Int> {
    r.is_integer().then(|| r.to_integer())
}

pub fn sum_ints<'a>(it: impl IntoIterator<Item = &'a Int>) -> Int {
    it.into_iter().fold(Int::zero(), |acc, x| acc + x)
}

/// Leading principal minors of a square integer matrix by Bareiss
/// fraction-free elimination. Stops early (returning the minors found so far,
/// the last of which is zero) when a leading minor vanishes.
pub fn leading_principal_minors(matrix: &[Vec<Int>]) -> Vec<Int> {
    let n = matrix.len();
    let mut a: Vec<Vec<Int>> = matrix.to_vec();
    let mut minors = Vec::with_capacity(n);
    let mut prev = Int::one();
    for k in 0..n {
        let pivot = a[k][k].clone();
        minors.push(pivot.clone());
        if pivot.is_zero() {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&pivot * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = pivot;
    }
    minors
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn formats_in_lowest_terms() {
        assert_eq!(format_rational(&ratio(6, 4)), "3/2");
        assert_eq!(format_rational(&ratio(4, 2)), "2");
        assert_eq!(format_rational(&ratio(-1, 3)), "-1/3");
        assert_eq!(format_rational(&ratio(0, 5)), "0");
    }

    #[test]
    fn parse_inverts_format() {
        for r in [ratio(3, 2), ratio(7, 1), ratio(-13, 5), ratio(0, 1)] {
            assert_eq!(parse_rational(&format_rational(&r)), Some(r));
        }
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn bareiss_minors_match_hand_computation() {
        let a2 = vec![vec![int(-2), int(1)], vec![int(1), int(-2)]];
        assert_eq!(leading_principal_minors(&a2), vec![int(-2), int(3)]);
        let three = vec![
            vec![int(2), int(-1), int(0)],
            vec![int(-1), int(2), int(-1)],
            vec![int(0), int(-1), int(2)],
        ];
        assert_eq!(leading_principal_minors(&three), vec![int(2), int(3), int(4)]);
        let singular = vec![vec![int(0), int(1)], vec![int(1), int(0)]];
        assert_eq!(leading_principal_minors(&singular), vec![int(0)]);
    }
}
