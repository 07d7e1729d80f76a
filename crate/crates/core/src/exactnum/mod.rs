//! Exact arithmetic: rationals, the multiquadratic field ℚ(√2,√3,√5), and a
//! small arbitrary-precision float used only for sign decisions and fallback
//! evaluation.

mod bigfloat;
mod field;

pub use bigfloat::BigFloat;
pub use field::{field_sqrt, FieldElement, ParseFieldError, BASIS, DEFAULT_PRECISION};

use alloc::string::String;
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// `n/d` as a reduced rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `a`, `-a`, `a/b` (surrounding whitespace ignored).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.strip_prefix('+').unwrap_or(num).parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

pub fn format_rational(r: &Rational) -> String {
    alloc::format!("{}", r)
}

/// Exact square root of a rational if it is a perfect square.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    rational_nth_root(r, 2)
}

/// Exact `n`-th root (real, sign-preserving for odd `n`) if rational.
pub fn rational_nth_root(r: &Rational, n: u32) -> Option<Rational> {
    if r.is_zero() {
        return Some(Rational::zero());
    }
    if r.is_negative() && n.is_multiple_of(2) {
        return None;
    }
    let root = |x: &BigInt| -> Option<BigInt> {
        let mag = x.magnitude();
        let k = mag.nth_root(n);
        if num_traits::pow(k.clone(), n as usize) == *mag {
            Some(BigInt::from_biguint(x.sign(), k))
        } else {
            None
        }
    };
    let num = root(r.numer())?;
    let den = root(r.denom())?;
    Some(Rational::new(num, den))
}

/// `n!!` with the convention `(-1)!! = 0!! = 1`.
pub fn double_factorial(n: i64) -> BigUint {
    let mut acc = BigUint::one();
    let mut k = n;
    while k > 1 {
        acc *= BigUint::from(k as u64);
        k -= 2;
    }
    acc
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

pub fn binomial_u64(n: u64, k: u64) -> u64 {
    let b = binomial(n, k);
    let digits = b.to_u64_digits();
    match digits.len() {
        0 => 0,
        1 => digits[0],
        _ => u64::MAX,
    }
}

pub(crate) fn biguint_to_rational(b: BigUint) -> Rational {
    Rational::from_integer(BigInt::from_biguint(Sign::Plus, b))
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(it: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    it.into_iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}
