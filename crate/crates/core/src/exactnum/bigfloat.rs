use alloc::string::String;
use core::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Binary floating point `mant · 2^exp` carrying at most `prec` significant
/// bits. Rounding is by truncation toward −∞, so every operation is off by
/// at most one unit in the last place.
#[derive(Clone, Debug)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

impl BigFloat {
    pub fn zero(prec: u32) -> Self {
        BigFloat { mant: BigInt::zero(), exp: 0, prec }
    }

    pub fn from_int(n: i64, prec: u32) -> Self {
        Self::from_bigint(BigInt::from(n), prec)
    }

    pub fn from_bigint(n: BigInt, prec: u32) -> Self {
        BigFloat { mant: n, exp: 0, prec }.normalized()
    }

    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        let (n, d) = (q.numer(), q.denom());
        if n.is_zero() {
            return Self::zero(prec);
        }
        let s = prec as i64 + d.bits() as i64 - n.bits() as i64 + 2;
        let mant = if s >= 0 { (n << s as usize).div_floor(d) } else { n.div_floor(&(d << (-s) as usize)) };
        BigFloat { mant, exp: -s, prec }.normalized()
    }

    pub fn from_f64(x: f64, prec: u32) -> Self {
        if x == 0.0 {
            return Self::zero(prec);
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let e = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if e == 0 { (frac, -1074) } else { (frac | 1 << 52, e - 1075) };
        BigFloat { mant: BigInt::from(m) * sign, exp: e, prec }.normalized()
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn with_precision(mut self, prec: u32) -> Self {
        self.prec = prec;
        self.normalized()
    }

    fn normalized(mut self) -> Self {
        let bits = self.mant.bits();
        if bits > self.prec as u64 {
            let shift = bits - self.prec as u64;
            self.mant >>= shift as usize;
            self.exp += shift as i64;
        }
        if self.mant.is_zero() {
            self.exp = 0;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Sign, provided |self| exceeds an absolute error of 2^(−err_bits).
    pub fn sign_beyond(&self, err_bits: u32) -> Option<i32> {
        if self.mant.is_zero() {
            return None;
        }
        let top = self.mant.bits() as i64 + self.exp;
        (top > 2 - err_bits as i64).then(|| self.signum())
    }

    /// floor(log2 |self|) + 1, or None for zero.
    pub fn magnitude_bits(&self) -> Option<i64> {
        (!self.mant.is_zero()).then(|| self.mant.bits() as i64 + self.exp)
    }

    pub fn neg(&self) -> Self {
        BigFloat { mant: -&self.mant, exp: self.exp, prec: self.prec }
    }

    pub fn abs(&self) -> Self {
        BigFloat { mant: self.mant.abs(), exp: self.exp, prec: self.prec }
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = self.prec.max(other.prec);
        if self.mant.is_zero() {
            return other.clone().with_precision(prec);
        }
        if other.mant.is_zero() {
            return self.clone().with_precision(prec);
        }
        // drop an operand that lies entirely below the other's last place
        let top_a = self.mant.bits() as i64 + self.exp;
        let top_b = other.mant.bits() as i64 + other.exp;
        if top_a - top_b > prec as i64 + 2 {
            return self.clone().with_precision(prec);
        }
        if top_b - top_a > prec as i64 + 2 {
            return other.clone().with_precision(prec);
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &other.mant << (other.exp - e) as usize;
        BigFloat { mant: a + b, exp: e, prec }.normalized()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        BigFloat { mant: &self.mant * &other.mant, exp: self.exp + other.exp, prec: self.prec.max(other.prec) }.normalized()
    }

    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.mant.is_zero(), "BigFloat division by zero");
        let prec = self.prec.max(other.prec);
        let s = (prec as i64 + other.mant.bits() as i64 - self.mant.bits() as i64 + 2).max(0);
        let mant = (&self.mant << s as usize).div_floor(&other.mant);
        BigFloat { mant, exp: self.exp - other.exp - s, prec }.normalized()
    }

    pub fn mul_rational(&self, q: &Rational) -> Self {
        self.mul(&Self::from_rational(q, self.prec))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::from_int(1, self.prec);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn sqrt(&self) -> Self {
        self.nth_root(2)
    }

    /// Real `n`-th root; negative input only for odd `n`.
    pub fn nth_root(&self, n: u32) -> Self {
        assert!(n >= 1);
        if self.mant.is_zero() || n == 1 {
            return self.clone();
        }
        assert!(!(self.mant.is_negative() && n.is_multiple_of(2)), "even root of a negative BigFloat");
        let want = (n as u64) * (self.prec as u64 + 2);
        let mut k = (want as i64 - self.mant.bits() as i64).max(0);
        let r = (self.exp - k).rem_euclid(n as i64);
        k += r;
        let m = &self.mant << k as usize;
        let root = m.nth_root(n);
        BigFloat { mant: root, exp: (self.exp - k) / n as i64, prec: self.prec }.normalized()
    }

    pub fn to_f64(&self) -> f64 {
        if self.mant.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let shift = (bits - 62).max(0);
        let top = &self.mant >> shift as usize;
        let (_, digits) = top.to_u64_digits();
        let mag = digits.first().copied().unwrap_or(0) as f64;
        let mut v = if top.is_negative() { -mag } else { mag };
        let mut e = self.exp + shift;
        let big = (1u64 << 60) as f64;
        while e >= 60 {
            v *= big;
            e -= 60;
        }
        while e <= -60 {
            v /= big;
            e += 60;
        }
        if e >= 0 {
            v * (1u64 << e) as f64
        } else {
            v / (1u64 << -e) as f64
        }
    }

    /// Decimal rendering with `digits` digits after the point (truncated).
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = num_traits::pow(BigInt::from(10), digits);
        let scaled = &self.mant * &scale;
        let v = if self.exp >= 0 {
            scaled << self.exp as usize
        } else {
            let d = BigInt::one() << (-self.exp) as usize;
            let q = scaled.abs() / d;
            if self.mant.is_negative() {
                -q
            } else {
                q
            }
        };
        let neg = v.is_negative();
        let s = alloc::format!("{}", v.abs());
        let s = if s.len() <= digits { alloc::format!("{}{}", "0".repeat(digits + 1 - s.len()), s) } else { s };
        let (ip, fp) = s.split_at(s.len() - digits);
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        out.push_str(ip);
        if digits > 0 {
            out.push('.');
            out.push_str(fp);
        }
        out
    }

    pub fn cmp_value(&self, other: &Self) -> Ordering {
        self.sub(other).signum().cmp(&0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn basic_values() {
        let third = BigFloat::from_rational(&rat(1, 3), 128);
        assert!((third.to_f64() - 1.0 / 3.0).abs() < 1e-16);
        let two = BigFloat::from_int(2, 256);
        let r = two.sqrt();
        assert!((r.to_f64() - core::f64::consts::SQRT_2).abs() < 1e-15);
        assert!(r.mul(&r).sub(&two).magnitude_bits().unwrap() < -250);
        let c = BigFloat::from_int(28, 200).nth_root(3);
        assert!((c.to_f64() - 3.036_588_971_875_662_5).abs() < 1e-14);
        assert_eq!(BigFloat::from_rational(&rat(-5, 4), 64).to_decimal(3), "-1.250");
        assert_eq!(BigFloat::from_f64(0.75, 64).to_f64(), 0.75);
    }

    #[test]
    fn division_and_order() {
        let a = BigFloat::from_int(1, 200);
        let b = BigFloat::from_int(7, 200);
        let q = a.div(&b);
        assert!((q.to_f64() - 1.0 / 7.0).abs() < 1e-16);
        assert_eq!(q.cmp_value(&BigFloat::from_rational(&rat(1, 8), 200)), Ordering::Greater);
    }
}
