use core::fmt;

use num_traits::{One, Signed};

use crate::error::{invalid, Result};
use crate::exactnum::{rational_nth_root, BigFloat, Rational};

/// Radius r = s^(1/q) kept as its q-th power so that r^k is exact whenever
/// q divides k. Always stored in lowest form (q as small as possible).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RadialScale {
    s: Rational,
    q: u32,
}

impl RadialScale {
    pub fn new(s: Rational, q: u32) -> Result<Self> {
        if q == 0 || !s.is_positive() {
            return Err(invalid("radial scale needs s > 0 and q >= 1"));
        }
        Ok(RadialScale { s, q }.canonical())
    }

    pub fn unit() -> Self {
        RadialScale { s: Rational::one(), q: 1 }
    }

    pub fn s(&self) -> &Rational {
        &self.s
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn is_unit(&self) -> bool {
        self.s.is_one()
    }

    fn canonical(mut self) -> Self {
        if self.s.is_one() {
            self.q = 1;
            return self;
        }
        let mut p = 2;
        while p <= self.q {
            while self.q.is_multiple_of(p) {
                match rational_nth_root(&self.s, p) {
                    Some(r) => {
                        self.s = r;
                        self.q /= p;
                    }
                    None => break,
                }
            }
            p += 1;
        }
        self
    }

    /// r^k when rational.
    pub fn pow_exact(&self, k: u32) -> Option<Rational> {
        if k == 0 {
            return Some(Rational::one());
        }
        let sk = num_traits::pow(self.s.clone(), k as usize);
        if k.is_multiple_of(self.q) {
            return Some(num_traits::pow(self.s.clone(), (k / self.q) as usize));
        }
        rational_nth_root(&sk, self.q)
    }

    pub fn pow_float(&self, k: u32, bits: u32) -> BigFloat {
        BigFloat::from_rational(&num_traits::pow(self.s.clone(), k as usize), bits + 16).nth_root(self.q).with_precision(bits)
    }

    /// √r.
    pub fn sqrt(&self) -> Self {
        RadialScale { s: self.s.clone(), q: self.q * 2 }.canonical()
    }

    /// r².
    pub fn square(&self) -> Self {
        RadialScale { s: &self.s * &self.s, q: self.q }.canonical()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let q = num_integer::lcm(self.q, other.q);
        let a = num_traits::pow(self.s.clone(), (q / self.q) as usize);
        let b = num_traits::pow(other.s.clone(), (q / other.q) as usize);
        RadialScale { s: a * b, q }.canonical()
    }
}

impl fmt::Display for RadialScale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.s, self.q)
    }
}

impl fmt::Debug for RadialScale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q == 1 {
            write!(f, "{}", self.s)
        } else {
            write!(f, "({})^(1/{})", self.s, self.q)
        }
    }
}

impl Default for RadialScale {
    fn default() -> Self {
        Self::unit()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    #[test]
    fn canonical_forms() {
        let r = RadialScale::new(int(64), 6).unwrap();
        assert_eq!((r.s().clone(), r.q()), (int(2), 1));
        let c = RadialScale::new(int(28), 3).unwrap();
        assert_eq!(c.pow_exact(3), Some(int(28)));
        assert_eq!(c.pow_exact(2), None);
        assert_eq!(c.sqrt().pow_exact(6), Some(int(28)));
        assert_eq!(RadialScale::new(rat(9, 4), 2).unwrap(), RadialScale::new(rat(3, 2), 1).unwrap());
        assert!(RadialScale::new(int(-1), 2).is_err());
        let f = c.pow_float(1, 128).to_f64();
        assert!((f - 3.036_588_971_875_662_5).abs() < 1e-14);
    }
}
