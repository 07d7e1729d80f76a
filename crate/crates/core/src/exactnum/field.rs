use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{int, parse_rational, rational_sqrt, BigFloat, Rational};

/// Working precision (bits) for float fallbacks.
pub const DEFAULT_PRECISION: u32 = 256;

/// Squarefree radicands in display order: 1, √2, √3, √5, √6, √10, √15, √30.
pub const BASIS: [u32; 8] = [1, 2, 3, 5, 6, 10, 15, 30];

// Coefficients are stored by bitmask over the primes (2, 3, 5), so that
// √a·√b has mask a^b and rational factor ∏ primes in a&b.
const PRIMES: [u32; 3] = [2, 3, 5];
const DISPLAY_MASK: [usize; 8] = [0, 1, 2, 4, 3, 5, 6, 7];

fn mask_radicand(mask: usize) -> u32 {
    (0..3).filter(|b| mask >> b & 1 == 1).map(|b| PRIMES[b]).product()
}

fn radicand_mask(d: u32) -> Option<usize> {
    let mut mask = 0;
    let mut rest = d;
    for (b, &p) in PRIMES.iter().enumerate() {
        if rest.is_multiple_of(p) {
            rest /= p;
            mask |= 1 << b;
            if rest.is_multiple_of(p) {
                return None;
            }
        }
    }
    (rest == 1).then_some(mask)
}

/// An element of ℚ(√2, √3, √5).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    c: [Rational; 8],
}

impl FieldElement {
    pub fn zero() -> Self {
        FieldElement { c: core::array::from_fn(|_| Rational::zero()) }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        let mut x = Self::zero();
        x.c[0] = r;
        x
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    /// `q·√d` for a squarefree divisor `d` of 30.
    pub fn sqrt_of(d: u32) -> Self {
        Self::term(Rational::one(), d)
    }

    pub fn term(q: Rational, d: u32) -> Self {
        let mask = radicand_mask(d).expect("radicand must be a squarefree divisor of 30");
        let mut x = Self::zero();
        x.c[mask] = q;
        x
    }

    /// Coefficients in display order (1, √2, √3, √5, √6, √10, √15, √30).
    pub fn coeffs(&self) -> [Rational; 8] {
        core::array::from_fn(|i| self.c[DISPLAY_MASK[i]].clone())
    }

    pub fn from_coeffs(coeffs: [Rational; 8]) -> Self {
        let mut x = Self::zero();
        for (i, q) in coeffs.into_iter().enumerate() {
            x.c[DISPLAY_MASK[i]] = q;
        }
        x
    }

    /// Coefficient of `√d`.
    pub fn coeff(&self, d: u32) -> &Rational {
        &self.c[radicand_mask(d).expect("radicand must divide 30")]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.c[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then(|| &self.c[0])
    }

    pub fn rational_part(&self) -> &Rational {
        &self.c[0]
    }

    /// Bitmask of radicands with nonzero coefficient (bit i ⇔ `BASIS[i]`).
    pub fn support(&self) -> u8 {
        (0..8).filter(|&i| !self.c[DISPLAY_MASK[i]].is_zero()).fold(0, |m, i| m | 1 << i)
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        FieldElement { c: core::array::from_fn(|i| &self.c[i] * q) }
    }

    /// Multiplicative inverse, by solving the 8×8 rational system
    /// `self · x = 1`. `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.is_rational() {
            return Some(Self::from_rational(self.c[0].recip()));
        }
        // column j of the multiplication matrix is self·√(mask j)
        let mut m: Vec<Vec<Rational>> = (0..8).map(|_| (0..9).map(|_| Rational::zero()).collect()).collect();
        for j in 0..8 {
            for i in 0..8 {
                if self.c[i].is_zero() {
                    continue;
                }
                let k = i ^ j;
                let f = mask_radicand(i & j);
                m[k][j] += &self.c[i] * int(f as i64);
            }
        }
        m[0][8] = Rational::one();
        let sol = crate::linalg::solve_augmented(m)?;
        let mut x = Self::zero();
        x.c.clone_from_slice(&sol);
        Some(x)
    }

    /// Galois conjugate flipping the sign of every radical containing the
    /// primes in `flip` (bitmask over 2,3,5).
    pub fn conjugate(&self, flip: usize) -> Self {
        FieldElement { c: core::array::from_fn(|m| if (m & flip).count_ones() % 2 == 1 { -self.c[m].clone() } else { self.c[m].clone() }) }
    }

    /// Absolute-error approximation: |result − self| ≤ 2^(−bits).
    pub fn to_bigfloat(&self, bits: u32) -> BigFloat {
        // extra guard bits scale with the coefficient sizes so that
        // cancellation between terms cannot eat the precision
        let mag: u64 = self.c.iter().map(|q| q.numer().bits().saturating_sub(q.denom().bits()) + 1).max().unwrap_or(0);
        let work = bits + 8 + mag as u32 + 4;
        let mut acc = BigFloat::zero(work);
        for (m, q) in self.c.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let qf = BigFloat::from_rational(q, work);
            let t = if m == 0 { qf } else { qf.mul(&BigFloat::from_int(mask_radicand(m) as i64, work).sqrt()) };
            acc = acc.add(&t);
        }
        acc.with_precision(bits.max(53))
    }

    pub fn to_f64(&self) -> f64 {
        self.to_bigfloat(80).to_f64()
    }

    /// Exact sign (−1, 0, 1); refines precision until the float value
    /// separates from zero.
    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        if self.is_rational() {
            return if self.c[0].is_positive() { 1 } else { -1 };
        }
        let mut bits = 64;
        loop {
            let f = self.to_bigfloat(bits);
            // the approximation is within 2^-bits of the true value
            if let Some(s) = f.sign_beyond(bits) {
                return s;
            }
            bits *= 2;
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Compact rendering without spaces, e.g. `1/2-3*r5`.
    pub fn to_compact(&self) -> String {
        let mut s = String::new();
        for (pos, &m) in DISPLAY_MASK.iter().enumerate() {
            let q = &self.c[m];
            if q.is_zero() {
                continue;
            }
            let neg = q.is_negative();
            if !s.is_empty() {
                s.push(if neg { '-' } else { '+' });
            } else if neg {
                s.push('-');
            }
            let a = q.abs();
            if pos == 0 {
                s.push_str(&alloc::format!("{}", a));
            } else if a.is_one() {
                s.push_str(&alloc::format!("r{}", BASIS[pos]));
            } else {
                s.push_str(&alloc::format!("{}*r{}", a, BASIS[pos]));
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

impl Default for FieldElement {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Rational> for FieldElement {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Real order (exact).
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        FieldElement { c: core::array::from_fn(|i| &self.c[i] + &rhs.c[i]) }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        FieldElement { c: core::array::from_fn(|i| &self.c[i] - &rhs.c[i]) }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        if rhs.is_rational() {
            return self.scale(&rhs.c[0]);
        }
        if self.is_rational() {
            return rhs.scale(&self.c[0]);
        }
        let mut out = FieldElement::zero();
        for i in 0..8 {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..8 {
                if rhs.c[j].is_zero() {
                    continue;
                }
                let p = &self.c[i] * &rhs.c[j];
                let g = i & j;
                out.c[i ^ j] += if g == 0 { p } else { p * int(mask_radicand(g) as i64) };
            }
        }
        out
    }
}

impl<'a> Div<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: &FieldElement) -> FieldElement {
        if let Some(q) = rhs.as_rational() {
            return self.scale(&q.recip());
        }
        self * &rhs.inv().expect("division by zero field element")
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { c: self.c.map(|q| -q) }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -self.clone()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $f(self, rhs: FieldElement) -> FieldElement {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $f(self, rhs: &FieldElement) -> FieldElement {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        for i in 0..8 {
            if !rhs.c[i].is_zero() {
                self.c[i] += &rhs.c[i];
            }
        }
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, rhs: &FieldElement) {
        for i in 0..8 {
            if !rhs.c[i].is_zero() {
                self.c[i] -= &rhs.c[i];
            }
        }
    }
}

impl MulAssign<&FieldElement> for FieldElement {
    fn mul_assign(&mut self, rhs: &FieldElement) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for FieldElement {
    /// `a0 + a1*r2 + a2*r3 + ...`, zero coefficients omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let compact = self.to_compact();
        let mut out = String::new();
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 {
                out.push(' ');
                out.push(ch);
                out.push(' ');
            } else {
                out.push(ch);
            }
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({})", self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseFieldError(pub String);

impl fmt::Display for ParseFieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cannot parse field element: {}", self.0)
    }
}

impl core::str::FromStr for FieldElement {
    type Err = ParseFieldError;

    /// Accepts sums of terms `q`, `q*rD`, `rD`, `q*sqrt(D)` with optional
    /// signs; whitespace is ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseFieldError(String::from(s));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        let bytes = compact.as_bytes();
        let mut terms = Vec::new();
        let mut start = 0;
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'*' | b'/' | b'(') {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        let mut acc = FieldElement::zero();
        for t in terms {
            let (neg, body) = match t.as_bytes().first() {
                Some(b'-') => (true, &t[1..]),
                Some(b'+') => (false, &t[1..]),
                _ => (false, t),
            };
            let (coef, rad) = match body.split_once('*') {
                Some((c, r)) => (c, Some(r)),
                None if body.starts_with('r') || body.starts_with("sqrt") => ("1", Some(body)),
                None => (body, None),
            };
            let mut q = parse_rational(coef).ok_or_else(err)?;
            if neg {
                q = -q;
            }
            let d = match rad {
                None => 1,
                Some(r) => {
                    let digits =
                        r.strip_prefix("sqrt(").and_then(|x| x.strip_suffix(')')).or_else(|| r.strip_prefix('r')).ok_or_else(err)?;
                    digits.parse::<u32>().map_err(|_| err())?
                }
            };
            let mask = radicand_mask(d).ok_or_else(err)?;
            acc.c[mask] += q;
        }
        Ok(acc)
    }
}

/// Exact square root inside ℚ(√2,√3,√5), if one exists. The root returned
/// is the one with nonnegative real value.
pub fn field_sqrt(a: &FieldElement) -> Option<FieldElement> {
    if a.is_zero() {
        return Some(FieldElement::zero());
    }
    let r = sqrt_level(a, 3)?;
    Some(if r.is_negative() { -r } else { r })
}

// a lies in ℚ(√p1, …, √p_level); work down the quadratic tower.
fn sqrt_level(a: &FieldElement, level: usize) -> Option<FieldElement> {
    if level == 0 {
        return rational_sqrt(&a.c[0]).map(FieldElement::from_rational);
    }
    let bit = 1usize << (level - 1);
    let p = PRIMES[level - 1];
    let mut x = FieldElement::zero();
    let mut y = FieldElement::zero();
    for m in 0..8 {
        if a.c[m].is_zero() {
            continue;
        }
        if m & bit == 0 {
            x.c[m] = a.c[m].clone();
        } else {
            y.c[m ^ bit] = a.c[m].clone();
        }
    }
    let sp = FieldElement::sqrt_of(p);
    if y.is_zero() {
        if let Some(u) = sqrt_level(&x, level - 1) {
            return Some(u);
        }
        let v = sqrt_level(&x.scale(&Rational::new(BigInt::one(), BigInt::from(p))), level - 1)?;
        return Some(&v * &sp);
    }
    // (u + v√p)² = x + y√p  ⇒  u² = (x ± √(x² − p y²)) / 2,  v = y / 2u
    let norm = &x.square() - &y.square().scale(&int(p as i64));
    let n = sqrt_level(&norm, level - 1)?;
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    for s in [n.clone(), -n] {
        let u2 = (&x + &s).scale(&half);
        if let Some(u) = sqrt_level(&u2, level - 1) {
            if u.is_zero() {
                continue;
            }
            let v = &y / &u.scale(&int(2));
            return Some(&u + &(&v * &sp));
        }
    }
    None
}
