//! Exact monomial moments of the normalized sphere measure, the standard
//! Gaussian, and the first-orthant measure with density ∏ xᵢ^(−1/2)e^(−Σxᵢ/2).

use alloc::vec::Vec;
use num_traits::{One, Zero};

use crate::error::{invalid, Result};
use crate::exactnum::{biguint_to_rational, double_factorial, int, Rational};

pub type Exponent = Vec<u32>;

/// The three integrals a cubature formula can target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Measure {
    Sphere,
    Gaussian,
    Orthant,
}

impl Measure {
    pub fn moment(self, m: usize, alpha: &[u32]) -> Rational {
        match self {
            Measure::Sphere => sphere_moment(m, alpha),
            Measure::Gaussian => gaussian_moment(alpha),
            Measure::Orthant => orthant_moment(alpha),
        }
    }
}

fn dfact(n: i64) -> Rational {
    biguint_to_rational(double_factorial(n))
}

/// ∫ x^α dρ over S^(m−1) with ρ normalized to mass 1.
pub fn sphere_moment(m: usize, alpha: &[u32]) -> Rational {
    if alpha.iter().any(|a| a % 2 == 1) {
        return Rational::zero();
    }
    let q: i64 = alpha.iter().map(|&a| a as i64).sum();
    let num = alpha.iter().fold(Rational::one(), |acc, &a| acc * dfact(a as i64 - 1));
    let m = m as i64;
    num * dfact(m - 2) / dfact(m + q - 2)
}

/// c_q = ∫ y₁^q dρ on S^(m−1).
pub fn c_q(m: usize, q: u32) -> Result<Rational> {
    if q % 2 == 1 {
        return Err(invalid("c_q needs an even q"));
    }
    let mut alpha = alloc::vec![0; m.max(1)];
    alpha[0] = q;
    Ok(sphere_moment(m, &alpha))
}

/// E[x^α] for the standard Gaussian.
pub fn gaussian_moment(alpha: &[u32]) -> Rational {
    if alpha.iter().any(|a| a % 2 == 1) {
        return Rational::zero();
    }
    alpha.iter().fold(Rational::one(), |acc, &a| acc * dfact(a as i64 - 1))
}

/// Orthant moment, equal to the Gaussian moment of 2α.
pub fn orthant_moment(alpha: &[u32]) -> Rational {
    alpha.iter().fold(Rational::one(), |acc, &a| acc * dfact(2 * a as i64 - 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadialWeight {
    Gaussian,
}

impl RadialWeight {
    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "gaussian" => Ok(RadialWeight::Gaussian),
            other => Err(invalid(alloc::format!("unsupported radial weight `{other}`"))),
        }
    }
}

/// Normalizing radial integral ∫ r^(q+m−1) W(r) dr relative to q = 0; for
/// the Gaussian this is E‖x‖^q = m(m+2)⋯(m+q−2).
pub fn radial_factor(w: RadialWeight, m: usize, q: u32) -> Result<Rational> {
    match w {
        RadialWeight::Gaussian => {
            if q % 2 == 1 {
                return Err(invalid("radial factor needs an even degree"));
            }
            Ok((0..q / 2).fold(Rational::one(), |acc, i| acc * int(m as i64 + 2 * i as i64)))
        }
    }
}

/// All exponents of total degree `deg` in `m` variables, graded
/// lexicographic (x₁^deg first).
pub fn monomials(m: usize, deg: u32) -> Vec<Exponent> {
    let mut out = Vec::new();
    let mut cur = alloc::vec![0u32; m];
    fn rec(i: usize, left: u32, cur: &mut Exponent, out: &mut Vec<Exponent>) {
        let m = cur.len();
        if i + 1 == m {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for a in (0..=left).rev() {
            cur[i] = a;
            rec(i + 1, left - a, cur, out);
        }
        cur[i] = 0;
    }
    if m == 0 {
        if deg == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, deg, &mut cur, &mut out);
    out
}

/// Monomials of every degree 0..=deg, graded.
pub fn monomials_upto(m: usize, deg: u32) -> Vec<Exponent> {
    (0..=deg).flat_map(|d| monomials(m, d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn sphere_examples() {
        assert_eq!(sphere_moment(3, &[2, 0, 0]), rat(1, 3));
        assert_eq!(sphere_moment(7, &[6, 0, 0, 0, 0, 0, 0]), rat(5, 231));
        assert_eq!(sphere_moment(5, &[1, 0, 0, 0, 0]), rat(0, 1));
        assert_eq!(c_q(7, 6).unwrap(), rat(5, 231));
        assert_eq!(c_q(9, 0).unwrap(), rat(1, 1));
        assert_eq!(c_q(4, 2).unwrap(), rat(1, 4));
        assert!(c_q(4, 3).is_err());
    }

    #[test]
    fn gaussian_and_orthant() {
        assert_eq!(gaussian_moment(&[2]), rat(1, 1));
        assert_eq!(gaussian_moment(&[4, 2]), rat(3, 1));
        assert_eq!(gaussian_moment(&[1, 2]), rat(0, 1));
        assert_eq!(orthant_moment(&[1]), rat(1, 1));
        assert_eq!(orthant_moment(&[2]), rat(3, 1));
        assert_eq!(orthant_moment(&[1, 1]), rat(1, 1));
    }

    #[test]
    fn radial() {
        assert_eq!(radial_factor(RadialWeight::Gaussian, 3, 2).unwrap(), rat(3, 1));
        assert_eq!(radial_factor(RadialWeight::Gaussian, 5, 0).unwrap(), rat(1, 1));
        assert_eq!(radial_factor(RadialWeight::Gaussian, 2, 4).unwrap(), rat(8, 1));
        assert!(RadialWeight::from_name("laguerre").is_err());
    }

    #[test]
    fn monomial_order() {
        let ms = monomials(3, 2);
        assert_eq!(ms.len(), 6);
        assert_eq!(ms[0], alloc::vec![2, 0, 0]);
        assert_eq!(ms[1], alloc::vec![1, 1, 0]);
        assert_eq!(ms[5], alloc::vec![0, 0, 2]);
        assert_eq!(monomials_upto(2, 3).len(), 10);
    }
}
