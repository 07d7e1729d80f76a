//! Explicit L-invariant orthant formulas of index two and three.
//!
//! `printed_formula` reproduces coefficients exactly as they appear in the
//! literature; `catalog_formula` carries the values that actually satisfy
//! the moment equations (they differ for `lem62i` and `lem62ii`).

use alloc::vec::Vec;

use super::formula::{CubatureFormula, Orbit, PatternGroup};
use super::RadialScale;
use crate::error::{invalid, Result};
use crate::exactnum::{binomial, int, rat, FieldElement, Rational};
use crate::moments::Measure;

pub const CATALOG_NAMES: [&str; 6] = ["lem42i", "lem42ii", "lem62i", "lem62ii", "ex45", "ex46"];

/// Orthant index each catalog formula is exact for.
pub fn stated_index(name: &str) -> Result<u32> {
    match name {
        "lem42i" | "lem42ii" => Ok(2),
        "lem62i" | "lem62ii" | "ex45" | "ex46" => Ok(3),
        other => Err(invalid(alloc::format!("unknown catalog formula `{other}`"))),
    }
}

fn binom(n: usize, k: usize) -> Rational {
    Rational::from_integer(binomial(n as u64, k as u64).into())
}

fn scale(s: Rational, q: u32) -> Result<RadialScale> {
    RadialScale::new(s, q)
}

/// v_k(r, 0)^L with r = s^(1/q) and the given weight per point.
fn slot(m: usize, k: usize, s: Rational, q: u32, w: Rational, label: &str) -> Result<Orbit> {
    let b = if k == m { FieldElement::one() } else { FieldElement::zero() };
    Ok(Orbit::pattern(scale(s, q)?, w, m, k, FieldElement::one(), b, PatternGroup::L).with_label(label))
}

fn check_m(name: &str, m: usize) -> Result<()> {
    let ok = match name {
        "lem42i" => m >= 3,
        "lem42ii" => m % 3 == 1 && m >= 4,
        "lem62i" => m % 6 == 2 && m >= 8,
        "lem62ii" => m % 6 == 1 && m >= 7,
        "ex45" => m == 7,
        "ex46" => m == 9,
        other => return Err(invalid(alloc::format!("unknown catalog formula `{other}`"))),
    };
    if ok {
        Ok(())
    } else {
        Err(invalid(alloc::format!("m = {m} is outside the range of `{name}`")))
    }
}

fn mi(m: usize) -> i64 {
    m as i64
}

/// The catalog formula with coefficients that satisfy the moment equations.
pub fn catalog_formula(name: &str, m: usize) -> Result<CubatureFormula> {
    build(name, m, false)
}

/// The formula with coefficients as printed in the source; for `lem62i` and
/// `lem62ii` these fail verification.
pub fn printed_formula(name: &str, m: usize) -> Result<CubatureFormula> {
    build(name, m, true)
}

fn build(name: &str, m: usize, printed: bool) -> Result<CubatureFormula> {
    check_m(name, m)?;
    let n = mi(m);
    let orbits: Vec<Orbit> = match name {
        "lem42i" => alloc::vec![slot(m, 1, int(4 * n), 2, rat(1, 2 * n), "v1")?, slot(m, m, int(2), 2, rat(1, 2), "ones")?,],
        "lem42ii" => {
            let k = m.div_ceil(3);
            alloc::vec![slot(m, k, rat(9 * n, n + 2), 2, binom(m, k).recip(), "vk")?]
        }
        "lem62i" => {
            let k = (m + 10) / 6;
            let ones = if printed { rat(12, 5) } else { rat(9, 5) };
            let five = if printed { 1 } else { 5 };
            alloc::vec![
                slot(m, m, ones, 3, rat(1, 3), "ones")?,
                slot(m, 1, rat(216 * n, n + 4), 3, rat(1, 3 * n), "v1")?,
                slot(m, k, rat(1296 * n * (n - 1), five * (n + 4) * (n + 10)), 3, (binom(m, k) * int(3)).recip(), "vk")?,
            ]
        }
        "lem62ii" => {
            let k1 = (m + 11) / 6;
            let k2 = m.div_ceil(6);
            let five = if printed { 1 } else { 5 };
            let s = rat(1296 * n * (n + 1), five * (n + 5) * (n + 11));
            let w = (binom(m + 1, k1) * int(3)).recip();
            let v1 = if printed {
                Orbit::pattern(
                    RadialScale::unit(),
                    rat(1, 3 * n),
                    m,
                    1,
                    FieldElement::from_rational(rat(1, 3 * n)),
                    FieldElement::zero(),
                    PatternGroup::L,
                )
                .with_label("v1")
            } else {
                slot(m, 1, rat(216 * n, n + 5), 3, rat(1, 3 * n), "v1")?
            };
            alloc::vec![
                slot(m, m, rat(9, 5), 3, rat(1, 3), "ones")?,
                v1,
                slot(m, k1, s.clone(), 3, w.clone(), "vk1")?,
                slot(m, k2, s, 3, w, "vk2")?,
            ]
        }
        "ex45" => alloc::vec![
            slot(7, 4, int(28), 3, rat(1, 140), "v4")?,
            slot(7, 3, int(28), 3, rat(1, 140), "v3")?,
            slot(7, 1, int(112), 3, rat(1, 14), "v1")?,
        ],
        "ex46" => alloc::vec![
            slot(9, 9, int(1), 1, rat(1, 3), "ones")?,
            slot(9, 4, int(60), 3, rat(1, 630), "v4")?,
            slot(9, 3, int(60), 3, rat(1, 630), "v3")?,
            slot(9, 1, int(180), 3, rat(1, 27), "v1")?,
        ],
        _ => unreachable!("checked above"),
    };
    let label = if printed { "printed" } else { "catalog" };
    Ok(CubatureFormula::new(Measure::Orthant, m, orbits)?.with_trace(alloc::format!("{label} {name} m={m}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubature::verify_index;

    #[test]
    fn small_instances() {
        let f = catalog_formula("lem42i", 3).unwrap();
        assert_eq!(f.orbits.len(), 2);
        assert_eq!(f.orbits[0].weight, rat(1, 6));
        assert!(verify_index(&f, 2).unwrap().is_valid());
        let g = catalog_formula("lem42ii", 4).unwrap();
        assert_eq!(g.num_points(), 6);
        assert_eq!(g.orbits[0].scale, RadialScale::new(int(6), 2).unwrap());
        assert!(verify_index(&g, 2).unwrap().is_valid());
        for name in ["ex45", "ex46"] {
            let m = if name == "ex45" { 7 } else { 9 };
            let f = catalog_formula(name, m).unwrap();
            assert!(verify_index(&f, 3).unwrap().is_valid(), "{name}");
        }
    }

    #[test]
    fn index_three_corrections() {
        for (name, m) in [("lem62i", 8), ("lem62i", 14), ("lem62ii", 7), ("lem62ii", 13)] {
            assert!(verify_index(&catalog_formula(name, m).unwrap(), 3).unwrap().is_valid(), "{name} {m}");
            assert!(!verify_index(&printed_formula(name, m).unwrap(), 3).unwrap().is_valid(), "{name} {m}");
        }
    }

    #[test]
    fn ranges() {
        assert!(catalog_formula("lem42ii", 5).is_err());
        assert!(catalog_formula("lem62i", 2).is_err());
        assert!(catalog_formula("ex45", 8).is_err());
        assert!(catalog_formula("nope", 3).is_err());
    }
}
