use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{invalid, Result};
use crate::exactnum::{field_sqrt, FieldElement};

pub type Vector = Vec<FieldElement>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupLabel {
    /// A_n, realized on the sum-zero hyperplane of ℝ^(n+1).
    A(usize),
    B(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    H3,
    H4,
}

pub const EXCEPTIONAL: [GroupLabel; 6] = [GroupLabel::F4, GroupLabel::H3, GroupLabel::H4, GroupLabel::E6, GroupLabel::E7, GroupLabel::E8];

const MAX_CLASSICAL_RANK: usize = 20;

impl GroupLabel {
    /// Accepts `F4`, `e8`, `B5`, `A(3)`, `D 6`.
    pub fn parse(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace() && *c != '(' && *c != ')' && *c != '_').collect();
        let t = t.to_ascii_uppercase();
        let bad = || invalid(alloc::format!("unknown reflection group `{s}`"));
        let (head, rest) = t.split_at(t.len().min(1));
        let n: usize = rest.parse().map_err(|_| bad())?;
        let g = match (head, n) {
            ("E", 6) => GroupLabel::E6,
            ("E", 7) => GroupLabel::E7,
            ("E", 8) => GroupLabel::E8,
            ("F", 4) => GroupLabel::F4,
            ("H", 3) => GroupLabel::H3,
            ("H", 4) => GroupLabel::H4,
            ("A", n) if n >= 1 => GroupLabel::A(n),
            ("B", n) if n >= 2 => GroupLabel::B(n),
            ("D", n) if n >= 4 => GroupLabel::D(n),
            _ => return Err(bad()),
        };
        Ok(g)
    }

    pub fn rank(self) -> usize {
        match self {
            GroupLabel::A(n) | GroupLabel::B(n) | GroupLabel::D(n) => n,
            GroupLabel::E6 => 6,
            GroupLabel::E7 => 7,
            GroupLabel::E8 => 8,
            GroupLabel::F4 | GroupLabel::H4 => 4,
            GroupLabel::H3 => 3,
        }
    }
}

impl fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupLabel::A(n) => write!(f, "A{n}"),
            GroupLabel::B(n) => write!(f, "B{n}"),
            GroupLabel::D(n) => write!(f, "D{n}"),
            GroupLabel::E6 => f.write_str("E6"),
            GroupLabel::E7 => f.write_str("E7"),
            GroupLabel::E8 => f.write_str("E8"),
            GroupLabel::F4 => f.write_str("F4"),
            GroupLabel::H3 => f.write_str("H3"),
            GroupLabel::H4 => f.write_str("H4"),
        }
    }
}

/// Root data of a finite irreducible reflection group. Corner vectors are
/// scaled so that (vᵢ, αᵢ) = 1.
#[derive(Clone, Debug)]
pub struct ReflectionGroupData {
    pub label: GroupLabel,
    /// Ambient dimension (rank + 1 for type A).
    pub dim: usize,
    pub roots: Vec<Vector>,
    pub corners: Vec<Vector>,
    pub exponents: Vec<u32>,
    pub order: u128,
    /// Expected corner orbit sizes Nᵢ.
    pub orbit_sizes: Vec<u128>,
    /// Coxeter matrix entries m_ij of the diagram.
    pub coxeter: Vec<Vec<u32>>,
}

pub fn dot(a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    let mut acc = FieldElement::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

fn fe(s: &str) -> FieldElement {
    s.parse().expect("built-in field constant")
}

/// Σ cᵢ·(sum of e_j over the 1-based index set Jᵢ).
fn comb(n: usize, parts: &[(&str, &[usize])]) -> Vector {
    let mut v = alloc::vec![FieldElement::zero(); n];
    for (c, idx) in parts {
        let c = fe(c);
        for &j in idx.iter() {
            v[j - 1] += &c;
        }
    }
    v
}

fn range(a: usize, b: usize) -> Vec<usize> {
    (a..=b).collect()
}

fn simple(n: usize, i: usize) -> Vector {
    comb(n, &[("1", &[i]), ("-1", &[i + 1])])
}

fn binom(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn factorial(n: u128) -> u128 {
    (1..=n).product()
}

fn chain(n: usize, edges: &[(usize, usize, u32)]) -> Vec<Vec<u32>> {
    let mut m = alloc::vec![alloc::vec![2u32; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    for &(i, j, v) in edges {
        m[i - 1][j - 1] = v;
        m[j - 1][i - 1] = v;
    }
    m
}

fn path(n: usize) -> Vec<(usize, usize, u32)> {
    (1..n).map(|i| (i, i + 1, 3)).collect()
}

pub fn group_data(label: GroupLabel) -> Result<ReflectionGroupData> {
    let raw = match label {
        GroupLabel::A(n) | GroupLabel::B(n) | GroupLabel::D(n) if n > MAX_CLASSICAL_RANK => {
            return Err(invalid(alloc::format!("rank {n} exceeds the supported {MAX_CLASSICAL_RANK}")));
        }
        GroupLabel::A(n) => {
            let d = n + 1;
            let roots = (1..=n).map(|i| simple(d, i)).collect();
            let corners = (1..=n)
                .map(|k| {
                    let hi = alloc::format!("{}", d - k);
                    let lo = alloc::format!("-{}", k);
                    comb(d, &[(&hi, &range(1, k)), (&lo, &range(k + 1, d))])
                })
                .collect();
            let sizes = (1..=n as u128).map(|k| binom(d as u128, k)).collect();
            (d, roots, corners, (1..=n as u32).collect(), factorial(d as u128), sizes, chain(n, &path(n)))
        }
        GroupLabel::B(n) => {
            let mut roots: Vec<Vector> = (1..n).map(|i| simple(n, i)).collect();
            roots.push(comb(n, &[("r2", &[n])]));
            let corners = (1..=n).map(|k| comb(n, &[("1", &range(1, k))])).collect();
            let sizes = (1..=n as u128).map(|k| (1u128 << k) * binom(n as u128, k)).collect();
            let mut edges = path(n);
            edges[n - 2].2 = 4;
            let exps = (1..=n as u32).map(|i| 2 * i - 1).collect();
            (n, roots, corners, exps, (1u128 << n) * factorial(n as u128), sizes, chain(n, &edges))
        }
        GroupLabel::D(n) => {
            let mut roots: Vec<Vector> = (1..n).map(|i| simple(n, i)).collect();
            roots.push(comb(n, &[("1", &[n - 1, n])]));
            let mut corners: Vec<Vector> = (1..=n - 2).map(|k| comb(n, &[("1", &range(1, k))])).collect();
            corners.push(comb(n, &[("1/2", &range(1, n - 1)), ("-1/2", &[n])]));
            corners.push(comb(n, &[("1/2", &range(1, n))]));
            let mut sizes: Vec<u128> = (1..=n as u128 - 2).map(|k| (1u128 << k) * binom(n as u128, k)).collect();
            sizes.push(1u128 << (n - 1));
            sizes.push(1u128 << (n - 1));
            let mut edges = path(n - 1);
            edges.push((n - 2, n, 3));
            let mut exps: Vec<u32> = (1..n as u32).map(|i| 2 * i - 1).collect();
            exps.push(n as u32 - 1);
            exps.sort_unstable();
            (n, roots, corners, exps, (1u128 << (n - 1)) * factorial(n as u128), sizes, chain(n, &edges))
        }
        GroupLabel::F4 => {
            let roots = alloc::vec![simple(4, 1), simple(4, 2), comb(4, &[("1", &[3])]), comb(4, &[("-1/2", &[1, 2, 3]), ("1/2", &[4])]),];
            let corners = alloc::vec![
                comb(4, &[("1", &[1, 4])]),
                comb(4, &[("1", &[1, 2]), ("2", &[4])]),
                comb(4, &[("1", &[1, 2, 3]), ("3", &[4])]),
                comb(4, &[("2", &[4])]),
            ];
            (4, roots, corners, alloc::vec![1, 5, 7, 11], 1152, alloc::vec![24, 96, 96, 24], chain(4, &[(1, 2, 3), (2, 3, 4), (3, 4, 3)]))
        }
        GroupLabel::H3 => {
            let roots = alloc::vec![
                comb(3, &[("-1", &[1]), ("1", &[2])]),
                comb(3, &[("-1", &[2]), ("1", &[3])]),
                comb(3, &[("1/6+1/6*r2+1/6*r5-1/6*r10", &[1, 2]), ("-1/3+1/6*r2-1/3*r5-1/6*r10", &[3])]),
            ];
            let corners = alloc::vec![
                comb(3, &[("-2/3-1/4*r2-1/12*r10", &[1]), ("1/3-1/4*r2-1/12*r10", &[2, 3])]),
                comb(3, &[("-1/3-1/2*r2-1/6*r10", &[1, 2]), ("2/3-1/2*r2-1/6*r10", &[3])]),
                comb(3, &[("-1/4*r2-1/4*r10", &[1, 2, 3])]),
            ];
            (3, roots, corners, alloc::vec![1, 5, 9], 120, alloc::vec![12, 30, 20], chain(3, &[(1, 2, 3), (2, 3, 5)]))
        }
        GroupLabel::H4 => {
            let roots = alloc::vec![
                comb(4, &[("-1", &[1]), ("1", &[2])]),
                comb(4, &[("-1", &[2]), ("1", &[3])]),
                comb(4, &[("-1", &[3, 4])]),
                comb(4, &[("1/2", &[1, 2, 3]), ("1/2*r5", &[4])]),
            ];
            let corners = alloc::vec![
                comb(4, &[("-1/4+1/4*r5", &[1]), ("3/4+1/4*r5", &[2, 3]), ("-3/4-1/4*r5", &[4])]),
                comb(4, &[("1/2+1/2*r5", &[1, 2]), ("3/2+1/2*r5", &[3]), ("-3/2-1/2*r5", &[4])]),
                comb(4, &[("5/4+3/4*r5", &[1, 2, 3]), ("-9/4-3/4*r5", &[4])]),
                comb(4, &[("3/2+1/2*r5", &[1, 2, 3]), ("-3/2-1/2*r5", &[4])]),
            ];
            (
                4,
                roots,
                corners,
                alloc::vec![1, 11, 19, 29],
                14400,
                alloc::vec![120, 720, 1200, 600],
                chain(4, &[(1, 2, 3), (2, 3, 3), (3, 4, 5)]),
            )
        }
        GroupLabel::E6 => {
            let mut roots: Vec<Vector> = (1..6).map(|i| simple(6, i)).collect();
            roots.push(comb(6, &[("-1/2+1/6*r3", &[1, 2, 3]), ("1/2+1/6*r3", &[4, 5, 6])]));
            let corners = alloc::vec![
                comb(6, &[("5/6+1/6*r3", &[1]), ("-1/6+1/6*r3", &[2, 3, 4, 5, 6])]),
                comb(6, &[("2/3+1/3*r3", &[1, 2]), ("-1/3+1/3*r3", &[3, 4, 5, 6])]),
                comb(6, &[("1/2+1/2*r3", &[1, 2, 3]), ("-1/2+1/2*r3", &[4, 5, 6])]),
                comb(6, &[("1/3+1/3*r3", &[1, 2, 3, 4]), ("-2/3+1/3*r3", &[5, 6])]),
                comb(6, &[("1/6+1/6*r3", &[1, 2, 3, 4, 5]), ("-5/6+1/6*r3", &[6])]),
                comb(6, &[("1/3*r3", &[1, 2, 3, 4, 5, 6])]),
            ];
            let mut edges = path(5);
            edges.push((3, 6, 3));
            (6, roots, corners, alloc::vec![1, 4, 5, 7, 8, 11], 51840, alloc::vec![27, 216, 720, 216, 27, 72], chain(6, &edges))
        }
        GroupLabel::E7 => {
            let mut roots: Vec<Vector> = (1..7).map(|i| simple(7, i)).collect();
            roots.push(comb(7, &[("-4/7+1/7*r2", &[1, 2, 3]), ("3/7+1/7*r2", &[4, 5, 6, 7])]));
            let corners = alloc::vec![
                comb(7, &[("6/7+2/7*r2", &[1]), ("-1/7+2/7*r2", &range(2, 7))]),
                comb(7, &[("5/7+4/7*r2", &[1, 2]), ("-2/7+4/7*r2", &range(3, 7))]),
                comb(7, &[("4/7+6/7*r2", &[1, 2, 3]), ("-3/7+6/7*r2", &range(4, 7))]),
                comb(7, &[("3/7+9/14*r2", &range(1, 4)), ("-4/7+9/14*r2", &range(5, 7))]),
                comb(7, &[("2/7+3/7*r2", &range(1, 5)), ("-5/7+3/7*r2", &[6, 7])]),
                comb(7, &[("-1/7-3/14*r2", &range(1, 6)), ("6/7-3/14*r2", &[7])]),
                comb(7, &[("1/2*r2", &range(1, 7))]),
            ];
            let mut edges = path(6);
            edges.push((3, 7, 3));
            (
                7,
                roots,
                corners,
                alloc::vec![1, 5, 7, 9, 11, 13, 17],
                2903040,
                alloc::vec![126, 2016, 10080, 4032, 756, 56, 576],
                chain(7, &edges),
            )
        }
        GroupLabel::E8 => {
            let mut roots: Vec<Vector> = (1..8).map(|i| simple(8, i)).collect();
            roots.push(comb(8, &[("-1/2", &[1, 2, 3]), ("1/2", &range(4, 8))]));
            let corners = alloc::vec![
                comb(8, &[("3/2", &[1]), ("1/2", &range(2, 8))]),
                comb(8, &[("2", &[1, 2]), ("1", &range(3, 8))]),
                comb(8, &[("5/2", &[1, 2, 3]), ("3/2", &range(4, 8))]),
                comb(8, &[("2", &range(1, 4)), ("1", &range(5, 8))]),
                comb(8, &[("3/2", &range(1, 5)), ("1/2", &range(6, 8))]),
                comb(8, &[("-1", &range(1, 6))]),
                comb(8, &[("-1/2", &range(1, 7)), ("1/2", &[8])]),
                comb(8, &[("1", &range(1, 8))]),
            ];
            let mut edges = path(7);
            edges.push((3, 8, 3));
            (
                8,
                roots,
                corners,
                alloc::vec![1, 7, 11, 13, 17, 19, 23, 29],
                696729600,
                alloc::vec![2160, 69120, 483840, 241920, 60480, 6720, 240, 17280],
                chain(8, &edges),
            )
        }
    };
    let (dim, roots, corners, exponents, order, orbit_sizes, coxeter) = raw;
    let corners = corners
        .into_iter()
        .zip(roots.iter())
        .map(|(v, a): (Vector, &Vector)| {
            let s = dot(&v, a);
            v.iter().map(|x| x / &s).collect()
        })
        .collect();
    Ok(ReflectionGroupData { label, dim, roots, corners, exponents, order, orbit_sizes, coxeter })
}

impl ReflectionGroupData {
    pub fn rank(&self) -> usize {
        self.roots.len()
    }

    pub fn corner_norm_sq(&self, i: usize) -> FieldElement {
        dot(&self.corners[i], &self.corners[i])
    }

    /// vᵢ' = vᵢ/‖vᵢ‖ when the norm lies in the field.
    pub fn normalized_corner(&self, i: usize) -> Option<Vector> {
        let n = field_sqrt(&self.corner_norm_sq(i))?;
        Some(self.corners[i].iter().map(|x| x / &n).collect())
    }

    /// Integer Cartan matrix A_ij = 2(αᵢ,αⱼ)/(αⱼ,αⱼ), or None for H3/H4.
    pub fn cartan(&self) -> Option<Vec<Vec<i32>>> {
        let n = self.rank();
        let mut out = alloc::vec![alloc::vec![0i32; n]; n];
        for i in 0..n {
            for j in 0..n {
                let q = dot(&self.roots[i], &self.roots[j]).scale(&crate::exactnum::int(2)) / dot(&self.roots[j], &self.roots[j]);
                let r = q.as_rational()?;
                if !r.is_integer() {
                    return None;
                }
                out[i][j] = num_traits::ToPrimitive::to_i32(&r.to_integer())?;
            }
        }
        Some(out)
    }

    pub fn is_crystallographic(&self) -> bool {
        self.cartan().is_some()
    }

    /// Checks the Coxeter relations of the roots and the corner-vector
    /// orthogonality pattern (vᵢ, αⱼ) = 0 ⇔ i ≠ j.
    pub fn check_structure(&self) -> Result<()> {
        let n = self.rank();
        for i in 0..n {
            for j in 0..n {
                let vij = dot(&self.corners[i], &self.roots[j]);
                if vij.is_zero() == (i == j) {
                    return Err(invalid(alloc::format!("{}: corner {} vs root {} breaks orthogonality", self.label, i + 1, j + 1)));
                }
                if i < j {
                    let want = four_cos_sq(self.coxeter[i][j]);
                    let aij = dot(&self.roots[i], &self.roots[j]);
                    let got = aij.square().scale(&crate::exactnum::int(4))
                        / (dot(&self.roots[i], &self.roots[i]) * dot(&self.roots[j], &self.roots[j]));
                    if got != want || (!aij.is_zero() && aij.is_positive()) {
                        return Err(invalid(alloc::format!("{}: roots {} and {} violate the Coxeter relation", self.label, i + 1, j + 1)));
                    }
                }
            }
        }
        Ok(())
    }
}

// 4cos²(π/m)
fn four_cos_sq(m: u32) -> FieldElement {
    match m {
        2 => FieldElement::zero(),
        3 => FieldElement::one(),
        4 => FieldElement::from_int(2),
        6 => FieldElement::from_int(3),
        5 => fe("3/2+1/2*r5"),
        _ => panic!("unsupported Coxeter label {m}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structure_holds_for_every_group() {
        let mut all: Vec<GroupLabel> = EXCEPTIONAL.to_vec();
        all.extend([GroupLabel::A(1), GroupLabel::A(4), GroupLabel::B(2), GroupLabel::B(5), GroupLabel::D(4), GroupLabel::D(6)]);
        for g in all {
            let d = group_data(g).unwrap();
            d.check_structure().unwrap_or_else(|e| panic!("{e}"));
            assert_eq!(d.exponents.len(), d.rank());
            assert_eq!(d.orbit_sizes.len(), d.rank());
            // Σ exponents = number of reflections, and ∏(dᵢ+1) = |G|
            let prod: u128 = d.exponents.iter().map(|&e| e as u128 + 1).product();
            assert_eq!(prod, d.order, "{g}");
        }
    }

    #[test]
    fn crystallographic_split() {
        assert!(group_data(GroupLabel::E7).unwrap().is_crystallographic());
        assert!(group_data(GroupLabel::F4).unwrap().is_crystallographic());
        assert!(!group_data(GroupLabel::H3).unwrap().is_crystallographic());
        assert!(!group_data(GroupLabel::H4).unwrap().is_crystallographic());
    }

    #[test]
    fn labels_parse() {
        assert_eq!(GroupLabel::parse("e8").unwrap(), GroupLabel::E8);
        assert_eq!(GroupLabel::parse("A(3)").unwrap(), GroupLabel::A(3));
        assert_eq!(GroupLabel::parse("B 5").unwrap(), GroupLabel::B(5));
        assert!(GroupLabel::parse("E9").is_err());
        assert!(GroupLabel::parse("D3").is_err());
        assert_eq!(alloc::format!("{}", GroupLabel::H4), "H4");
    }

    #[test]
    fn b_corner_normalization() {
        let d = group_data(GroupLabel::B(3)).unwrap();
        assert_eq!(d.corners[0], comb(3, &[("1", &[1])]));
        // (v₃, √2 e₃) = 1
        assert_eq!(d.corners[2], comb(3, &[("1/2*r2", &[1, 2, 3])]));
    }
}
