use alloc::vec::Vec;
use hashbrown::HashSet;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::groups::{dot, ReflectionGroupData, Vector};
use crate::error::{invalid, Error, Result};
use crate::exactnum::{common_denominator, int, FieldElement, Rational, BASIS};

pub const DEFAULT_ORBIT_CAP: usize = 1_000_000;

/// Integer coordinates over the basis 1, √2, √3, √5, √6, √10, √15, √30; the
/// real value is Σ cᵦ√BASIS[b] / denom.
pub type IntCoord = [i64; 8];

enum Coords {
    /// Dynkin labels λ, point = Σ λⱼ ωⱼ with `basis[j*dim + i]` = D·ωⱼ[i].
    Labels {
        rank: usize,
        labels: Vec<i32>,
        basis: Vec<IntCoord>,
    },
    Explicit(Vec<IntCoord>),
}

/// A group orbit stored compactly: labels for Weyl groups, scaled integer
/// coordinates otherwise.
pub struct GroupOrbit {
    dim: usize,
    len: usize,
    norm_sq: FieldElement,
    denom: i64,
    coords: Coords,
}

impl GroupOrbit {
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Common squared norm of the points.
    pub fn norm_sq(&self) -> &FieldElement {
        &self.norm_sq
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    /// Coordinate `i` of point `idx`, scaled by `denom`.
    pub fn coord(&self, idx: usize, i: usize) -> IntCoord {
        match &self.coords {
            Coords::Explicit(c) => c[idx * self.dim + i],
            Coords::Labels { rank, labels, basis } => {
                let mut out = [0i64; 8];
                for j in 0..*rank {
                    let l = labels[idx * rank + j] as i64;
                    if l == 0 {
                        continue;
                    }
                    let b = &basis[j * self.dim + i];
                    for k in 0..8 {
                        out[k] += l * b[k];
                    }
                }
                out
            }
        }
    }

    pub fn point(&self, idx: usize) -> Vector {
        (0..self.dim).map(|i| int_to_field(&self.coord(idx, i), self.denom)).collect()
    }

    pub fn points(&self) -> Vec<Vector> {
        (0..self.len).map(|i| self.point(i)).collect()
    }
}

pub fn int_to_field(c: &IntCoord, denom: i64) -> FieldElement {
    let d = BigInt::from(denom);
    FieldElement::from_coeffs(core::array::from_fn(|k| Rational::new(BigInt::from(c[k]), d.clone())))
}

/// Scales vectors to a common denominator; errors if a numerator leaves i64.
fn to_int_coords(vs: &[&[FieldElement]]) -> Result<(Vec<IntCoord>, i64)> {
    let coeffs: Vec<[Rational; 8]> = vs.iter().flat_map(|v| v.iter().map(FieldElement::coeffs)).collect();
    let d = common_denominator(coeffs.iter().flatten());
    let di = d.to_i64().ok_or_else(|| invalid("orbit coordinates need a denominator beyond 64 bits"))?;
    let mut out = Vec::with_capacity(coeffs.len());
    for c in &coeffs {
        let mut row = [0i64; 8];
        for k in 0..8 {
            let n = (c[k].numer() * &d) / c[k].denom();
            row[k] = n.to_i64().ok_or_else(|| invalid("orbit coordinate numerator beyond 64 bits"))?;
        }
        out.push(row);
    }
    Ok((out, di))
}

/// Fundamental weights ωⱼ (dual to the coroots) from the corner vectors.
fn fundamental_weights(g: &ReflectionGroupData) -> Vec<Vector> {
    g.corners
        .iter()
        .zip(&g.roots)
        .map(|(v, a)| {
            // (v, α) = 1, so ⟨v, α^∨⟩ = 2/(α,α)
            let s = dot(a, a).scale(&Rational::new(BigInt::one(), BigInt::from(2)));
            v.iter().map(|x| x * &s).collect()
        })
        .collect()
}

fn label_bfs(cartan: &[Vec<i32>], start: Vec<i32>, cap: usize) -> Result<Vec<i32>> {
    let n = start.len();
    let mut seen: HashSet<Vec<i32>> = HashSet::new();
    let mut flat = start.clone();
    seen.insert(start);
    let mut head = 0;
    while head * n < flat.len() {
        let cur: Vec<i32> = flat[head * n..(head + 1) * n].to_vec();
        head += 1;
        for i in 0..n {
            let li = cur[i];
            if li == 0 {
                continue;
            }
            let next: Vec<i32> = (0..n).map(|j| cur[j] - li * cartan[i][j]).collect();
            if !seen.contains(&next) {
                if seen.len() >= cap {
                    return Err(Error::OrbitCap(cap));
                }
                flat.extend_from_slice(&next);
                seen.insert(next);
            }
        }
    }
    Ok(flat)
}

fn field_bfs(g: &ReflectionGroupData, x: &[FieldElement], cap: usize) -> Result<Vec<Vector>> {
    let refl: Vec<(Vector, Vector)> = g
        .roots
        .iter()
        .map(|a| {
            let s = FieldElement::from_int(2) / dot(a, a);
            (a.clone(), a.iter().map(|c| c * &s).collect())
        })
        .collect();
    let mut seen: HashSet<Vector> = HashSet::new();
    let mut out = alloc::vec![x.to_vec()];
    seen.insert(x.to_vec());
    let mut head = 0;
    while head < out.len() {
        let y = out[head].clone();
        head += 1;
        for (a, a2) in &refl {
            let c = dot(&y, a);
            if c.is_zero() {
                continue;
            }
            let z: Vector = y.iter().zip(a2).map(|(yi, ai)| yi - &(&c * ai)).collect();
            if !seen.contains(&z) {
                if seen.len() >= cap {
                    return Err(Error::OrbitCap(cap));
                }
                seen.insert(z.clone());
                out.push(z);
            }
        }
    }
    Ok(out)
}

fn labels_orbit(g: &ReflectionGroupData, cartan: &[Vec<i32>], start: Vec<i32>, scale: &Rational, cap: usize) -> Result<GroupOrbit> {
    let rank = g.rank();
    let omegas = fundamental_weights(g);
    let scaled: Vec<Vector> = omegas.iter().map(|w| w.iter().map(|c| c.scale(scale)).collect()).collect();
    let refs: Vec<&[FieldElement]> = scaled.iter().map(Vec::as_slice).collect();
    let (basis, denom) = to_int_coords(&refs)?;
    let p0: Vector =
        (0..g.dim).map(|i| (0..rank).fold(FieldElement::zero(), |acc, j| acc + scaled[j][i].scale(&int(start[j] as i64)))).collect();
    let norm_sq = dot(&p0, &p0);
    let labels = label_bfs(cartan, start, cap)?;
    let len = labels.len() / rank;
    Ok(GroupOrbit { dim: g.dim, len, norm_sq, denom, coords: Coords::Labels { rank, labels, basis } })
}

/// Orbit of the corner vector vₖ (0-based), up to a positive scale.
pub fn corner_orbit(g: &ReflectionGroupData, k: usize, cap: usize) -> Result<GroupOrbit> {
    if k >= g.rank() {
        return Err(invalid(alloc::format!("{} has no corner vector {}", g.label, k + 1)));
    }
    match g.cartan() {
        Some(c) => {
            let mut start = alloc::vec![0i32; g.rank()];
            start[k] = 1;
            labels_orbit(g, &c, start, &Rational::one(), cap)
        }
        None => orbit(g, &g.corners[k], cap),
    }
}

/// Orbit of an arbitrary point under the group.
pub fn orbit(g: &ReflectionGroupData, x: &[FieldElement], cap: usize) -> Result<GroupOrbit> {
    if x.len() != g.dim {
        return Err(Error::DimensionMismatch { expected: g.dim, found: x.len() });
    }
    if let Some(c) = g.cartan() {
        if let Some((start, scale)) = rational_labels(g, x) {
            return labels_orbit(g, &c, start, &scale, cap);
        }
    }
    let pts = field_bfs(g, x, cap)?;
    let refs: Vec<&[FieldElement]> = pts.iter().map(Vec::as_slice).collect();
    let (coords, denom) = to_int_coords(&refs)?;
    Ok(GroupOrbit { dim: g.dim, len: pts.len(), norm_sq: dot(x, x), denom, coords: Coords::Explicit(coords) })
}

// x = scale·Σ λⱼωⱼ with integer λ, if x lies in the root span with rational labels.
fn rational_labels(g: &ReflectionGroupData, x: &[FieldElement]) -> Option<(Vec<i32>, Rational)> {
    let labels: Vec<Rational> =
        g.roots.iter().map(|a| (dot(x, a).scale(&int(2)) / dot(a, a)).as_rational().cloned()).collect::<Option<_>>()?;
    let omegas = fundamental_weights(g);
    let back: Vector =
        (0..g.dim).map(|i| (0..g.rank()).fold(FieldElement::zero(), |acc, j| acc + omegas[j][i].scale(&labels[j]))).collect();
    if back.as_slice() != x {
        return None;
    }
    let d = common_denominator(labels.iter());
    let mut num_gcd = BigInt::zero();
    let ints: Vec<BigInt> = labels.iter().map(|l| l.numer() * &d / l.denom()).collect();
    for v in &ints {
        num_gcd = num_gcd.gcd(v);
    }
    if num_gcd.is_zero() {
        return None;
    }
    let start: Vec<i32> = ints.iter().map(|v| (v / &num_gcd).to_i32()).collect::<Option<_>>()?;
    Some((start, Rational::new(num_gcd, d)))
}

/// Squared-radical product table: √BASIS[i]·√BASIS[j] = f·√BASIS[k].
pub(crate) fn basis_product(i: usize, j: usize) -> (usize, i64) {
    let (a, b) = (BASIS[i] as i64, BASIS[j] as i64);
    let g = a.gcd(&b);
    let k = BASIS.iter().position(|&r| r as i64 == a / g * (b / g)).expect("basis is closed");
    (k, g)
}
