use alloc::string::String;
use alloc::vec::Vec;
use hashbrown::HashMap;
use num_traits::{One, Signed, Zero};

use super::RadialScale;
use crate::designs::subsets;
use crate::error::{invalid, Error, Result};
use crate::exactnum::{binomial, FieldElement, Rational};
use crate::moments::Measure;

pub type Direction = Vec<FieldElement>;

/// How an orbit's points are generated from its data.
#[derive(Clone, Debug, PartialEq)]
pub enum OrbitKind {
    /// Listed points.
    Explicit(Vec<Direction>),
    /// Union of the sign-change orbits of the listed base points.
    Signed(Vec<Direction>),
    /// All coordinate placements of v_k(a, b) (first k entries a, rest b),
    /// with every sign pattern as well when `signed`.
    Placed { k: usize, a: FieldElement, b: FieldElement, signed: bool },
}

/// Points r·d sharing one radius r and one weight per point.
#[derive(Clone, Debug, PartialEq)]
pub struct Orbit {
    pub scale: RadialScale,
    pub weight: Rational,
    pub kind: OrbitKind,
    pub label: String,
}

/// Sign/permutation group generating a pattern orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PatternGroup {
    /// coordinate permutations
    L,
    /// sign changes
    SignL,
    /// both
    Bm,
}

impl Orbit {
    pub fn explicit(scale: RadialScale, weight: Rational, points: Vec<Direction>) -> Self {
        Orbit { scale, weight, kind: OrbitKind::Explicit(points), label: String::new() }
    }

    pub fn pattern(
        scale: RadialScale,
        weight: Rational,
        m: usize,
        k: usize,
        a: FieldElement,
        b: FieldElement,
        group: PatternGroup,
    ) -> Self {
        let kind = match group {
            PatternGroup::L => OrbitKind::Placed { k, a, b, signed: false },
            PatternGroup::Bm => OrbitKind::Placed { k, a, b, signed: true },
            PatternGroup::SignL => {
                let mut p = alloc::vec![b; m];
                for x in p.iter_mut().take(k) {
                    *x = a.clone();
                }
                OrbitKind::Signed(alloc::vec![p])
            }
        };
        Orbit { scale, weight, kind, label: String::new() }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn len(&self, m: usize) -> u128 {
        match &self.kind {
            OrbitKind::Explicit(p) => p.len() as u128,
            OrbitKind::Signed(p) => p.iter().map(|d| 1u128 << weight_of(d)).sum(),
            OrbitKind::Placed { k, a, b, signed } => {
                let places = if a == b { 1 } else { binomial_u128(m, *k) };
                let wt = if *signed { placed_weight(m, *k, a, b) } else { 0 };
                places << wt
            }
        }
    }

    pub fn is_empty(&self, m: usize) -> bool {
        self.len(m) == 0
    }

    /// Expanded directions, in a deterministic order.
    pub fn directions(&self, m: usize) -> Vec<Direction> {
        match &self.kind {
            OrbitKind::Explicit(p) => p.clone(),
            OrbitKind::Signed(p) => p.iter().flat_map(sign_orbit).collect(),
            OrbitKind::Placed { k, a, b, signed } => {
                let placed: Vec<Direction> = if a == b {
                    alloc::vec![alloc::vec![a.clone(); m]]
                } else {
                    subsets(m, *k)
                        .into_iter()
                        .map(|s| {
                            let mut p = alloc::vec![b.clone(); m];
                            for i in s {
                                p[i] = a.clone();
                            }
                            p
                        })
                        .collect()
                };
                if *signed {
                    placed.iter().flat_map(sign_orbit).collect()
                } else {
                    placed
                }
            }
        }
    }

    pub fn total_weight(&self, m: usize) -> Rational {
        &self.weight * Rational::from_integer(self.len(m).into())
    }

    pub fn is_sign_invariant(&self) -> bool {
        matches!(self.kind, OrbitKind::Signed(_) | OrbitKind::Placed { signed: true, .. })
    }
}

fn binomial_u128(n: usize, k: usize) -> u128 {
    let b = binomial(n as u64, k as u64);
    let d = b.to_u64_digits();
    match d.len() {
        0 => 0,
        1 => d[0] as u128,
        _ => d[0] as u128 | (d[1] as u128) << 64,
    }
}

fn placed_weight(m: usize, k: usize, a: &FieldElement, b: &FieldElement) -> usize {
    (if a.is_zero() { 0 } else { k }) + (if b.is_zero() { 0 } else { m - k })
}

/// Number of nonzero coordinates.
pub fn weight_of(d: &[FieldElement]) -> usize {
    d.iter().filter(|x| !x.is_zero()).count()
}

/// All sign changes of the nonzero coordinates; the sign pattern follows
/// the binary expansion of the counter over the support in increasing
/// coordinate order, starting with all signs positive.
pub fn sign_orbit(d: &Direction) -> Vec<Direction> {
    let supp: Vec<usize> = (0..d.len()).filter(|&i| !d[i].is_zero()).collect();
    (0..1u64 << supp.len())
        .map(|mask| {
            let mut p = d.clone();
            for (j, &i) in supp.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    p[i] = -p[i].clone();
                }
            }
            p
        })
        .collect()
}

/// Weighted point set for one of the three integrals.
#[derive(Clone, Debug, PartialEq)]
pub struct CubatureFormula {
    pub domain: Measure,
    pub m: usize,
    pub orbits: Vec<Orbit>,
    /// Asserted closure under x ↦ −x with equal weights; used to skip odd
    /// degrees in degree verification.
    pub centrally_symmetric: bool,
    pub trace: Vec<String>,
}

impl CubatureFormula {
    pub fn new(domain: Measure, m: usize, orbits: Vec<Orbit>) -> Result<Self> {
        let f = CubatureFormula { domain, m, orbits, centrally_symmetric: false, trace: Vec::new() };
        f.check()?;
        Ok(f)
    }

    pub fn check(&self) -> Result<()> {
        if self.m == 0 {
            return Err(invalid("dimension must be positive"));
        }
        for o in &self.orbits {
            if !o.weight.is_positive() {
                return Err(invalid(alloc::format!("non-positive weight {}", o.weight)));
            }
            let dims_ok = match &o.kind {
                OrbitKind::Explicit(p) | OrbitKind::Signed(p) => p.iter().all(|d| d.len() == self.m),
                OrbitKind::Placed { k, .. } => *k <= self.m,
            };
            if !dims_ok {
                return Err(Error::DimensionMismatch { expected: self.m, found: 0 });
            }
            let nonzero = match &o.kind {
                OrbitKind::Explicit(p) | OrbitKind::Signed(p) => p.iter().all(|d| weight_of(d) > 0),
                OrbitKind::Placed { k, a, b, .. } => placed_weight(self.m, *k, a, b) > 0,
            };
            if !nonzero && self.domain == Measure::Sphere {
                return Err(invalid("sphere points must be nonzero"));
            }
        }
        Ok(())
    }

    pub fn with_trace(mut self, step: impl Into<String>) -> Self {
        self.trace.push(step.into());
        self
    }

    /// Point count before any merging.
    pub fn num_points(&self) -> u128 {
        self.orbits.iter().map(|o| o.len(self.m)).sum()
    }

    pub fn total_weight(&self) -> Rational {
        self.orbits.iter().map(|o| o.total_weight(self.m)).fold(Rational::zero(), |a, b| a + b)
    }

    /// Every point with its weight (directions only; see `CubPoint`).
    pub fn points(&self) -> Vec<CubPoint> {
        let mut out = Vec::new();
        for o in &self.orbits {
            for d in o.directions(self.m) {
                out.push(CubPoint { direction: d, scale: o.scale.clone(), weight: o.weight.clone() });
            }
        }
        out
    }

    /// Merges coincident points (on the sphere: equal after normalization),
    /// returning explicit orbits grouped by weight and radius.
    pub fn dedup(&self) -> Result<Self> {
        let pts = self.points();
        let mut order: Vec<(Direction, RadialScale)> = Vec::new();
        let mut acc: HashMap<(Direction, RadialScale), Rational> = HashMap::new();
        for p in pts {
            let key =
                if self.domain == Measure::Sphere { (normalize_first(&p.direction)?, RadialScale::unit()) } else { (p.direction, p.scale) };
            match acc.get_mut(&key) {
                Some(w) => *w += p.weight,
                None => {
                    acc.insert(key.clone(), p.weight);
                    order.push(key);
                }
            }
        }
        let merged = order.into_iter().map(|k| {
            let w = acc[&k].clone();
            (k.0, k.1, w)
        });
        let mut f = regroup(self.domain, self.m, merged);
        f.centrally_symmetric = self.centrally_symmetric;
        f.trace = self.trace.clone();
        Ok(f)
    }
}

/// Scales a nonzero direction so its first nonzero coordinate is ±1.
pub fn normalize_first(d: &[FieldElement]) -> Result<Direction> {
    let Some(first) = d.iter().find(|x| !x.is_zero()) else {
        return Err(invalid("zero direction"));
    };
    if *first == FieldElement::one() || *first == -FieldElement::one() {
        return Ok(d.to_vec());
    }
    let inv = first.abs().inv().ok_or(Error::DivisionByZero)?;
    Ok(d.iter().map(|x| x * &inv).collect())
}

/// Explicit orbits, one per distinct (radius, weight), keeping first-seen
/// order.
pub(crate) fn regroup(domain: Measure, m: usize, pts: impl IntoIterator<Item = (Direction, RadialScale, Rational)>) -> CubatureFormula {
    let mut keys: Vec<(RadialScale, Rational)> = Vec::new();
    let mut groups: HashMap<(RadialScale, Rational), Vec<Direction>> = HashMap::new();
    for (d, s, w) in pts {
        let key = (s, w);
        match groups.get_mut(&key) {
            Some(g) => g.push(d),
            None => {
                groups.insert(key.clone(), alloc::vec![d]);
                keys.push(key);
            }
        }
    }
    let orbits = keys
        .into_iter()
        .map(|k| {
            let pts = groups.remove(&k).unwrap_or_default();
            Orbit::explicit(k.0, k.1, pts)
        })
        .collect();
    CubatureFormula { domain, m, orbits, centrally_symmetric: false, trace: Vec::new() }
}

/// One point of an expanded formula: the point is r·direction (on the
/// sphere, direction/‖direction‖).
#[derive(Clone, Debug, PartialEq)]
pub struct CubPoint {
    pub direction: Direction,
    pub scale: RadialScale,
    pub weight: Rational,
}

/// v_l(α, β) and its images under L, sign changes, or both.
pub fn pattern_orbit(m: usize, l: usize, alpha: &FieldElement, beta: &FieldElement, group: PatternGroup) -> Result<Vec<Direction>> {
    if l == 0 || l > m {
        return Err(invalid("pattern length must satisfy 1 <= l <= m"));
    }
    let o = Orbit::pattern(RadialScale::unit(), Rational::one(), m, l, alpha.clone(), beta.clone(), group);
    Ok(o.directions(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pattern_orbit_sizes() {
        let one = FieldElement::one();
        let zero = FieldElement::zero();
        assert_eq!(pattern_orbit(5, 1, &one, &zero, PatternGroup::Bm).unwrap().len(), 10);
        assert_eq!(pattern_orbit(5, 5, &one, &zero, PatternGroup::L).unwrap().len(), 1);
        assert_eq!(pattern_orbit(3, 2, &one, &zero, PatternGroup::SignL).unwrap().len(), 4);
        assert_eq!(pattern_orbit(4, 2, &one, &FieldElement::from_int(2), PatternGroup::Bm).unwrap().len(), 6 * 16);
        let o = Orbit::pattern(RadialScale::unit(), Rational::one(), 4, 2, one.clone(), FieldElement::from_int(2), PatternGroup::Bm);
        assert_eq!(o.len(4), 96);
    }
}
