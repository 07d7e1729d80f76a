//! Invariant Euclidean designs built from corner-vector orbits.
//!
//! For a weighted union X of orbits v_k^G scaled to radius r, X is a
//! Euclidean t-design iff for every invariant harmonic f of degree
//! 1 ≤ l ≤ t and every j with 2j + l ≤ t,
//! Σ_orbits w · N_k · r^(2j+l) · f(v_k') = 0.
//! With all radii equal this reduces to Σ N_k w_k u_l[k] = 0.

use alloc::string::String;
use alloc::vec::Vec;
use num_traits::{One, Zero};

use super::families::ParametricFamily;
use super::groups::ReflectionGroupData;
use super::invariants::UTable;
use super::orbit::corner_orbit;
use crate::cubature::{CubatureFormula, Orbit, RadialScale};
use crate::error::{invalid, Result};
use crate::exactnum::{field_sqrt, BigFloat, FieldElement, Rational, DEFAULT_PRECISION};
use crate::linalg::{mat_vec, solve_affine, solve_augmented, Matrix};
use crate::moments::Measure;

#[derive(Clone, Debug, PartialEq)]
pub struct WeightedOrbit {
    /// 0-based corner index.
    pub corner: usize,
    pub radius: RadialScale,
    /// Weight of each point of the orbit.
    pub weight: FieldElement,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DesignFailure {
    pub invariant: String,
    pub j: u32,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EuclideanReport {
    pub t: u32,
    /// Every condition was decided in exact arithmetic.
    pub exact: bool,
    pub checked: usize,
    pub failures: Vec<DesignFailure>,
}

impl EuclideanReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Relative tolerance for conditions that need irrational radius powers
/// outside the field.
pub const FLOAT_REL_TOLERANCE_BITS: u32 = 128;

enum Power {
    Exact(FieldElement),
    Float(BigFloat),
}

fn radius_pow(r: &RadialScale, n: u32) -> Power {
    if let Some(q) = r.pow_exact(n) {
        return Power::Exact(q.into());
    }
    if r.q() == 2 {
        // r^n = s^((n-1)/2)·√s for odd n
        let base: FieldElement = num_traits::pow(r.s().clone(), (n / 2) as usize).into();
        if let Some(root) = field_sqrt(&r.s().clone().into()) {
            return Power::Exact(&base * &root);
        }
    }
    Power::Float(r.pow_float(n, DEFAULT_PRECISION))
}

pub fn euclidean_design_check(table: &UTable, orbits: &[WeightedOrbit], t: u32) -> Result<EuclideanReport> {
    let g = &table.group;
    if t == 0 {
        return Err(invalid("strength must be positive"));
    }
    table.require_basis(1..=t)?;
    for o in orbits {
        if o.corner >= g.rank() {
            return Err(invalid(alloc::format!("corner {} out of range", o.corner + 1)));
        }
        if o.weight.is_negative() {
            return Err(invalid("weights must be nonnegative"));
        }
    }
    let mut rep = EuclideanReport { t, exact: true, checked: 0, failures: Vec::new() };
    for row in table.rows.iter().filter(|r| r.degree <= t) {
        let l = row.degree;
        for j in 0..=(t - l) / 2 {
            let n = 2 * j + l;
            let mut exact_sum = FieldElement::zero();
            let mut float_sum = BigFloat::zero(DEFAULT_PRECISION);
            let mut float_scale = BigFloat::zero(DEFAULT_PRECISION);
            let mut any_float = false;
            for o in orbits {
                let base = o.weight.scale(&Rational::from_integer(table.orbit_sizes[o.corner].into())) * &row.entries[o.corner];
                match radius_pow(&o.radius, n) {
                    Power::Exact(p) => exact_sum += &(&base * &p),
                    Power::Float(p) => {
                        any_float = true;
                        let term = base.to_bigfloat(DEFAULT_PRECISION).mul(&p);
                        float_scale = float_scale.add(&term.abs());
                        float_sum = float_sum.add(&term);
                    }
                }
            }
            rep.checked += 1;
            let failed = if any_float {
                rep.exact = false;
                let total = float_sum.add(&exact_sum.to_bigfloat(DEFAULT_PRECISION));
                let scale = float_scale.add(&exact_sum.to_bigfloat(DEFAULT_PRECISION).abs());
                let tol = scale.mul(
                    &BigFloat::from_int(1, DEFAULT_PRECISION).div(&BigFloat::from_int(2, DEFAULT_PRECISION).pow(FLOAT_REL_TOLERANCE_BITS)),
                );
                let bad = total.abs().cmp_value(&tol) == core::cmp::Ordering::Greater;
                bad.then(|| total.to_f64())
            } else {
                (!exact_sum.is_zero()).then(|| exact_sum.to_f64())
            };
            if let Some(value) = failed {
                rep.failures.push(DesignFailure { invariant: row.label.clone(), j, value });
            }
        }
    }
    Ok(rep)
}

/// Equal-weight spherical formula on the orbit of a corner vector.
pub fn sphere_design_from_orbit(g: &ReflectionGroupData, corner: usize, cap: usize) -> Result<CubatureFormula> {
    if corner >= g.rank() {
        return Err(invalid(alloc::format!("corner {} out of range", corner + 1)));
    }
    let o = corner_orbit(g, corner, cap)?;
    let w = Rational::new(1.into(), (o.len() as u64).into());
    CubatureFormula::new(Measure::Sphere, g.dim, alloc::vec![Orbit::explicit(RadialScale::unit(), w, o.points())])
}

/// Weights on the unit-radius corner orbits: the affine solution set of
/// {Σ N_k w_k u[k] = 0 for every invariant of degree ≤ t} ∪ {Σ N_k w_k = 1}.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightFamily {
    pub t: u32,
    /// Constraint rows (last one is the normalization).
    pub system: Matrix<FieldElement>,
    pub rhs: Vec<FieldElement>,
    /// Free weight indices (0-based) parametrizing the family.
    pub free: Vec<usize>,
    pub particular: Vec<FieldElement>,
    /// Change in the weights per unit of each free weight.
    pub directions: Vec<Vec<FieldElement>>,
}

pub fn classify_weights(table: &UTable, t: u32) -> Result<Option<WeightFamily>> {
    classify_weights_with_free(table, t, &[])
}

/// As `classify_weights`, preferring the given weights as free parameters;
/// otherwise pivots are taken in corner order, leaving the trailing
/// weights free.
pub fn classify_weights_with_free(table: &UTable, t: u32, preferred_free: &[usize]) -> Result<Option<WeightFamily>> {
    table.require_basis(1..=t)?;
    let n = table.group.rank();
    let sizes: Vec<Rational> = table.orbit_sizes.iter().map(|&s| Rational::from_integer(s.into())).collect();
    let mut system: Matrix<FieldElement> = Vec::new();
    let mut rhs = Vec::new();
    for row in table.rows.iter().filter(|r| r.degree <= t) {
        system.push(row.entries.iter().zip(&sizes).map(|(u, s)| u.scale(s)).collect());
        rhs.push(FieldElement::zero());
    }
    system.push(sizes.iter().map(|s| FieldElement::from(s.clone())).collect());
    rhs.push(FieldElement::one());
    let mut order: Vec<usize> = (0..n).filter(|i| !preferred_free.contains(i)).collect();
    order.extend(preferred_free.iter().copied().filter(|&i| i < n));
    let Some(sol) = solve_affine(&system, &rhs, &order) else { return Ok(None) };
    Ok(Some(WeightFamily { t, system, rhs, free: sol.free, particular: sol.particular, directions: sol.directions }))
}

impl WeightFamily {
    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn weights_at(&self, params: &[FieldElement]) -> Vec<FieldElement> {
        let mut w = self.particular.clone();
        for (d, p) in self.directions.iter().zip(params) {
            for (wi, di) in w.iter_mut().zip(d) {
                *wi += &(di * p);
            }
        }
        w
    }

    /// System residual at w (zero iff w solves it).
    pub fn residual(&self, w: &[FieldElement]) -> Vec<FieldElement> {
        mat_vec(&self.system, w).into_iter().zip(&self.rhs).map(|(a, b)| a - b).collect()
    }

    pub fn satisfies(&self, w: &[FieldElement]) -> bool {
        w.len() == self.particular.len() && self.residual(w).iter().all(FieldElement::is_zero)
    }

    pub fn is_nonnegative(w: &[FieldElement]) -> bool {
        w.iter().all(|x| !x.is_negative())
    }

    /// Vertices of the polytope {family} ∩ {w ≥ 0}, in discovery order.
    pub fn vertices(&self) -> Vec<Vec<FieldElement>> {
        let p = self.dim();
        let n = self.particular.len();
        if p == 0 {
            return if Self::is_nonnegative(&self.particular) { alloc::vec![self.particular.clone()] } else { Vec::new() };
        }
        let mut out: Vec<Vec<FieldElement>> = Vec::new();
        for tight in crate::designs::subsets(n, p) {
            // w_i = particular_i + Σ_k params_k·d_k[i] = 0 for i in tight
            let m: Matrix<FieldElement> = tight
                .iter()
                .map(|&i| {
                    let mut row: Vec<FieldElement> = self.directions.iter().map(|d| d[i].clone()).collect();
                    row.push(-&self.particular[i]);
                    row
                })
                .collect();
            let Some(params) = solve_augmented(m) else { continue };
            let w = self.weights_at(&params);
            if Self::is_nonnegative(&w) && !out.contains(&w) {
                out.push(w);
            }
        }
        out
    }

    /// Centroid of the vertices plus the midpoint between it and each vertex.
    pub fn samples(&self) -> Vec<Vec<FieldElement>> {
        let vs = self.vertices();
        if vs.is_empty() {
            return Vec::new();
        }
        let k = Rational::new(1.into(), (vs.len() as u64).into());
        let n = vs[0].len();
        let centroid: Vec<FieldElement> = (0..n).map(|i| vs.iter().fold(FieldElement::zero(), |a, v| a + &v[i]).scale(&k)).collect();
        let half = Rational::new(1.into(), 2.into());
        let mut out = alloc::vec![centroid.clone()];
        for v in &vs {
            let mid: Vec<FieldElement> = v.iter().zip(&centroid).map(|(a, b)| (a + b).scale(&half)).collect();
            if !out.contains(&mid) {
                out.push(mid);
            }
        }
        out
    }

    /// Unit-radius orbits carrying the given weights (zero weights dropped).
    pub fn as_orbits(w: &[FieldElement]) -> Vec<WeightedOrbit> {
        w.iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(corner, x)| WeightedOrbit { corner, radius: RadialScale::unit(), weight: x.clone() })
            .collect()
    }

    /// Whether a printed family describes the same affine set, comparing
    /// the value at the origin and the change along each parameter. The
    /// family must have been classified with the printed parameters free.
    pub fn matches_parametric(&self, fam: &ParametricFamily) -> Result<bool> {
        let n = self.particular.len();
        if self.dim() == 0 {
            let Some(r) = fam.regions.first() else { return Ok(false) };
            let w: Vec<FieldElement> = fam.sample(r, &Rational::zero(), n)?.into_iter().map(FieldElement::from).collect();
            return Ok(w == self.particular);
        }
        let names = fam.free_weights();
        let idx: Vec<usize> = names
            .iter()
            .map(|s| s.strip_prefix('w').and_then(|d| d.parse::<usize>().ok()).and_then(|d| d.checked_sub(1)))
            .collect::<Option<_>>()
            .ok_or_else(|| invalid("family parameters must be weights wN"))?;
        let mut want_free = idx.clone();
        want_free.sort_unstable();
        if want_free != self.free {
            return Ok(false);
        }
        let zero: Vec<(&str, Rational)> = names.iter().map(|s| (s.as_str(), Rational::zero())).collect();
        let base: Vec<FieldElement> = fam.at(&zero, n)?.into_iter().map(FieldElement::from).collect();
        if base != self.particular {
            return Ok(false);
        }
        for (name, &i) in names.iter().zip(&idx) {
            let at: Vec<(&str, Rational)> =
                names.iter().map(|s| (s.as_str(), if s == name { Rational::one() } else { Rational::zero() })).collect();
            let v: Vec<FieldElement> = fam.at(&at, n)?.into_iter().map(FieldElement::from).collect();
            let dir: Vec<FieldElement> = v.iter().zip(&base).map(|(a, b)| a - b).collect();
            let k = self.free.iter().position(|&f| f == i).expect("checked above");
            if dir != self.directions[k] {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A weighted sphere formula on the unit-radius corner orbits, for checking
/// weights against the moment oracle.
pub fn weights_to_formula(g: &ReflectionGroupData, w: &[Rational], cap: usize) -> Result<CubatureFormula> {
    let mut orbits = Vec::new();
    for (k, wk) in w.iter().enumerate() {
        if wk.is_zero() {
            continue;
        }
        orbits.push(Orbit::explicit(RadialScale::unit(), wk.clone(), corner_orbit(g, k, cap)?.points()));
    }
    CubatureFormula::new(Measure::Sphere, g.dim, orbits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubature::verify_degree;
    use crate::exactnum::rat;
    use crate::reflect::groups::{group_data, GroupLabel};
    use crate::reflect::orbit::DEFAULT_ORBIT_CAP;

    fn table(g: GroupLabel) -> UTable {
        UTable::compute(&group_data(g).unwrap(), DEFAULT_ORBIT_CAP).unwrap()
    }

    fn fes(xs: &[Rational]) -> Vec<FieldElement> {
        xs.iter().cloned().map(FieldElement::from).collect()
    }

    #[test]
    fn h3_weights_form_an_11_design() {
        let t = table(GroupLabel::H3);
        let w = fes(&[rat(125, 5544), rat(64, 3465), rat(27, 3080)]);
        let rep = euclidean_design_check(&t, &WeightFamily::as_orbits(&w), 11).unwrap();
        assert!(rep.is_valid() && rep.exact, "{rep:?}");
        let fam = classify_weights(&t, 11).unwrap().unwrap();
        assert_eq!(fam.dim(), 0);
        assert_eq!(fam.particular, w);
        assert!(fam.satisfies(&w));
        // independent check by moments on the sphere
        let ws = [rat(125, 5544), rat(64, 3465), rat(27, 3080)];
        let f = weights_to_formula(&t.group, &ws, DEFAULT_ORBIT_CAP).unwrap();
        assert!(verify_degree(&f, 11).unwrap().is_valid());
        assert!(!verify_degree(&f, 12).unwrap().is_valid());
    }

    #[test]
    fn f4_single_orbit_is_not_a_12_design() {
        let t = table(GroupLabel::F4);
        let o = [WeightedOrbit { corner: 0, radius: RadialScale::unit(), weight: FieldElement::from(rat(1, 24)) }];
        let rep = euclidean_design_check(&t, &o, 12).unwrap();
        assert!(!rep.is_valid());
        assert!(rep.failures.iter().any(|f| f.invariant.starts_with("12")));
    }

    #[test]
    fn f4_family_endpoint_is_an_11_design() {
        let t = table(GroupLabel::F4);
        let w4 = rat(1, 192);
        let w = [
            (rat(13, 1) - rat(960, 1) * &w4) / rat(960, 1),
            rat(3, 256) * (rat(-1, 1) + rat(192, 1) * &w4),
            rat(3, 160) * (rat(1, 1) - rat(120, 1) * &w4),
            w4,
        ];
        let rep = euclidean_design_check(&t, &WeightFamily::as_orbits(&fes(&w)), 11).unwrap();
        assert!(rep.is_valid(), "{rep:?}");
    }

    #[test]
    fn radii_enter_as_powers() {
        // two copies of a design at different radii stay a design
        let t = table(GroupLabel::H3);
        let w = fes(&[rat(125, 5544), rat(64, 3465), rat(27, 3080)]);
        let mut orbits = WeightFamily::as_orbits(&w);
        for r in [RadialScale::new(rat(2, 1), 1).unwrap(), RadialScale::new(rat(3, 1), 2).unwrap(), RadialScale::new(rat(7, 1), 3).unwrap()]
        {
            orbits.extend(WeightFamily::as_orbits(&w).into_iter().map(|o| WeightedOrbit { radius: r.clone(), ..o }));
        }
        let rep = euclidean_design_check(&t, &orbits, 11).unwrap();
        assert!(rep.is_valid());
        assert!(!rep.exact);
        // moving a single orbit breaks it
        orbits[0].radius = RadialScale::new(rat(5, 4), 1).unwrap();
        assert!(!euclidean_design_check(&t, &orbits, 11).unwrap().is_valid());
    }

    #[test]
    fn missing_basis_is_an_error() {
        let t = table(GroupLabel::F4);
        assert!(euclidean_design_check(&t, &[], 14).is_err());
        assert!(classify_weights(&t, 14).is_err());
    }

    #[test]
    fn orbit_designs() {
        let h3 = group_data(GroupLabel::H3).unwrap();
        let f = sphere_design_from_orbit(&h3, 0, DEFAULT_ORBIT_CAP).unwrap();
        assert!(verify_degree(&f, 5).unwrap().is_valid());
        let b3 = group_data(GroupLabel::B(3)).unwrap();
        let f = sphere_design_from_orbit(&b3, 0, DEFAULT_ORBIT_CAP).unwrap();
        assert!(verify_degree(&f, 3).unwrap().is_valid());
        assert!(!verify_degree(&f, 4).unwrap().is_valid());
        let f4 = group_data(GroupLabel::F4).unwrap();
        let f = sphere_design_from_orbit(&f4, 0, DEFAULT_ORBIT_CAP).unwrap();
        assert!(verify_degree(&f, 5).unwrap().is_valid());
    }

    #[test]
    fn f4_family_vertices_and_samples() {
        let t = table(GroupLabel::F4);
        let fam = classify_weights(&t, 11).unwrap().unwrap();
        assert_eq!(fam.free, alloc::vec![3]);
        let vs = fam.vertices();
        assert_eq!(vs.len(), 2);
        let mut w4s: Vec<FieldElement> = vs.iter().map(|v| v[3].clone()).collect();
        w4s.sort();
        assert_eq!(w4s, fes(&[rat(1, 192), rat(1, 120)]));
        for s in fam.samples() {
            assert!(fam.satisfies(&s) && WeightFamily::is_nonnegative(&s));
            assert!(euclidean_design_check(&t, &WeightFamily::as_orbits(&s), 11).unwrap().is_valid());
        }
    }
}
