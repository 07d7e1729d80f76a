use alloc::vec::Vec;
use hashbrown::HashMap;
use num_bigint::BigInt;
use num_traits::One;

use super::formula::{normalize_first, regroup, weight_of, CubatureFormula, Direction, Orbit, OrbitKind};
use super::RadialScale;
use crate::error::{invalid, precondition, Result};
use crate::exactnum::{field_sqrt, FieldElement, Rational};
use crate::moments::{radial_factor, Measure, RadialWeight};

fn pow2(e: usize) -> Rational {
    Rational::from_integer(BigInt::one() << e)
}

fn norm_sq(d: &[FieldElement]) -> FieldElement {
    d.iter().fold(FieldElement::zero(), |acc, x| acc + x.square())
}

/// r^q·‖d‖^q as a rational, if it is one.
fn rational_mass(scale: &RadialScale, nsq: &FieldElement, q: u32) -> Option<Rational> {
    let rq = scale.pow_exact(q)?;
    let nq = if q.is_multiple_of(2) { nsq.pow(q / 2) } else { field_sqrt(nsq)?.pow(q) };
    nq.as_rational().map(|n| n * rq)
}

fn split_by_norm(m: usize, o: &Orbit) -> Vec<(FieldElement, OrbitKind)> {
    match &o.kind {
        OrbitKind::Explicit(p) | OrbitKind::Signed(p) => {
            let mut groups: Vec<(FieldElement, Vec<Direction>)> = Vec::new();
            for d in p {
                let n = norm_sq(d);
                match groups.iter_mut().find(|g| g.0 == n) {
                    Some(g) => g.1.push(d.clone()),
                    None => groups.push((n, alloc::vec![d.clone()])),
                }
            }
            let signed = matches!(o.kind, OrbitKind::Signed(_));
            groups.into_iter().map(|(n, ds)| (n, if signed { OrbitKind::Signed(ds) } else { OrbitKind::Explicit(ds) })).collect()
        }
        OrbitKind::Placed { k, a, b, .. } => {
            let n = &(a.square() * FieldElement::from_int(*k as i64)) + &(b.square() * FieldElement::from_int((m - k) as i64));
            alloc::vec![(n, o.kind.clone())]
        }
    }
}

/// Gaussian index-q formula to a sphere index-q formula: point x ↦ x/‖x‖,
/// weight w ↦ w‖x‖^q / E‖x‖^q. Points at the origin drop out.
pub fn to_sphere(f: &CubatureFormula, q: u32) -> Result<CubatureFormula> {
    if f.domain != Measure::Gaussian {
        return Err(precondition("to_sphere needs a Gaussian formula"));
    }
    if q == 0 || q % 2 == 1 {
        return Err(invalid("to_sphere is defined for a positive even index"));
    }
    let rf = radial_factor(RadialWeight::Gaussian, f.m, q)?;
    let mut orbits = Vec::new();
    for o in &f.orbits {
        for (n, kind) in split_by_norm(f.m, o) {
            if n.is_zero() {
                continue;
            }
            let mass = rational_mass(&o.scale, &n, q).ok_or_else(|| precondition("r^q·|x|^q is irrational; no rational sphere weight"))?;
            let weight = &o.weight * mass / &rf;
            orbits.push(Orbit { scale: RadialScale::unit(), weight, kind, label: o.label.clone() });
        }
    }
    let mut g = CubatureFormula::new(Measure::Sphere, f.m, orbits)?;
    g.centrally_symmetric = f.centrally_symmetric;
    g.trace = f.trace.clone();
    Ok(g.with_trace(alloc::format!("to_sphere q={q} (radial factor {rf})")))
}

/// Inverse of `to_sphere`: place each direction at radius `scale·‖d‖⁻¹`-free
/// form r·d and reweight so the Gaussian index-q integral is reproduced.
pub fn from_sphere(f: &CubatureFormula, q: u32, scale: &RadialScale) -> Result<CubatureFormula> {
    if f.domain != Measure::Sphere {
        return Err(precondition("from_sphere needs a sphere formula"));
    }
    if q == 0 || q % 2 == 1 {
        return Err(invalid("from_sphere is defined for a positive even index"));
    }
    let rf = radial_factor(RadialWeight::Gaussian, f.m, q)?;
    let mut orbits = Vec::new();
    for o in &f.orbits {
        if !o.scale.is_unit() {
            return Err(precondition("sphere formula with a non-unit radius"));
        }
        for (n, kind) in split_by_norm(f.m, o) {
            let mass = rational_mass(scale, &n, q).ok_or_else(|| precondition("r^q·|x|^q is irrational"))?;
            let weight = &o.weight * &rf / mass;
            orbits.push(Orbit { scale: scale.clone(), weight, kind, label: o.label.clone() });
        }
    }
    let mut g = CubatureFormula::new(Measure::Gaussian, f.m, orbits)?;
    g.centrally_symmetric = f.centrally_symmetric;
    g.trace = f.trace.clone();
    Ok(g.with_trace(alloc::format!("from_sphere q={q}")))
}

fn point_key(domain: Measure, d: &Direction, s: &RadialScale) -> Result<(Direction, RadialScale)> {
    Ok(if domain == Measure::Sphere { (normalize_first(d)?, RadialScale::unit()) } else { (d.clone(), s.clone()) })
}

fn negate(d: &Direction) -> Direction {
    d.iter().map(|x| -x.clone()).collect()
}

/// Keeps one point of each antipodal pair {x, −x} (the one whose first
/// nonzero coordinate is positive) with weight w(x) + w(−x).
pub fn halve_antipodal(f: &CubatureFormula) -> Result<CubatureFormula> {
    let merged = f.dedup()?;
    let mut table: HashMap<(Direction, RadialScale), Rational> = HashMap::new();
    let mut order = Vec::new();
    for p in merged.points() {
        let key = point_key(f.domain, &p.direction, &p.scale)?;
        order.push(key.clone());
        table.insert(key, p.weight);
    }
    let mut out = Vec::new();
    for key in order {
        let first_positive = key.0.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_positive());
        if !first_positive {
            continue;
        }
        let neg = point_key(f.domain, &negate(&key.0), &key.1)?;
        match table.get(&neg) {
            Some(w) if *w == table[&key] => {
                let w = w * Rational::from_integer(2.into());
                out.push((key.0, key.1, w));
            }
            Some(_) => return Err(precondition("antipodal points carry different weights")),
            None => return Err(precondition("point set is not closed under x -> -x")),
        }
    }
    let positives = out.len();
    if 2 * positives != merged.num_points() as usize {
        return Err(precondition("point set is not closed under x -> -x"));
    }
    let mut g = regroup(f.domain, f.m, out);
    g.trace = f.trace.clone();
    Ok(g.with_trace(alloc::format!("halve_antipodal: {} -> {positives} points", merged.num_points())))
}

/// Adds −x for every x, halving weights; the result is centrally symmetric.
pub fn double(f: &CubatureFormula) -> Result<CubatureFormula> {
    let half = Rational::new(1.into(), 2.into());
    let mut pts = Vec::new();
    for p in f.points() {
        let w = &p.weight * &half;
        pts.push((negate(&p.direction), p.scale.clone(), w.clone()));
        pts.push((p.direction, p.scale, w));
    }
    let mut g = regroup(f.domain, f.m, pts);
    g.centrally_symmetric = true;
    g.trace = f.trace.clone();
    Ok(g.with_trace("double"))
}

/// Sign-invariant Gaussian formula to orthant formula: one point z² per
/// sign orbit, weight multiplied by 2^wt(z).
pub fn square_points(f: &CubatureFormula) -> Result<CubatureFormula> {
    if f.domain != Measure::Gaussian {
        return Err(precondition("square_points needs a Gaussian formula"));
    }
    let mut orbits = Vec::new();
    for o in &f.orbits {
        let scale = o.scale.square();
        match &o.kind {
            OrbitKind::Signed(bases) => {
                let mut by_wt: Vec<(usize, Vec<Direction>)> = Vec::new();
                for d in bases {
                    let wt = weight_of(d);
                    let sq: Direction = d.iter().map(FieldElement::square).collect();
                    match by_wt.iter_mut().find(|g| g.0 == wt) {
                        Some(g) => g.1.push(sq),
                        None => by_wt.push((wt, alloc::vec![sq])),
                    }
                }
                for (wt, pts) in by_wt {
                    orbits.push(Orbit::explicit(scale.clone(), &o.weight * pow2(wt), pts).with_label(o.label.clone()));
                }
            }
            OrbitKind::Placed { k, a, b, signed: true } => {
                let wt = (if a.is_zero() { 0 } else { *k }) + (if b.is_zero() { 0 } else { f.m - k });
                orbits.push(Orbit {
                    scale,
                    weight: &o.weight * pow2(wt),
                    kind: OrbitKind::Placed { k: *k, a: a.square(), b: b.square(), signed: false },
                    label: o.label.clone(),
                });
            }
            _ => return Err(precondition("square_points needs every orbit annotated as sign-invariant")),
        }
    }
    let mut g = CubatureFormula::new(Measure::Orthant, f.m, orbits)?;
    g.trace = f.trace.clone();
    Ok(g.with_trace("square_points"))
}

fn sqrt_coord(x: &FieldElement) -> Result<FieldElement> {
    if x.is_negative() {
        return Err(precondition("negative coordinate under square root"));
    }
    field_sqrt(x).ok_or_else(|| precondition(alloc::format!("coordinate {x} has no square root in the field")))
}

/// Orthant formula to sign-invariant Gaussian formula: z ↦ (√z)^{sign
/// changes}, weight divided by 2^wt(z).
pub fn sqrt_points(f: &CubatureFormula) -> Result<CubatureFormula> {
    if f.domain != Measure::Orthant {
        return Err(precondition("sqrt_points needs an orthant formula"));
    }
    let mut orbits = Vec::new();
    for o in &f.orbits {
        let scale = o.scale.sqrt();
        match &o.kind {
            OrbitKind::Explicit(pts) => {
                let mut by_wt: Vec<(usize, Vec<Direction>)> = Vec::new();
                for d in pts {
                    let r: Direction = d.iter().map(sqrt_coord).collect::<Result<_>>()?;
                    let wt = weight_of(&r);
                    match by_wt.iter_mut().find(|g| g.0 == wt) {
                        Some(g) => g.1.push(r),
                        None => by_wt.push((wt, alloc::vec![r])),
                    }
                }
                for (wt, bases) in by_wt {
                    orbits.push(Orbit {
                        scale: scale.clone(),
                        weight: &o.weight / pow2(wt),
                        kind: OrbitKind::Signed(bases),
                        label: o.label.clone(),
                    });
                }
            }
            OrbitKind::Placed { k, a, b, signed: false } => {
                let (a, b) = (sqrt_coord(a)?, sqrt_coord(b)?);
                let wt = (if a.is_zero() { 0 } else { *k }) + (if b.is_zero() { 0 } else { f.m - k });
                orbits.push(Orbit {
                    scale,
                    weight: &o.weight / pow2(wt),
                    kind: OrbitKind::Placed { k: *k, a, b, signed: true },
                    label: o.label.clone(),
                });
            }
            _ => return Err(precondition("orthant formula with a sign orbit")),
        }
    }
    let mut g = CubatureFormula::new(Measure::Gaussian, f.m, orbits)?;
    g.centrally_symmetric = true;
    g.trace = f.trace.clone();
    Ok(g.with_trace("sqrt_points"))
}
