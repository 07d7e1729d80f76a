//! Point elimination: invariant orbits of a cubature formula are replaced by
//! the columns of a (generalized) incidence matrix of a design, or by the
//! rows of a two-level orthogonal array, without losing exactness.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::One;

use crate::cubature::{
    catalog_formula, halve_antipodal, sqrt_points, to_sphere, verify_index, weight_of, CubatureFormula, Direction, Orbit, OrbitKind,
    VerificationReport,
};
use crate::designs::{
    catalog as designs_catalog, derive_design, generalized_incidence, nordstrom_robinson, verify_design, verify_oa, BlockDesign,
    OrthogonalArray,
};
use crate::error::{invalid, precondition, Error, Result};
use crate::exactnum::{binomial, FieldElement, Rational};
use crate::moments::Measure;

fn binom(n: usize, k: usize) -> Rational {
    Rational::from_integer(binomial(n as u64, k as u64).into())
}

/// Index of the orbit carrying `label`.
pub fn find_slot(f: &CubatureFormula, label: &str) -> Result<usize> {
    f.orbits.iter().position(|o| o.label == label).ok_or_else(|| invalid(alloc::format!("no orbit labelled `{label}`")))
}

fn placed_slot(f: &CubatureFormula, slot: usize) -> Result<(usize, FieldElement, FieldElement)> {
    let o = f.orbits.get(slot).ok_or_else(|| invalid(alloc::format!("orbit {slot} does not exist")))?;
    match &o.kind {
        OrbitKind::Placed { k, a, b, signed: false } if a != b => Ok((*k, a.clone(), b.clone())),
        _ => Err(precondition(alloc::format!("orbit {slot} is not a permutation orbit v_k(a, b)^L"))),
    }
}

/// Replaces the permutation orbit v_k(α, β)^L at `slot` by the columns of
/// the generalized incidence matrix of a t-(m, k, λ) design.
pub fn substitute_design(
    f: &CubatureFormula,
    slot: usize,
    d: &BlockDesign,
    alpha: &FieldElement,
    beta: &FieldElement,
    t: usize,
) -> Result<CubatureFormula> {
    let (k, a, b) = placed_slot(f, slot)?;
    if (&a, &b) != (alpha, beta) {
        return Err(precondition(alloc::format!("slot pattern is v_{k}({a}, {b}), not ({alpha}, {beta})")));
    }
    if d.v() != f.m {
        return Err(Error::DimensionMismatch { expected: f.m, found: d.v() });
    }
    if d.block_sizes() != [k] {
        return Err(precondition(alloc::format!("design block sizes {:?} do not match the slot size {k}", d.block_sizes())));
    }
    let rep = verify_design(d, t)?;
    if !rep.is_balanced() {
        return Err(precondition(alloc::format!("design is not a {t}-design (strength {})", rep.max_t())));
    }
    let cols = generalized_incidence(d, alpha, beta)?.columns;
    let o = &f.orbits[slot];
    let weight = &o.weight * binom(f.m, k) / Rational::from_integer(d.b().into());
    let new = Orbit::explicit(o.scale.clone(), weight, cols).with_label(o.label.clone());
    let mut g = f.clone();
    g.orbits[slot] = new;
    Ok(g.with_trace(alloc::format!("substitute design ({} blocks) for orbit `{}`", d.b(), o.label)))
}

/// Replaces several permutation orbits v_{k_i}(α, β)^L sharing one radius
/// by the columns of a regular t-wise balanced design whose block sizes are
/// exactly the k_i. The host weights must be w_i = c·b_i / (C(m, k_i)·b).
pub fn substitute_regular(f: &CubatureFormula, slots: &[usize], d: &BlockDesign, t: usize) -> Result<CubatureFormula> {
    if slots.is_empty() {
        return Err(invalid("no slots given"));
    }
    if d.v() != f.m {
        return Err(Error::DimensionMismatch { expected: f.m, found: d.v() });
    }
    let first = &f.orbits[placed_slot(f, slots[0]).map(|_| slots[0])?];
    let mut ks = Vec::new();
    let (mut alpha, mut beta) = (None, None);
    for &s in slots {
        let (k, a, b) = placed_slot(f, s)?;
        if f.orbits[s].scale != first.scale {
            return Err(precondition("slots have different radii"));
        }
        if alpha.get_or_insert(a.clone()) != &a || beta.get_or_insert(b.clone()) != &b {
            return Err(precondition("slots have different patterns"));
        }
        if ks.contains(&k) {
            return Err(precondition("two slots with the same size"));
        }
        ks.push(k);
    }
    let mut sizes = d.block_sizes();
    sizes.sort_unstable();
    let mut want = ks.clone();
    want.sort_unstable();
    if sizes != want {
        return Err(precondition(alloc::format!("design block sizes {sizes:?} do not match the slot sizes {want:?}")));
    }
    let rep = verify_design(d, t)?;
    if !rep.is_regular() {
        return Err(precondition(alloc::format!("design is not a regular {t}-wise balanced design")));
    }
    let b = Rational::from_integer(d.b().into());
    let mut c: Option<Rational> = None;
    for (&s, &k) in slots.iter().zip(&ks) {
        let bi = Rational::from_integer(rep.count_of_size(k).into());
        let ci = &f.orbits[s].weight * binom(f.m, k) * &b / bi;
        match &c {
            None => c = Some(ci),
            Some(c0) if *c0 == ci => {}
            Some(c0) => return Err(precondition(alloc::format!("weight proportions mismatch: slot of size {k} needs c = {c0}, has {ci}"))),
        }
    }
    let c = c.expect("non-empty");
    let (alpha, beta) = (alpha.expect("set"), beta.expect("set"));
    let cols = generalized_incidence(d, &alpha, &beta)?.columns;
    let label: Vec<&str> = slots.iter().map(|&s| f.orbits[s].label.as_str()).collect();
    let new = Orbit::explicit(first.scale.clone(), &c / &b, cols).with_label(label.join("+"));
    let mut g = f.clone();
    g.orbits = Vec::new();
    for (i, o) in f.orbits.iter().enumerate() {
        if i == slots[0] {
            g.orbits.push(new.clone());
        } else if !slots.contains(&i) {
            g.orbits.push(o.clone());
        }
    }
    Ok(g.with_trace(alloc::format!("substitute regular design ({} blocks, c = {c}) for orbits {}", d.b(), label.join(", "))))
}

/// Replaces the sign orbits at `slot` by the rows of an orthogonal array
/// with `wt` constraints: row signs go onto the nonzero coordinates in
/// increasing order. Needs strength ≥ q (or the full array when wt < q).
pub fn substitute_oa(f: &CubatureFormula, slot: usize, oa: &OrthogonalArray, q: usize) -> Result<CubatureFormula> {
    let o = f.orbits.get(slot).ok_or_else(|| invalid(alloc::format!("orbit {slot} does not exist")))?;
    let bases: Vec<Direction> = match &o.kind {
        OrbitKind::Signed(b) => b.clone(),
        OrbitKind::Placed { signed: true, .. } => {
            let mut unsigned = o.clone();
            if let OrbitKind::Placed { signed, .. } = &mut unsigned.kind {
                *signed = false;
            }
            unsigned.directions(f.m)
        }
        _ => return Err(precondition(alloc::format!("orbit {slot} is not sign-invariant"))),
    };
    let l = oa.l();
    if let Some(bad) = bases.iter().find(|d| weight_of(d) != l) {
        return Err(precondition(alloc::format!("array has {l} constraints but the orbit weight is {}", weight_of(bad))));
    }
    let rep = verify_oa(oa, q.min(l))?;
    if !rep.passes() {
        return Err(precondition(alloc::format!("array strength {} is below the required {}", rep.strength, q.min(l))));
    }
    let mut pts = Vec::with_capacity(bases.len() * oa.n());
    for d in &bases {
        let supp: Vec<usize> = (0..d.len()).filter(|&i| !d[i].is_zero()).collect();
        for r in 0..oa.n() {
            let mut p = d.clone();
            for (j, &i) in supp.iter().enumerate() {
                if oa.sign(r, j) < 0 {
                    p[i] = -p[i].clone();
                }
            }
            pts.push(p);
        }
    }
    let weight = &o.weight * Rational::from_integer(BigInt::one() << l) / Rational::from_integer(oa.n().into());
    let label = o.label.clone();
    let mut g = f.clone();
    g.orbits[slot] = Orbit::explicit(o.scale.clone(), weight, pts).with_label(label.clone());
    g.centrally_symmetric = f.centrally_symmetric && oa.is_centrally_symmetric();
    Ok(g.with_trace(alloc::format!("substitute OA({}, {l}) for orbit `{label}`", oa.n())))
}

pub const PIPELINES: [&str; 4] = ["ex45_s6_91", "ex46_s8_457", "main2i_m16", "main2ii_m25"];

#[derive(Clone, Debug)]
pub struct PipelineResult {
    pub name: String,
    pub formula: CubatureFormula,
    pub index: u32,
    /// Points after the last substitution, before antipodal halving.
    pub points_before_halving: u128,
    pub report: VerificationReport,
}

fn step<T>(name: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::Step { step: name.to_string(), reason: alloc::format!("{e}") })
}

/// Runs one of the named end-to-end constructions and verifies the final
/// sphere formula exactly.
pub fn run_pipeline(name: &str) -> Result<PipelineResult> {
    let (lifted, index) = match name {
        "ex45_s6_91" | "ex46_s8_457" => {
            let (m, host, des) = if name == "ex45_s6_91" {
                (7, "ex45", designs_catalog::sqs8())
            } else {
                (9, "ex46", designs_catalog::inversive_plane_10())
            };
            let f = step("catalog", catalog_formula(host, m))?;
            let derived = step("derive design", derive_design(&des, m))?;
            let slots = [step("slot", find_slot(&f, "v4"))?, step("slot", find_slot(&f, "v3"))?];
            let f = step("substitute regular design", substitute_regular(&f, &slots, &derived, 3))?;
            (step("sqrt lift", sqrt_points(&f))?, 6)
        }
        "main2i_m16" => {
            let f = step("catalog", catalog_formula("lem42i", 16))?;
            let f = step("sqrt lift", sqrt_points(&f))?;
            let slot = step("slot", find_slot(&f, "ones"))?;
            (step("substitute OA", substitute_oa(&f, slot, &nordstrom_robinson(), 4))?, 4)
        }
        "main2ii_m25" => {
            let f = step("catalog", catalog_formula("lem42ii", 25))?;
            let d = designs_catalog::symmetric_25_9_3();
            let f = step("substitute design", substitute_design(&f, 0, &d, &FieldElement::one(), &FieldElement::zero(), 2))?;
            let f = step("sqrt lift", sqrt_points(&f))?;
            let oa = step("OA columns", nordstrom_robinson().columns(&(0..9).collect::<Vec<_>>()))?;
            (step("substitute OA", substitute_oa(&f, 0, &oa, 4))?, 4)
        }
        other => return Err(invalid(alloc::format!("unknown pipeline `{other}`"))),
    };
    debug_assert_eq!(lifted.domain, Measure::Gaussian);
    let sphere = step("to sphere", to_sphere(&lifted, index))?;
    let merged = step("merge duplicates", sphere.dedup())?;
    let before = merged.num_points();
    let halved = step("halve", halve_antipodal(&merged))?;
    let report = step("verify", verify_index(&halved, index))?;
    let formula = halved.with_trace(alloc::format!("verify index {index}: {}", if report.is_valid() { "pass" } else { "FAIL" }));
    Ok(PipelineResult { name: name.to_string(), formula, index, points_before_halving: before, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubature::{catalog_formula, verify_index, PatternGroup, RadialScale};
    use crate::designs::catalog::fano;
    use crate::designs::{trivial_oa, BlockDesign};
    use crate::exactnum::rat;

    #[test]
    fn complete_design_keeps_formula() {
        let f = catalog_formula("lem42ii", 7).unwrap();
        let d = BlockDesign::complete(7, 3).unwrap();
        let g = substitute_design(&f, 0, &d, &FieldElement::one(), &FieldElement::zero(), 2).unwrap();
        assert_eq!(g.num_points(), 35);
        assert_eq!(g.orbits[0].weight, f.orbits[0].weight);
        assert!(verify_index(&g, 2).unwrap().is_valid());
    }

    #[test]
    fn fano_on_synthetic_slot() {
        // v3(√7, 0)^L with weight 1/35: x_i² sums to 15·7/35 = 3 and
        // x_i x_j to 5·7/35 = 1, so it is an index-2 orthant formula.
        let r = RadialScale::new(rat(7, 1), 2).unwrap();
        let o = Orbit::pattern(r, rat(1, 35), 7, 3, FieldElement::one(), FieldElement::zero(), PatternGroup::L).with_label("v3");
        let f = CubatureFormula::new(Measure::Orthant, 7, alloc::vec![o]).unwrap();
        assert!(verify_index(&f, 2).unwrap().is_valid());
        let g = substitute_design(&f, 0, &fano(), &FieldElement::one(), &FieldElement::zero(), 2).unwrap();
        assert_eq!(g.num_points(), 7);
        assert!(verify_index(&g, 2).unwrap().is_valid());
        assert!(substitute_design(&f, 0, &fano(), &FieldElement::from_int(2), &FieldElement::zero(), 2).is_err());
    }

    #[test]
    fn trivial_oa_is_identity() {
        let f = sqrt_points(&catalog_formula("lem42i", 4).unwrap()).unwrap();
        let slot = find_slot(&f, "ones").unwrap();
        let g = substitute_oa(&f, slot, &trivial_oa(4).unwrap(), 4).unwrap();
        let mut a: Vec<_> = f.orbits[slot].directions(4);
        let mut b: Vec<_> = g.orbits[slot].directions(4);
        a.sort();
        b.sort();
        assert_eq!(a, b);
        assert_eq!(f.orbits[slot].weight, g.orbits[slot].weight);
        assert_eq!(f.total_weight(), g.total_weight());
    }

    #[test]
    fn oa_strength_checked() {
        let f = sqrt_points(&catalog_formula("lem42i", 16).unwrap()).unwrap();
        let slot = find_slot(&f, "ones").unwrap();
        // a strength-3 array on 16 columns: the [16,5] first-order Reed–Muller
        // code dualized gives only strength 3
        let gens: Vec<Vec<u8>> =
            (0..4).map(|b| (0..16).map(|i| ((i >> b) & 1) as u8).collect()).chain(core::iter::once(alloc::vec![1u8; 16])).collect();
        let rm = crate::designs::oa_from_linear_code(&gens).unwrap();
        assert_eq!(verify_oa(&rm, 4).unwrap().strength, 3);
        assert!(substitute_oa(&f, slot, &rm, 4).is_err());
    }

    #[test]
    fn regular_design_weight_check() {
        let f = catalog_formula("ex45", 7).unwrap();
        let d = derive_design(&designs_catalog::sqs8(), 7).unwrap();
        let slots = [find_slot(&f, "v4").unwrap(), find_slot(&f, "v3").unwrap()];
        let g = substitute_regular(&f, &slots, &d, 3).unwrap();
        assert_eq!(g.num_points(), 14 + 7);
        assert_eq!(g.orbits[0].weight, rat(1, 28));
        assert!(verify_index(&g, 3).unwrap().is_valid());
        let mut bad = f.clone();
        bad.orbits[slots[1]].weight = rat(1, 70);
        assert!(substitute_regular(&bad, &slots, &d, 3).is_err());
    }

    #[test]
    fn pipelines_small() {
        for (name, n) in [("ex45_s6_91", 91), ("main2i_m16", 144)] {
            let r = run_pipeline(name).unwrap();
            assert_eq!(r.formula.num_points(), n, "{name}");
            assert!(r.report.is_valid() && r.report.exact, "{name}");
        }
        assert!(run_pipeline("nope").is_err());
    }
}
