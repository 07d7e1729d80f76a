use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;

use cubforge_core::cubature::{
    catalog_formula, double, halve_antipodal, sqrt_points, square_points, to_sphere, verify_index, CubatureFormula, Orbit, RadialScale,
};
use cubforge_core::designs::catalog::{fano, inversive_plane_10, sqs8, symmetric_25_9_3};
use cubforge_core::designs::{
    block_count, derive_design, nordstrom_robinson, trivial_oa, verify_design, verify_oa, xiang_bound, BlockDesign,
};
use cubforge_core::exactnum::{rat, FieldElement, Rational, BASIS};
use cubforge_core::hilbert::{
    cubature_to_identity, form_count_bound, identity_to_cubature, kurschak, ns_family, reznick, sawa91, schur, verify_identity,
};
use cubforge_core::moments::{sphere_moment, Measure};
use cubforge_core::victoir::{find_slot, run_pipeline, substitute_regular};

fn field_element() -> impl Strategy<Value = FieldElement> {
    prop::collection::vec((-20i64..20, 1i64..12), 8).prop_map(|c| {
        let mut coeffs: [Rational; 8] = Default::default();
        for (slot, (n, d)) in coeffs.iter_mut().zip(c) {
            *slot = rat(n, d);
        }
        FieldElement::from_coeffs(coeffs)
    })
}

fn catalog_designs() -> Vec<(&'static str, BlockDesign, usize, u64)> {
    vec![("sqs8", sqs8(), 3, 1), ("fano", fano(), 2, 1), ("inversive10", inversive_plane_10(), 3, 1), ("sym25", symmetric_25_9_3(), 2, 3)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in field_element(), b in field_element(), c in field_element()) {
        prop_assert_eq!((&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
        prop_assert_eq!((&a + &b) - &b, a.clone());
    }

    #[test]
    fn inverses(a in field_element()) {
        prop_assume!(!a.is_zero());
        let inv = a.inv().unwrap();
        prop_assert_eq!(&a * &inv, FieldElement::one());
    }

    #[test]
    fn rational_sums_reduce(a in -50i64..50, b in 1i64..40, c in -50i64..50, d in 1i64..40) {
        let direct = rat(a, b) + rat(c, d);
        prop_assert_eq!(direct.clone(), rat(a * d + c * b, b * d));
        prop_assert!(*direct.denom() > 0.into());
    }

    #[test]
    fn field_element_text_round_trip(a in field_element()) {
        let back: FieldElement = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a.clone());
        let compact: FieldElement = a.to_compact().parse().unwrap();
        prop_assert_eq!(compact, a);
    }

    #[test]
    fn sqrt_basis_products(i in 0usize..8, j in 0usize..8) {
        let (x, y) = (BASIS[i], BASIS[j]);
        let p = FieldElement::sqrt_of(x) * FieldElement::sqrt_of(y);
        prop_assert_eq!(p.to_f64(), ((x * y) as f64).sqrt());
        prop_assert!((p.to_f64() - ((x * y) as f64).sqrt()).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// Coverage of every t′-set equals block_count for the catalog designs.
    #[test]
    fn coverage_matches_block_count(which in 0usize..4) {
        let (_, d, t, lambda) = catalog_designs().swap_remove(which);
        let rep = verify_design(&d, t).unwrap();
        let k = d.block_sizes()[0] as u64;
        for tp in 0..=t {
            let want = block_count(d.v() as u64, k, t as u64, &Rational::from_integer(lambda.into()), tp as u64).unwrap();
            prop_assert_eq!(Rational::from_integer(rep.lambdas[tp].unwrap().into()), want);
        }
    }

    #[test]
    fn derived_designs_are_regular(which in 0usize..4, x in 0usize..25) {
        let (_, d, t, _) = catalog_designs().swap_remove(which);
        let x = x % d.v();
        let der = derive_design(&d, x).unwrap();
        let rep = verify_design(&der, t - 1).unwrap();
        prop_assert!(rep.is_balanced() && rep.is_regular());
        prop_assert_eq!(der.b(), d.b());
    }

    /// Regular 2e-wise balanced designs with f block sizes have at least
    /// Σ_{i<f} C(v, e−i) blocks.
    #[test]
    fn xiang_bound_holds(which in 0usize..4, x in 0usize..25, derived in any::<bool>()) {
        let (_, d, t, _) = catalog_designs().swap_remove(which);
        let d = if derived && t >= 3 { derive_design(&d, x % d.v()).unwrap() } else { d };
        let rep = verify_design(&d, 2).unwrap();
        prop_assume!(rep.is_regular());
        let f = d.block_sizes().len() as u64;
        prop_assert!(num_bigint::BigUint::from(d.b()) >= xiang_bound(d.v() as u64, 1, f).unwrap());
    }

    /// Any ≤ t columns of a strength-t array form an array of full strength.
    #[test]
    fn oa_strength_is_monotone(cols in prop::sample::subsequence((0..16).collect::<Vec<usize>>(), 1..=5)) {
        let nr = nordstrom_robinson();
        let sub = nr.columns(&cols).unwrap();
        let rep = verify_oa(&sub, cols.len()).unwrap();
        prop_assert!(rep.passes());
        prop_assert_eq!(rep.strength, cols.len());
    }

    #[test]
    fn trivial_oa_has_full_strength(l in 1usize..9) {
        let rep = verify_oa(&trivial_oa(l).unwrap(), l).unwrap();
        prop_assert!(rep.passes() && rep.strength == l);
        prop_assert_eq!(rep.index(trivial_oa(l).unwrap().n()), 1);
    }

    #[test]
    fn sphere_second_moments_sum_to_one(m in 1usize..40) {
        let total = (0..m).fold(Rational::zero(), |acc, i| {
            let mut a = vec![0u32; m];
            a[i] = 2;
            acc + sphere_moment(m, &a)
        });
        prop_assert_eq!(total, Rational::one());
    }
}

/// Symmetric formula from random integer directions: each point and its
/// negation with equal weight.
fn symmetric_formula() -> impl Strategy<Value = CubatureFormula> {
    (2usize..5).prop_flat_map(|m| (Just(m), prop::collection::vec((prop::collection::vec(-3i64..4, m), 1i64..9), 1..6))).prop_filter_map(
        "nonzero distinct directions",
        |(m, raw)| {
            let mut pts: Vec<Vec<i64>> = Vec::new();
            let mut orbits = Vec::new();
            for (d, w) in raw {
                let neg: Vec<i64> = d.iter().map(|x| -x).collect();
                let g = d.iter().fold(0, |g, &x| num_integer::gcd(g, x));
                // primitive vectors only, so no two points share a direction
                if g != 1 || pts.contains(&d) || pts.contains(&neg) {
                    continue;
                }
                let fe = |v: &[i64]| v.iter().map(|&x| FieldElement::from_int(x)).collect::<Vec<_>>();
                orbits.push(Orbit::explicit(RadialScale::unit(), rat(w, 1), vec![fe(&d), fe(&neg)]));
                pts.push(d);
            }
            if orbits.is_empty() {
                return None;
            }
            let mut f = CubatureFormula::new(Measure::Sphere, m, orbits).ok()?;
            f.centrally_symmetric = true;
            Some(f)
        },
    )
}

/// Points with each direction scaled so its first nonzero entry is ±1;
/// on the sphere only the ray matters.
fn multiset(f: &CubatureFormula) -> Vec<(Vec<FieldElement>, Rational)> {
    let ray = |d: Vec<FieldElement>| {
        let lead = d.iter().find(|x| !x.is_zero()).unwrap().abs();
        d.iter().map(|x| x / &lead).collect::<Vec<_>>()
    };
    let mut v: Vec<_> = f.points().into_iter().map(|p| (ray(p.direction), p.weight)).collect();
    v.sort();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn halve_then_double_is_identity(f in symmetric_formula()) {
        let h = halve_antipodal(&f).unwrap();
        prop_assert_eq!(h.num_points() * 2, f.num_points());
        prop_assert_eq!(h.total_weight(), f.total_weight());
        let back = double(&h).unwrap();
        prop_assert_eq!(multiset(&back), multiset(&f));
    }

    /// Even moments see no difference between a symmetric formula and its
    /// halved form.
    #[test]
    fn halving_keeps_even_index_outcome(f in symmetric_formula(), q in prop::sample::select(vec![2u32, 4])) {
        let h = halve_antipodal(&f).unwrap();
        prop_assert_eq!(verify_index(&f, q).unwrap().is_valid(), verify_index(&h, q).unwrap().is_valid());
    }

    /// to_sphere keeps the verification outcome, for valid inputs and for
    /// inputs with one weight perturbed.
    #[test]
    fn to_sphere_keeps_outcome(m in 3usize..9, bump in 0i64..3) {
        let mut g = sqrt_points(&catalog_formula("lem42i", m).unwrap()).unwrap();
        g.orbits[0].weight = &g.orbits[0].weight * rat(10 + bump, 10);
        let before = verify_index(&g, 4).unwrap().is_valid();
        prop_assert_eq!(before, bump == 0);
        let s = to_sphere(&g, 4).unwrap();
        prop_assert_eq!(verify_index(&s, 4).unwrap().is_valid(), before);
        if before {
            prop_assert_eq!(s.total_weight(), Rational::one());
        }
    }

    /// z ↦ ±√z doubles the index and z ↦ z² undoes it.
    #[test]
    fn square_and_sqrt_invert(name in prop::sample::select(vec!["lem42i", "lem42ii"]), m in prop::sample::select(vec![4usize, 7, 10])) {
        let f = catalog_formula(name, m).unwrap();
        let g = sqrt_points(&f).unwrap();
        prop_assert!(verify_index(&g, 4).unwrap().is_valid());
        let back = square_points(&g).unwrap();
        prop_assert!(verify_index(&back, 2).unwrap().is_valid());
        prop_assert_eq!(back.total_weight(), f.total_weight());
    }

    /// Regular substitution preserves index 3 and total mass whichever
    /// point the design is derived at.
    #[test]
    fn regular_substitution_conserves_mass(x in 0usize..8) {
        let f = catalog_formula("ex45", 7).unwrap();
        let slots = [find_slot(&f, "v4").unwrap(), find_slot(&f, "v3").unwrap()];
        let g = substitute_regular(&f, &slots, &derive_design(&sqs8(), x).unwrap(), 3).unwrap();
        prop_assert_eq!(g.total_weight(), f.total_weight());
        prop_assert_eq!(g.num_points(), 14 + 7);
        prop_assert!(verify_index(&g, 3).unwrap().is_valid());
    }

    #[test]
    fn ns_family_range(n in 1i64..400, d in 1i64..100_000) {
        let a = rat(n, d);
        let inside = a >= rat(1, 192) && a <= rat(1, 120);
        match ns_family(&a) {
            Ok(id) => {
                prop_assert!(inside);
                prop_assert!(verify_identity(&id).is_valid());
            }
            Err(_) => prop_assert!(!inside),
        }
    }
}

#[test]
fn identities_meet_the_form_count_bound() {
    let mut ids = vec![sawa91(), reznick(), schur()];
    for k in 1..=3 {
        ids.push(kurschak(k).unwrap());
    }
    for id in ids {
        assert!(verify_identity(&id).is_valid());
        assert!(id.distinct_forms() as u128 >= form_count_bound(id.m, id.q), "m={} q={}", id.m, id.q);
        let f = identity_to_cubature(&id).unwrap();
        assert!(verify_index(&f, id.q).unwrap().is_valid());
        assert_eq!(f.num_points(), id.distinct_forms() as u128);
    }
    assert_eq!(sawa91().distinct_forms(), 91);
}

#[test]
fn cubature_identity_round_trip() {
    let r = run_pipeline("ex45_s6_91").unwrap();
    let id = cubature_to_identity(&r.formula, 6).unwrap();
    let back = identity_to_cubature(&id).unwrap();
    let norm = |f: &CubatureFormula| {
        let total = f.total_weight();
        let mut v: Vec<(Vec<f64>, f64)> = f
            .points()
            .into_iter()
            .map(|p| {
                let n = p.direction.iter().map(|x| x.to_f64().powi(2)).sum::<f64>().sqrt();
                (p.direction.iter().map(|x| x.to_f64() / n).collect(), (p.weight / &total).to_f64().unwrap())
            })
            .collect();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    };
    let (a, b) = (norm(&r.formula), norm(&back));
    assert_eq!(a.len(), b.len());
    for ((x, w), (y, u)) in a.iter().zip(&b) {
        assert!((w - u).abs() < 1e-12);
        assert!(x.iter().zip(y).all(|(p, q)| (p - q).abs() < 1e-12));
    }
}
