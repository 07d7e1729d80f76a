use cubforge_core::cubature::verify_index;
use cubforge_core::exactnum::{int, rat, FieldElement, Rational};
use cubforge_core::hilbert::*;
use cubforge_core::reflect::{group_data, weights_to_formula, GroupLabel, DEFAULT_ORBIT_CAP};
use cubforge_core::victoir::run_pipeline;
use num_traits::Zero;

fn ns_points() -> [Rational; 3] {
    [rat(1, 192), rat(1, 150), rat(1, 120)]
}

fn check(id: &HilbertIdentity) {
    let rep = verify_identity(id);
    assert!(rep.is_valid(), "{:?}", rep.failures.first());
    let f = identity_to_cubature(id).unwrap();
    assert!(verify_index(&f, id.q).unwrap().is_valid());
    assert!(id.distinct_forms() as u128 >= form_count_bound(id.m, id.q));
}

#[test]
fn catalog_identities_hold() {
    check(&sawa91());
    check(&reznick());
    for k in 1..=3 {
        check(&kurschak(k).unwrap());
    }
    for a in ns_points() {
        check(&ns_family(&a).unwrap());
    }
    check(&schur());
    check(&hurwitz());
}

#[test]
fn family_as_typeset_does_not_hold() {
    for a in ns_points() {
        assert!(!verify_identity(&ns_family_as_printed(&a)).is_valid());
    }
}

#[test]
fn schur_is_the_family_endpoint() {
    assert_eq!(ns_family(&rat(1, 120)).unwrap().normalized(), schur().normalized());
    // the 3xᵢ and 2xᵢ±2xⱼ±2x_k classes drop out there, the 2xᵢ±xⱼ±x_k class at 1/192
    let lo = ns_family(&rat(1, 192)).unwrap();
    assert_eq!(lo.num_terms(), 4 + 8 + 32 + 16 + 12);
}

#[test]
fn family_comes_from_the_f4_weights() {
    // w₄ = a on the F4 degree-11 family gives exactly the identity at a
    let f4 = group_data(GroupLabel::F4).unwrap();
    for a in ns_points() {
        let w = [
            (int(13) - int(960) * &a) / int(960),
            rat(3, 256) * (int(-1) + int(192) * &a),
            rat(3, 160) * (int(1) - int(120) * &a),
            a.clone(),
        ];
        let f = weights_to_formula(&f4, &w, DEFAULT_ORBIT_CAP).unwrap();
        let id = cubature_to_identity(&f, 10).unwrap();
        assert_eq!(id.normalized(), ns_family(&a).unwrap().normalized(), "a = {a}");
    }
}

#[test]
fn hurwitz_and_schur_share_their_cubature() {
    let norm = |id: &HilbertIdentity| {
        let f = identity_to_cubature(id).unwrap();
        let total = f.total_weight();
        let mut pts: Vec<(Vec<FieldElement>, Rational)> =
            f.orbits.iter().map(|o| (o.directions(4)[0].clone(), &o.weight / &total)).collect();
        pts.sort();
        pts
    };
    let (h, s) = (norm(&hurwitz()), norm(&schur()));
    assert_eq!(h.len(), 72);
    assert_eq!(h, s);
}

#[test]
fn form_counts() {
    assert_eq!(sawa91().distinct_forms(), 56 + 28 + 7);
    assert_eq!(reznick().distinct_forms(), 64 + 42 + 7);
    assert_eq!(kurschak(1).unwrap().distinct_forms(), 12);
    assert_eq!(schur().distinct_forms(), 72);
    assert_eq!(form_count_bound(7, 6), 84);
}

#[test]
fn the_91_point_formula_is_the_rational_identity() {
    let r = run_pipeline("ex45_s6_91").unwrap();
    let id = cubature_to_identity(&r.formula, 6).unwrap();
    assert!(verify_identity(&id).is_valid());
    // same identity up to relabelling the variables
    let want = sawa91().normalized();
    let found = permutations(7).into_iter().any(|p| {
        let mut got: Vec<_> = id
            .normalized()
            .into_iter()
            .map(|(a, c)| {
                let mut b: Vec<FieldElement> = p.iter().map(|&i| a[i].clone()).collect();
                let lead = b.iter().find(|x| !x.is_zero()).unwrap().clone();
                b = b.iter().map(|x| x / &lead).collect();
                (b, c)
            })
            .collect();
        got.sort();
        got == want
    });
    assert!(found);
    assert!(rationality_report(&id).all_rational);
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn typeset_triples_break_the_91_form_identity() {
    let rep = verify_identity(&sawa91_as_printed());
    assert!(!rep.is_valid());
}

#[test]
fn round_trip() {
    for id in [sawa91(), hurwitz(), kurschak(2).unwrap()] {
        let f = identity_to_cubature(&id).unwrap();
        let back = cubature_to_identity(&f, id.q).unwrap();
        assert_eq!(back.normalized(), id.normalized());
    }
}

#[test]
fn rationality_of_catalog() {
    assert_eq!(rationality_report(&sawa91()).degree, 1);
    assert!(rationality_report(&ns_family(&rat(1, 150)).unwrap()).all_rational);
}

#[test]
fn eighth_powers_of_pm1_forms_cannot_give_the_norm() {
    for m in 2..=4 {
        let r = no_pm1_representation(m, 8).unwrap();
        assert!(!r.feasible(), "m = {m}");
        assert!(r.rank_augmented == r.rank + 1);
        assert_eq!(r.target_ratio, (int(4), int(6)));
        assert_eq!(r.form_ratio, (int(28), int(70)));
        // the witness annihilates every form power and not the target
        let y = r.witness.unwrap();
        let target: Rational = y
            .iter()
            .filter(|(e, _)| e.iter().all(|k| k % 2 == 0))
            .map(|(e, c)| {
                let half: Vec<u64> = e.iter().map(|&k| k as u64 / 2).collect();
                let mut left = 4u64;
                let mut mult = Rational::from_integer(1.into());
                for h in half {
                    mult *= Rational::from_integer(num_bigint::BigInt::from(binom(left, h)));
                    left -= h;
                }
                c * mult
            })
            .sum();
        assert_eq!(target, int(1));
    }
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn fourth_powers_recover_kurschak() {
    let r = no_pm1_representation(4, 4).unwrap();
    let sol = r.solution.unwrap();
    assert_eq!(sol.len(), 12);
    for (a, c) in sol {
        assert_eq!(a.iter().filter(|&&x| x != 0).count(), 2);
        assert_eq!(c, rat(1, 6));
    }
    let _ = Rational::zero();
}
