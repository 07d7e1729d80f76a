//! One pass/fail line per acceptance criterion.
//!
//! Runs without the libtest harness so the table always shows up in
//! `cargo test` output. Criteria 6 and 8 fail on the tabulated data
//! itself (see `DOCUMENTED`); the run asserts that they fail for exactly
//! those reasons and that every other criterion passes.

use std::collections::BTreeSet;
use std::path::Path;
use std::time::{Duration, Instant};

use num_traits::ToPrimitive;

use cubforge_core::cubature::{
    catalog_formula, double, halve_antipodal, sqrt_points, stated_index, to_sphere, verify_index, CubatureFormula,
};
use cubforge_core::designs::catalog::{fano, inversive_plane_10, sqs8, symmetric_25_9_3};
use cubforge_core::designs::{
    derive_design, dual_bch_oa, nordstrom_robinson, oa_from_linear_code, trivial_oa, BlockDesign, OrthogonalArray,
};
use cubforge_core::exactnum::{rat, FieldElement, Rational};
use cubforge_core::hilbert::{
    hurwitz, identity_to_cubature, kurschak, no_pm1_representation, ns_family, reznick, sawa91, schur, verify_identity, HilbertIdentity,
};
use cubforge_core::moments::{gaussian_moment, monomials, orthant_moment, radial_factor, sphere_moment, RadialWeight};
use cubforge_core::reflect::families::default_fractions;
use cubforge_core::reflect::printed::{printed_certificates, printed_family, printed_u_table, H4_FAMILY_CORRECTED};
use cubforge_core::reflect::{
    certify_nonexistence, check_certificate, check_printed, classify_weights_with_free, corner_orbit, euclidean_design_check, group_data,
    Certification, GroupLabel, ParametricFamily, UTable, WeightFamily, DEFAULT_ORBIT_CAP,
};
use cubforge_core::victoir::{find_slot, run_pipeline, substitute_design, substitute_oa, substitute_regular};

/// Float oracles compare at this relative tolerance; exact checks use none.
const FLOAT_TOL: f64 = 1e-9;

/// Criteria that fail because the tabulated values are wrong, with the
/// exact set of sub-checks expected to fail.
const DOCUMENTED: [(u8, &[&str]); 2] = [(6, &["E7 u8", "E8 u16"]), (8, &["H4 tabulated family", "E7 region v.1", "E7 region v.2"])];

struct Outcome {
    id: u8,
    title: &'static str,
    failures: Vec<String>,
    notes: Vec<String>,
    elapsed: Duration,
}

impl Outcome {
    fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Default)]
struct Log {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Log {
    fn check(&mut self, name: impl Into<String>, ok: bool) {
        if !ok {
            self.failures.push(name.into());
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn within(&mut self, what: &str, start: Instant, limit: Duration) {
        let e = start.elapsed();
        if e > limit {
            self.failures.push(format!("{what} took {e:.1?} (limit {limit:?})"));
        }
    }
}

fn run(id: u8, title: &'static str, f: impl FnOnce(&mut Log)) -> Outcome {
    let start = Instant::now();
    let mut log = Log::default();
    f(&mut log);
    Outcome { id, title, failures: log.failures, notes: log.notes, elapsed: start.elapsed() }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

// ---------------------------------------------------------------- oracles

/// Γ(n/2) for a positive integer n, in f64.
fn gamma_half(n: u32) -> f64 {
    let mut g = if n.is_multiple_of(2) { 1.0 } else { std::f64::consts::PI.sqrt() };
    let mut k = if n.is_multiple_of(2) { 2 } else { 1 };
    while k < n {
        g *= k as f64 / 2.0;
        k += 2;
    }
    g
}

/// Normalized sphere moment from the Beta-function formula
/// Γ(m/2)·∏Γ((αᵢ+1)/2) / (π^(m/2)·Γ((m+|α|)/2)), with even α.
fn sphere_moment_f64(m: usize, alpha: &[u32]) -> f64 {
    let q: u32 = alpha.iter().sum();
    let num: f64 = alpha.iter().map(|&a| gamma_half(a + 1)).product();
    gamma_half(m as u32) * num / (std::f64::consts::PI.powf(m as f64 / 2.0) * gamma_half(m as u32 + q))
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= FLOAT_TOL * a.abs().max(b.abs()).max(1.0)
}

fn f64_points(f: &CubatureFormula) -> Vec<(Vec<f64>, f64)> {
    f.points()
        .iter()
        .map(|p| {
            let x: Vec<f64> = p.direction.iter().map(FieldElement::to_f64).collect();
            (x, p.weight.to_f64().unwrap())
        })
        .collect()
}

/// For an index-q sphere formula, the average of ⟨x/‖x‖, y⟩^q over the
/// formula equals ∏_{j<q/2} (2j+1)/(m+2j) for every unit y. Largest
/// deviation over a few fixed y.
fn zonal_defect(f: &CubatureFormula, q: u32) -> f64 {
    let m = f.m;
    let pts = f64_points(f);
    let total: f64 = pts.iter().map(|p| p.1).sum();
    let target: f64 = (0..q / 2).map(|j| (2 * j + 1) as f64 / (m as f64 + 2.0 * j as f64)).product();
    (0..4)
        .map(|s| {
            let y: Vec<f64> = (0..m).map(|i| ((i * 5 + s * 3 + 2) % 13) as f64 - 6.0 + 0.25 * s as f64).collect();
            let ny = y.iter().map(|v| v * v).sum::<f64>().sqrt();
            let avg = pts
                .iter()
                .map(|(x, w)| {
                    let nx = x.iter().map(|v| v * v).sum::<f64>().sqrt();
                    w * (x.iter().zip(&y).map(|(a, b)| a * b).sum::<f64>() / (nx * ny)).powi(q as i32)
                })
                .sum::<f64>()
                / total;
            (avg - target).abs()
        })
        .fold(0.0, f64::max)
}

/// Both sides of a Hilbert identity evaluated at a point, in f64.
fn identity_sides(id: &HilbertIdentity, x: &[f64]) -> (f64, f64) {
    let n2: f64 = x.iter().map(|v| v * v).sum();
    let lhs = id.lhs.to_f64().unwrap() * n2.powi(id.q as i32 / 2);
    let rhs =
        id.terms.iter().map(|(c, a)| c.to_f64() * a.iter().zip(x).map(|(ai, xi)| ai.to_f64() * xi).sum::<f64>().powi(id.q as i32)).sum();
    (lhs, rhs)
}

// ---------------------------------------------------------------- criteria

fn moments(log: &mut Log) {
    let start = Instant::now();
    let mut checked = 0usize;
    for m in 1..=9usize {
        for half in 0..=5u32 {
            let q = 2 * half;
            let rf = radial_factor(RadialWeight::Gaussian, m, q).unwrap();
            for beta in monomials(m, half) {
                let alpha: Vec<u32> = beta.iter().map(|b| 2 * b).collect();
                let s = sphere_moment(m, &alpha);
                log.check(format!("gaussian = sphere·radial at m={m} α={alpha:?}"), gaussian_moment(&alpha) == &s * &rf);
                log.check(format!("orthant(β) = gaussian(2β) at β={beta:?}"), orthant_moment(&beta) == gaussian_moment(&alpha));
                checked += 1;
            }
        }
    }
    log.within("exact identities", start, secs(1));
    // Beta-function oracle, outside the timed section
    for m in 1..=9usize {
        for half in 0..=5u32 {
            for beta in monomials(m, half) {
                let alpha: Vec<u32> = beta.iter().map(|b| 2 * b).collect();
                let exact = sphere_moment(m, &alpha).to_f64().unwrap();
                log.check(format!("sphere moment oracle at m={m} α={alpha:?}"), close(exact, sphere_moment_f64(m, &alpha)));
            }
        }
    }
    log.note(format!("{checked} even exponents"));
}

fn catalog(log: &mut Log) {
    let start = Instant::now();
    let cases: [(&str, &[usize]); 4] =
        [("lem42i", &[3, 4, 5, 6, 7, 8, 9, 10]), ("lem42ii", &[4, 7, 10, 13, 25]), ("lem62i", &[8, 14, 20]), ("lem62ii", &[7, 13, 19])];
    let mut n = 0;
    for (name, ms) in cases {
        let q = stated_index(name).unwrap();
        for &m in ms {
            let f = catalog_formula(name, m).unwrap();
            let rep = verify_index(&f, q).unwrap();
            log.check(format!("{name} m={m} index {q}"), rep.is_valid() && rep.exact);
            n += 1;
        }
    }
    log.within("catalog verification", start, secs(10));
    // float oracle: Σ w·x^α against ∏(2αᵢ−1)!! for the smaller formulas
    for (name, m) in [("lem42i", 5), ("lem42ii", 7), ("lem62i", 8), ("lem62ii", 7)] {
        let f = catalog_formula(name, m).unwrap();
        let q = stated_index(name).unwrap();
        let pts: Vec<(Vec<f64>, f64)> = f
            .points()
            .iter()
            .map(|p| {
                let r2 = p.scale.s().to_f64().unwrap().powf(2.0 / p.scale.q() as f64);
                (p.direction.iter().map(|d| d.to_f64() * r2.sqrt()).collect(), p.weight.to_f64().unwrap())
            })
            .collect();
        for alpha in monomials(m, q) {
            let lhs: f64 = pts.iter().map(|(x, w)| w * x.iter().zip(&alpha).map(|(v, &a)| v.powi(a as i32)).product::<f64>()).sum();
            let rhs: f64 = alpha.iter().map(|&a| (1..=a).map(|j| (2 * j - 1) as f64).product::<f64>()).product();
            log.check(format!("{name} m={m} float oracle at {alpha:?}"), close(lhs, rhs));
        }
    }
    log.note(format!("{n} formulas"));
}

fn pipelines(log: &mut Log, cases: &[(&str, u128, u32, u64)]) {
    for &(name, points, q, limit) in cases {
        let start = Instant::now();
        let r = run_pipeline(name).unwrap();
        log.within(name, start, secs(limit));
        let n = r.formula.num_points();
        log.check(format!("{name}: {n} points, expected {points}"), n == points);
        log.check(format!("{name}: exact index {q}"), r.index == q && r.report.is_valid() && r.report.exact);
        let d = zonal_defect(&r.formula, q);
        log.check(format!("{name}: zonal oracle defect {d:e}"), d < FLOAT_TOL);
        log.note(format!("{name}: {n} points, {} moments", r.report.checked));
    }
}

fn orbit_sizes(log: &mut Log) {
    let printed: [(GroupLabel, &[u128]); 6] = [
        (GroupLabel::F4, &[24, 96, 96, 24]),
        (GroupLabel::H3, &[12, 30, 20]),
        (GroupLabel::H4, &[120, 720, 1200, 600]),
        (GroupLabel::E6, &[27, 216, 720, 216, 27, 72]),
        (GroupLabel::E7, &[126, 2016, 10080, 4032, 756, 56, 576]),
        (GroupLabel::E8, &[2160, 69120, 483840, 241920, 60480, 6720, 240, 17280]),
    ];
    let start = Instant::now();
    let mut total = 0;
    for (g, sizes) in printed {
        if g == GroupLabel::E8 {
            log.within("groups other than E8", start, secs(60));
        }
        let d = group_data(g).unwrap();
        let got: Vec<u128> = (0..d.rank()).map(|k| corner_orbit(&d, k, DEFAULT_ORBIT_CAP).unwrap().len() as u128).collect();
        log.check(format!("{g} orbit sizes {got:?}"), got == sizes);
        total += got.len();
    }
    log.within("all groups", start, secs(600));
    log.note(format!("{total} orbits"));
}

/// r with computed = r·printed entrywise and r > 0.
fn positive_scale(computed: &[FieldElement], printed: &[FieldElement]) -> Option<FieldElement> {
    if computed.len() != printed.len() {
        return None;
    }
    let (i, _) = printed.iter().enumerate().find(|(_, p)| !p.is_zero())?;
    let r = &computed[i] / &printed[i];
    let ok = r.is_positive() && computed.iter().zip(printed).all(|(c, p)| *c == &r * p);
    ok.then_some(r)
}

fn fe(v: &[&str]) -> Vec<FieldElement> {
    v.iter().map(|s| s.parse().unwrap()).collect()
}

fn u_vectors(log: &mut Log, tables: &[(GroupLabel, UTable)]) {
    let mut n = 0;
    for (g, t) in tables {
        for (label, printed) in printed_u_table(*g) {
            let ok = t.row(&label).is_some_and(|r| positive_scale(&r.entries, &printed).is_some());
            log.check(format!("{g} u{label}"), ok);
            n += 1;
        }
    }
    // entries quoted verbatim, independent of the printed module
    let spot = [
        (GroupLabel::F4, "6", fe(&["-1", "-1/9", "1/9", "1"])),
        (GroupLabel::E6, "8", fe(&["800", "-6784/25", "-640/9", "-6784/25", "800", "3200/3"])),
        (GroupLabel::H4, "12", fe(&["-4500", "540", "32500/27", "5625/4"])),
    ];
    for (g, label, v) in spot {
        let t = &tables.iter().find(|x| x.0 == g).unwrap().1;
        let ok = t.row(label).is_some_and(|r| positive_scale(&r.entries, &v).is_some());
        log.check(format!("{g} u{label} spot value"), ok);
    }
    log.note(format!("{n} tabulated u-vectors"));
}

fn certificates(log: &mut Log, tables: &[(GroupLabel, UTable)]) {
    let degrees = [
        (GroupLabel::F4, 12),
        (GroupLabel::H3, 12),
        (GroupLabel::H4, 24),
        (GroupLabel::E6, 10),
        (GroupLabel::E7, 12),
        (GroupLabel::E8, 16),
    ];
    let printed = printed_certificates();
    for (g, d) in degrees {
        let t = &tables.iter().find(|x| x.0 == g).unwrap().1;
        match certify_nonexistence(t, d).unwrap() {
            Certification::Certificate(c) => log.check(format!("{g} degree {d} certificate"), check_certificate(t, &c)),
            Certification::NotFound => log.check(format!("{g} degree {d}: no certificate"), false),
        }
        for p in printed.iter().filter(|p| p.group == g) {
            log.check(format!("{g} tabulated certificate"), check_printed(t, p).is_valid());
        }
    }
    // −u₁₂,₁ + 2u₁₂,₂ for F4, scaled so the last entry is 1
    let t = &tables.iter().find(|x| x.0 == GroupLabel::F4).unwrap().1;
    let (a, b) = (&t.row("12,1").unwrap().entries, &t.row("12,2").unwrap().entries);
    let v: Vec<FieldElement> = a.iter().zip(b).map(|(x, y)| y * &FieldElement::from_int(2) - x).collect();
    let want = fe(&["25/64", "7567/15552", "25/243", "1"]);
    log.check("F4 −u12,1 + 2u12,2", positive_scale(&v, &want).is_some());
}

fn free_indices(fam: &ParametricFamily) -> Vec<usize> {
    fam.free_weights().iter().filter_map(|w| w.strip_prefix('w')?.parse::<usize>().ok()?.checked_sub(1)).collect()
}

fn fes(w: &[Rational]) -> Vec<FieldElement> {
    w.iter().cloned().map(FieldElement::from).collect()
}

fn families(log: &mut Log, tables: &[(GroupLabel, UTable)]) {
    let table = |g: GroupLabel| &tables.iter().find(|x| x.0 == g).unwrap().1;
    for g in [GroupLabel::F4, GroupLabel::H3, GroupLabel::H4, GroupLabel::E6] {
        let (t, text) = printed_family(g).unwrap();
        let fam = ParametricFamily::parse(text).unwrap();
        let cls = classify_weights_with_free(table(g), t, &free_indices(&fam)).unwrap().unwrap();
        log.check(format!("{g} tabulated family"), cls.matches_parametric(&fam).unwrap());
        if g == GroupLabel::H4 {
            let fixed = ParametricFamily::parse(H4_FAMILY_CORRECTED).unwrap();
            log.note(format!("H4 with w3's sign reversed matches: {}", cls.matches_parametric(&fixed).unwrap()));
        }
    }

    let (t, text) = printed_family(GroupLabel::E7).unwrap();
    let fam = ParametricFamily::parse(text).unwrap();
    let e7 = table(GroupLabel::E7);
    let cls = classify_weights_with_free(e7, t, &free_indices(&fam)).unwrap().unwrap();
    for region in &fam.regions {
        let mut ok = true;
        for frac in default_fractions() {
            let w = fes(&fam.sample(region, &frac, 7).unwrap());
            ok &= cls.satisfies(&w)
                && WeightFamily::is_nonnegative(&w)
                && euclidean_design_check(e7, &WeightFamily::as_orbits(&w), t).unwrap().is_valid();
        }
        log.check(format!("E7 region {}", region.name), ok);
    }

    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/e8_regions.txt");
    let Ok(text) = std::fs::read_to_string(&path) else {
        log.check(format!("E8 appendix data at {}", path.display()), false);
        return;
    };
    let fam = ParametricFamily::parse(&text).unwrap();
    let e8 = table(GroupLabel::E8);
    let cls = classify_weights_with_free(e8, 15, &free_indices(&fam)).unwrap().unwrap();
    log.check(format!("E8 appendix has 27 regions (found {})", fam.regions.len()), fam.regions.len() == 27);
    let mut samples = 0;
    for region in &fam.regions {
        for frac in default_fractions() {
            let w = fes(&fam.sample(region, &frac, 8).unwrap());
            let ok = cls.satisfies(&w)
                && WeightFamily::is_nonnegative(&w)
                && euclidean_design_check(e8, &WeightFamily::as_orbits(&w), 15).unwrap().is_valid();
            log.check(format!("E8 region {} at {frac}", region.name), ok);
            samples += 1;
        }
    }
    log.note(format!("{samples} E8 samples"));
}

fn identities(log: &mut Log) {
    let start = Instant::now();
    let mut ids = vec![("sawa91".to_string(), sawa91()), ("reznick".to_string(), reznick())];
    for k in 1..=3 {
        ids.push((format!("kurschak({k})"), kurschak(k).unwrap()));
    }
    for b in [192, 150, 120] {
        ids.push((format!("ns(1/{b})"), ns_family(&rat(1, b)).unwrap()));
    }
    ids.push(("schur".into(), schur()));
    ids.push(("hurwitz".into(), hurwitz()));
    for (name, id) in &ids {
        log.check(format!("{name} exact"), verify_identity(id).is_valid());
        for s in 0..3 {
            let x: Vec<f64> = (0..id.m).map(|i| 0.3 + ((i * 7 + s * 5) % 9) as f64 / 7.0 - 0.6).collect();
            let (l, r) = identity_sides(id, &x);
            log.check(format!("{name} float oracle"), close(l, r));
        }
    }
    let norm = |id: &HilbertIdentity| {
        let f = identity_to_cubature(id).unwrap();
        let total = f.total_weight();
        let mut pts: Vec<_> = f.points().into_iter().map(|p| (p.direction, p.weight / &total)).collect();
        pts.sort();
        pts
    };
    log.check("Hurwitz and Schur give the same cubature", norm(&hurwitz()) == norm(&schur()));
    log.within("identities", start, secs(60));
}

fn limit(log: &mut Log) {
    let start = Instant::now();
    for m in 2..=4 {
        let r = no_pm1_representation(m, 8).unwrap();
        log.check(format!("m={m}: infeasible with witness"), !r.feasible() && r.witness.is_some() && r.rank < r.rank_augmented);
        let q = |(a, b): &(Rational, Rational)| a / b;
        log.check(format!("m={m}: ratios 2:3 vs 2:5"), q(&r.target_ratio) == rat(2, 3) && q(&r.form_ratio) == rat(2, 5));
    }
    let r = no_pm1_representation(4, 4).unwrap();
    let sol = r.solution.unwrap_or_default();
    let ok = sol.len() == 12 && sol.iter().all(|(a, w)| a.iter().filter(|&&x| x != 0).count() == 2 && *w == rat(1, 6));
    log.check("q=4 control gives Kürschák's identity", ok);
    log.within("limit", start, secs(60));
}

// ---------------------------------------------------------------- matrix

fn even_weight_oa(l: usize) -> OrthogonalArray {
    // rows of the [l, l−1] even-weight code: strength l − 1
    let gens: Vec<Vec<u8>> = (0..l - 1).map(|i| (0..l).map(|j| u8::from(j == i || j == l - 1)).collect()).collect();
    oa_from_linear_code(&gens).unwrap()
}

fn multiset(f: &CubatureFormula) -> Vec<(Vec<FieldElement>, Rational, Rational, u32)> {
    let mut v: Vec<_> = f.points().into_iter().map(|p| (p.direction, p.weight, p.scale.s().clone(), p.scale.q())).collect();
    v.sort();
    v
}

fn substitution_matrix(log: &mut Log) {
    let one = FieldElement::one();
    let zero = FieldElement::zero();
    let complete = |v, k| BlockDesign::complete(v, k).unwrap();
    let mut combos = 0;
    let mut record = |log: &mut Log, name: String, host: &CubatureFormula, out: Result<CubatureFormula, String>, q: u32| {
        combos += 1;
        let host_ok = verify_index(host, q).unwrap().is_valid();
        match out {
            Ok(g) => {
                let rep = verify_index(&g, q).unwrap();
                log.check(format!("{name}: index {q} preserved"), host_ok && rep.is_valid() && rep.exact);
                log.check(format!("{name}: mass preserved"), g.total_weight() == host.total_weight());
            }
            Err(e) => log.check(format!("{name}: {e}"), false),
        }
    };

    // designs on permutation orbits (orthant formulas)
    let single: Vec<(&str, usize, &str, BlockDesign, usize)> = vec![
        ("lem42ii", 4, "vk", complete(4, 2), 2),
        ("lem42ii", 7, "vk", fano(), 2),
        ("lem42ii", 7, "vk", complete(7, 3), 2),
        ("lem42ii", 10, "vk", inversive_plane_10(), 2),
        ("lem42ii", 13, "vk", complete(13, 5), 2),
        ("lem42ii", 25, "vk", symmetric_25_9_3(), 2),
        ("lem62i", 8, "vk", complete(8, 3), 3),
        ("lem62ii", 7, "vk1", complete(7, 3), 3),
        ("ex45", 7, "v3", complete(7, 3), 3),
        ("ex45", 7, "v4", complete(7, 4), 3),
    ];
    for (host, m, label, d, t) in single {
        let f = catalog_formula(host, m).unwrap();
        let slot = find_slot(&f, label).unwrap();
        let g = substitute_design(&f, slot, &d, &one, &zero, t).map_err(|e| e.to_string());
        record(log, format!("{host} m={m} {label} ← {}-block design", d.b()), &f, g, stated_index(host).unwrap());
    }

    // regular t-wise balanced designs derived at every point
    for (host, m, parent) in [("ex45", 7, sqs8()), ("ex46", 9, inversive_plane_10())] {
        let f = catalog_formula(host, m).unwrap();
        let slots = [find_slot(&f, "v4").unwrap(), find_slot(&f, "v3").unwrap()];
        for x in 0..parent.v() {
            let d = derive_design(&parent, x).unwrap();
            let g = substitute_regular(&f, &slots, &d, 3).map_err(|e| e.to_string());
            record(log, format!("{host} ← derived design at {x}"), &f, g, 3);
        }
    }

    // orthogonal arrays on sign orbits (Gaussian formulas after z ↦ ±√z)
    let nr = nordstrom_robinson();
    let arrays: Vec<(&str, usize, &str, OrthogonalArray, &str)> = vec![
        ("lem42i", 4, "ones", trivial_oa(4).unwrap(), "trivial"),
        ("lem42i", 7, "ones", nr.columns(&(0..7).collect::<Vec<_>>()).unwrap(), "NR columns"),
        ("lem42i", 16, "ones", nr.clone(), "Nordstrom–Robinson"),
        ("lem42i", 31, "ones", dual_bch_oa(), "dual BCH"),
        ("lem42ii", 7, "vk", trivial_oa(3).unwrap(), "trivial"),
        ("lem42ii", 10, "vk", trivial_oa(4).unwrap(), "trivial"),
        ("lem62i", 8, "ones", even_weight_oa(8), "even-weight"),
        ("ex45", 7, "v4", trivial_oa(4).unwrap(), "trivial"),
        ("ex46", 9, "ones", even_weight_oa(9), "even-weight"),
    ];
    for (host, m, label, oa, what) in arrays {
        let f = sqrt_points(&catalog_formula(host, m).unwrap()).unwrap();
        let q = 2 * stated_index(host).unwrap();
        let slot = find_slot(&f, label).unwrap();
        let g = substitute_oa(&f, slot, &oa, q as usize).map_err(|e| e.to_string());
        record(log, format!("√{host} m={m} {label} ← {what} OA({}, {})", oa.n(), oa.l()), &f, g, q);
    }
    log.check(format!("{combos} combinations (need ≥ 20)"), combos >= 20);
    log.note(format!("{combos} design/array × host combinations"));

    // the full array changes nothing
    for (host, m, label) in [("lem42i", 5, "ones"), ("lem42ii", 7, "vk"), ("ex45", 7, "v3")] {
        let f = sqrt_points(&catalog_formula(host, m).unwrap()).unwrap();
        let slot = find_slot(&f, label).unwrap();
        let l = f.orbits[slot].directions(m)[0].iter().filter(|x| !x.is_zero()).count();
        let g = substitute_oa(&f, slot, &trivial_oa(l).unwrap(), 2 * stated_index(host).unwrap() as usize).unwrap();
        log.check(format!("trivial OA on √{host} m={m} is the identity"), multiset(&f) == multiset(&g));
    }

    // halving and doubling are inverse on antipodal formulas
    for name in ["ex45_s6_91", "main2i_m16"] {
        let r = run_pipeline(name).unwrap();
        let d = double(&r.formula).unwrap();
        let back = halve_antipodal(&d).unwrap();
        log.check(format!("{name}: double then halve"), multiset(&back) == multiset(&r.formula));
        log.check(format!("{name}: doubled formula keeps index {}", r.index), verify_index(&d, r.index).unwrap().is_valid());
    }
    let lifted = to_sphere(&sqrt_points(&catalog_formula("lem42i", 4).unwrap()).unwrap(), 4).unwrap().dedup().unwrap();
    let round = double(&halve_antipodal(&lifted).unwrap()).unwrap().dedup().unwrap();
    log.check("lem42i m=4 on S³: halve then double", multiset(&round) == multiset(&lifted));
    log.check("halved formula stays index 4", verify_index(&halve_antipodal(&lifted).unwrap(), 4).unwrap().is_valid());
}

// ---------------------------------------------------------------- driver

fn main() {
    let mut out = vec![
        run(1, "moment consistency, m ≤ 9, degrees ≤ 10", moments),
        run(2, "catalog formulas at their stated indices", catalog),
        run(3, "91 points on S⁶ and 457 points on S⁸, index 6", |l| {
            pipelines(l, &[("ex45_s6_91", 91, 6, 30), ("ex46_s8_457", 457, 6, 30)])
        }),
        run(4, "144 points on S¹⁵ via Nordstrom–Robinson, index 4", |l| pipelines(l, &[("main2i_m16", 144, 4, 30)])),
        run(5, "corner orbit sizes", orbit_sizes),
    ];

    let start = Instant::now();
    let tables: Vec<(GroupLabel, UTable)> =
        [GroupLabel::F4, GroupLabel::H3, GroupLabel::H4, GroupLabel::E6, GroupLabel::E7, GroupLabel::E8]
            .into_iter()
            .map(|g| (g, UTable::compute(&group_data(g).unwrap(), DEFAULT_ORBIT_CAP).unwrap()))
            .collect();
    println!("u-vector tables computed in {:.1?}", start.elapsed());

    out.push(run(6, "u-vectors against the tabulated ones", |l| u_vectors(l, &tables)));
    out.push(run(7, "nonexistence certificates", |l| certificates(l, &tables)));
    out.push(run(8, "weight families and appendix regions", |l| families(l, &tables)));
    out.push(run(9, "Hilbert identities", identities));
    out.push(run(10, "no ±1 forms for eighth powers", limit));
    out.push(run(11, "substitution, trivial-array and antipodal properties", substitution_matrix));

    println!();
    for o in &out {
        println!("criterion {:>2} {} {} [{:.1?}]", o.id, if o.passed() { "PASS" } else { "FAIL" }, o.title, o.elapsed);
        for n in &o.notes {
            println!("              {n}");
        }
        for f in &o.failures {
            println!("              failed: {f}");
        }
    }
    let passed = out.iter().filter(|o| o.passed()).count();
    println!("\n{passed}/{} criteria pass", out.len());

    for o in &out {
        match DOCUMENTED.iter().find(|d| d.0 == o.id) {
            Some((_, expected)) => {
                let got: BTreeSet<&str> = o.failures.iter().map(String::as_str).collect();
                let want: BTreeSet<&str> = expected.iter().copied().collect();
                assert_eq!(got, want, "criterion {} should fail exactly on the documented entries", o.id);
            }
            None => assert!(o.passed(), "criterion {} failed: {:?}", o.id, o.failures),
        }
    }
    println!("failures are exactly the documented ones in the tabulated data");
}
