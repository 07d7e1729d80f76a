use cubforge_core::victoir::{run_pipeline, PIPELINES};

#[test]
fn every_pipeline_verifies() {
    for name in PIPELINES {
        let r = run_pipeline(name).unwrap();
        println!("{name}: {} -> {} points, exact={}", r.points_before_halving, r.formula.num_points(), r.report.exact);
        assert!(r.report.is_valid(), "{name}");
        assert!(r.report.exact, "{name}");
        assert_eq!(r.formula.domain, cubforge_core::moments::Measure::Sphere);
    }
}

#[test]
fn ex46_has_457_points() {
    let r = run_pipeline("ex46_s8_457").unwrap();
    assert_eq!(r.points_before_halving, 914);
    assert_eq!(r.formula.num_points(), 457);
}
