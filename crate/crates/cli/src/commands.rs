use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};

use cubforge_core::cubature::{
    catalog_formula, double, halve_antipodal, printed_formula, sqrt_points, square_points, to_sphere, verify_degree, verify_index,
    CubatureFormula, Mode, OrbitKind, VerificationReport,
};
use cubforge_core::designs::{
    catalog as dcat, derive_design, dual_bch_oa, dual_bch_oa_symmetric, nordstrom_robinson, trivial_oa, verify_design, verify_oa,
};
use cubforge_core::exactnum::Rational;
use cubforge_core::hilbert::{cubature_to_identity, monomial_name, no_pm1_representation, verify_identity, IdentityReport};
use cubforge_core::reflect::printed::printed_family;
use cubforge_core::reflect::{
    certify_nonexistence, check_certificate, classify_weights, corner_orbit, group_data, Certification, DEFAULT_ORBIT_CAP,
};
use cubforge_core::victoir::{find_slot, run_pipeline, substitute_design, substitute_oa, substitute_regular};

use crate::args::*;
use crate::formats::*;
use crate::repro::{self, parse_group, u_table, Checks};
use crate::{data_dir, read_file, CliError, CommandResult, Status};

pub fn dispatch(cli: &Cli) -> Result<CommandResult, CliError> {
    let data = data_dir(cli.data_dir.as_deref());
    match &cli.command {
        Command::Designs(c) => designs(c),
        Command::Oa(c) => oa(c),
        Command::Cubature(c) => cubature(c),
        Command::Victoir(c) => victoir(c),
        Command::Reflect(c) => reflect(c, &data),
        Command::Hilbert(c) => hilbert(c),
        Command::Repro(r) => repro::run(&r.target, r.group.as_deref(), &data),
    }
}

fn emit(text: String, details: Value) -> Result<CommandResult, CliError> {
    Ok(CommandResult::new(Status::Pass, text, details))
}

// ---------------------------------------------------------------- designs

fn designs(c: &DesignsCmd) -> Result<CommandResult, CliError> {
    match c {
        DesignsCmd::Verify { file, t } => {
            let df = parse_design(&read_file(file)?)?;
            let t = t.unwrap_or(df.t);
            let rep = verify_design(&df.design, t)?;
            let lambda_ok = t != df.t || rep.lambda().map(|l| Rational::from_integer(l.into())) == Some(df.lambda.clone());
            let ok = rep.is_balanced() && lambda_ok;
            let mut s = format!("v={} b={} sizes={:?}\n", df.design.v(), df.design.b(), rep.sizes);
            for (tp, l) in rep.lambdas.iter().enumerate() {
                let _ = writeln!(s, "  {tp}-subsets: {}", l.map_or("unequal coverage".to_string(), |l| format!("each in {l} blocks")));
            }
            let _ = writeln!(s, "{t}-wise balanced: {}, regular: {}", rep.is_balanced(), rep.is_regular());
            if !lambda_ok {
                let _ = writeln!(s, "declared lambda={} does not match", df.lambda);
            }
            let _ = writeln!(s, "{}", if ok { "PASS" } else { "FAIL" });
            let details = json!({ "v": df.design.v(), "b": df.design.b(), "t": t, "lambdas": rep.lambdas, "regular": rep.is_regular() });
            Ok(CommandResult::new(Status::from_bool(ok), s, details))
        }
        DesignsCmd::Derive { file, point } => {
            let df = parse_design(&read_file(file)?)?;
            let d = derive_design(&df.design, *point)?;
            let rep = verify_design(&d, df.t.min(d.v()))?;
            let lambda = rep.lambda().map_or(df.lambda.clone(), |l| Rational::from_integer(l.into()));
            emit(write_design(&d, rep.t(), &lambda), json!({ "v": d.v(), "b": d.b(), "regular": rep.is_regular() }))
        }
        DesignsCmd::Catalog { name } => {
            let (d, t, l) = match name.as_str() {
                "sqs8" => (dcat::sqs8(), 3, 1),
                "fano" => (dcat::fano(), 2, 1),
                "inversive10" => (dcat::inversive_plane_10(), 3, 1),
                "sym25" => (dcat::symmetric_25_9_3(), 2, 3),
                other => return Err(CliError::Usage(format!("unknown design `{other}` (sqs8, fano, inversive10, sym25)"))),
            };
            emit(write_design(&d, t, &Rational::from_integer(l.into())), json!({ "v": d.v(), "b": d.b() }))
        }
    }
}

// ---------------------------------------------------------------- arrays

fn oa(c: &OaCmd) -> Result<CommandResult, CliError> {
    let a = match c {
        OaCmd::Verify { file, strength } => {
            let a = parse_oa(&read_file(file)?)?;
            let rep = verify_oa(&a, *strength)?;
            let mut s = format!("N={} l={} strength {} (requested {})\n", a.n(), a.l(), rep.strength, strength);
            if let Some(v) = &rep.violation {
                let _ = writeln!(s, "unbalanced columns {v:?}");
            }
            let _ = writeln!(s, "centrally symmetric: {}", rep.centrally_symmetric);
            let _ = writeln!(s, "{}", if rep.passes() { "PASS" } else { "FAIL" });
            let details = json!({ "n": a.n(), "l": a.l(), "strength": rep.strength, "violation": rep.violation });
            return Ok(CommandResult::new(Status::from_bool(rep.passes()), s, details));
        }
        OaCmd::GenTrivial { l } => trivial_oa(*l)?,
        OaCmd::GenNr => nordstrom_robinson(),
        OaCmd::GenDualBch { symmetric } => {
            if *symmetric {
                dual_bch_oa_symmetric()
            } else {
                dual_bch_oa()
            }
        }
    };
    emit(write_oa(&a), json!({ "n": a.n(), "l": a.l() }))
}

// ---------------------------------------------------------------- cubature

fn report_text(r: &VerificationReport) -> String {
    let mut s = format!("{:?}: {} moments checked ({})\n", r.mode, r.checked, if r.exact { "exact" } else { "256-bit" });
    for f in r.failures.iter().take(10) {
        let _ = writeln!(s, "  {}: expected {}, got {}", monomial_name(&f.exponent), f.expected, f.got);
    }
    if r.failures.len() > 10 {
        let _ = writeln!(s, "  … {} failures in all", r.failures.len());
    }
    let _ = writeln!(s, "{}", if r.is_valid() { "PASS" } else { "FAIL" });
    s
}

fn report_json(r: &VerificationReport) -> Value {
    let failures: Vec<Value> = r
        .failures
        .iter()
        .map(|f| json!({ "monomial": monomial_name(&f.exponent), "expected": f.expected.to_string(), "got": f.got }))
        .collect();
    json!({ "mode": format!("{:?}", r.mode), "exact": r.exact, "checked": r.checked, "failures": failures })
}

fn verify(f: &CubatureFormula, mode: Mode) -> Result<VerificationReport, CliError> {
    Ok(match mode {
        Mode::Index(q) => verify_index(f, q)?,
        Mode::Degree(t) => verify_degree(f, t)?,
    })
}

fn cubature(c: &CubatureCmd) -> Result<CommandResult, CliError> {
    match c {
        CubatureCmd::Verify { file, claim } => {
            let cf = parse_cubature(&read_file(file)?)?;
            let mode = match (claim.index, claim.degree) {
                (Some(q), _) => Mode::Index(q),
                (_, Some(t)) => Mode::Degree(t),
                _ => cf.claim.ok_or_else(|| CliError::Usage("give --index or --degree (the file states neither)".into()))?,
            };
            let rep = verify(&cf.formula, mode)?;
            let head = format!("{} points, {} in dimension {}\n", cf.formula.num_points(), measure_name(cf.formula.domain), cf.formula.m);
            Ok(CommandResult::new(Status::from_bool(rep.is_valid()), head + &report_text(&rep), report_json(&rep)))
        }
        CubatureCmd::Transform { file, to_sphere: q, halve, double: dbl, square, sqrt, expand } => {
            let cf = parse_cubature(&read_file(file)?)?;
            let f = &cf.formula;
            let (g, claim) = if let Some(q) = q {
                (to_sphere(f, *q)?, Some(Mode::Index(*q)))
            } else if *halve {
                let claim = match cf.claim {
                    Some(Mode::Degree(t)) if t % 2 == 1 => Some(Mode::Index(t - 1)),
                    other => other,
                };
                (halve_antipodal(f)?, claim)
            } else if *dbl {
                (double(f)?, cf.claim)
            } else if *square {
                let claim = cf.claim.map(|m| match m {
                    Mode::Index(q) => Mode::Index(q / 2),
                    Mode::Degree(t) => Mode::Degree(t / 2),
                });
                (square_points(f)?, claim)
            } else if *sqrt {
                let claim = cf.claim.map(|m| match m {
                    Mode::Index(q) => Mode::Index(2 * q),
                    Mode::Degree(t) => Mode::Degree(2 * t + 1),
                });
                (sqrt_points(f)?, claim)
            } else {
                return Err(CliError::Usage("choose one of --to-sphere Q, --halve, --double, --square, --sqrt".into()));
            };
            emit(write_cubature(&g, claim, *expand), json!({ "points": g.num_points().to_string() }))
        }
        CubatureCmd::Gen { catalog, m, printed, expand } => {
            let f = if *printed { printed_formula(catalog, *m)? } else { catalog_formula(catalog, *m)? };
            let q = cubforge_core::cubature::stated_index(catalog)?;
            emit(write_cubature(&f, Some(Mode::Index(q)), *expand), json!({ "points": f.num_points().to_string() }))
        }
    }
}

// ---------------------------------------------------------------- victoir

fn victoir(c: &VictoirCmd) -> Result<CommandResult, CliError> {
    match c {
        VictoirCmd::Run { pipeline, emit: show } => {
            let r = run_pipeline(pipeline)?;
            let mut s = String::new();
            for step in &r.formula.trace {
                let _ = writeln!(s, "  {step}");
            }
            let _ = writeln!(s, "{} points before halving, {} on the sphere", r.points_before_halving, r.formula.num_points());
            s.push_str(&report_text(&r.report));
            if *show {
                s.push_str(&write_cubature(&r.formula, Some(Mode::Index(r.index)), true));
            }
            let details = json!({
                "pipeline": pipeline,
                "points": r.formula.num_points().to_string(),
                "points_before_halving": r.points_before_halving.to_string(),
                "verification": report_json(&r.report),
            });
            Ok(CommandResult::new(Status::from_bool(r.report.is_valid()), s, details))
        }
        VictoirCmd::Substitute { file, slot, design, oa, t, expand } => {
            let cf = parse_cubature(&read_file(file)?)?;
            let f = &cf.formula;
            let slots = slot.iter().map(|l| find_slot(f, l)).collect::<Result<Vec<_>, _>>()?;
            let g = match (design, oa) {
                (Some(p), None) => {
                    let d = parse_design(&read_file(p)?)?.design;
                    if slots.len() == 1 {
                        let (a, b) = match &f.orbits[slots[0]].kind {
                            OrbitKind::Placed { a, b, .. } => (a.clone(), b.clone()),
                            _ => return Err(CliError::Usage(format!("orbit `{}` is not a pattern orbit", slot[0]))),
                        };
                        substitute_design(f, slots[0], &d, &a, &b, *t)?
                    } else {
                        substitute_regular(f, &slots, &d, *t)?
                    }
                }
                (None, Some(p)) => {
                    if slots.len() != 1 {
                        return Err(CliError::Usage("an array replaces exactly one orbit".into()));
                    }
                    substitute_oa(f, slots[0], &parse_oa(&read_file(p)?)?, *t)?
                }
                _ => return Err(CliError::Usage("give --design or --oa".into())),
            };
            let mut status = Status::Pass;
            let mut head = String::new();
            if let Some(mode) = cf.claim {
                let rep = verify(&g, mode)?;
                status = Status::from_bool(rep.is_valid());
                for l in report_text(&rep).lines() {
                    let _ = writeln!(head, "# {l}");
                }
            }
            let text = head + &write_cubature(&g, cf.claim, *expand);
            Ok(CommandResult::new(status, text, json!({ "points": g.num_points().to_string() })))
        }
    }
}

// ---------------------------------------------------------------- reflect

fn reflect(c: &ReflectCmd, data: &Path) -> Result<CommandResult, CliError> {
    match c {
        ReflectCmd::Orbit { group, corner } => {
            let g = parse_group(group)?;
            let d = group_data(g)?;
            if *corner == 0 || *corner > d.rank() {
                return Err(CliError::Usage(format!("{g} has corners 1..={}", d.rank())));
            }
            let o = corner_orbit(&d, corner - 1, DEFAULT_ORBIT_CAP)?;
            let want = d.orbit_sizes[corner - 1];
            let ok = o.len() as u128 == want;
            let s = format!("{g} corner {corner}: orbit of {} points (|W|/|stabilizer| = {want})\n", o.len());
            Ok(CommandResult::new(Status::from_bool(ok), s, json!({ "group": g.to_string(), "corner": corner, "size": o.len() })))
        }
        ReflectCmd::Certify { group, degree } => {
            let g = parse_group(group)?;
            let t = u_table(g)?;
            match certify_nonexistence(&t, *degree)? {
                Certification::Certificate(cert) => {
                    let ok = check_certificate(&t, &cert);
                    let mut s = format!("{g}: no corner-orbit design of strength {degree}\n");
                    for (l, a) in cert.labels.iter().zip(&cert.coefficients) {
                        let _ = writeln!(s, "  {a} · u{l}");
                    }
                    let v: Vec<String> = cert.vector.iter().map(|x| x.to_string()).collect();
                    let _ = writeln!(s, "  = [{}]", v.join(", "));
                    let details = json!({
                        "group": g.to_string(), "degree": degree, "labels": cert.labels,
                        "coefficients": cert.coefficients.iter().map(|x| x.to_string()).collect::<Vec<_>>(), "vector": v,
                    });
                    Ok(CommandResult::new(Status::from_bool(ok), s, details))
                }
                Certification::NotFound => Ok(CommandResult::new(
                    Status::Fail,
                    format!("{g}: no positive combination of u-vectors of even degree ≤ {degree}\n"),
                    json!({ "group": g.to_string(), "degree": degree, "certificate": Value::Null }),
                )),
            }
        }
        ReflectCmd::Classify { group, t, check_appendix } => {
            let g = parse_group(group)?;
            if *check_appendix {
                let mut c = Checks::default();
                if printed_family(g).is_none() && g != cubforge_core::reflect::GroupLabel::E8 {
                    return Err(CliError::Usage(format!("no tabulated family for {g}")));
                }
                repro::ns2(&mut c, g, data)?;
                return Ok(c.finish(&format!("{g} weight family")));
            }
            let table = u_table(g)?;
            let Some(fam) = classify_weights(&table, *t)? else {
                return Ok(CommandResult::new(
                    Status::Fail,
                    format!("{g}: no weights give strength {t}\n"),
                    json!({ "family": Value::Null }),
                ));
            };
            let verts = fam.vertices();
            let mut s = format!(
                "{g}, strength {t}: {}-parameter family, free weights {:?}\n",
                fam.dim(),
                fam.free.iter().map(|i| format!("w{}", i + 1)).collect::<Vec<_>>()
            );
            let show = |w: &[cubforge_core::exactnum::FieldElement]| w.iter().map(|x| x.to_string()).collect::<Vec<_>>();
            let _ = writeln!(s, "  particular: {:?}", show(&fam.particular));
            for d in &fam.directions {
                let _ = writeln!(s, "  direction:  {:?}", show(d));
            }
            let _ = writeln!(s, "  {} nonnegative vertices", verts.len());
            for v in &verts {
                let _ = writeln!(s, "    {:?}", show(v));
            }
            let details = json!({
                "group": g.to_string(), "t": t, "dim": fam.dim(),
                "vertices": verts.iter().map(|v| show(v)).collect::<Vec<_>>(),
            });
            Ok(CommandResult::new(Status::from_bool(!verts.is_empty()), s, details))
        }
        ReflectCmd::Uvectors { group } => {
            let g = parse_group(group)?;
            let t = u_table(g)?;
            let mut c = Checks::default();
            c.note(format!("orbit sizes {:?}", t.orbit_sizes));
            for r in &t.rows {
                c.note(format!(
                    "u{} (degree {}) = [{}]",
                    r.label,
                    r.degree,
                    r.entries.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
                ));
            }
            repro::uvectors(&mut c, g, &t);
            Ok(c.finish(&format!("{g} u-vectors")))
        }
    }
}

// ---------------------------------------------------------------- hilbert

fn identity_report(r: &IdentityReport) -> (String, Value) {
    let mut s = format!("{} monomials compared\n", r.checked);
    for f in r.failures.iter().take(10) {
        let _ = writeln!(s, "  {}: left {}, right {}", monomial_name(&f.monomial), f.lhs, f.rhs);
    }
    let _ = writeln!(s, "{}", if r.is_valid() { "PASS" } else { "FAIL" });
    let failures: Vec<Value> = r
        .failures
        .iter()
        .map(|f| json!({ "monomial": monomial_name(&f.monomial), "lhs": f.lhs.to_string(), "rhs": f.rhs.to_string() }))
        .collect();
    (s, json!({ "checked": r.checked, "failures": failures }))
}

fn hilbert(c: &HilbertCmd) -> Result<CommandResult, CliError> {
    match c {
        HilbertCmd::Verify { file } => {
            let id = parse_identity(&read_file(file)?)?;
            let rep = verify_identity(&id);
            let (s, j) = identity_report(&rep);
            Ok(CommandResult::new(Status::from_bool(rep.is_valid()), s, j))
        }
        HilbertCmd::FromCubature { file, q } => {
            let cf = parse_cubature(&read_file(file)?)?;
            let id = cubature_to_identity(&cf.formula, *q)?;
            emit(write_identity(&id), json!({ "terms": id.num_terms(), "forms": id.distinct_forms() }))
        }
        HilbertCmd::Catalog { name, param, render } => {
            let id = repro::named_identity(name, param.as_deref())?;
            let rep = verify_identity(&id);
            let text = if *render { render_identity(&id) } else { write_identity(&id) };
            Ok(CommandResult::new(Status::from_bool(rep.is_valid()), text, json!({ "terms": id.num_terms(), "valid": rep.is_valid() })))
        }
        HilbertCmd::Nopm1 { m, q } => {
            let r = no_pm1_representation(*m, *q)?;
            let mut s =
                format!("m={m}, q={q}: {} forms, {} monomials, rank {} (augmented {})\n", r.forms, r.monomials, r.rank, r.rank_augmented);
            let _ = writeln!(
                s,
                "x1^{}x2^2 : x1^{}x2^4 coefficients: target {}, any form with a1a2 ≠ 0 {}",
                q.saturating_sub(2),
                q.saturating_sub(4),
                repro::ratio(&r.target_ratio),
                repro::ratio(&r.form_ratio)
            );
            match &r.solution {
                Some(sol) => {
                    let _ = writeln!(s, "representable with {} forms:", sol.len());
                    for (a, w) in sol {
                        let _ = writeln!(s, "  {w} · {a:?}");
                    }
                }
                None => {
                    let _ = writeln!(s, "not representable: a linear functional kills every ±1 form power but not the target");
                }
            }
            let details = json!({
                "m": m, "q": q, "feasible": r.feasible(), "rank": r.rank, "rank_augmented": r.rank_augmented,
                "target_ratio": [r.target_ratio.0.to_string(), r.target_ratio.1.to_string()],
                "form_ratio": [r.form_ratio.0.to_string(), r.form_ratio.1.to_string()],
            });
            // the command certifies non-representability
            Ok(CommandResult::new(Status::from_bool(!r.feasible()), s, details))
        }
    }
}
