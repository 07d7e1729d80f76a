//! Text formats for designs, orthogonal arrays, cubature formulas and
//! Hilbert identities.

use std::fmt::Write as _;

use cubforge_core::cubature::{CubatureFormula, Direction, Mode, Orbit, OrbitKind, PatternGroup, RadialScale};
use cubforge_core::designs::{BlockDesign, OrthogonalArray};
use cubforge_core::exactnum::{parse_rational, FieldElement, Rational};
use cubforge_core::hilbert::HilbertIdentity;
use cubforge_core::moments::Measure;

use crate::CliError;

fn bad(line: usize, msg: impl std::fmt::Display) -> CliError {
    CliError::Parse(format!("line {}: {msg}", line + 1))
}

/// Non-empty lines with `#` comments stripped, paired with their 0-based
/// line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i, l))
    })
}

fn rational(s: &str, line: usize) -> Result<Rational, CliError> {
    parse_rational(s.trim()).ok_or_else(|| bad(line, format!("`{s}` is not a rational number")))
}

fn field(s: &str, line: usize) -> Result<FieldElement, CliError> {
    s.trim().parse().map_err(|e| bad(line, e))
}

// ---------------------------------------------------------------- designs

/// A design file: `v=<int> t=<int> lambda=<rational>` then one block per
/// line, 0-based point indices separated by spaces.
#[derive(Clone, Debug, PartialEq)]
pub struct DesignFile {
    pub design: BlockDesign,
    pub t: usize,
    pub lambda: Rational,
}

pub fn parse_design(text: &str) -> Result<DesignFile, CliError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| CliError::Parse("empty design file".into()))?;
    let (mut v, mut t, mut lambda) = (None, None, None);
    for kv in header.split_whitespace() {
        let (k, val) = kv.split_once('=').ok_or_else(|| bad(hl, format!("expected key=value, got `{kv}`")))?;
        match k {
            "v" => v = Some(val.parse::<usize>().map_err(|e| bad(hl, e))?),
            "t" => t = Some(val.parse::<usize>().map_err(|e| bad(hl, e))?),
            "lambda" => lambda = Some(rational(val, hl)?),
            other => return Err(bad(hl, format!("unknown header key `{other}`"))),
        }
    }
    let v = v.ok_or_else(|| bad(hl, "missing v="))?;
    let mut blocks = Vec::new();
    for (i, l) in lines {
        let b = l.split_whitespace().map(|x| x.parse::<usize>().map_err(|e| bad(i, e))).collect::<Result<Vec<_>, _>>()?;
        blocks.push(b);
    }
    Ok(DesignFile {
        design: BlockDesign::new(v, blocks)?,
        t: t.ok_or_else(|| bad(hl, "missing t="))?,
        lambda: lambda.ok_or_else(|| bad(hl, "missing lambda="))?,
    })
}

pub fn write_design(d: &BlockDesign, t: usize, lambda: &Rational) -> String {
    let mut out = format!("v={} t={t} lambda={lambda}\n", d.v());
    for b in d.blocks() {
        let s: Vec<String> = b.iter().map(usize::to_string).collect();
        out.push_str(&s.join(" "));
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------- arrays

/// One row per line of `+`/`-` characters.
pub fn parse_oa(text: &str) -> Result<OrthogonalArray, CliError> {
    let mut rows = Vec::new();
    for (i, l) in content_lines(text) {
        let row = l
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '+' => Ok(1i8),
                '-' => Ok(-1i8),
                other => Err(bad(i, format!("unexpected `{other}` in array row"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok(OrthogonalArray::from_signs(&rows)?)
}

pub fn write_oa(a: &OrthogonalArray) -> String {
    let mut out = String::with_capacity(a.n() * (a.l() + 1));
    for r in 0..a.n() {
        for c in 0..a.l() {
            out.push(if a.sign(r, c) > 0 { '+' } else { '-' });
        }
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------- cubature

pub fn measure_name(m: Measure) -> &'static str {
    match m {
        Measure::Sphere => "sphere",
        Measure::Gaussian => "gaussian",
        Measure::Orthant => "orthant",
    }
}

pub fn parse_measure(s: &str) -> Option<Measure> {
    match s {
        "sphere" => Some(Measure::Sphere),
        "gaussian" => Some(Measure::Gaussian),
        "orthant" => Some(Measure::Orthant),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CubatureFile {
    pub formula: CubatureFormula,
    /// The `index q` / `degree t` header, if present.
    pub claim: Option<Mode>,
}

fn direction_text(d: &[FieldElement]) -> String {
    d.iter().map(FieldElement::to_compact).collect::<Vec<_>>().join(" ")
}

fn scale_of(s: &str, q: &str, line: usize) -> Result<RadialScale, CliError> {
    let q: u32 = q.parse().map_err(|e| bad(line, e))?;
    Ok(RadialScale::new(rational(s, line)?, q)?)
}

/// Open orbit group while reading point lines.
struct Group {
    label: String,
    signed: bool,
    /// (scale, weight) → points, in first-seen order
    parts: Vec<(RadialScale, Rational, Vec<Direction>)>,
}

impl Group {
    fn push(&mut self, scale: RadialScale, w: Rational, d: Direction) {
        match self.parts.iter_mut().find(|(s, x, _)| *s == scale && *x == w) {
            Some(p) => p.2.push(d),
            None => self.parts.push((scale, w, vec![d])),
        }
    }

    fn close(self, out: &mut Vec<Orbit>) {
        for (s, w, pts) in self.parts {
            let kind = if self.signed { OrbitKind::Signed(pts) } else { OrbitKind::Explicit(pts) };
            out.push(Orbit { scale: s, weight: w, kind, label: self.label.clone() });
        }
    }
}

/// Cubature file:
///
/// ```text
/// domain sphere|gaussian|orthant
/// m <int>
/// index <q> | degree <t>          (optional claim)
/// symmetric                        (optional: closed under x ↦ −x)
/// s q | d1 ... dm | w              (one point; radius s^(1/q))
/// orbit <label>                    (following points form a labelled orbit)
/// orbit <label> signed             (following points are sign-orbit bases)
/// orbit <label> placed k a b L|Bm | s q | w   (all placements of v_k(a, b))
/// ```
pub fn parse_cubature(text: &str) -> Result<CubatureFile, CliError> {
    let (mut domain, mut m, mut claim, mut symmetric) = (None, None, None, false);
    let mut orbits = Vec::new();
    let mut group = Group { label: String::new(), signed: false, parts: Vec::new() };
    for (i, l) in content_lines(text) {
        let mut words = l.split_whitespace();
        let head = words.next().unwrap_or("");
        match head {
            "domain" => domain = Some(words.next().and_then(parse_measure).ok_or_else(|| bad(i, "unknown domain"))?),
            "m" => m = Some(words.next().unwrap_or("").parse::<usize>().map_err(|e| bad(i, e))?),
            "index" | "degree" => {
                let k: u32 = words.next().unwrap_or("").parse().map_err(|e| bad(i, e))?;
                claim = Some(if head == "index" { Mode::Index(k) } else { Mode::Degree(k) });
            }
            "symmetric" => symmetric = true,
            "orbit" => {
                let m = m.ok_or_else(|| bad(i, "`m` must precede the points"))?;
                let before_bar = l.split('|').next().unwrap_or("");
                let spec: Vec<&str> = before_bar.split_whitespace().skip(1).collect();
                let label = spec.first().ok_or_else(|| bad(i, "orbit needs a label"))?.to_string();
                std::mem::replace(&mut group, Group { label: label.clone(), signed: false, parts: Vec::new() }).close(&mut orbits);
                match spec.get(1).copied() {
                    None => {}
                    Some("signed") => group.signed = true,
                    Some("placed") => {
                        let parts: Vec<&str> = l.split('|').collect();
                        if parts.len() != 3 || spec.len() != 6 {
                            return Err(bad(i, "expected `orbit <label> placed k a b L|Bm | s q | w`"));
                        }
                        let k: usize = spec[2].parse().map_err(|e| bad(i, e))?;
                        let (a, b) = (field(spec[3], i)?, field(spec[4], i)?);
                        let g = match spec[5] {
                            "L" => PatternGroup::L,
                            "Bm" => PatternGroup::Bm,
                            other => return Err(bad(i, format!("unknown pattern group `{other}`"))),
                        };
                        let sq: Vec<&str> = parts[1].split_whitespace().collect();
                        if sq.len() != 2 {
                            return Err(bad(i, "scale must be `s q`"));
                        }
                        let o = Orbit::pattern(scale_of(sq[0], sq[1], i)?, rational(parts[2], i)?, m, k, a, b, g).with_label(label);
                        orbits.push(o);
                        group.label.clear();
                    }
                    Some(other) => return Err(bad(i, format!("unknown orbit kind `{other}`"))),
                }
            }
            _ => {
                let m = m.ok_or_else(|| bad(i, "`m` must precede the points"))?;
                let parts: Vec<&str> = l.split('|').collect();
                if parts.len() != 3 {
                    return Err(bad(i, "expected `s q | direction | weight`"));
                }
                let sq: Vec<&str> = parts[0].split_whitespace().collect();
                if sq.len() != 2 {
                    return Err(bad(i, "scale must be `s q`"));
                }
                let d = parts[1].split_whitespace().map(|x| field(x, i)).collect::<Result<Vec<_>, _>>()?;
                if d.len() != m {
                    return Err(bad(i, format!("direction has {} coordinates, expected {m}", d.len())));
                }
                group.push(scale_of(sq[0], sq[1], i)?, rational(parts[2], i)?, d);
            }
        }
    }
    group.close(&mut orbits);
    let domain = domain.ok_or_else(|| CliError::Parse("missing `domain` line".into()))?;
    let m = m.ok_or_else(|| CliError::Parse("missing `m` line".into()))?;
    let mut formula = CubatureFormula::new(domain, m, orbits)?;
    formula.centrally_symmetric = symmetric;
    Ok(CubatureFile { formula, claim })
}

/// Writes a formula. With `expand`, every point gets its own line;
/// otherwise pattern and sign orbits keep their compact form.
pub fn write_cubature(f: &CubatureFormula, claim: Option<Mode>, expand: bool) -> String {
    let mut out = String::new();
    for step in &f.trace {
        let _ = writeln!(out, "# {step}");
    }
    let _ = writeln!(out, "domain {}", measure_name(f.domain));
    let _ = writeln!(out, "m {}", f.m);
    match claim {
        Some(Mode::Index(q)) => {
            let _ = writeln!(out, "index {q}");
        }
        Some(Mode::Degree(t)) => {
            let _ = writeln!(out, "degree {t}");
        }
        None => {}
    }
    if f.centrally_symmetric {
        out.push_str("symmetric\n");
    }
    for (n, o) in f.orbits.iter().enumerate() {
        let label = if o.label.is_empty() { format!("o{n}") } else { o.label.replace(char::is_whitespace, "_") };
        let scale = format!("{} {}", o.scale.s(), o.scale.q());
        match (&o.kind, expand) {
            (OrbitKind::Placed { k, a, b, signed }, false) => {
                let g = if *signed { "Bm" } else { "L" };
                let _ = writeln!(out, "orbit {label} placed {k} {} {} {g} | {scale} | {}", a.to_compact(), b.to_compact(), o.weight);
            }
            (OrbitKind::Signed(bases), false) => {
                let _ = writeln!(out, "orbit {label} signed");
                for d in bases {
                    let _ = writeln!(out, "{scale} | {} | {}", direction_text(d), o.weight);
                }
            }
            _ => {
                let _ = writeln!(out, "orbit {label}");
                for d in o.directions(f.m) {
                    let _ = writeln!(out, "{scale} | {} | {}", direction_text(&d), o.weight);
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------- identities

/// Identity file: header `m q lhs`, then `coeff | a1 ... am` per term,
/// meaning lhs·(x₁² + … + x_m²)^(q/2) = Σ coeff·(a₁x₁ + … + a_m x_m)^q.
pub fn parse_identity(text: &str) -> Result<HilbertIdentity, CliError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| CliError::Parse("empty identity file".into()))?;
    let h: Vec<&str> = header.split_whitespace().collect();
    if h.len() != 3 {
        return Err(bad(hl, "header must be `m q lhs`"));
    }
    let m: usize = h[0].parse().map_err(|e| bad(hl, e))?;
    let q: u32 = h[1].parse().map_err(|e| bad(hl, e))?;
    let lhs = rational(h[2], hl)?;
    let mut terms = Vec::new();
    for (i, l) in lines {
        let (c, a) = l.split_once('|').ok_or_else(|| bad(i, "expected `coeff | a1 ... am`"))?;
        let form = a.split_whitespace().map(|x| field(x, i)).collect::<Result<Vec<_>, _>>()?;
        terms.push((field(c, i)?, form));
    }
    Ok(HilbertIdentity::new(m, q, lhs, terms)?)
}

pub fn write_identity(id: &HilbertIdentity) -> String {
    let mut out = format!("{} {} {}\n", id.m, id.q, id.lhs);
    for (c, a) in &id.terms {
        let _ = writeln!(out, "{} | {}", c.to_compact(), direction_text(a));
    }
    out
}

/// Display-style rendering: lhs divided out, rational forms scaled to
/// primitive integer vectors, terms grouped by coefficient.
pub fn render_identity(id: &HilbertIdentity) -> String {
    let mut groups: Vec<(FieldElement, Vec<String>)> = Vec::new();
    for (a, c) in id.normalized() {
        let (a, c) = primitive(a, c, id.q);
        match groups.iter_mut().find(|g| g.0 == c) {
            Some(g) => g.1.push(render_form(&a)),
            None => groups.push((c, vec![render_form(&a)])),
        }
    }
    let mut out = format!("(x1² + … + x{}²)^{} =\n", id.m, id.q / 2);
    for (c, forms) in groups {
        let _ = writeln!(out, "  + {c} · Σ ({})^{} over {} forms", forms[0], id.q, forms.len());
    }
    out
}

/// Rescales a rational form to coprime integers, compensating in the
/// coefficient; irrational forms are left alone.
fn primitive(a: Vec<FieldElement>, c: FieldElement, q: u32) -> (Vec<FieldElement>, FieldElement) {
    let Some(rs) = a.iter().map(|x| x.as_rational().cloned()).collect::<Option<Vec<Rational>>>() else { return (a, c) };
    let den = rs.iter().fold(num_bigint::BigInt::from(1), |l, r| num_integer::Integer::lcm(&l, r.denom()));
    let num = rs.iter().fold(num_bigint::BigInt::from(0), |g, r| num_integer::Integer::gcd(&g, &(r.numer() * &den / r.denom())));
    let s = Rational::new(den, num);
    let scaled = a.iter().map(|x| x.scale(&s)).collect();
    let f = num_traits::pow(s, q as usize);
    (scaled, c.scale(&(Rational::from_integer(1.into()) / f)))
}

fn render_form(a: &[FieldElement]) -> String {
    let mut s = String::new();
    for (i, c) in a.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if mag != FieldElement::one() {
            let t = mag.to_compact();
            if t.contains(['+', '-']) {
                let _ = write!(s, "({t})");
            } else {
                s.push_str(&t);
            }
        }
        let _ = write!(s, "x{}", i + 1);
    }
    s
}
