use alloc::string::String;
use alloc::vec::Vec;

use super::invariants::UTable;
use super::printed::{PrintedCertificate, PrintedVector};
use crate::error::{invalid, Result};
use crate::exactnum::FieldElement;
use crate::linalg::rank;

/// Σ aᵢ·uᵢ is entrywise positive; by the averaging argument no weighted
/// union of the corner orbits (any radii) is a Euclidean design of strength
/// `degree`.
#[derive(Clone, Debug, PartialEq)]
pub struct PositivityCertificate {
    pub group: String,
    pub degree: u32,
    pub labels: Vec<String>,
    pub coefficients: Vec<FieldElement>,
    pub vector: Vec<FieldElement>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Certification {
    Certificate(PositivityCertificate),
    NotFound,
}

#[derive(Clone, Debug)]
struct Ineq {
    c: Vec<FieldElement>,
    rhs: FieldElement,
    /// original rows combined into this one
    origin: u64,
}

fn combination(vectors: &[Vec<FieldElement>], a: &[FieldElement]) -> Vec<FieldElement> {
    let n = vectors.first().map_or(0, Vec::len);
    (0..n)
        .map(|k| vectors.iter().zip(a).fold(FieldElement::zero(), |acc, (v, ai)| if ai.is_zero() { acc } else { acc + &v[k] * ai }))
        .collect()
}

fn normalize(mut q: Ineq) -> Ineq {
    // scale so the first nonzero coefficient is ±1, making duplicates equal
    if let Some(p) = q.c.iter().find(|x| !x.is_zero()).cloned() {
        let s = p.abs();
        q.c = q.c.iter().map(|x| x / &s).collect();
        q.rhs = &q.rhs / &s;
    }
    q
}

/// Coefficients a with Σ aᵢ·vᵢ > 0 in every entry, by Fourier–Motzkin
/// elimination on {Σ aᵢ vᵢ[k] ≥ 1}. Redundant rows are pruned with
/// Chernikov's rule.
pub fn fourier_motzkin_positive(vectors: &[Vec<FieldElement>]) -> Option<Vec<FieldElement>> {
    let s = vectors.len();
    let m = vectors.first().map_or(0, Vec::len);
    if s == 0 || m == 0 || m > 64 {
        return None;
    }
    let mut sys: Vec<Ineq> =
        (0..m).map(|k| Ineq { c: vectors.iter().map(|v| v[k].clone()).collect(), rhs: FieldElement::one(), origin: 1 << k }).collect();
    // levels[v] holds the system over variables 0..=v
    let mut levels: Vec<Vec<Ineq>> = alloc::vec![Vec::new(); s];
    for (eliminated, v) in (0..s).rev().enumerate() {
        levels[v] = sys.clone();
        let (mut pos, mut neg, mut next) = (Vec::new(), Vec::new(), Vec::new());
        for q in sys {
            if q.c[v].is_zero() {
                next.push(q);
            } else if q.c[v].is_positive() {
                pos.push(q);
            } else {
                neg.push(q);
            }
        }
        for p in &pos {
            for n in &neg {
                let origin = p.origin | n.origin;
                if origin.count_ones() as usize > eliminated + 2 {
                    continue;
                }
                let (fp, fn_) = (n.c[v].abs(), p.c[v].clone());
                let c: Vec<FieldElement> = p.c.iter().zip(&n.c).map(|(x, y)| &(x * &fp) + &(y * &fn_)).collect();
                let rhs = &(&p.rhs * &fp) + &(&n.rhs * &fn_);
                next.push(normalize(Ineq { c, rhs, origin }));
            }
        }
        // drop duplicates, keeping the strongest right-hand side
        let mut dedup: Vec<Ineq> = Vec::new();
        for q in next {
            match dedup.iter_mut().find(|d| d.c == q.c) {
                Some(d) => {
                    if q.rhs > d.rhs {
                        *d = q;
                    }
                }
                None => dedup.push(q),
            }
        }
        sys = dedup;
    }
    // all variables gone: 0 ≥ rhs must hold
    if sys.iter().any(|q| q.rhs.is_positive()) {
        return None;
    }
    let mut a: Vec<FieldElement> = Vec::with_capacity(s);
    for v in 0..s {
        let mut lo: Option<FieldElement> = None;
        let mut hi: Option<FieldElement> = None;
        for q in &levels[v] {
            let rest = (0..v).fold(q.rhs.clone(), |acc, j| acc - &q.c[j] * &a[j]);
            let cv = &q.c[v];
            if cv.is_zero() {
                continue;
            }
            let b = &rest / cv;
            if cv.is_positive() {
                if lo.as_ref().is_none_or(|l| b > *l) {
                    lo = Some(b);
                }
            } else if hi.as_ref().is_none_or(|h| b < *h) {
                hi = Some(b);
            }
        }
        let val = match (lo, hi) {
            (Some(l), _) => l,
            (None, Some(h)) => h,
            (None, None) => FieldElement::zero(),
        };
        a.push(val);
    }
    let out = combination(vectors, &a);
    out.iter().all(FieldElement::is_positive).then_some(a)
}

/// Searches for a positivity certificate ruling out Euclidean designs of
/// strength `two_s` built from corner orbits.
pub fn certify_nonexistence(table: &UTable, two_s: u32) -> Result<Certification> {
    if two_s == 0 || two_s % 2 == 1 {
        return Err(invalid("certificates are for even strengths 2s ≥ 2"));
    }
    table.require_basis((1..=two_s / 2).map(|i| 2 * i))?;
    let rows: Vec<_> = table.rows.iter().filter(|r| r.degree % 2 == 0 && r.degree <= two_s).collect();
    let vectors: Vec<Vec<FieldElement>> = rows.iter().map(|r| r.entries.clone()).collect();
    let Some(a) = fourier_motzkin_positive(&vectors) else { return Ok(Certification::NotFound) };
    let vector = combination(&vectors, &a);
    Ok(Certification::Certificate(PositivityCertificate {
        group: alloc::format!("{}", table.group.label),
        degree: two_s,
        labels: rows.iter().map(|r| r.label.clone()).collect(),
        coefficients: a,
        vector,
    }))
}

/// Re-checks a certificate against a table.
pub fn check_certificate(table: &UTable, cert: &PositivityCertificate) -> bool {
    let mut acc: Option<Vec<FieldElement>> = None;
    for (label, a) in cert.labels.iter().zip(&cert.coefficients) {
        let Some(row) = table.row(label) else { return false };
        if row.degree > cert.degree || row.degree % 2 == 1 {
            return false;
        }
        let term: Vec<FieldElement> = row.entries.iter().map(|x| x * a).collect();
        acc = Some(match acc {
            None => term,
            Some(v) => v.iter().zip(&term).map(|(x, y)| x + y).collect(),
        });
    }
    acc.is_some_and(|v| v == cert.vector && v.iter().all(FieldElement::is_positive))
}

#[derive(Clone, Debug, PartialEq)]
pub struct PrintedCheck {
    /// The printed combination, applied to the recomputed u-vectors, is
    /// entrywise positive.
    pub combination_positive: Option<bool>,
    /// The printed vector equals that combination (exactly, or within the
    /// decimal tolerance).
    pub vector_matches: Option<bool>,
    /// The printed vector is positive and lies in the span of the u-vectors
    /// of even degree ≤ 2s.
    pub vector_in_span: Option<bool>,
    /// The u-vectors are linearly independent (H3-style argument).
    pub independent: Option<bool>,
}

impl PrintedCheck {
    /// Some printed form of the argument is a valid certificate.
    pub fn is_valid(&self) -> bool {
        self.combination_positive == Some(true) || self.vector_in_span == Some(true) || self.independent == Some(true)
    }
}

pub const DECIMAL_TOLERANCE: f64 = 1e-5;

pub fn check_printed(table: &UTable, cert: &PrintedCertificate) -> PrintedCheck {
    let even: Vec<Vec<FieldElement>> =
        table.rows.iter().filter(|r| r.degree % 2 == 0 && r.degree <= cert.degree).map(|r| r.entries.clone()).collect();
    let mut out = PrintedCheck { combination_positive: None, vector_matches: None, vector_in_span: None, independent: None };
    let combo: Option<Vec<FieldElement>> = (!cert.combination.is_empty()).then(|| {
        let vs: Vec<Vec<FieldElement>> =
            cert.combination.iter().map(|(l, _)| table.row(l).map(|r| r.entries.clone()).unwrap_or_default()).collect();
        let a: Vec<FieldElement> = cert.combination.iter().map(|(_, c)| FieldElement::from_rational(c.clone())).collect();
        combination(&vs, &a)
    });
    if let Some(c) = &combo {
        out.combination_positive = Some(!c.is_empty() && c.iter().all(FieldElement::is_positive));
    }
    match &cert.vector {
        PrintedVector::Exact(v) => {
            if let Some(c) = &combo {
                out.vector_matches = Some(c == v);
            }
            let mut aug = even.clone();
            let r0 = rank(&aug);
            aug.push(v.clone());
            out.vector_in_span = Some(v.iter().all(FieldElement::is_positive) && rank(&aug) == r0);
        }
        PrintedVector::Decimal(d) => {
            if let Some(c) = &combo {
                out.vector_matches =
                    Some(c.len() == d.len() && c.iter().zip(d).all(|(x, y)| ((x.to_f64() - y) / y).abs() <= DECIMAL_TOLERANCE));
            }
        }
        PrintedVector::Independence => {
            out.independent = Some(!even.is_empty() && rank(&even) == even.len() && even.len() >= table.group.rank());
        }
    }
    out
}
