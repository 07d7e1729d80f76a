use alloc::string::String;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use super::formula::{weight_of, CubatureFormula, Direction, Orbit, OrbitKind};
use crate::designs::subsets;
use crate::error::{invalid, Result};
use crate::exactnum::{binomial, field_sqrt, BigFloat, FieldElement, Rational, DEFAULT_PRECISION};
use crate::moments::{monomials, Measure};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Index(u32),
    Degree(u32),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Failure {
    pub exponent: Vec<u32>,
    pub expected: Rational,
    pub got: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub mode: Mode,
    /// All sums were computed in exact arithmetic.
    pub exact: bool,
    pub checked: usize,
    pub failures: Vec<Failure>,
}

impl VerificationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Exact or high-precision value of a weighted monomial sum.
#[derive(Clone, Debug)]
pub enum Value {
    Exact(FieldElement),
    Approx(BigFloat),
}

impl Value {
    pub fn matches(&self, target: &Rational) -> bool {
        match self {
            Value::Exact(v) => *v == FieldElement::from_rational(target.clone()),
            Value::Approx(v) => {
                let t = BigFloat::from_rational(target, DEFAULT_PRECISION);
                let diff = v.sub(&t);
                let scale = t.magnitude_bits().unwrap_or(0).max(0);
                diff.magnitude_bits().is_none_or(|b| b < scale - 128)
            }
        }
    }

    pub fn render(&self) -> String {
        match self {
            Value::Exact(v) => alloc::format!("{v}"),
            Value::Approx(v) => v.to_decimal(30),
        }
    }
}

enum Pts {
    Int(Vec<Vec<i64>>),
    Field,
}

enum Group {
    /// Listed points; `signed` sums over the sign orbit of each.
    Points {
        pts: Pts,
        field: Vec<Direction>,
        signed: bool,
    },
    Placed {
        k: usize,
        a: FieldElement,
        b: FieldElement,
        signed: bool,
    },
}

struct Prepared {
    factor: Option<FieldElement>,
    factor_f: BigFloat,
    group: Group,
}

fn pow2(e: usize) -> Rational {
    Rational::from_integer(BigInt::one() << e)
}

fn int_coords(d: &Direction) -> Option<Vec<i64>> {
    d.iter().map(|x| x.as_rational().filter(|r| r.is_integer()).and_then(|r| r.numer().to_i64())).collect()
}

fn norm_sq(d: &[FieldElement]) -> FieldElement {
    d.iter().fold(FieldElement::zero(), |acc, x| acc + x.square())
}

/// ‖d‖^k from ‖d‖², exact when k is even or ‖d‖ lies in the field.
fn norm_pow(nsq: &FieldElement, k: u32) -> Option<FieldElement> {
    if k.is_multiple_of(2) {
        Some(nsq.pow(k / 2))
    } else {
        field_sqrt(nsq).map(|n| n.pow(k))
    }
}

fn prepare(f: &CubatureFormula, o: &Orbit, k: u32) -> Result<Vec<Prepared>> {
    let bits = DEFAULT_PRECISION;
    let rk = o.scale.pow_exact(k);
    let rk_f = match &rk {
        Some(r) => BigFloat::from_rational(r, bits),
        None => o.scale.pow_float(k, bits),
    };
    let sphere = f.domain == Measure::Sphere;
    let make = |nsq: Option<&FieldElement>| -> Result<(Option<FieldElement>, BigFloat)> {
        let w = FieldElement::from_rational(o.weight.clone());
        let (mut ex, mut fl) = (rk.clone().map(|r| &w * &FieldElement::from_rational(r)), rk_f.mul(&w.to_bigfloat(bits)));
        if let Some(n) = nsq.filter(|_| sphere) {
            if n.is_zero() {
                return Err(invalid("zero point on the sphere"));
            }
            let nk = norm_pow(n, k);
            let nk_f = n.to_bigfloat(bits + 16).sqrt().pow(k).with_precision(bits);
            fl = fl.div(&nk_f);
            ex = match (ex, nk) {
                (Some(e), Some(nk)) => Some(&e * &nk.inv().ok_or(crate::error::Error::DivisionByZero)?),
                _ => None,
            };
        }
        Ok((ex, fl))
    };
    let mut out = Vec::new();
    match &o.kind {
        OrbitKind::Explicit(p) | OrbitKind::Signed(p) => {
            let signed = matches!(o.kind, OrbitKind::Signed(_));
            // group by squared norm (only matters on the sphere)
            let mut groups: Vec<(FieldElement, Vec<Direction>)> = Vec::new();
            for d in p {
                let n = if sphere { norm_sq(d) } else { FieldElement::one() };
                match groups.iter_mut().find(|g| g.0 == n) {
                    Some(g) => g.1.push(d.clone()),
                    None => groups.push((n, alloc::vec![d.clone()])),
                }
            }
            for (n, ds) in groups {
                let (factor, factor_f) = make(Some(&n))?;
                let ints: Option<Vec<Vec<i64>>> = ds.iter().map(int_coords).collect();
                let pts = match ints {
                    Some(v) => Pts::Int(v),
                    None => Pts::Field,
                };
                out.push(Prepared { factor, factor_f, group: Group::Points { pts, field: ds, signed } });
            }
        }
        OrbitKind::Placed { k: kk, a, b, signed } => {
            let n = &(a.square() * FieldElement::from_int(*kk as i64)) + &(b.square() * FieldElement::from_int((f.m - kk) as i64));
            let (factor, factor_f) = make(Some(&n))?;
            out.push(Prepared { factor, factor_f, group: Group::Placed { k: *kk, a: a.clone(), b: b.clone(), signed: *signed } });
        }
    }
    Ok(out)
}

/// Σ_{points} d^α over one prepared group.
fn group_sum(g: &Group, m: usize, alpha: &[(usize, u32)]) -> FieldElement {
    match g {
        Group::Points { pts: Pts::Int(pts), field, signed } => {
            let mut acc: i128 = 0;
            for p in pts {
                let mut v: i128 = 1;
                let mut ok = true;
                for &(i, e) in alpha {
                    let c = p[i];
                    if c == 0 {
                        v = 0;
                        break;
                    }
                    if *signed && e % 2 == 1 {
                        v = 0;
                        break;
                    }
                    match (c as i128).checked_pow(e).and_then(|t| v.checked_mul(t)) {
                        Some(t) => v = t,
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if !ok {
                    return group_sum_field(field, *signed, alpha);
                }
                if v != 0 && *signed {
                    let wt = p.iter().filter(|&&c| c != 0).count() as u32;
                    if wt >= 120 {
                        return group_sum_field(field, true, alpha);
                    }
                    v = match v.checked_mul(1i128 << wt) {
                        Some(t) => t,
                        None => return group_sum_field(field, *signed, alpha),
                    };
                }
                acc = match acc.checked_add(v) {
                    Some(t) => t,
                    None => return group_sum_field(field, *signed, alpha),
                };
            }
            FieldElement::from_rational(Rational::from_integer(acc.into()))
        }
        Group::Points { pts: Pts::Field, field, signed } => group_sum_field(field, *signed, alpha),
        Group::Placed { k, a, b, signed } => placed_sum(m, *k, a, b, *signed, alpha),
    }
}

fn group_sum_field(pts: &[Direction], signed: bool, alpha: &[(usize, u32)]) -> FieldElement {
    let mut acc = FieldElement::zero();
    'pts: for p in pts {
        let mut v = FieldElement::one();
        for &(i, e) in alpha {
            if p[i].is_zero() || (signed && e % 2 == 1) {
                continue 'pts;
            }
            v = &v * &p[i].pow(e);
        }
        if signed {
            v = v.scale(&pow2(weight_of(p)));
        }
        acc += &v;
    }
    acc
}

/// Sum of d^α over the placements of v_k(a, b), optionally with all signs.
fn placed_sum(m: usize, k: usize, a: &FieldElement, b: &FieldElement, signed: bool, alpha: &[(usize, u32)]) -> FieldElement {
    let s = alpha.len();
    if a == b {
        if (signed && alpha.iter().any(|&(_, e)| e % 2 == 1)) || (a.is_zero() && !alpha.is_empty()) {
            return FieldElement::zero();
        }
        let deg: u32 = alpha.iter().map(|x| x.1).sum();
        let wt = if a.is_zero() { 0 } else { m };
        let v = a.pow(deg);
        return if signed { v.scale(&pow2(wt)) } else { v };
    }
    let wt = (if a.is_zero() { 0 } else { k }) + (if b.is_zero() { 0 } else { m - k });
    let mut acc = FieldElement::zero();
    for t in 0..=s.min(k) {
        if k - t > m - s {
            continue;
        }
        let rest = binomial((m - s) as u64, (k - t) as u64);
        for inside in subsets(s, t) {
            let mut v = FieldElement::one();
            let mut zero = false;
            for (j, &(_, e)) in alpha.iter().enumerate() {
                let c = if inside.contains(&j) { a } else { b };
                if c.is_zero() || (signed && e % 2 == 1) {
                    zero = true;
                    break;
                }
                v = &v * &c.pow(e);
            }
            if !zero {
                acc += &v.scale(&crate::exactnum::biguint_to_rational(rest.clone()));
            }
        }
    }
    if signed {
        acc = acc.scale(&pow2(wt));
    }
    acc
}

/// Weighted sums Σ w(x) x^α (sphere: of x/‖x‖) for the given exponents,
/// all of total degree `k`.
pub fn moment_sums(f: &CubatureFormula, k: u32, exps: &[Vec<u32>]) -> Result<Vec<Value>> {
    let mut prepared = Vec::new();
    for o in &f.orbits {
        prepared.extend(prepare(f, o, k)?);
    }
    let exact = prepared.iter().all(|p| p.factor.is_some());
    let mut out = Vec::with_capacity(exps.len());
    for e in exps {
        if e.len() != f.m {
            return Err(crate::error::Error::DimensionMismatch { expected: f.m, found: e.len() });
        }
        let sparse: Vec<(usize, u32)> = e.iter().enumerate().filter(|x| *x.1 > 0).map(|(i, &x)| (i, x)).collect();
        if exact {
            let mut acc = FieldElement::zero();
            for p in &prepared {
                let s = group_sum(&p.group, f.m, &sparse);
                if !s.is_zero() {
                    acc += &(&s * p.factor.as_ref().expect("exact"));
                }
            }
            out.push(Value::Exact(acc));
        } else {
            let mut acc = BigFloat::zero(DEFAULT_PRECISION);
            for p in &prepared {
                let s = group_sum(&p.group, f.m, &sparse);
                if !s.is_zero() {
                    acc = acc.add(&s.to_bigfloat(DEFAULT_PRECISION).mul(&p.factor_f));
                }
            }
            out.push(Value::Approx(acc));
        }
    }
    Ok(out)
}

fn check_degree(f: &CubatureFormula, k: u32, report: &mut VerificationReport) -> Result<()> {
    let exps = monomials(f.m, k);
    let sums = moment_sums(f, k, &exps)?;
    for (e, v) in exps.into_iter().zip(sums) {
        report.checked += 1;
        if matches!(v, Value::Approx(_)) {
            report.exact = false;
        }
        let expected = f.domain.moment(f.m, &e);
        if !v.matches(&expected) {
            report.failures.push(Failure { exponent: e, expected, got: v.render() });
        }
    }
    Ok(())
}

/// Exactness on every monomial of degree exactly q.
pub fn verify_index(f: &CubatureFormula, q: u32) -> Result<VerificationReport> {
    if q == 0 {
        return Err(invalid("index must be positive"));
    }
    let mut r = VerificationReport { mode: Mode::Index(q), exact: true, checked: 0, failures: Vec::new() };
    check_degree(f, q, &mut r)?;
    Ok(r)
}

/// Exactness on every monomial of degree ≤ t. Odd degrees are skipped only
/// for formulas annotated as centrally symmetric.
pub fn verify_degree(f: &CubatureFormula, t: u32) -> Result<VerificationReport> {
    if t == 0 {
        return Err(invalid("degree must be positive"));
    }
    let mut r = VerificationReport { mode: Mode::Degree(t), exact: true, checked: 0, failures: Vec::new() };
    for k in 0..=t {
        if k % 2 == 1 && f.centrally_symmetric {
            continue;
        }
        check_degree(f, k, &mut r)?;
    }
    Ok(r)
}
