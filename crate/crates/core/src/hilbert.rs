//! Hilbert identities λ·(Σxᵢ²)^(q/2) = Σ cᵢ·⟨aᵢ, x⟩^q and their
//! correspondence with index-q spherical cubature.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cubature::{verify_index, CubatureFormula, Orbit, RadialScale};
use crate::designs::subsets;
use crate::error::{invalid, precondition, Error, Result};
use crate::exactnum::{binomial, int, rat, FieldElement, Rational};
use crate::linalg::{rank, solve_affine, Matrix};
use crate::moments::{c_q, Measure};

pub type LinearForm = Vec<FieldElement>;

#[derive(Clone, Debug, PartialEq)]
pub struct HilbertIdentity {
    pub m: usize,
    pub q: u32,
    pub lhs: Rational,
    /// (cᵢ, aᵢ): cᵢ·⟨aᵢ, x⟩^q, one term per sign pattern.
    pub terms: Vec<(FieldElement, LinearForm)>,
}

type Poly = BTreeMap<Vec<u32>, FieldElement>;

fn binom(n: u64, k: u64) -> Rational {
    Rational::from_integer(binomial(n, k).into())
}

fn multinomial(n: u32, parts: &[u32]) -> Rational {
    let mut left = n as u64;
    let mut acc = Rational::one();
    for &p in parts {
        acc *= binom(left, p as u64);
        left -= p as u64;
    }
    acc
}

/// All exponent vectors of length `len` summing to `total`.
fn compositions(total: u32, len: usize) -> Vec<Vec<u32>> {
    if len == 0 {
        return if total == 0 { alloc::vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(total - first, len - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn expand_power(form: &[FieldElement], q: u32, into: &mut Poly, coeff: &FieldElement) {
    let support: Vec<usize> = (0..form.len()).filter(|&i| !form[i].is_zero()).collect();
    let m = form.len();
    for comp in compositions(q, support.len()) {
        let mut c = coeff.scale(&multinomial(q, &comp));
        for (&i, &e) in support.iter().zip(&comp) {
            if e > 0 {
                c = c * form[i].pow(e);
            }
        }
        let mut key = alloc::vec![0u32; m];
        for (&i, &e) in support.iter().zip(&comp) {
            key[i] = e;
        }
        let slot = into.entry(key).or_insert_with(FieldElement::zero);
        *slot += &c;
    }
}

fn norm_power(m: usize, half: u32, lhs: &Rational) -> Poly {
    let mut p = Poly::new();
    for beta in compositions(half, m) {
        let key: Vec<u32> = beta.iter().map(|b| 2 * b).collect();
        p.insert(key, FieldElement::from(lhs * multinomial(half, &beta)));
    }
    p
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityFailure {
    pub monomial: Vec<u32>,
    pub lhs: FieldElement,
    pub rhs: FieldElement,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport {
    pub checked: usize,
    pub failures: Vec<IdentityFailure>,
}

impl IdentityReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

impl HilbertIdentity {
    pub fn new(m: usize, q: u32, lhs: Rational, terms: Vec<(FieldElement, LinearForm)>) -> Result<Self> {
        if m == 0 || q == 0 || q % 2 == 1 {
            return Err(invalid("identities need m ≥ 1 and an even q ≥ 2"));
        }
        if !lhs.is_positive() {
            return Err(invalid("left-hand multiplier must be positive"));
        }
        for (c, a) in &terms {
            if a.len() != m {
                return Err(Error::DimensionMismatch { expected: m, found: a.len() });
            }
            if a.iter().all(FieldElement::is_zero) {
                return Err(invalid("zero linear form"));
            }
            if !c.is_positive() {
                return Err(invalid("term coefficients must be positive"));
            }
        }
        Ok(HilbertIdentity { m, q, lhs, terms })
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Merges terms whose forms agree up to a nonzero scalar, scaling each
    /// form to leading coefficient 1, and divides through by the left-hand
    /// multiplier. Two identities are the same iff their normal forms agree.
    pub fn normalized(&self) -> Vec<(LinearForm, FieldElement)> {
        let mut merged: BTreeMap<LinearForm, FieldElement> = BTreeMap::new();
        let inv = Rational::one() / &self.lhs;
        for (c, a) in &self.terms {
            let lead = a.iter().find(|x| !x.is_zero()).expect("nonzero form");
            let key: LinearForm = a.iter().map(|x| x / lead).collect();
            let w = (c * &lead.pow(self.q)).scale(&inv);
            let slot = merged.entry(key).or_insert_with(FieldElement::zero);
            *slot += &w;
        }
        merged.into_iter().collect()
    }

    /// Number of distinct forms (up to scalar multiples).
    pub fn distinct_forms(&self) -> usize {
        self.normalized().len()
    }
}

/// Exact expansion of both sides.
pub fn verify_identity(id: &HilbertIdentity) -> IdentityReport {
    let mut rhs = Poly::new();
    for (c, a) in &id.terms {
        expand_power(a, id.q, &mut rhs, c);
    }
    let lhs = norm_power(id.m, id.q / 2, &id.lhs);
    let mut failures = Vec::new();
    let mut keys: Vec<&Vec<u32>> = lhs.keys().chain(rhs.keys()).collect();
    keys.sort();
    keys.dedup();
    let zero = FieldElement::zero();
    for k in &keys {
        let l = lhs.get(*k).unwrap_or(&zero);
        let r = rhs.get(*k).unwrap_or(&zero);
        if l != r {
            failures.push(IdentityFailure { monomial: (*k).clone(), lhs: l.clone(), rhs: r.clone() });
        }
    }
    IdentityReport { checked: keys.len(), failures }
}

/// Renders x₁²x₃ style names for failure reports.
pub fn monomial_name(e: &[u32]) -> String {
    let mut s = String::new();
    for (i, &k) in e.iter().enumerate() {
        if k == 0 {
            continue;
        }
        if !s.is_empty() {
            s.push('*');
        }
        s.push_str(&alloc::format!("x{}", i + 1));
        if k > 1 {
            s.push_str(&alloc::format!("^{k}"));
        }
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}

/// Σ wᵢ⟨x, dᵢ⟩^q/‖dᵢ‖^q = c_q‖x‖^q for a sphere formula of index q.
pub fn cubature_to_identity(f: &CubatureFormula, q: u32) -> Result<HilbertIdentity> {
    if f.domain != Measure::Sphere {
        return Err(invalid("identities come from sphere formulas"));
    }
    if q == 0 || q % 2 == 1 {
        return Err(invalid("q must be even"));
    }
    if !verify_index(f, q)?.is_valid() {
        return Err(precondition(alloc::format!("formula is not exact at index {q}")));
    }
    let mut terms = Vec::new();
    for p in f.points() {
        let nsq = p.direction.iter().fold(FieldElement::zero(), |acc, x| acc + x * x);
        let c = FieldElement::from(p.weight.clone()) / nsq.pow(q / 2);
        terms.push((c, p.direction));
    }
    HilbertIdentity::new(f.m, q, c_q(f.m, q)?, terms)
}

/// The index-q sphere formula with points aᵢ/‖aᵢ‖ and weights
/// cᵢ‖aᵢ‖^q·c_q/λ.
pub fn identity_to_cubature(id: &HilbertIdentity) -> Result<CubatureFormula> {
    if !verify_identity(id).is_valid() {
        return Err(precondition("identity does not hold"));
    }
    let cq = c_q(id.m, id.q)?;
    let mut orbits = Vec::new();
    for (a, w) in id.normalized() {
        let nsq = a.iter().fold(FieldElement::zero(), |acc, x| acc + x * x);
        let wt = (w * nsq.pow(id.q / 2)).scale(&cq);
        let wt = wt.as_rational().cloned().ok_or_else(|| invalid("irrational cubature weight"))?;
        orbits.push(Orbit::explicit(RadialScale::unit(), wt, alloc::vec![a]));
    }
    CubatureFormula::new(Measure::Sphere, id.m, orbits)
}

/// Lower bound C(m+q/2−1, m−1) on the number of distinct forms.
pub fn form_count_bound(m: usize, q: u32) -> u128 {
    binomial((m as u64) + (q as u64) / 2 - 1, m as u64 - 1).to_u128().unwrap_or(u128::MAX)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RationalityReport {
    /// Term coefficients and form entries, deduplicated.
    pub coefficients: Vec<FieldElement>,
    pub all_rational: bool,
    /// Square-free integers d such that ℚ(√d) ⊆ ℚ({aᵢ}); with the degree
    /// these identify the subfield.
    pub quadratic_subfields: Vec<u32>,
    pub degree: u32,
}

pub fn rationality_report(id: &HilbertIdentity) -> RationalityReport {
    let mut coeffs: Vec<FieldElement> = Vec::new();
    for (c, a) in &id.terms {
        for x in core::iter::once(c).chain(a.iter()) {
            if !coeffs.contains(x) {
                coeffs.push(x.clone());
            }
        }
    }
    // the subfield is the fixed field of the automorphisms fixing every aᵢ
    let fixing: Vec<usize> = (0..8).filter(|&s| coeffs.iter().all(|x| x.conjugate(s) == *x)).collect();
    let degree = (8 / fixing.len()) as u32;
    let quadratic_subfields = [2u32, 3, 5, 6, 10, 15, 30]
        .into_iter()
        .filter(|&d| {
            let r = FieldElement::sqrt_of(d);
            fixing.iter().all(|&s| r.conjugate(s) == r)
        })
        .collect();
    RationalityReport { all_rational: coeffs.iter().all(FieldElement::is_rational), coefficients: coeffs, quadratic_subfields, degree }
}

fn unit(m: usize, i: usize, c: i64) -> LinearForm {
    let mut v = alloc::vec![FieldElement::zero(); m];
    v[i] = FieldElement::from_int(c);
    v
}

/// Every sign pattern of the base form with its first nonzero entry kept
/// positive (q is even, so ± forms coincide).
fn sign_forms(base: &[i64]) -> Vec<LinearForm> {
    let nz: Vec<usize> = (0..base.len()).filter(|&i| base[i] != 0).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << (nz.len().saturating_sub(1))) {
        let mut v: Vec<i64> = base.to_vec();
        for (b, &i) in nz.iter().skip(1).enumerate() {
            if mask >> b & 1 == 1 {
                v[i] = -v[i];
            }
        }
        out.push(v.into_iter().map(FieldElement::from_int).collect());
    }
    out
}

fn placed(m: usize, entries: &[(usize, i64)]) -> Vec<i64> {
    let mut v = alloc::vec![0i64; m];
    for &(i, c) in entries {
        v[i] = c;
    }
    v
}

fn push_all(terms: &mut Vec<(FieldElement, LinearForm)>, c: &FieldElement, forms: Vec<LinearForm>) {
    if c.is_zero() {
        return;
    }
    terms.extend(forms.into_iter().map(|f| (c.clone(), f)));
}

pub const CATALOG_IDENTITIES: [&str; 6] = ["sawa91", "reznick", "kurschak", "ns", "schur", "hurwitz"];

/// 120(Σ₁⁷xᵢ²)³ = Σ₅₆(xᵢ ± x_{i+2} ± x_{i+3} ± x_{i+4})⁶ + 2Σ₂₈(xᵢ ± x_{i+1} ± x_{i+3})⁶ + Σ₇(2xᵢ)⁶,
/// indices mod 7: the triples are the lines of a Fano plane and the
/// quadruples their complements.
pub fn sawa91() -> HilbertIdentity {
    sawa91_with_triples(1)
}

/// The same sum with triples (xᵢ ± x_{i+2} ± x_{i+3}) as typeset; those are
/// lines of the other Fano plane on ℤ₇ and the identity fails.
pub fn sawa91_as_printed() -> HilbertIdentity {
    sawa91_with_triples(2)
}

fn sawa91_with_triples(step: usize) -> HilbertIdentity {
    let m = 7;
    let mut terms = Vec::new();
    let one = FieldElement::one();
    for i in 0..m {
        push_all(&mut terms, &one, sign_forms(&placed(m, &[(i, 1), ((i + 2) % 7, 1), ((i + 3) % 7, 1), ((i + 4) % 7, 1)])));
        push_all(&mut terms, &FieldElement::from_int(2), sign_forms(&placed(m, &[(i, 1), ((i + step) % 7, 1), ((i + 3) % 7, 1)])));
        terms.push((one.clone(), unit(m, i, 2)));
    }
    HilbertIdentity { m, q: 6, lhs: int(120), terms }
}

/// 960(Σ₁⁷xᵢ²)³ = 2Σ₇(2xᵢ)⁶ + Σ(2xᵢ ± 2xⱼ)⁶ + Σ(x₁ ± ⋯ ± x₇)⁶.
pub fn reznick() -> HilbertIdentity {
    let m = 7;
    let mut terms = Vec::new();
    let one = FieldElement::one();
    for i in 0..m {
        terms.push((FieldElement::from_int(2), unit(m, i, 2)));
    }
    for s in subsets(m, 2) {
        push_all(&mut terms, &one, sign_forms(&placed(m, &[(s[0], 2), (s[1], 2)])));
    }
    push_all(&mut terms, &one, sign_forms(&[1; 7]));
    HilbertIdentity { m, q: 6, lhs: int(960), terms }
}

/// 2^k·C(3k,k)·(Σ₁^{3k+1}xᵢ²)² = Σ(x_{i₁} ± ⋯ ± x_{i_{k+1}})⁴ over (k+1)-subsets.
pub fn kurschak(k: usize) -> Result<HilbertIdentity> {
    if k == 0 || k > 6 {
        return Err(invalid("kurschak needs 1 ≤ k ≤ 6"));
    }
    let m = 3 * k + 1;
    let mut terms = Vec::new();
    for s in subsets(m, k + 1) {
        let base: Vec<(usize, i64)> = s.iter().map(|&i| (i, 1)).collect();
        push_all(&mut terms, &FieldElement::one(), sign_forms(&placed(m, &base)));
    }
    let lhs = Rational::from_integer((1u64 << k).into()) * binom(3 * k as u64, k as u64);
    Ok(HilbertIdentity { m, q: 4, lhs, terms })
}

/// Coefficients of the six form classes of the degree-10 family on ℝ⁴:
/// Σ₄(2xᵢ), Σ₈(x₁±x₂±x₃±x₄), Σ₃₂(3xᵢ±xⱼ±x_k±x_l), Σ₁₆(2xᵢ±2xⱼ±2x_k),
/// Σ₄₈(2xᵢ±xⱼ±x_k), Σ₁₂(xᵢ±xⱼ), for 1/192 ≤ a ≤ 1/120.
pub fn ns_coefficients(a: &Rational) -> Result<[Rational; 6]> {
    if *a < rat(1, 192) || *a > rat(1, 120) {
        return Err(invalid(alloc::format!("parameter {a} outside [1/192, 1/120]")));
    }
    let one = Rational::one();
    let c4 = a / int(21);
    let c32 = (&one - int(120) * a) / int(272160);
    Ok([c4.clone(), c4, c32.clone(), c32, (int(192) * a - &one) / int(13608), (int(13) - int(960) * a) / int(630)])
}

/// The coefficients exactly as typeset in the source of the family.
pub fn ns_printed_coefficients(a: &Rational) -> [Rational; 6] {
    let one = Rational::one();
    let c32 = (&one - int(120) * a) / int(272160);
    [rat(1, 2520), rat(1, 2520), c32.clone(), c32, (int(192) * a - &one) / int(68040), (int(12) - int(960) * a) / int(630)]
}

/// The six form classes on ℝ⁴ used by the degree-8/10 identities.
pub fn ns_form_classes() -> [Vec<LinearForm>; 6] {
    let m = 4;
    let mut c: [Vec<LinearForm>; 6] = Default::default();
    for i in 0..m {
        c[0].push(unit(m, i, 2));
    }
    c[1] = sign_forms(&[1, 1, 1, 1]);
    for i in 0..m {
        let rest: Vec<(usize, i64)> = (0..m).filter(|&j| j != i).map(|j| (j, 1)).collect();
        let mut base = alloc::vec![(i, 3)];
        base.extend(rest);
        // 3xᵢ leads: keep its sign and flip the other three freely
        for mask in 0..8u32 {
            let mut v = placed(m, &base);
            for (b, j) in (0..m).filter(|&j| j != i).enumerate() {
                if mask >> b & 1 == 1 {
                    v[j] = -v[j];
                }
            }
            c[2].push(v.into_iter().map(FieldElement::from_int).collect());
        }
    }
    for s in subsets(m, 3) {
        c[3].extend(sign_forms(&placed(m, &[(s[0], 2), (s[1], 2), (s[2], 2)])));
    }
    for i in 0..m {
        let others: Vec<usize> = (0..m).filter(|&j| j != i).collect();
        for p in subsets(3, 2) {
            for mask in 0..4u32 {
                let mut v = placed(m, &[(i, 2), (others[p[0]], 1), (others[p[1]], 1)]);
                if mask & 1 == 1 {
                    v[others[p[0]]] = -1;
                }
                if mask & 2 == 2 {
                    v[others[p[1]]] = -1;
                }
                c[4].push(v.into_iter().map(FieldElement::from_int).collect());
            }
        }
    }
    for s in subsets(m, 2) {
        c[5].extend(sign_forms(&placed(m, &[(s[0], 1), (s[1], 1)])));
    }
    c
}

fn from_classes(q: u32, lhs: Rational, coeffs: &[Rational; 6]) -> HilbertIdentity {
    let mut terms = Vec::new();
    for (c, forms) in coeffs.iter().zip(ns_form_classes()) {
        push_all(&mut terms, &FieldElement::from(c.clone()), forms);
    }
    HilbertIdentity { m: 4, q, lhs, terms }
}

/// (Σ₁⁴xᵢ²)⁵ as the one-parameter family of tenth-power sums.
pub fn ns_family(a: &Rational) -> Result<HilbertIdentity> {
    Ok(from_classes(10, Rational::one(), &ns_coefficients(a)?))
}

pub fn ns_family_as_printed(a: &Rational) -> HilbertIdentity {
    from_classes(10, Rational::one(), &ns_printed_coefficients(a))
}

/// 22680(Σ₁⁴xᵢ²)⁵ = 9Σ₄(2xᵢ)¹⁰ + 9Σ₈(x₁±x₂±x₃±x₄)¹⁰ + Σ₄₈(2xᵢ±xⱼ±x_k)¹⁰ + 180Σ₁₂(xᵢ±xⱼ)¹⁰.
pub fn schur() -> HilbertIdentity {
    let z = Rational::zero();
    from_classes(10, int(22680), &[int(9), int(9), z.clone(), z, int(1), int(180)])
}

/// 5040(Σ₁⁴xᵢ²)⁴ = 6Σ₄(2xᵢ)⁸ + 6Σ₈(x₁±x₂±x₃±x₄)⁸ + Σ₄₈(2xᵢ±xⱼ±x_k)⁸ + 60Σ₁₂(xᵢ±xⱼ)⁸.
pub fn hurwitz() -> HilbertIdentity {
    let z = Rational::zero();
    from_classes(8, int(5040), &[int(6), int(6), z.clone(), z, int(1), int(60)])
}

/// Looks up a catalog identity; `param` is k for kurschak and a for ns.
pub fn catalog_identity(name: &str, param: Option<&Rational>) -> Result<HilbertIdentity> {
    match name {
        "sawa91" => Ok(sawa91()),
        "reznick" => Ok(reznick()),
        "kurschak" => {
            let k = param.ok_or_else(|| invalid("kurschak needs k"))?;
            if !k.is_integer() {
                return Err(invalid("k must be an integer"));
            }
            kurschak(k.to_integer().to_usize().ok_or_else(|| invalid("bad k"))?)
        }
        "ns" => ns_family(param.ok_or_else(|| invalid("ns needs a"))?),
        "schur" => Ok(schur()),
        "hurwitz" => Ok(hurwitz()),
        _ => Err(invalid(alloc::format!("unknown identity `{name}`"))),
    }
}

/// Representation of λ(Σxᵢ²)^(q/2) by ℝ-combinations of ⟨a, x⟩^q with
/// a ∈ {0, ±1}^m.
#[derive(Clone, Debug, PartialEq)]
pub struct Pm1Report {
    pub m: usize,
    pub q: u32,
    pub forms: usize,
    pub monomials: usize,
    pub rank: usize,
    pub rank_augmented: usize,
    /// Some combination if representable.
    pub solution: Option<Vec<(Vec<i8>, Rational)>>,
    /// Otherwise a functional y on monomial coefficients vanishing on every
    /// form power but with y(target) = 1.
    pub witness: Option<Vec<(Vec<u32>, Rational)>>,
    /// Coefficients of x₁^(q−2)x₂² and x₁^(q−4)x₂⁴ in the target and in any
    /// form with a₁a₂ ≠ 0.
    pub target_ratio: (Rational, Rational),
    pub form_ratio: (Rational, Rational),
}

impl Pm1Report {
    pub fn feasible(&self) -> bool {
        self.solution.is_some()
    }
}

pub const PM1_ENTRY_CAP: usize = 20_000_000;

fn pm1_forms(m: usize) -> Vec<Vec<i8>> {
    let mut out = Vec::new();
    let total = 3usize.pow(m as u32);
    for code in 1..total {
        let mut v = alloc::vec![0i8; m];
        let mut c = code;
        for x in v.iter_mut() {
            *x = [0, 1, -1][c % 3];
            c /= 3;
        }
        // keep one of ±a: first nonzero entry positive
        if v.iter().find(|&&x| x != 0) == Some(&1) {
            out.push(v);
        }
    }
    out
}

/// Exact rank test. Weight-2 forms are tried first as pivots so that for
/// q = 4 the returned combination is supported on them when possible.
pub fn no_pm1_representation(m: usize, q: u32) -> Result<Pm1Report> {
    if m < 2 || q < 4 || q % 2 == 1 {
        return Err(invalid("need m ≥ 2 and even q ≥ 4"));
    }
    let mut forms = pm1_forms(m);
    forms.sort_by_key(|f| (f.iter().filter(|&&x| x != 0).count() != 2, f.clone()));
    let monos = compositions(q, m);
    if forms.len().saturating_mul(monos.len()) > PM1_ENTRY_CAP {
        return Err(Error::SearchLimit(alloc::format!("{} forms × {} monomials", forms.len(), monos.len())));
    }
    let index: BTreeMap<&Vec<u32>, usize> = monos.iter().enumerate().map(|(i, e)| (e, i)).collect();
    // columns: forms; rows: monomials
    let mut a: Matrix<Rational> = alloc::vec![alloc::vec![Rational::zero(); forms.len()]; monos.len()];
    for (j, f) in forms.iter().enumerate() {
        let mut p = Poly::new();
        let lf: LinearForm = f.iter().map(|&x| FieldElement::from_int(x as i64)).collect();
        expand_power(&lf, q, &mut p, &FieldElement::one());
        for (k, v) in p {
            if !v.is_zero() {
                a[index[&k]][j] = v.rational_part().clone();
            }
        }
    }
    let target = norm_power(m, q / 2, &Rational::one());
    let b: Vec<Rational> = monos.iter().map(|e| target.get(e).map(|x| x.rational_part().clone()).unwrap_or_default()).collect();
    let r = rank(&a);
    let mut aug = a.clone();
    for (row, bi) in aug.iter_mut().zip(&b) {
        row.push(bi.clone());
    }
    let r_aug = rank(&aug);
    let mut solution = None;
    let mut witness = None;
    if r == r_aug {
        let order: Vec<usize> = (0..forms.len()).collect();
        let sol = solve_affine(&a, &b, &order).expect("consistent by rank");
        solution = Some(forms.iter().cloned().zip(sol.particular).filter(|(_, c)| !c.is_zero()).collect());
    } else {
        // yᵀA = 0, yᵀb = 1
        let mut sys: Matrix<Rational> =
            (0..forms.len()).map(|j| monos.iter().enumerate().map(|(i, _)| a[i][j].clone()).collect()).collect();
        sys.push(b.clone());
        let mut rhs = alloc::vec![Rational::zero(); forms.len()];
        rhs.push(Rational::one());
        let order: Vec<usize> = (0..monos.len()).collect();
        let y = solve_affine(&sys, &rhs, &order).expect("inconsistency gives a functional");
        witness = Some(monos.iter().cloned().zip(y.particular).filter(|(_, c)| !c.is_zero()).collect());
    }
    let e = |k: u32| {
        let mut v = alloc::vec![0u32; m];
        v[0] = q - k;
        v[1] = k;
        v
    };
    let tc = |k: u32| target.get(&e(k)).map(|x| x.rational_part().clone()).unwrap_or_default();
    let target_ratio = (tc(2), tc(4));
    let form_ratio = (binom(q as u64, 2), binom(q as u64, 4));
    Ok(Pm1Report {
        m,
        q,
        forms: forms.len(),
        monomials: monos.len(),
        rank: r,
        rank_augmented: r_aug,
        solution,
        witness,
        target_ratio,
        form_ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(4, 3).len(), 15);
        assert_eq!(compositions(0, 2), alloc::vec![alloc::vec![0, 0]]);
    }

    #[test]
    fn trivial_identity() {
        let m = 3;
        let terms = (0..m).map(|i| (FieldElement::one(), unit(m, i, 1))).collect();
        let id = HilbertIdentity::new(m, 2, int(1), terms).unwrap();
        assert!(verify_identity(&id).is_valid());
        let f = identity_to_cubature(&id).unwrap();
        assert_eq!(f.num_points(), 3);
        assert_eq!(f.total_weight(), int(1));
    }

    #[test]
    fn perturbed_coefficient_names_the_monomial() {
        let mut id = kurschak(1).unwrap();
        id.terms[0].0 = FieldElement::from_int(2);
        let rep = verify_identity(&id);
        assert!(!rep.is_valid());
        assert!(rep.failures.iter().any(|f| monomial_name(&f.monomial) == "x1^4"));
    }

    #[test]
    fn sign_form_counts() {
        assert_eq!(sign_forms(&[1, 1, 1, 1]).len(), 8);
        let c = ns_form_classes();
        let sizes: Vec<usize> = c.iter().map(Vec::len).collect();
        assert_eq!(sizes, alloc::vec![4, 8, 32, 16, 48, 12]);
        assert_eq!(pm1_forms(2).len(), 4);
        assert_eq!(pm1_forms(3).len(), 13);
    }

    #[test]
    fn rationality() {
        let r = rationality_report(&schur());
        assert!(r.all_rational && r.degree == 1);
        let mut id = kurschak(1).unwrap();
        id.terms[0].0 = "r2".parse().unwrap();
        let r = rationality_report(&id);
        assert_eq!((r.degree, r.quadratic_subfields.clone()), (2, alloc::vec![2]));
        id.terms[1].0 = "r2+r3".parse().unwrap();
        assert_eq!(rationality_report(&id).degree, 4);
    }

    #[test]
    fn ns_range_is_enforced() {
        assert!(ns_family(&rat(1, 200)).is_err());
        assert!(ns_family(&rat(1, 100)).is_err());
        assert!(ns_family(&rat(1, 150)).is_ok());
    }
}
