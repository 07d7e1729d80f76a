use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use hashbrown::HashMap;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::groups::{dot, GroupLabel, ReflectionGroupData};
use super::orbit::{basis_product, corner_orbit, int_to_field, orbit, GroupOrbit, IntCoord};
use crate::error::{invalid, Error, Result};
use crate::exactnum::{common_denominator, field_sqrt, int, FieldElement, Rational};

/// How an invariant harmonic polynomial is given.
#[derive(Clone, Debug, PartialEq)]
pub enum HarmonicKind {
    /// Σ c·sym(x^λ): coefficient times the sum of all distinct permutations
    /// of the monomial with exponent pattern λ.
    Sym(Vec<(FieldElement, Vec<u32>)>),
    /// Σ_{g∈G} h(x^g) with h = [x₁x₂]·Σⱼ cⱼ x₁^(e−2j) p^j, p = x₂²+…+x_m².
    Zonal { coeffs: Vec<Rational>, x1x2: bool },
    /// Σ_{g∈G} s(x^g) for a symmetric polynomial s given as in `Sym`.
    GroupSym(Vec<(FieldElement, Vec<u32>)>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvariantSpec {
    /// "6", "12,1", …
    pub label: String,
    pub degree: u32,
    pub kind: HarmonicKind,
}

impl InvariantSpec {
    fn new(label: &str, degree: u32, kind: HarmonicKind) -> Self {
        InvariantSpec { label: label.into(), degree, kind }
    }

    pub fn needs_orbit(&self) -> bool {
        !matches!(self.kind, HarmonicKind::Sym(_))
    }
}

fn sym(terms: &[(&str, &[u32])]) -> Vec<(FieldElement, Vec<u32>)> {
    terms.iter().map(|(c, p)| (c.parse().expect("built-in coefficient"), p.to_vec())).collect()
}

fn zonal(coeffs: &[&str], x1x2: bool) -> HarmonicKind {
    let coeffs = coeffs.iter().map(|c| crate::exactnum::parse_rational(c).expect("built-in coefficient")).collect();
    HarmonicKind::Zonal { coeffs, x1x2 }
}

/// The shipped bases of invariant harmonics (exceptional groups only).
pub fn invariant_basis(g: GroupLabel) -> Vec<InvariantSpec> {
    use HarmonicKind::*;
    match g {
        GroupLabel::F4 => alloc::vec![
            InvariantSpec::new("6", 6, Sym(sym(&[("1", &[6]), ("-5", &[4, 2]), ("30", &[2, 2, 2])]))),
            InvariantSpec::new(
                "8",
                8,
                Sym(sym(&[("1", &[8]), ("-28/3", &[6, 2]), ("98/3", &[4, 4]), ("-28", &[4, 2, 2]), ("504", &[2, 2, 2, 2])])),
            ),
            InvariantSpec::new(
                "12,1",
                12,
                Sym(sym(&[
                    ("1", &[12]),
                    ("-22", &[10, 2]),
                    ("79", &[8, 4]),
                    ("258", &[8, 2, 2]),
                    ("-116", &[6, 6]),
                    ("-236", &[6, 4, 2]),
                    ("-4392", &[6, 2, 2, 2]),
                    ("570", &[4, 4, 4]),
                    ("3660", &[4, 4, 2, 2]),
                ])),
            ),
            InvariantSpec::new(
                "12,2",
                12,
                Sym(sym(&[
                    ("1", &[12]),
                    ("-22", &[10, 2]),
                    ("133/2", &[8, 4]),
                    ("591/2", &[8, 2, 2]),
                    ("-157/2", &[6, 6]),
                    ("-1369/4", &[6, 4, 2]),
                    ("-4167", &[6, 2, 2, 2]),
                    ("2265/2", &[4, 4, 4]),
                    ("6945/2", &[4, 4, 2, 2]),
                ])),
            ),
        ],
        GroupLabel::H3 => alloc::vec![
            InvariantSpec::new(
                "6",
                6,
                Sym(sym(&[
                    ("2", &[6]),
                    ("21", &[5, 1]),
                    ("-15", &[4, 2]),
                    ("21*r10", &[4, 1, 1]),
                    ("-70+7*r10", &[3, 3]),
                    ("-21*r10", &[3, 2, 1]),
                    ("180", &[2, 2, 2]),
                ])),
            ),
            InvariantSpec::new("10", 10, zonal(&["256", "-5760", "20160", "-16800", "3150", "-63"], false)),
            InvariantSpec::new("12", 12, zonal(&["1024", "-33792", "190080", "-295680", "138600", "-16632", "231"], false)),
        ],
        GroupLabel::H4 => alloc::vec![
            InvariantSpec::new("12", 12, zonal(&["13", "-286", "1287", "-1716", "715", "-78", "1"], false)),
            InvariantSpec::new(
                "20",
                20,
                zonal(&["21", "-1330", "20349", "-116280", "293930", "-352716", "203490", "-54264", "5985", "-210", "1"], false),
            ),
            InvariantSpec::new(
                "24",
                24,
                zonal(
                    &["1", "-92", "10626/5", "-19228", "81719", "-178296", "208012", "-653752/5", "43263", "-7084", "506", "-12", "1/25"],
                    false,
                ),
            ),
        ],
        GroupLabel::E6 => alloc::vec![
            InvariantSpec::new(
                "5",
                5,
                Sym(sym(&[
                    ("1", &[5]),
                    ("1", &[4, 1]),
                    ("-2", &[3, 2]),
                    ("1", &[3, 1, 1]),
                    ("-3", &[2, 1, 1, 1]),
                    ("24", &[1, 1, 1, 1, 1])
                ])),
            ),
            InvariantSpec::new(
                "6",
                6,
                Sym(sym(&[
                    ("1", &[6]),
                    ("3/2", &[5, 1]),
                    ("-3", &[4, 2]),
                    ("15/14", &[4, 1, 1]),
                    ("5/7", &[3, 3]),
                    ("-30/7", &[3, 2, 1]),
                    ("30/7", &[3, 1, 1, 1]),
                    ("9", &[2, 2, 2]),
                    ("45/7", &[2, 2, 1, 1]),
                    ("-180/7", &[2, 1, 1, 1, 1]),
                    ("180/7", &[1, 1, 1, 1, 1, 1]),
                ])),
            ),
            InvariantSpec::new("8", 8, zonal(&["1", "-28/5", "6", "-4/3", "1/33"], false)),
            InvariantSpec::new(
                "9",
                9,
                GroupSym(sym(&[
                    ("1", &[9]),
                    ("-36/5", &[7, 2]),
                    ("126/5", &[5, 4]),
                    ("-63", &[4, 3, 2]),
                    ("63", &[4, 2, 2, 1]),
                    ("252", &[3, 2, 2, 2]),
                    ("-945", &[2, 2, 2, 2, 1]),
                ])),
            ),
            InvariantSpec::new("10", 10, zonal(&["1", "-9", "18", "-10", "15/11", "-3/143"], false)),
        ],
        GroupLabel::E7 => alloc::vec![
            InvariantSpec::new("6", 6, zonal(&["32", "-80", "30", "-1"], false)),
            InvariantSpec::new("8", 8, zonal(&["384", "-1792", "1680", "-336", "7"], false)),
            InvariantSpec::new("10", 10, zonal(&["256", "-1920", "3360", "-1680", "210", "-3"], false)),
            InvariantSpec::new("12,1", 12, zonal(&["4096", "-45056", "126720", "-118272", "36960", "-3168", "33"], false)),
            InvariantSpec::new("12,2", 12, zonal(&["2048", "-14080", "25344", "-14784", "2640", "-99"], true)),
        ],
        GroupLabel::E8 => alloc::vec![
            InvariantSpec::new("8", 8, zonal(&["429", "-1716", "1430", "-260", "5"], false)),
            InvariantSpec::new("12", 12, zonal(&["1547", "-14586", "36465", "-30940", "8925", "-714", "7"], false)),
            InvariantSpec::new("14", 14, zonal(&["969", "-12597", "46189", "-62985", "33915", "-6783", "399", "-3"], false)),
            InvariantSpec::new(
                "16",
                16,
                zonal(&["6783", "-116280", "587860", "-1175720", "1017450", "-379848", "55860", "-2520", "15"], false),
            ),
        ],
        GroupLabel::A(_) | GroupLabel::B(_) | GroupLabel::D(_) => Vec::new(),
    }
}

/// dim Harm_d(ℝ^m)^G for d = 0..=up_to, from ∏_{i≥2} 1/(1 − t^(1+dᵢ)).
pub fn molien_dims(g: &ReflectionGroupData, up_to: usize) -> Vec<u64> {
    let mut dims = alloc::vec![0u64; up_to + 1];
    dims[0] = 1;
    for &e in g.exponents.iter().skip(1) {
        let step = e as usize + 1;
        for d in step..=up_to {
            dims[d] += dims[d - step];
        }
    }
    dims
}

/// Fails with `BasisUnavailable` unless the shipped basis spans every
/// invariant harmonic space of the given degrees.
pub fn require_basis(g: &ReflectionGroupData, specs: &[InvariantSpec], degrees: impl IntoIterator<Item = u32>) -> Result<()> {
    for d in degrees {
        let want = molien_dims(g, d as usize)[d as usize];
        let have = specs.iter().filter(|s| s.degree == d).count() as u64;
        if have < want {
            return Err(Error::BasisUnavailable { group: alloc::format!("{}", g.label), degree: d });
        }
    }
    Ok(())
}

pub type Monomial = Vec<u32>;
pub type Poly = BTreeMap<Monomial, FieldElement>;

fn permutations(pattern: &[u32], m: usize) -> Vec<Monomial> {
    let mut base: Vec<u32> = pattern.to_vec();
    base.resize(m, 0);
    base.sort_unstable();
    let mut out = alloc::vec![base.clone()];
    // next lexicographic permutation enumerates each distinct arrangement once
    loop {
        let Some(i) = (0..m.saturating_sub(1)).rev().find(|&i| base[i] < base[i + 1]) else { break };
        let j = (i + 1..m).rev().find(|&j| base[j] > base[i]).unwrap();
        base.swap(i, j);
        base[i + 1..].reverse();
        out.push(base.clone());
    }
    out
}

fn add_term(p: &mut Poly, mono: Monomial, c: FieldElement) {
    if c.is_zero() {
        return;
    }
    let e = p.entry(mono).or_insert_with(FieldElement::zero);
    *e += &c;
}

fn expand_sym(terms: &[(FieldElement, Vec<u32>)], m: usize) -> Poly {
    let mut p = Poly::new();
    for (c, pat) in terms {
        for mono in permutations(pat, m) {
            add_term(&mut p, mono, c.clone());
        }
    }
    p.retain(|_, c| !c.is_zero());
    p
}

fn multinomial_powers(vars: usize, total: u32) -> Vec<(Vec<u32>, BigInt)> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, coef: BigInt, out: &mut Vec<(Vec<u32>, BigInt)>) {
        let vars = cur.len();
        if i + 1 == vars {
            cur[i] = left;
            out.push((cur.clone(), coef));
            return;
        }
        for a in 0..=left {
            cur[i] = a;
            // C(left, a)
            let c = crate::exactnum::binomial(left as u64, a as u64);
            rec(i + 1, left - a, cur, &coef * BigInt::from(c), out);
        }
    }
    let mut out = Vec::new();
    if vars == 0 {
        if total == 0 {
            out.push((Vec::new(), BigInt::from(1)));
        }
        return out;
    }
    rec(0, total, &mut alloc::vec![0; vars], BigInt::from(1), &mut out);
    out
}

/// The polynomial h (before any group summation) in m variables.
pub fn expand_inner(spec: &InvariantSpec, m: usize) -> Poly {
    match &spec.kind {
        HarmonicKind::Sym(t) | HarmonicKind::GroupSym(t) => expand_sym(t, m),
        HarmonicKind::Zonal { coeffs, x1x2 } => {
            let e = spec.degree - if *x1x2 { 2 } else { 0 };
            let mut p = Poly::new();
            for (j, c) in coeffs.iter().enumerate() {
                let j = j as u32;
                for (pows, mult) in multinomial_powers(m - 1, j) {
                    let mut mono = alloc::vec![e - 2 * j];
                    mono.extend(pows.iter().map(|a| 2 * a));
                    if *x1x2 {
                        mono[0] += 1;
                        mono[1] += 1;
                    }
                    add_term(&mut p, mono, FieldElement::from_rational(c * Rational::from_integer(mult)));
                }
            }
            p.retain(|_, c| !c.is_zero());
            p
        }
    }
}

pub fn laplacian(p: &Poly) -> Poly {
    let mut out = Poly::new();
    for (mono, c) in p {
        for i in 0..mono.len() {
            let e = mono[i];
            if e >= 2 {
                let mut m2 = mono.clone();
                m2[i] -= 2;
                add_term(&mut out, m2, c.scale(&int((e * (e - 1)) as i64)));
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// True when the defining polynomial h is harmonic (then so is its group
/// sum).
pub fn is_harmonic(spec: &InvariantSpec, m: usize) -> bool {
    laplacian(&expand_inner(spec, m)).is_empty()
}

fn eval_poly(p: &Poly, x: &[FieldElement]) -> FieldElement {
    let maxe = p.keys().flat_map(|k| k.iter().copied()).max().unwrap_or(0) as usize;
    let pw: Vec<Vec<FieldElement>> = x
        .iter()
        .map(|xi| {
            let mut v = alloc::vec![FieldElement::one()];
            for e in 1..=maxe {
                let next = &v[e - 1] * xi;
                v.push(next);
            }
            v
        })
        .collect();
    let mut acc = FieldElement::zero();
    for (mono, c) in p {
        let mut t = c.clone();
        for (i, &e) in mono.iter().enumerate() {
            if e > 0 {
                t = &t * &pw[i][e as usize];
            }
        }
        acc += &t;
    }
    acc
}

/// ‖x‖^d from ‖x‖².
fn norm_pow(norm_sq: &FieldElement, d: u32) -> Result<FieldElement> {
    let even = norm_sq.pow(d / 2);
    if d.is_multiple_of(2) {
        return Ok(even);
    }
    let r = field_sqrt(norm_sq).ok_or_else(|| invalid("odd-degree invariant needs a norm inside the field"))?;
    Ok(&even * &r)
}

type IntF = [i128; 8];

fn intf_mul(a: &IntF, b: &IntF) -> Option<IntF> {
    let mut out = [0i128; 8];
    for i in 0..8 {
        if a[i] == 0 {
            continue;
        }
        for j in 0..8 {
            if b[j] == 0 {
                continue;
            }
            let (k, f) = basis_product(i, j);
            let t = a[i].checked_mul(b[j])?.checked_mul(f as i128)?;
            out[k] = out[k].checked_add(t)?;
        }
    }
    Some(out)
}

fn intf_add(a: &mut IntF, b: &IntF) -> Option<()> {
    for k in 0..8 {
        a[k] = a[k].checked_add(b[k])?;
    }
    Some(())
}

// Σ_orbit s(y) in scaled integers; None on overflow.
fn orbit_poly_sum_int(o: &GroupOrbit, p: &Poly, d: u32) -> Option<FieldElement> {
    let coefs: Vec<[Rational; 8]> = p.values().map(FieldElement::coeffs).collect();
    let cden = common_denominator(coefs.iter().flatten());
    let ints: Vec<IntF> = coefs
        .iter()
        .map(|c| {
            let mut r = [0i128; 8];
            for k in 0..8 {
                r[k] = ((c[k].numer() * &cden) / c[k].denom()).to_i128()?;
            }
            Some(r)
        })
        .collect::<Option<_>>()?;
    let monos: Vec<&Monomial> = p.keys().collect();
    let maxe = monos.iter().flat_map(|k| k.iter().copied()).max().unwrap_or(0) as usize;
    let mut total = [0i128; 8];
    for idx in 0..o.len() {
        let pw: Vec<Vec<IntF>> = (0..o.dim())
            .map(|i| {
                let c = o.coord(idx, i);
                let x: IntF = core::array::from_fn(|k| c[k] as i128);
                let mut v = alloc::vec![{
                    let mut one = [0i128; 8];
                    one[0] = 1;
                    one
                }];
                for e in 1..=maxe {
                    v.push(intf_mul(&v[e - 1], &x)?);
                }
                Some(v)
            })
            .collect::<Option<_>>()?;
        for (mono, c) in monos.iter().zip(&ints) {
            let mut t = *c;
            for (i, &e) in mono.iter().enumerate() {
                if e > 0 {
                    t = intf_mul(&t, &pw[i][e as usize])?;
                }
            }
            intf_add(&mut total, &t)?;
        }
    }
    let scale = Rational::from_integer(cden * num_traits::pow(BigInt::from(o.denom()), d as usize));
    let v = FieldElement::from_coeffs(core::array::from_fn(|k| Rational::from_integer(BigInt::from(total[k]))));
    Some(v.scale(&scale.recip()))
}

fn orbit_poly_sum(o: &GroupOrbit, p: &Poly, d: u32) -> FieldElement {
    if let Some(v) = orbit_poly_sum_int(o, p, d) {
        return v;
    }
    let mut acc = FieldElement::zero();
    for idx in 0..o.len() {
        acc += &eval_poly(p, &o.point(idx));
    }
    acc
}

fn zonal_orbit_sum(o: &GroupOrbit, coeffs: &[Rational], x1x2: bool, degree: u32) -> FieldElement {
    let mut hist: HashMap<(IntCoord, IntCoord), u64> = HashMap::new();
    for idx in 0..o.len() {
        let a = o.coord(idx, 0);
        let b = if x1x2 { o.coord(idx, 1) } else { [0; 8] };
        *hist.entry((a, b)).or_insert(0) += 1;
    }
    let e = degree - if x1x2 { 2 } else { 0 };
    let mut acc = FieldElement::zero();
    for ((a, b), count) in hist {
        let y1 = int_to_field(&a, o.denom());
        let p = o.norm_sq() - &y1.square();
        let y1sq = y1.square();
        // Σ cⱼ y1^(e−2j) p^j, Horner in p/y1² avoided: accumulate powers
        let mut h = FieldElement::zero();
        let mut ppow = FieldElement::one();
        for (j, c) in coeffs.iter().enumerate() {
            let j = j as u32;
            let x_part = if (e - 2 * j).is_multiple_of(2) { y1sq.pow((e - 2 * j) / 2) } else { &y1sq.pow((e - 2 * j) / 2) * &y1 };
            h += &(&x_part * &ppow).scale(c);
            ppow = &ppow * &p;
        }
        if x1x2 {
            h = &(&h * &y1) * &int_to_field(&b, o.denom());
        }
        acc += &h.scale(&int(count as i64));
    }
    acc
}

/// f(y/‖y‖) for a point y whose orbit is `o` (needed for group-summed kinds).
pub fn eval_on_orbit(g: &ReflectionGroupData, spec: &InvariantSpec, o: &GroupOrbit) -> Result<FieldElement> {
    let n = o.len() as i64;
    let factor = Rational::new(BigInt::from(g.order), BigInt::from(n));
    let raw = match &spec.kind {
        HarmonicKind::Sym(_) => return Err(invalid("symmetric invariants are evaluated pointwise")),
        HarmonicKind::Zonal { coeffs, x1x2 } => zonal_orbit_sum(o, coeffs, *x1x2, spec.degree),
        HarmonicKind::GroupSym(t) => orbit_poly_sum(o, &expand_sym(t, g.dim), spec.degree),
    };
    Ok(raw.scale(&factor) / norm_pow(o.norm_sq(), spec.degree)?)
}

/// Value of the invariant at x/‖x‖.
pub fn eval_invariant(g: &ReflectionGroupData, spec: &InvariantSpec, x: &[FieldElement], cap: usize) -> Result<FieldElement> {
    if x.len() != g.dim {
        return Err(Error::DimensionMismatch { expected: g.dim, found: x.len() });
    }
    match &spec.kind {
        HarmonicKind::Sym(t) => Ok(eval_poly(&expand_sym(t, g.dim), x) / norm_pow(&dot(x, x), spec.degree)?),
        _ => eval_on_orbit(g, spec, &orbit(g, x, cap)?),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct UVector {
    pub label: String,
    pub degree: u32,
    /// uᵢ[k] = f(v_k') for each corner vector.
    pub entries: Vec<FieldElement>,
}

/// All u-vectors of a group together with the computed corner orbit sizes.
#[derive(Clone, Debug)]
pub struct UTable {
    pub group: ReflectionGroupData,
    pub specs: Vec<InvariantSpec>,
    pub rows: Vec<UVector>,
    pub orbit_sizes: Vec<u128>,
}

impl UTable {
    pub fn compute(g: &ReflectionGroupData, cap: usize) -> Result<Self> {
        let specs = invariant_basis(g.label);
        let mut rows: Vec<UVector> =
            specs.iter().map(|s| UVector { label: s.label.clone(), degree: s.degree, entries: Vec::new() }).collect();
        let mut sizes = Vec::new();
        for k in 0..g.rank() {
            let o = corner_orbit(g, k, cap)?;
            sizes.push(o.len() as u128);
            for (s, row) in specs.iter().zip(rows.iter_mut()) {
                let v = match &s.kind {
                    HarmonicKind::Sym(_) => eval_invariant(g, s, &g.corners[k], cap)?,
                    _ => eval_on_orbit(g, s, &o)?,
                };
                row.entries.push(v);
            }
        }
        Ok(UTable { group: g.clone(), specs, rows, orbit_sizes: sizes })
    }

    pub fn row(&self, label: &str) -> Option<&UVector> {
        self.rows.iter().find(|r| r.label == label)
    }

    pub fn rows_of_degree(&self, d: u32) -> impl Iterator<Item = &UVector> {
        self.rows.iter().filter(move |r| r.degree == d)
    }

    pub fn require_basis(&self, degrees: impl IntoIterator<Item = u32>) -> Result<()> {
        require_basis(&self.group, &self.specs, degrees)
    }

    /// Rows with every entry multiplied by a positive constant.
    pub fn scaled(&self, factors: &[Rational]) -> Self {
        let mut t = self.clone();
        for (row, f) in t.rows.iter_mut().zip(factors) {
            for e in row.entries.iter_mut() {
                *e = e.scale(f);
            }
        }
        t
    }
}

/// Per-degree comparison of two u-vectors: `Some(c)` if `computed = c·printed`
/// for a single positive rational c.
pub fn common_ratio(computed: &[FieldElement], printed: &[FieldElement]) -> Option<Rational> {
    if computed.len() != printed.len() {
        return None;
    }
    let mut ratio: Option<FieldElement> = None;
    for (a, b) in computed.iter().zip(printed) {
        if b.is_zero() {
            if !a.is_zero() {
                return None;
            }
            continue;
        }
        let r = a / b;
        match &ratio {
            None => ratio = Some(r),
            Some(q) if *q == r => {}
            Some(_) => return None,
        }
    }
    let r = ratio?.as_rational()?.clone();
    (r > Rational::zero()).then_some(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::reflect::groups::{group_data, EXCEPTIONAL};
    use crate::reflect::orbit::DEFAULT_ORBIT_CAP;

    #[test]
    fn every_shipped_invariant_is_harmonic() {
        for g in EXCEPTIONAL {
            let d = group_data(g).unwrap();
            for s in invariant_basis(g) {
                assert!(is_harmonic(&s, d.dim), "{g} f{}", s.label);
            }
        }
    }

    #[test]
    fn molien_series() {
        let f4 = group_data(GroupLabel::F4).unwrap();
        let dims = molien_dims(&f4, 14);
        assert_eq!(dims, alloc::vec![1, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 2, 0, 1]);
        let e7 = group_data(GroupLabel::E7).unwrap();
        let dims = molien_dims(&e7, 12);
        assert_eq!((dims[6], dims[8], dims[10], dims[12]), (1, 1, 1, 2));
    }

    #[test]
    fn basis_inventory_matches_molien() {
        for (g, complete_to) in [
            (GroupLabel::F4, 13u32),
            (GroupLabel::H3, 15),
            (GroupLabel::H4, 29),
            (GroupLabel::E6, 10),
            (GroupLabel::E7, 13),
            (GroupLabel::E8, 17),
        ] {
            let d = group_data(g).unwrap();
            let specs = invariant_basis(g);
            let dims = molien_dims(&d, 40);
            for s in &specs {
                assert!(dims[s.degree as usize] > 0, "{g}: shipped an invariant in a zero-dimensional degree");
            }
            assert!(require_basis(&d, &specs, 1..=complete_to).is_ok(), "{g}");
            assert!(require_basis(&d, &specs, 1..=complete_to + 1).is_err(), "{g}");
        }
    }

    #[test]
    fn f4_u8_entries() {
        let d = group_data(GroupLabel::F4).unwrap();
        let t = UTable::compute(&d, DEFAULT_ORBIT_CAP).unwrap();
        let want: Vec<FieldElement> = [rat(1, 1), rat(-13, 27), rat(-13, 27), rat(1, 1)].into_iter().map(FieldElement::from).collect();
        assert_eq!(t.row("8").unwrap().entries, want);
        assert_eq!(t.orbit_sizes, alloc::vec![24, 96, 96, 24]);
    }

    #[test]
    fn zonal_sum_is_invariant_under_the_starting_point() {
        // evaluating at another orbit point gives the same value
        let d = group_data(GroupLabel::H3).unwrap();
        let spec = &invariant_basis(GroupLabel::H3)[1];
        let o = corner_orbit(&d, 1, DEFAULT_ORBIT_CAP).unwrap();
        let a = eval_invariant(&d, spec, &o.point(0), DEFAULT_ORBIT_CAP).unwrap();
        let b = eval_invariant(&d, spec, &o.point(7), DEFAULT_ORBIT_CAP).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sym_invariant_is_group_invariant() {
        let d = group_data(GroupLabel::H3).unwrap();
        let spec = &invariant_basis(GroupLabel::H3)[0];
        let o = corner_orbit(&d, 0, DEFAULT_ORBIT_CAP).unwrap();
        let vals: Vec<FieldElement> = (0..o.len()).map(|i| eval_invariant(&d, spec, &o.point(i), 10).unwrap()).collect();
        assert!(vals.iter().all(|v| *v == vals[0]));
    }

    #[test]
    fn ratios() {
        let a: Vec<FieldElement> = [2, 4, 0].iter().map(|&x| FieldElement::from_int(x)).collect();
        let b: Vec<FieldElement> = [1, 2, 0].iter().map(|&x| FieldElement::from_int(x)).collect();
        assert_eq!(common_ratio(&a, &b), Some(rat(2, 1)));
        assert_eq!(common_ratio(&b, &a.iter().map(|x| -x).collect::<Vec<_>>()), None);
        let c: Vec<FieldElement> = [2, 5, 0].iter().map(|&x| FieldElement::from_int(x)).collect();
        assert_eq!(common_ratio(&c, &b), None);
    }

    #[test]
    fn permutation_counts() {
        assert_eq!(permutations(&[2, 1], 4).len(), 12);
        assert_eq!(permutations(&[1, 1, 1], 3).len(), 1);
        assert_eq!(permutations(&[4, 2, 2], 4).len(), 12);
    }
}
