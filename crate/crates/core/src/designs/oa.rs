use alloc::vec::Vec;
use hashbrown::{HashMap, HashSet};

use crate::error::{invalid, Result};

use super::block::subsets;

/// ±1 array with rows packed as bit masks (bit j set ⇔ entry j is +1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalArray {
    l: usize,
    rows: Vec<u64>,
}

impl OrthogonalArray {
    pub fn from_masks(l: usize, rows: Vec<u64>) -> Result<Self> {
        if l == 0 || l > 64 {
            return Err(invalid("orthogonal arrays need 1..=64 columns"));
        }
        let mask = if l == 64 { u64::MAX } else { (1u64 << l) - 1 };
        if rows.iter().any(|r| r & !mask != 0) {
            return Err(invalid("row has bits beyond the column count"));
        }
        Ok(OrthogonalArray { l, rows })
    }

    pub fn from_signs(rows: &[Vec<i8>]) -> Result<Self> {
        let l = rows.first().map_or(0, Vec::len);
        let mut masks = Vec::with_capacity(rows.len());
        for r in rows {
            if r.len() != l {
                return Err(invalid("ragged orthogonal array"));
            }
            let mut m = 0u64;
            for (j, &s) in r.iter().enumerate() {
                match s {
                    1 => m |= 1 << j,
                    -1 => {}
                    _ => return Err(invalid("entries must be +1 or -1")),
                }
            }
            masks.push(m);
        }
        Self::from_masks(l, masks)
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn masks(&self) -> &[u64] {
        &self.rows
    }

    pub fn sign(&self, row: usize, col: usize) -> i8 {
        if self.rows[row] >> col & 1 == 1 {
            1
        } else {
            -1
        }
    }

    pub fn row_signs(&self, row: usize) -> Vec<i8> {
        (0..self.l).map(|c| self.sign(row, c)).collect()
    }

    /// Sub-array on the given columns (in the given order).
    pub fn columns(&self, cols: &[usize]) -> Result<Self> {
        if cols.iter().any(|&c| c >= self.l) {
            return Err(invalid("column out of range"));
        }
        let rows = self.rows.iter().map(|r| cols.iter().enumerate().fold(0u64, |m, (j, &c)| m | (r >> c & 1) << j)).collect();
        Self::from_masks(cols.len(), rows)
    }

    /// Rows closed under negation, counted with multiplicity.
    pub fn is_centrally_symmetric(&self) -> bool {
        let full = if self.l == 64 { u64::MAX } else { (1u64 << self.l) - 1 };
        let mut count: HashMap<u64, i64> = HashMap::new();
        for &r in &self.rows {
            *count.entry(r).or_insert(0) += 1;
        }
        count.iter().all(|(r, c)| count.get(&(!r & full)) == Some(c))
    }

    pub fn has_repeated_rows(&self) -> bool {
        let set: HashSet<u64> = self.rows.iter().copied().collect();
        set.len() != self.rows.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OaReport {
    /// Largest s ≤ requested t at which every s columns are balanced.
    pub strength: usize,
    pub requested: usize,
    /// First column set (lexicographic, smallest size) that is unbalanced.
    pub violation: Option<Vec<usize>>,
    pub centrally_symmetric: bool,
}

impl OaReport {
    pub fn passes(&self) -> bool {
        self.strength >= self.requested
    }

    /// Index N/2^t at the requested strength.
    pub fn index(&self, n: usize) -> usize {
        n >> self.requested
    }
}

fn balanced(a: &OrthogonalArray, cols: &[usize]) -> bool {
    let s = cols.len();
    if !a.rows.len().is_multiple_of(1 << s) {
        return false;
    }
    let want = a.rows.len() >> s;
    let mut counts = alloc::vec![0usize; 1 << s];
    for &r in &a.rows {
        let key = cols.iter().enumerate().fold(0usize, |k, (j, &c)| k | ((r >> c & 1) as usize) << j);
        counts[key] += 1;
    }
    counts.iter().all(|&c| c == want)
}

pub fn verify_oa(a: &OrthogonalArray, t: usize) -> Result<OaReport> {
    if t > a.l {
        return Err(invalid("strength exceeds the number of columns"));
    }
    let mut strength = 0;
    let mut violation = None;
    'outer: for s in 1..=t {
        for cols in subsets(a.l, s) {
            if !balanced(a, &cols) {
                violation = Some(cols);
                break 'outer;
            }
        }
        strength = s;
    }
    Ok(OaReport { strength, requested: t, violation, centrally_symmetric: a.is_centrally_symmetric() })
}

/// Full 2^l × l sign array; row i lists the bits of i with column 0 most
/// significant, so `trivial_oa(1)` is `[[−1], [+1]]`.
pub fn trivial_oa(l: usize) -> Result<OrthogonalArray> {
    if l == 0 || l > 24 {
        return Err(invalid("trivial OA needs 1 <= l <= 24"));
    }
    let rows = (0..1u64 << l).map(|i| (0..l).fold(0u64, |m, j| m | (i >> (l - 1 - j) & 1) << j)).collect();
    OrthogonalArray::from_masks(l, rows)
}

/// Rows are the codewords spanned by `generator` over 𝔽₂ (0 ↦ −1, 1 ↦ +1).
pub fn oa_from_linear_code(generator: &[Vec<u8>]) -> Result<OrthogonalArray> {
    let l = generator.first().map_or(0, Vec::len);
    if generator.iter().any(|r| r.len() != l || r.iter().any(|&b| b > 1)) {
        return Err(invalid("generator must be a rectangular 0/1 matrix"));
    }
    let gens: Vec<u64> = generator.iter().map(|r| r.iter().enumerate().fold(0u64, |m, (j, &b)| m | (b as u64) << j)).collect();
    // reduce to a basis so the span is enumerated once
    let mut basis: Vec<u64> = Vec::new();
    for mut g in gens {
        for &b in &basis {
            let top = 63 - b.leading_zeros();
            if g >> top & 1 == 1 {
                g ^= b;
            }
        }
        if g != 0 {
            for b in basis.iter_mut() {
                let top = 63 - g.leading_zeros();
                if *b >> top & 1 == 1 {
                    *b ^= g;
                }
            }
            basis.push(g);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    if basis.len() > 24 {
        return Err(invalid("code too large to enumerate"));
    }
    let rows = (0..1u64 << basis.len())
        .map(|i| basis.iter().enumerate().filter(|(j, _)| i >> j & 1 == 1).fold(0u64, |m, (_, &b)| m ^ b))
        .collect();
    OrthogonalArray::from_masks(l, rows)
}

/// 𝔽₃₂ = 𝔽₂[x]/(x⁵ + x² + 1).
mod gf32 {
    const POLY: u8 = 0b100101;

    pub fn mul(mut a: u8, mut b: u8) -> u8 {
        let mut r = 0;
        while b != 0 {
            if b & 1 == 1 {
                r ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a & 0x20 != 0 {
                a ^= POLY;
            }
        }
        r
    }

    pub fn pow(a: u8, e: u32) -> u8 {
        (0..e).fold(1, |acc, _| mul(acc, a))
    }

    pub fn trace(a: u8) -> u8 {
        let mut s = 0;
        let mut x = a;
        for _ in 0..5 {
            s ^= x;
            x = mul(x, x);
        }
        s
    }
}

/// Generator of the dual of the double-error-correcting binary BCH code of
/// length 31: rows tr(β·α^i) and tr(β·α^{3i}) for β running over a basis.
pub fn dual_bch_generator() -> Vec<Vec<u8>> {
    let alpha = 0b10u8;
    let mut rows = Vec::new();
    for power in [1u32, 3] {
        for j in 0..5 {
            let beta = gf32::pow(alpha, j);
            rows.push((0..31).map(|i| gf32::trace(gf32::mul(beta, gf32::pow(alpha, power * i)))).collect());
        }
    }
    rows
}

pub fn dual_bch_oa() -> OrthogonalArray {
    oa_from_linear_code(&dual_bch_generator()).expect("dual BCH span")
}

/// The dual BCH code extended by the all-ones word: 2048 rows, closed under
/// negation. The plain dual code has weights 12, 16, 20 only and so is not.
pub fn dual_bch_oa_symmetric() -> OrthogonalArray {
    let mut g = dual_bch_generator();
    g.push(alloc::vec![1; 31]);
    oa_from_linear_code(&g).expect("extended dual BCH span")
}

/// The Nordstrom–Robinson code as a 256 × 16 array: Gray image
/// (0→00, 1→01, 2→11, 3→10) of the ℤ₄ octacode.
pub fn nordstrom_robinson() -> OrthogonalArray {
    const GEN: [[u8; 8]; 4] = [[1, 0, 0, 0, 3, 1, 2, 1], [0, 1, 0, 0, 1, 2, 3, 1], [0, 0, 1, 0, 3, 3, 3, 2], [0, 0, 0, 1, 2, 3, 1, 1]];
    let gray = |z: u8| -> (u64, u64) {
        match z {
            0 => (0, 0),
            1 => (0, 1),
            2 => (1, 1),
            _ => (1, 0),
        }
    };
    let mut rows = Vec::with_capacity(256);
    for c in 0..256u32 {
        let coef = [c & 3, c >> 2 & 3, c >> 4 & 3, c >> 6 & 3];
        let mut mask = 0u64;
        for j in 0..8 {
            let z = (0..4).map(|i| coef[i] * GEN[i][j] as u32).sum::<u32>() % 4;
            let (a, b) = gray(z as u8);
            mask |= a << (2 * j) | b << (2 * j + 1);
        }
        rows.push(mask);
    }
    OrthogonalArray::from_masks(16, rows).expect("octacode image")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_arrays() {
        let a = trivial_oa(1).unwrap();
        assert_eq!(a.row_signs(0), alloc::vec![-1]);
        assert_eq!(a.row_signs(1), alloc::vec![1]);
        for l in 1..=4 {
            let a = trivial_oa(l).unwrap();
            assert_eq!(a.n(), 1 << l);
            let r = verify_oa(&a, l).unwrap();
            assert!(r.passes() && r.centrally_symmetric);
            assert_eq!(r.index(a.n()), 1);
        }
    }

    #[test]
    fn linear_codes() {
        let id = oa_from_linear_code(&[alloc::vec![1, 0], alloc::vec![0, 1]]).unwrap();
        let mut got = id.masks().to_vec();
        got.sort_unstable();
        assert_eq!(got, alloc::vec![0, 1, 2, 3]);
        let even = oa_from_linear_code(&[alloc::vec![1, 1, 0], alloc::vec![0, 1, 1], alloc::vec![1, 0, 1]]).unwrap();
        assert_eq!(even.n(), 4);
        let r = verify_oa(&even, 3).unwrap();
        assert_eq!(r.strength, 2);
        assert_eq!(r.violation, Some(alloc::vec![0, 1, 2]));
    }

    #[test]
    fn nordstrom_robinson_strength() {
        let nr = nordstrom_robinson();
        assert_eq!(nr.n(), 256);
        assert!(!nr.has_repeated_rows());
        let r = verify_oa(&nr, 5).unwrap();
        assert!(r.passes());
        assert!(r.centrally_symmetric);
        assert!(!verify_oa(&nr, 6).unwrap().passes());
    }

    #[test]
    fn dual_bch_strength() {
        let a = dual_bch_oa();
        assert_eq!((a.n(), a.l()), (1024, 31));
        let r = verify_oa(&a, 4).unwrap();
        assert!(r.passes());
        assert!(!r.centrally_symmetric);
        let s = dual_bch_oa_symmetric();
        let r = verify_oa(&s, 5).unwrap();
        assert_eq!(s.n(), 2048);
        assert!(r.passes() && r.centrally_symmetric);
    }
}
