use alloc::vec::Vec;
use hashbrown::HashMap;
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{invalid, precondition, Error, Result};
use crate::exactnum::{biguint_to_rational, binomial, Rational};

/// Incidence structure on points `0..v` with distinct, sorted blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDesign {
    v: usize,
    blocks: Vec<Vec<usize>>,
}

impl BlockDesign {
    pub fn new(v: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        if v > 64 {
            return Err(invalid("designs are limited to 64 points"));
        }
        let mut seen = hashbrown::HashSet::new();
        let mut out = Vec::with_capacity(blocks.len());
        for mut b in blocks {
            b.sort_unstable();
            b.dedup();
            if b.is_empty() {
                return Err(invalid("empty block"));
            }
            if let Some(&p) = b.iter().find(|&&p| p >= v) {
                return Err(invalid(alloc::format!("point {p} outside 0..{v}")));
            }
            if !seen.insert(b.clone()) {
                return Err(invalid(alloc::format!("repeated block {b:?}")));
            }
            out.push(b);
        }
        Ok(BlockDesign { v, blocks: out })
    }

    /// All `k`-subsets of `0..v`.
    pub fn complete(v: usize, k: usize) -> Result<Self> {
        Self::new(v, subsets(v, k))
    }

    /// Development of a difference set in ℤ_n × ℤ_n (points `n·i + j`).
    pub fn from_difference_set_zn2(n: usize, base: &[(usize, usize)]) -> Result<Self> {
        let mut blocks = Vec::new();
        for gi in 0..n {
            for gj in 0..n {
                blocks.push(base.iter().map(|&(a, b)| n * ((a + gi) % n) + (b + gj) % n).collect());
            }
        }
        Self::new(n * n, blocks)
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    /// Distinct block sizes, ascending.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.blocks.iter().map(Vec::len).collect();
        s.sort_unstable();
        s.dedup();
        s
    }
}

/// Coverage report: `lambdas[t']` is the common number of blocks through a
/// `t'`-subset, or `None` if it varies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DesignReport {
    pub v: usize,
    pub sizes: Vec<(usize, usize)>,
    pub lambdas: Vec<Option<u64>>,
}

impl DesignReport {
    pub fn t(&self) -> usize {
        self.lambdas.len() - 1
    }

    /// Every t-subset lies in the same number of blocks.
    pub fn is_balanced(&self) -> bool {
        self.lambdas.last().copied().flatten().is_some()
    }

    pub fn lambda(&self) -> Option<u64> {
        self.lambdas.last().copied().flatten()
    }

    /// Constant coverage at every level `0..=t`.
    pub fn is_regular(&self) -> bool {
        self.lambdas.iter().all(Option::is_some)
    }

    /// Largest level with constant coverage.
    pub fn max_t(&self) -> usize {
        self.lambdas.iter().rposition(Option::is_some).unwrap_or(0)
    }

    pub fn count_of_size(&self, k: usize) -> usize {
        self.sizes.iter().find(|s| s.0 == k).map_or(0, |s| s.1)
    }
}

pub fn verify_design(d: &BlockDesign, t: usize) -> Result<DesignReport> {
    if t > d.v {
        return Err(invalid("t exceeds the number of points"));
    }
    let mut sizes: Vec<(usize, usize)> = Vec::new();
    for b in &d.blocks {
        match sizes.iter_mut().find(|s| s.0 == b.len()) {
            Some(s) => s.1 += 1,
            None => sizes.push((b.len(), 1)),
        }
    }
    sizes.sort_unstable();
    let lambdas = (0..=t).map(|tp| coverage(d, tp)).collect();
    Ok(DesignReport { v: d.v, sizes, lambdas })
}

fn coverage(d: &BlockDesign, tp: usize) -> Option<u64> {
    if tp == 0 {
        return Some(d.blocks.len() as u64);
    }
    let mut counts: HashMap<u64, u64> = HashMap::new();
    for b in &d.blocks {
        if b.len() < tp {
            continue;
        }
        for sub in subsets(b.len(), tp) {
            let key = sub.iter().fold(0u64, |m, &i| m | 1 << b[i]);
            *counts.entry(key).or_insert(0) += 1;
        }
    }
    let total = binomial(d.v as u64, tp as u64).to_u64()?;
    if counts.is_empty() {
        return Some(0);
    }
    if counts.len() as u64 != total {
        return None;
    }
    let first = *counts.values().next()?;
    counts.values().all(|&c| c == first).then_some(first)
}

/// Lexicographic `k`-subsets of `0..n`.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else { break };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}

/// λ·C(v−t′, t−t′)/C(k−t′, t−t′), the number of blocks of a t-(v,k,λ)
/// design through a fixed t′-set. A non-integral value means no such
/// design exists.
pub fn block_count(v: u64, k: u64, t: u64, lambda: &Rational, tp: u64) -> Result<Rational> {
    if !(tp <= t && t <= k && k <= v) {
        return Err(invalid("block_count needs t' <= t <= k <= v"));
    }
    let num = biguint_to_rational(binomial(v - tp, t - tp));
    let den = biguint_to_rational(binomial(k - tp, t - tp));
    Ok(lambda * num / den)
}

/// Σ_{i<f} C(v, e−i), the Fisher-type lower bound on the number of blocks
/// of a regular 2e-wise balanced design with f block sizes.
pub fn xiang_bound(v: u64, e: u64, f: u64) -> Result<BigUint> {
    if f == 0 || e + 1 < f {
        return Err(invalid("xiang_bound needs f >= 1 and e >= f-1"));
    }
    Ok((0..f).fold(BigUint::zero(), |acc, i| acc + binomial(v, e - i)))
}

/// Drops point `x`: blocks avoiding `x` are kept, blocks through `x` lose
/// it. Points above `x` are renumbered down by one.
pub fn derive_design(d: &BlockDesign, x: usize) -> Result<BlockDesign> {
    if x >= d.v {
        return Err(invalid("derived point out of range"));
    }
    let sizes = d.block_sizes();
    if sizes.len() != 1 {
        return Err(precondition("derivation needs a design with a single block size"));
    }
    let rep = verify_design(d, 1)?;
    if !rep.is_balanced() {
        return Err(precondition("derivation needs a t-design with t >= 1"));
    }
    let relabel = |p: usize| if p > x { p - 1 } else { p };
    let mut blocks: Vec<Vec<usize>> =
        d.blocks.iter().filter(|b| !b.contains(&x)).map(|b| b.iter().map(|&p| relabel(p)).collect()).collect();
    blocks.extend(
        d.blocks.iter().filter(|b| b.contains(&x) && b.len() > 1).map(|b| b.iter().filter(|&&p| p != x).map(|&p| relabel(p)).collect()),
    );
    BlockDesign::new(d.v - 1, blocks)
}

/// Largest t for which `d` is a t-design (every level is then regular).
pub fn design_strength(d: &BlockDesign) -> usize {
    let kmin = d.blocks.iter().map(Vec::len).min().unwrap_or(0);
    let mut t = 0;
    while t < kmin && coverage(d, t + 1).is_some() {
        t += 1;
    }
    t
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_v: usize,
    pub max_nodes: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_v: 10, max_nodes: 50_000_000 }
    }
}

/// Exhaustive backtracking for a design on `v` points with block sizes
/// from `sizes` in which every t-set lies in exactly `lambda` blocks.
/// `Ok(None)` means the whole space was searched without success.
pub fn search_design(v: usize, sizes: &[usize], t: usize, lambda: u64, limits: SearchLimits) -> Result<Option<BlockDesign>> {
    if v > limits.max_v {
        return Err(Error::SearchLimit(alloc::format!("v = {v} exceeds the search cap {}", limits.max_v)));
    }
    if t == 0 || t > v || lambda == 0 {
        return Err(invalid("search needs 1 <= t <= v and lambda >= 1"));
    }
    let tsets = subsets(v, t);
    let index: HashMap<u64, usize> = tsets.iter().enumerate().map(|(i, s)| (s.iter().fold(0u64, |m, &p| m | 1 << p), i)).collect();
    // candidates and, per candidate, the t-sets it covers
    let mut cands: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for &k in sizes {
        if k < t || k > v {
            continue;
        }
        for b in subsets(v, k) {
            let cov = subsets(k, t).iter().map(|s| index[&s.iter().fold(0u64, |m, &i| m | 1 << b[i])]).collect();
            cands.push((b, cov));
        }
    }
    let mut by_tset: Vec<Vec<usize>> = alloc::vec![Vec::new(); tsets.len()];
    for (ci, (_, cov)) in cands.iter().enumerate() {
        for &s in cov {
            by_tset[s].push(ci);
        }
    }
    struct St<'a> {
        cands: &'a [(Vec<usize>, Vec<usize>)],
        by_tset: &'a [Vec<usize>],
        cover: Vec<u64>,
        used: Vec<bool>,
        chosen: Vec<usize>,
        lambda: u64,
        nodes: u64,
        max_nodes: u64,
    }
    fn go(st: &mut St) -> Result<bool> {
        st.nodes += 1;
        if st.nodes > st.max_nodes {
            return Err(Error::SearchLimit("node budget exhausted".into()));
        }
        // the t-set with the fewest remaining options goes first
        let mut best: Option<(usize, usize)> = None;
        for (s, c) in st.cover.iter().enumerate() {
            if *c == st.lambda {
                continue;
            }
            let opts = st.by_tset[s].iter().filter(|&&ci| !st.used[ci] && st.cands[ci].1.iter().all(|&u| st.cover[u] < st.lambda)).count();
            if best.is_none_or(|b| opts < b.1) {
                best = Some((s, opts));
            }
        }
        let Some((s, _)) = best else { return Ok(true) };
        let opts: Vec<usize> = st.by_tset[s].clone();
        for ci in opts {
            if st.used[ci] || !st.cands[ci].1.iter().all(|&u| st.cover[u] < st.lambda) {
                continue;
            }
            st.used[ci] = true;
            st.chosen.push(ci);
            for &u in &st.cands[ci].1 {
                st.cover[u] += 1;
            }
            if go(st)? {
                return Ok(true);
            }
            for &u in &st.cands[ci].1 {
                st.cover[u] -= 1;
            }
            st.chosen.pop();
            st.used[ci] = false;
        }
        Ok(false)
    }
    let mut st = St {
        cands: &cands,
        by_tset: &by_tset,
        cover: alloc::vec![0; tsets.len()],
        used: alloc::vec![false; cands.len()],
        chosen: Vec::new(),
        lambda,
        nodes: 0,
        max_nodes: limits.max_nodes,
    };
    if !go(&mut st)? {
        return Ok(None);
    }
    let blocks = st.chosen.iter().map(|&ci| cands[ci].0.clone()).collect();
    BlockDesign::new(v, blocks).map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::catalog;
    use crate::exactnum::int;

    #[test]
    fn sqs8_and_its_derived_design() {
        let sqs = catalog::sqs8();
        let rep = verify_design(&sqs, 3).unwrap();
        assert_eq!(rep.lambda(), Some(1));
        assert_eq!(sqs.b(), 14);
        assert_eq!(rep.lambdas, alloc::vec![Some(14), Some(7), Some(3), Some(1)]);
        let d = derive_design(&sqs, 7).unwrap();
        let r = verify_design(&d, 3).unwrap();
        assert!(r.is_regular());
        assert_eq!(r.sizes, alloc::vec![(3, 7), (4, 7)]);
    }

    #[test]
    fn inversive_plane_derivation() {
        let ip = catalog::inversive_plane_10();
        assert_eq!(verify_design(&ip, 3).unwrap().lambda(), Some(1));
        let d = derive_design(&ip, 4).unwrap();
        let r = verify_design(&d, 3).unwrap();
        assert!(r.is_regular());
        assert_eq!(r.sizes, alloc::vec![(3, 12), (4, 18)]);
    }

    #[test]
    fn pairs_derived() {
        let d = derive_design(&BlockDesign::complete(3, 2).unwrap(), 2).unwrap();
        assert_eq!(d.blocks(), &[alloc::vec![0, 1], alloc::vec![0], alloc::vec![1]]);
        assert!(verify_design(&d, 2).unwrap().is_regular());
    }

    #[test]
    fn counts_and_bounds() {
        assert_eq!(block_count(8, 4, 3, &int(1), 0).unwrap(), int(14));
        assert_eq!(block_count(10, 4, 3, &int(1), 0).unwrap(), int(30));
        assert_eq!(block_count(9, 4, 3, &int(2), 3).unwrap(), int(2));
        assert!(!block_count(6, 4, 3, &int(1), 1).unwrap().is_integer());
        assert_eq!(xiang_bound(7, 1, 1).unwrap(), BigUint::from(7u32));
        assert_eq!(xiang_bound(9, 2, 2).unwrap(), BigUint::from(45u32));
        assert_eq!(xiang_bound(9, 2, 1).unwrap(), BigUint::from(36u32));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(BlockDesign::new(3, alloc::vec![alloc::vec![0, 1], alloc::vec![1, 0]]).is_err());
        assert!(BlockDesign::new(3, alloc::vec![alloc::vec![3]]).is_err());
        assert!(BlockDesign::new(3, alloc::vec![alloc::vec![]]).is_err());
    }

    #[test]
    fn searches() {
        let lim = SearchLimits::default();
        let fano = search_design(7, &[3], 2, 1, lim).unwrap().unwrap();
        assert_eq!(fano.b(), 7);
        assert_eq!(verify_design(&fano, 2).unwrap().lambda(), Some(1));
        let m = search_design(4, &[2], 1, 1, lim).unwrap().unwrap();
        assert_eq!(m.b(), 2);
        assert!(search_design(6, &[4], 3, 1, lim).unwrap().is_none());
        assert!(search_design(11, &[3], 2, 1, lim).is_err());
    }
}
