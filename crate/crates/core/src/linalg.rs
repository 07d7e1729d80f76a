//! Dense exact linear algebra over ℚ and ℚ(√2,√3,√5).

use alloc::vec::Vec;
use num_traits::{One, Zero};

use crate::exactnum::{FieldElement, Rational};

pub trait Scalar: Clone + PartialEq + core::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn sadd(&self, o: &Self) -> Self;
    fn ssub(&self, o: &Self) -> Self;
    fn smul(&self, o: &Self) -> Self;
    fn sdiv(&self, o: &Self) -> Self;
    fn sneg(&self) -> Self;
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn sadd(&self, o: &Self) -> Self {
        self + o
    }
    fn ssub(&self, o: &Self) -> Self {
        self - o
    }
    fn smul(&self, o: &Self) -> Self {
        self * o
    }
    fn sdiv(&self, o: &Self) -> Self {
        self / o
    }
    fn sneg(&self) -> Self {
        -self
    }
}

impl Scalar for FieldElement {
    fn zero() -> Self {
        FieldElement::zero()
    }
    fn one() -> Self {
        FieldElement::one()
    }
    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }
    fn sadd(&self, o: &Self) -> Self {
        self + o
    }
    fn ssub(&self, o: &Self) -> Self {
        self - o
    }
    fn smul(&self, o: &Self) -> Self {
        self * o
    }
    fn sdiv(&self, o: &Self) -> Self {
        self / o
    }
    fn sneg(&self) -> Self {
        -self
    }
}

pub type Matrix<S> = Vec<Vec<S>>;

/// Reduced row echelon form in place, choosing pivot columns in the order
/// given by `col_order` (columns not listed are never pivots). Returns the
/// pivot column of each nonzero row.
pub fn rref_ordered<S: Scalar>(m: &mut Matrix<S>, col_order: &[usize]) -> Vec<usize> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for &c in col_order {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = S::one().sdiv(&m[r][c]);
        for x in m[r].iter_mut() {
            if !x.is_zero() {
                *x = x.smul(&inv);
            }
        }
        let pivot_row = m[r].clone();
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for (x, y) in m[i].iter_mut().zip(pivot_row.iter()) {
                if !y.is_zero() {
                    *x = x.ssub(&f.smul(y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rref<S: Scalar>(m: &mut Matrix<S>) -> Vec<usize> {
    let cols = m.first().map_or(0, Vec::len);
    let order: Vec<usize> = (0..cols).collect();
    rref_ordered(m, &order)
}

pub fn rank<S: Scalar>(m: &Matrix<S>) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Solves a square system given as an augmented `n × (n+1)` matrix; `None`
/// when the coefficient matrix is singular.
pub fn solve_augmented<S: Scalar>(mut m: Matrix<S>) -> Option<Vec<S>> {
    let n = m.len();
    let order: Vec<usize> = (0..n).collect();
    let piv = rref_ordered(&mut m, &order);
    if piv.len() < n {
        return None;
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Affine solution set of `A x = b`: a particular solution with free
/// variables set to zero plus one direction per free variable.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineSolution<S> {
    pub pivots: Vec<usize>,
    pub free: Vec<usize>,
    pub particular: Vec<S>,
    /// `directions[k]` is the change in x per unit of `x[free[k]]`.
    pub directions: Vec<Vec<S>>,
}

/// Solves `A x = b` with pivots preferred in `col_order`; `None` if
/// inconsistent.
pub fn solve_affine<S: Scalar>(a: &Matrix<S>, b: &[S], col_order: &[usize]) -> Option<AffineSolution<S>> {
    let n = a.first().map_or(0, Vec::len);
    let mut m: Matrix<S> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref_ordered(&mut m, col_order);
    for row in m.iter().skip(pivots.len()) {
        if !row[n].is_zero() {
            return None;
        }
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut particular = alloc::vec![S::zero(); n];
    for (r, &p) in pivots.iter().enumerate() {
        particular[p] = m[r][n].clone();
    }
    let directions = free
        .iter()
        .map(|&f| {
            let mut d = alloc::vec![S::zero(); n];
            d[f] = S::one();
            for (r, &p) in pivots.iter().enumerate() {
                d[p] = m[r][f].sneg();
            }
            d
        })
        .collect();
    Some(AffineSolution { pivots, free, particular, directions })
}

pub fn mat_vec<S: Scalar>(a: &Matrix<S>, x: &[S]) -> Vec<S> {
    a.iter()
        .map(|row| row.iter().zip(x).fold(S::zero(), |acc, (p, q)| if p.is_zero() || q.is_zero() { acc } else { acc.sadd(&p.smul(q)) }))
        .collect()
}
