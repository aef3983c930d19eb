//! Dense exact linear algebra over `Q` and over `Q(d, m, j, r)`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::coeff::RatFunc;

pub trait Field: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Inverse of a nonzero element.
    fn inv(&self) -> Self;
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        RatFunc::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        RatFunc::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        RatFunc::mul(self, other)
    }
    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }
    fn inv(&self) -> Self {
        RatFunc::inv(self).expect("pivot is nonzero")
    }
}

pub type Matrix<F> = Vec<Vec<F>>;

/// Reduces `m` (with `cols` columns) to reduced row echelon form in place and
/// returns the pivot columns.
pub fn rref<F: Field>(m: &mut Matrix<F>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].inv();
        for x in m[row].iter_mut() {
            *x = x.mul(&inv);
        }
        for r in 0..m.len() {
            if r == row || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..cols {
                if m[row][c].is_zero() {
                    continue;
                }
                let delta = factor.mul(&m[row][c]);
                m[r][c] = m[r][c].sub(&delta);
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &Matrix<F>, cols: usize) -> usize {
    let mut work = m.clone();
    rref(&mut work, cols).len()
}

/// A basis of `{x : m x = 0}`, one vector per free column with a 1 in that
/// column.
pub fn nullspace<F: Field>(m: &Matrix<F>, cols: usize) -> Vec<Vec<F>> {
    let mut work = m.clone();
    let pivots = rref(&mut work, cols);
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![F::zero(); cols];
        v[free] = F::one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = work[row][free].neg();
        }
        out.push(v);
    }
    out
}

pub fn determinant<F: Field>(m: &Matrix<F>) -> F {
    let n = m.len();
    let mut work = m.clone();
    let mut det = F::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !work[r][col].is_zero()) else {
            return F::zero();
        };
        if p != col {
            work.swap(p, col);
            det = det.neg();
        }
        det = det.mul(&work[col][col]);
        let inv = work[col][col].inv();
        for r in col + 1..n {
            if work[r][col].is_zero() {
                continue;
            }
            let factor = work[r][col].mul(&inv);
            for c in col..n {
                let delta = factor.mul(&work[col][c]);
                work[r][c] = work[r][c].sub(&delta);
            }
        }
    }
    det
}

/// Column indices of a maximal linearly independent subset of the columns,
/// greedily from the left.
pub fn independent_columns<F: Field>(m: &Matrix<F>, cols: usize) -> Vec<usize> {
    let mut work = m.clone();
    rref(&mut work, cols)
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order.
pub fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn mat(rows: &[&[i64]]) -> Matrix<BigRational> {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn small_kernel() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(rank(&m, 3), 1);
        let ns = nullspace(&m, 3);
        assert_eq!(ns, vec![vec![q(-2), q(1), q(0)], vec![q(-3), q(0), q(1)]]);
    }

    #[test]
    fn determinant_with_swap() {
        let m = mat(&[&[0, 1], &[1, 0]]);
        assert_eq!(determinant(&m), q(-1));
        let sym = vec![
            vec![RatFunc::var(1), RatFunc::var(1)],
            vec![RatFunc::var(1), RatFunc::var(0)],
        ];
        let d = determinant(&sym);
        assert_eq!(d, RatFunc::var(1).mul(&RatFunc::var(0)).sub(&RatFunc::var(1).mul(&RatFunc::var(1))));
    }

    #[test]
    fn subsets_and_binomials() {
        let mut seen = Vec::new();
        for_each_subset(4, 2, |s| seen.push(s.to_vec()));
        assert_eq!(seen.len() as u128, binomial(4, 2));
        assert_eq!(seen[0], vec![0, 1]);
        assert_eq!(seen[5], vec![2, 3]);
    }

    proptest! {
        #[test]
        fn nullspace_vectors_are_in_kernel(
            entries in proptest::collection::vec(-3i64..4, 12),
        ) {
            let m: Matrix<BigRational> = entries.chunks(4).map(|r| r.iter().map(|&x| q(x)).collect()).collect();
            let ns = nullspace(&m, 4);
            prop_assert_eq!(ns.len() + rank(&m, 4), 4);
            for v in ns {
                for row in &m {
                    let dot = row.iter().zip(&v).fold(q(0), |acc, (a, b)| acc + a * b);
                    prop_assert!(Zero::is_zero(&dot));
                }
            }
        }
    }
}
