//! Exact dense linear algebra over [`Scalar`].

mod subspace;

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub use subspace::GradedSubspace;

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: format!("{cols} columns"), found: format!("{}", row.len()) });
            }
            data.extend(row);
        }
        Ok(Matrix { rows: nrows, cols, data })
    }

    pub fn from_integers(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged integer matrix");
                r.iter().map(|&v| Scalar::from_integer(v))
            })
            .collect();
        Matrix { rows: rows.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: format!("{} rows", self.cols), found: format!("{}", other.rows) });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, k: u32) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch { expected: "square matrix".into(), found: format!("{}x{}", self.rows, self.cols) });
        }
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Reduced row-echelon form (same shape, zero rows last) and the rank.
    pub fn rref(&self) -> (Matrix, usize) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots.len())
    }

    /// Row-reduces in place; returns the pivot columns in order.
    pub(crate) fn rref_in_place(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].inv().expect("pivot is nonzero");
            if !inv.is_one() {
                for j in c..cols {
                    let v = &self[(r, j)] * &inv;
                    self[(r, j)] = v;
                }
            }
            for i in 0..rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..cols {
                    if self[(r, j)].is_zero() {
                        continue;
                    }
                    let d = &f * &self[(r, j)];
                    self[(i, j)] -= &d;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch { expected: "square matrix".into(), found: format!("{}x{}", self.rows, self.cols) });
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Scalar::one();
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::SingularMatrix);
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    /// Basis of `{v : M v = 0}`, one vector per free column, in column order.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&m[(r, free)];
            }
            out.push(v);
        }
        out
    }

    /// Drops zero rows of an echelon matrix.
    pub(crate) fn truncate_rows(&mut self, rows: usize) {
        self.rows = rows;
        self.data.truncate(rows * self.cols);
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Jordan block sizes in non-increasing order; the derived `Ord` is
/// lexicographic on the parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Sorts `parts` into non-increasing order and drops zeros.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn largest(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    /// `rank(M^k)` of any nilpotent matrix with this Jordan type.
    pub fn rank_of_power(&self, k: usize) -> usize {
        self.0.iter().map(|&p| p.saturating_sub(k)).sum()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("-");
        }
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// Rank sequence `rank(M^0), rank(M^1), …` up to and including the first zero.
pub fn nilpotent_rank_sequence(m: &Matrix, nil_bound: usize) -> Result<Vec<usize>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch { expected: "square matrix".into(), found: format!("{}x{}", m.rows, m.cols) });
    }
    let mut ranks = vec![m.rows];
    let mut power = Matrix::identity(m.rows);
    while *ranks.last().unwrap() > 0 {
        if ranks.len() > nil_bound {
            return Err(Error::NotNilpotent(nil_bound));
        }
        power = power.mul(m)?;
        let r = power.rank();
        if r == *ranks.last().unwrap() {
            return Err(Error::NotNilpotent(nil_bound));
        }
        ranks.push(r);
    }
    Ok(ranks)
}

/// Jordan type of a nilpotent matrix from the ranks of its powers: there are
/// `r_{k-1} - r_k` blocks of size at least `k`.
pub fn jordan_partition(m: &Matrix, nil_bound: usize) -> Result<Partition> {
    let ranks = nilpotent_rank_sequence(m, nil_bound)?;
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut parts = Vec::new();
    for (k, &count) in at_least.iter().enumerate() {
        let next = at_least.get(k + 1).copied().unwrap_or(0);
        parts.extend(std::iter::repeat_n(k + 1, count - next));
    }
    Ok(Partition::new(parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn shift(d: usize) -> Matrix {
        let mut m = Matrix::zeros(d, d);
        for i in 0..d.saturating_sub(1) {
            m[(i + 1, i)] = Scalar::one();
        }
        m
    }

    #[test]
    fn rref_examples() {
        let (e, r) = Matrix::identity(3).rref();
        assert_eq!((e, r), (Matrix::identity(3), 3));
        assert_eq!(Matrix::zeros(2, 2).rref(), (Matrix::zeros(2, 2), 0));
        let (e, r) = Matrix::from_integers(&[&[1, 2], &[2, 4]]).rref();
        assert_eq!(e, Matrix::from_integers(&[&[1, 2], &[0, 0]]));
        assert_eq!(r, 1);
    }

    #[test]
    fn inverse_and_nullspace() {
        let a = Matrix::from_integers(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(2));
        assert_eq!(Matrix::from_integers(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::SingularMatrix));
        let ns = Matrix::from_integers(&[&[1, 2], &[2, 4]]).nullspace();
        assert_eq!(ns, vec![vec![Scalar::from_integer(-2), Scalar::one()]]);
    }

    #[test]
    fn jordan_examples() {
        assert_eq!(jordan_partition(&Matrix::zeros(3, 3), 3).unwrap(), Partition::new(vec![1, 1, 1]));
        assert_eq!(jordan_partition(&shift(3), 3).unwrap(), Partition::new(vec![3]));
        // right multiplication by e1 in the 4-dimensional null-filiform algebra
        assert_eq!(jordan_partition(&shift(4), 4).unwrap(), Partition::new(vec![4]));
        assert_eq!(jordan_partition(&Matrix::zeros(0, 0), 0).unwrap(), Partition::default());
        assert_eq!(jordan_partition(&Matrix::identity(2), 2), Err(Error::NotNilpotent(2)));
        assert_eq!(jordan_partition(&shift(4), 2), Err(Error::NotNilpotent(2)));
    }

    #[test]
    fn partition_order_is_lexicographic() {
        assert!(Partition::new(vec![4, 1]) > Partition::new(vec![3, 2]));
        assert!(Partition::new(vec![3, 2]) > Partition::new(vec![3, 1, 1]));
        assert_eq!(Partition::new(vec![1, 3, 0]).to_string(), "3,1");
    }

    /// Block-diagonal nilpotent matrix with the given block sizes, conjugated
    /// by a unimodular triangular matrix so the blocks are not visible.
    fn disguised(parts: &[usize], mix: &[i64]) -> Matrix {
        let d: usize = parts.iter().sum();
        let mut j = Matrix::zeros(d, d);
        let mut off = 0;
        for &p in parts {
            for i in 0..p - 1 {
                j[(off + i + 1, off + i)] = Scalar::one();
            }
            off += p;
        }
        let mut p = Matrix::identity(d);
        let mut it = mix.iter().cycle();
        for r in 0..d {
            for c in r + 1..d {
                p[(r, c)] = Scalar::from_integer(*it.next().unwrap());
            }
        }
        p.mul(&j).unwrap().mul(&p.inverse().unwrap()).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn partition_reconstructs_ranks(parts in prop::collection::vec(1usize..4, 1..4),
                                        mix in prop::collection::vec(-2i64..=2, 1..6)) {
            let m = disguised(&parts, &mix);
            let p = jordan_partition(&m, m.rows()).unwrap();
            prop_assert_eq!(p.total(), m.rows());
            prop_assert_eq!(&p, &Partition::new(parts.clone()));
            for k in 0..=m.rows() {
                prop_assert_eq!(p.rank_of_power(k), m.pow(k as u32).unwrap().rank());
            }
        }

        #[test]
        fn rref_is_idempotent(cells in prop::collection::vec(-3i64..=3, 12)) {
            let rows: Vec<Vec<Scalar>> = cells.chunks(4).map(|c| c.iter().map(|&v| Scalar::from_integer(v)).collect()).collect();
            let m = Matrix::from_rows(4, rows).unwrap();
            let (e, r) = m.rref();
            prop_assert_eq!(e.rref(), (e.clone(), r));
            prop_assert_eq!(r, m.transpose().rank());
        }
    }
}
