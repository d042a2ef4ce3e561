use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::Matrix;

/// A subspace `V₀ ⊕ V₁` of a graded space `K^n ⊕ K^m`, stored as two RREF
/// bases without zero rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSubspace {
    even: Matrix,
    odd: Matrix,
}

fn echelon(cols: usize, vectors: Vec<Vec<Scalar>>) -> Result<Matrix> {
    let mut m = Matrix::from_rows(cols, vectors)?;
    let rank = m.rref_in_place().len();
    m.truncate_rows(rank);
    Ok(m)
}

fn reduces_to_zero(basis: &Matrix, v: &[Scalar]) -> bool {
    let mut rows = basis.row_vectors();
    rows.push(v.to_vec());
    Matrix::from_rows(basis.cols(), rows).expect("lengths agree").rank() == basis.rows()
}

impl GradedSubspace {
    pub fn zero(n: usize, m: usize) -> Self {
        GradedSubspace { even: Matrix::zeros(0, n), odd: Matrix::zeros(0, m) }
    }

    pub fn whole(n: usize, m: usize) -> Self {
        GradedSubspace { even: Matrix::identity(n), odd: Matrix::identity(m) }
    }

    /// Span of homogeneous vectors: `even` in `K^n`, `odd` in `K^m`.
    pub fn span(n: usize, m: usize, even: Vec<Vec<Scalar>>, odd: Vec<Vec<Scalar>>) -> Result<Self> {
        Ok(GradedSubspace { even: echelon(n, even)?, odd: echelon(m, odd)? })
    }

    pub fn ambient(&self) -> (usize, usize) {
        (self.even.cols(), self.odd.cols())
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.even.rows(), self.odd.rows())
    }

    pub fn dim(&self) -> usize {
        self.even.rows() + self.odd.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn even_basis(&self) -> &Matrix {
        &self.even
    }

    pub fn odd_basis(&self) -> &Matrix {
        &self.odd
    }

    fn check_ambient(&self, other: &GradedSubspace) -> Result<()> {
        if self.ambient() != other.ambient() {
            return Err(Error::DimensionMismatch { expected: format!("{:?}", self.ambient()), found: format!("{:?}", other.ambient()) });
        }
        Ok(())
    }

    pub fn sum(&self, other: &GradedSubspace) -> Result<Self> {
        self.check_ambient(other)?;
        let (n, m) = self.ambient();
        let mut even = self.even.row_vectors();
        even.extend(other.even.row_vectors());
        let mut odd = self.odd.row_vectors();
        odd.extend(other.odd.row_vectors());
        GradedSubspace::span(n, m, even, odd)
    }

    /// Membership of `even + odd`; both components must lie in the subspace.
    pub fn contains_vector(&self, even: &[Scalar], odd: &[Scalar]) -> Result<bool> {
        let (n, m) = self.ambient();
        if even.len() != n || odd.len() != m {
            return Err(Error::DimensionMismatch { expected: format!("({n}|{m})"), found: format!("({}|{})", even.len(), odd.len()) });
        }
        let e = even.iter().all(Scalar::is_zero) || reduces_to_zero(&self.even, even);
        let o = odd.iter().all(Scalar::is_zero) || reduces_to_zero(&self.odd, odd);
        Ok(e && o)
    }

    pub fn contains(&self, other: &GradedSubspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.sum(other)?.dims() == self.dims())
    }

    pub fn equals(&self, other: &GradedSubspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self == other)
    }
}
