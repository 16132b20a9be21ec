//! The Yang-Baxter operator `R_Q` as an exact `n^2 x n^2` matrix.
//!
//! Index convention, used everywhere in this crate: the pair `(a, b)` is the
//! row-major index `a * n + b`. The matrix has row `(k, l)` and column `(i, j)`
//! holding `R_ij^kl`, so it acts on `V (x) V` by
//! `e_i (x) e_j -> sum_kl R_ij^kl e_k (x) e_l`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::params::ParamSet;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatrix {
    n: usize,
    matrix: Matrix,
}

/// Outcome of a Yang-Baxter check. `witness` is the first differing entry of
/// the two cubic products as `(row, col)` multi-indices in `V^(x3)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YbeOutcome {
    pub holds: bool,
    pub witness: Option<([usize; 3], [usize; 3])>,
}

impl RMatrix {
    /// Wraps an arbitrary `n^2 x n^2` matrix.
    pub fn from_matrix(n: usize, matrix: Matrix) -> Result<RMatrix> {
        let d = n * n;
        if matrix.rows() != d || matrix.cols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: if matrix.rows() != d {
                    matrix.rows()
                } else {
                    matrix.cols()
                },
            });
        }
        Ok(RMatrix { n, matrix })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `R_ij^kl`
    pub fn entry(&self, i: usize, j: usize, k: usize, l: usize) -> &Scalar {
        let n = self.n;
        &self.matrix[(k * n + l, i * n + j)]
    }

    /// Returns a copy with `delta` added to `R_ij^kl`.
    pub fn perturbed(&self, (i, j, k, l): (usize, usize, usize, usize), delta: &Scalar) -> RMatrix {
        let n = self.n;
        let mut m = self.matrix.clone();
        let cell = &mut m[(k * n + l, i * n + j)];
        *cell = &*cell + delta;
        RMatrix { n, matrix: m }
    }

    /// Nonzero entries per column.
    pub fn column_support(&self) -> Vec<usize> {
        let d = self.n * self.n;
        (0..d)
            .map(|c| (0..d).filter(|&r| !self.matrix[(r, c)].is_zero()).count())
            .collect()
    }
}

/// `R_ij^kl = kappa_j^i` if `i = l, j = k`; `r - 1` if `i = k, j = l, i > j`;
/// zero otherwise.
pub fn build_r(ps: &ParamSet) -> RMatrix {
    let n = ps.n();
    let field = ps.field();
    let kappa = ps.kappa();
    let r_minus_one = ps.r() - Scalar::one(field);
    let mut m = Matrix::zeros(field, n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            let col = i * n + j;
            // i = l, j = k
            m[(j * n + i, col)] = kappa.get(i, j).clone();
            if i > j {
                m[(i * n + j, col)] = r_minus_one.clone();
            }
        }
    }
    RMatrix { n, matrix: m }
}

/// Compares `(R x I)(I x R)(R x I)` with `(I x R)(R x I)(I x R)` entrywise.
pub fn check_ybe(r: &RMatrix) -> Result<YbeOutcome> {
    let n = r.n;
    let d = n * n;
    if r.matrix.rows() != d || r.matrix.cols() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: r.matrix.rows(),
        });
    }
    let field = r.matrix[(0, 0)].field().clone();
    let id = Matrix::identity(&field, n);
    let r12 = r.matrix.kron(&id);
    let r23 = id.kron(&r.matrix);
    let lhs = r12.mul(&r23)?.mul(&r12)?;
    let rhs = r23.mul(&r12)?.mul(&r23)?;
    let witness = lhs.first_difference(&rhs).map(|(row, col)| {
        let split = |x: usize| [x / d, (x / n) % n, x % n];
        (split(row), split(col))
    });
    Ok(YbeOutcome {
        holds: witness.is_none(),
        witness,
    })
}

pub fn invert_r(r: &RMatrix) -> Result<RMatrix> {
    Ok(RMatrix {
        n: r.n,
        matrix: r.matrix.inverse()?,
    })
}
