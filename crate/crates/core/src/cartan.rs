//! Infinitesimal braiding of the primitive space `V = span{x_i}` and
//! detection of Cartan type A.
//!
//! `x_i = E_{i+1}^i K_i^-1` and `c(x_i (x) x_j) = l_ij x_j (x) x_i` with
//! `l_ij` the eigenvalue of `Kbar_i = K_i^-1 K_{i+1}` on `x_j`.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::Result;
use crate::params::ParamSet;
use crate::scalar::Scalar;

/// Square matrix of scalars, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidMatrix {
    size: usize,
    entries: Vec<Scalar>,
}

impl BraidMatrix {
    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> BraidMatrix {
        let mut entries = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                entries.push(f(i, j));
            }
        }
        BraidMatrix { size, entries }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.size + j] = v;
    }
}

/// `l_ij = (kappa_j^i)^-1 kappa_{j+1}^i kappa_j^{i+1} (kappa_{j+1}^{i+1})^-1`.
pub fn braid_matrix(ps: &ParamSet) -> BraidMatrix {
    let k = ps.kappa();
    BraidMatrix::from_fn(ps.n() - 1, |i, j| {
        let num = k.get(i, j + 1) * k.get(i + 1, j);
        let den = k.get(i, j) * k.get(i + 1, j + 1);
        num.checked_div(&den).expect("kappa values are nonzero")
    })
}

/// The same coefficients from the explicit five-case table in terms of
/// `r`, `p_ij` and `q_ij`.
pub fn braid_matrix_by_cases(ps: &ParamSet) -> BraidMatrix {
    let div = |a: Scalar, b: &Scalar| a.checked_div(b).expect("parameters are nonzero");
    let r = ps.r();
    let (p, q) = (|a, b| ps.p(a, b).clone(), |a, b| ps.q(a, b).clone());
    BraidMatrix::from_fn(ps.n() - 1, |i, j| {
        if j + 1 < i {
            div(div(q(j, i + 1), &q(j + 1, i + 1)), &q(j, i)) * q(j + 1, i)
        } else if j + 1 == i {
            div(div(q(i - 1, i + 1), &q(i, i + 1)), &q(i - 1, i)) * r
        } else if j == i {
            r.inv().expect("r is nonzero")
        } else if j == i + 1 {
            div(div(r.clone(), &p(i + 1, i + 2)), &p(i, i + 1)) * p(i, i + 2)
        } else {
            div(div(p(i + 1, j), &p(i + 1, j + 1)), &p(i, j)) * p(i, j + 1)
        }
    })
}

/// `s_ij = l_ij l_ji`
pub fn symmetrized(bm: &BraidMatrix) -> BraidMatrix {
    BraidMatrix::from_fn(bm.size(), |i, j| bm.get(i, j) * bm.get(j, i))
}

/// The expected pattern: `r^-2` on the diagonal, `r` next to it, `1` elsewhere.
pub fn expected_symmetrized(ps: &ParamSet) -> Result<BraidMatrix> {
    let r = ps.r();
    let diag = r.pow(-2)?;
    let one = Scalar::one(ps.field());
    Ok(BraidMatrix::from_fn(ps.n() - 1, |i, j| {
        match i.abs_diff(j) {
            0 => diag.clone(),
            1 => r.clone(),
            _ => one.clone(),
        }
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CartanResult {
    TypeA {
        /// Number of nodes; the tag is `A_rank`.
        rank: usize,
        q: Scalar,
        cartan: Vec<Vec<i64>>,
        weights: Vec<u64>,
    },
    NotCartan {
        /// First `(i, j)` with `s_ij != q^{a_ij}`.
        witness: (usize, usize),
    },
}

impl CartanResult {
    pub fn tag(&self) -> Option<String> {
        match self {
            CartanResult::TypeA { rank, .. } => Some(alloc::format!("A_{rank}")),
            CartanResult::NotCartan { .. } => None,
        }
    }
}

/// The type A Cartan matrix of the given rank.
pub fn cartan_matrix_a(rank: usize) -> Vec<Vec<i64>> {
    (0..rank)
        .map(|i| {
            (0..rank)
                .map(|j| match i.abs_diff(j) {
                    0 => 2,
                    1 => -1,
                    _ => 0,
                })
                .collect()
        })
        .collect()
}

/// Tests `s_ij = q^{a_ij}` with `q = r^-1`, unit weights and the type A
/// Cartan matrix of rank `s.size()`.
pub fn detect_type_a(s: &BraidMatrix, r: &Scalar) -> Result<CartanResult> {
    let rank = s.size();
    let q = r.inv()?;
    let cartan = cartan_matrix_a(rank);
    for (i, row) in cartan.iter().enumerate() {
        for (j, &a) in row.iter().enumerate() {
            if s.get(i, j) != &q.pow(a)? {
                return Ok(CartanResult::NotCartan { witness: (i, j) });
            }
        }
    }
    Ok(CartanResult::TypeA {
        rank,
        q,
        cartan,
        weights: alloc::vec![1; rank],
    })
}
