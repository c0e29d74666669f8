//! Linear subspaces of `F^{n+1}` in canonical reduced row echelon form.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldElement, PowerMap};
use crate::linalg::Matrix;

/// A subspace stored by the RREF of a basis. Two values are equal exactly
/// when they describe the same subspace.
#[derive(Clone)]
pub struct Subspace {
    field: Arc<FieldDescriptor>,
    ambient_dim: usize,
    basis: Matrix,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.basis == other.basis
            && (Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field)
    }
}

impl Eq for Subspace {}

impl std::hash::Hash for Subspace {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ambient_dim.hash(state);
        self.basis.hash(state);
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace{:?}", self.basis.row_vecs())
    }
}

impl Subspace {
    /// Span of the given vectors (any spanning set, possibly dependent).
    pub fn span(
        field: &Arc<FieldDescriptor>,
        ambient_dim: usize,
        vectors: &[Vec<FieldElement>],
    ) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient_dim) {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                found: v.len(),
            });
        }
        let mut data = Vec::with_capacity(vectors.len() * ambient_dim);
        for v in vectors {
            data.extend_from_slice(v);
        }
        Ok(Self::from_matrix(
            field,
            Matrix::from_flat(vectors.len(), ambient_dim, data),
        ))
    }

    /// Row space of `m`.
    pub fn from_matrix(field: &Arc<FieldDescriptor>, mut m: Matrix) -> Self {
        m.rref(field);
        Subspace {
            field: Arc::clone(field),
            ambient_dim: m.cols(),
            basis: m,
        }
    }

    /// Wraps a matrix already known to be in RREF with no zero rows.
    pub(crate) fn from_rref_unchecked(field: &Arc<FieldDescriptor>, basis: Matrix) -> Self {
        Subspace {
            field: Arc::clone(field),
            ambient_dim: basis.cols(),
            basis,
        }
    }

    pub fn zero(field: &Arc<FieldDescriptor>, ambient_dim: usize) -> Self {
        Self::from_rref_unchecked(field, Matrix::zeros(0, ambient_dim))
    }

    pub fn full(field: &Arc<FieldDescriptor>, ambient_dim: usize) -> Self {
        Self::from_rref_unchecked(field, Matrix::identity(ambient_dim))
    }

    pub fn field(&self) -> &Arc<FieldDescriptor> {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|i| {
                self.basis
                    .row(i)
                    .iter()
                    .position(|x| !x.is_zero())
                    .expect("rref rows are nonzero")
            })
            .collect()
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        let m = self.basis.stack(&Matrix::from_flat(1, v.len(), v.to_vec()));
        m.rank(&self.field) == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.sum(other).dim() == other.dim()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Self::from_matrix(&self.field, self.basis.stack(&other.basis))
    }

    /// Vectors `c` with `c . u = 0` for every `u` in the subspace.
    pub fn annihilator(&self) -> Subspace {
        Self::from_rref_unchecked(&self.field, self.basis.nullspace(&self.field))
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let stacked = self.annihilator().basis.stack(&other.annihilator().basis);
        Self::from_rref_unchecked(&self.field, stacked.nullspace(&self.field))
    }

    /// Applies an entrywise power map (a field automorphism) to every vector.
    pub fn map_entries(&self, map: PowerMap) -> Subspace {
        // field automorphisms preserve RREF
        Self::from_rref_unchecked(&self.field, self.basis.map_entries(&self.field, map))
    }

    /// Image of the subspace under the matrix `m` acting on column vectors.
    pub fn image_under(&self, m: &Matrix) -> Subspace {
        let rows: Vec<Vec<FieldElement>> = (0..self.dim())
            .map(|i| m.mul_vec(&self.field, self.basis.row(i)))
            .collect();
        let data = rows.concat();
        Self::from_matrix(&self.field, Matrix::from_flat(rows.len(), m.rows(), data))
    }

    /// `{w : m w in self}`.
    pub fn preimage_under(&self, m: &Matrix) -> Subspace {
        let ann = self.annihilator();
        let cond = ann.basis.mul(&self.field, m);
        Self::from_rref_unchecked(&self.field, cond.nullspace(&self.field))
    }

    /// Row-major element indices of the canonical basis.
    pub fn to_indices(&self) -> Vec<Vec<u32>> {
        (0..self.dim())
            .map(|i| self.basis.row(i).iter().map(|x| x.index()).collect())
            .collect()
    }
}
