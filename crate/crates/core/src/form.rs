//! q-bic forms given by Gram matrices.
//!
//! Conventions, fixed once for the whole crate: for a Gram matrix `A`,
//! `beta(u^[1], v) = (u^(q))^T A v` where `u^(q)` is the entrywise `q`-th
//! power. The right kernel is `ker A` in source coordinates, the left kernel
//! is `ker A^T` in Frobenius-twisted coordinates, and the canonical
//! `q^2`-linear endomorphism is `phi(v) = A^{-1} (A^(q))^T v^(q^2)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{embed, FieldDescriptor, FieldElement, PowerMap};
use crate::linalg::{dot, map_vec, Matrix};
use crate::subspace::Subspace;

/// Isomorphism type `(a; b_1, b_2, ...)` of a q-bic form: `a` copies of the
/// `1x1` identity block plus `b_m` nilpotent Jordan blocks of size `m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FormType {
    pub a: usize,
    /// Block size `m` to multiplicity `b_m`; zero multiplicities are not stored.
    pub blocks: BTreeMap<usize, usize>,
}

impl FormType {
    pub fn new(a: usize, blocks: impl IntoIterator<Item = (usize, usize)>) -> Self {
        FormType {
            a,
            blocks: blocks.into_iter().filter(|&(m, b)| m > 0 && b > 0).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.a + self.blocks.iter().map(|(m, b)| m * b).sum::<usize>()
    }

    pub fn corank(&self) -> usize {
        self.blocks.values().sum()
    }

    pub fn b(&self, m: usize) -> usize {
        self.blocks.get(&m).copied().unwrap_or(0)
    }

    /// Every type of the given dimension, in a fixed order.
    pub fn all_of_dim(dim: usize) -> Vec<FormType> {
        let mut out = Vec::new();
        for a in (0..=dim).rev() {
            for part in partitions(dim - a, dim - a) {
                let mut blocks = BTreeMap::new();
                for m in part {
                    *blocks.entry(m).or_insert(0) += 1;
                }
                out.push(FormType { a, blocks });
            }
        }
        out
    }
}

impl fmt::Display for FormType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.a)?;
        if self.blocks.is_empty() {
            write!(f, " -")?;
        }
        for (i, (m, b)) in self.blocks.iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            write!(f, "{sep}b_{m}={b}")?;
        }
        write!(f, ")")
    }
}

/// Partitions of `n` into parts of size at most `max`, largest part first.
fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(n)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Rank, kernels and radical of a form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kernels {
    pub rank: usize,
    pub corank: usize,
    /// `ker A`, in source coordinates.
    pub right_kernel: Subspace,
    /// `ker A^T`, in twisted coordinates.
    pub left_kernel: Subspace,
    /// `{v : A v = 0 and (v^(q))^T A = 0}`.
    pub radical: Subspace,
}

/// A q-bic form on `F^{n+1}` where `F` has order `q^{2s}`.
#[derive(Clone)]
pub struct QBicForm {
    q: u64,
    s: u32,
    field: Arc<FieldDescriptor>,
    gram: Matrix,
    frob_q: PowerMap,
    frob_q2: PowerMap,
    frob_q_inv: PowerMap,
    phi: Option<Matrix>,
}

impl fmt::Debug for QBicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QBicForm")
            .field("q", &self.q)
            .field("field_order", &self.field.order())
            .field("gram", &self.gram.row_vecs())
            .finish()
    }
}

impl PartialEq for QBicForm {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && *self.field == *other.field && self.gram == other.gram
    }
}

impl QBicForm {
    /// Wraps a square Gram matrix. The field must have order `q^{2s}`, `s >= 1`.
    pub fn new(q: u64, field: Arc<FieldDescriptor>, gram: Matrix) -> Result<Self> {
        if gram.rows() != gram.cols() {
            return Err(Error::DimensionMismatch {
                expected: gram.rows(),
                found: gram.cols(),
            });
        }
        if gram.rows() == 0 {
            return Err(Error::ParameterOutOfRange("forms need dimension at least 1".into()));
        }
        if gram.data().iter().any(|x| x.index() as u64 >= field.order()) {
            return Err(Error::ParameterOutOfRange("Gram entry is not a field element".into()));
        }
        field.check_power_of_p(q)?;
        let s = extension_exponent(q, field.order()).ok_or_else(|| {
            Error::ParameterOutOfRange(format!(
                "field of order {} is not of the form q^(2s) for q = {q}",
                field.order()
            ))
        })?;
        let frob_q = field.frobenius_map(q)?;
        let frob_q2 = field.frobenius_map(q * q)?;
        let frob_q_inv = field.frobenius_inverse_map(q)?;
        let phi = gram.inverse(&field).map(|inv| {
            let twisted_t = gram.map_entries(&field, frob_q).transpose();
            inv.mul(&field, &twisted_t)
        });
        Ok(QBicForm {
            q,
            s,
            field,
            gram,
            frob_q,
            frob_q2,
            frob_q_inv,
            phi,
        })
    }

    /// The Fermat form `x_0^{q+1} + ... + x_n^{q+1}` (identity Gram matrix).
    pub fn fermat(q: u64, field: Arc<FieldDescriptor>, n: usize) -> Result<Self> {
        Self::new(q, field, Matrix::identity(n + 1))
    }

    /// Block-diagonal normal form `1^{a} + sum_m N_m^{b_m}`.
    pub fn from_type(q: u64, field: Arc<FieldDescriptor>, ty: &FormType) -> Result<Self> {
        Self::new(q, field, type_gram(ty))
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// The `s` with `|field| = q^{2s}`.
    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn field(&self) -> &Arc<FieldDescriptor> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn is_zero(&self) -> bool {
        self.gram.is_zero()
    }

    pub(crate) fn frob_q(&self) -> PowerMap {
        self.frob_q
    }

    pub(crate) fn frob_q2(&self) -> PowerMap {
        self.frob_q2
    }

    pub(crate) fn frob_q_inv(&self) -> PowerMap {
        self.frob_q_inv
    }

    /// `v^(q)`, the entrywise `q`-th power.
    pub fn twist(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        map_vec(&self.field, self.frob_q, v)
    }

    fn check_len(&self, v: &[FieldElement]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            });
        }
        Ok(())
    }

    /// `beta(u^[1], v) = sum_{i,j} a_ij u_i^q v_j`.
    pub fn evaluate(&self, u: &[FieldElement], v: &[FieldElement]) -> Result<FieldElement> {
        self.check_len(u)?;
        self.check_len(v)?;
        Ok(self.evaluate_unchecked(u, v))
    }

    #[inline]
    pub(crate) fn evaluate_unchecked(&self, u: &[FieldElement], v: &[FieldElement]) -> FieldElement {
        let av = self.gram.mul_vec(&self.field, v);
        dot(&self.field, &self.twist(u), &av)
    }

    /// Gram matrix `B^(q) A B^T` of the restriction to the row space of `basis`.
    pub(crate) fn restricted_gram(&self, basis: &Matrix) -> Matrix {
        let f = &self.field;
        let twisted = basis.map_entries(f, self.frob_q);
        twisted.mul(f, &self.gram).mul(f, &basis.transpose())
    }

    /// The form restricted to `u`, in the coordinates of `u`'s canonical basis.
    /// The result may be the zero form.
    pub fn restrict(&self, u: &Subspace) -> Result<QBicForm> {
        if u.ambient_dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: u.ambient_dim(),
            });
        }
        if u.dim() == 0 {
            return Err(Error::ParameterOutOfRange("cannot restrict to the zero subspace".into()));
        }
        QBicForm::new(self.q, Arc::clone(&self.field), self.restricted_gram(u.basis()))
    }

    pub fn kernels(&self) -> Kernels {
        let f = &self.field;
        let right = Subspace::from_rref_unchecked(f, self.gram.nullspace(f));
        let left = Subspace::from_rref_unchecked(f, self.gram.transpose().nullspace(f));
        let radical = right.intersection(&left.map_entries(self.frob_q_inv));
        let rank = self.dim() - right.dim();
        Kernels {
            rank,
            corank: self.dim() - rank,
            right_kernel: right,
            left_kernel: left,
            radical,
        }
    }

    pub fn is_smooth(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroForm);
        }
        Ok(self.phi.is_some())
    }

    /// Points `[x]` with `(x^(q))^T A = 0`, i.e. the descended left kernel,
    /// in source coordinates. Its projectivization is the singular locus of
    /// the hypersurface.
    pub fn singular_locus(&self) -> Result<Subspace> {
        if self.is_zero() {
            return Err(Error::ZeroForm);
        }
        Ok(self.kernels().left_kernel.map_entries(self.frob_q_inv))
    }

    /// True when the hypersurface is a cone, i.e. the radical is nonzero.
    pub fn is_cone(&self) -> bool {
        self.kernels().radical.dim() > 0
    }

    /// `A^{-1} (A^(q))^T`, when `A` is invertible.
    pub fn phi_matrix(&self) -> Result<&Matrix> {
        self.phi.as_ref().ok_or(Error::SingularForm)
    }

    pub fn phi_apply(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        self.check_len(v)?;
        let m = self.phi_matrix()?;
        Ok(m.mul_vec(&self.field, &map_vec(&self.field, self.frob_q2, v)))
    }

    /// `phi^k(v)`.
    pub fn phi_iterate(&self, v: &[FieldElement], k: usize) -> Result<Vec<FieldElement>> {
        let mut cur = v.to_vec();
        for _ in 0..k {
            cur = self.phi_apply(&cur)?;
        }
        self.check_len(&cur)?;
        Ok(cur)
    }

    /// `phi(U)`, spanned by the images of a basis.
    pub fn phi_subspace(&self, u: &Subspace) -> Result<Subspace> {
        let m = self.phi_matrix()?;
        Ok(u.map_entries(self.frob_q2).image_under(m))
    }

    /// Whether `phi(v) = v` for this exact representative.
    pub fn is_hermitian_vector(&self, v: &[FieldElement]) -> Result<bool> {
        self.check_len(v)?;
        if v.iter().all(|x| x.is_zero()) {
            return Err(Error::ZeroVector);
        }
        Ok(self.phi_apply(v)? == v)
    }

    /// Projective variant: returns the scalar `c` with `phi(v) = c v` if the
    /// line through `v` is `phi`-stable. Over a large enough extension the
    /// rescaled vector `lambda v` with `lambda^{q^2 - 1} = c^{-1}` is fixed.
    pub fn hermitian_line_scalar(&self, v: &[FieldElement]) -> Result<Option<FieldElement>> {
        self.check_len(v)?;
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return Err(Error::ZeroVector);
        };
        let image = self.phi_apply(v)?;
        let f = &self.field;
        let c = f.div(image[pivot], v[pivot]).expect("pivot is nonzero");
        let scaled: Vec<_> = v.iter().map(|&x| f.mul(c, x)).collect();
        Ok((scaled == image).then_some(c))
    }

    /// Base change along the canonical embedding into `target`.
    pub fn base_change(&self, target: &Arc<FieldDescriptor>) -> Result<QBicForm> {
        if Arc::ptr_eq(&self.field, target) || *self.field == **target {
            return Ok(self.clone());
        }
        let emb = embed(&self.field, target)?;
        let data = self.gram.data().iter().map(|&x| emb.apply(x)).collect();
        QBicForm::new(
            self.q,
            Arc::clone(target),
            Matrix::from_flat(self.dim(), self.dim(), data),
        )
    }

    /// Whether `(A^(q))^T = A`, so that `phi` is the plain `q^2`-power
    /// Frobenius and the Hermitian structure is the standard one.
    pub fn is_hermitian_matrix(&self) -> bool {
        self.gram.map_entries(&self.field, self.frob_q).transpose() == self.gram
    }

    /// Applies a change of basis: the form with Gram matrix `P^(q)T A P`.
    pub fn transform(&self, p: &Matrix) -> Result<QBicForm> {
        if p.rows() != self.dim() || p.cols() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: p.rows(),
            });
        }
        let f = &self.field;
        let g = p
            .map_entries(f, self.frob_q)
            .transpose()
            .mul(f, &self.gram)
            .mul(f, p);
        QBicForm::new(self.q, Arc::clone(f), g)
    }
}

/// Block-diagonal Gram matrix of a type.
pub fn type_gram(ty: &FormType) -> Matrix {
    let mut g = Matrix::identity(ty.a);
    for (&m, &b) in &ty.blocks {
        for _ in 0..b {
            g = g.direct_sum(&jordan_block(m));
        }
    }
    g
}

/// `m x m` nilpotent Jordan block: zeros on the diagonal, ones just above it.
pub fn jordan_block(m: usize) -> Matrix {
    let mut j = Matrix::zeros(m, m);
    for i in 0..m.saturating_sub(1) {
        j[(i, i + 1)] = FieldElement::ONE;
    }
    j
}

/// `s` with `order = q^{2s}`, if any.
pub(crate) fn extension_exponent(q: u64, order: u64) -> Option<u32> {
    if q < 2 {
        return None;
    }
    let q2 = q.checked_mul(q)?;
    let mut acc = 1u64;
    let mut s = 0;
    while acc < order {
        acc = acc.checked_mul(q2)?;
        s += 1;
    }
    (acc == order && s >= 1).then_some(s)
}
