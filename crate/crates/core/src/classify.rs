//! Isomorphism-type recognition for q-bic forms by invariant profiles.
//!
//! A profile collects quantities preserved by every change of basis
//! `A -> P^(q)T A P`: rank, radical, the saturating kernel chain, and a
//! closure signature. The signature is the lattice of subspaces generated
//! from `0` and `V` by the right and left orthogonals of the form, sums and
//! intersections, recorded in discovery order. Types are recognised by
//! comparing against the profiles of the block normal forms.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::field::FieldDescriptor;
use crate::form::{FormType, QBicForm};
use crate::linalg::Matrix;
use crate::subspace::Subspace;

/// Members beyond this bound are not explored; the signature records the
/// truncation, so it stays an invariant.
pub const SIGNATURE_CAP: usize = 512;

/// Canonical description of the orthogonality lattice of a form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClosureSignature {
    /// Dimension of each member, in discovery order.
    pub dims: Vec<usize>,
    /// Index of the right and left orthogonal of each member.
    pub perps: Vec<(u32, u32)>,
    /// For members `i > j`: index of `i ∩ j` and `i + j`, row by row.
    pub lattice: Vec<(u32, u32)>,
    pub truncated: bool,
}

/// How a profile matched the normal forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypeMatch {
    Unique(FormType),
    Ambiguous(Vec<FormType>),
    Unmatched,
}

impl fmt::Display for TypeMatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeMatch::Unique(t) => write!(f, "{t}"),
            TypeMatch::Ambiguous(ts) => {
                write!(f, "ambiguous:")?;
                for t in ts {
                    write!(f, " {t}")?;
                }
                Ok(())
            }
            TypeMatch::Unmatched => write!(f, "unmatched"),
        }
    }
}

/// The part of a profile compared between forms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Invariants {
    pub dim: usize,
    pub rank: usize,
    pub radical_dim: usize,
    pub chain_dims: Vec<usize>,
    pub signature: ClosureSignature,
}

#[derive(Debug, Clone)]
pub struct FormProfile {
    pub rank: usize,
    pub corank: usize,
    pub radical_dim: usize,
    pub right_kernel: Subspace,
    pub left_kernel: Subspace,
    pub invariants: Invariants,
    pub type_match: TypeMatch,
}

impl FormProfile {
    pub fn form_type(&self) -> Option<&FormType> {
        match &self.type_match {
            TypeMatch::Unique(t) => Some(t),
            _ => None,
        }
    }

    pub fn chain_dims(&self) -> &[usize] {
        &self.invariants.chain_dims
    }
}

/// `{v : beta(u^[1], v) = 0 for all u in U}`.
pub fn right_orthogonal(form: &QBicForm, u: &Subspace) -> Subspace {
    let f = form.field();
    if u.dim() == 0 {
        return Subspace::full(f, form.dim());
    }
    let cond = u.basis().map_entries(f, form.frob_q()).mul(f, form.gram());
    Subspace::from_matrix(f, cond.nullspace(f))
}

/// `{w : beta(w^[1], u) = 0 for all u in U}`.
pub fn left_orthogonal(form: &QBicForm, u: &Subspace) -> Subspace {
    let f = form.field();
    if u.dim() == 0 {
        return Subspace::full(f, form.dim());
    }
    let cond = u.basis().mul(f, &form.gram().transpose());
    Subspace::from_matrix(f, cond.nullspace(f)).map_entries(form.frob_q_inv())
}

/// Dimensions of `Q_1 = ker A`, `Q_{s+1} = Q_s + A^{-1}((A^(q))^T Q_s^(q^2))`
/// up to saturation.
pub fn kernel_chain(form: &QBicForm) -> Vec<usize> {
    let f = form.field();
    let a = form.gram();
    let twisted_t = a.map_entries(f, form.frob_q()).transpose();
    let mut q = Subspace::from_matrix(f, a.nullspace(f));
    let mut dims = vec![q.dim()];
    loop {
        let image = q.map_entries(form.frob_q2()).image_under(&twisted_t);
        let next = q.sum(&image.preimage_under(a));
        if next.dim() == q.dim() {
            return dims;
        }
        dims.push(next.dim());
        q = next;
    }
}

/// Closure of `{0, V}` under both orthogonals, sums and intersections.
pub fn closure_signature(form: &QBicForm) -> ClosureSignature {
    let f = form.field();
    let n = form.dim();
    let mut members: Vec<Subspace> = vec![Subspace::zero(f, n), Subspace::full(f, n)];
    let mut index: HashMap<Subspace, u32> = members
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i as u32))
        .collect();
    let mut perps = Vec::new();
    let mut lattice = Vec::new();
    let mut truncated = false;

    let mut intern = |s: Subspace, members: &mut Vec<Subspace>, truncated: &mut bool| -> u32 {
        if let Some(&i) = index.get(&s) {
            return i;
        }
        if members.len() >= SIGNATURE_CAP {
            *truncated = true;
            return u32::MAX;
        }
        let i = members.len() as u32;
        index.insert(s.clone(), i);
        members.push(s);
        i
    };

    let mut i = 0;
    while i < members.len() {
        let x = members[i].clone();
        let r = intern(right_orthogonal(form, &x), &mut members, &mut truncated);
        let l = intern(left_orthogonal(form, &x), &mut members, &mut truncated);
        perps.push((r, l));
        for j in 0..i {
            let y = members[j].clone();
            let meet = intern(x.intersection(&y), &mut members, &mut truncated);
            let join = intern(x.sum(&y), &mut members, &mut truncated);
            lattice.push((meet, join));
        }
        i += 1;
    }
    ClosureSignature {
        dims: members.iter().map(Subspace::dim).collect(),
        perps,
        lattice,
        truncated,
    }
}

pub fn invariants(form: &QBicForm) -> Invariants {
    let k = form.kernels();
    Invariants {
        dim: form.dim(),
        rank: k.rank,
        radical_dim: k.radical.dim(),
        chain_dims: kernel_chain(form),
        signature: closure_signature(form),
    }
}

/// Matches forms against the normal forms of one field and `q`, caching the
/// candidate profiles per dimension.
pub struct Classifier {
    q: u64,
    field: Arc<FieldDescriptor>,
    candidates: HashMap<usize, Vec<(FormType, Invariants)>>,
}

impl Classifier {
    pub fn new(q: u64, field: Arc<FieldDescriptor>) -> Self {
        Classifier {
            q,
            field,
            candidates: HashMap::new(),
        }
    }

    /// Precomputes the normal-form profiles of dimension `dim`.
    pub fn prepare(&mut self, dim: usize) -> &[(FormType, Invariants)] {
        let (q, field) = (self.q, Arc::clone(&self.field));
        self.candidates.entry(dim).or_insert_with(|| {
            FormType::all_of_dim(dim)
                .into_iter()
                .map(|t| {
                    let form = QBicForm::from_type(q, Arc::clone(&field), &t)
                        .expect("normal forms are valid over the classifier's field");
                    let inv = invariants(&form);
                    (t, inv)
                })
                .collect()
        })
    }

    /// Profile of a form whose dimension has been prepared.
    pub fn classify_prepared(&self, form: &QBicForm) -> Option<FormProfile> {
        let cands = self.candidates.get(&form.dim())?;
        Some(build_profile(form, cands))
    }

    pub fn classify(&mut self, form: &QBicForm) -> FormProfile {
        self.prepare(form.dim());
        self.classify_prepared(form).expect("dimension prepared")
    }
}

fn build_profile(form: &QBicForm, cands: &[(FormType, Invariants)]) -> FormProfile {
    let k = form.kernels();
    let inv = Invariants {
        dim: form.dim(),
        rank: k.rank,
        radical_dim: k.radical.dim(),
        chain_dims: kernel_chain(form),
        signature: closure_signature(form),
    };
    let matches: Vec<FormType> = cands
        .iter()
        .filter(|(_, c)| *c == inv)
        .map(|(t, _)| t.clone())
        .collect();
    let type_match = match matches.len() {
        0 => TypeMatch::Unmatched,
        1 => TypeMatch::Unique(matches.into_iter().next().expect("one match")),
        _ => TypeMatch::Ambiguous(matches),
    };
    FormProfile {
        rank: k.rank,
        corank: k.corank,
        radical_dim: k.radical.dim(),
        right_kernel: k.right_kernel,
        left_kernel: k.left_kernel,
        invariants: inv,
        type_match,
    }
}

/// Profile of a single form, with its type when the match is unique.
pub fn classify_type(form: &QBicForm) -> FormProfile {
    Classifier::new(form.q(), Arc::clone(form.field())).classify(form)
}

/// Random invertible matrix from a seeded source of field indices; used by
/// property tests.
pub fn random_invertible(field: &FieldDescriptor, n: usize, mut next: impl FnMut() -> u32) -> Matrix {
    loop {
        let data = (0..n * n)
            .map(|_| crate::field::FieldElement(next() % field.order() as u32))
            .collect();
        let m = Matrix::from_flat(n, n, data);
        if m.inverse(field).is_some() {
            return m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> Arc<FieldDescriptor> {
        Arc::new(FieldDescriptor::new(2, 2, None).unwrap())
    }

    #[test]
    fn fermat_is_all_ones() {
        let f = f4();
        for n in 1..5 {
            let p = classify_type(&QBicForm::fermat(2, f.clone(), n).unwrap());
            assert_eq!(p.form_type(), Some(&FormType::new(n + 1, [])));
            assert_eq!(p.corank, 0);
        }
    }

    #[test]
    fn diag_one_zero() {
        let p = classify_type(&QBicForm::from_type(2, f4(), &FormType::new(1, [(1, 1)])).unwrap());
        assert_eq!(p.form_type(), Some(&FormType::new(1, [(1, 1)])));
        assert_eq!(p.radical_dim, 1);
    }

    #[test]
    fn n4_and_n3_plus_1_are_separated() {
        let f = f4();
        let a = classify_type(&QBicForm::from_type(2, f.clone(), &FormType::new(0, [(4, 1)])).unwrap());
        let b = classify_type(&QBicForm::from_type(2, f, &FormType::new(1, [(3, 1)])).unwrap());
        assert_eq!(a.form_type(), Some(&FormType::new(0, [(4, 1)])));
        assert_eq!(b.form_type(), Some(&FormType::new(1, [(3, 1)])));
        assert_ne!(a.invariants, b.invariants);
    }

    #[test]
    fn normal_forms_have_distinct_profiles() {
        let f = f4();
        let mut c = Classifier::new(2, f);
        for dim in 1..=6 {
            let cands = c.prepare(dim).to_vec();
            for (i, (ti, a)) in cands.iter().enumerate() {
                assert!(!a.signature.truncated, "{ti}");
                for (tj, b) in &cands[..i] {
                    assert_ne!(a, b, "{ti} and {tj} share a profile");
                }
            }
        }
    }

    #[test]
    fn chain_is_monotone() {
        let f = f4();
        for t in FormType::all_of_dim(4) {
            let form = QBicForm::from_type(2, f.clone(), &t).unwrap();
            let chain = kernel_chain(&form);
            assert!(chain.windows(2).all(|w| w[0] < w[1]));
            assert_eq!(chain[0], t.corank());
        }
    }

    #[test]
    fn congruent_forms_share_type() {
        let f = Arc::new(FieldDescriptor::new(3, 2, None).unwrap());
        let mut state = 12345u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) as u32
        };
        let mut c = Classifier::new(3, f.clone());
        for t in FormType::all_of_dim(4) {
            let form = QBicForm::from_type(3, f.clone(), &t).unwrap();
            let p = random_invertible(&f, 4, &mut next);
            let moved = form.transform(&p).unwrap();
            assert_eq!(c.classify(&moved).form_type(), Some(&t));
        }
    }
}
