//! Enumeration of subspaces in reduced row echelon form and the counting
//! oracles built on it: isotropic (Fano) subspaces, Hermitian subspaces and
//! points of the filtration `X^k`.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rayon::prelude::*;

use crate::combinatorics::prime_power;
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldElement, DEFAULT_FIELD_CAP};
use crate::form::QBicForm;
use crate::linalg::{dot, Matrix};
use crate::subspace::Subspace;

/// Default cap on subspace visits.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

const FLUSH_EVERY: u64 = 1 << 14;

/// Worker count and visit budget for counting runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumConfig {
    /// Number of rayon workers; `0` uses every available core.
    pub workers: usize,
    pub budget: u64,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig {
            workers: 0,
            budget: DEFAULT_BUDGET,
        }
    }
}

impl EnumConfig {
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }
}

/// Pivot columns of an RREF matrix together with its free positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PivotPattern {
    pub pivots: Vec<usize>,
    /// `(row, column)` of every free entry, row-major.
    pub free: Vec<(usize, usize)>,
}

impl PivotPattern {
    fn new(pivots: Vec<usize>, ambient_dim: usize) -> Self {
        let mut free = Vec::new();
        for (row, &p) in pivots.iter().enumerate() {
            for col in (p + 1)..ambient_dim {
                if !pivots.contains(&col) {
                    free.push((row, col));
                }
            }
        }
        PivotPattern { pivots, free }
    }

    fn free_in_row(&self, row: usize) -> Vec<usize> {
        self.free
            .iter()
            .filter(|&&(r, _)| r == row)
            .map(|&(_, c)| c)
            .collect()
    }
}

/// All pivot patterns for `sub_dim`-subspaces of an `ambient_dim`-space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationPlan {
    pub field_order: u64,
    pub ambient_dim: usize,
    pub sub_dim: usize,
    pub patterns: Vec<PivotPattern>,
}

impl EnumerationPlan {
    pub fn new(field_order: u64, ambient_dim: usize, sub_dim: usize) -> Result<Self> {
        if sub_dim > ambient_dim {
            return Err(Error::ParameterOutOfRange(format!(
                "subspace dimension {sub_dim} exceeds ambient dimension {ambient_dim}"
            )));
        }
        let patterns = combinations(ambient_dim, sub_dim)
            .into_iter()
            .map(|p| PivotPattern::new(p, ambient_dim))
            .collect();
        Ok(EnumerationPlan {
            field_order,
            ambient_dim,
            sub_dim,
            patterns,
        })
    }

    /// Number of subspaces, saturating at `u128::MAX`.
    pub fn total(&self) -> u128 {
        self.patterns
            .iter()
            .map(|p| pow_sat(self.field_order, p.free.len()))
            .fold(0u128, u128::saturating_add)
    }
}

fn pow_sat(base: u64, exp: usize) -> u128 {
    (0..exp).fold(1u128, |acc, _| acc.saturating_mul(base as u128))
}

/// `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in (i + 1)..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Streams every subspace once: pivot patterns in lexicographic order, then
/// free entries as an odometer whose first entry is most significant.
pub struct SubspaceStream {
    field: Arc<FieldDescriptor>,
    plan: EnumerationPlan,
    pattern: usize,
    digits: Vec<u32>,
    done: bool,
}

pub fn enumerate_subspaces(
    field: &Arc<FieldDescriptor>,
    ambient_dim: usize,
    sub_dim: usize,
    budget: u64,
) -> Result<SubspaceStream> {
    let plan = EnumerationPlan::new(field.order(), ambient_dim, sub_dim)?;
    if plan.total() > budget as u128 {
        return Err(Error::BudgetExceeded { budget });
    }
    let digits = vec![0; plan.patterns.first().map_or(0, |p| p.free.len())];
    Ok(SubspaceStream {
        field: Arc::clone(field),
        done: plan.patterns.is_empty(),
        plan,
        pattern: 0,
        digits,
    })
}

impl SubspaceStream {
    pub fn plan(&self) -> &EnumerationPlan {
        &self.plan
    }

    fn current(&self) -> Subspace {
        let pat = &self.plan.patterns[self.pattern];
        let mut m = Matrix::zeros(self.plan.sub_dim, self.plan.ambient_dim);
        for (row, &p) in pat.pivots.iter().enumerate() {
            m[(row, p)] = FieldElement::ONE;
        }
        for (&(row, col), &d) in pat.free.iter().zip(&self.digits) {
            m[(row, col)] = FieldElement(d);
        }
        Subspace::from_rref_unchecked(&self.field, m)
    }

    fn advance(&mut self) {
        let order = self.field.order() as u32;
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < order {
                return;
            }
            *d = 0;
        }
        self.pattern += 1;
        match self.plan.patterns.get(self.pattern) {
            Some(p) => self.digits = vec![0; p.free.len()],
            None => self.done = true,
        }
    }
}

impl Iterator for SubspaceStream {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done {
            return None;
        }
        let s = self.current();
        self.advance();
        Some(s)
    }
}

fn check_ambient(form: &QBicForm, u: &Subspace) -> Result<()> {
    if u.ambient_dim() != form.dim() {
        return Err(Error::DimensionMismatch {
            expected: form.dim(),
            found: u.ambient_dim(),
        });
    }
    Ok(())
}

/// Whether the form vanishes identically on `u`.
pub fn is_isotropic(form: &QBicForm, u: &Subspace) -> Result<bool> {
    check_ambient(form, u)?;
    if u.dim() == 0 {
        return Ok(true);
    }
    Ok(form.restricted_gram(u.basis()).is_zero())
}

/// Whether `phi(U) = U`.
pub fn is_hermitian_subspace(form: &QBicForm, u: &Subspace) -> Result<bool> {
    check_ambient(form, u)?;
    Ok(form.phi_subspace(u)? == *u)
}

/// `beta(phi^i(v)^[1], v) = 0` for `0 <= i <= k`.
pub fn filtration_member(form: &QBicForm, v: &[FieldElement], k: usize) -> Result<bool> {
    if v.len() != form.dim() {
        return Err(Error::DimensionMismatch {
            expected: form.dim(),
            found: v.len(),
        });
    }
    if v.iter().all(|x| x.is_zero()) {
        return Err(Error::ZeroVector);
    }
    if k > 0 {
        form.phi_matrix()?;
    }
    let mut w = v.to_vec();
    for i in 0..=k {
        if i > 0 {
            w = form.phi_apply(&w)?;
        }
        if !form.evaluate_unchecked(&w, v).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `<v, phi(v), ..., phi^k(v)>`.
pub fn cyclic_span(form: &QBicForm, v: &[FieldElement], k: usize) -> Result<Subspace> {
    if v.len() != form.dim() {
        return Err(Error::DimensionMismatch {
            expected: form.dim(),
            found: v.len(),
        });
    }
    form.phi_matrix()?;
    let mut vecs = vec![v.to_vec()];
    for _ in 0..k {
        let next = form.phi_apply(vecs.last().expect("nonempty"))?;
        vecs.push(next);
    }
    Subspace::span(form.field(), form.dim(), &vecs)
}

/// `dim(U ∩ phi(U)) >= dim U - 1`.
pub fn is_cyclic_plane(form: &QBicForm, u: &Subspace) -> Result<bool> {
    check_ambient(form, u)?;
    let image = form.phi_subspace(u)?;
    Ok(u.intersection(&image).dim() + 1 >= u.dim())
}

/// Result of a counting scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ScanStats {
    /// Subspaces accepted.
    pub count: u64,
    /// Subspaces decided, pruned subtrees included; equals the size of the
    /// Grassmannian after a complete scan.
    pub covered: u128,
    /// Partial bases examined.
    pub visits: u64,
}

impl std::ops::Add for ScanStats {
    type Output = ScanStats;

    fn add(self, rhs: ScanStats) -> ScanStats {
        ScanStats {
            count: self.count + rhs.count,
            covered: self.covered + rhs.covered,
            visits: self.visits + rhs.visits,
        }
    }
}

/// Extends the form to `F_{q^{2s}}`.
pub fn base_change_to(form: &QBicForm, s: u32) -> Result<QBicForm> {
    if s == 0 {
        return Err(Error::ParameterOutOfRange("need s >= 1".into()));
    }
    if s == form.s() {
        return Ok(form.clone());
    }
    let field = form.field();
    let (p, nu) = prime_power(form.q()).expect("form parameter is a prime power");
    if s % form.s() != 0 {
        return Err(Error::NoEmbedding {
            src: field.order(),
            dst: form.q().checked_pow(2 * s).unwrap_or(u64::MAX),
        });
    }
    let e = 2 * nu * s;
    let target = Arc::new(FieldDescriptor::with_cap(p, e, None, DEFAULT_FIELD_CAP)?);
    form.base_change(&target)
}

struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    fn charge(&self, n: u64) -> Result<()> {
        let total = self.used.fetch_add(n, Ordering::Relaxed) + n;
        if total > self.limit {
            return Err(Error::BudgetExceeded { budget: self.limit });
        }
        Ok(())
    }
}

/// Backtracking search for isotropic subspaces with a given pivot pattern.
struct PatternSearch<'a> {
    form: &'a QBicForm,
    field: &'a FieldDescriptor,
    pattern: &'a PivotPattern,
    free_cols: Vec<Vec<usize>>,
    /// `|F|^(free entries in rows > i)`, for coverage of pruned subtrees.
    tail_sizes: Vec<u128>,
    accept: &'a (dyn Fn(&[Vec<FieldElement>]) -> bool + Sync),
    budget: &'a Budget,
}

struct SearchState {
    rows: Vec<Vec<FieldElement>>,
    twisted: Vec<Vec<FieldElement>>,
    images: Vec<Vec<FieldElement>>,
    stats: ScanStats,
    pending: u64,
}

impl<'a> PatternSearch<'a> {
    fn new(
        form: &'a QBicForm,
        pattern: &'a PivotPattern,
        accept: &'a (dyn Fn(&[Vec<FieldElement>]) -> bool + Sync),
        budget: &'a Budget,
    ) -> Self {
        let k = pattern.pivots.len();
        let free_cols: Vec<Vec<usize>> = (0..k).map(|i| pattern.free_in_row(i)).collect();
        let order = form.field().order();
        let mut tail_sizes = vec![1u128; k + 1];
        for i in (0..k).rev() {
            tail_sizes[i] = tail_sizes[i + 1].saturating_mul(pow_sat(order, free_cols[i].len()));
        }
        // tail_sizes[i] now counts rows i.., shift so that index i means rows > i
        tail_sizes.remove(0);
        PatternSearch {
            form,
            field: form.field(),
            pattern,
            free_cols,
            tail_sizes,
            accept,
            budget,
        }
    }

    fn flush(&self, st: &mut SearchState) -> Result<()> {
        let n = std::mem::take(&mut st.pending);
        self.budget.charge(n)
    }

    /// Runs the search with the first free entry of row 0 pinned to `first`
    /// (or unpinned when `None`).
    fn run(&self, first: Option<u32>) -> Result<ScanStats> {
        let k = self.pattern.pivots.len();
        let mut st = SearchState {
            rows: Vec::with_capacity(k),
            twisted: Vec::with_capacity(k),
            images: Vec::with_capacity(k),
            stats: ScanStats::default(),
            pending: 0,
        };
        self.row(0, first, &mut st)?;
        self.flush(&mut st)?;
        Ok(st.stats)
    }

    fn row(&self, i: usize, pinned: Option<u32>, st: &mut SearchState) -> Result<()> {
        let n = self.form.dim();
        let k = self.pattern.pivots.len();
        if i == k {
            st.stats.covered += 1;
            if (self.accept)(&st.rows) {
                st.stats.count += 1;
            }
            return Ok(());
        }
        let cols = &self.free_cols[i];
        let order = self.field.order() as u32;
        let mut digits = vec![0u32; cols.len()];
        let fixed = match pinned {
            Some(v) if !cols.is_empty() => {
                digits[0] = v;
                true
            }
            _ => false,
        };
        let mut row = vec![FieldElement::ZERO; n];
        row[self.pattern.pivots[i]] = FieldElement::ONE;
        loop {
            for (&c, &d) in cols.iter().zip(&digits) {
                row[c] = FieldElement(d);
            }
            st.stats.visits += 1;
            st.pending += 1;
            if st.pending >= FLUSH_EVERY {
                self.flush(st)?;
            }
            let tw = self.form.twist(&row);
            let img = self.form.gram().mul_vec(self.field, &row);
            let ok = dot(self.field, &tw, &img).is_zero()
                && (0..i).all(|j| {
                    dot(self.field, &tw, &st.images[j]).is_zero()
                        && dot(self.field, &st.twisted[j], &img).is_zero()
                });
            if ok {
                st.rows.push(row.clone());
                st.twisted.push(tw);
                st.images.push(img);
                self.row(i + 1, None, st)?;
                st.rows.pop();
                st.twisted.pop();
                st.images.pop();
            } else {
                st.stats.covered += self.tail_sizes[i];
            }
            // odometer step, first digit most significant
            let lowest = if fixed { 1 } else { 0 };
            let mut pos = digits.len();
            loop {
                if pos == lowest {
                    return Ok(());
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < order {
                    break;
                }
                digits[pos] = 0;
            }
        }
    }
}

/// Counts isotropic `dim`-subspaces of the form's own ambient space
/// satisfying `accept`, splitting work into (pattern, first free entry)
/// chunks and summing chunk results in order.
fn isotropic_scan(
    form: &QBicForm,
    dim: usize,
    cfg: &EnumConfig,
    accept: &(dyn Fn(&[Vec<FieldElement>]) -> bool + Sync),
) -> Result<ScanStats> {
    let plan = EnumerationPlan::new(form.field().order(), form.dim(), dim)?;
    if dim == 0 {
        let hit = accept(&[]);
        return Ok(ScanStats {
            count: hit as u64,
            covered: 1,
            visits: 0,
        });
    }
    let order = form.field().order() as u32;
    let mut chunks: Vec<(usize, Option<u32>)> = Vec::new();
    for (idx, pat) in plan.patterns.iter().enumerate() {
        if pat.free_in_row(0).is_empty() {
            chunks.push((idx, None));
        } else {
            chunks.extend((0..order).map(|v| (idx, Some(v))));
        }
    }
    let budget = Budget {
        limit: cfg.budget,
        used: AtomicU64::new(0),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::ParameterOutOfRange(format!("cannot start workers: {e}")))?;
    let results: Vec<Result<ScanStats>> = pool.install(|| {
        chunks
            .par_iter()
            .map(|&(idx, first)| PatternSearch::new(form, &plan.patterns[idx], accept, &budget).run(first))
            .collect()
    });
    let mut total = ScanStats::default();
    for r in results {
        total = total + r?;
    }
    Ok(total)
}

/// Number of isotropic `(r+1)`-subspaces rational over `F_{q^{2s}}`.
pub fn fano_count(form: &QBicForm, r: usize, s: u32, cfg: &EnumConfig) -> Result<ScanStats> {
    if r + 1 > form.dim() {
        return Ok(ScanStats::default());
    }
    let big = base_change_to(form, s)?;
    isotropic_scan(&big, r + 1, cfg, &|_| true)
}

/// Same count by streaming every subspace through [`is_isotropic`]; slow,
/// used as an oracle for the pruned search.
pub fn fano_count_exhaustive(form: &QBicForm, r: usize, s: u32, budget: u64) -> Result<u64> {
    let big = base_change_to(form, s)?;
    let mut count = 0;
    for u in enumerate_subspaces(big.field(), big.dim(), r + 1, budget)? {
        if is_isotropic(&big, &u)? {
            count += 1;
        }
    }
    Ok(count)
}

/// Number of Hermitian isotropic `(k+1)`-subspaces rational over the form's
/// field.
pub fn hermitian_fano_count(form: &QBicForm, k: usize, cfg: &EnumConfig) -> Result<ScanStats> {
    let phi = form.phi_matrix()?.clone();
    let field = Arc::clone(form.field());
    let frob2 = form.frob_q2();
    let accept = move |rows: &[Vec<FieldElement>]| {
        let n = rows.first().map_or(0, Vec::len);
        let u = Subspace::from_rref_unchecked(&field, Matrix::from_flat(rows.len(), n, rows.concat()));
        u.map_entries(frob2).image_under(&phi) == u
    };
    isotropic_scan(form, k + 1, cfg, &accept)
}

/// Number of points of `X^k` rational over `F_{q^{2s}}`.
pub fn filtration_count(form: &QBicForm, k: usize, s: u32, cfg: &EnumConfig) -> Result<ScanStats> {
    if k > 0 {
        form.phi_matrix()?;
    }
    let big = base_change_to(form, s)?;
    let accept = |rows: &[Vec<FieldElement>]| {
        k == 0 || filtration_member(&big, &rows[0], k).expect("checked nonsingular nonzero vector")
    };
    isotropic_scan(&big, 1, cfg, &accept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::embed;

    fn field(p: u64, e: u32) -> Arc<FieldDescriptor> {
        Arc::new(FieldDescriptor::new(p, e, None).unwrap())
    }

    fn v(xs: &[u32]) -> Vec<FieldElement> {
        xs.iter().map(|&x| FieldElement(x)).collect()
    }

    const W: u32 = 2;

    #[test]
    fn stream_counts() {
        let f2 = field(2, 1);
        assert_eq!(enumerate_subspaces(&f2, 2, 1, 100).unwrap().count(), 3);
        let f4 = field(2, 2);
        let all: Vec<Subspace> = enumerate_subspaces(&f4, 4, 2, 1000).unwrap().collect();
        assert_eq!(all.len(), 357);
        let distinct: std::collections::HashSet<_> = all.iter().cloned().collect();
        assert_eq!(distinct.len(), 357);
        assert!(all.iter().all(|u| u.dim() == 2));
        assert_eq!(EnumerationPlan::new(16, 5, 2).unwrap().total(), 17_965_585);
        assert_eq!(enumerate_subspaces(&f4, 3, 0, 10).unwrap().count(), 1);
    }

    #[test]
    fn stream_order_is_deterministic() {
        let f2 = field(2, 1);
        let first: Vec<_> = enumerate_subspaces(&f2, 3, 1, 100)
            .unwrap()
            .map(|u| u.to_indices())
            .collect();
        assert_eq!(
            first,
            vec![
                vec![vec![1, 0, 0]],
                vec![vec![1, 0, 1]],
                vec![vec![1, 1, 0]],
                vec![vec![1, 1, 1]],
                vec![vec![0, 1, 0]],
                vec![vec![0, 1, 1]],
                vec![vec![0, 0, 1]],
            ]
        );
    }

    #[test]
    fn budget_is_enforced() {
        let f16 = field(2, 4);
        assert!(matches!(
            enumerate_subspaces(&f16, 5, 2, 1000),
            Err(Error::BudgetExceeded { budget: 1000 })
        ));
        let fermat = QBicForm::fermat(2, field(2, 2), 4).unwrap();
        let cfg = EnumConfig::default().with_budget(100).with_workers(2);
        assert!(matches!(fano_count(&fermat, 1, 1, &cfg), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn isotropy_examples() {
        let f4 = field(2, 2);
        let fermat = QBicForm::fermat(2, f4.clone(), 3).unwrap();
        assert!(is_isotropic(&fermat, &Subspace::zero(&f4, 4)).unwrap());
        let plane = Subspace::span(&f4, 4, &[v(&[1, W, 0, 0]), v(&[0, 0, 1, W])]).unwrap();
        assert!(is_isotropic(&fermat, &plane).unwrap());
        let e0 = Subspace::span(&f4, 4, &[v(&[1, 0, 0, 0])]).unwrap();
        assert!(!is_isotropic(&fermat, &e0).unwrap());
        assert!(is_isotropic(&fermat, &Subspace::zero(&f4, 3)).is_err());
    }

    #[test]
    fn fano_counts_small() {
        let cfg = EnumConfig::default().with_workers(2);
        let fermat = QBicForm::fermat(2, field(2, 2), 3).unwrap();
        let scan = fano_count(&fermat, 1, 1, &cfg).unwrap();
        assert_eq!(scan.count, 27);
        assert_eq!(scan.covered, 357);
        assert_eq!(fano_count_exhaustive(&fermat, 1, 1, 10_000).unwrap(), 27);
        let fermat3 = QBicForm::fermat(3, field(3, 2), 3).unwrap();
        assert_eq!(fano_count(&fermat3, 1, 1, &cfg).unwrap().count, 112);
        let fermat4 = QBicForm::fermat(2, field(2, 2), 4).unwrap();
        assert_eq!(fano_count(&fermat4, 1, 1, &cfg).unwrap().count, 297);
        assert_eq!(fano_count_exhaustive(&fermat4, 1, 1, 10_000).unwrap(), 297);
        assert_eq!(fano_count(&fermat4, 2, 1, &cfg).unwrap().count, 0);
    }

    #[test]
    fn counts_do_not_depend_on_workers() {
        let fermat = QBicForm::fermat(2, field(2, 2), 4).unwrap();
        let one = fano_count(&fermat, 1, 1, &EnumConfig::default().with_workers(1)).unwrap();
        let many = fano_count(&fermat, 1, 1, &EnumConfig::default().with_workers(4)).unwrap();
        assert_eq!(one, many);
    }

    #[test]
    fn hermitian_examples() {
        let cfg = EnumConfig::default();
        let f4 = field(2, 2);
        let curve = QBicForm::fermat(2, f4.clone(), 2).unwrap();
        assert_eq!(hermitian_fano_count(&curve, 0, &cfg).unwrap().count, 9);
        let threefold = QBicForm::fermat(2, f4.clone(), 4).unwrap();
        assert_eq!(hermitian_fano_count(&threefold, 0, &cfg).unwrap().count, 165);
        let surface = QBicForm::fermat(2, f4.clone(), 3).unwrap();
        assert_eq!(hermitian_fano_count(&surface, 1, &cfg).unwrap().count, 27);

        let f16 = field(2, 4);
        let big = QBicForm::fermat(2, f16.clone(), 2).unwrap();
        let emb = embed(&f4, &f16).unwrap();
        let mu = f16.elements().find(|x| !emb.image().contains(x)).unwrap();
        let u = Subspace::span(&f16, 3, &[vec![FieldElement::ONE, mu, FieldElement::ZERO]]).unwrap();
        assert!(!is_hermitian_subspace(&big, &u).unwrap());
        let rational = Subspace::span(&f16, 3, &[vec![FieldElement::ONE, emb.apply(FieldElement(W)), FieldElement::ZERO]]).unwrap();
        assert!(is_hermitian_subspace(&big, &rational).unwrap());
        // v and phi(v) span a phi-stable plane since phi^2(v) = v here
        let w = vec![FieldElement::ONE, mu, FieldElement::ZERO];
        let pair = Subspace::span(&f16, 3, &[w.clone(), big.phi_apply(&w).unwrap()]).unwrap();
        assert_eq!(pair.dim(), 2);
        assert!(is_hermitian_subspace(&big, &pair).unwrap());
    }

    #[test]
    fn filtration_examples() {
        let cfg = EnumConfig::default();
        let f4 = field(2, 2);
        let surface = QBicForm::fermat(2, f4.clone(), 3).unwrap();
        assert_eq!(filtration_count(&surface, 0, 1, &cfg).unwrap().count, 45);
        assert_eq!(filtration_count(&surface, 1, 1, &cfg).unwrap().count, 45);
        let p = v(&[1, W, 0, 0]);
        assert!(filtration_member(&surface, &p, 0).unwrap());
        assert!(filtration_member(&surface, &p, 3).unwrap());
        assert_eq!(filtration_member(&surface, &v(&[0, 0, 0, 0]), 1), Err(Error::ZeroVector));
    }

    #[test]
    fn cyclic_examples() {
        let f4 = field(2, 2);
        let surface = QBicForm::fermat(2, f4.clone(), 3).unwrap();
        let p = v(&[1, W, 0, 0]);
        for k in 0..4 {
            assert_eq!(cyclic_span(&surface, &p, k).unwrap().dim(), 1);
        }
        let line = Subspace::span(&f4, 4, &[v(&[0, 1, 1, 0])]).unwrap();
        assert!(is_cyclic_plane(&surface, &line).unwrap());
    }

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(
            combinations(4, 2),
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
    }
}
