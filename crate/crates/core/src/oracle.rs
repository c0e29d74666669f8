//! Cross-checks binding every closed formula to an independent oracle,
//! collected into a deterministic scorecard.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, OnceLock};
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::classify::{Classifier, Invariants, TypeMatch};
use crate::combinatorics::{
    canonical_degree, deg_f1, double_count_sides, expected_fano_dim, hermitian_max_count,
    hermitian_plane_count, phi_minus_degree, phi_plus_degree, plucker_degree,
    projective_unitary_group_order, unitary_group_order, GaussianParam, Parity,
};
use crate::degree::fano_degree_coefficient;
use crate::enumerate::{fano_count, filtration_count, hermitian_fano_count, EnumConfig, EnumerationPlan};
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldElement};
use crate::form::{FormType, QBicForm};
use crate::linalg::Matrix;
use crate::zeta::{
    betti_closed_form, betti_from_zeta, coxeter_point_counts, coxeter_zeta, fano_zeta,
    hypersurface_middle_prim_dim, hypersurface_point_count,
};

/// Every closed-form operation that the suite must exercise.
pub const FORMULA_REGISTRY: &[&str] = &[
    "gauss_binomial",
    "hermitian_max_count",
    "hermitian_plane_count",
    "double_count_identity",
    "expected_fano_dim",
    "canonical_degree",
    "phi_minus_degree",
    "phi_plus_degree",
    "unitary_group_order",
    "projective_unitary_group_order",
    "plucker_degree",
    "deg_f1",
    "fano_degree_coefficient",
    "coxeter_zeta",
    "coxeter_point_counts",
    "fano_zeta",
    "betti_from_zeta",
    "betti_closed_form",
    "hypersurface_middle_prim_dim",
    "hypersurface_point_count",
    "classify_type",
];

// ---------------------------------------------------------------------------
// orbit oracle

/// Largest dimension the orbit oracle accepts.
pub const ORBIT_MAX_DIM: usize = 3;

#[derive(Debug, Clone)]
pub struct Orbit {
    /// Smallest member, as row-major element indices.
    pub representative: Vec<u32>,
    pub size: u64,
    pub type_match: TypeMatch,
    /// Whether every member has the representative's invariants.
    pub classification_constant: bool,
}

/// Twisted-congruence orbits of all Gram matrices of one dimension over
/// `GF(4)` with `q = 2`.
#[derive(Debug, Clone)]
pub struct OrbitTable {
    pub dim: usize,
    pub matrices: u64,
    pub orbits: Vec<Orbit>,
    /// Number of isomorphism types of this dimension.
    pub type_count: usize,
}

impl OrbitTable {
    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }

    pub fn classification_constant(&self) -> bool {
        self.orbits.iter().all(|o| o.classification_constant)
    }

    /// Distinct types found over all orbits; ambiguous or unmatched orbits
    /// are not counted.
    pub fn types_realized(&self) -> BTreeSet<FormType> {
        self.orbits
            .iter()
            .filter_map(|o| match &o.type_match {
                TypeMatch::Unique(t) => Some(t.clone()),
                _ => None,
            })
            .collect()
    }

    /// Whether distinct orbits always receive distinct types.
    pub fn orbits_separated(&self) -> bool {
        self.types_realized().len() == self.orbits.len()
            && self.orbits.iter().all(|o| matches!(o.type_match, TypeMatch::Unique(_)))
    }
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        let up = parent[parent[x as usize] as usize];
        parent[x as usize] = up;
        x = up;
    }
    x
}

/// Partitions every `dim x dim` Gram matrix over `GF(4)` into orbits of
/// `A -> P^(2)T A P`, `P` in `GL_dim(GF(4))`, and classifies each matrix.
/// The group acts through transvections `I + c e_ij` and diagonal scalings,
/// which generate it. `budget` bounds the number of generator applications.
pub fn orbit_oracle(dim: usize, budget: u64) -> Result<OrbitTable> {
    if dim == 0 || dim > ORBIT_MAX_DIM {
        return Err(Error::ParameterOutOfRange(format!(
            "orbit oracle supports 1 <= dim <= {ORBIT_MAX_DIM}, got {dim}"
        )));
    }
    let field = Arc::new(FieldDescriptor::new(2, 2, None)?);
    let q = 2u64;
    let frob = field.frobenius_map(q)?;
    let omega = field.generator();
    let cells = dim * dim;
    let total = 4u64.pow(cells as u32);

    // generators as (kind, i, j, c): transvection or scaling
    let mut gens: Vec<(usize, usize, FieldElement)> = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            if i != j {
                gens.push((i, j, FieldElement::ONE));
                gens.push((i, j, omega));
            }
        }
    }
    let scalings = dim;
    let work = total * (gens.len() + scalings) as u64;
    if work > budget {
        return Err(Error::BudgetExceeded { budget });
    }

    let decode = |mut code: u64| -> Vec<FieldElement> {
        (0..cells)
            .map(|_| {
                let d = (code % 4) as u32;
                code /= 4;
                FieldElement(d)
            })
            .collect()
    };
    let encode = |a: &[FieldElement]| -> u64 { a.iter().rev().fold(0u64, |acc, x| acc * 4 + x.index() as u64) };

    let mut parent: Vec<u32> = (0..total as u32).collect();
    for code in 0..total {
        let a = decode(code);
        let mut neighbours = Vec::with_capacity(gens.len() + scalings);
        for &(i, j, c) in &gens {
            // A P: column j += c column i; then row j += c^q row i
            let mut b = a.clone();
            for r in 0..dim {
                b[r * dim + j] = field.add(b[r * dim + j], field.mul(c, b[r * dim + i]));
            }
            let cq = field.apply(frob, c);
            for col in 0..dim {
                b[j * dim + col] = field.add(b[j * dim + col], field.mul(cq, b[i * dim + col]));
            }
            neighbours.push(encode(&b));
        }
        let wq = field.apply(frob, omega);
        for i in 0..dim {
            let mut b = a.clone();
            for r in 0..dim {
                b[r * dim + i] = field.mul(omega, b[r * dim + i]);
            }
            for col in 0..dim {
                b[i * dim + col] = field.mul(wq, b[i * dim + col]);
            }
            neighbours.push(encode(&b));
        }
        for nb in neighbours {
            let (x, y) = (find(&mut parent, code as u32), find(&mut parent, nb as u32));
            if x != y {
                let (lo, hi) = if x < y { (x, y) } else { (y, x) };
                parent[hi as usize] = lo;
            }
        }
    }
    let roots: Vec<u32> = (0..total as u32).map(|x| find(&mut parent, x)).collect();

    let mut classifier = Classifier::new(q, Arc::clone(&field));
    let type_count = classifier.prepare(dim).len();
    let classifier = classifier;
    let invariants: Vec<(Invariants, TypeMatch)> = (0..total)
        .into_par_iter()
        .map(|code| {
            let gram = Matrix::from_flat(dim, dim, decode(code));
            let form = QBicForm::new(q, Arc::clone(&field), gram).expect("valid Gram matrix");
            let p = classifier.classify_prepared(&form).expect("dimension prepared");
            (p.invariants, p.type_match)
        })
        .collect();

    let mut by_root: BTreeMap<u32, Orbit> = BTreeMap::new();
    for (code, &root) in roots.iter().enumerate() {
        let orbit = by_root.entry(root).or_insert_with(|| Orbit {
            representative: decode(root as u64).iter().map(|x| x.index()).collect(),
            size: 0,
            type_match: invariants[root as usize].1.clone(),
            classification_constant: true,
        });
        orbit.size += 1;
        if invariants[code].0 != invariants[root as usize].0 {
            orbit.classification_constant = false;
        }
    }
    Ok(OrbitTable {
        dim,
        matrices: total,
        orbits: by_root.into_values().collect(),
        type_count,
    })
}

// ---------------------------------------------------------------------------
// scorecard

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CaseStatus {
    Match,
    Mismatch,
    /// Not run to completion; the reason is recorded.
    Skipped(String),
}

#[derive(Debug, Clone)]
pub struct CheckCase {
    pub name: String,
    pub params: BTreeMap<String, i64>,
    pub formula: Option<BigInt>,
    pub oracle: Option<BigInt>,
    pub status: CaseStatus,
    pub elapsed_ms: u128,
    /// Registry entries this case exercises.
    pub covers: Vec<&'static str>,
}

impl CheckCase {
    pub fn matches(&self) -> bool {
        self.status == CaseStatus::Match
    }

    pub fn to_json(&self, timing: bool) -> Value {
        let mut v = json!({
            "name": self.name,
            "params": self.params,
            "formula": self.formula.as_ref().map(|x| x.to_string()),
            "oracle": self.oracle.as_ref().map(|x| x.to_string()),
            "match": self.matches(),
        });
        if let CaseStatus::Skipped(reason) = &self.status {
            v["skipped"] = json!(reason);
        }
        if timing {
            v["elapsed_ms"] = json!(self.elapsed_ms as u64);
        }
        v
    }
}

#[derive(Debug, Clone, Default)]
pub struct Scorecard {
    pub cases: Vec<CheckCase>,
}

impl Scorecard {
    pub fn all_match(&self) -> bool {
        self.cases.iter().all(CheckCase::matches)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &CheckCase> {
        self.cases.iter().filter(|c| c.status == CaseStatus::Mismatch)
    }

    pub fn skipped(&self) -> impl Iterator<Item = &CheckCase> {
        self.cases.iter().filter(|c| matches!(c.status, CaseStatus::Skipped(_)))
    }

    pub fn covered_formulas(&self) -> BTreeSet<&'static str> {
        self.cases.iter().flat_map(|c| c.covers.iter().copied()).collect()
    }

    pub fn to_json(&self, timing: bool) -> Value {
        Value::Array(self.cases.iter().map(|c| c.to_json(timing)).collect())
    }
}

/// Parameter ranges of a suite run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    pub qs: Vec<u64>,
    pub n_max: usize,
    pub s_max: u32,
}

impl Grid {
    /// `q = 2`, `n <= 4`, `s <= 2`.
    pub fn default_grid() -> Self {
        Grid {
            qs: vec![2],
            n_max: 4,
            s_max: 2,
        }
    }

    pub fn empty() -> Self {
        Grid {
            qs: Vec::new(),
            n_max: 0,
            s_max: 0,
        }
    }
}

type Pair = (BigInt, BigInt);
type Work = Box<dyn Fn(&EnumConfig) -> Result<(Pair, u64)> + Send + Sync>;

struct Planned {
    name: String,
    params: BTreeMap<String, i64>,
    covers: Vec<&'static str>,
    /// Enumeration cases draw on the shared visit budget and run in order.
    scan: bool,
    work: Work,
}

struct Plan(Vec<Planned>);

impl Plan {
    fn pure(
        &mut self,
        name: &str,
        params: &[(&str, i64)],
        covers: &[&'static str],
        f: impl Fn() -> Result<Pair> + Send + Sync + 'static,
    ) {
        self.push(name, params, covers, false, Box::new(move |_| f().map(|p| (p, 0))));
    }

    fn scan(
        &mut self,
        name: &str,
        params: &[(&str, i64)],
        covers: &[&'static str],
        f: impl Fn(&EnumConfig) -> Result<(Pair, u64)> + Send + Sync + 'static,
    ) {
        self.push(name, params, covers, true, Box::new(f));
    }

    fn push(&mut self, name: &str, params: &[(&str, i64)], covers: &[&'static str], scan: bool, work: Work) {
        self.0.push(Planned {
            name: name.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            covers: covers.to_vec(),
            scan,
            work,
        });
    }
}

fn big<T: Into<BigInt>>(x: T) -> BigInt {
    x.into()
}

fn field_for(q: u64, s: u32) -> Result<Arc<FieldDescriptor>> {
    let (p, nu) = crate::combinatorics::prime_power(q)
        .ok_or_else(|| Error::ParameterOutOfRange(format!("{q} is not a prime power")))?;
    Ok(Arc::new(FieldDescriptor::new(p, 2 * nu * s, None)?))
}

fn fermat(q: u64, n: usize) -> Result<QBicForm> {
    QBicForm::fermat(q, field_for(q, 1)?, n)
}

/// Order of `GU_n` over `F_{q^2}` by testing every matrix.
pub fn brute_unitary_order(q: u64, n: usize) -> Result<BigInt> {
    let field = field_for(q, 1)?;
    let order = field.order();
    let cells = (n * n) as u32;
    let total = order
        .checked_pow(cells)
        .filter(|&t| t <= 1 << 22)
        .ok_or(Error::BudgetExceeded { budget: 1 << 22 })?;
    let frob = field.frobenius_map(q)?;
    let id = Matrix::identity(n);
    let count = (0..total)
        .into_par_iter()
        .filter(|&code| {
            let mut c = code;
            let data = (0..cells)
                .map(|_| {
                    let d = (c % order) as u32;
                    c /= order;
                    FieldElement(d)
                })
                .collect();
            let m = Matrix::from_flat(n, n, data);
            m.map_entries(&field, frob).transpose().mul(&field, &m) == id
        })
        .count();
    Ok(big(count as u64))
}

fn plan_cases(grid: &Grid) -> Plan {
    let mut plan = Plan(Vec::new());
    let n_max = grid.n_max;
    let s_max = grid.s_max;
    for &q in &grid.qs {
        let qi = q as i64;

        // subspace counts of the Grassmannian
        for n in 1..=n_max + 1 {
            for k in 0..=n {
                plan.pure("grassmannian_size", &[("q", qi), ("n", n as i64), ("k", k as i64)], &["gauss_binomial"], move || {
                    let g = GaussianParam::new(q)?;
                    let formula: BigInt = g.binomial_q2(n as u32, k as u32)?;
                    let plan = EnumerationPlan::new(q * q, n, k)?;
                    Ok((formula, big(plan.total())))
                });
            }
        }

        // points of hypersurfaces
        for n in 2..=n_max {
            for s in 1..=s_max {
                plan.scan(
                    "hypersurface_points",
                    &[("q", qi), ("n", n as i64), ("s", s as i64)],
                    &["hypersurface_point_count", "hypersurface_middle_prim_dim"],
                    move |cfg| {
                        let formula = hypersurface_point_count::<BigInt>(q, n as u32, s)?;
                        let st = fano_count(&fermat(q, n)?, 0, s, cfg)?;
                        Ok(((formula, big(st.count)), st.visits))
                    },
                );
            }
            plan.pure("hypersurface_prim_dim", &[("q", qi), ("n", n as i64)], &["hypersurface_middle_prim_dim"], move || {
                // ((d-1)^{n+1} + (-1)^{n+1}(d-1)) / d for degree d = q+1
                let d = big(q + 1);
                let dm = big(q);
                let sign = if (n + 1) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                let oracle = (dm.pow(n as u32 + 1) + sign * &dm) / d;
                Ok((hypersurface_middle_prim_dim::<BigInt>(q, n as u32)?, oracle))
            });
        }

        // maximal isotropic planes of odd-dimensional ambient spaces
        for m in 0..n_max {
            let n = 2 * m + 1;
            if n > n_max {
                break;
            }
            for s in 1..=s_max {
                plan.scan(
                    "fano_half_planes",
                    &[("q", qi), ("n", n as i64), ("r", m as i64), ("s", s as i64)],
                    &["hermitian_max_count"],
                    move |cfg| {
                        let st = fano_count(&fermat(q, n)?, m, s, cfg)?;
                        Ok(((hermitian_max_count(q, m, Parity::Even), big(st.count)), st.visits))
                    },
                );
            }
        }

        // Hermitian planes
        for n in 2..=n_max {
            for k in 0..n.div_ceil(2) {
                plan.scan(
                    "hermitian_planes",
                    &[("q", qi), ("n", n as i64), ("k", k as i64)],
                    &["hermitian_plane_count"],
                    move |cfg| {
                        let st = hermitian_fano_count(&fermat(q, n)?, k, cfg)?;
                        Ok(((hermitian_plane_count(q, n, k)?, big(st.count)), st.visits))
                    },
                );
            }
            if n % 2 == 0 {
                let m = (n - 2) / 2;
                plan.pure("hermitian_max_odd", &[("q", qi), ("n", n as i64), ("m", m as i64)], &["hermitian_max_count"], move || {
                    Ok((hermitian_max_count(q, m, Parity::Odd), hermitian_plane_count(q, n, m)?))
                });
            }
        }

        // nested-flag double count
        for n in 2..=n_max {
            for m in 1..n.div_ceil(2) {
                for k in 0..m {
                    plan.pure(
                        "double_count",
                        &[("q", qi), ("n", n as i64), ("k", k as i64), ("m", m as i64)],
                        &["double_count_identity"],
                        move || double_count_sides(q, n, k, m),
                    );
                }
            }
        }

        // filtration
        for n in 2..=n_max {
            for k in 0..=1usize {
                let s_top = if k == 0 { s_max } else { s_max.min(1) };
                for s in 1..=s_top {
                    plan.scan(
                        "filtration_points",
                        &[("q", qi), ("n", n as i64), ("k", k as i64), ("s", s as i64)],
                        &["hypersurface_point_count"],
                        move |cfg| {
                            let st = filtration_count(&fermat(q, n)?, k, s, cfg)?;
                            Ok(((hypersurface_point_count::<BigInt>(q, n as u32, s)?, big(st.count)), st.visits))
                        },
                    );
                }
            }
        }

        // Fano schemes against their zeta functions
        for m in 0..n_max {
            let n = 2 * m + 2;
            if n > n_max {
                break;
            }
            for s in 1..=s_max {
                plan.scan(
                    "fano_zeta_points",
                    &[("q", qi), ("n", n as i64), ("r", m as i64), ("s", s as i64)],
                    &["fano_zeta", "coxeter_zeta"],
                    move |cfg| {
                        let z = fano_zeta::<BigInt>(q, m as u32)?;
                        let st = fano_count(&fermat(q, n)?, m, s, cfg)?;
                        Ok(((z.point_count(s), big(st.count)), st.visits))
                    },
                );
            }
        }

        // Coxeter strata
        let k_max = (n_max / 2) as u32;
        for k in 0..=k_max {
            plan.pure("coxeter_vanishing", &[("q", qi), ("k", k as i64)], &["coxeter_point_counts"], move || {
                let counts = coxeter_point_counts::<BigInt>(q, k, 2 * k)?;
                let nonzero = counts.iter().filter(|c| !c.is_zero()).count();
                Ok((BigInt::zero(), big(nonzero as u64)))
            });
            for s in 1..=2 * k + 2 {
                plan.pure(
                    "coxeter_series",
                    &[("q", qi), ("k", k as i64), ("s", s as i64)],
                    &["coxeter_point_counts", "coxeter_zeta"],
                    move || {
                        let series = coxeter_point_counts::<BigInt>(q, k, s)?;
                        let z = coxeter_zeta::<BigInt>(q, k)?;
                        Ok((series[s as usize - 1].clone(), z.point_count(s)))
                    },
                );
            }
        }
        if n_max >= 2 {
            plan.scan("coxeter_curve", &[("q", qi), ("k", 1), ("s", 3)], &["coxeter_zeta"], move |cfg| {
                // the curve is the Coxeter stratum plus its F_{q^2}-points
                let z = coxeter_zeta::<BigInt>(q, 1)?;
                let curve = fermat(q, 2)?;
                let all = fano_count(&curve, 0, 3, cfg)?;
                let base = fano_count(&curve, 0, 1, cfg)?;
                let oracle = big(all.count) - big(base.count);
                Ok(((z.point_count(3), oracle), all.visits + base.visits))
            });
        }

        // Betti numbers
        for m in 0..n_max {
            if 2 * m + 2 > n_max {
                break;
            }
            let mu = m as u32;
            let dim = mu + 1;
            for k in 0..=2 * dim {
                plan.pure(
                    "betti_closed_vs_zeta",
                    &[("q", qi), ("m", m as i64), ("k", k as i64)],
                    &["betti_closed_form", "betti_from_zeta", "fano_zeta"],
                    move || {
                        let t = betti_from_zeta(&fano_zeta::<BigInt>(q, mu)?, dim)?;
                        Ok((betti_closed_form::<BigInt>(q, mu, k)?, t.b[k as usize].clone()))
                    },
                );
                plan.pure("poincare_duality", &[("q", qi), ("m", m as i64), ("k", k as i64)], &["betti_closed_form"], move || {
                    Ok((
                        betti_closed_form::<BigInt>(q, mu, k)?,
                        betti_closed_form::<BigInt>(q, mu, 2 * dim - k)?,
                    ))
                });
            }
            plan.pure("first_betti", &[("q", qi), ("m", m as i64)], &["betti_closed_form"], move || {
                let g = GaussianParam::new(q)?;
                let oracle = g.qbar::<BigInt>() * g.number::<BigInt>(2 * mu + 2);
                Ok((betti_closed_form::<BigInt>(q, mu, 1)?, oracle))
            });
            plan.pure("fano_dimension", &[("q", qi), ("m", m as i64)], &["expected_fano_dim", "betti_from_zeta"], move || {
                let t = betti_from_zeta(&fano_zeta::<BigInt>(q, mu)?, mu + 1)?;
                let d = expected_fano_dim(2 * m + 2, m)?;
                Ok((big(d as u64), big(((t.b.len() - 1) / 2) as u64)))
            });
        }
        if n_max >= 2 {
            plan.pure("canonical_curve", &[("q", qi)], &["canonical_degree"], move || {
                let b1 = hypersurface_middle_prim_dim::<BigInt>(q, 2)?;
                Ok((canonical_degree(2, 0, q)? * big(q + 1), b1 - 2))
            });
        }

        // inseparable degrees
        for n in 2..=n_max {
            for k in 0..n.div_ceil(2) {
                plan.pure(
                    "phi_degree_product",
                    &[("q", qi), ("n", n as i64), ("k", k as i64)],
                    &["phi_minus_degree", "phi_plus_degree"],
                    move || {
                        let prod = phi_minus_degree(q, k) * phi_plus_degree(q, n, k)?;
                        Ok((prod, big(q).pow((2 * k * (n - k - 1)) as u32)))
                    },
                );
            }
        }

        // degrees
        for n in 1..=n_max {
            for r in 0..n.div_ceil(2) {
                let closed: Vec<(&'static str, fn(u64, usize, usize) -> Result<BigInt>)> = [
                    (r == 0, ("hypersurface_degree", (|q, _, _| Ok(big(q + 1))) as fn(u64, usize, usize) -> Result<BigInt>)),
                    (n == 2 * r + 1, ("plucker_degree", |q, _, r| plucker_degree(q, r, Parity::Odd))),
                    (n == 2 * r + 2, ("plucker_degree", |q, _, r| plucker_degree(q, r, Parity::Even))),
                    (r == 1, ("deg_f1", |q, n, _| deg_f1(n, q))),
                ]
                .into_iter()
                .filter_map(|(on, c)| on.then_some(c))
                .collect();
                for (which, f) in closed {
                    let mut covers = vec!["fano_degree_coefficient"];
                    if which != "hypersurface_degree" {
                        covers.push(which);
                    }
                    plan.pure(
                        &format!("degree_{which}"),
                        &[("q", qi), ("n", n as i64), ("r", r as i64)],
                        &covers,
                        move || Ok((f(q, n, r)?, fano_degree_coefficient(n, r, q)?)),
                    );
                }
            }
        }

        // group orders
        for n in 1..=n_max.min(3) {
            let size = (q * q).checked_pow((n * n) as u32);
            if size.is_none_or(|s| s > 1 << 20) {
                continue;
            }
            plan.pure("unitary_order", &[("q", qi), ("n", n as i64)], &["unitary_group_order"], move || {
                Ok((unitary_group_order(q, n), brute_unitary_order(q, n)?))
            });
            plan.pure(
                "projective_unitary_order",
                &[("q", qi), ("n", n as i64)],
                &["projective_unitary_group_order"],
                move || Ok((projective_unitary_group_order(q, n), brute_unitary_order(q, n)? / big(q + 1))),
            );
        }

        // classification against rational orbits
        if q == 2 {
            for dim in 1..=n_max.min(ORBIT_MAX_DIM) {
                let table: Arc<OnceLock<Result<Arc<OrbitTable>>>> = Arc::new(OnceLock::new());
                let get = move |cfg: &EnumConfig, table: &OnceLock<Result<Arc<OrbitTable>>>| {
                    table.get_or_init(|| orbit_oracle(dim, cfg.budget).map(Arc::new)).clone()
                };
                let t1 = Arc::clone(&table);
                plan.push(
                    "orbit_types_realized",
                    &[("q", 2), ("n", dim as i64)],
                    &["classify_type"],
                    false,
                    Box::new(move |cfg| {
                        let t = get(cfg, &t1)?;
                        Ok(((big(t.type_count as u64), big(t.types_realized().len() as u64)), 0))
                    }),
                );
                plan.push(
                    "orbit_classification_constant",
                    &[("q", 2), ("n", dim as i64)],
                    &["classify_type"],
                    false,
                    Box::new(move |cfg| {
                        let t = get(cfg, &table)?;
                        let constant = t.orbits.iter().filter(|o| o.classification_constant).count();
                        Ok(((big(t.orbit_count() as u64), big(constant as u64)), 0))
                    }),
                );
            }
        }
    }
    plan
}

fn finish(p: &Planned, outcome: Result<(Pair, u64)>, elapsed_ms: u128) -> CheckCase {
    let (formula, oracle, status) = match outcome {
        Ok(((f, o), _)) => {
            let status = if f == o { CaseStatus::Match } else { CaseStatus::Mismatch };
            (Some(f), Some(o), status)
        }
        Err(e @ Error::BudgetExceeded { .. }) => (None, None, CaseStatus::Skipped(e.to_string())),
        Err(e) => (None, None, CaseStatus::Skipped(format!("error: {e}"))),
    };
    CheckCase {
        name: p.name.clone(),
        params: p.params.clone(),
        formula,
        oracle,
        status,
        elapsed_ms,
        covers: p.covers.clone(),
    }
}

/// Runs every case of the grid. Formula-only cases run in parallel;
/// enumeration cases run in order and share `cfg.budget` visits, so the
/// set of skipped cases does not depend on the worker count.
pub fn run_suite(grid: &Grid, cfg: &EnumConfig) -> Result<Scorecard> {
    let plan = plan_cases(grid).0;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::ParameterOutOfRange(format!("cannot start workers: {e}")))?;
    let mut results: HashMap<usize, CheckCase> = pool.install(|| {
        plan.par_iter()
            .enumerate()
            .filter(|(_, p)| !p.scan)
            .map(|(i, p)| {
                let start = Instant::now();
                let out = (p.work)(cfg);
                (i, finish(p, out, start.elapsed().as_millis()))
            })
            .collect()
    });
    let mut remaining = cfg.budget;
    for (i, p) in plan.iter().enumerate().filter(|(_, p)| p.scan) {
        let start = Instant::now();
        let out = (p.work)(&cfg.with_budget(remaining));
        if let Ok((_, used)) = &out {
            remaining = remaining.saturating_sub(*used);
        }
        results.insert(i, finish(p, out, start.elapsed().as_millis()));
    }
    let cases = (0..plan.len()).map(|i| results.remove(&i).expect("every case ran")).collect();
    Ok(Scorecard { cases })
}
