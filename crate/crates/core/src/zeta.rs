//! Zeta functions on the factor basis `(1 - qbar^i t)`, Betti numbers and
//! the hypersurface point-count formulas.

use std::collections::BTreeMap;
use std::ops::Mul;

use crate::combinatorics::{hermitian_plane_count, GaussianParam};
use crate::error::{Error, Result};
use crate::num::{sign, ExactInt};

/// `zeta(t) = prod_i (1 - qbar^i t)^{e_i}` with `qbar = -q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaFactorization<T: ExactInt> {
    q: u64,
    exponents: BTreeMap<u32, T>,
}

impl<T: ExactInt> ZetaFactorization<T> {
    /// The constant function 1.
    pub fn one(q: u64) -> Self {
        ZetaFactorization {
            q,
            exponents: BTreeMap::new(),
        }
    }

    pub fn from_exponents(q: u64, exponents: impl IntoIterator<Item = (u32, T)>) -> Self {
        let mut z = Self::one(q);
        for (i, e) in exponents {
            z.add_exponent(i, e);
        }
        z
    }

    fn add_exponent(&mut self, i: u32, e: T) {
        let slot = self.exponents.entry(i).or_insert_with(T::zero);
        *slot = slot.clone() + e;
        if slot.is_zero() {
            self.exponents.remove(&i);
        }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `e_i`, zero when absent.
    pub fn exponent(&self, i: u32) -> T {
        self.exponents.get(&i).cloned().unwrap_or_else(T::zero)
    }

    /// Nonzero exponents in increasing `i`.
    pub fn exponents(&self) -> impl Iterator<Item = (u32, &T)> {
        self.exponents.iter().map(|(&i, e)| (i, e))
    }

    pub fn max_index(&self) -> Option<u32> {
        self.exponents.keys().next_back().copied()
    }

    /// Raises to an integer power (multiplies every exponent).
    pub fn pow(&self, k: &T) -> Self {
        ZetaFactorization {
            q: self.q,
            exponents: if k.is_zero() {
                BTreeMap::new()
            } else {
                self.exponents
                    .iter()
                    .map(|(&i, e)| (i, e.clone() * k.clone()))
                    .collect()
            },
        }
    }

    /// `N_s = -sum_i e_i qbar^{is}`.
    pub fn point_count(&self, s: u32) -> T {
        let qbar = -T::from_u64_exact(self.q);
        let total = self
            .exponents
            .iter()
            .fold(T::zero(), |acc, (&i, e)| acc + e.clone() * qbar.pow_u32(i * s));
        -total
    }

    pub fn point_counts(&self, s_max: u32) -> Vec<T> {
        (1..=s_max).map(|s| self.point_count(s)).collect()
    }
}

impl<T: ExactInt> Mul for &ZetaFactorization<T> {
    type Output = ZetaFactorization<T>;

    fn mul(self, rhs: &ZetaFactorization<T>) -> ZetaFactorization<T> {
        assert_eq!(self.q, rhs.q, "zeta factorizations over different q");
        let mut out = self.clone();
        for (&i, e) in &rhs.exponents {
            out.add_exponent(i, e.clone());
        }
        out
    }
}

impl<T: ExactInt> Mul for ZetaFactorization<T> {
    type Output = ZetaFactorization<T>;

    fn mul(self, rhs: ZetaFactorization<T>) -> ZetaFactorization<T> {
        &self * &rhs
    }
}

fn choose2(n: u32) -> u32 {
    n * n.saturating_sub(1) / 2
}

/// Zeta function of the `k`-dimensional Coxeter stratum:
/// `e_i = (-1)^{i+1} qbar^{C(2k+1-i, 2)} [2k choose i]_qbar`.
pub fn coxeter_zeta<T: ExactInt>(q: u64, k: u32) -> Result<ZetaFactorization<T>> {
    let g = GaussianParam::new(q)?;
    let qbar: T = g.qbar();
    let mut exps = Vec::with_capacity(2 * k as usize + 1);
    for i in 0..=2 * k {
        let e = sign::<T>(i as u64 + 1) * qbar.pow_u32(choose2(2 * k + 1 - i)) * g.binomial::<T>(2 * k, i)?;
        exps.push((i, e));
    }
    Ok(ZetaFactorization::from_exponents(q, exps))
}

/// `N_1 .. N_{s_max}` of the Coxeter stratum from its generating function
/// `qbar^{k(2k+1)} (1-qbar)^{2k} [2k]! t^{2k+1} / prod_{i=0}^{2k} (1 - qbar^i t)`,
/// expanded as an exact power series.
pub fn coxeter_point_counts<T: ExactInt>(q: u64, k: u32, s_max: u32) -> Result<Vec<T>> {
    let g = GaussianParam::new(q)?;
    let qbar: T = g.qbar();
    let lead = qbar.pow_u32(k * (2 * k + 1))
        * (T::one() - qbar.clone()).pow_u32(2 * k)
        * g.factorial::<T>(2 * k);
    let len = s_max as usize + 1;
    // series of t^{2k+1} * lead, then divide by each (1 - a t) in turn
    let mut series = vec![T::zero(); len];
    if (2 * k + 1) as usize <= s_max as usize {
        series[(2 * k + 1) as usize] = lead;
    }
    for i in 0..=2 * k {
        let a = qbar.pow_u32(i);
        for j in 1..len {
            let carry = series[j - 1].clone() * a.clone();
            series[j] = series[j].clone() + carry;
        }
    }
    Ok(series.into_iter().skip(1).collect())
}

/// Zeta function of the Fano scheme of `m`-planes in a smooth q-bic of
/// dimension `2m+1`: the Coxeter stratum of dimension `m+1` times the
/// strata of dimension `k` with multiplicity the number of Hermitian
/// `(m-k)`-planes of a q-bic in `P^{2m+2}`.
pub fn fano_zeta<T: ExactInt>(q: u64, m: u32) -> Result<ZetaFactorization<T>> {
    let mut z = coxeter_zeta::<T>(q, m + 1)?;
    for k in 0..=m {
        let mult = hermitian_plane_count(q, 2 * m as usize + 2, (m - k) as usize)?;
        let mult = T::from_str_radix(&mult.to_str_radix(10), 10)
            .map_err(|_| Error::ParameterOutOfRange("multiplicity overflows the integer type".into()))?;
        z = &z * &coxeter_zeta::<T>(q, k)?.pow(&mult);
    }
    Ok(z)
}

/// Betti numbers `b_0 .. b_{2d}` of a `d`-dimensional variety.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable<T: ExactInt> {
    pub dim: u32,
    pub b: Vec<T>,
}

impl<T: ExactInt> BettiTable<T> {
    pub fn euler_characteristic(&self) -> T {
        self.b
            .iter()
            .enumerate()
            .fold(T::zero(), |acc, (k, b)| acc + sign::<T>(k as u64) * b.clone())
    }

    pub fn is_palindromic(&self) -> bool {
        self.b.iter().eq(self.b.iter().rev())
    }
}

/// Reads `b_k = (-1)^{k+1} e_k` off a zeta function of a smooth projective
/// variety of dimension `dim` whose `H^k` is pure of weight `qbar^k`.
pub fn betti_from_zeta<T: ExactInt>(z: &ZetaFactorization<T>, dim: u32) -> Result<BettiTable<T>> {
    if let Some(top) = z.max_index() {
        if top > 2 * dim {
            return Err(Error::PurityViolation(format!(
                "factor (1 - qbar^{top} t) beyond degree {}",
                2 * dim
            )));
        }
    }
    let b: Vec<T> = (0..=2 * dim)
        .map(|k| sign::<T>(k as u64 + 1) * z.exponent(k))
        .collect();
    if let Some((k, v)) = b.iter().enumerate().find(|(_, v)| v.is_negative()) {
        return Err(Error::PurityViolation(format!("b_{k} = {v} is negative")));
    }
    if !b[0].is_one() || !b[2 * dim as usize].is_one() {
        return Err(Error::PurityViolation(format!(
            "extreme Betti numbers are {} and {}, not 1",
            b[0],
            b[2 * dim as usize]
        )));
    }
    Ok(BettiTable { dim, b })
}

/// `b_k` of the Fano scheme of `m`-planes in a smooth q-bic of dimension
/// `2m+1`, by the closed qbar-binomial sum.
pub fn betti_closed_form<T: ExactInt>(q: u64, m: u32, k: u32) -> Result<T> {
    if k > 2 * m + 2 {
        return Err(Error::ParameterOutOfRange(format!(
            "betti_closed_form needs 0 <= k <= 2m+2, got m = {m}, k = {k}"
        )));
    }
    let g = GaussianParam::new(q)?;
    let qbar: T = g.qbar();
    let one_minus = T::one() - qbar.clone();
    let mut total = qbar.pow_u32(choose2(2 * m + 3 - k)) * g.binomial::<T>(2 * m + 2, k)?;
    let upper = m as i64 - k.div_ceil(2) as i64;
    for i in 0..=upper.max(-1) {
        let i = i as u32;
        let inner = 2 * m + 1 - 2 * i - k;
        total = total
            + one_minus.pow_u32(i + 1)
                * qbar.pow_u32(choose2(inner))
                * g.double_factorial::<T>(2 * i + 1)
                * g.binomial::<T>(2 * m + 3, 2 * i + 2)?
                * g.binomial::<T>(2 * m - 2 * i, k)?;
    }
    Ok(total)
}

/// `(-1)^n qbar [n]_qbar`, the dimension of the primitive middle cohomology
/// of a smooth q-bic hypersurface in `P^n`.
pub fn hypersurface_middle_prim_dim<T: ExactInt>(q: u64, n: u32) -> Result<T> {
    if n < 2 {
        return Err(Error::ParameterOutOfRange(format!("need n >= 2, got {n}")));
    }
    let g = GaussianParam::new(q)?;
    Ok(sign::<T>(n as u64) * g.qbar::<T>() * g.number::<T>(n))
}

/// `#X(F_{q^{2s}})` for a smooth q-bic hypersurface in `P^n`:
/// `sum_{j<n} q^{2js} + (-1)^{n-1} B qbar^{(n-1)s}`.
pub fn hypersurface_point_count<T: ExactInt>(q: u64, n: u32, s: u32) -> Result<T> {
    if s == 0 {
        return Err(Error::ParameterOutOfRange("need s >= 1".into()));
    }
    let b = hypersurface_middle_prim_dim::<T>(q, n)?;
    let qq = T::from_u64_exact(q);
    let qbar = -qq.clone();
    let lefschetz = (0..n).fold(T::zero(), |acc, j| acc + qq.pow_u32(2 * j * s));
    Ok(lefschetz + sign::<T>(n as u64 - 1) * b * qbar.pow_u32((n - 1) * s))
}
