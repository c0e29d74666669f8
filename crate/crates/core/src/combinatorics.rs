//! Gaussian integers at the Ennola parameter `qbar = -q` and the closed-form
//! counts and degrees built from them.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::num::{sign, ExactInt};

/// `[n]_x = 1 + x + ... + x^{n-1}`.
pub fn gauss_number<T: ExactInt>(n: u32, x: &T) -> T {
    let mut acc = T::zero();
    let mut pw = T::one();
    for _ in 0..n {
        acc = acc + pw.clone();
        pw = pw * x.clone();
    }
    acc
}

/// `[n]_x! = [1]_x [2]_x ... [n]_x`.
pub fn gauss_factorial<T: ExactInt>(n: u32, x: &T) -> T {
    (1..=n).fold(T::one(), |acc, i| acc * gauss_number(i, x))
}

/// `[n]_x [n-2]_x ...`, ending at `[1]_x` or `[2]_x`; `[0]_x!! = 1`.
pub fn gauss_double_factorial<T: ExactInt>(n: u32, x: &T) -> T {
    let mut acc = T::one();
    let mut i = n;
    while i > 0 {
        acc = acc * gauss_number(i, x);
        i = i.saturating_sub(2);
    }
    acc
}

/// Gaussian binomial `[n choose k]_x`, zero when `k > n`. Computed as a
/// ratio of products with checked exact division.
pub fn gauss_binomial<T: ExactInt>(n: u32, k: u32, x: &T) -> Result<T> {
    if k > n {
        return Ok(T::zero());
    }
    let k = k.min(n - k);
    let num = ((n - k + 1)..=n).fold(T::one(), |acc, i| acc * gauss_number(i, x));
    num.exact_div(&gauss_factorial(k, x), "gauss_binomial")
}

/// The Ennola parameter of a prime power `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GaussianParam {
    q: u64,
}

impl GaussianParam {
    pub fn new(q: u64) -> Result<Self> {
        prime_power(q)
            .map(|_| GaussianParam { q })
            .ok_or_else(|| Error::ParameterOutOfRange(format!("{q} is not a prime power")))
    }

    pub fn q<T: ExactInt>(&self) -> T {
        T::from_u64_exact(self.q)
    }

    pub fn qbar<T: ExactInt>(&self) -> T {
        -self.q::<T>()
    }

    pub fn number<T: ExactInt>(&self, n: u32) -> T {
        gauss_number(n, &self.qbar())
    }

    pub fn factorial<T: ExactInt>(&self, n: u32) -> T {
        gauss_factorial(n, &self.qbar())
    }

    pub fn double_factorial<T: ExactInt>(&self, n: u32) -> T {
        gauss_double_factorial(n, &self.qbar())
    }

    pub fn binomial<T: ExactInt>(&self, n: u32, k: u32) -> Result<T> {
        gauss_binomial(n, k, &self.qbar())
    }

    /// Binomial at the parameter `q^2`, used for flag counts over `F_{q^2}`.
    pub fn binomial_q2<T: ExactInt>(&self, n: u32, k: u32) -> Result<T> {
        let q: T = self.q();
        gauss_binomial(n, k, &(q.clone() * q))
    }
}

/// `(p, nu)` with `q = p^nu`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut x = q;
    let mut nu = 0;
    while x % p == 0 {
        x /= p;
        nu += 1;
    }
    (x == 1).then_some((p, nu))
}

fn param(q: u64) -> Result<GaussianParam> {
    GaussianParam::new(q)
}

fn to_u32(n: usize, what: &str) -> Result<u32> {
    u32::try_from(n).map_err(|_| Error::ParameterOutOfRange(format!("{what} = {n} is too large")))
}

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

/// Parity selector for the half-dimensional formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: usize) -> Self {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Number of Hermitian `m`-planes in a smooth q-bic of dimension `2m`
/// (`Even`) or `2m+1` (`Odd`).
pub fn hermitian_max_count(q: u64, m: usize, parity: Parity) -> BigInt {
    let offset = match parity {
        Parity::Even => 1,
        Parity::Odd => 3,
    };
    (0..=m as u32).fold(BigInt::one(), |acc, i| acc * (big(q).pow(2 * i + offset) + 1))
}

/// Number of Hermitian `k`-planes in a smooth q-bic hypersurface in `P^n`:
/// `(1 - qbar)^{k+1} [2k+1]!! [n+1 choose 2k+2]` at `qbar = -q`.
pub fn hermitian_plane_count(q: u64, n: usize, k: usize) -> Result<BigInt> {
    if 2 * k >= n {
        return Err(Error::ParameterOutOfRange(format!(
            "hermitian_plane_count needs 0 <= k < n/2, got n = {n}, k = {k}"
        )));
    }
    let g = param(q)?;
    let k32 = to_u32(k, "k")?;
    let n32 = to_u32(n, "n")?;
    let one_minus_qbar = BigInt::one() - g.qbar::<BigInt>();
    let value = one_minus_qbar.pow(k32 + 1)
        * g.double_factorial::<BigInt>(2 * k32 + 1)
        * g.binomial::<BigInt>(n32 + 1, 2 * k32 + 2)?;
    assert!(value.is_positive(), "Hermitian plane count must be positive, got {value}");
    Ok(value)
}

/// Both sides of the nested-flag double count:
/// `H(n, k) * H(n-2k-2, m-k-1)` and `H(n, m) * [m+1 choose k+1]_{q^2}`.
pub fn double_count_sides(q: u64, n: usize, k: usize, m: usize) -> Result<(BigInt, BigInt)> {
    if k >= m || 2 * m >= n {
        return Err(Error::ParameterOutOfRange(format!(
            "double count needs 0 <= k < m < n/2, got n = {n}, k = {k}, m = {m}"
        )));
    }
    let g = param(q)?;
    let lhs = hermitian_plane_count(q, n, k)? * hermitian_plane_count(q, n - 2 * k - 2, m - k - 1)?;
    let rhs = hermitian_plane_count(q, n, m)?
        * g.binomial_q2::<BigInt>(to_u32(m + 1, "m")?, to_u32(k + 1, "k")?)?;
    Ok((lhs, rhs))
}

pub fn double_count_identity(q: u64, n: usize, k: usize, m: usize) -> Result<bool> {
    let (lhs, rhs) = double_count_sides(q, n, k, m)?;
    Ok(lhs == rhs)
}

fn check_half(n: usize, r: usize, what: &str) -> Result<()> {
    if 2 * r >= n {
        return Err(Error::ParameterOutOfRange(format!(
            "{what} needs 0 <= r < n/2, got n = {n}, r = {r}"
        )));
    }
    Ok(())
}

/// `(r+1)(n-2r-1)`.
pub fn expected_fano_dim(n: usize, r: usize) -> Result<usize> {
    check_half(n, r, "expected_fano_dim")?;
    Ok((r + 1) * (n - 2 * r - 1))
}

/// Degree of the canonical bundle of the Fano scheme of `r`-planes:
/// `(q+1)(r+1) - (n+1)`.
pub fn canonical_degree(n: usize, r: usize, q: u64) -> Result<BigInt> {
    check_half(n, r, "canonical_degree")?;
    Ok(big(q + 1) * BigInt::from(r + 1) - BigInt::from(n + 1))
}

/// `q^{k(k+1)}`.
pub fn phi_minus_degree(q: u64, k: usize) -> BigInt {
    big(q).pow((k * (k + 1)) as u32)
}

/// `q^{k(2n-3k-3)}`.
pub fn phi_plus_degree(q: u64, n: usize, k: usize) -> Result<BigInt> {
    check_half(n, k, "phi_plus_degree")?;
    let e = k as i64 * (2 * n as i64 - 3 * k as i64 - 3);
    if e < 0 {
        return Err(Error::ParameterOutOfRange(format!("negative exponent for n = {n}, k = {k}")));
    }
    Ok(big(q).pow(e as u32))
}

/// `|GU_n(q)| = q^{C(n,2)} prod_{i=1}^n (q^i - (-1)^i)`.
pub fn unitary_group_order(q: u64, n: usize) -> BigInt {
    let n = n as u32;
    let qb = big(q);
    (1..=n).fold(qb.pow(n * n.saturating_sub(1) / 2), |acc, i| {
        acc * (qb.pow(i) - sign::<BigInt>(i as u64))
    })
}

/// `|PGU_n(q)|`, evaluated as `qbar^{C(n,2)} prod_{i=2}^n (qbar^i - 1)` up to
/// the sign `(-1)^{n-1}`, which is `+1` for odd `n`.
pub fn projective_unitary_group_order(q: u64, n: usize) -> BigInt {
    let n = n.max(1) as u32;
    let qbar = -big(q);
    let raw = (2..=n).fold(qbar.pow(n * (n - 1) / 2), |acc, i| acc * (qbar.pow(i) - 1));
    let value = raw * sign::<BigInt>((n - 1) as u64);
    assert!(value.is_positive(), "group order must be positive, got {value}");
    value
}

/// Plucker degree of the Fano scheme of half-dimensional planes: for
/// `n = 2m+1` (`Odd`) `prod (q^{2i+1}+1)`, for `n = 2m+2` (`Even`)
/// `prod (q^{2i+2}-1)/(q-1)`.
pub fn plucker_degree(q: u64, m: usize, parity_of_n: Parity) -> Result<BigInt> {
    match parity_of_n {
        Parity::Odd => Ok(hermitian_max_count(q, m, Parity::Even)),
        Parity::Even => {
            let qb = big(q);
            let mut acc = BigInt::one();
            for i in 0..=m as u32 {
                let factor = (qb.pow(2 * i + 2) - BigInt::one()).exact_div(&(qb.clone() - BigInt::one()), "plucker_degree")?;
                acc *= factor;
            }
            Ok(acc)
        }
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Degree of the scheme of lines, when it has dimension `2n-6`:
/// `(2n-6)!/((n-1)!(n-3)!) (q+1)^2 ((n-1)q^2 + (2n-8)q + (n-1))`.
pub fn deg_f1(n: usize, q: u64) -> Result<BigInt> {
    if n < 3 {
        return Err(Error::ParameterOutOfRange(format!("deg_f1 needs n >= 3, got {n}")));
    }
    let qb = big(q);
    let n_minus_1 = BigInt::from(n - 1);
    let middle = BigInt::from(2 * n as i64 - 8);
    let poly: BigInt = &n_minus_1 * qb.pow(2) + middle * &qb + &n_minus_1;
    let num: BigInt = factorial(2 * n - 6) * (qb + BigInt::one()).pow(2) * poly;
    num.exact_div(&(factorial(n - 1) * factorial(n - 3)), "deg_f1")
}

/// A closed-form value with an optional enumerated cross-check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub formula: String,
    pub params: BTreeMap<String, i64>,
    pub value: Option<BigInt>,
    pub cross_check: Option<CrossCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCheck {
    pub oracle: BigInt,
    pub matches: bool,
}

impl CountReport {
    pub fn new(formula: impl Into<String>, params: impl IntoIterator<Item = (&'static str, i64)>) -> Self {
        CountReport {
            formula: formula.into(),
            params: params.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            value: None,
            cross_check: None,
        }
    }

    pub fn with_value(mut self, value: BigInt) -> Self {
        self.value = Some(value);
        self.refresh();
        self
    }

    pub fn with_oracle(mut self, oracle: BigInt) -> Self {
        self.cross_check = Some(CrossCheck { oracle, matches: false });
        self.refresh();
        self
    }

    fn refresh(&mut self) {
        if let Some(cc) = self.cross_check.as_mut() {
            cc.matches = self.value.as_ref() == Some(&cc.oracle);
        }
    }

    /// `None` unless both sides are present.
    pub fn matches(&self) -> Option<bool> {
        self.value.as_ref()?;
        self.cross_check.as_ref().map(|c| c.matches)
    }
}
