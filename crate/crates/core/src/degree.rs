//! Plucker degrees of Fano schemes by Schubert-calculus coefficient
//! extraction, and comparison with the closed forms.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinatorics::{deg_f1, plucker_degree, Parity};
use crate::error::{Error, Result};
use crate::poly::MultiPoly;

/// Term budget for the Schubert factor before extraction.
pub const DEFAULT_TERM_BUDGET: u64 = 2_000_000;

type Poly = MultiPoly<BigInt>;

fn check_range(n: usize, r: usize) -> Result<()> {
    if 2 * r >= n {
        return Err(Error::ParameterOutOfRange(format!(
            "degree extraction needs 0 <= r < n/2, got n = {n}, r = {r}"
        )));
    }
    Ok(())
}

/// `x_0^n x_1^{n-1} ... x_r^{n-r}`.
pub fn target_monomial(n: usize, r: usize) -> Vec<u32> {
    (0..=r).map(|i| (n - i) as u32).collect()
}

/// `prod_{i,j} (x_i + q x_j) * prod_{i<j} (x_i - x_j)` in `r+1` variables.
pub fn schubert_factor(r: usize, q: u64) -> Poly {
    let k = r + 1;
    let qb = BigInt::from(q);
    let mut acc = Poly::one(k);
    for i in 0..k {
        for j in 0..k {
            let mut c = vec![BigInt::zero(); k];
            c[i] += BigInt::one();
            c[j] += qb.clone();
            acc = &acc * &Poly::linear(&c);
        }
    }
    for i in 0..k {
        for j in (i + 1)..k {
            let mut c = vec![BigInt::zero(); k];
            c[i] = BigInt::one();
            c[j] = -BigInt::one();
            acc = &acc * &Poly::linear(&c);
        }
    }
    acc
}

/// The full product `(x_0 + ... + x_r)^{(r+1)(n-2r-1)} * schubert_factor`.
/// Exponential in size; meant for small cross-checks.
pub fn fano_degree_polynomial(n: usize, r: usize, q: u64) -> Result<Poly> {
    check_range(n, r)?;
    let k = r + 1;
    let power = (k * (n - 2 * r - 1)) as u32;
    let sum = Poly::linear(&vec![BigInt::one(); k]);
    Ok(&sum.pow(power) * &schubert_factor(r, q))
}

fn factorials(n: usize) -> Vec<BigInt> {
    let mut f = vec![BigInt::one(); n + 1];
    for i in 1..=n {
        f[i] = &f[i - 1] * BigInt::from(i);
    }
    f
}

/// Plucker degree of the Fano scheme of `r`-planes of a q-bic in `P^n`, read
/// off as the coefficient of `x_0^n x_1^{n-1} ... x_r^{n-r}`. The power of
/// the linear form is never expanded: each Schubert term contributes its
/// coefficient times a multinomial.
pub fn fano_degree_coefficient(n: usize, r: usize, q: u64) -> Result<BigInt> {
    fano_degree_coefficient_with_budget(n, r, q, DEFAULT_TERM_BUDGET)
}

pub fn fano_degree_coefficient_with_budget(n: usize, r: usize, q: u64, budget: u64) -> Result<BigInt> {
    check_range(n, r)?;
    let k = r + 1;
    // the Schubert factor has at most C(deg + k - 1, k - 1) terms
    let deg = k * k + k * (k - 1) / 2;
    let bound = binom_u128(deg + k - 1, k - 1);
    if bound > budget as u128 {
        return Err(Error::BudgetExceeded { budget });
    }
    let power = k * (n - 2 * r - 1);
    let target = target_monomial(n, r);
    let fact = factorials(power);
    let mut total = BigInt::zero();
    for (m, c) in schubert_factor(r, q).terms() {
        let Some(rest) = m
            .iter()
            .zip(&target)
            .map(|(&a, &t)| t.checked_sub(a))
            .collect::<Option<Vec<u32>>>()
        else {
            continue;
        };
        if rest.iter().map(|&e| e as usize).sum::<usize>() != power {
            continue;
        }
        let denom = rest.iter().fold(BigInt::one(), |acc, &e| acc * &fact[e as usize]);
        total += c * (&fact[power] / denom);
    }
    Ok(total)
}

fn binom_u128(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// The coefficient next to every closed form that applies to `(n, r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeReport {
    pub n: usize,
    pub r: usize,
    pub q: u64,
    pub coefficient: BigInt,
    /// `(formula name, value)` pairs.
    pub closed_forms: Vec<(&'static str, BigInt)>,
}

impl DegreeReport {
    pub fn matches(&self) -> bool {
        self.closed_forms.iter().all(|(_, v)| *v == self.coefficient)
    }
}

/// Closed-form degrees that apply to `(n, r)`.
pub fn closed_form_degrees(n: usize, r: usize, q: u64) -> Result<Vec<(&'static str, BigInt)>> {
    check_range(n, r)?;
    let mut out = Vec::new();
    if r == 0 {
        out.push(("hypersurface_degree", BigInt::from(q + 1)));
    }
    if n == 2 * r + 1 {
        out.push(("plucker_degree", plucker_degree(q, r, Parity::Odd)?));
    }
    if n == 2 * r + 2 {
        out.push(("plucker_degree", plucker_degree(q, r, Parity::Even)?));
    }
    if r == 1 {
        out.push(("deg_f1", deg_f1(n, q)?));
    }
    Ok(out)
}

pub fn degree_crosscheck(n: usize, r: usize, q: u64) -> Result<DegreeReport> {
    let closed_forms = closed_form_degrees(n, r, q)?;
    if closed_forms.is_empty() {
        return Err(Error::ParameterOutOfRange(format!(
            "no closed-form degree is known for n = {n}, r = {r}"
        )));
    }
    Ok(DegreeReport {
        n,
        r,
        q,
        coefficient: fano_degree_coefficient(n, r, q)?,
        closed_forms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn hypersurface_degree() {
        for q in [2u64, 3, 5] {
            for n in 1..6 {
                assert_eq!(fano_degree_coefficient(n, 0, q).unwrap(), b(q as i64 + 1));
            }
        }
    }

    #[test]
    fn examples() {
        assert_eq!(fano_degree_coefficient(4, 1, 2).unwrap(), b(45));
        assert_eq!(fano_degree_coefficient(3, 1, 2).unwrap(), b(27));
        assert_eq!(fano_degree_coefficient(5, 1, 2).unwrap(), b(108));
        assert!(fano_degree_coefficient(4, 2, 2).is_err());
    }

    #[test]
    fn extraction_matches_full_expansion() {
        for (n, r) in [(3, 1), (4, 1), (5, 1), (6, 1), (5, 2)] {
            for q in [2u64, 3] {
                let full = fano_degree_polynomial(n, r, q).unwrap();
                assert!(full.is_homogeneous());
                assert_eq!(
                    full.coefficient(&target_monomial(n, r)),
                    fano_degree_coefficient(n, r, q).unwrap(),
                    "n = {n}, r = {r}, q = {q}"
                );
            }
        }
    }

    #[test]
    fn target_balances_total_degree() {
        for n in 1..9usize {
            for r in 0..n.div_ceil(2) {
                let total: u32 = target_monomial(n, r).iter().sum();
                let full_degree = (r + 1) * (n - 2 * r - 1) + (r + 1) * (r + 1) + r * (r + 1) / 2;
                assert_eq!(total as usize, full_degree);
            }
        }
    }

    #[test]
    fn vandermonde_swap_negates_schubert_factor() {
        let s = schubert_factor(2, 3);
        assert_eq!(s.swap_vars(0, 2), -&s);
    }

    #[test]
    fn crosscheck_regimes() {
        let rep = degree_crosscheck(4, 1, 3).unwrap();
        assert_eq!(rep.coefficient, b(160));
        assert_eq!(rep.closed_forms.len(), 2);
        assert!(rep.matches());
        assert!(degree_crosscheck(6, 2, 2).unwrap().matches());
        assert!(degree_crosscheck(7, 2, 2).is_err());
        assert!(matches!(
            fano_degree_coefficient_with_budget(8, 3, 2, 10),
            Err(Error::BudgetExceeded { budget: 10 })
        ));
    }
}
