//! Table-driven arithmetic in small finite fields GF(p^e).
//!
//! Elements are stored as their canonical index: the little-endian base-p
//! digits of the index are the coefficients of the representing polynomial
//! modulo the field's defining polynomial. Multiplication goes through
//! discrete log/exp tables; addition is XOR in characteristic two and uses
//! Zech logarithms otherwise.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order accepted by default.
pub const DEFAULT_FIELD_CAP: u64 = 1 << 20;

const NO_LOG: u32 = u32::MAX;

/// An element of some [`FieldDescriptor`], identified by its canonical index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Serializable description of a field: characteristic, degree and modulus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub e: u32,
    /// Coefficients `c_0 .. c_e` of the monic defining polynomial.
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn build(&self) -> Result<FieldDescriptor> {
        FieldDescriptor::new(self.p, self.e, Some(&self.modulus))
    }
}

/// A finite field GF(p^e) with precomputed arithmetic tables.
///
/// Immutable once built; share it behind an `Arc`.
pub struct FieldDescriptor {
    p: u32,
    e: u32,
    order: u32,
    modulus: Vec<u32>,
    generator: FieldElement,
    /// `exp[i] = g^i`, stored twice over so sums of two logs need no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    /// `zech[d] = log(1 + g^d)`, empty in characteristic two.
    zech: Vec<u32>,
    minus_one_log: u32,
}

impl fmt::Debug for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldDescriptor")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}

impl Eq for FieldDescriptor {}

impl FieldDescriptor {
    /// Builds GF(p^e). Without an explicit modulus the monic irreducible of
    /// degree `e` with the smallest coefficient index is used.
    pub fn new(p: u64, e: u32, modulus: Option<&[u32]>) -> Result<Self> {
        Self::with_cap(p, e, modulus, DEFAULT_FIELD_CAP)
    }

    pub fn with_cap(p: u64, e: u32, modulus: Option<&[u32]>, cap: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::ParameterOutOfRange("extension degree must be at least 1".into()));
        }
        let order = p
            .checked_pow(e)
            .filter(|&o| o <= cap && o <= u32::MAX as u64)
            .ok_or(Error::FieldTooLarge { p, e, cap })?;
        let p32 = p as u32;
        let modulus = match modulus {
            Some(m) => {
                let ok = m.len() == e as usize + 1
                    && m[e as usize] == 1
                    && m.iter().all(|&c| c < p32)
                    && is_irreducible(m, p32);
                if !ok {
                    return Err(Error::ReducibleModulus(m.to_vec()));
                }
                m.to_vec()
            }
            None => default_modulus(p32, e),
        };
        Ok(Self::build_tables(p32, e, order as u32, modulus))
    }

    fn build_tables(p: u32, e: u32, order: u32, modulus: Vec<u32>) -> Self {
        let group = order - 1;
        let generator = find_primitive(p, e, order, &modulus);
        let g = digits_of(generator, p, e);
        let mut exp = vec![0u32; 2 * group as usize];
        let mut log = vec![NO_LOG; order as usize];
        let mut cur = digits_of(1, p, e);
        for i in 0..group {
            let idx = index_of(&cur, p);
            exp[i as usize] = idx;
            log[idx as usize] = i;
            cur = poly_mulmod(&cur, &g, &modulus, p);
            cur.resize(e as usize, 0);
        }
        assert_eq!(index_of(&cur, p), 1, "generator order does not divide the group order");
        for i in 0..group as usize {
            exp[group as usize + i] = exp[i];
        }
        let mut zech = Vec::new();
        let mut minus_one_log = 0;
        if p != 2 {
            minus_one_log = group / 2;
            zech = (0..group)
                .map(|d| {
                    let x = exp[d as usize];
                    // adding one only touches the constant digit
                    let c0 = x % p;
                    let y = if c0 + 1 == p { x - c0 } else { x + 1 };
                    log[y as usize]
                })
                .collect();
        }
        FieldDescriptor {
            p,
            e,
            order,
            modulus,
            generator: FieldElement(generator),
            exp,
            log,
            zech,
            minus_one_log,
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u64 {
        self.order as u64
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.p as u64,
            e: self.e,
            modulus: self.modulus.clone(),
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order).map(FieldElement)
    }

    /// Interprets an index as an element, rejecting out-of-range values.
    pub fn element(&self, index: u32) -> Option<FieldElement> {
        (index < self.order).then_some(FieldElement(index))
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn digits(&self, x: FieldElement) -> Vec<u32> {
        digits_of(x.0, self.p, self.e)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let group = self.order - 1;
        let la = self.log[a.0 as usize];
        let lb = self.log[b.0 as usize];
        let d = if lb >= la { lb - la } else { lb + group - la };
        match self.zech[d as usize] {
            NO_LOG => FieldElement::ZERO,
            z => FieldElement(self.exp[(la + z) as usize]),
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.p == 2 || a.0 == 0 {
            return a;
        }
        FieldElement(self.exp[(self.log[a.0 as usize] + self.minus_one_log) as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        FieldElement(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.0 == 0 {
            return None;
        }
        let group = self.order - 1;
        let l = self.log[a.0 as usize];
        Some(FieldElement(self.exp[((group - l) % group) as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Option<FieldElement> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: FieldElement, k: u64) -> FieldElement {
        if k == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        let group = (self.order - 1) as u64;
        let l = (self.log[a.0 as usize] as u64 * (k % group)) % group;
        FieldElement(self.exp[l as usize])
    }

    /// Discrete logarithm to the stored generator; `None` for zero.
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        (a.0 != 0).then(|| self.log[a.0 as usize])
    }

    /// Validates that `q` is a power of the characteristic.
    pub fn check_power_of_p(&self, q: u64) -> Result<()> {
        let p = self.p as u64;
        let mut x = q;
        if x == 0 {
            return Err(Error::CharacteristicMismatch { q, p });
        }
        while x % p == 0 {
            x /= p;
        }
        if x != 1 {
            return Err(Error::CharacteristicMismatch { q, p });
        }
        Ok(())
    }

    /// `x^q` for a power `q` of the characteristic.
    pub fn frobenius(&self, x: FieldElement, q: u64) -> Result<FieldElement> {
        self.check_power_of_p(q)?;
        Ok(self.pow(x, q))
    }

    /// A precomputed `x -> x^q` map (validated once).
    pub fn frobenius_map(&self, q: u64) -> Result<PowerMap> {
        self.check_power_of_p(q)?;
        let group = (self.order - 1) as u64;
        Ok(PowerMap {
            mult: (q % group) as u32,
        })
    }

    /// The inverse of `x -> x^q`, i.e. the unique `y` with `y^q = x`.
    pub fn frobenius_inverse_map(&self, q: u64) -> Result<PowerMap> {
        self.check_power_of_p(q)?;
        let group = (self.order - 1) as u64;
        let mult = if group == 1 { 0 } else { mod_inverse(q % group, group) };
        Ok(PowerMap { mult: mult as u32 })
    }

    #[inline]
    pub fn apply(&self, map: PowerMap, x: FieldElement) -> FieldElement {
        if x.0 == 0 {
            return x;
        }
        let group = (self.order - 1) as u64;
        let l = (self.log[x.0 as usize] as u64 * map.mult as u64) % group;
        FieldElement(self.exp[l as usize])
    }
}

/// A power map `x -> x^k` on the multiplicative group, stored as the
/// exponent reduced modulo the group order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PowerMap {
    mult: u32,
}

/// A ring embedding GF(p^a) -> GF(p^b), tabulated on all source elements.
#[derive(Debug, Clone)]
pub struct Embedding {
    image: Vec<FieldElement>,
}

impl Embedding {
    #[inline]
    pub fn apply(&self, x: FieldElement) -> FieldElement {
        self.image[x.0 as usize]
    }

    pub fn image(&self) -> &[FieldElement] {
        &self.image
    }
}

/// Embeds `src` into `dst` by sending the class of `x` to the smallest-index
/// root of `src`'s modulus in `dst`.
pub fn embed(src: &FieldDescriptor, dst: &FieldDescriptor) -> Result<Embedding> {
    if src.p != dst.p || dst.e % src.e != 0 {
        return Err(Error::NoEmbedding {
            src: src.order(),
            dst: dst.order(),
        });
    }
    let eval = |x: FieldElement| {
        src.modulus
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| dst.add(dst.mul(acc, x), FieldElement(c)))
    };
    let root = dst
        .elements()
        .find(|&x| eval(x).is_zero())
        .expect("an extension contains the roots of every subfield modulus");
    let mut powers = Vec::with_capacity(src.e as usize);
    let mut cur = FieldElement::ONE;
    for _ in 0..src.e {
        powers.push(cur);
        cur = dst.mul(cur, root);
    }
    let image = src
        .elements()
        .map(|x| {
            src.digits(x)
                .iter()
                .zip(&powers)
                .fold(FieldElement::ZERO, |acc, (&d, &pw)| {
                    dst.add(acc, dst.mul(FieldElement(d), pw))
                })
        })
        .collect();
    Ok(Embedding { image })
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let k = r0 / r1;
        (r0, r1) = (r1, r0 - k * r1);
        (t0, t1) = (t1, t0 - k * t1);
    }
    debug_assert_eq!(r0, 1);
    t0.rem_euclid(m as i128) as u64
}

fn digits_of(mut idx: u32, p: u32, e: u32) -> Vec<u32> {
    let mut d = vec![0; e as usize];
    for slot in d.iter_mut() {
        *slot = idx % p;
        idx /= p;
    }
    d
}

fn index_of(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

// Dense polynomials over GF(p), little-endian coefficient vectors.

fn trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64;
    let mut k = p - 2;
    while k > 0 {
        if k & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        k >>= 1;
    }
    r as u32
}

fn poly_rem(a: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut f = f.to_vec();
    trim(&mut f);
    let df = f.len() - 1;
    let lead_inv = inv_mod_p(f[df], p) as u64;
    while r.len() > df {
        let dr = r.len() - 1;
        let c = r[dr] as u64 * lead_inv % p as u64;
        for i in 0..=df {
            let t = (c * f[i] as u64) % p as u64;
            let slot = &mut r[dr - df + i];
            *slot = ((*slot as u64 + p as u64 - t) % p as u64) as u32;
        }
        trim(&mut r);
    }
    r
}

fn poly_mulmod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
    poly_rem(&prod, f, p)
}

fn poly_powmod(base: &[u32], mut k: u64, f: &[u32], p: u32) -> Vec<u32> {
    let mut result = vec![1];
    let mut b = poly_rem(base, f, p);
    while k > 0 {
        if k & 1 == 1 {
            result = poly_mulmod(&result, &b, f, p);
        }
        b = poly_mulmod(&b, &b, f, p);
        k >>= 1;
    }
    result
}

fn poly_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn poly_sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let mut out: Vec<u32> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

/// `x^(p^k) mod f`.
fn x_pow_p_pow(f: &[u32], p: u32, k: u32) -> Vec<u32> {
    let mut cur = poly_rem(&[0, 1], f, p);
    for _ in 0..k {
        cur = poly_powmod(&cur, p as u64, f, p);
    }
    cur
}

/// Rabin's irreducibility test.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let e = f.len() as u32 - 1;
    if e == 1 {
        return true;
    }
    let x = vec![0, 1];
    if !poly_sub(&x_pow_p_pow(f, p, e), &x, p).is_empty() {
        return false;
    }
    prime_factors(e as u64).into_iter().all(|r| {
        let h = poly_sub(&x_pow_p_pow(f, p, e / r as u32), &x, p);
        poly_gcd(f, &h, p).len() == 1
    })
}

fn default_modulus(p: u32, e: u32) -> Vec<u32> {
    let tail = (p as u64).pow(e) as u32;
    (0..tail)
        .map(|idx| {
            let mut m = digits_of(idx, p, e);
            m.push(1);
            m
        })
        .find(|m| is_irreducible(m, p))
        .expect("irreducible polynomials exist in every degree")
}

fn find_primitive(p: u32, e: u32, order: u32, modulus: &[u32]) -> u32 {
    let group = (order - 1) as u64;
    if group == 1 {
        return 1;
    }
    let factors = prime_factors(group);
    (1..order)
        .find(|&idx| {
            let g = digits_of(idx, p, e);
            factors
                .iter()
                .all(|&r| poly_powmod(&g, group / r, modulus, p) != vec![1])
        })
        .expect("the multiplicative group of a finite field is cyclic")
}
