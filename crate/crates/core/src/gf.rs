//! Finite fields GF(p^d) as Z_p[t]/(f(t)).
//!
//! The modulus is the lexicographically smallest monic irreducible polynomial
//! of degree `d`, where polynomials are compared by the base-`p` value of
//! `(c_{d-1}, ..., c_1, c_0)`. Elements are coefficient vectors in ascending
//! powers of `t`, and the canonical element order is the same base-`p` value.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("field degree must be at least 1")]
    ZeroDegree,
    #[error("polynomial is not monic of degree at least 1")]
    NotMonic,
    #[error("field GF({p}^{d}) is too large")]
    TooLarge { p: u32, d: usize },
    #[error("element does not belong to GF({p}^{d})")]
    ContextMismatch { p: u32, d: usize },
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2u32;
    while k.saturating_mul(k) <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// Arithmetic context for GF(p^d).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldCtx {
    p: u32,
    degree: usize,
    modulus: Vec<u32>,
}

/// An element of GF(p^d): `degree` coefficients in `[0, p)`, ascending powers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    coeffs: Vec<u32>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Degree of the underlying polynomial; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != 0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "t".to_string(),
                (1, c) => format!("{c}t"),
                (i, 1) => format!("t^{i}"),
                (i, c) => format!("{c}t^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

/// Remainder of `num` modulo the monic polynomial `den` over Z_p.
/// Both are ascending coefficient vectors.
fn poly_rem(p: u32, num: &[u32], den: &[u32]) -> Vec<u32> {
    let dd = den.len() - 1;
    let mut rem: Vec<u64> = num.iter().map(|&c| c as u64).collect();
    let p64 = p as u64;
    while rem.len() > dd {
        let lead = rem.pop().unwrap() % p64;
        if lead != 0 {
            let shift = rem.len() - dd;
            for (k, &dc) in den[..dd].iter().enumerate() {
                let sub = lead * dc as u64 % p64;
                rem[shift + k] = (rem[shift + k] + p64 - sub) % p64;
            }
        }
    }
    rem.into_iter().map(|c| (c % p64) as u32).collect()
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-`p`
/// digits of `index` (least significant digit = constant term).
fn monic_from_index(p: u32, deg: usize, mut index: u64) -> Vec<u32> {
    let mut coeffs = Vec::with_capacity(deg + 1);
    for _ in 0..deg {
        coeffs.push((index % p as u64) as u32);
        index /= p as u64;
    }
    coeffs.push(1);
    coeffs
}

/// Exhaustive trial division by every monic polynomial of degree
/// `1..=deg/2` over Z_p.
pub fn is_irreducible(p: u32, poly: &[u32]) -> Result<bool, GfError> {
    if !is_prime(p) {
        return Err(GfError::NotPrime(p));
    }
    if poly.len() < 2 || *poly.last().unwrap() != 1 {
        return Err(GfError::NotMonic);
    }
    let deg = poly.len() - 1;
    for div_deg in 1..=deg / 2 {
        let count = (p as u64).pow(div_deg as u32);
        for idx in 0..count {
            let div = monic_from_index(p, div_deg, idx);
            if poly_rem(p, poly, &div).iter().all(|&c| c == 0) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Largest field this crate will build; keeps enumeration and tables small.
pub const MAX_FIELD_SIZE: u64 = 1 << 16;

pub fn make_field(p: u32, degree: usize) -> Result<FieldCtx, GfError> {
    if !is_prime(p) {
        return Err(GfError::NotPrime(p));
    }
    if degree == 0 {
        return Err(GfError::ZeroDegree);
    }
    let size = (p as u64)
        .checked_pow(degree as u32)
        .filter(|&s| s <= MAX_FIELD_SIZE)
        .ok_or(GfError::TooLarge { p, d: degree })?;
    for idx in 0..size {
        let candidate = monic_from_index(p, degree, idx);
        if is_irreducible(p, &candidate)? {
            return Ok(FieldCtx {
                p,
                degree,
                modulus: candidate,
            });
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over Z_p")
}

impl FieldCtx {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Ascending coefficients, length `degree + 1`, leading 1.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn size(&self) -> usize {
        (self.p as usize).pow(self.degree as u32)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.degree],
        }
    }

    pub fn one(&self) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[0] = 1;
        e
    }

    /// Builds an element from ascending coefficients; missing high
    /// coefficients are zero, and values are reduced mod p.
    pub fn element(&self, coeffs: &[u32]) -> Result<FieldElement, GfError> {
        if coeffs.len() > self.degree {
            return Err(self.mismatch());
        }
        let mut e = self.zero();
        for (slot, &c) in e.coeffs.iter_mut().zip(coeffs) {
            *slot = c % self.p;
        }
        Ok(e)
    }

    /// Element whose canonical index (base-`p` value of its coefficients) is `index`.
    pub fn element_at(&self, mut index: usize) -> FieldElement {
        debug_assert!(index < self.size());
        let mut e = self.zero();
        for c in e.coeffs.iter_mut() {
            *c = (index % self.p as usize) as u32;
            index /= self.p as usize;
        }
        e
    }

    /// Canonical 0-based index of an element.
    pub fn index_of(&self, e: &FieldElement) -> usize {
        e.coeffs
            .iter()
            .rev()
            .fold(0usize, |acc, &c| acc * self.p as usize + c as usize)
    }

    pub fn enumerate_elements(&self) -> Vec<FieldElement> {
        (0..self.size()).map(|i| self.element_at(i)).collect()
    }

    fn mismatch(&self) -> GfError {
        GfError::ContextMismatch {
            p: self.p,
            d: self.degree,
        }
    }

    fn check(&self, e: &FieldElement) -> Result<(), GfError> {
        if e.coeffs.len() == self.degree && e.coeffs.iter().all(|&c| c < self.p) {
            Ok(())
        } else {
            Err(self.mismatch())
        }
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, GfError> {
        self.check(a)?;
        self.check(b)?;
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        Ok(FieldElement { coeffs })
    }

    pub fn neg(&self, a: &FieldElement) -> Result<FieldElement, GfError> {
        self.check(a)?;
        let coeffs = a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect();
        Ok(FieldElement { coeffs })
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, GfError> {
        self.add(a, &self.neg(b)?)
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, GfError> {
        self.check(a)?;
        self.check(b)?;
        let p = self.p as u64;
        let mut prod = vec![0u64; 2 * self.degree - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
        let mut coeffs = poly_rem(self.p, &prod, &self.modulus);
        coeffs.resize(self.degree, 0);
        Ok(FieldElement { coeffs })
    }

    pub fn pow(&self, a: &FieldElement, mut exp: u64) -> Result<FieldElement, GfError> {
        let mut base = a.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            base = self.mul(&base, &base)?;
            exp >>= 1;
        }
        Ok(acc)
    }
}
