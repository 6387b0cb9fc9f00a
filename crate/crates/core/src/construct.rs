//! MOSLS families from finite fields and from the pair-composition product.
//!
//! For `q = p^m`, `r = p^n` the field GF(p^(m+n)) is split into `r` row
//! cosets of size `q` and `q` column cosets of size `r`:
//!
//! * `X_k = f_k + span{1, t, .., t^(m-1)}` with `f_k` running over
//!   `span{t^m, .., t^(m+n-1)}`,
//! * `Y_l = g_l + span{1, t, .., t^(n-1)}` with `g_l` running over
//!   `span{t^n, .., t^(m+n-1)}`.
//!
//! The square `L_a(x, y) = x - a*y` is then Sudoku of type `(q, r)` whenever
//! `a` has degree `m`: two cells of one block differ by a polynomial of
//! degree `< m` in `x`, while `a*(y - y')` has degree `>= m` and `< m+n`, so no
//! reduction by the modulus happens.

use thiserror::Error;

use crate::designs::{DesignError, LatinSquare, MoslsFamily, SudokuShape};
use crate::gf::{self, FieldCtx, FieldElement, GfError};

/// Default largest order that construction commands will build.
pub const DEFAULT_ORDER_CAP: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("m + n must be at least 1")]
    ZeroExponents,
    #[error("field construction needs m >= 1 and n >= 1 (got m={m}, n={n}); use plain MOLS")]
    DegenerateExponents { m: u32, n: u32 },
    #[error("order {order} exceeds the order cap {cap}")]
    OrderTooLarge { order: usize, cap: usize },
    #[error("multiplier must be nonzero")]
    ZeroMultiplier,
    #[error("field context GF({p}^{d}) does not match the construction")]
    ContextMismatch { p: u32, d: usize },
    #[error("prime {0} appears twice in the factorization")]
    RepeatedPrime(u32),
    #[error("factorization is empty")]
    EmptyFactorization,
}

/// Parameters `(p, m, n)` with `q = p^m`, `r = p^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldConstructionSpec {
    pub p: u32,
    pub m: u32,
    pub n: u32,
}

impl FieldConstructionSpec {
    pub fn new(p: u32, m: u32, n: u32) -> Result<Self, ConstructError> {
        if !gf::is_prime(p) {
            return Err(ConstructError::NotPrime(p));
        }
        if m + n == 0 {
            return Err(ConstructError::ZeroExponents);
        }
        Ok(Self { p, m, n })
    }

    pub fn q(&self) -> usize {
        (self.p as usize).pow(self.m)
    }

    pub fn r(&self) -> usize {
        (self.p as usize).pow(self.n)
    }

    pub fn order(&self) -> usize {
        self.q() * self.r()
    }

    pub fn shape(&self) -> SudokuShape {
        SudokuShape::new(self.q(), self.r()).expect("prime powers are positive")
    }

    fn swapped(&self) -> Self {
        Self {
            p: self.p,
            m: self.n,
            n: self.m,
        }
    }

    fn check_cap(&self, cap: usize) -> Result<(), ConstructError> {
        let order = (self.p as u64)
            .checked_pow(self.m + self.n)
            .unwrap_or(u64::MAX);
        if order > cap as u64 {
            return Err(ConstructError::OrderTooLarge {
                order: order.min(usize::MAX as u64) as usize,
                cap,
            });
        }
        Ok(())
    }
}

/// Row and column cosets of the field, each listed in canonical element order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetPartition {
    /// `r` cosets of size `q`.
    pub row_cosets: Vec<Vec<FieldElement>>,
    /// `q` cosets of size `r`.
    pub col_cosets: Vec<Vec<FieldElement>>,
}

impl CosetPartition {
    fn rows(&self) -> impl Iterator<Item = &FieldElement> {
        self.row_cosets.iter().flatten()
    }

    fn cols(&self) -> impl Iterator<Item = &FieldElement> {
        self.col_cosets.iter().flatten()
    }
}

/// Cosets `shift + span{t^0..t^(low-1)}` for every shift in
/// `span{t^low..t^(d-1)}`, in canonical order. Because the shift has no
/// low coefficients, canonical index = shift index + offset index.
fn cosets(ctx: &FieldCtx, low: u32) -> Vec<Vec<FieldElement>> {
    let size = ctx.size();
    let block = (ctx.p() as usize).pow(low);
    (0..size / block)
        .map(|k| (0..block).map(|off| ctx.element_at(k * block + off)).collect())
        .collect()
}

pub fn coset_partition(
    spec: &FieldConstructionSpec,
    ctx: &FieldCtx,
) -> Result<CosetPartition, ConstructError> {
    if ctx.p() != spec.p || ctx.degree() != (spec.m + spec.n) as usize {
        return Err(ConstructError::ContextMismatch {
            p: ctx.p(),
            d: ctx.degree(),
        });
    }
    Ok(CosetPartition {
        row_cosets: cosets(ctx, spec.m),
        col_cosets: cosets(ctx, spec.n),
    })
}

/// `L_a(x, y) = x - a*y` with rows ordered `X_1, X_2, ..` and columns
/// `Y_1, Y_2, ..`; symbols are 1-based canonical element indices.
pub fn field_square(
    a: &FieldElement,
    spec: &FieldConstructionSpec,
    ctx: &FieldCtx,
    partition: &CosetPartition,
) -> Result<LatinSquare, ConstructError> {
    if a.is_zero() {
        return Err(ConstructError::ZeroMultiplier);
    }
    let mut entries = Vec::with_capacity(ctx.size() * ctx.size());
    for x in partition.rows() {
        for y in partition.cols() {
            let ay = ctx.mul(a, y)?;
            let s = ctx.sub(x, &ay)?;
            entries.push(ctx.index_of(&s) as u32 + 1);
        }
    }
    Ok(LatinSquare::new(spec.shape(), entries)?)
}

/// All `L_a` with `deg(a) = m`: `p^m (p-1)` Sudoku squares of type `(q, r)`.
fn direct_family(spec: &FieldConstructionSpec) -> Result<MoslsFamily, ConstructError> {
    let ctx = gf::make_field(spec.p, (spec.m + spec.n) as usize)?;
    let partition = coset_partition(spec, &ctx)?;
    let squares = ctx
        .enumerate_elements()
        .into_iter()
        .filter(|a| a.degree() == Some(spec.m as usize))
        .map(|a| field_square(&a, spec, &ctx, &partition))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MoslsFamily::new(spec.shape(), squares)?)
}

/// `max{p^m(p-1), p^n(p-1)}` block-permutational MOSLS of type `(q, r)`.
///
/// When `n > m` the larger family is the transpose of the type-`(r, q)`
/// family built with the roles of `m` and `n` exchanged.
pub fn field_mosls(
    spec: &FieldConstructionSpec,
    order_cap: usize,
) -> Result<MoslsFamily, ConstructError> {
    if spec.m == 0 || spec.n == 0 {
        return Err(ConstructError::DegenerateExponents {
            m: spec.m,
            n: spec.n,
        });
    }
    spec.check_cap(order_cap)?;
    if spec.n > spec.m {
        Ok(direct_family(&spec.swapped())?.transpose())
    } else {
        direct_family(spec)
    }
}

/// `p^k - 1` MOLS of order `p^k`, all `L_a` with `a != 0`, shape `(1, p^k)`.
pub fn plain_mols(p: u32, k: u32, order_cap: usize) -> Result<MoslsFamily, ConstructError> {
    let spec = FieldConstructionSpec::new(p, 0, k)?;
    spec.check_cap(order_cap)?;
    let ctx = gf::make_field(p, k as usize)?;
    let partition = coset_partition(&spec, &ctx)?;
    let squares = ctx
        .enumerate_elements()
        .into_iter()
        .filter(|a| !a.is_zero())
        .map(|a| field_square(&a, &spec, &ctx, &partition))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MoslsFamily::new(spec.shape(), squares)?)
}

/// `count` copies of the order-1 square; the identity for [`product`].
pub fn trivial_family(count: usize) -> MoslsFamily {
    let shape = SudokuShape::new(1, 1).unwrap();
    let square = LatinSquare::new(shape, vec![1]).unwrap();
    MoslsFamily::new(shape, vec![square; count]).unwrap()
}

/// Pair-composition product of two Sudoku families.
///
/// Row `(x1, x2)` is placed by block-row pair `(i1, i2)` (lexicographic),
/// then by within-block offsets `(a1, a2)` (lexicographic); columns likewise.
/// The symbol of `(s1, s2)` is `(s1 - 1) * n2 + s2`.
pub fn product(f1: &MoslsFamily, f2: &MoslsFamily) -> Result<MoslsFamily, ConstructError> {
    if f1.is_empty() || f2.is_empty() {
        return Err(DesignError::EmptyFamily.into());
    }
    let (s1, s2) = (f1.shape(), f2.shape());
    let (q1, r1, q2, r2) = (s1.q(), s1.r(), s2.q(), s2.r());
    let (n1, n2) = (s1.order(), s2.order());
    let shape = SudokuShape::new(q1 * q2, r1 * r2)?;
    let n = n1 * n2;

    // Product index of each (x1, x2) row pair, and of each (y1, y2) column pair.
    let row_pos = |x1: usize, x2: usize| {
        let (i1, a1) = (x1 / q1, x1 % q1);
        let (i2, a2) = (x2 / q2, x2 % q2);
        (i1 * r2 + i2) * (q1 * q2) + a1 * q2 + a2
    };
    let col_pos = |y1: usize, y2: usize| {
        let (j1, b1) = (y1 / r1, y1 % r1);
        let (j2, b2) = (y2 / r2, y2 % r2);
        (j1 * q2 + j2) * (r1 * r2) + b1 * r2 + b2
    };

    let count = f1.len().min(f2.len());
    let mut squares = Vec::with_capacity(count);
    for (a, b) in f1.squares().iter().zip(f2.squares()).take(count) {
        let mut entries = vec![0u32; n * n];
        for x1 in 0..n1 {
            for x2 in 0..n2 {
                let row = row_pos(x1, x2);
                for y1 in 0..n1 {
                    let sa = a.get(x1, y1);
                    for y2 in 0..n2 {
                        let sb = b.get(x2, y2);
                        entries[row * n + col_pos(y1, y2)] = (sa - 1) * n2 as u32 + sb;
                    }
                }
            }
        }
        squares.push(LatinSquare::new(shape, entries)?);
    }
    Ok(MoslsFamily::new(shape, squares)?)
}

/// Number of MOSLS this crate constructs for one prime: the field family when
/// `m, n > 0`, otherwise `p^(m+n) - 1` plain MOLS.
pub fn mosls_count(p: u32, m: u32, n: u32) -> Result<u64, ConstructError> {
    let spec = FieldConstructionSpec::new(p, m, n)?;
    let p = spec.p as u64;
    Ok(if m > 0 && n > 0 {
        (p.pow(m) * (p - 1)).max(p.pow(n) * (p - 1))
    } else {
        p.pow(m + n) - 1
    })
}

fn check_distinct(factors: &[FieldConstructionSpec]) -> Result<(), ConstructError> {
    if factors.is_empty() {
        return Err(ConstructError::EmptyFactorization);
    }
    for (i, a) in factors.iter().enumerate() {
        if factors[..i].iter().any(|b| b.p == a.p) {
            return Err(ConstructError::RepeatedPrime(a.p));
        }
    }
    Ok(())
}

pub fn composite_count(factors: &[FieldConstructionSpec]) -> Result<u64, ConstructError> {
    check_distinct(factors)?;
    factors
        .iter()
        .map(|s| mosls_count(s.p, s.m, s.n))
        .try_fold(u64::MAX, |acc, c| c.map(|c| acc.min(c)))
}

/// The per-prime family used by [`composite_family`].
pub fn prime_family(
    spec: &FieldConstructionSpec,
    order_cap: usize,
) -> Result<MoslsFamily, ConstructError> {
    if spec.m > 0 && spec.n > 0 {
        return field_mosls(spec, order_cap);
    }
    let plain = plain_mols(spec.p, spec.m + spec.n, order_cap)?;
    if spec.m == 0 {
        return Ok(plain);
    }
    // Type (p^m, 1): blocks are whole columns, so any Latin square qualifies.
    let squares = plain
        .squares()
        .iter()
        .map(|s| s.with_shape(spec.shape()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MoslsFamily::new(spec.shape(), squares)?)
}

/// Iterated product of the per-prime families; type
/// `(prod p_i^m_i, prod p_i^n_i)` with [`composite_count`] squares.
pub fn composite_family(
    factors: &[FieldConstructionSpec],
    order_cap: usize,
) -> Result<MoslsFamily, ConstructError> {
    check_distinct(factors)?;
    let order: u64 = factors.iter().map(|s| s.order() as u64).product();
    if order > order_cap as u64 {
        return Err(ConstructError::OrderTooLarge {
            order: order as usize,
            cap: order_cap,
        });
    }
    let mut acc: Option<MoslsFamily> = None;
    for spec in factors {
        let fam = prime_family(spec, order_cap)?;
        acc = Some(match acc {
            None => fam,
            Some(prev) => product(&prev, &fam)?,
        });
    }
    Ok(acc.expect("factorization is non-empty"))
}
