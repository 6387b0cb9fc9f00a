//! Exact characteristic polynomials by multimodular Hessenberg reduction.
//!
//! `det(tI - M)` is computed modulo enough word-sized primes to cover the
//! coefficient bound `(1 + rho)^n` (twice over, for sign), with `rho` the
//! largest absolute row sum of `M`, then lifted by Chinese remaindering.
//! Every eigenvalue has modulus at most `rho`, so the `i`-th coefficient is
//! bounded by `C(n, i) rho^i`, and these sum to `(1 + rho)^n`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::poly::IntPolynomial;
use crate::matrix::IntMatrix;

/// Primes just below `2^31`, so products of residues fit in a `u64`.
fn primes_below_2_31() -> impl Iterator<Item = u64> {
    (3..(1u64 << 31)).rev().step_by(2).filter(|&n| {
        let n32 = n as u32;
        crate::gf::is_prime(n32)
    })
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Characteristic polynomial of `a` (row-major, `n x n`, entries reduced
/// mod `p`), ascending coefficients, monic, length `n + 1`.
pub(crate) fn charpoly_mod(mut a: Vec<u64>, n: usize, p: u64) -> Vec<u64> {
    // Reduce to upper Hessenberg form by similarity transforms.
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| a[i * n + j] != 0) else {
            continue;
        };
        if piv != j + 1 {
            for c in 0..n {
                a.swap(piv * n + c, (j + 1) * n + c);
            }
            for r in 0..n {
                a.swap(r * n + piv, r * n + j + 1);
            }
        }
        let inv = inv_mod(a[(j + 1) * n + j], p);
        for k in j + 2..n {
            let u = a[k * n + j] * inv % p;
            if u == 0 {
                continue;
            }
            // row_k -= u * row_{j+1}
            for c in 0..n {
                let sub = u * a[(j + 1) * n + c] % p;
                a[k * n + c] = (a[k * n + c] + p - sub) % p;
            }
            // col_{j+1} += u * col_k
            for r in 0..n {
                let add = u * a[r * n + k] % p;
                a[r * n + j + 1] = (a[r * n + j + 1] + add) % p;
            }
        }
    }

    // polys[m] = charpoly of the leading m x m block.
    let mut polys: Vec<Vec<u64>> = Vec::with_capacity(n + 1);
    polys.push(vec![1]);
    for m in 1..=n {
        let h = |i: usize, j: usize| a[i * n + j];
        let prev = &polys[m - 1];
        let mut next = vec![0u64; m + 1];
        let diag = h(m - 1, m - 1);
        for (i, &c) in prev.iter().enumerate() {
            next[i + 1] = (next[i + 1] + c) % p;
            next[i] = (next[i] + p - diag * c % p) % p;
        }
        let mut sub_prod = 1u64;
        for i in 1..m {
            sub_prod = sub_prod * h(m - i, m - i - 1) % p;
            if sub_prod == 0 {
                break;
            }
            let coef = h(m - i - 1, m - 1) * sub_prod % p;
            if coef == 0 {
                continue;
            }
            for (k, &c) in polys[m - i - 1].iter().enumerate() {
                next[k] = (next[k] + p - coef * c % p) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap_or_else(|| vec![1])
}

pub(crate) fn charpoly_multimodular(m: &IntMatrix) -> IntPolynomial {
    let n = m.dim();
    if n == 0 {
        return IntPolynomial::one();
    }
    let rho = (0..n).map(|i| m.row(i).iter().map(|v| v.unsigned_abs()).sum::<u64>()).max().unwrap_or(0);
    let bound: BigInt = BigInt::from(rho + 1).pow(n as u32) * 2u32;

    let mut modulus = BigInt::one();
    let mut values = vec![BigInt::zero(); n + 1];
    for p in primes_below_2_31() {
        if modulus > bound {
            break;
        }
        let pi = p as i64;
        let residues: Vec<u64> = (0..n * n).map(|k| m.get(k / n, k % n).rem_euclid(pi) as u64).collect();
        let cp = charpoly_mod(residues, n, p);
        let big_p = BigInt::from(p);
        let m_inv = {
            let m_mod = modulus.mod_floor(&big_p).to_u64().unwrap_or(0);
            BigInt::from(inv_mod(m_mod, p))
        };
        for (x, &c) in values.iter_mut().zip(&cp) {
            // Garner step: x + modulus * ((c - x) * modulus^{-1} mod p)
            let diff = (BigInt::from(c) - &*x).mod_floor(&big_p);
            let k = (diff * &m_inv).mod_floor(&big_p);
            *x += &modulus * k;
        }
        modulus *= big_p;
    }
    let half = &modulus >> 1u32;
    for x in values.iter_mut() {
        if *x > half {
            *x -= &modulus;
        }
    }
    IntPolynomial::new(values)
}
