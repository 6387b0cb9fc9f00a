use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Integer polynomial, coefficients in ascending powers. The zero polynomial
/// has no coefficients; otherwise the last coefficient is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `t - root`.
    pub fn linear(root: i64) -> Self {
        Self::from_i64(&[-root, 1])
    }

    /// `t^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Quotient and remainder by a monic divisor, exact over the integers.
    ///
    /// # Panics
    /// Panics if `divisor` is not monic.
    pub fn div_rem_monic(&self, divisor: &Self) -> (Self, Self) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let lead = std::mem::take(&mut rem[k + dd]);
            if lead.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs[..dd].iter().enumerate() {
                rem[k + i] -= &lead * d;
            }
            quot[k] = lead;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// `Some(quotient)` when `divisor` (monic) divides `self` exactly.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem_monic(divisor);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.exact_div(self).is_some()
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        let x = BigInt::from(x);
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c)
    }

    /// Residual `|p(x)| / sum |c_i| max(1, |x|)^i`: the 1-norm of `p` for
    /// `|x| <= 1`, and the same with powers of `x` folded in beyond that
    /// (evaluated after scaling by `|x|^-deg` to stay finite).
    pub fn relative_residual(&self, x: f64) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let coeffs: Vec<f64> = self.coeffs.iter().map(big_to_f64).collect();
        let (value, scale) = if x.abs() <= 1.0 {
            let v = coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c);
            let s = coeffs.iter().map(|c| c.abs()).sum();
            (v, s)
        } else {
            // p(x) / x^deg = sum c_i (1/x)^(deg - i)
            let y = 1.0 / x;
            let v = coeffs.iter().fold(0.0, |acc, c| acc * y + c);
            let s = coeffs.iter().fold(0.0, |acc, c| acc * y.abs() + c.abs());
            (v, s)
        };
        if scale == 0.0 {
            0.0
        } else {
            value.abs() / scale
        }
    }

    /// Coefficients as decimal strings, ascending.
    pub fn to_decimal_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(BigInt::to_string).collect()
    }

    pub fn from_decimal_strings(strings: &[String]) -> Option<Self> {
        let coeffs: Option<Vec<BigInt>> = strings.iter().map(|s| s.parse().ok()).collect();
        coeffs.map(Self::new)
    }

    /// Index of the lowest coefficient where the two differ.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = BigInt::zero();
        (0..len).find(|&i| self.coeffs.get(i).unwrap_or(&zero) != other.coeffs.get(i).unwrap_or(&zero))
    }
}

fn big_to_f64(c: &BigInt) -> f64 {
    c.to_f64().unwrap_or(if c.is_negative() { f64::MIN } else { f64::MAX })
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}t")?,
                (_, true) => write!(f, "t^{i}")?,
                (_, false) => write!(f, "{mag}t^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = IntPolynomial::from_i64(&[-1, 1]);
        let b = IntPolynomial::from_i64(&[1, 1]);
        let prod = a.mul(&b);
        assert_eq!(prod, IntPolynomial::from_i64(&[-1, 0, 1]));
        assert_eq!(prod.to_string(), "t^2 - 1");
        assert_eq!(prod.exact_div(&a), Some(b.clone()));
        assert_eq!(prod.exact_div(&IntPolynomial::from_i64(&[2, 1])), None);
        let (q, r) = prod.div_rem_monic(&IntPolynomial::from_i64(&[2, 1]));
        assert_eq!(q, IntPolynomial::from_i64(&[-2, 1]));
        assert_eq!(r, IntPolynomial::from_i64(&[3]));
        assert_eq!(b.pow(3), IntPolynomial::from_i64(&[1, 3, 3, 1]));
        assert_eq!(IntPolynomial::from_i64(&[0, 0, 0]), IntPolynomial::zero());
        assert_eq!(IntPolynomial::monomial(2).degree(), Some(2));
    }

    #[test]
    fn residuals() {
        let p = IntPolynomial::from_i64(&[-2, 0, 1]);
        assert!(p.relative_residual(2f64.sqrt()) < 1e-15);
        assert!(p.relative_residual(1.0) > 0.1);
        assert_eq!(IntPolynomial::from_i64(&[0, -2, 0, 1]).relative_residual(1e-17), 2e-17 / 3.0);
        let big = IntPolynomial::linear(28).pow(40);
        assert!(big.relative_residual(28.0) < 1e-12);
        assert!(big.relative_residual(-3.0) > 0.01);
    }

    #[test]
    fn decimal_round_trip_and_differences() {
        let p = IntPolynomial::linear(-7).pow(30);
        let strings = p.to_decimal_strings();
        assert_eq!(IntPolynomial::from_decimal_strings(&strings), Some(p.clone()));
        let q = IntPolynomial::linear(-7).pow(29).mul(&IntPolynomial::linear(-6));
        assert_eq!(p.first_difference(&p), None);
        assert_eq!(p.first_difference(&q), Some(0));
    }
}
