//! Closed-form spectra: strongly regular graphs, the block quotient, and the
//! nine-line spectrum of a commuting MOSLS graph.

use std::fmt;

use num_integer::Roots;

use super::poly::IntPolynomial;
use super::SpectraError;

/// An exact eigenvalue: an integer, or `(a + b sqrt(d)) / 2` with `d > 1`
/// squarefree and `b != 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosedEigenvalue {
    Integer(i64),
    Surd { a: i64, b: i64, d: i64 },
}

impl ClosedEigenvalue {
    /// `(a + b sqrt(d)) / 2`, normalised. `None` when the value is rational
    /// but not an integer, or `d < 0`.
    pub fn half_surd(a: i64, b: i64, d: i64) -> Option<Self> {
        if d < 0 {
            return None;
        }
        let (mut b, mut d) = (b, d);
        if b == 0 || d == 0 {
            return (a % 2 == 0).then_some(Self::Integer(a / 2));
        }
        let mut k = 2i64;
        while k * k <= d {
            while d % (k * k) == 0 {
                d /= k * k;
                b *= k;
            }
            k += 1;
        }
        if d == 1 {
            let num = a + b;
            return (num % 2 == 0).then_some(Self::Integer(num / 2));
        }
        Some(Self::Surd { a, b, d })
    }

    pub fn value(&self) -> f64 {
        match *self {
            Self::Integer(v) => v as f64,
            Self::Surd { a, b, d } => (a as f64 + b as f64 * (d as f64).sqrt()) / 2.0,
        }
    }

    pub fn conjugate(&self) -> Self {
        match *self {
            Self::Integer(v) => Self::Integer(v),
            Self::Surd { a, b, d } => Self::Surd { a, b: -b, d },
        }
    }
}

impl fmt::Display for ClosedEigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Integer(v) => write!(f, "{v}"),
            Self::Surd { a, b, d } => {
                let sign = if b < 0 { '-' } else { '+' };
                if a % 2 == 0 && b % 2 == 0 {
                    let (a, b) = (a / 2, (b / 2).abs());
                    let coef = if b == 1 { String::new() } else { b.to_string() };
                    if a == 0 {
                        let lead = if sign == '-' { "-" } else { "" };
                        write!(f, "{lead}{coef}√{d}")
                    } else {
                        write!(f, "{a}{sign}{coef}√{d}")
                    }
                } else {
                    let b = b.abs();
                    let coef = if b == 1 { String::new() } else { b.to_string() };
                    write!(f, "({a}{sign}{coef}√{d})/2")
                }
            }
        }
    }
}

/// A multiset of exact eigenvalues, sorted by decreasing value with equal
/// eigenvalues merged and zero multiplicities dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedSpectrum {
    entries: Vec<(ClosedEigenvalue, u64)>,
}

impl ClosedSpectrum {
    pub fn new(entries: impl IntoIterator<Item = (ClosedEigenvalue, u64)>) -> Self {
        let mut merged: Vec<(ClosedEigenvalue, u64)> = Vec::new();
        for (ev, mult) in entries {
            if mult == 0 {
                continue;
            }
            match merged.iter_mut().find(|(e, _)| *e == ev) {
                Some(slot) => slot.1 += mult,
                None => merged.push((ev, mult)),
            }
        }
        merged.sort_by(|x, y| y.0.value().total_cmp(&x.0.value()));
        Self { entries: merged }
    }

    /// Integer eigenvalues only.
    pub fn from_integers(entries: &[(i64, u64)]) -> Self {
        Self::new(entries.iter().map(|&(v, m)| (ClosedEigenvalue::Integer(v), m)))
    }

    pub fn entries(&self) -> &[(ClosedEigenvalue, u64)] {
        &self.entries
    }

    pub fn dimension(&self) -> u64 {
        self.entries.iter().map(|e| e.1).sum()
    }

    pub fn multiplicity(&self, ev: ClosedEigenvalue) -> u64 {
        self.entries.iter().find(|e| e.0 == ev).map_or(0, |e| e.1)
    }
}

impl fmt::Display for ClosedSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|(ev, m)| format!("[{ev}]^{m}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// `prod (t - lambda)^m`, with each conjugate surd pair contributing
/// `(t^2 - a t + (a^2 - b^2 d) / 4)^m`.
pub fn closed_to_poly(spectrum: &ClosedSpectrum) -> Result<IntPolynomial, SpectraError> {
    let mut out = IntPolynomial::one();
    for &(ev, mult) in spectrum.entries() {
        match ev {
            ClosedEigenvalue::Integer(v) => out = out.mul(&IntPolynomial::linear(v).pow(mult)),
            ClosedEigenvalue::Surd { a, b, d } => {
                let conj_mult = spectrum.multiplicity(ev.conjugate());
                if conj_mult != mult {
                    return Err(SpectraError::UnmatchedSurd { eigenvalue: ev.to_string(), mult, conj_mult });
                }
                if b < 0 {
                    continue;
                }
                let constant = a * a - b * b * d;
                if constant % 4 != 0 {
                    return Err(SpectraError::UnmatchedSurd { eigenvalue: ev.to_string(), mult, conj_mult });
                }
                let quad = IntPolynomial::from_i64(&[constant / 4, -a, 1]);
                out = out.mul(&quad.pow(mult));
            }
        }
    }
    Ok(out)
}

/// Spectrum of a strongly regular graph with parameters `(n, k, lambda, mu)`.
pub fn srg_spectrum(n: i64, k: i64, lambda: i64, mu: i64) -> Result<ClosedSpectrum, SpectraError> {
    let diff = lambda - mu;
    let delta = diff * diff + 4 * (k - mu);
    let num = 2 * k + (n - 1) * diff;
    let infeasible = |s: f64, t: f64| SpectraError::InfeasibleSrg { n, k, lambda, mu, s, t };
    if delta <= 0 {
        return Err(infeasible(f64::NAN, f64::NAN));
    }
    let root = delta.sqrt();
    if root * root == delta {
        let twice_s = (n - 1) * root - num;
        let twice_t = (n - 1) * root + num;
        let (s, t) = (twice_s as f64 / (2 * root) as f64, twice_t as f64 / (2 * root) as f64);
        if twice_s < 0 || twice_t < 0 || twice_s % (2 * root) != 0 || twice_t % (2 * root) != 0 {
            return Err(infeasible(s, t));
        }
        let theta = ClosedEigenvalue::Integer((diff + root) / 2);
        let tau = ClosedEigenvalue::Integer((diff - root) / 2);
        let s = (twice_s / (2 * root)) as u64;
        let t = (twice_t / (2 * root)) as u64;
        return Ok(ClosedSpectrum::new([(ClosedEigenvalue::Integer(k), 1), (theta, s), (tau, t)]));
    }
    // Irrational eigenvalues force s = t = (n - 1) / 2.
    let half = (n - 1) as f64 / 2.0;
    if num != 0 || (n - 1) % 2 != 0 || n < 1 {
        let shift = num as f64 / (delta as f64).sqrt() / 2.0;
        return Err(infeasible(half - shift, half + shift));
    }
    let m = ((n - 1) / 2) as u64;
    let (Some(theta), Some(tau)) = (ClosedEigenvalue::half_surd(diff, 1, delta), ClosedEigenvalue::half_surd(diff, -1, delta)) else {
        return Err(infeasible(half, half));
    };
    Ok(ClosedSpectrum::new([(ClosedEigenvalue::Integer(k), 1), (theta, m), (tau, m)]))
}

/// Spectrum of the quotient of the MOSLS graph by its block partition.
pub fn quotient_spectrum(q: u64, r: u64, f: u64) -> ClosedSpectrum {
    let (qi, ri, fi) = (q as i64, r as i64, f as i64);
    ClosedSpectrum::from_integers(&[
        (3 * qi * ri - qi - ri - 1 + fi * (qi * ri - 1), 1),
        (2 * qi * ri - qi - ri - 1 - fi, (q + r).saturating_sub(2)),
        (qi * ri - qi - ri - 1 - fi, q.saturating_sub(1) * r.saturating_sub(1)),
    ])
}

/// The nine-line spectrum of `A_MOLS + B` for `f` commuting Sudoku squares
/// of type `(q, r)`.
pub fn ev1_spectrum(q: u64, r: u64, f: u64) -> Result<ClosedSpectrum, SpectraError> {
    if q == 0 || r == 0 || f == 0 {
        return Err(SpectraError::InvalidParameters(format!("need q, r, f >= 1, got ({q}, {r}, {f})")));
    }
    let (q, r, f) = (q as i64, r as i64, f as i64);
    let n = q * r;
    let c = (q - 1) * (r - 1);
    let lines = [
        (c + (n - 1) * (f + 2), 1),
        (c + n - 2 - f, q + r - 2),
        (c - 2 - f, c),
        (n - 1 - f, f * c),
        (n - q - 1 - f, (r - 1) * (q + f)),
        (n - r - 1 - f, (q - 1) * (r + f)),
        (-1 - f, c * (n - f)),
        (-q - 1 - f, (r - 1) * (n - q - f)),
        (-r - 1 - f, (q - 1) * (n - r - f)),
    ];
    if let Some((line, &(value, mult))) = lines.iter().enumerate().find(|(_, l)| l.1 < 0) {
        return Err(SpectraError::NegativeMultiplicity { line: line + 1, eigenvalue: value, mult });
    }
    Ok(ClosedSpectrum::from_integers(
        &lines.iter().map(|&(v, m)| (v, m as u64)).collect::<Vec<_>>(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &ClosedSpectrum) -> Vec<(i64, u64)> {
        s.entries()
            .iter()
            .map(|&(ev, m)| match ev {
                ClosedEigenvalue::Integer(v) => (v, m),
                other => panic!("unexpected surd {other}"),
            })
            .collect()
    }

    #[test]
    fn surd_normalisation_and_display() {
        let e = ClosedEigenvalue::half_surd(-2, 2, 5).unwrap();
        assert_eq!(e, ClosedEigenvalue::Surd { a: -2, b: 2, d: 5 });
        assert_eq!(e.to_string(), "-1+√5");
        assert_eq!(ClosedEigenvalue::half_surd(-2, 1, 20).unwrap(), e);
        assert_eq!(ClosedEigenvalue::half_surd(1, 1, 9), Some(ClosedEigenvalue::Integer(2)));
        assert_eq!(ClosedEigenvalue::half_surd(1, 0, 9), None);
        assert_eq!(ClosedEigenvalue::half_surd(-1, -1, 5).unwrap().to_string(), "(-1-√5)/2");
    }

    #[test]
    fn quotient_lines() {
        assert_eq!(ints(&quotient_spectrum(2, 2, 2)), vec![(13, 1), (1, 2), (-3, 1)]);
        assert_eq!(ints(&quotient_spectrum(3, 3, 1)), vec![(28, 1), (10, 4), (1, 4)]);
        // q = 1 drops the (q-1)(r-1) line.
        let s = quotient_spectrum(1, 4, 1);
        assert_eq!(s.dimension(), 4);
        assert_eq!(s.entries().len(), 2);
    }

    #[test]
    fn ev1_examples() {
        assert_eq!(ints(&ev1_spectrum(2, 2, 2).unwrap()), vec![(13, 1), (1, 4), (-1, 8), (-3, 3)]);
        assert_eq!(
            ints(&ev1_spectrum(2, 3, 1).unwrap()),
            vec![(17, 1), (5, 3), (4, 2), (2, 6), (1, 4), (-1, 2), (-2, 10), (-4, 6), (-5, 2)]
        );
        assert_eq!(
            ints(&ev1_spectrum(3, 3, 1).unwrap()),
            vec![(28, 1), (10, 4), (7, 4), (4, 16), (1, 4), (-2, 32), (-5, 20)]
        );
        for (q, r) in [(2, 2), (2, 3), (3, 3), (2, 4), (3, 4)] {
            for f in 1..=(q * r - q.max(r)) {
                assert_eq!(ev1_spectrum(q, r, f).unwrap().dimension(), q * q * r * r);
            }
        }
    }

    #[test]
    fn ev1_rejects_out_of_range() {
        assert!(matches!(ev1_spectrum(2, 2, 0), Err(SpectraError::InvalidParameters(_))));
        // f = qr makes the (-1-f) multiplicity c (n - f) vanish, f > qr makes it negative.
        assert!(matches!(ev1_spectrum(2, 2, 6), Err(SpectraError::NegativeMultiplicity { line: 7, .. })));
    }

    #[test]
    fn srg_examples() {
        assert_eq!(ints(&srg_spectrum(16, 9, 4, 6).unwrap()), vec![(9, 1), (1, 9), (-3, 6)]);
        assert_eq!(ints(&srg_spectrum(16, 12, 8, 12).unwrap()), vec![(12, 1), (0, 12), (-4, 3)]);
        // Petersen graph.
        assert_eq!(ints(&srg_spectrum(10, 3, 0, 1).unwrap()), vec![(3, 1), (1, 5), (-2, 4)]);
        // Pentagon: a conference graph with irrational eigenvalues.
        let c5 = srg_spectrum(5, 2, 0, 1).unwrap();
        assert_eq!(c5.dimension(), 5);
        assert_eq!(closed_to_poly(&c5).unwrap(), IntPolynomial::linear(2).mul(&IntPolynomial::from_i64(&[-1, 1, 1]).pow(2)));
        assert!(matches!(srg_spectrum(16, 9, 4, 5), Err(SpectraError::InfeasibleSrg { .. })));
    }

    #[test]
    fn polys_from_closed_forms() {
        let s = ClosedSpectrum::from_integers(&[(1, 1), (-1, 1)]);
        assert_eq!(closed_to_poly(&s).unwrap(), IntPolynomial::from_i64(&[-1, 0, 1]));
        let plus = ClosedEigenvalue::half_surd(-2, 2, 5).unwrap();
        let pair = ClosedSpectrum::new([(plus, 2), (plus.conjugate(), 2)]);
        let quad = IntPolynomial::from_i64(&[-4, 2, 1]);
        assert_eq!(closed_to_poly(&pair).unwrap(), quad.pow(2));
        let lonely = ClosedSpectrum::new([(plus, 2), (plus.conjugate(), 1)]);
        assert!(matches!(closed_to_poly(&lonely), Err(SpectraError::UnmatchedSurd { .. })));
    }
}
