//! Cyclic Jacobi eigenvalue iteration for dense symmetric matrices.

const MAX_SWEEPS: usize = 100;

/// Eigenvalues of the symmetric matrix `a` (row-major, `n x n`), unsorted.
/// Sweeps until the off-diagonal Frobenius norm drops below `tol * ||a||_F`.
pub(crate) fn jacobi_eigenvalues(mut a: Vec<f64>, n: usize, tol: f64) -> Vec<f64> {
    let norm = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let target = tol * norm;
    let off = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i * n + j] * a[i * n + j];
                }
            }
        }
        s.sqrt()
    };
    for _ in 0..MAX_SWEEPS {
        if off(&a) <= target {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i * n + i]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        let mut ev = jacobi_eigenvalues(vec![2.0, 1.0, 1.0, 2.0], 2, 1e-14);
        ev.sort_by(|a, b| a.total_cmp(b));
        assert!((ev[0] - 1.0).abs() < 1e-12 && (ev[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn path_on_three_vertices() {
        let a = vec![0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0];
        let mut ev = jacobi_eigenvalues(a, 3, 1e-14);
        ev.sort_by(|a, b| a.total_cmp(b));
        let s = 2f64.sqrt();
        for (got, want) in ev.iter().zip([-s, 0.0, s]) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
    }
}
