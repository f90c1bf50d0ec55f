//! Shared oracles for the integration suites.

/// Dense symmetric eigenvalues by cyclic Jacobi rotations; independent of
/// the Sturm-bisection path it is used to check.
#[allow(clippy::needless_range_loop)] // rotations read clearest with indices
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _ in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                off += a[i][j] * a[i][j];
            }
        }
        if off.sqrt() < 1e-13 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    -1.0 / (-theta + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut evs: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    evs.sort_by(|x, y| x.partial_cmp(y).unwrap());
    evs
}

/// Tridiagonal matrix as a dense array, for feeding the Jacobi oracle.
pub fn dense_tridiagonal(diag: &[f64], offdiag: &[f64]) -> Vec<Vec<f64>> {
    let n = diag.len();
    let mut a = vec![vec![0.0; n]; n];
    for i in 0..n {
        a[i][i] = diag[i];
        if i + 1 < n {
            a[i][i + 1] = offdiag[i];
            a[i + 1][i] = offdiag[i];
        }
    }
    a
}
