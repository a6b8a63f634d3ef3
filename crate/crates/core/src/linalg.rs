//! Thin wrappers over the dense symmetric linear algebra used throughout:
//! full-accuracy symmetric eigensolves, log|det| via LU, and small helpers.

use nalgebra::{DMatrix, DVector};

/// Eigenvalues of a symmetric matrix, ascending.
pub fn sym_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let mut ev: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev
}

/// ln|det M| via LU with partial pivoting; -inf for an exactly singular matrix.
pub fn log_abs_det(m: &DMatrix<f64>) -> f64 {
    let lu = m.clone().lu();
    let u = lu.u();
    let mut acc = 0.0;
    for i in 0..u.nrows().min(u.ncols()) {
        let d = u[(i, i)].abs();
        if d == 0.0 {
            return f64::NEG_INFINITY;
        }
        acc += d.ln();
    }
    acc
}

/// Largest eigenvalue magnitude of a symmetric matrix.
pub fn spectral_norm_sym(m: &DMatrix<f64>) -> f64 {
    sym_eigenvalues(m)
        .iter()
        .fold(0.0f64, |a, &l| a.max(l.abs()))
}

/// Lower Cholesky factor of a 2x2 SPD matrix [[s11, s12], [s12, s22]].
pub fn chol2(s11: f64, s12: f64, s22: f64) -> Option<[f64; 3]> {
    if s11 <= 0.0 {
        return None;
    }
    let l11 = s11.sqrt();
    let l21 = s12 / l11;
    let rem = s22 - l21 * l21;
    if rem < 0.0 {
        return None;
    }
    Some([l11, l21, rem.sqrt()])
}

/// Orthonormal basis of the hyperplane orthogonal to the unit vector `u`,
/// as the first n-1 columns of the Householder reflector sending e_n to `u`.
pub fn tangent_basis(u: &DVector<f64>) -> DMatrix<f64> {
    let n = u.len();
    let mut v = u.clone();
    v[n - 1] -= 1.0; // u - e_n
    let vv = v.dot(&v);
    let mut b = DMatrix::zeros(n, n - 1);
    if vv < 1e-28 {
        // u == e_n: the basis is e_1..e_{n-1}.
        for j in 0..n - 1 {
            b[(j, j)] = 1.0;
        }
        return b;
    }
    for j in 0..n - 1 {
        let scale = 2.0 * v[j] / vv;
        for i in 0..n {
            let id = if i == j { 1.0 } else { 0.0 };
            b[(i, j)] = id - scale * v[i];
        }
    }
    b
}
