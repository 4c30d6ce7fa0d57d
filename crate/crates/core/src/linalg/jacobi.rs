//! Cyclic Jacobi eigensolver for small dense real symmetric matrices.

use super::ExactMatrix;
use crate::error::{Error, Result};

pub const DEFAULT_MAX_SWEEPS: usize = 100;

/// Eigen-decomposition `A = V diag(values) V^T`, values ascending.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    /// Column-major: eigenvector `k` is `vectors[k*n .. (k+1)*n]`.
    pub vectors: Vec<f64>,
    /// Off-diagonal Frobenius norm left at exit; bounds every eigenvalue error.
    pub off_norm: f64,
    pub sweeps: usize,
}

impl SymmetricEigen {
    pub fn vector(&self, k: usize) -> &[f64] {
        let n = self.values.len();
        &self.vectors[k * n..(k + 1) * n]
    }
}

fn off_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j] * a[i * n + j];
            }
        }
    }
    s.sqrt()
}

/// Runs cyclic sweeps until the off-diagonal norm drops below
/// `tol * ||A||_F`. `a` is row-major `n x n` and is assumed symmetric.
pub fn jacobi_eigen(a: &[f64], n: usize, tol: f64, max_sweeps: usize) -> Result<SymmetricEigen> {
    assert_eq!(a.len(), n * n, "jacobi_eigen: expected an {n}x{n} matrix");
    let mut m = a.to_vec();
    let mut vecs = vec![0.0; n * n];
    for i in 0..n {
        vecs[i * n + i] = 1.0;
    }
    let frob = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let target = tol * frob;
    let mut sweeps = 0;
    let mut off = off_norm(&m, n);
    while off > target {
        if sweeps == max_sweeps {
            return Err(Error::NoConvergence { sweeps, off_norm: off });
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[q * n + q] - m[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (m[k * n + p], m[k * n + q]);
                    m[k * n + p] = c * akp - s * akq;
                    m[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (m[p * n + k], m[q * n + k]);
                    m[p * n + k] = c * apk - s * aqk;
                    m[q * n + k] = s * apk + c * aqk;
                }
                m[p * n + q] = 0.0;
                m[q * n + p] = 0.0;
                // eigenvectors are stored column-major, so column k of V is contiguous
                for k in 0..n {
                    let (vkp, vkq) = (vecs[p * n + k], vecs[q * n + k]);
                    vecs[p * n + k] = c * vkp - s * vkq;
                    vecs[q * n + k] = s * vkp + c * vkq;
                }
            }
        }
        sweeps += 1;
        off = off_norm(&m, n);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| m[x * n + x].total_cmp(&m[y * n + y]));
    let values = order.iter().map(|&k| m[k * n + k]).collect();
    let mut vectors = Vec::with_capacity(n * n);
    for &k in &order {
        vectors.extend_from_slice(&vecs[k * n..(k + 1) * n]);
    }
    Ok(SymmetricEigen {
        values,
        vectors,
        off_norm: off,
        sweeps,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinEigenvalue {
    pub value: f64,
    pub error_bound: f64,
    pub sweeps: usize,
}

/// Smallest eigenvalue of an exactly symmetric rational matrix.
pub fn min_eigenvalue_symmetric(m: &ExactMatrix, tol: f64) -> Result<MinEigenvalue> {
    if !m.is_square() {
        return Err(Error::Shape(format!("eigenvalues of a {}x{} matrix", m.rows(), m.cols())));
    }
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = m.rows();
    if n == 0 {
        return Err(Error::Shape("eigenvalues of an empty matrix".into()));
    }
    let eig = jacobi_eigen(&m.to_f64(), n, tol, DEFAULT_MAX_SWEEPS)?;
    Ok(MinEigenvalue {
        value: eig.values[0],
        error_bound: eig.off_norm,
        sweeps: eig.sweeps,
    })
}
