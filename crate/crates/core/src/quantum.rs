//! Density matrices of grid states, partial transposes and PPT verdicts.

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeKind, GridGraph, Hypergraph};
use crate::linalg::{
    degree_difference, hypergraph_laplacian, jacobi_eigen, laplacian, min_eigenvalue_symmetric, signed_laplacian,
    signless_laplacian, ExactMatrix, DEFAULT_MAX_SWEEPS,
};
use crate::Rational;

/// Default PPT tolerance on the smallest eigenvalue of a trace-one `ρ^Γ`.
pub const DEFAULT_PPT_TOL: f64 = 1e-9;
/// Relative off-diagonal threshold for the Jacobi sweeps behind PPT checks.
pub const EIGEN_TOL: f64 = 1e-14;
/// Residual below which a product vector counts as lying in the range.
pub const RANGE_RESIDUAL_TOL: f64 = 1e-8;

/// Trace-one symmetric matrix on `C^dim_a ⊗ C^dim_b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityMatrix {
    matrix: ExactMatrix,
    dim_a: usize,
    dim_b: usize,
}

impl DensityMatrix {
    /// Normalizes a nonzero symmetric matrix by its trace.
    pub fn from_unnormalized(m: ExactMatrix, dim_a: usize, dim_b: usize) -> Result<Self> {
        let n = dim_a * dim_b;
        if m.rows() != n || m.cols() != n {
            return Err(Error::Shape(format!(
                "{}x{} matrix on a {dim_a}x{dim_b} system",
                m.rows(),
                m.cols()
            )));
        }
        if !m.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let trace = m.trace();
        if trace.is_zero() {
            return Err(Error::EmptyState);
        }
        let matrix = m.scale(&(Rational::one() / trace));
        Ok(Self { matrix, dim_a, dim_b })
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

/// `ℒ(G) / tr ℒ(G)`.
pub fn density_of_graph(g: &GridGraph) -> Result<DensityMatrix> {
    DensityMatrix::from_unnormalized(laplacian(g), g.rows(), g.cols())
}

/// `L(H) / tr L(H)`, the uniform mixture of hyperedge states.
pub fn density_of_hypergraph(h: &Hypergraph) -> Result<DensityMatrix> {
    DensityMatrix::from_unnormalized(hypergraph_laplacian(h), h.rows(), h.cols())
}

/// `(Σ_e w_e |e><e|) / Σ_e w_e`, built from the edge states themselves.
///
/// Independent of the Laplacian route; the two must agree entrywise.
pub fn edge_state_mixture(g: &GridGraph) -> Result<ExactMatrix> {
    let n = g.vertex_count();
    let mut m = ExactMatrix::zeros(n, n);
    let mut total = Rational::zero();
    let half = Rational::new(1.into(), 2.into());
    for e in g.edges() {
        let w = e.weight.value();
        total += w;
        let (x, y) = (g.index(e.a), g.index(e.b));
        let amp = match e.kind {
            EdgeKind::L => -&half,
            EdgeKind::Q => half.clone(),
        };
        *m.entry_mut(x, x) += w * &half;
        *m.entry_mut(y, y) += w * &half;
        *m.entry_mut(x, y) += w * &amp;
        *m.entry_mut(y, x) += w * &amp;
    }
    if total.is_zero() {
        return Err(Error::EmptyState);
    }
    Ok(m.scale(&(Rational::one() / total)))
}

pub fn matrix_partial_transpose(rho: &DensityMatrix) -> ExactMatrix {
    rho.matrix
        .partial_transpose(rho.dim_a, rho.dim_b)
        .expect("density dimensions are consistent")
}

/// Checks `ℒ(G)^Γ = ℒ(G^Γ) + Δ` with `Δ = D(G) - D(G^Γ)` traceless and
/// diagonal, exactly.
pub fn laplacian_transpose_identity_check(g: &GridGraph) -> bool {
    let lhs = laplacian(g)
        .partial_transpose(g.rows(), g.cols())
        .expect("laplacian has grid dimensions");
    let delta = degree_difference(g);
    let rhs = &laplacian(&g.partial_transpose()) + &delta;
    lhs == rhs && delta.is_diagonal() && delta.trace().is_zero()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PptVerdict {
    pub min_eig: f64,
    pub error_bound: f64,
    pub tol: f64,
    pub is_ppt: bool,
}

impl PptVerdict {
    fn new(min_eig: f64, error_bound: f64, tol: f64) -> Self {
        Self {
            min_eig,
            error_bound,
            tol,
            is_ppt: min_eig >= -tol,
        }
    }
}

pub fn ppt_verdict(rho: &DensityMatrix, tol: f64) -> Result<PptVerdict> {
    let min = min_eigenvalue_symmetric(&matrix_partial_transpose(rho), EIGEN_TOL)?;
    Ok(PptVerdict::new(min.value, min.error_bound, tol))
}

/// PPT verdict for a graph state. The edgeless graph has no density matrix;
/// its Laplacian is the zero operator, which is reported as PPT with
/// eigenvalue zero.
pub fn graph_ppt_verdict(g: &GridGraph, tol: f64) -> Result<PptVerdict> {
    if g.is_edgeless() {
        return Ok(PptVerdict::new(0.0, 0.0, tol));
    }
    ppt_verdict(&density_of_graph(g)?, tol)
}

/// Real product vector `μ ⊗ ν` with unit factors.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProductVector {
    pub factor_a: Vec<f64>,
    pub factor_b: Vec<f64>,
    /// `‖P_K (μ ⊗ ν)‖`, distance from the range of ρ.
    pub residual: f64,
}

/// Orthonormal kernel basis of ρ as a projector, row-major `N x N`.
fn kernel_projector(rho: &DensityMatrix) -> Result<(Vec<f64>, usize)> {
    let basis = rho.matrix.kernel_basis()?;
    let n = rho.matrix.rows();
    let mut ortho: Vec<Vec<f64>> = Vec::new();
    for v in &basis {
        let mut x = v.to_f64();
        for _ in 0..2 {
            for q in &ortho {
                let d: f64 = x.iter().zip(q).map(|(a, b)| a * b).sum();
                x.iter_mut().zip(q).for_each(|(a, b)| *a -= d * b);
            }
        }
        let norm = x.iter().map(|a| a * a).sum::<f64>().sqrt();
        x.iter_mut().for_each(|a| *a /= norm);
        ortho.push(x);
    }
    let mut p = vec![0.0; n * n];
    for q in &ortho {
        for i in 0..n {
            for j in 0..n {
                p[i * n + j] += q[i] * q[j];
            }
        }
    }
    Ok((p, ortho.len()))
}

/// Reduced quadratic forms of the kernel projector for a fixed factor.
struct RangeProblem {
    p: Vec<f64>,
    dim_a: usize,
    dim_b: usize,
}

impl RangeProblem {
    fn entry(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        let n = self.dim_a * self.dim_b;
        self.p[(i * self.dim_b + j) * n + k * self.dim_b + l]
    }

    /// Best `ν` for fixed `μ`: smallest eigenpair of `(μ ⊗ I)^T P (μ ⊗ I)`.
    fn best_b(&self, mu: &[f64]) -> (f64, Vec<f64>) {
        let nb = self.dim_b;
        let mut m = vec![0.0; nb * nb];
        for j in 0..nb {
            for l in 0..nb {
                let mut s = 0.0;
                for i in 0..self.dim_a {
                    for k in 0..self.dim_a {
                        s += mu[i] * mu[k] * self.entry(i, j, k, l);
                    }
                }
                m[j * nb + l] = s;
            }
        }
        smallest_pair(&m, nb)
    }

    /// Best `μ` for fixed `ν`.
    fn best_a(&self, nu: &[f64]) -> (f64, Vec<f64>) {
        let na = self.dim_a;
        let mut m = vec![0.0; na * na];
        for i in 0..na {
            for k in 0..na {
                let mut s = 0.0;
                for j in 0..self.dim_b {
                    for l in 0..self.dim_b {
                        s += nu[j] * nu[l] * self.entry(i, j, k, l);
                    }
                }
                m[i * na + k] = s;
            }
        }
        smallest_pair(&m, na)
    }

    /// Alternating minimization from `mu`; returns `(residual², μ, ν)`.
    fn refine(&self, mut mu: Vec<f64>) -> (f64, Vec<f64>, Vec<f64>) {
        let (mut f, mut nu) = self.best_b(&mu);
        for _ in 0..500 {
            let (_, next_mu) = self.best_a(&nu);
            let (next_f, next_nu) = self.best_b(&next_mu);
            let done = (f - next_f).abs() <= 1e-18;
            mu = next_mu;
            nu = next_nu;
            f = next_f;
            if done || f <= 1e-24 {
                break;
            }
        }
        (f.max(0.0), mu, nu)
    }
}

fn smallest_pair(m: &[f64], n: usize) -> (f64, Vec<f64>) {
    let eig = jacobi_eigen(m, n, 1e-15, DEFAULT_MAX_SWEEPS).expect("small symmetric matrix converges");
    (eig.values[0], eig.vector(0).to_vec())
}

/// Point on the unit sphere of `R^dim` from `dim - 1` angles.
fn sphere_point(angles: &[f64]) -> Vec<f64> {
    let mut x = Vec::with_capacity(angles.len() + 1);
    let mut s = 1.0;
    for &a in angles {
        x.push(s * a.cos());
        s *= a.sin();
    }
    x.push(s);
    x
}

fn sign_normalize(x: &mut [f64]) {
    let norm = x.iter().map(|a| a * a).sum::<f64>().sqrt();
    let lead = x.iter().copied().find(|a| a.abs() > 1e-9).unwrap_or(1.0);
    let scale = if lead < 0.0 { -1.0 / norm } else { 1.0 / norm };
    x.iter_mut().for_each(|a| *a *= scale);
}

fn close(x: &[f64], y: &[f64]) -> bool {
    x.iter().zip(y).all(|(a, b)| (a - b).abs() < 1e-6)
}

/// Searches real product vectors `μ ⊗ ν` in the range of `ρ`.
///
/// The smaller factor is sampled on a grid of `resolution` angles per
/// hyperspherical coordinate (one hemisphere, since `±μ` give the same ray);
/// for each sample the other factor is chosen optimally (smallest eigenvector
/// of the reduced kernel projector). The best grid points are refined by
/// alternating minimization and kept when the residual `‖P_K μ⊗ν‖` is below
/// [`RANGE_RESIDUAL_TOL`]. An empty result means none was found at this
/// resolution; it does not prove that none exists, and complex product
/// vectors are not searched.
pub fn product_vector_range_search(rho: &DensityMatrix, resolution: usize) -> Result<Vec<ProductVector>> {
    if resolution < 8 {
        return Err(Error::Precondition(format!("range search needs resolution >= 8, got {resolution}")));
    }
    let (p, kernel_dim) = kernel_projector(rho)?;
    let (da, db) = (rho.dim_a, rho.dim_b);
    if kernel_dim == 0 {
        // full rank: every product vector is in the range
        let mut out = Vec::new();
        for i in 0..da {
            for j in 0..db {
                let mut a = vec![0.0; da];
                let mut b = vec![0.0; db];
                a[i] = 1.0;
                b[j] = 1.0;
                out.push(ProductVector {
                    factor_a: a,
                    factor_b: b,
                    residual: 0.0,
                });
            }
        }
        return Ok(out);
    }

    // sample the smaller factor; swap tensor order when that is B
    let swapped = db < da;
    let problem = if swapped {
        let n = da * db;
        let mut q = vec![0.0; n * n];
        for i in 0..da {
            for j in 0..db {
                for k in 0..da {
                    for l in 0..db {
                        q[(j * da + i) * n + l * da + k] = p[(i * db + j) * n + k * db + l];
                    }
                }
            }
        }
        RangeProblem { p: q, dim_a: db, dim_b: da }
    } else {
        RangeProblem { p, dim_a: da, dim_b: db }
    };

    let angles = problem.dim_a - 1;
    let total = resolution.checked_pow(angles as u32).ok_or_else(|| {
        Error::Precondition(format!("range grid {resolution}^{angles} is too large"))
    })?;
    let step = std::f64::consts::PI / resolution as f64;
    let grid: Vec<(f64, usize)> = (0..total)
        .into_par_iter()
        .map(|idx| {
            let mut rest = idx;
            let coords: Vec<f64> = (0..angles)
                .map(|_| {
                    let k = rest % resolution;
                    rest /= resolution;
                    k as f64 * step
                })
                .collect();
            let mu = sphere_point(&coords);
            (problem.best_b(&mu).0, idx)
        })
        .collect();

    let mut seeds = grid;
    seeds.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
    seeds.truncate(64);

    let refined: Vec<(f64, Vec<f64>, Vec<f64>)> = seeds
        .par_iter()
        .map(|&(_, idx)| {
            let mut rest = idx;
            let coords: Vec<f64> = (0..angles)
                .map(|_| {
                    let k = rest % resolution;
                    rest /= resolution;
                    k as f64 * step
                })
                .collect();
            problem.refine(sphere_point(&coords))
        })
        .collect();

    let mut found: Vec<ProductVector> = Vec::new();
    for (f, mut mu, mut nu) in refined {
        let residual = f.sqrt();
        if residual >= RANGE_RESIDUAL_TOL {
            continue;
        }
        sign_normalize(&mut mu);
        sign_normalize(&mut nu);
        let (factor_a, factor_b) = if swapped { (nu, mu) } else { (mu, nu) };
        if found.iter().any(|w| close(&w.factor_a, &factor_a) && close(&w.factor_b, &factor_b)) {
            continue;
        }
        found.push(ProductVector {
            factor_a,
            factor_b,
            residual,
        });
    }
    found.sort_by(|x, y| {
        x.factor_a
            .iter()
            .chain(&x.factor_b)
            .zip(y.factor_a.iter().chain(&y.factor_b))
            .map(|(a, b)| b.total_cmp(a))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(found)
}

/// Ranks of the signed and signless Laplacians of a non-bipartite edge set;
/// `None` for bipartite graphs, where the two states may be equivalent.
pub fn unitary_inequivalence_witness(g: &GridGraph) -> Option<(usize, usize)> {
    if g.is_bipartite() {
        return None;
    }
    Some((signed_laplacian(g).rank(), signless_laplacian(g).rank()))
}
