//! Signature-aware linear algebra and second-order jets of parametric maps.
//!
//! Ambient coordinate spaces carry diagonal metrics: the flat (pseudo-)Euclidean
//! [`Signature`]s, or the point-dependent weights of a warped product. Everything here
//! works with [`Metric`], and the signature-only entry points forward to it.

mod jet;
mod real;

pub use jet::{
    directional, fd_dual, jacobian, jet2, jet2_in_box, Composed, FnMap, Formula, Jet2, Scheme,
    SmoothMap,
};
pub use real::{Dual, Real};

use nalgebra::{Cholesky, DMatrix, DVector};
use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::tolerances::EPS_NULL;

/// Sign pattern of a flat metric. Axes are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Signature {
    dim: usize,
    negative_axes: Vec<usize>,
}

impl Signature {
    pub fn euclidean(dim: usize) -> Self {
        Self { dim, negative_axes: Vec::new() }
    }

    /// `ℝ^dim_1` with the last axis negative.
    pub fn lorentzian(dim: usize) -> Self {
        Self { dim, negative_axes: vec![dim - 1] }
    }

    pub fn with_negative_axes(dim: usize, mut axes: Vec<usize>) -> Result<Self> {
        axes.sort_unstable();
        axes.dedup();
        if let Some(&bad) = axes.iter().find(|&&a| a >= dim) {
            return Err(GeomError::DimensionMismatch { expected: dim, got: bad + 1 });
        }
        Ok(Self { dim, negative_axes: axes })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn negative_axes(&self) -> &[usize] {
        &self.negative_axes
    }

    pub fn is_euclidean(&self) -> bool {
        self.negative_axes.is_empty()
    }

    pub fn sign(&self, i: usize) -> f64 {
        if self.negative_axes.contains(&i) {
            -1.0
        } else {
            1.0
        }
    }

    pub fn metric(&self) -> Metric {
        Metric::new((0..self.dim).map(|i| self.sign(i)).collect())
    }
}

/// Diagonal metric `Σ w_i u_i v_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Metric {
    weights: Vec<f64>,
}

impl Metric {
    pub fn new(weights: Vec<f64>) -> Self {
        Self { weights }
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn inner(&self, u: &[f64], v: &[f64]) -> f64 {
        debug_assert_eq!(u.len(), self.weights.len());
        debug_assert_eq!(v.len(), self.weights.len());
        self.weights
            .iter()
            .zip(u.iter().zip(v))
            .map(|(w, (a, b))| w * a * b)
            .sum()
    }

    pub fn norm_sq(&self, u: &[f64]) -> f64 {
        self.inner(u, u)
    }

    /// `sqrt(|<u,u>|)`; the length of a spacelike vector.
    pub fn norm(&self, u: &[f64]) -> f64 {
        self.norm_sq(u).abs().sqrt()
    }

    /// `g·v` (lowers an index).
    pub fn lower(&self, v: &DVector<f64>) -> DVector<f64> {
        DVector::from_iterator(v.len(), v.iter().zip(&self.weights).map(|(a, w)| a * w))
    }

    /// Gram matrix `Bᵀ g B` of the columns of `basis`.
    pub fn gram(&self, basis: &DMatrix<f64>) -> DMatrix<f64> {
        let gb = DMatrix::from_fn(basis.nrows(), basis.ncols(), |r, c| basis[(r, c)] * self.weights[r]);
        basis.transpose() * gb
    }
}

/// `Σ s_i u_i v_i` for the given signature.
pub fn signature_inner(form: &Signature, u: &[f64], v: &[f64]) -> Result<f64> {
    for len in [u.len(), v.len()] {
        if len != form.dim {
            return Err(GeomError::DimensionMismatch { expected: form.dim, got: len });
        }
    }
    Ok(u.iter()
        .zip(v)
        .enumerate()
        .map(|(i, (a, b))| form.sign(i) * a * b)
        .sum())
}

/// Ordered vectors together with the form they are measured in.
#[derive(Clone, Debug)]
pub struct Frame {
    pub vectors: Vec<DVector<f64>>,
    pub form: Signature,
}

impl Frame {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn gram(&self) -> DMatrix<f64> {
        let g = self.form.metric();
        let k = self.vectors.len();
        DMatrix::from_fn(k, k, |i, j| {
            g.inner(self.vectors[i].as_slice(), self.vectors[j].as_slice())
        })
    }

    /// Largest deviation of the Gram matrix from `expected`.
    pub fn gram_error(&self, expected: &DMatrix<f64>) -> f64 {
        (self.gram() - expected).abs().max()
    }
}

/// Gram–Schmidt in `metric`; returns the vectors and their self-products (±1).
pub fn orthonormalize_with(metric: &Metric, seed: &[DVector<f64>]) -> Result<(Vec<DVector<f64>>, Vec<f64>)> {
    let mut out: Vec<DVector<f64>> = Vec::with_capacity(seed.len());
    let mut signs = Vec::with_capacity(seed.len());
    for v in seed {
        if v.len() != metric.dim() {
            return Err(GeomError::DimensionMismatch { expected: metric.dim(), got: v.len() });
        }
        let mut w = v.clone();
        for (e, s) in out.iter().zip(&signs) {
            let c = metric.inner(w.as_slice(), e.as_slice()) * s;
            w -= e * c;
        }
        let q = metric.norm_sq(w.as_slice());
        if q.abs() < EPS_NULL {
            return Err(GeomError::NearNull(q.abs()));
        }
        signs.push(q.signum());
        out.push(w / q.abs().sqrt());
    }
    Ok((out, signs))
}

/// Signature-aware Gram–Schmidt; near-null vectors are an error.
pub fn frame_orthonormalize(form: &Signature, seed: &[DVector<f64>]) -> Result<Frame> {
    let (vectors, _) = orthonormalize_with(&form.metric(), seed)?;
    Ok(Frame { vectors, form: form.clone() })
}

/// Solves `G x = rhs` for a positive definite Gram matrix.
pub fn solve_gram(gram: &DMatrix<f64>, rhs: &DVector<f64>) -> Result<DVector<f64>> {
    let chol = Cholesky::new(gram.clone()).ok_or(GeomError::SingularGram)?;
    let diag_min = (0..gram.nrows()).map(|i| chol.l_dirty()[(i, i)]).fold(f64::INFINITY, f64::min);
    let scale = gram.diagonal().max().max(1e-300).sqrt();
    if !(diag_min > 1e-10 * scale) {
        return Err(GeomError::SingularGram);
    }
    Ok(chol.solve(rhs))
}

/// Inverse of a positive definite Gram matrix.
pub fn invert_gram(gram: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n = gram.nrows();
    let mut inv = DMatrix::zeros(n, n);
    for j in 0..n {
        let e = DVector::from_fn(n, |i, _| if i == j { 1.0 } else { 0.0 });
        inv.set_column(j, &solve_gram(gram, &e)?);
    }
    Ok(inv)
}

/// Splits `w` along the column span of `basis` in `metric`.
pub fn split_with(
    metric: &Metric,
    basis: &DMatrix<f64>,
    w: &DVector<f64>,
) -> Result<(DVector<f64>, DVector<f64>)> {
    let gram = metric.gram(basis);
    let rhs = basis.transpose() * metric.lower(w);
    let coeffs = solve_gram(&gram, &rhs)?;
    let normal = w - basis * &coeffs;
    Ok((coeffs, normal))
}

/// `w = Σ c_i b_i + n` with `n` orthogonal to every `b_i`.
pub fn tangent_normal_split(
    form: &Signature,
    tangent_basis: &[DVector<f64>],
    w: &DVector<f64>,
) -> Result<(DVector<f64>, DVector<f64>)> {
    if w.len() != form.dim() {
        return Err(GeomError::DimensionMismatch { expected: form.dim(), got: w.len() });
    }
    if tangent_basis.is_empty() {
        return Ok((DVector::zeros(0), w.clone()));
    }
    let basis = DMatrix::from_columns(tangent_basis);
    split_with(&form.metric(), &basis, w)
}

/// The fixed pseudo-orthonormal basis `e_0, e_1, …, e_n` of `ℝ^{n+1}_1` (last axis negative):
/// `e_0 = (0,…,½,½)`, `e_n = (0,…,−½,½)`, the rest standard.
pub fn pseudo_orthonormal_basis(n: usize) -> Frame {
    let dim = n + 1;
    let mut vectors = Vec::with_capacity(dim);
    let mut e0 = DVector::zeros(dim);
    e0[n - 1] = 0.5;
    e0[n] = 0.5;
    vectors.push(e0);
    for i in 0..n - 1 {
        let mut e = DVector::zeros(dim);
        e[i] = 1.0;
        vectors.push(e);
    }
    let mut en = DVector::zeros(dim);
    en[n - 1] = -0.5;
    en[n] = 0.5;
    vectors.push(en);
    Frame { vectors, form: Signature::lorentzian(dim) }
}

/// Coordinates `(x_0, x_1, …, x_n)` of `p ∈ ℝ^{n+1}_1` in the pseudo-orthonormal basis.
///
/// `x_0 = −2<p, e_n>` and `x_n = −2<p, e_0>`.
pub fn pseudo_coordinates<D: Real>(p: &[D]) -> Vec<D> {
    let n = p.len() - 1;
    let mut x = Vec::with_capacity(n + 1);
    x.push(p[n - 1] + p[n]);
    x.extend_from_slice(&p[..n - 1]);
    x.push(p[n] - p[n - 1]);
    x
}

/// Inverse of [`pseudo_coordinates`].
pub fn from_pseudo_coordinates<D: Real>(x: &[D]) -> Vec<D> {
    let n = x.len() - 1;
    let mut p = Vec::with_capacity(n + 1);
    p.extend_from_slice(&x[1..n]);
    p.push((x[0] - x[n]) * 0.5);
    p.push((x[0] + x[n]) * 0.5);
    p
}

/// Projects `w` onto the orthogonal complement of the column span of `basis`.
pub fn project_out(metric: &Metric, basis: &DMatrix<f64>, w: &DVector<f64>) -> Result<DVector<f64>> {
    if basis.ncols() == 0 {
        return Ok(w.clone());
    }
    // The basis may be timelike (e.g. a hyperboloid position vector), so no Cholesky here.
    let gram = metric.gram(basis);
    let rhs = basis.transpose() * metric.lower(w);
    let coeffs = gram.lu().solve(&rhs).ok_or(GeomError::SingularGram)?;
    Ok(w - basis * coeffs)
}

/// Orthonormal basis of the part of `span(candidates)` orthogonal to `basis`,
/// picking the longest remaining candidate at each step. Stops after `want` vectors.
pub fn complement_basis(
    metric: &Metric,
    basis: &DMatrix<f64>,
    candidates: &[DVector<f64>],
    want: usize,
) -> Result<Vec<DVector<f64>>> {
    let mut rest: Vec<DVector<f64>> = candidates
        .iter()
        .map(|c| project_out(metric, basis, c))
        .collect::<Result<_>>()?;
    let mut out: Vec<DVector<f64>> = Vec::with_capacity(want);
    while out.len() < want {
        let (idx, q) = rest
            .iter()
            .enumerate()
            .map(|(i, v)| (i, metric.norm_sq(v.as_slice())))
            .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
            .ok_or(GeomError::NearNull(0.0))?;
        if q.abs() < EPS_NULL {
            return Err(GeomError::NearNull(q.abs()));
        }
        let e = rest.swap_remove(idx) / q.abs().sqrt();
        let s = q.signum();
        for v in rest.iter_mut() {
            let c = metric.inner(v.as_slice(), e.as_slice()) * s;
            *v -= &e * c;
        }
        out.push(e);
    }
    Ok(out)
}
