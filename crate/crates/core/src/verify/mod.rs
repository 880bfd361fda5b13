//! Numerical checks of constant-ratio, principal-direction and related properties on grids
//! of parameter points.
//!
//! Every check returns a [`DiagnosticsReport`] with one residual per grid point. Grid points
//! are processed in parallel and collected in grid order, so reports do not depend on
//! scheduling.

mod local;
pub mod suites;

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::Serialize;

pub use local::{decompose, shape_operators, Decomposition, LocalGeometry};

use crate::error::{GeomError, Result};
use crate::fields::AmbientField;
use crate::gallery::{Claim, ClaimKind, ImmersionSpec};
use crate::kernel::{jacobian, split_with, Scheme};
use crate::spaces::{AmbientSpace, SpaceKind};
use crate::tolerances::{DEFAULT_GRID, DOMAIN_MARGIN, FD_STEP, PROPERTY_TOL, TAU_ZERO};
use local::check_field;

/// Uniform tensor grid over a parameter box, inset from the box edges.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Grid {
    pub axes: Vec<Vec<f64>>,
}

impl Grid {
    /// `per_axis` points on every axis.
    pub fn new(domain: &[(f64, f64)], per_axis: usize) -> Self {
        Self::with_shape(domain, &vec![per_axis; domain.len()])
    }

    /// Default resolution.
    pub fn default_for(domain: &[(f64, f64)]) -> Self {
        Self::new(domain, DEFAULT_GRID)
    }

    pub fn with_shape(domain: &[(f64, f64)], shape: &[usize]) -> Self {
        let axes = domain
            .iter()
            .zip(shape)
            .map(|(&(lo, hi), &k)| {
                let inset = DOMAIN_MARGIN * (hi - lo);
                let (a, b) = (lo + inset, hi - inset);
                match k {
                    0 => vec![],
                    1 => vec![0.5 * (a + b)],
                    _ => (0..k).map(|i| a + (b - a) * i as f64 / (k - 1) as f64).collect(),
                }
            })
            .collect();
        Self { axes }
    }

    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.len()).collect()
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.len()).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Row-major points: the first axis varies slowest.
    pub fn points(&self) -> Vec<Vec<f64>> {
        let mut out = vec![vec![]];
        for axis in &self.axes {
            out = out
                .into_iter()
                .flat_map(|p| {
                    axis.iter().map(move |&x| {
                        let mut q = p.clone();
                        q.push(x);
                        q
                    })
                })
                .collect();
        }
        out
    }
}

/// Tolerances and differentiation settings of a check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyOptions {
    pub tol: f64,
    pub tau_zero: f64,
    /// Scheme for the jets of the immersion.
    pub scheme: Scheme,
    /// Step for derivatives of derived quantities (normal parts, unit tangents, metrics).
    pub fd_step: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { tol: PROPERTY_TOL, tau_zero: TAU_ZERO, scheme: Scheme::Analytic, fd_step: FD_STEP }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "state", content = "reason", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// The property holds for a degenerate reason, e.g. `Zᵀ ≡ 0`.
    Degenerate(String),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        !matches!(self, Verdict::Fail)
    }

    pub fn label(&self) -> String {
        match self {
            Verdict::Pass => "pass".into(),
            Verdict::Fail => "fail".into(),
            Verdict::Degenerate(r) => format!("degenerate ({r})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub max: f64,
    pub mean: f64,
    pub argmax: usize,
}

impl Summary {
    fn of(residuals: &[f64]) -> Self {
        let mut max = f64::NEG_INFINITY;
        let mut argmax = 0;
        for (i, &r) in residuals.iter().enumerate() {
            let r = if r.is_nan() { f64::INFINITY } else { r };
            if r > max {
                max = r;
                argmax = i;
            }
        }
        if residuals.is_empty() {
            max = 0.0;
        }
        let mean = residuals.iter().map(|r| if r.is_nan() { f64::INFINITY } else { *r }).sum::<f64>()
            / residuals.len().max(1) as f64;
        Self { max, mean, argmax }
    }
}

/// Outcome of one check over a grid.
#[derive(Clone, Debug, Serialize)]
pub struct DiagnosticsReport {
    pub schema: u32,
    pub property: String,
    pub immersion: String,
    pub field: Option<String>,
    pub grid_shape: Vec<usize>,
    pub points: Vec<Vec<f64>>,
    pub residuals: Vec<f64>,
    /// The checked quantity per point (ratio, length, curvature); NaN where undefined.
    pub values: Vec<f64>,
    /// Points where `Zᵀ` (or `Z⊥`, for normalized checks) was classified as vanishing.
    pub flagged: Vec<usize>,
    pub summary: Summary,
    pub tolerance: f64,
    pub verdict: Verdict,
    pub metadata: BTreeMap<String, String>,
    pub stats: BTreeMap<String, f64>,
    /// Per-point evaluation failures, as `(index, message)`.
    pub errors: Vec<(usize, String)>,
}

impl DiagnosticsReport {
    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }

    pub fn stat(&self, key: &str) -> Option<f64> {
        self.stats.get(key).copied()
    }
}

/// Per-point outcome before assembly.
struct PointResult {
    residual: f64,
    value: f64,
    flagged: bool,
    cross: f64,
}

impl PointResult {
    fn new(residual: f64, value: f64) -> Self {
        Self { residual, value, flagged: false, cross: 0.0 }
    }

    fn flagged(value: f64) -> Self {
        Self { residual: 0.0, value, flagged: true, cross: 0.0 }
    }
}

fn eval_grid<F>(grid: &Grid, per_point: F) -> Vec<Result<PointResult>>
where
    F: Fn(&[f64]) -> Result<PointResult> + Sync,
{
    grid.points().par_iter().map(|u| per_point(u)).collect()
}

struct Assembly<'a> {
    property: &'a str,
    f: &'a ImmersionSpec,
    field: Option<&'a AmbientField>,
    grid: &'a Grid,
    opts: &'a VerifyOptions,
}

impl Assembly<'_> {
    fn finish(&self, results: Vec<Result<PointResult>>) -> DiagnosticsReport {
        let n = results.len();
        let mut residuals = Vec::with_capacity(n);
        let mut values = Vec::with_capacity(n);
        let mut flagged = Vec::new();
        let mut errors = Vec::new();
        let mut cross = 0.0f64;
        for (i, r) in results.into_iter().enumerate() {
            match r {
                Ok(p) => {
                    residuals.push(p.residual);
                    values.push(p.value);
                    if p.flagged {
                        flagged.push(i);
                    }
                    cross = cross.max(p.cross);
                }
                Err(e) => {
                    residuals.push(f64::INFINITY);
                    values.push(f64::NAN);
                    errors.push((i, e.to_string()));
                }
            }
        }
        let summary = Summary::of(&residuals);
        let verdict = if summary.max <= self.opts.tol { Verdict::Pass } else { Verdict::Fail };
        let mut metadata = BTreeMap::new();
        metadata.insert("scheme".to_string(), self.f.scheme_for(self.opts.scheme).label());
        metadata.insert("ambient".to_string(), self.f.ambient.to_string());
        let mut stats = BTreeMap::new();
        stats.insert("fd_step".to_string(), self.opts.fd_step);
        stats.insert("tau_zero".to_string(), self.opts.tau_zero);
        stats.insert("cross_check".to_string(), cross);
        DiagnosticsReport {
            schema: 1,
            property: self.property.to_string(),
            immersion: self.f.name.clone(),
            field: self.field.map(|z| z.name().to_string()),
            grid_shape: self.grid.shape(),
            points: self.grid.points(),
            residuals,
            values,
            flagged,
            summary,
            tolerance: self.opts.tol,
            verdict,
            metadata,
            stats,
            errors,
        }
    }
}

fn median(values: &[f64]) -> f64 {
    let mut v: Vec<f64> = values.iter().copied().filter(|x| x.is_finite()).collect();
    if v.is_empty() {
        return f64::NAN;
    }
    v.sort_by(f64::total_cmp);
    let k = v.len();
    if k % 2 == 1 {
        v[k / 2]
    } else {
        0.5 * (v[k / 2 - 1] + v[k / 2])
    }
}

/// Jacobian-only split of `Z` at `u`: chart coefficients of `Zᵀ` and the ambient `Z⊥`.
fn light_split(f: &ImmersionSpec, field: &AmbientField, u: &[f64]) -> Result<(DVector<f64>, DVector<f64>)> {
    if !f.in_domain(u) {
        return Err(GeomError::OutsideDomain(u.to_vec()));
    }
    let (p, jac) = jacobian(&*f.map, u, f.scheme_for(Scheme::Analytic))?;
    let z = field.eval(p.as_slice())?;
    split_with(&f.ambient.metric_at(p.as_slice()), &jac, &z)
}

/// Central difference of a vector-valued function of the parameters along `x`.
fn fd_along<F>(g: F, u: &[f64], x: &DVector<f64>, base: f64) -> Result<DVector<f64>>
where
    F: Fn(&[f64]) -> Result<DVector<f64>>,
{
    let scale = u.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let len = x.amax();
    if len == 0.0 {
        return Ok(g(u)? * 0.0);
    }
    let h = base * scale / len;
    let plus: Vec<f64> = u.iter().zip(x.iter()).map(|(a, b)| a + h * b).collect();
    let minus: Vec<f64> = u.iter().zip(x.iter()).map(|(a, b)| a - h * b).collect();
    Ok((g(&plus)? - g(&minus)?) / (2.0 * h))
}

/// `G`-orthonormal basis of `T_uM`, or of the `G`-orthogonal complement of `c` when given.
fn test_directions(geo: &LocalGeometry, perp_to: Option<&DVector<f64>>) -> Vec<DVector<f64>> {
    let m = geo.dim();
    let mut basis: Vec<DVector<f64>> = Vec::new();
    if let Some(c) = perp_to {
        let n = geo.norm_g(c);
        if n > 0.0 {
            basis.push(c / n);
        }
    }
    let skip = basis.len();
    for k in 0..m {
        let mut v = DVector::from_fn(m, |i, _| if i == k { 1.0 } else { 0.0 });
        for b in &basis {
            let proj = b.dot(&(&geo.gram * &v));
            v -= b * proj;
        }
        let n = geo.norm_g(&v);
        if n > 1e-8 {
            basis.push(v / n);
        }
        if basis.len() == m {
            break;
        }
    }
    basis.split_off(skip)
}

/// `‖Z⊥‖/‖Zᵀ‖` across the grid, compared with its median (and with `expected` when given).
pub fn ratio_report(f: &ImmersionSpec, field: &AmbientField, grid: &Grid, opts: &VerifyOptions) -> Result<DiagnosticsReport> {
    ratio_report_expecting(f, field, grid, opts, None)
}

pub fn ratio_report_expecting(
    f: &ImmersionSpec,
    field: &AmbientField,
    grid: &Grid,
    opts: &VerifyOptions,
    expected: Option<f64>,
) -> Result<DiagnosticsReport> {
    check_field(f, field)?;
    let norms = eval_grid(grid, |u| {
        let geo = LocalGeometry::at(f, u, opts.scheme)?;
        let d = Decomposition::at(&geo, field)?;
        Ok(PointResult { residual: d.tangent_norm, value: d.normal_norm, flagged: false, cross: 0.0 })
    });
    let asm = Assembly { property: "cr", f, field: Some(field), grid, opts };
    let pairs: Vec<Option<(f64, f64)>> =
        norms.iter().map(|r| r.as_ref().ok().map(|p| (p.residual, p.value))).collect();
    let ok: Vec<(f64, f64)> = pairs.iter().flatten().copied().collect();
    let tau = opts.tau_zero;
    let all_t_zero = !ok.is_empty() && ok.iter().all(|(t, _)| *t < tau);
    let all_n_zero = !ok.is_empty() && ok.iter().all(|(_, n)| *n < tau);
    let ratios: Vec<f64> = ok.iter().filter(|(t, _)| *t >= tau).map(|(t, n)| n / t).collect();
    let med = median(&ratios);
    let target = expected.unwrap_or(med);
    let results = norms
        .into_iter()
        .map(|r| {
            r.map(|p| {
                let (t, n) = (p.residual, p.value);
                if all_t_zero || all_n_zero {
                    PointResult::new(0.0, if t >= tau { n / t } else { f64::NAN })
                } else if t < tau {
                    PointResult::flagged(f64::NAN)
                } else {
                    let ratio = n / t;
                    let mut res = (ratio - med).abs() / med.abs().max(1.0);
                    if expected.is_some() {
                        res = res.max((ratio - target).abs() / target.abs().max(1.0));
                    }
                    PointResult::new(res, ratio)
                }
            })
        })
        .collect();
    let mut report = asm.finish(results);
    report.stats.insert("constant".into(), if all_t_zero { f64::INFINITY } else { med });
    if let Some(e) = expected {
        report.stats.insert("expected".into(), e);
    }
    if report.summary.max <= opts.tol {
        if all_t_zero {
            report.verdict = Verdict::Degenerate("tangent part vanishes identically".into());
        } else if all_n_zero {
            report.verdict = Verdict::Degenerate("normal part vanishes identically".into());
        }
    }
    Ok(report)
}

/// Whether `Zᵀ` is an eigenvector of every shape operator: per point, the largest
/// `‖A_ξ Zᵀ − λ Zᵀ‖_G / (‖A_ξ‖_G ‖Zᵀ‖_G + τ)` over an orthonormal normal basis.
pub fn pd_residual(f: &ImmersionSpec, field: &AmbientField, grid: &Grid, opts: &VerifyOptions) -> Result<DiagnosticsReport> {
    check_field(f, field)?;
    let tau = opts.tau_zero;
    let results = eval_grid(grid, |u| {
        let geo = LocalGeometry::at(f, u, opts.scheme)?;
        let d = Decomposition::at(&geo, field)?;
        if d.tangent_norm < tau {
            return Ok(PointResult::flagged(f64::NAN));
        }
        let c = &d.tangent_coeffs;
        let mut worst = 0.0f64;
        for b in geo.second_forms(f) {
            let ac = &geo.gram_inv * &b * c;
            let lambda = c.dot(&(&b * c)) / c.dot(&(&geo.gram * c));
            let r = geo.norm_g(&(&ac - c * lambda));
            worst = worst.max(r / (geo.operator_norm(&b) * d.tangent_norm + tau));
        }
        Ok(PointResult::new(worst, d.tangent_norm))
    });
    let mut report = Assembly { property: "pd", f, field: Some(field), grid, opts }.finish(results);
    if !report.points.is_empty() && report.flagged.len() == report.points.len() {
        report.verdict = Verdict::Degenerate("tangent part vanishes identically (vacuous)".into());
    }
    Ok(report)
}

/// Directions along which [`normal_connection_residual`] differentiates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Along {
    AllDirections,
    PerpToTangentPart,
}

/// `‖∇⊥_X Z⊥‖` (or of `Z⊥/‖Z⊥‖` when `normalized`), maximized over unit test directions `X`.
///
/// The reported residual differentiates `Z⊥` along the chart; the cross-check computes the
/// same quantity as `(∇̃_X Z)^⊥ − α(X, Zᵀ)`.
pub fn normal_connection_residual(
    f: &ImmersionSpec,
    field: &AmbientField,
    grid: &Grid,
    along: Along,
    normalized: bool,
    opts: &VerifyOptions,
) -> Result<DiagnosticsReport> {
    check_field(f, field)?;
    let tau = opts.tau_zero;
    let results = eval_grid(grid, |u| {
        let geo = LocalGeometry::at(f, u, opts.scheme)?;
        let z = field.eval(geo.point())?;
        let d = Decomposition::from_vector(&geo, &z)?;
        if normalized && d.normal_norm < tau {
            return Ok(PointResult::flagged(d.normal_norm));
        }
        let perp = match along {
            Along::PerpToTangentPart if d.tangent_norm >= tau => Some(&d.tangent_coeffs),
            _ => None,
        };
        let forms = geo.second_forms(f);
        let nz = geo.normal_components(&d.normal_ambient);
        let p = geo.point().to_vec();
        let mut worst = 0.0f64;
        let mut cross = 0.0f64;
        for x in test_directions(&geo, perp) {
            let fx = geo.push(&x);
            // Path 1: differentiate Z⊥ (or its normalization) along the chart.
            let normal_at = |v: &[f64]| -> Result<DVector<f64>> {
                let (_, n) = light_split(f, field, v)?;
                if normalized {
                    let metric = f.ambient.metric_at(&f.map.eval(v));
                    let len = metric.norm(n.as_slice());
                    Ok(n / len)
                } else {
                    Ok(n)
                }
            };
            let here = if normalized { &d.normal_ambient / d.normal_norm } else { d.normal_ambient.clone() };
            let dn = fd_along(normal_at, u, &x, opts.fd_step)?
                + f.ambient.christoffel(&p, fx.as_slice(), here.as_slice());
            let path1 = geo.normal_components(&dn);
            // Path 2: (∇̃_X Z)^⊥ − α(X, Zᵀ).
            let z_at = |v: &[f64]| -> Result<DVector<f64>> { field.eval(&f.map.eval(v)) };
            let dz = fd_along(z_at, u, &x, opts.fd_step)? + f.ambient.christoffel(&p, fx.as_slice(), z.as_slice());
            let mut path2 = geo.normal_components(&dz);
            for (a, b) in forms.iter().enumerate() {
                path2[a] -= x.dot(&(b * &d.tangent_coeffs));
            }
            if normalized {
                let nn = d.normal_norm;
                let along_n = nz.dot(&path2) / (nn * nn);
                path2 = (&path2 - &nz * along_n) / nn;
            }
            worst = worst.max(path1.norm());
            cross = cross.max((&path1 - &path2).norm());
        }
        Ok(PointResult { residual: worst, value: d.normal_norm, flagged: false, cross })
    });
    let property = match (along, normalized) {
        (Along::AllDirections, false) => "normal_parallel",
        (Along::PerpToTangentPart, false) => "normal_parallel_perp",
        (Along::AllDirections, true) => "unit_normal_parallel",
        (Along::PerpToTangentPart, true) => "unit_normal_parallel_perp",
    };
    let mut report = Assembly { property, f, field: Some(field), grid, opts }.finish(results);
    report.metadata.insert("along".into(), format!("{along:?}"));
    if normalized && !report.points.is_empty() && report.flagged.len() == report.points.len() {
        report.verdict = Verdict::Degenerate("normal part vanishes identically".into());
    }
    Ok(report)
}

/// How the integral curves of `Zᵀ` are parametrized in [`geodesic_residual_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Parametrization {
    /// By the flow of `Zᵀ`: the residual is `‖∇_{Zᵀ} Zᵀ‖`.
    Flow,
    /// By arc length: the residual is `‖∇_T T‖`, `T = Zᵀ/‖Zᵀ‖` (geodesics up to reparametrization).
    Unit,
}

/// `Zᵀ` (or `Zᵀ/‖Zᵀ‖`) in chart coefficients, from Jacobians only.
fn tangent_part(f: &ImmersionSpec, field: &AmbientField, u: &[f64], param: Parametrization) -> Result<DVector<f64>> {
    let (c, _) = light_split(f, field, u)?;
    if param == Parametrization::Flow {
        return Ok(c);
    }
    let (p, jac) = jacobian(&*f.map, u, f.scheme_for(Scheme::Analytic))?;
    let g = f.ambient.metric_at(p.as_slice()).gram(&jac);
    let n = c.dot(&(&g * &c)).sqrt();
    Ok(c / n)
}

fn induced_metric_at(f: &ImmersionSpec, u: &[f64]) -> Result<DMatrix<f64>> {
    if !f.in_domain(u) {
        return Err(GeomError::OutsideDomain(u.to_vec()));
    }
    f.induced_metric(u)
}

/// `‖∇_{Zᵀ} Zᵀ‖_G`: zero iff the integral curves of `Zᵀ` are geodesics.
pub fn geodesic_residual(f: &ImmersionSpec, field: &AmbientField, grid: &Grid, opts: &VerifyOptions) -> Result<DiagnosticsReport> {
    geodesic_residual_with(f, field, grid, Parametrization::Flow, opts)
}

/// Geodesic residual of the integral curves of `Zᵀ` under either parametrization.
///
/// The residual uses the tangential part of the ambient acceleration; the cross-check uses
/// Christoffel symbols of the induced metric obtained by differencing `G`.
pub fn geodesic_residual_with(
    f: &ImmersionSpec,
    field: &AmbientField,
    grid: &Grid,
    param: Parametrization,
    opts: &VerifyOptions,
) -> Result<DiagnosticsReport> {
    check_field(f, field)?;
    let tau = opts.tau_zero;
    let results = eval_grid(grid, |u| {
        let geo = LocalGeometry::at(f, u, opts.scheme)?;
        let d = Decomposition::at(&geo, field)?;
        if d.tangent_norm < tau {
            return Ok(PointResult::flagged(f64::NAN));
        }
        let m = geo.dim();
        let t = match param {
            Parametrization::Flow => d.tangent_coeffs.clone(),
            Parametrization::Unit => &d.tangent_coeffs / d.tangent_norm,
        };
        let dt = fd_along(|v| tangent_part(f, field, v, param), u, &t, opts.fd_step)?;
        // Extrinsic path.
        let mut acc = geo.push(&dt);
        for i in 0..m {
            for j in 0..m {
                acc += geo.hessian_term(f, i, j) * (t[i] * t[j]);
            }
        }
        let (ext, _) = geo.split(&acc)?;
        // Intrinsic path.
        let dg: Vec<DMatrix<f64>> = (0..m)
            .map(|l| {
                let e = DVector::from_fn(m, |i, _| if i == l { 1.0 } else { 0.0 });
                let h = opts.fd_step * u.iter().fold(1.0f64, |a, v| a.max(v.abs()));
                let mut up = u.to_vec();
                let mut dn = u.to_vec();
                up[l] += h * e[l];
                dn[l] -= h * e[l];
                Ok((induced_metric_at(f, &up)? - induced_metric_at(f, &dn)?) / (2.0 * h))
            })
            .collect::<Result<_>>()?;
        let mut lower = DVector::zeros(m);
        for l in 0..m {
            let mut s = 0.0;
            for i in 0..m {
                for j in 0..m {
                    s += 0.5 * (dg[i][(j, l)] + dg[j][(i, l)] - dg[l][(i, j)]) * t[i] * t[j];
                }
            }
            lower[l] = s;
        }
        let int = &dt + &geo.gram_inv * lower;
        let res = geo.norm_g(&ext);
        Ok(PointResult { residual: res, value: d.tangent_norm, flagged: false, cross: geo.norm_g(&(&ext - &int)) })
    });
    let mut report = Assembly { property: "geodesic", f, field: Some(field), grid, opts }.finish(results);
    report.metadata.insert("parametrization".into(), format!("{param:?}"));
    if !report.points.is_empty() && report.flagged.len() == report.points.len() {
        report.verdict = Verdict::Degenerate("tangent part vanishes identically (vacuous)".into());
    }
    Ok(report)
}

/// `max(|g(∂_s, ∂_s) − c|, |g(∂_s, ∂_{x_i})|)` with `s` the first chart axis.
pub fn polar_residual(f: &ImmersionSpec, c: f64, grid: &Grid, opts: &VerifyOptions) -> Result<DiagnosticsReport> {
    let results = eval_grid(grid, |u| {
        let g = induced_metric_at(f, u)?;
        let mut r = (g[(0, 0)] - c).abs();
        for i in 1..g.nrows() {
            r = r.max(g[(0, i)].abs());
        }
        Ok(PointResult::new(r, g[(0, 0)]))
    });
    let mut report = Assembly { property: "polar", f, field: None, grid, opts }.finish(results);
    report.stats.insert("constant".into(), c);
    Ok(report)
}

/// Which part of `Z` a length check measures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Part {
    Tangent,
    Normal,
}

/// `|‖Zᵀ‖ − median|` (or of `‖Z⊥‖`), and the distance to `expected` when given.
pub fn length_report(
    f: &ImmersionSpec,
    field: &AmbientField,
    which: Part,
    grid: &Grid,
    opts: &VerifyOptions,
    expected: Option<f64>,
) -> Result<DiagnosticsReport> {
    check_field(f, field)?;
    let lengths = eval_grid(grid, |u| {
        let geo = LocalGeometry::at(f, u, opts.scheme)?;
        let d = Decomposition::at(&geo, field)?;
        let v = match which {
            Part::Tangent => d.tangent_norm,
            Part::Normal => d.normal_norm,
        };
        Ok(PointResult::new(0.0, v))
    });
    let vals: Vec<f64> = lengths.iter().filter_map(|r| r.as_ref().ok().map(|p| p.value)).collect();
    let med = median(&vals);
    let results = lengths
        .into_iter()
        .map(|r| {
            r.map(|p| {
                let mut res = (p.value - med).abs();
                if let Some(e) = expected {
                    res = res.max((p.value - e).abs());
                }
                PointResult::new(res, p.value)
            })
        })
        .collect();
    let property = match which {
        Part::Tangent => "t_constant",
        Part::Normal => "n_constant",
    };
    let mut report = Assembly { property, f, field: Some(field), grid, opts }.finish(results);
    report.stats.insert("constant".into(), med);
    if let Some(e) = expected {
        report.stats.insert("expected".into(), e);
    }
    Ok(report)
}

/// Gauss curvature `det B / det G` of a surface in Euclidean 3-space.
pub fn gauss_curvature(f: &ImmersionSpec, u: &[f64], scheme: Scheme) -> Result<f64> {
    if f.dim() != 2 || f.ambient != AmbientSpace::euclidean(3) {
        return Err(GeomError::Precondition("Gauss curvature needs a surface in Euclidean 3-space".into()));
    }
    let geo = LocalGeometry::at(f, u, scheme)?;
    let b = &geo.second_forms(f)[0];
    Ok(b.determinant() / geo.gram.determinant())
}

/// Constancy of the Gauss curvature (and agreement with `expected` when given).
pub fn gauss_report(f: &ImmersionSpec, grid: &Grid, opts: &VerifyOptions, expected: Option<f64>) -> Result<DiagnosticsReport> {
    gauss_curvature(f, &grid.points().first().cloned().unwrap_or_default(), opts.scheme)?;
    let ks = eval_grid(grid, |u| Ok(PointResult::new(0.0, gauss_curvature(f, u, opts.scheme)?)));
    let vals: Vec<f64> = ks.iter().filter_map(|r| r.as_ref().ok().map(|p| p.value)).collect();
    let med = median(&vals);
    let target = expected.unwrap_or(med);
    let results = ks
        .into_iter()
        .map(|r| r.map(|p| PointResult::new((p.value - target).abs().max((p.value - med).abs()), p.value)))
        .collect();
    let mut report = Assembly { property: "gauss", f, field: None, grid, opts }.finish(results);
    let mean = vals.iter().sum::<f64>() / vals.len().max(1) as f64;
    let var = vals.iter().map(|k| (k - mean).powi(2)).sum::<f64>() / vals.len().max(1) as f64;
    report.stats.insert("constant".into(), med);
    report.stats.insert("std_dev".into(), var.sqrt());
    Ok(report)
}

/// `‖A_{Z⊥} Zᵀ‖_G`: vanishes iff `‖Zᵀ‖` is constant, for a parallel field `Z`.
pub fn weingarten_residual(f: &ImmersionSpec, field: &AmbientField, grid: &Grid, opts: &VerifyOptions) -> Result<DiagnosticsReport> {
    check_field(f, field)?;
    let results = eval_grid(grid, |u| {
        let geo = LocalGeometry::at(f, u, opts.scheme)?;
        let d = Decomposition::at(&geo, field)?;
        let nz = geo.normal_components(&d.normal_ambient);
        let m = geo.dim();
        let mut b = DMatrix::zeros(m, m);
        for (a, form) in geo.second_forms(f).into_iter().enumerate() {
            b += form * nz[a];
        }
        let ac = &geo.gram_inv * b * &d.tangent_coeffs;
        Ok(PointResult::new(geo.norm_g(&ac), d.tangent_norm))
    });
    Ok(Assembly { property: "weingarten", f, field: Some(field), grid, opts }.finish(results))
}

/// Largest derivative of `‖Zᵀ‖` (or `‖Z⊥‖`) along unit directions `G`-orthogonal to `Zᵀ`.
pub fn directional_constancy(
    f: &ImmersionSpec,
    field: &AmbientField,
    which: Part,
    grid: &Grid,
    opts: &VerifyOptions,
) -> Result<DiagnosticsReport> {
    check_field(f, field)?;
    let tau = opts.tau_zero;
    let length = |v: &[f64]| -> Result<DVector<f64>> {
        let (c, n) = light_split(f, field, v)?;
        let (p, jac) = jacobian(&*f.map, v, f.scheme_for(Scheme::Analytic))?;
        let metric = f.ambient.metric_at(p.as_slice());
        let l = match which {
            Part::Tangent => c.dot(&(metric.gram(&jac) * &c)).sqrt(),
            Part::Normal => metric.norm(n.as_slice()),
        };
        Ok(DVector::from_element(1, l))
    };
    let results = eval_grid(grid, |u| {
        let geo = LocalGeometry::at(f, u, opts.scheme)?;
        let d = Decomposition::at(&geo, field)?;
        if d.tangent_norm < tau {
            return Ok(PointResult::flagged(f64::NAN));
        }
        let mut worst = 0.0f64;
        for x in test_directions(&geo, Some(&d.tangent_coeffs)) {
            worst = worst.max(fd_along(length, u, &x, opts.fd_step)?[0].abs());
        }
        Ok(PointResult::new(worst, length(u)?[0]))
    });
    let property = match which {
        Part::Tangent => "tangent_length_perp",
        Part::Normal => "normal_length_perp",
    };
    Ok(Assembly { property, f, field: Some(field), grid, opts }.finish(results))
}

/// `‖G A_ξ − (G A_ξ)ᵀ‖` maximized over the normal basis.
pub fn self_adjoint_residual(f: &ImmersionSpec, grid: &Grid, opts: &VerifyOptions) -> Result<DiagnosticsReport> {
    let results = eval_grid(grid, |u| {
        let geo = LocalGeometry::at(f, u, opts.scheme)?;
        let worst = geo
            .shape_operators(f)
            .iter()
            .map(|a| {
                let ga = &geo.gram * a;
                (&ga - ga.transpose()).amax()
            })
            .fold(0.0, f64::max);
        Ok(PointResult::new(worst, worst))
    });
    Ok(Assembly { property: "self_adjoint", f, field: None, grid, opts }.finish(results))
}

/// Checks one property without a declared constant.
pub fn verify_property(
    f: &ImmersionSpec,
    kind: ClaimKind,
    field: Option<&AmbientField>,
    grid: &Grid,
    opts: &VerifyOptions,
) -> Result<DiagnosticsReport> {
    check_claim(f, &Claim { kind, field: field.cloned(), expected: None }, grid, opts)
}

/// Checks a declared claim; a pinned constant must also match.
pub fn check_claim(f: &ImmersionSpec, claim: &Claim, grid: &Grid, opts: &VerifyOptions) -> Result<DiagnosticsReport> {
    let need = || {
        claim
            .field
            .as_ref()
            .ok_or_else(|| GeomError::Precondition(format!("property {} needs a field", claim.kind.name())))
    };
    match claim.kind {
        ClaimKind::ConstantRatio => ratio_report_expecting(f, need()?, grid, opts, claim.expected),
        ClaimKind::PrincipalDirection => pd_residual(f, need()?, grid, opts),
        ClaimKind::TConstant => length_report(f, need()?, Part::Tangent, grid, opts, claim.expected),
        ClaimKind::NConstant => length_report(f, need()?, Part::Normal, grid, opts, claim.expected),
        ClaimKind::NormalParallel => normal_connection_residual(f, need()?, grid, Along::AllDirections, false, opts),
        ClaimKind::ConstantGaussCurvature => gauss_report(f, grid, opts, claim.expected),
    }
}

/// Checks every claim of `f` on its default grid.
pub fn check_all_claims(f: &ImmersionSpec, per_axis: usize, opts: &VerifyOptions) -> Result<Vec<DiagnosticsReport>> {
    let grid = Grid::new(&f.domain, per_axis);
    f.claims.iter().map(|c| check_claim(f, c, &grid, opts)).collect()
}

/// Whether the ambient space is flat (Euclidean or Minkowski coordinates).
pub fn is_flat(space: &AmbientSpace) -> bool {
    space.kind() == SpaceKind::Flat
}
