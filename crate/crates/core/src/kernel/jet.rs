use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use super::real::{Dual, Real};
use crate::error::{GeomError, Result};
use crate::tolerances::FD_STEP;

/// A smooth map between coordinate spaces, evaluable on values and on hyper-dual numbers.
///
/// Maps without closed-form derivatives keep the default [`SmoothMap::eval_dual`], which
/// propagates dual parts by central differences.
pub trait SmoothMap: Send + Sync {
    fn dim_in(&self) -> usize;
    fn dim_out(&self) -> usize;
    fn eval(&self, u: &[f64]) -> Vec<f64>;

    fn eval_dual(&self, u: &[Dual]) -> Vec<Dual> {
        fd_dual(self, u)
    }

    /// True when `eval_dual` is exact up to round-off.
    fn is_analytic(&self) -> bool {
        false
    }
}

/// A map written once, generically over the scalar type.
pub trait Formula: Send + Sync {
    fn dim_in(&self) -> usize;
    fn dim_out(&self) -> usize;
    fn apply<D: Real>(&self, u: &[D]) -> Vec<D>;

    /// Whether every sub-map reached by `apply` is itself analytic.
    fn analytic(&self) -> bool {
        true
    }
}

impl<T: Formula> SmoothMap for T {
    fn dim_in(&self) -> usize {
        Formula::dim_in(self)
    }

    fn dim_out(&self) -> usize {
        Formula::dim_out(self)
    }

    fn eval(&self, u: &[f64]) -> Vec<f64> {
        self.apply(u)
    }

    fn eval_dual(&self, u: &[Dual]) -> Vec<Dual> {
        self.apply(u)
    }

    fn is_analytic(&self) -> bool {
        self.analytic()
    }
}

/// Wraps a plain closure; derivatives come from finite differences.
pub struct FnMap<F> {
    dim_in: usize,
    dim_out: usize,
    f: F,
}

impl<F> FnMap<F>
where
    F: Fn(&[f64]) -> Vec<f64> + Send + Sync,
{
    pub fn new(dim_in: usize, dim_out: usize, f: F) -> Self {
        Self { dim_in, dim_out, f }
    }
}

impl<F> SmoothMap for FnMap<F>
where
    F: Fn(&[f64]) -> Vec<f64> + Send + Sync,
{
    fn dim_in(&self) -> usize {
        self.dim_in
    }

    fn dim_out(&self) -> usize {
        self.dim_out
    }

    fn eval(&self, u: &[f64]) -> Vec<f64> {
        (self.f)(u)
    }
}

/// Composition `outer ∘ inner`.
pub struct Composed {
    pub outer: Arc<dyn SmoothMap>,
    pub inner: Arc<dyn SmoothMap>,
}

impl Formula for Composed {
    fn dim_in(&self) -> usize {
        self.inner.dim_in()
    }

    fn dim_out(&self) -> usize {
        self.outer.dim_out()
    }

    fn apply<D: Real>(&self, u: &[D]) -> Vec<D> {
        let mid = D::call(&*self.inner, u);
        D::call(&*self.outer, &mid)
    }

    fn analytic(&self) -> bool {
        self.outer.is_analytic() && self.inner.is_analytic()
    }
}

fn step_for(x: &[f64], dir: &[f64], base: f64) -> f64 {
    let scale = x.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let len = dir.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if len == 0.0 {
        0.0
    } else {
        base * scale / len
    }
}

fn shifted(x: &[f64], a: &[f64], ha: f64, b: &[f64], hb: f64) -> Vec<f64> {
    x.iter()
        .zip(a)
        .zip(b)
        .map(|((xi, ai), bi)| xi + ha * ai + hb * bi)
        .collect()
}

/// Propagates hyper-dual parts through `map` with central differences.
pub fn fd_dual<M: SmoothMap + ?Sized>(map: &M, u: &[Dual]) -> Vec<Dual> {
    let x: Vec<f64> = u.iter().map(|d| d.re).collect();
    let a: Vec<f64> = u.iter().map(|d| d.eps1).collect();
    let b: Vec<f64> = u.iter().map(|d| d.eps2).collect();
    let c: Vec<f64> = u.iter().map(|d| d.eps1eps2).collect();
    let zero = vec![0.0; x.len()];
    let f0 = map.eval(&x);
    let n = f0.len();

    let first = |dir: &[f64]| -> Vec<f64> {
        let h = step_for(&x, dir, FD_STEP);
        if h == 0.0 {
            return vec![0.0; n];
        }
        let p = map.eval(&shifted(&x, dir, h, &zero, 0.0));
        let m = map.eval(&shifted(&x, dir, -h, &zero, 0.0));
        p.iter().zip(&m).map(|(p, m)| (p - m) / (2.0 * h)).collect()
    };
    let da = first(&a);
    let db = first(&b);
    let dc = first(&c);

    // Mixed second derivative: a larger step keeps round-off at the 1e-8 level.
    let ha = step_for(&x, &a, 1e-4);
    let hb = step_for(&x, &b, 1e-4);
    let dab = if ha == 0.0 || hb == 0.0 {
        vec![0.0; n]
    } else {
        let pp = map.eval(&shifted(&x, &a, ha, &b, hb));
        let pm = map.eval(&shifted(&x, &a, ha, &b, -hb));
        let mp = map.eval(&shifted(&x, &a, -ha, &b, hb));
        let mm = map.eval(&shifted(&x, &a, -ha, &b, -hb));
        (0..n)
            .map(|k| (pp[k] - pm[k] - mp[k] + mm[k]) / (4.0 * ha * hb))
            .collect()
    };

    (0..n)
        .map(|k| Dual::new(f0[k], da[k], db[k], dc[k] + dab[k]))
        .collect()
}

/// Differentiation scheme for [`jet2`].
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub enum Scheme {
    /// Exact derivatives through hyper-dual evaluation.
    #[default]
    Analytic,
    /// Central differences with base step `h` (scaled by `max(1, |u_i|)`).
    CentralDifference(f64),
}

impl Scheme {
    pub fn fd_default() -> Self {
        Scheme::CentralDifference(FD_STEP)
    }

    pub fn label(&self) -> String {
        match self {
            Scheme::Analytic => "analytic".into(),
            Scheme::CentralDifference(h) => format!("central-difference(h={h:e})"),
        }
    }
}

/// Value, Jacobian (N×m) and Hessian (N matrices of size m×m) of a map at a point.
#[derive(Clone, Debug)]
pub struct Jet2 {
    pub value: DVector<f64>,
    pub jacobian: DMatrix<f64>,
    pub hessian: Vec<DMatrix<f64>>,
}

impl Jet2 {
    pub fn dim_in(&self) -> usize {
        self.jacobian.ncols()
    }

    pub fn dim_out(&self) -> usize {
        self.value.len()
    }

    /// `∂²f/∂u_i∂u_j` as an ambient vector.
    pub fn second(&self, i: usize, j: usize) -> DVector<f64> {
        DVector::from_iterator(self.dim_out(), self.hessian.iter().map(|h| h[(i, j)]))
    }

    /// `∂f/∂u_i` as an ambient vector.
    pub fn first(&self, i: usize) -> DVector<f64> {
        self.jacobian.column(i).into_owned()
    }
}

fn check_finite(u: &[f64], values: impl IntoIterator<Item = f64>) -> Result<()> {
    if values.into_iter().all(f64::is_finite) {
        Ok(())
    } else {
        Err(GeomError::NonFinite(u.to_vec()))
    }
}

fn seeded(u: &[f64], i: usize, j: usize) -> Vec<Dual> {
    u.iter()
        .enumerate()
        .map(|(k, &x)| {
            Dual::new(
                x,
                if k == i { 1.0 } else { 0.0 },
                if k == j { 1.0 } else { 0.0 },
                0.0,
            )
        })
        .collect()
}

/// Second-order jet of `map` at `u`.
pub fn jet2(map: &dyn SmoothMap, u: &[f64], scheme: Scheme) -> Result<Jet2> {
    let m = map.dim_in();
    if u.len() != m {
        return Err(GeomError::DimensionMismatch { expected: m, got: u.len() });
    }
    let n = map.dim_out();
    let mut jac = DMatrix::zeros(n, m);
    let mut hess = vec![DMatrix::zeros(m, m); n];
    let value;
    match scheme {
        Scheme::Analytic => {
            if !map.is_analytic() {
                return Err(GeomError::NoAnalyticJet);
            }
            value = DVector::from_vec(map.eval(u));
            for i in 0..m {
                for j in i..m {
                    let out = map.eval_dual(&seeded(u, i, j));
                    for k in 0..n {
                        if i == j {
                            jac[(k, i)] = out[k].eps1;
                        }
                        hess[k][(i, j)] = out[k].eps1eps2;
                        hess[k][(j, i)] = out[k].eps1eps2;
                    }
                }
            }
        }
        Scheme::CentralDifference(h0) => {
            let f0 = map.eval(u);
            let h: Vec<f64> = u.iter().map(|x| h0 * x.abs().max(1.0)).collect();
            let at = |di: &[(usize, f64)]| {
                let mut x = u.to_vec();
                for &(k, d) in di {
                    x[k] += d;
                }
                map.eval(&x)
            };
            for i in 0..m {
                let p = at(&[(i, h[i])]);
                let q = at(&[(i, -h[i])]);
                for k in 0..n {
                    jac[(k, i)] = (p[k] - q[k]) / (2.0 * h[i]);
                    hess[k][(i, i)] = (p[k] - 2.0 * f0[k] + q[k]) / (h[i] * h[i]);
                }
                for j in (i + 1)..m {
                    let pp = at(&[(i, h[i]), (j, h[j])]);
                    let pm = at(&[(i, h[i]), (j, -h[j])]);
                    let mp = at(&[(i, -h[i]), (j, h[j])]);
                    let mm = at(&[(i, -h[i]), (j, -h[j])]);
                    for k in 0..n {
                        let v = (pp[k] - pm[k] - mp[k] + mm[k]) / (4.0 * h[i] * h[j]);
                        hess[k][(i, j)] = v;
                        hess[k][(j, i)] = v;
                    }
                }
            }
            value = DVector::from_vec(f0);
        }
    }
    check_finite(u, value.iter().copied())?;
    check_finite(u, jac.iter().copied())?;
    check_finite(u, hess.iter().flat_map(|h| h.iter().copied()))?;
    Ok(Jet2 {
        value,
        jacobian: jac,
        hessian: hess,
    })
}

/// [`jet2`] after checking that `u` sits inside `domain` (by `2h` per axis for differences).
pub fn jet2_in_box(
    map: &dyn SmoothMap,
    u: &[f64],
    scheme: Scheme,
    domain: &[(f64, f64)],
) -> Result<Jet2> {
    if domain.len() != u.len() {
        return Err(GeomError::DimensionMismatch { expected: domain.len(), got: u.len() });
    }
    let inside = u.iter().zip(domain).all(|(&x, &(lo, hi))| {
        let pad = match scheme {
            Scheme::Analytic => 0.0,
            Scheme::CentralDifference(h) => 2.0 * h * x.abs().max(1.0),
        };
        // Tiny slack so grid endpoints produced by floating arithmetic still count as inside.
        let slack = 1e-12 * (hi - lo).abs().max(1.0);
        x >= lo + pad - slack && x <= hi - pad + slack
    });
    if !inside {
        return Err(GeomError::OutsideDomain(u.to_vec()));
    }
    jet2(map, u, scheme)
}

/// Value and Jacobian only.
pub fn jacobian(map: &dyn SmoothMap, u: &[f64], scheme: Scheme) -> Result<(DVector<f64>, DMatrix<f64>)> {
    let m = map.dim_in();
    if u.len() != m {
        return Err(GeomError::DimensionMismatch { expected: m, got: u.len() });
    }
    let n = map.dim_out();
    let value = DVector::from_vec(map.eval(u));
    let mut jac = DMatrix::zeros(n, m);
    for i in 0..m {
        let col = match scheme {
            Scheme::Analytic => {
                if !map.is_analytic() {
                    return Err(GeomError::NoAnalyticJet);
                }
                let out = map.eval_dual(&seeded(u, i, usize::MAX));
                out.iter().map(|d| d.eps1).collect::<Vec<_>>()
            }
            Scheme::CentralDifference(h0) => {
                let h = h0 * u[i].abs().max(1.0);
                let mut p = u.to_vec();
                let mut q = u.to_vec();
                p[i] += h;
                q[i] -= h;
                let fp = map.eval(&p);
                let fq = map.eval(&q);
                fp.iter().zip(&fq).map(|(a, b)| (a - b) / (2.0 * h)).collect()
            }
        };
        for k in 0..n {
            jac[(k, i)] = col[k];
        }
    }
    check_finite(u, value.iter().copied())?;
    check_finite(u, jac.iter().copied())?;
    Ok((value, jac))
}

/// Differential of `map` at `p` applied to `v`.
pub fn directional(map: &dyn SmoothMap, p: &[f64], v: &[f64]) -> Vec<f64> {
    let x: Vec<Dual> = p
        .iter()
        .zip(v)
        .map(|(&a, &b)| Dual::new(a, b, 0.0, 0.0))
        .collect();
    map.eval_dual(&x).iter().map(|d| d.eps1).collect()
}
