//! Model spaces and their flat (pseudo-)Euclidean embeddings.
//!
//! Coordinates follow one layout throughout:
//!
//! * `ℝ^n`, `S^n ⊂ ℝ^{n+1}`, `H^n ⊂ ℝ^{n+1}_1` (last axis negative, last coordinate > 0);
//! * `Q^n_ε × ℝ`: the `Q` coordinates, then `t`;
//! * `I ×_ρ Q^n_ε`: `t` first, then the `Q` coordinates. The metric is `dt² + ρ(t)² g_Q`,
//!   so this is the one container whose metric depends on the point.

use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::kernel::{complement_basis, Metric, Real, Signature};

/// Simply connected space form `Q^n_ε`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SpaceForm {
    Euclidean,
    Sphere,
    Hyperbolic,
}

impl SpaceForm {
    pub fn from_epsilon(eps: i32) -> Result<Self> {
        match eps {
            0 => Ok(SpaceForm::Euclidean),
            1 => Ok(SpaceForm::Sphere),
            -1 => Ok(SpaceForm::Hyperbolic),
            e => Err(GeomError::InvalidEpsilon(e)),
        }
    }

    pub fn epsilon(self) -> i32 {
        match self {
            SpaceForm::Euclidean => 0,
            SpaceForm::Sphere => 1,
            SpaceForm::Hyperbolic => -1,
        }
    }

    /// Number of coordinates of `Q^n_ε` in its flat model.
    pub fn embed_dim(self, n: usize) -> usize {
        match self {
            SpaceForm::Euclidean => n,
            _ => n + 1,
        }
    }

    pub fn signature(self, n: usize) -> Signature {
        match self {
            SpaceForm::Hyperbolic => Signature::lorentzian(n + 1),
            _ => Signature::euclidean(self.embed_dim(n)),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SpaceForm::Euclidean => "euclidean",
            SpaceForm::Sphere => "sphere",
            SpaceForm::Hyperbolic => "hyperbolic",
        }
    }

    /// `|constraint(x) − target|` for a point of the flat model.
    pub fn residual(self, x: &[f64]) -> f64 {
        match self {
            SpaceForm::Euclidean => 0.0,
            SpaceForm::Sphere => (x.iter().map(|v| v * v).sum::<f64>() - 1.0).abs(),
            SpaceForm::Hyperbolic => {
                let n = x.len() - 1;
                if x[n] <= 0.0 {
                    return f64::INFINITY;
                }
                let q: f64 = x[..n].iter().map(|v| v * v).sum::<f64>() - x[n] * x[n];
                (q + 1.0).abs()
            }
        }
    }

    fn sample<R: Rng>(self, n: usize, rng: &mut R) -> Vec<f64> {
        match self {
            SpaceForm::Euclidean => (0..n).map(|_| rng.random_range(-1.5..1.5)).collect(),
            SpaceForm::Sphere => loop {
                let v: Vec<f64> = (0..=n).map(|_| rng.random_range(-1.0..1.0)).collect();
                let r = v.iter().map(|a| a * a).sum::<f64>().sqrt();
                if (0.1..=1.0).contains(&r) {
                    break v.iter().map(|a| a / r).collect();
                }
            },
            SpaceForm::Hyperbolic => {
                let mut v: Vec<f64> = (0..n).map(|_| rng.random_range(-1.5..1.5)).collect();
                let last = (1.0 + v.iter().map(|a| a * a).sum::<f64>()).sqrt();
                v.push(last);
                v
            }
        }
    }

    /// Orthonormal basis of `T_x Q`.
    fn tangent_basis(self, n: usize, x: &[f64]) -> Vec<DVector<f64>> {
        let d = self.embed_dim(n);
        let standard: Vec<DVector<f64>> = (0..d)
            .map(|i| DVector::from_fn(d, |r, _| if r == i { 1.0 } else { 0.0 }))
            .collect();
        match self {
            SpaceForm::Euclidean => standard,
            _ => {
                let metric = self.signature(n).metric();
                let pos = DMatrix::from_column_slice(d, 1, x);
                complement_basis(&metric, &pos, &standard, n)
                    .expect("tangent space of a space form is spacelike")
            }
        }
    }
}

/// `(C_ε(s), S_ε(s))`: `(cos, sin)`, `(1, s)` or `(cosh, sinh)`.
pub fn epsilon_scalars(eps: i32, s: f64) -> Result<(f64, f64)> {
    SpaceForm::from_epsilon(eps).map(|f| eps_cs(f, s))
}

/// [`epsilon_scalars`] for any scalar type.
pub fn eps_cs<D: Real>(form: SpaceForm, s: D) -> (D, D) {
    match form {
        SpaceForm::Sphere => (s.cos(), s.sin()),
        SpaceForm::Euclidean => (D::cst(1.0), s),
        SpaceForm::Hyperbolic => (s.cosh(), s.sinh()),
    }
}

/// Warping functions of the warped-product models (and the right-hand sides of the
/// Mercator-type ODE `F' = ρ(F)`).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Warping {
    Sin,
    Sinh,
    Cosh,
    /// `e^t/√2`.
    Exp,
    /// `t`.
    Identity,
    /// `√2·e^t`.
    Sqrt2Exp,
    /// Piecewise-linear through sorted `(t, ρ)` knots.
    Tabulated(Vec<(f64, f64)>),
}

impl Warping {
    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "sin" => Ok(Warping::Sin),
            "sinh" => Ok(Warping::Sinh),
            "cosh" => Ok(Warping::Cosh),
            "exp" => Ok(Warping::Exp),
            "id" | "identity" => Ok(Warping::Identity),
            "sqrt2exp" => Ok(Warping::Sqrt2Exp),
            other => Err(GeomError::UnknownName(format!("warping {other}"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Warping::Sin => "sin",
            Warping::Sinh => "sinh",
            Warping::Cosh => "cosh",
            Warping::Exp => "exp",
            Warping::Identity => "id",
            Warping::Sqrt2Exp => "sqrt2exp",
            Warping::Tabulated(_) => "tabulated",
        }
    }

    /// Open interval `I` on which `ρ > 0`.
    pub fn interval(&self) -> (f64, f64) {
        match self {
            Warping::Sin => (0.0, PI),
            Warping::Sinh | Warping::Identity => (0.0, f64::INFINITY),
            Warping::Cosh | Warping::Exp | Warping::Sqrt2Exp => (f64::NEG_INFINITY, f64::INFINITY),
            Warping::Tabulated(k) => (k[0].0, k[k.len() - 1].0),
        }
    }

    /// `I` shrunk by `margin` at finite endpoints.
    pub fn safe_interval(&self, margin: f64) -> (f64, f64) {
        let (lo, hi) = self.interval();
        (lo + margin, hi - margin)
    }

    /// The fibre model this warping turns into a space form, if any.
    pub fn model_form(&self) -> Option<SpaceForm> {
        match self {
            Warping::Sin | Warping::Sinh | Warping::Identity => Some(SpaceForm::Sphere),
            Warping::Cosh => Some(SpaceForm::Hyperbolic),
            Warping::Exp => Some(SpaceForm::Euclidean),
            Warping::Sqrt2Exp | Warping::Tabulated(_) => None,
        }
    }

    pub fn contains(&self, t: f64) -> bool {
        let (lo, hi) = self.interval();
        t > lo && t < hi
    }

    /// `ρ(t)`; errors when `t ∉ I`.
    pub fn value(&self, t: f64) -> Result<f64> {
        if !self.contains(t) {
            let (lo, hi) = self.interval();
            return Err(GeomError::OutsideInterval { t, lo, hi });
        }
        Ok(self.eval(t))
    }

    /// `ρ(t)` without the interval check.
    pub fn eval<D: Real>(&self, t: D) -> D {
        match self {
            Warping::Sin => t.sin(),
            Warping::Sinh => t.sinh(),
            Warping::Cosh => t.cosh(),
            Warping::Exp => t.exp() * (1.0 / SQRT_2),
            Warping::Identity => t,
            Warping::Sqrt2Exp => t.exp() * SQRT_2,
            Warping::Tabulated(_) => {
                let (v, d) = self.tabulated(t.value());
                t.lift(v, d, 0.0)
            }
        }
    }

    /// `ρ'(t)`.
    pub fn derivative(&self, t: f64) -> f64 {
        match self {
            Warping::Sin => t.cos(),
            Warping::Sinh => t.cosh(),
            Warping::Cosh => t.sinh(),
            Warping::Exp => t.exp() / SQRT_2,
            Warping::Identity => 1.0,
            Warping::Sqrt2Exp => t.exp() * SQRT_2,
            Warping::Tabulated(_) => self.tabulated(t).1,
        }
    }

    fn tabulated(&self, t: f64) -> (f64, f64) {
        let Warping::Tabulated(k) = self else { unreachable!() };
        let i = match k.iter().position(|&(x, _)| x > t) {
            Some(0) => 0,
            Some(i) => i - 1,
            None => k.len() - 2,
        };
        let (x0, y0) = k[i];
        let (x1, y1) = k[i + 1];
        let slope = (y1 - y0) / (x1 - x0);
        (y0 + slope * (t - x0), slope)
    }
}

/// Coarse classification of an [`AmbientSpace`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SpaceKind {
    Flat,
    Sphere,
    Hyperbolic,
    ProductWithLine,
    WarpedInterval,
}

/// An ambient model space together with its flat coordinate container.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum AmbientSpace {
    /// `ℝ^N` or `ℝ^N_1`.
    Flat(Signature),
    /// `S^n` or `H^n` (use [`AmbientSpace::space_form`], which maps `ε = 0` to `Flat`).
    Form { form: SpaceForm, n: usize },
    /// `Q^n_ε × ℝ`.
    Product { form: SpaceForm, n: usize },
    /// `I ×_ρ Q^n_ε`.
    Warped { warping: Warping, form: SpaceForm, n: usize },
}

impl AmbientSpace {
    pub fn euclidean(n: usize) -> Self {
        AmbientSpace::Flat(Signature::euclidean(n))
    }

    pub fn minkowski(n: usize) -> Self {
        AmbientSpace::Flat(Signature::lorentzian(n))
    }

    pub fn sphere(n: usize) -> Self {
        AmbientSpace::Form { form: SpaceForm::Sphere, n }
    }

    pub fn hyperbolic(n: usize) -> Self {
        AmbientSpace::Form { form: SpaceForm::Hyperbolic, n }
    }

    pub fn space_form(form: SpaceForm, n: usize) -> Self {
        match form {
            SpaceForm::Euclidean => Self::euclidean(n),
            _ => AmbientSpace::Form { form, n },
        }
    }

    pub fn product(form: SpaceForm, n: usize) -> Self {
        AmbientSpace::Product { form, n }
    }

    pub fn warped(warping: Warping, form: SpaceForm, n: usize) -> Self {
        AmbientSpace::Warped { warping, form, n }
    }

    pub fn kind(&self) -> SpaceKind {
        match self {
            AmbientSpace::Flat(_) => SpaceKind::Flat,
            AmbientSpace::Form { form: SpaceForm::Hyperbolic, .. } => SpaceKind::Hyperbolic,
            AmbientSpace::Form { .. } => SpaceKind::Sphere,
            AmbientSpace::Product { .. } => SpaceKind::ProductWithLine,
            AmbientSpace::Warped { .. } => SpaceKind::WarpedInterval,
        }
    }

    pub fn epsilon(&self) -> Option<i32> {
        match self {
            AmbientSpace::Flat(_) => None,
            AmbientSpace::Form { form, .. }
            | AmbientSpace::Product { form, .. }
            | AmbientSpace::Warped { form, .. } => Some(form.epsilon()),
        }
    }

    pub fn warping(&self) -> Option<&Warping> {
        match self {
            AmbientSpace::Warped { warping, .. } => Some(warping),
            _ => None,
        }
    }

    /// Number of container coordinates.
    pub fn embed_dim(&self) -> usize {
        match self {
            AmbientSpace::Flat(s) => s.dim(),
            AmbientSpace::Form { form, n } => form.embed_dim(*n),
            AmbientSpace::Product { form, n } | AmbientSpace::Warped { form, n, .. } => {
                form.embed_dim(*n) + 1
            }
        }
    }

    /// Dimension of the space itself.
    pub fn dim(&self) -> usize {
        match self {
            AmbientSpace::Flat(s) => s.dim(),
            AmbientSpace::Form { n, .. } => *n,
            AmbientSpace::Product { n, .. } | AmbientSpace::Warped { n, .. } => n + 1,
        }
    }

    /// Sign pattern of the container (for warped products, of `dt² + g_Q` up to the factor `ρ²`).
    pub fn signature(&self) -> Signature {
        match self {
            AmbientSpace::Flat(s) => s.clone(),
            AmbientSpace::Form { form, n } => form.signature(*n),
            AmbientSpace::Product { form, n } => {
                let q = form.signature(*n);
                Signature::with_negative_axes(q.dim() + 1, q.negative_axes().to_vec()).unwrap()
            }
            AmbientSpace::Warped { form, n, .. } => {
                let q = form.signature(*n);
                let axes = q.negative_axes().iter().map(|a| a + 1).collect();
                Signature::with_negative_axes(q.dim() + 1, axes).unwrap()
            }
        }
    }

    /// Range of container indices holding the `Q` factor, and the index of `t`.
    fn layout(&self) -> Option<(std::ops::Range<usize>, usize)> {
        match self {
            AmbientSpace::Product { form, n } => {
                let d = form.embed_dim(*n);
                Some((0..d, d))
            }
            AmbientSpace::Warped { form, n, .. } => {
                let d = form.embed_dim(*n);
                Some((1..d + 1, 0))
            }
            _ => None,
        }
    }

    /// Index of the line coordinate `t` for products and warped products.
    pub fn t_index(&self) -> Option<usize> {
        self.layout().map(|(_, t)| t)
    }

    /// Container metric at `p`.
    pub fn metric_at(&self, p: &[f64]) -> Metric {
        let sig = self.signature();
        match self {
            AmbientSpace::Warped { warping, .. } => {
                let r = warping.eval(p[0]);
                let r2 = r * r;
                let w = (0..sig.dim())
                    .map(|i| if i == 0 { 1.0 } else { r2 * sig.sign(i) })
                    .collect();
                Metric::new(w)
            }
            _ => sig.metric(),
        }
    }

    /// `Γ(v, w)`: the Christoffel term of the container metric at `p`; zero unless warped.
    pub fn christoffel(&self, p: &[f64], v: &[f64], w: &[f64]) -> DVector<f64> {
        let d = self.embed_dim();
        let mut out = DVector::zeros(d);
        if let AmbientSpace::Warped { warping, .. } = self {
            let sig = self.signature();
            let r = warping.eval(p[0]);
            let dr = warping.derivative(p[0]);
            out[0] = -r * dr * (1..d).map(|i| sig.sign(i) * v[i] * w[i]).sum::<f64>();
            let k = dr / r;
            for i in 1..d {
                out[i] = k * (v[0] * w[i] + w[0] * v[i]);
            }
        }
        out
    }

    /// Membership residual of `p`; `∞` on a dimension mismatch or outside `I`.
    pub fn membership_residual(&self, p: &[f64]) -> f64 {
        if p.len() != self.embed_dim() || p.iter().any(|v| !v.is_finite()) {
            return f64::INFINITY;
        }
        match self {
            AmbientSpace::Flat(_) => 0.0,
            AmbientSpace::Form { form, .. } => form.residual(p),
            AmbientSpace::Product { form, .. } => {
                let (q, _) = self.layout().unwrap();
                form.residual(&p[q])
            }
            AmbientSpace::Warped { warping, form, .. } => {
                if !warping.contains(p[0]) {
                    return f64::INFINITY;
                }
                let (q, _) = self.layout().unwrap();
                form.residual(&p[q])
            }
        }
    }

    pub fn contains(&self, p: &[f64], tol: f64) -> bool {
        self.membership_residual(p) <= tol
    }

    /// Orthonormal basis of the tangent space at `p`, in [`AmbientSpace::metric_at`].
    pub fn tangent_basis(&self, p: &[f64]) -> Vec<DVector<f64>> {
        let d = self.embed_dim();
        let unit = |i: usize| DVector::from_fn(d, |r, _| if r == i { 1.0 } else { 0.0 });
        match self {
            AmbientSpace::Flat(_) => (0..d).map(unit).collect(),
            AmbientSpace::Form { form, n } => form.tangent_basis(*n, p),
            AmbientSpace::Product { form, n } | AmbientSpace::Warped { form, n, .. } => {
                let (q, t) = self.layout().unwrap();
                let scale = match self.warping() {
                    Some(w) => 1.0 / w.eval(p[0]),
                    None => 1.0,
                };
                let mut out = vec![unit(t)];
                for v in form.tangent_basis(*n, &p[q.clone()]) {
                    let mut e = DVector::zeros(d);
                    e.rows_mut(q.start, q.len()).copy_from(&(v * scale));
                    out.push(e);
                }
                out
            }
        }
    }

    /// Size of the component of `v` normal to the space at `p`, relative to `max(1, |v|)`.
    pub fn tangency_residual(&self, p: &[f64], v: &[f64]) -> f64 {
        let scale = v.iter().map(|a| a * a).sum::<f64>().sqrt().max(1.0);
        let part = |form: SpaceForm, n: usize, x: &[f64], w: &[f64]| match form {
            SpaceForm::Euclidean => 0.0,
            _ => form.signature(n).metric().inner(x, w).abs(),
        };
        let r = match self {
            AmbientSpace::Flat(_) => 0.0,
            AmbientSpace::Form { form, n } => part(*form, *n, p, v),
            AmbientSpace::Product { form, n } | AmbientSpace::Warped { form, n, .. } => {
                let (q, _) = self.layout().unwrap();
                part(*form, *n, &p[q.clone()], &v[q])
            }
        };
        r / scale
    }

    /// A random point; `t_range` bounds the line coordinate of products and warped products.
    pub fn sample<R: Rng>(&self, rng: &mut R, t_range: (f64, f64)) -> Vec<f64> {
        match self {
            AmbientSpace::Flat(s) => (0..s.dim()).map(|_| rng.random_range(-1.5..1.5)).collect(),
            AmbientSpace::Form { form, n } => form.sample(*n, rng),
            AmbientSpace::Product { form, n } => {
                let mut p = form.sample(*n, rng);
                p.push(rng.random_range(t_range.0..t_range.1));
                p
            }
            AmbientSpace::Warped { form, n, .. } => {
                let mut p = vec![rng.random_range(t_range.0..t_range.1)];
                p.extend(form.sample(*n, rng));
                p
            }
        }
    }
}

impl fmt::Display for AmbientSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AmbientSpace::Flat(s) if s.is_euclidean() => write!(f, "flat:{}", s.dim()),
            AmbientSpace::Flat(s) => write!(f, "minkowski:{}", s.dim()),
            AmbientSpace::Form { form, n } => write!(f, "{}:{n}", form.name()),
            AmbientSpace::Product { form, n } => write!(f, "product:{}:{n}", form.name()),
            AmbientSpace::Warped { warping, form, n } => {
                write!(f, "warped:{}:{}:{n}", warping.name(), form.name())
            }
        }
    }
}

impl FromStr for AmbientSpace {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || GeomError::UnknownName(format!("space {s}"));
        let parts: Vec<&str> = s.split(':').collect();
        let dim = |x: &str| x.parse::<usize>().map_err(|_| bad());
        let form = |x: &str| match x {
            "euclidean" => Ok(SpaceForm::Euclidean),
            "sphere" => Ok(SpaceForm::Sphere),
            "hyperbolic" => Ok(SpaceForm::Hyperbolic),
            _ => Err(bad()),
        };
        match parts.as_slice() {
            ["flat", n] => Ok(Self::euclidean(dim(n)?)),
            ["minkowski", n] => Ok(Self::minkowski(dim(n)?)),
            [f, n] => Ok(Self::space_form(form(f)?, dim(n)?)),
            ["product", f, n] => Ok(Self::product(form(f)?, dim(n)?)),
            ["warped", w, f, n] => Ok(Self::warped(Warping::from_name(w)?, form(f)?, dim(n)?)),
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn membership_examples() {
        assert_eq!(AmbientSpace::sphere(2).membership_residual(&[0.0, 0.0, 1.0]), 0.0);
        assert_eq!(AmbientSpace::hyperbolic(2).membership_residual(&[0.0, 0.0, 1.0]), 0.0);
        let cyl = AmbientSpace::product(SpaceForm::Sphere, 1);
        assert_abs_diff_eq!(cyl.membership_residual(&[0.6, 0.8, 3.7]), 0.0, epsilon = 1e-15);
        assert_eq!(AmbientSpace::hyperbolic(2).membership_residual(&[0.0, 0.0, -1.0]), f64::INFINITY);
        assert_eq!(AmbientSpace::sphere(2).membership_residual(&[1.0, 0.0]), f64::INFINITY);
    }

    #[test]
    fn epsilon_scalar_examples() {
        assert_eq!(epsilon_scalars(1, 0.0).unwrap(), (1.0, 0.0));
        assert_eq!(epsilon_scalars(0, 2.0).unwrap(), (1.0, 2.0));
        let (c, s) = epsilon_scalars(-1, 0.5).unwrap();
        assert_abs_diff_eq!(c, 1.1276259652063807, epsilon = 1e-15);
        assert_abs_diff_eq!(s, 0.5210953054937474, epsilon = 1e-15);
        assert_eq!(epsilon_scalars(2, 0.0).unwrap_err(), GeomError::InvalidEpsilon(2));
    }

    #[test]
    fn warping_examples() {
        assert_abs_diff_eq!(Warping::Sin.value(PI / 2.0).unwrap(), 1.0);
        assert_abs_diff_eq!(Warping::Cosh.value(0.0).unwrap(), 1.0);
        assert_abs_diff_eq!(Warping::Exp.value(0.0).unwrap(), 1.0 / SQRT_2, epsilon = 1e-16);
        assert!(matches!(Warping::Sin.value(4.0), Err(GeomError::OutsideInterval { .. })));
        assert!(matches!(Warping::Sinh.value(0.0), Err(GeomError::OutsideInterval { .. })));
        let tab = Warping::Tabulated(vec![(0.0, 1.0), (1.0, 3.0)]);
        assert_abs_diff_eq!(tab.value(0.25).unwrap(), 1.5);
        assert_abs_diff_eq!(tab.derivative(0.25), 2.0);
    }

    #[test]
    fn tangent_bases_are_orthonormal_and_tangent() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let spaces = [
            AmbientSpace::euclidean(3),
            AmbientSpace::sphere(2),
            AmbientSpace::hyperbolic(3),
            AmbientSpace::product(SpaceForm::Hyperbolic, 2),
            AmbientSpace::product(SpaceForm::Sphere, 2),
            AmbientSpace::warped(Warping::Sin, SpaceForm::Sphere, 2),
            AmbientSpace::warped(Warping::Cosh, SpaceForm::Hyperbolic, 2),
        ];
        for s in &spaces {
            let p = s.sample(&mut rng, (0.5, 2.5));
            assert!(s.membership_residual(&p) < 1e-12, "{s}");
            let b = s.tangent_basis(&p);
            assert_eq!(b.len(), s.dim(), "{s}");
            let g = s.metric_at(&p);
            for i in 0..b.len() {
                assert!(s.tangency_residual(&p, b[i].as_slice()) < 1e-12, "{s}");
                for j in 0..b.len() {
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert_abs_diff_eq!(g.inner(b[i].as_slice(), b[j].as_slice()), want, epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn descriptors_round_trip() {
        for s in [
            "flat:3",
            "minkowski:4",
            "sphere:2",
            "hyperbolic:3",
            "product:hyperbolic:2",
            "warped:sin:sphere:2",
        ] {
            let sp: AmbientSpace = s.parse().unwrap();
            assert_eq!(sp.to_string(), s);
        }
        assert!("warped:foo:sphere:2".parse::<AmbientSpace>().is_err());
    }

    #[test]
    fn warped_christoffel_matches_metric_derivative() {
        // Γ^0_{ij} = −½ ∂_t g_ij for fibre indices.
        let s = AmbientSpace::warped(Warping::Sinh, SpaceForm::Sphere, 2);
        let p = [0.8, 0.0, 0.6, 0.8];
        let v = [0.0, 1.0, 0.0, 0.0];
        let gam = s.christoffel(&p, &v, &v);
        let h = 1e-6;
        let g = |t: f64| s.metric_at(&[t, 0.0, 0.6, 0.8]).weights()[1];
        let dg = (g(0.8 + h) - g(0.8 - h)) / (2.0 * h);
        assert_abs_diff_eq!(gam[0], -0.5 * dg, epsilon = 1e-8);
    }
}
