//! Building blocks of the gallery: shipped base immersions with unit normals, parallel
//! hypersurface families, parallel normal frames and the generating curves `γ`.

use std::sync::Arc;

use nalgebra::DVector;

use crate::error::{GeomError, Result};
use crate::kernel::{
    directional, from_pseudo_coordinates, jacobian, Formula, Metric, Real, Scheme, SmoothMap,
};
use crate::spaces::{eps_cs, SpaceForm};

/// Scalar profiles used for curve components and radial factors.
#[derive(Clone, Debug, PartialEq)]
pub enum Profile {
    /// `Σ c_i s^i`.
    Poly(Vec<f64>),
    /// `log sec(s + C)`.
    LogSec(f64),
}

impl Profile {
    pub fn linear(slope: f64, offset: f64) -> Self {
        Profile::Poly(vec![offset, slope])
    }

    pub fn constant(c: f64) -> Self {
        Profile::Poly(vec![c])
    }

    pub fn eval<D: Real>(&self, s: D) -> D {
        match self {
            Profile::Poly(c) => c.iter().rev().fold(D::cst(0.0), |acc, &k| acc * s + k),
            Profile::LogSec(c) => (s + *c).cos().recip().ln(),
        }
    }

    pub fn value(&self, s: f64) -> f64 {
        self.eval(s)
    }

    /// True for a polynomial of degree exactly one.
    pub fn is_linear(&self) -> bool {
        match self {
            Profile::Poly(c) => c.len() >= 2 && c[1] != 0.0 && c[2..].iter().all(|&k| k == 0.0),
            _ => false,
        }
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, Profile::Poly(c) if c.iter().skip(1).all(|&k| k == 0.0))
    }

    /// Interval on which the profile is defined, intersected with `(lo, hi)` and shrunk by `margin`.
    pub fn clip(&self, lo: f64, hi: f64, margin: f64) -> (f64, f64) {
        match self {
            Profile::Poly(_) => (lo, hi),
            Profile::LogSec(c) => {
                let half = std::f64::consts::FRAC_PI_2;
                (lo.max(-half - c + margin), hi.min(half - c - margin))
            }
        }
    }
}

/// Curves, surfaces-of-codimension-one and their normals shipped with the gallery.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BaseCurve {
    /// Circle of latitude `a` in `S²`, normal pointing north.
    Latitude(f64),
    /// Circle of latitude `a` in `S³ ∩ {x_4 = 0}`; normals: north in that `S²`, then `e_4`.
    Latitude3(f64),
    /// Circle of radius `r` in `ℝ²`, outward normal.
    Circle(f64),
    /// The geodesic `(sinh x, 0, cosh x)` of `H²`, normal `e_2`.
    HypGeodesic,
    /// The horocycle `e_0 + t e_1 + (t²+1) e_2` of `H²` in the pseudo-orthonormal basis.
    Horocycle,
    /// A point of `Q¹_ε`, whose parallel family is the unit-speed geodesic of `Q¹_ε`.
    Point(SpaceForm),
}

impl BaseCurve {
    pub fn form(&self) -> SpaceForm {
        match self {
            BaseCurve::Latitude(_) | BaseCurve::Latitude3(_) => SpaceForm::Sphere,
            BaseCurve::Circle(_) => SpaceForm::Euclidean,
            BaseCurve::HypGeodesic | BaseCurve::Horocycle => SpaceForm::Hyperbolic,
            BaseCurve::Point(f) => *f,
        }
    }

    /// Dimension `n` of the space form `Q^n_ε` containing the curve.
    pub fn space_dim(&self) -> usize {
        match self {
            BaseCurve::Latitude3(_) => 3,
            BaseCurve::Point(_) => 1,
            _ => 2,
        }
    }

    pub fn base_dim(&self) -> usize {
        match self {
            BaseCurve::Point(_) => 0,
            _ => 1,
        }
    }

    /// Number of shipped parallel normal fields.
    pub fn frame_len(&self) -> usize {
        match self {
            BaseCurve::Latitude3(_) => 2,
            _ => 1,
        }
    }

    /// Parameter box of the base.
    pub fn x_domain(&self) -> Vec<(f64, f64)> {
        match self {
            BaseCurve::Point(_) => vec![],
            BaseCurve::HypGeodesic | BaseCurve::Horocycle => vec![(-1.0, 1.0)],
            _ => vec![(0.0, 6.0)],
        }
    }

    /// The base point map (`part = 0`) or its `i`-th normal field (`part = i`).
    pub fn part(&self, part: usize) -> Arc<dyn SmoothMap> {
        Arc::new(BasePart { curve: *self, part })
    }
}

struct BasePart {
    curve: BaseCurve,
    part: usize,
}

impl Formula for BasePart {
    fn dim_in(&self) -> usize {
        self.curve.base_dim()
    }

    fn dim_out(&self) -> usize {
        self.curve.form().embed_dim(self.curve.space_dim())
    }

    fn apply<D: Real>(&self, u: &[D]) -> Vec<D> {
        let c = D::cst;
        match (self.curve, self.part) {
            (BaseCurve::Latitude(a), 0) => {
                vec![u[0].cos() * a.cos(), u[0].sin() * a.cos(), c(a.sin())]
            }
            (BaseCurve::Latitude(a), _) => {
                vec![u[0].cos() * -a.sin(), u[0].sin() * -a.sin(), c(a.cos())]
            }
            (BaseCurve::Latitude3(a), 0) => {
                vec![u[0].cos() * a.cos(), u[0].sin() * a.cos(), c(a.sin()), c(0.0)]
            }
            (BaseCurve::Latitude3(a), 1) => {
                vec![u[0].cos() * -a.sin(), u[0].sin() * -a.sin(), c(a.cos()), c(0.0)]
            }
            (BaseCurve::Latitude3(_), _) => vec![c(0.0), c(0.0), c(0.0), c(1.0)],
            (BaseCurve::Circle(r), 0) => vec![u[0].cos() * r, u[0].sin() * r],
            (BaseCurve::Circle(_), _) => vec![u[0].cos(), u[0].sin()],
            (BaseCurve::HypGeodesic, 0) => vec![u[0].sinh(), c(0.0), u[0].cosh()],
            (BaseCurve::HypGeodesic, _) => vec![c(0.0), c(1.0), c(0.0)],
            (BaseCurve::Horocycle, p) => {
                let t = u[0];
                let last = if p == 0 { t * t + 1.0 } else { t * t - 1.0 };
                from_pseudo_coordinates(&[c(1.0), t, last])
            }
            (BaseCurve::Point(form), p) => match (form, p) {
                (SpaceForm::Sphere, 0) => vec![c(1.0), c(0.0)],
                (SpaceForm::Sphere, _) => vec![c(0.0), c(1.0)],
                (SpaceForm::Hyperbolic, 0) => vec![c(0.0), c(1.0)],
                (SpaceForm::Hyperbolic, _) => vec![c(1.0), c(0.0)],
                (SpaceForm::Euclidean, 0) => vec![c(0.0)],
                (SpaceForm::Euclidean, _) => vec![c(1.0)],
            },
        }
    }
}

fn sample_points(domain: &[(f64, f64)], per_axis: usize) -> Vec<Vec<f64>> {
    let mut out = vec![vec![]];
    for &(lo, hi) in domain {
        let mut next = Vec::new();
        for p in &out {
            for k in 0..per_axis {
                let t = lo + (hi - lo) * (k as f64 + 0.5) / per_axis as f64;
                let mut q = p.clone();
                q.push(t);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

fn form_metric(form: SpaceForm, n: usize) -> Metric {
    form.signature(n).metric()
}

/// `φ_s = C_ε(λ s) φ_0 + S_ε(λ s) N`: the parallel hypersurfaces of `φ_0` in `Q^n_ε`,
/// with parameters `(s, x)`. `λ` (the `speed`) is 1 except for reparametrized families.
#[derive(Clone)]
pub struct HypersurfaceFamily {
    pub form: SpaceForm,
    pub n: usize,
    pub base: Arc<dyn SmoothMap>,
    pub normal: Arc<dyn SmoothMap>,
    pub base_dim: usize,
    pub x_domain: Vec<(f64, f64)>,
    pub speed: f64,
}

impl std::fmt::Debug for HypersurfaceFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "HypersurfaceFamily({}:{}, speed {})", self.form.name(), self.n, self.speed)
    }
}

impl HypersurfaceFamily {
    /// Checks that `normal` is a unit normal of `base` inside `Q^n_ε` at sample points.
    pub fn new(
        form: SpaceForm,
        n: usize,
        base: Arc<dyn SmoothMap>,
        normal: Arc<dyn SmoothMap>,
        x_domain: Vec<(f64, f64)>,
    ) -> Result<Self> {
        let base_dim = base.dim_in();
        let dim = form.embed_dim(n);
        if base.dim_out() != dim || normal.dim_out() != dim || normal.dim_in() != base_dim {
            return Err(GeomError::DimensionMismatch { expected: dim, got: base.dim_out() });
        }
        if x_domain.len() != base_dim {
            return Err(GeomError::DimensionMismatch { expected: base_dim, got: x_domain.len() });
        }
        let g = form_metric(form, n);
        for x in sample_points(&x_domain, 5) {
            let p = base.eval(&x);
            let v = normal.eval(&x);
            if form.residual(&p) > 1e-9 {
                return Err(GeomError::Precondition("base does not lie in the space form".into()));
            }
            let bad = |what: &str| GeomError::Precondition(format!("normal field fails: {what}"));
            if (g.inner(&v, &v) - 1.0).abs() > 1e-9 {
                return Err(bad("<N,N> = 1"));
            }
            if form != SpaceForm::Euclidean && g.inner(&v, &p).abs() > 1e-9 {
                return Err(bad("<N, phi> = 0"));
            }
            for k in 0..base_dim {
                let mut e = vec![0.0; base_dim];
                e[k] = 1.0;
                let d = directional(&*base, &x, &e);
                if g.inner(&v, &d).abs() > 1e-9 {
                    return Err(bad("<N, dphi> = 0"));
                }
            }
        }
        Ok(Self { form, n, base, normal, base_dim, x_domain, speed: 1.0 })
    }

    pub fn shipped(curve: BaseCurve) -> Self {
        Self::new(curve.form(), curve.space_dim(), curve.part(0), curve.part(1), curve.x_domain())
            .expect("shipped base curves carry unit normals")
    }

    /// The same family with `s` rescaled: `φ_s ↦ φ_{λ s}`.
    pub fn with_speed(mut self, speed: f64) -> Self {
        self.speed = speed;
        self
    }

    pub fn embed_dim(&self) -> usize {
        self.form.embed_dim(self.n)
    }

    /// `φ_s(x)` as a point.
    pub fn member(&self, s: f64, x: &[f64]) -> Vec<f64> {
        let mut u = vec![s];
        u.extend_from_slice(x);
        SmoothMap::eval(self, &u)
    }
}

impl Formula for HypersurfaceFamily {
    fn dim_in(&self) -> usize {
        1 + self.base_dim
    }

    fn dim_out(&self) -> usize {
        self.embed_dim()
    }

    fn apply<D: Real>(&self, u: &[D]) -> Vec<D> {
        let (c, s) = eps_cs(self.form, u[0] * self.speed);
        let p = D::call(&*self.base, &u[1..]);
        let v = D::call(&*self.normal, &u[1..]);
        p.iter().zip(&v).map(|(&a, &b)| a * c + b * s).collect()
    }

    fn analytic(&self) -> bool {
        self.base.is_analytic() && self.normal.is_analytic()
    }
}

/// An immersion `φ: N^{m−1} → Q^n_ε` with orthonormal normal fields `ξ_1, …, ξ_k` that are
/// parallel in its normal bundle (inside `Q^n_ε`).
#[derive(Clone)]
pub struct NormalFrame {
    pub form: SpaceForm,
    pub n: usize,
    pub base: Arc<dyn SmoothMap>,
    pub xis: Vec<Arc<dyn SmoothMap>>,
    pub x_domain: Vec<(f64, f64)>,
}

impl std::fmt::Debug for NormalFrame {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "NormalFrame({}:{}, k = {})", self.form.name(), self.n, self.xis.len())
    }
}

impl NormalFrame {
    /// Validates orthonormality, normality and parallelism at sample points.
    pub fn new(
        form: SpaceForm,
        n: usize,
        base: Arc<dyn SmoothMap>,
        xis: Vec<Arc<dyn SmoothMap>>,
        x_domain: Vec<(f64, f64)>,
    ) -> Result<Self> {
        let frame = Self { form, n, base, xis, x_domain };
        let worst = frame.frame_residual()?;
        if worst > 1e-8 {
            return Err(GeomError::Precondition(format!(
                "normal frame is not orthonormal, normal and parallel (residual {worst:e})"
            )));
        }
        Ok(frame)
    }

    pub fn shipped(curve: BaseCurve) -> Self {
        let xis = (1..=curve.frame_len()).map(|i| curve.part(i)).collect();
        Self::new(curve.form(), curve.space_dim(), curve.part(0), xis, curve.x_domain())
            .expect("shipped frames are parallel")
    }

    pub fn k(&self) -> usize {
        self.xis.len()
    }

    pub fn base_dim(&self) -> usize {
        self.base.dim_in()
    }

    /// Largest violation of the frame conditions over sample points: `⟨ξ_i, ξ_j⟩ = δ_ij`,
    /// `ξ_i ⊥ φ_*`, `ξ_i ⊥ φ` (curved case), and `∂ξ_i ∈ span(φ_*, φ)`.
    pub fn frame_residual(&self) -> Result<f64> {
        let g = form_metric(self.form, self.n);
        let mut worst = 0.0f64;
        for x in sample_points(&self.x_domain, 5) {
            let p = DVector::from_vec(self.base.eval(&x));
            let (_, jac) = jacobian(&*self.base, &x, Scheme::Analytic)?;
            let mut span: Vec<DVector<f64>> = jac.column_iter().map(|c| c.into_owned()).collect();
            if self.form != SpaceForm::Euclidean {
                span.push(p.clone());
            }
            let basis = nalgebra::DMatrix::from_columns(&span);
            let xs: Vec<Vec<f64>> = self.xis.iter().map(|m| m.eval(&x)).collect();
            for (i, xi) in xs.iter().enumerate() {
                for (j, xj) in xs.iter().enumerate() {
                    let want = if i == j { 1.0 } else { 0.0 };
                    worst = worst.max((g.inner(xi, xj) - want).abs());
                }
                for c in &span {
                    worst = worst.max(g.inner(xi, c.as_slice()).abs());
                }
                let (_, dxi) = jacobian(&*self.xis[i], &x, Scheme::Analytic)?;
                for d in dxi.column_iter() {
                    let rest = crate::kernel::project_out(&g, &basis, &d.into_owned())?;
                    worst = worst.max(g.norm(rest.as_slice()));
                }
            }
        }
        Ok(worst)
    }
}

/// The projection `γ̄` of a generating curve, living in `Q^k_ε`.
#[derive(Clone, Debug, PartialEq)]
pub enum Projection {
    /// `k = 1`: `(S_ε(β), C_ε(β))`; for `ε = 0`, `(β, 1)`.
    Arc { beta: Profile },
    /// `k = 2`, `ε = 1`: `(sin β cos ψ, sin β sin ψ, cos β)`.
    Sphere2 { beta: Profile, psi: Profile },
}

/// `γ = (γ_1, …, γ_{k+1}, γ_{k+2})`: `γ̄` in `Q^k_ε` and a height profile.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveSpec {
    pub form: SpaceForm,
    pub projection: Projection,
    pub last: Profile,
}

impl CurveSpec {
    pub fn new(form: SpaceForm, projection: Projection, last: Profile) -> Result<Self> {
        if let Projection::Sphere2 { .. } = projection {
            if form != SpaceForm::Sphere {
                return Err(GeomError::Precondition("a two-parameter projection needs S^2".into()));
            }
        }
        Ok(Self { form, projection, last })
    }

    pub fn k(&self) -> usize {
        match self.projection {
            Projection::Arc { .. } => 1,
            Projection::Sphere2 { .. } => 2,
        }
    }

    pub fn eval<D: Real>(&self, s: D) -> Vec<D> {
        let mut out = match &self.projection {
            Projection::Arc { beta } => {
                let b = beta.eval(s);
                match self.form {
                    SpaceForm::Euclidean => vec![b, D::cst(1.0)],
                    form => {
                        let (c, sn) = eps_cs(form, b);
                        vec![sn, c]
                    }
                }
            }
            Projection::Sphere2 { beta, psi } => {
                let (b, p) = (beta.eval(s), psi.eval(s));
                vec![b.sin() * p.cos(), b.sin() * p.sin(), b.cos()]
            }
        };
        out.push(self.last.eval(s));
        out
    }

    /// `(γ(s), γ'(s), γ''(s))`.
    pub fn jet(&self, s: f64) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
        let d = crate::kernel::Dual::new(s, 1.0, 1.0, 0.0);
        let v = self.eval(d);
        (
            v.iter().map(|x| x.re).collect(),
            v.iter().map(|x| x.eps1).collect(),
            v.iter().map(|x| x.eps1eps2).collect(),
        )
    }

    /// Signature form of `ℝ^{k+2}_{(1)}`: the `γ_{k+1}` slot is negative when `ε = −1`.
    pub fn metric(&self) -> Metric {
        let k = self.k();
        let mut w = vec![1.0; k + 2];
        if self.form == SpaceForm::Hyperbolic {
            w[k] = -1.0;
        }
        Metric::new(w)
    }

    /// Largest `|γ_1² + … + γ_k² + ε γ_{k+1}² − ε|` over `samples` (for `ε = 0`, `|γ_{k+1} − 1|`).
    pub fn constraint_residual(&self, samples: &[f64]) -> f64 {
        let k = self.k();
        samples
            .iter()
            .map(|&s| {
                let g = self.eval(s);
                match self.form {
                    SpaceForm::Euclidean => (g[k] - 1.0).abs(),
                    form => {
                        let eps = form.epsilon() as f64;
                        let q: f64 = g[..k].iter().map(|x| x * x).sum::<f64>() + eps * g[k] * g[k];
                        (q - eps).abs()
                    }
                }
            })
            .fold(0.0, f64::max)
    }

    /// `min |γ_{k+2}'|` over `samples`.
    pub fn min_last_speed(&self, samples: &[f64]) -> f64 {
        samples
            .iter()
            .map(|&s| self.jet(s).1[self.k() + 1].abs())
            .fold(f64::INFINITY, f64::min)
    }

    fn projection_metric(&self) -> Metric {
        let w = self.metric().weights().to_vec();
        Metric::new(w[..self.k() + 1].to_vec())
    }

    /// Whether `‖γ̄'‖ ≡ 1` on `samples`.
    pub fn unit_speed_projection(&self, samples: &[f64]) -> bool {
        let k = self.k();
        let g = self.projection_metric();
        samples.iter().all(|&s| {
            let d = self.jet(s).1;
            (g.norm_sq(&d[..=k]) - 1.0).abs() < 1e-10
        })
    }

    /// Whether `γ̄` is a constant-speed geodesic of `Q^k_ε` on `samples`: `γ̄''` has no
    /// component tangent to `Q^k_ε`.
    pub fn geodesic_projection(&self, samples: &[f64]) -> bool {
        let k = self.k();
        let g = self.projection_metric();
        samples.iter().all(|&s| {
            let (p, _, dd) = self.jet(s);
            let acc = DVector::from_column_slice(&dd[..=k]);
            let pos = DVector::from_column_slice(&p[..=k]);
            let tangential = match self.form {
                SpaceForm::Euclidean => acc[0],
                _ => {
                    let pp = g.inner(pos.as_slice(), pos.as_slice());
                    let c = g.inner(acc.as_slice(), pos.as_slice()) / pp;
                    g.norm((acc - pos * c).as_slice())
                }
            };
            tangential.abs() < 1e-10
        })
    }
}

/// `G = F⁻¹` for `F(x) = x − arctan x` on `y ≥ 0`: bisection on `[0, max(10, 2y + 5)]`
/// followed by Newton polishing.
pub fn g_inverse(y: f64) -> Result<f64> {
    if !(y >= 0.0) || !y.is_finite() {
        return Err(GeomError::OutsideDomain(vec![y]));
    }
    if y == 0.0 {
        return Ok(0.0);
    }
    let f = |x: f64| x - x.atan() - y;
    let (mut lo, mut hi) = (0.0, (2.0 * y + 5.0).max(10.0));
    if f(hi) < 0.0 {
        return Err(GeomError::RootFinding(y));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-12 * hi.max(1.0) {
            break;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..5 {
        let d = x * x / (1.0 + x * x);
        if d == 0.0 {
            break;
        }
        let step = f(x) / d;
        if !step.is_finite() {
            break;
        }
        x -= step;
    }
    if (x - x.atan() - y).abs() > 1e-12 * y.max(1.0) {
        return Err(GeomError::RootFinding(y));
    }
    Ok(x)
}

/// `G` on a generic scalar, with `G' = (1 + G²)/G²` and `G'' = −2(1 + G²)/G⁵`.
pub fn g_inverse_real<D: Real>(y: D) -> D {
    match g_inverse(y.value()) {
        Ok(g) if g > 0.0 => {
            let g2 = g * g;
            y.lift(g, (1.0 + g2) / g2, -2.0 * (1.0 + g2) / (g2 * g2 * g))
        }
        _ => y.lift(f64::NAN, f64::NAN, f64::NAN),
    }
}
