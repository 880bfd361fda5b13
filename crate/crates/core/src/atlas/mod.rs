//! Conformal diffeomorphisms and isometries between model spaces.
//!
//! Each entry is a [`ConformalMapSpec`] whose forward and inverse maps are written once
//! over [`Real`], so pushforwards are exact (hyper-dual) unless a finite-difference
//! [`Scheme`] is requested.

pub mod mercator;

use std::f64::consts::{PI, SQRT_2, TAU};
use std::fmt;
use std::sync::Arc;

use nalgebra::DVector;
use rand::Rng;
use serde::Serialize;

pub use mercator::{mercator_solve, Mercator};

use crate::error::{GeomError, Result};
use crate::fields::AmbientField;
use crate::kernel::{
    directional, from_pseudo_coordinates, jacobian, pseudo_coordinates, Formula, Real, Scheme,
    SmoothMap,
};
use crate::spaces::{AmbientSpace, SpaceForm, Warping};
use crate::tolerances::{ANALYTIC_TOL, PROPERTY_TOL};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Direction {
    Forward,
    Inverse,
}

#[derive(Clone, Debug)]
enum Entry {
    RadialExp,
    Mercator(Mercator),
    WarpEuclid,
    WarpSphere,
    WarpElliptic,
    WarpHyperbolic,
    WarpParabolic,
    KillingCover,
    SphereInversion,
}

/// One direction of a catalog entry as a [`Formula`].
struct EntryMap {
    entry: Entry,
    inverse: bool,
    dim_in: usize,
    dim_out: usize,
}

fn norm<D: Real>(v: &[D]) -> D {
    v.iter().fold(D::cst(0.0), |acc, &x| acc + x * x).sqrt()
}

impl Formula for EntryMap {
    fn dim_in(&self) -> usize {
        self.dim_in
    }

    fn dim_out(&self) -> usize {
        self.dim_out
    }

    fn apply<D: Real>(&self, u: &[D]) -> Vec<D> {
        let last = u.len() - 1;
        match (&self.entry, self.inverse) {
            (Entry::RadialExp, false) => {
                let s = u[last].exp();
                u[..last].iter().map(|&x| x * s).collect()
            }
            (Entry::RadialExp, true) => {
                let r = norm(u);
                let mut out: Vec<D> = u.iter().map(|&y| y / r).collect();
                out.push(r.ln());
                out
            }
            (Entry::Mercator(m), false) => {
                let mut out = vec![m.eval(u[last])];
                out.extend_from_slice(&u[..last]);
                out
            }
            (Entry::Mercator(m), true) => {
                let s = u[0];
                let t = match m.inverse(s.value()) {
                    Ok(g) => {
                        let w = m.warping();
                        let r = w.eval(s.value());
                        s.lift(g, 1.0 / r, -w.derivative(s.value()) / (r * r))
                    }
                    Err(_) => s.lift(f64::NAN, f64::NAN, f64::NAN),
                };
                let mut out = u[1..].to_vec();
                out.push(t);
                out
            }
            (Entry::WarpEuclid, false) => u[1..].iter().map(|&x| x * u[0]).collect(),
            (Entry::WarpEuclid, true) => {
                let r = norm(u);
                let mut out = vec![r];
                out.extend(u.iter().map(|&y| y / r));
                out
            }
            (Entry::WarpSphere, false) | (Entry::WarpElliptic, false) => {
                let (s, c) = match self.entry {
                    Entry::WarpSphere => (u[0].sin(), u[0].cos()),
                    _ => (u[0].sinh(), u[0].cosh()),
                };
                let mut out: Vec<D> = u[1..].iter().map(|&x| x * s).collect();
                out.push(c);
                out
            }
            (Entry::WarpSphere, true) | (Entry::WarpElliptic, true) => {
                let r = norm(&u[..last]);
                let t = match self.entry {
                    Entry::WarpSphere => r.atan2(u[last]),
                    _ => r.asinh(),
                };
                let mut out = vec![t];
                out.extend(u[..last].iter().map(|&y| y / r));
                out
            }
            (Entry::WarpHyperbolic, false) => {
                let c = u[0].cosh();
                let mut out = vec![u[0].sinh()];
                out.extend(u[1..].iter().map(|&x| x * c));
                out
            }
            (Entry::WarpHyperbolic, true) => {
                let t = u[0].asinh();
                let c = t.cosh();
                let mut out = vec![t];
                out.extend(u[1..].iter().map(|&y| y / c));
                out
            }
            (Entry::WarpParabolic, false) => {
                // (1/√2)e^t(v + x − ½|x|²w) − (1/√2)e^{−t}w, v = (0,…,1,1)/√2, w = (0,…,1,−1)/√2.
                let x = &u[1..];
                let et = u[0].exp();
                let emt = (-u[0]).exp();
                let half_sq = x.iter().fold(D::cst(0.0), |a, &v| a + v * v) * 0.5;
                let mut out: Vec<D> = x.iter().map(|&v| v * et * (1.0 / SQRT_2)).collect();
                out.push((et * (-half_sq + 1.0) - emt) * 0.5);
                out.push((et * (half_sq + 1.0) + emt) * 0.5);
                out
            }
            (Entry::WarpParabolic, true) => {
                let n = u.len() - 2;
                let et = u[n] + u[n + 1];
                let mut out = vec![et.ln()];
                out.extend(u[..n].iter().map(|&y| y * SQRT_2 / et));
                out
            }
            (Entry::KillingCover, false) => {
                let x = pseudo_coordinates(&u[..last]);
                let inv = x[0].recip();
                let n = x.len() - 1;
                let mut out: Vec<D> = x[1..n].iter().map(|&v| v * inv).collect();
                out.push(u[last].cos() * inv);
                out.push(u[last].sin() * inv);
                out
            }
            (Entry::KillingCover, true) => {
                let n = u.len() - 1;
                let r = (u[n - 1] * u[n - 1] + u[n] * u[n]).sqrt();
                let mut x = vec![r.recip()];
                x.extend(u[..n - 1].iter().map(|&y| y / r));
                x.push(u.iter().fold(D::cst(0.0), |a, &v| a + v * v) / r);
                let mut out = from_pseudo_coordinates(&x);
                let mut t = u[n].atan2(u[n - 1]);
                if t.value() < 0.0 {
                    t += TAU;
                }
                out.push(t);
                out
            }
            (Entry::SphereInversion, _) => {
                let r2 = u.iter().fold(D::cst(0.0), |a, &v| a + v * v);
                u.iter().map(|&y| y / r2).collect()
            }
        }
    }
}

/// A conformal diffeomorphism `Ψ: source → target` with `⟨Ψ_*X, Ψ_*Y⟩ = φ²⟨X, Y⟩`.
#[derive(Clone)]
pub struct ConformalMapSpec {
    pub name: String,
    pub source: AmbientSpace,
    pub target: AmbientSpace,
    pub is_isometry: bool,
    entry: Entry,
    reversed: bool,
    has_inverse: bool,
    factor_scale: f64,
    forward: Arc<dyn SmoothMap>,
    inverse: Arc<dyn SmoothMap>,
    t_range: (f64, f64),
}

impl fmt::Debug for ConformalMapSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ConformalMapSpec({}: {} -> {})", self.name, self.source, self.target)
    }
}

impl ConformalMapSpec {
    fn build(
        name: &str,
        entry: Entry,
        source: AmbientSpace,
        target: AmbientSpace,
        is_isometry: bool,
        t_range: (f64, f64),
    ) -> Self {
        let (a, b) = (source.embed_dim(), target.embed_dim());
        let fwd = EntryMap { entry: entry.clone(), inverse: false, dim_in: a, dim_out: b };
        let inv = EntryMap { entry: entry.clone(), inverse: true, dim_in: b, dim_out: a };
        Self {
            name: name.to_string(),
            source,
            target,
            is_isometry,
            entry,
            reversed: false,
            has_inverse: true,
            factor_scale: 1.0,
            forward: Arc::new(fwd),
            inverse: Arc::new(inv),
            t_range,
        }
    }

    /// `S^{n−1} × ℝ → ℝⁿ∖{0}`, `(x, t) ↦ e^t x`.
    pub fn radial_exp(n: usize) -> Self {
        Self::build(
            "radial_exp",
            Entry::RadialExp,
            AmbientSpace::product(SpaceForm::Sphere, n - 1),
            AmbientSpace::euclidean(n),
            false,
            (-2.0, 2.0),
        )
    }

    /// `Q^n_ε × J → I ×_ρ Q^n_ε`, `(x, t) ↦ (F(t), x)` with `F' = ρ(F)`.
    pub fn mercator(profile: Mercator, form: SpaceForm, n: usize) -> Self {
        let t_range = existence_window(&profile);
        let target = AmbientSpace::warped(profile.warping().clone(), form, n);
        Self::build(
            "mercator",
            Entry::Mercator(profile),
            AmbientSpace::product(form, n),
            target,
            false,
            t_range,
        )
    }

    /// `(0, ∞) ×_t Sⁿ → ℝⁿ⁺¹∖{0}`, `(t, x) ↦ t x`.
    pub fn warp_euclid(n: usize) -> Self {
        Self::build(
            "warp_euclid",
            Entry::WarpEuclid,
            AmbientSpace::warped(Warping::Identity, SpaceForm::Sphere, n),
            AmbientSpace::euclidean(n + 1),
            true,
            (0.2, 3.0),
        )
    }

    /// `(0, π) ×_sin Sⁿ → Sⁿ⁺¹∖{S, N}`, `(t, x) ↦ (sin t)x + (cos t)N`.
    pub fn warp_sphere(n: usize) -> Self {
        Self::build(
            "warp_sphere",
            Entry::WarpSphere,
            AmbientSpace::warped(Warping::Sin, SpaceForm::Sphere, n),
            AmbientSpace::sphere(n + 1),
            true,
            (0.1, PI - 0.1),
        )
    }

    /// `(0, ∞) ×_sinh Sⁿ → Hⁿ⁺¹∖{P}`, `(t, x) ↦ (sinh t)x + (cosh t)P`.
    pub fn warp_hyp_elliptic(n: usize) -> Self {
        Self::build(
            "warp_hyp_elliptic",
            Entry::WarpElliptic,
            AmbientSpace::warped(Warping::Sinh, SpaceForm::Sphere, n),
            AmbientSpace::hyperbolic(n + 1),
            true,
            (0.1, 2.0),
        )
    }

    /// `ℝ ×_cosh Hⁿ → Hⁿ⁺¹`, `(t, x) ↦ (sinh t)e + (cosh t)x` with `e` the first axis.
    pub fn warp_hyp_hyperbolic(n: usize) -> Self {
        Self::build(
            "warp_hyp_hyperbolic",
            Entry::WarpHyperbolic,
            AmbientSpace::warped(Warping::Cosh, SpaceForm::Hyperbolic, n),
            AmbientSpace::hyperbolic(n + 1),
            true,
            (-1.5, 1.5),
        )
    }

    /// `ℝ ×_{e^t/√2} ℝⁿ → Hⁿ⁺¹`, the horospherical model.
    pub fn warp_hyp_parabolic(n: usize) -> Self {
        Self::build(
            "warp_hyp_parabolic",
            Entry::WarpParabolic,
            AmbientSpace::warped(Warping::Exp, SpaceForm::Euclidean, n),
            AmbientSpace::hyperbolic(n + 1),
            true,
            (-1.5, 1.5),
        )
    }

    /// `Hⁿ × ℝ → ℝⁿ⁺¹∖ℝⁿ⁻¹`, `(Σ x_j e_j, t) ↦ (1/x_0)(x_1, …, x_{n−1}, cos t, sin t)`.
    pub fn killing_cover(n: usize) -> Self {
        Self::build(
            "killing_cover",
            Entry::KillingCover,
            AmbientSpace::product(SpaceForm::Hyperbolic, n),
            AmbientSpace::euclidean(n + 1),
            false,
            (0.0, TAU),
        )
    }

    /// `ℝⁿ∖{0} → ℝⁿ∖{0}`, `y ↦ y/‖y‖²`.
    pub fn sphere_inversion(n: usize) -> Self {
        Self::build(
            "sphere_inversion",
            Entry::SphereInversion,
            AmbientSpace::euclidean(n),
            AmbientSpace::euclidean(n),
            false,
            (0.0, 1.0),
        )
    }

    /// The same map with its conformal factor multiplied by `scale`; used to check that
    /// [`conformality_residual`] detects a wrong factor.
    pub fn with_factor_scale(mut self, scale: f64) -> Self {
        self.factor_scale *= scale;
        self
    }

    /// The same map with its inverse withheld.
    pub fn without_inverse(mut self) -> Self {
        self.has_inverse = false;
        self
    }

    /// `Ψ⁻¹` as a map in its own right (factor `1/φ∘Ψ⁻¹`).
    pub fn inverted(&self) -> Result<Self> {
        if !self.has_inverse {
            return Err(GeomError::NotInvertible(self.name.clone()));
        }
        let mut out = self.clone();
        out.name = format!("{}^-1", self.name);
        std::mem::swap(&mut out.source, &mut out.target);
        std::mem::swap(&mut out.forward, &mut out.inverse);
        out.reversed = !self.reversed;
        Ok(out)
    }

    pub fn forward_map(&self) -> Arc<dyn SmoothMap> {
        self.forward.clone()
    }

    pub fn inverse_map(&self) -> Option<Arc<dyn SmoothMap>> {
        self.has_inverse.then(|| self.inverse.clone())
    }

    /// Range of the line coordinate used when sampling source points.
    pub fn t_range(&self) -> (f64, f64) {
        self.t_range
    }

    pub fn is_analytic(&self) -> bool {
        self.forward.is_analytic()
    }

    /// The profile `F` of a Mercator entry.
    pub fn mercator_profile(&self) -> Option<&Mercator> {
        match &self.entry {
            Entry::Mercator(m) => Some(m),
            _ => None,
        }
    }

    fn domain_error(&self, reason: impl Into<String>) -> GeomError {
        GeomError::OutsideMapDomain { map: self.name.clone(), reason: reason.into() }
    }

    fn check_member(&self, space: &AmbientSpace, p: &[f64]) -> Result<()> {
        if p.len() != space.embed_dim() {
            return Err(GeomError::DimensionMismatch { expected: space.embed_dim(), got: p.len() });
        }
        let scale = p.iter().map(|v| v * v).sum::<f64>().max(1.0);
        let res = space.membership_residual(p);
        if res <= 1e-8 * scale {
            Ok(())
        } else {
            Err(self.domain_error(format!("not a point of {space} (residual {res:e})")))
        }
    }

    /// Extra conditions beyond membership: removed sets of the catalog entries.
    fn check_domain(&self, p: &[f64], dir: Direction) -> Result<()> {
        let on_target = (dir == Direction::Inverse) != self.reversed;
        let sq = |v: &[f64]| v.iter().map(|a| a * a).sum::<f64>();
        let tiny = 1e-12;
        let bad = match (&self.entry, on_target) {
            (Entry::RadialExp, true) | (Entry::SphereInversion, _) | (Entry::WarpEuclid, true) => {
                (sq(p) < tiny).then_some("the origin is excluded")
            }
            (Entry::WarpSphere, true) | (Entry::WarpElliptic, true) => {
                (sq(&p[..p.len() - 1]) < tiny).then_some("the axis points are excluded")
            }
            (Entry::KillingCover, true) => {
                let n = p.len() - 1;
                (p[n - 1].powi(2) + p[n].powi(2) < tiny).then_some("points of the axis subspace are excluded")
            }
            (Entry::Mercator(m), false) => {
                m.value(p[p.len() - 1]).is_err().then_some("t is outside the existence interval of F")
            }
            _ => None,
        };
        match bad {
            Some(r) => Err(self.domain_error(r)),
            None => Ok(()),
        }
    }

    /// `Ψ(p)` or `Ψ⁻¹(p)`.
    pub fn apply(&self, p: &[f64], dir: Direction) -> Result<Vec<f64>> {
        let (space, map) = match dir {
            Direction::Forward => (&self.source, &self.forward),
            Direction::Inverse => {
                if !self.has_inverse {
                    return Err(GeomError::NotInvertible(self.name.clone()));
                }
                (&self.target, &self.inverse)
            }
        };
        self.check_member(space, p)?;
        self.check_domain(p, dir)?;
        let out = map.eval(p);
        if out.iter().any(|v| !v.is_finite()) {
            return Err(GeomError::NonFinite(p.to_vec()));
        }
        Ok(out)
    }

    /// The conformal factor `φ(p)` at a source point.
    pub fn factor(&self, p: &[f64]) -> Result<f64> {
        self.check_member(&self.source, p)?;
        self.check_domain(p, Direction::Forward)?;
        let base = if self.reversed {
            // After the swap, `forward` is the original inverse.
            let q = self.forward.eval(p);
            1.0 / self.raw_factor(&q)
        } else {
            self.raw_factor(p)
        };
        Ok(base * self.factor_scale)
    }

    fn raw_factor(&self, p: &[f64]) -> f64 {
        let last = p.len() - 1;
        match &self.entry {
            Entry::RadialExp => p[last].exp(),
            Entry::Mercator(m) => m.value(p[last]).map(|f| m.warping().eval(f)).unwrap_or(f64::NAN),
            Entry::KillingCover => 1.0 / pseudo_coordinates(&p[..last])[0],
            Entry::SphereInversion => 1.0 / p.iter().map(|v| v * v).sum::<f64>(),
            _ => 1.0,
        }
    }

    /// A random source point inside the domain.
    pub fn sample_source<R: Rng>(&self, rng: &mut R) -> Vec<f64> {
        loop {
            let p = self.source.sample(rng, self.t_range);
            let ok = match (&self.entry, self.reversed) {
                (Entry::SphereInversion, _) => p.iter().map(|v| v * v).sum::<f64>() > 0.04,
                (_, false) => self.apply(&p, Direction::Forward).is_ok(),
                (_, true) => self.apply(&p, Direction::Forward).is_ok() && p.iter().map(|v| v * v).sum::<f64>() > 0.04,
            };
            if ok {
                return p;
            }
        }
    }

    /// Field pairs `(Z, Ẑ)` with `Ψ_* Z = Ẑ ∘ Ψ` registered for this entry.
    pub fn related_fields(self: &Arc<Self>) -> Result<Vec<(AmbientField, AmbientField)>> {
        if self.reversed {
            return Ok(Vec::new());
        }
        let (s, t) = (&self.source, &self.target);
        Ok(match &self.entry {
            Entry::RadialExp => vec![(AmbientField::ddt(s)?, AmbientField::radial(t)?)],
            Entry::Mercator(_) => vec![(AmbientField::ddt(s)?, AmbientField::rho_ddt(t)?)],
            Entry::KillingCover => vec![(AmbientField::ddt(s)?, AmbientField::default_killing(t)?)],
            Entry::SphereInversion => (1..=s.embed_dim())
                .map(|i| {
                    Ok((
                        AmbientField::coordinate(s, i)?,
                        AmbientField::conformal_killing(t, i)?.scaled(-2.0),
                    ))
                })
                .collect::<Result<_>>()?,
            _ => {
                let d = AmbientField::ddt(s)?;
                vec![(d.clone(), AmbientField::pushforward(self.clone(), d)?)]
            }
        })
    }
}

/// Window of `t` inside which the profile exists, clipped to `[−3, 3]` and shrunk a little.
fn existence_window(m: &Mercator) -> (f64, f64) {
    if let Some((lo, hi)) = m.maximal_interval() {
        return (lo.max(-3.0), (hi - 0.1).min(3.0));
    }
    let probe = |sign: f64| {
        let mut t = 0.0;
        while t < 3.0 && m.value(sign * (t + 0.05)).is_ok() {
            t += 0.05;
        }
        sign * (t - 0.1).max(0.0)
    };
    (probe(-1.0), probe(1.0))
}

/// `Ψ_*(p) v`, exact via hyper-dual numbers.
pub fn pushforward(map: &ConformalMapSpec, p: &[f64], v: &[f64]) -> Result<DVector<f64>> {
    pushforward_with(map, p, v, Scheme::Analytic)
}

/// `Ψ_*(p) v` with an explicit differentiation scheme.
pub fn pushforward_with(map: &ConformalMapSpec, p: &[f64], v: &[f64], scheme: Scheme) -> Result<DVector<f64>> {
    map.apply(p, Direction::Forward)?;
    let tr = map.source.tangency_residual(p, v);
    if tr > 1e-8 {
        return Err(GeomError::Precondition(format!(
            "vector is not tangent to {} (residual {tr:e})",
            map.source
        )));
    }
    let out = match scheme {
        Scheme::Analytic => DVector::from_vec(directional(&*map.forward, p, v)),
        Scheme::CentralDifference(_) => {
            let (_, jac) = jacobian(&*map.forward, p, scheme)?;
            jac * DVector::from_column_slice(v)
        }
    };
    if out.iter().any(|x| !x.is_finite()) {
        return Err(GeomError::NonFinite(p.to_vec()));
    }
    Ok(out)
}

/// Maximum over random tangent pairs of `|⟨Ψ_*X, Ψ_*Y⟩ − φ²⟨X, Y⟩| / (‖Ψ_*X‖‖Ψ_*Y‖)`.
/// Every trial also includes the pair `(X, X)`.
pub fn conformality_residual<R: Rng>(
    map: &ConformalMapSpec,
    p: &[f64],
    trials: usize,
    rng: &mut R,
    scheme: Scheme,
) -> Result<f64> {
    let q = map.apply(p, Direction::Forward)?;
    let phi2 = map.factor(p)?.powi(2);
    let basis = map.source.tangent_basis(p);
    let gs = map.source.metric_at(p);
    let gt = map.target.metric_at(&q);
    let random_vec = |rng: &mut R| {
        basis
            .iter()
            .fold(DVector::zeros(p.len()), |acc, b| acc + b * rng.random_range(-1.0..1.0))
    };
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let x = random_vec(rng);
        let y = random_vec(rng);
        let px = pushforward_with(map, p, x.as_slice(), scheme)?;
        let py = pushforward_with(map, p, y.as_slice(), scheme)?;
        for (a, b, pa, pb) in [(&x, &y, &px, &py), (&x, &x, &px, &px)] {
            let denom = gt.norm(pa.as_slice()) * gt.norm(pb.as_slice());
            if denom < 1e-300 {
                continue;
            }
            let lhs = gt.inner(pa.as_slice(), pb.as_slice());
            let rhs = phi2 * gs.inner(a.as_slice(), b.as_slice());
            worst = worst.max((lhs - rhs).abs() / denom);
        }
    }
    Ok(worst)
}

/// Pass threshold for [`conformality_residual`] under a scheme.
pub fn conformality_tolerance(scheme: Scheme) -> f64 {
    match scheme {
        Scheme::Analytic => ANALYTIC_TOL,
        Scheme::CentralDifference(_) => PROPERTY_TOL,
    }
}

/// Names accepted by [`by_name`].
pub const CATALOG_NAMES: [&str; 9] = [
    "radial_exp",
    "mercator",
    "warp_euclid",
    "warp_sphere",
    "warp_hyp_elliptic",
    "warp_hyp_hyperbolic",
    "warp_hyp_parabolic",
    "killing_cover",
    "sphere_inversion",
];

/// Options for entries that need more than a dimension.
#[derive(Clone, Debug)]
pub struct CatalogOptions {
    pub n: usize,
    /// Warping of the Mercator entry.
    pub rho: Warping,
    /// Fibre of the Mercator entry.
    pub form: SpaceForm,
    /// Initial condition `F(t0) = f0` of the Mercator entry; `None` picks a default.
    pub initial: Option<(f64, f64)>,
    pub force_rk4: bool,
}

impl Default for CatalogOptions {
    fn default() -> Self {
        Self { n: 2, rho: Warping::Sin, form: SpaceForm::Sphere, initial: None, force_rk4: false }
    }
}

/// Default initial value of `F` at `t = 0` for each warping.
pub fn default_initial(rho: &Warping) -> f64 {
    match rho {
        Warping::Sin => PI / 2.0,
        Warping::Sinh | Warping::Identity => 1.0,
        Warping::Tabulated(k) => 0.5 * (k[0].0 + k[k.len() - 1].0),
        _ => 0.0,
    }
}

pub fn by_name(name: &str, opts: &CatalogOptions) -> Result<ConformalMapSpec> {
    let n = opts.n;
    if n < 2 {
        return Err(GeomError::Precondition("catalog maps need n >= 2".into()));
    }
    Ok(match name {
        "radial_exp" => ConformalMapSpec::radial_exp(n),
        "mercator" => {
            let (t0, f0) = opts.initial.unwrap_or((0.0, default_initial(&opts.rho)));
            let mut m = Mercator::from_initial(opts.rho.clone(), t0, f0)?;
            if opts.force_rk4 {
                m = m.force_rk4();
            }
            ConformalMapSpec::mercator(m, opts.form, n)
        }
        "warp_euclid" => ConformalMapSpec::warp_euclid(n),
        "warp_sphere" => ConformalMapSpec::warp_sphere(n),
        "warp_hyp_elliptic" => ConformalMapSpec::warp_hyp_elliptic(n),
        "warp_hyp_hyperbolic" => ConformalMapSpec::warp_hyp_hyperbolic(n),
        "warp_hyp_parabolic" => ConformalMapSpec::warp_hyp_parabolic(n),
        "killing_cover" => ConformalMapSpec::killing_cover(n),
        "sphere_inversion" => ConformalMapSpec::sphere_inversion(n),
        other => return Err(GeomError::UnknownName(format!("map {other}"))),
    })
}

/// Every catalog entry with default options in dimension `n`.
pub fn catalog(n: usize) -> Vec<ConformalMapSpec> {
    let opts = CatalogOptions { n, ..Default::default() };
    CATALOG_NAMES.iter().map(|name| by_name(name, &opts).expect("catalog entry")).collect()
}
