//! Constructors of the gallery.

use std::f64::consts::PI;
use std::sync::Arc;

use super::family::{BaseCurve, CurveSpec, HypersurfaceFamily, NormalFrame, Profile, Projection};
use super::{Claim, ClaimKind, ImmersionSpec};
use crate::atlas::{ConformalMapSpec, Direction, Mercator};
use crate::error::{GeomError, Result};
use crate::fields::AmbientField;
use crate::kernel::{Composed, Formula, Real, SmoothMap};
use crate::spaces::{AmbientSpace, SpaceForm};
use crate::tolerances::PROPERTY_TOL;
use crate::verify::{polar_residual, Grid, VerifyOptions};

/// Points per axis used when constructors sample their own output.
const CHECK_GRID: usize = 7;

fn s_samples(range: (f64, f64)) -> Vec<f64> {
    Grid::new(&[range], 25).points().into_iter().map(|p| p[0]).collect()
}

/// `(s, x) ↦ φ_s(x)` on `s_range × x_domain`, polar with `c = λ²`.
pub fn family_immersion(family: &HypersurfaceFamily, s_range: (f64, f64)) -> Result<ImmersionSpec> {
    let mut domain = vec![s_range];
    domain.extend_from_slice(&family.x_domain);
    let spec = ImmersionSpec::new(
        "parallel_family",
        domain,
        Arc::new(family.clone()),
        AmbientSpace::space_form(family.form, family.n),
    )?
    .with_polar(family.speed * family.speed);
    spec.check_regular(CHECK_GRID)?;
    Ok(spec)
}

fn expect_form(base: &ImmersionSpec) -> Result<(SpaceForm, usize)> {
    match base.ambient {
        AmbientSpace::Form { form, n } => Ok((form, n)),
        ref flat @ AmbientSpace::Flat(_) if *flat == AmbientSpace::euclidean(flat.dim()) => {
            Ok((SpaceForm::Euclidean, flat.dim()))
        }
        ref other => Err(GeomError::Precondition(format!(
            "base must immerse into a space form, got {other}"
        ))),
    }
}

/// Checks the declared polar metric of `base` and returns `c`.
fn checked_polar(base: &ImmersionSpec) -> Result<f64> {
    let c = base
        .polar_constant
        .ok_or_else(|| GeomError::Precondition("base has no declared polar metric".into()))?;
    let grid = Grid::new(&base.domain, CHECK_GRID);
    let report = polar_residual(base, c, &grid, &VerifyOptions::default())?;
    if report.summary.max > PROPERTY_TOL {
        return Err(GeomError::Precondition(format!(
            "induced metric of {} is not polar with constant {c} (residual {:e})",
            base.name, report.summary.max
        )));
    }
    Ok(c)
}

struct CrProductMap {
    base: Arc<dyn SmoothMap>,
    a: f64,
}

impl Formula for CrProductMap {
    fn dim_in(&self) -> usize {
        self.base.dim_in()
    }

    fn dim_out(&self) -> usize {
        self.base.dim_out() + 1
    }

    fn apply<D: Real>(&self, u: &[D]) -> Vec<D> {
        let mut out = D::call(&*self.base, u);
        out.push(u[0] * self.a);
        out
    }

    fn analytic(&self) -> bool {
        self.base.is_analytic()
    }
}

fn hypersurface_pd(spec: ImmersionSpec, field: &AmbientField) -> ImmersionSpec {
    if spec.is_hypersurface() {
        spec.with_claim(Claim::new(ClaimKind::PrincipalDirection, field.clone(), None))
    } else {
        spec
    }
}

/// `f(s, x) = (φ(s, x), A s)` into `Q^n_ε × ℝ`; constant ratio `√c/|A|` for `∂/∂t`.
pub fn cr_product(base: &ImmersionSpec, a: f64) -> Result<ImmersionSpec> {
    if a == 0.0 || !a.is_finite() {
        return Err(GeomError::Precondition("A must be non-zero".into()));
    }
    let (form, n) = expect_form(base)?;
    let c = checked_polar(base)?;
    let ambient = AmbientSpace::product(form, n);
    let ddt = AmbientField::ddt(&ambient)?;
    let spec = ImmersionSpec::new(
        "cr_product",
        base.domain.clone(),
        Arc::new(CrProductMap { base: base.map.clone(), a }),
        ambient,
    )?
    .with_param("A", a)
    .with_polar(c + a * a)
    .with_claim(Claim::new(ClaimKind::ConstantRatio, ddt.clone(), Some(c.sqrt() / a.abs())));
    let spec = hypersurface_pd(spec, &ddt);
    spec.check_regular(CHECK_GRID)?;
    Ok(spec)
}

struct CrWarpedMap {
    base: Arc<dyn SmoothMap>,
    a: f64,
    profile: Mercator,
}

impl Formula for CrWarpedMap {
    fn dim_in(&self) -> usize {
        self.base.dim_in()
    }

    fn dim_out(&self) -> usize {
        self.base.dim_out() + 1
    }

    fn apply<D: Real>(&self, u: &[D]) -> Vec<D> {
        let mut out = vec![self.profile.eval(u[0] * self.a)];
        out.extend(D::call(&*self.base, u));
        out
    }

    fn analytic(&self) -> bool {
        self.base.is_analytic()
    }
}

/// `f(s, x) = (F(A s), φ(s, x))` into `I ×_ρ Q^n_ε`, with `F' = ρ(F)`.
pub fn cr_warped(base: &ImmersionSpec, a: f64, profile: Mercator) -> Result<ImmersionSpec> {
    if a == 0.0 || !a.is_finite() {
        return Err(GeomError::Precondition("A must be non-zero".into()));
    }
    let (form, n) = expect_form(base)?;
    let c = checked_polar(base)?;
    for s in s_samples(base.domain[0]) {
        profile.value(a * s)?;
    }
    let ambient = AmbientSpace::warped(profile.warping().clone(), form, n);
    let ddt = AmbientField::ddt(&ambient)?;
    let spec = ImmersionSpec::new(
        "cr_warped",
        base.domain.clone(),
        Arc::new(CrWarpedMap { base: base.map.clone(), a, profile }),
        ambient,
    )?
    .with_param("A", a)
    .with_claim(Claim::new(ClaimKind::ConstantRatio, ddt.clone(), Some(c.sqrt() / a.abs())));
    let spec = hypersurface_pd(spec, &ddt);
    spec.check_regular(CHECK_GRID)?;
    Ok(spec)
}

/// `Ξ(x, γ(s)) = Σ γ_i(s) ξ_i(x) + γ_{k+1}(s) φ(x)`, followed by `γ_{k+2}(s)` (product
/// target) or scaled by `e^{γ_{k+2}(s)}` (radial target).
struct ClassAMap {
    frame: NormalFrame,
    curve: CurveSpec,
    radial: bool,
}

impl Formula for ClassAMap {
    fn dim_in(&self) -> usize {
        self.frame.base_dim() + 1
    }

    fn dim_out(&self) -> usize {
        let d = self.frame.form.embed_dim(self.frame.n);
        if self.radial {
            d
        } else {
            d + 1
        }
    }

    fn apply<D: Real>(&self, u: &[D]) -> Vec<D> {
        let bd = self.frame.base_dim();
        let (x, s) = (&u[..bd], u[bd]);
        let g = self.curve.eval(s);
        let k = self.frame.k();
        let mut out: Vec<D> = D::call(&*self.frame.base, x).into_iter().map(|v| v * g[k]).collect();
        for (i, xi) in self.frame.xis.iter().enumerate() {
            for (o, v) in out.iter_mut().zip(D::call(&**xi, x)) {
                *o += v * g[i];
            }
        }
        if self.radial {
            let e = g[k + 1].exp();
            out.iter_mut().for_each(|v| *v *= e);
        } else {
            out.push(g[k + 1]);
        }
        out
    }

    fn analytic(&self) -> bool {
        self.frame.base.is_analytic() && self.frame.xis.iter().all(|m| m.is_analytic())
    }
}

fn class_a_checks(frame: &NormalFrame, curve: &CurveSpec, s_range: (f64, f64)) -> Result<Vec<f64>> {
    if frame.form != curve.form {
        return Err(GeomError::Precondition("frame and curve live in different space forms".into()));
    }
    if frame.k() != curve.k() {
        return Err(GeomError::DimensionMismatch { expected: frame.k(), got: curve.k() });
    }
    let samples = s_samples(s_range);
    let r = curve.constraint_residual(&samples);
    if r > 1e-9 {
        return Err(GeomError::Precondition(format!("curve violates its quadratic constraint ({r:e})")));
    }
    if curve.min_last_speed(&samples) < 1e-9 {
        return Err(GeomError::Precondition("the last component of the curve has vanishing derivative".into()));
    }
    Ok(samples)
}

fn slope(p: &Profile) -> Option<f64> {
    match p {
        Profile::Poly(c) if p.is_linear() => Some(c[1]),
        _ => None,
    }
}

/// `f(x, s) = (Ξ(x, γ(s)), γ_{k+2}(s))` into `Q^n_ε × ℝ`.
pub fn class_a(frame: &NormalFrame, curve: &CurveSpec, s_range: (f64, f64)) -> Result<ImmersionSpec> {
    let samples = class_a_checks(frame, curve, s_range)?;
    let ambient = AmbientSpace::product(frame.form, frame.n);
    let ddt = AmbientField::ddt(&ambient)?;
    let mut domain = frame.x_domain.clone();
    domain.push(s_range);
    let mut spec = ImmersionSpec::new(
        "class_a",
        domain,
        Arc::new(ClassAMap { frame: frame.clone(), curve: curve.clone(), radial: false }),
        ambient,
    )?
    .with_claim(Claim::new(ClaimKind::PrincipalDirection, ddt.clone(), None));
    if let Some(a) = slope(&curve.last) {
        spec = spec.with_param("A", a);
        if curve.unit_speed_projection(&samples) {
            spec = spec.with_claim(Claim::new(ClaimKind::ConstantRatio, ddt.clone(), Some(1.0 / a.abs())));
        }
        if curve.geodesic_projection(&samples) {
            spec = spec.with_claim(Claim::new(ClaimKind::NormalParallel, ddt, None));
        }
    }
    spec.check_regular(CHECK_GRID)?;
    Ok(spec)
}

/// `f(x, s) = e^{γ_{k+2}(s)} Ξ(x, γ(s))` into `ℝ^{n+1}∖{0}`, for frames in `Sⁿ`.
pub fn pd_radial(frame: &NormalFrame, curve: &CurveSpec, s_range: (f64, f64)) -> Result<ImmersionSpec> {
    if frame.form != SpaceForm::Sphere {
        return Err(GeomError::Precondition("radial constructions need a frame in a sphere".into()));
    }
    let s_range = curve.last.clip(s_range.0, s_range.1, 0.05);
    let samples = class_a_checks(frame, curve, s_range)?;
    let ambient = AmbientSpace::euclidean(frame.n + 1);
    let radial = AmbientField::radial(&ambient)?;
    let mut domain = frame.x_domain.clone();
    domain.push(s_range);
    let mut spec = ImmersionSpec::new(
        "pd_radial",
        domain,
        Arc::new(ClassAMap { frame: frame.clone(), curve: curve.clone(), radial: true }),
        ambient,
    )?
    .with_claim(Claim::new(ClaimKind::PrincipalDirection, radial.clone(), None));
    if let Some(a) = slope(&curve.last) {
        spec = spec.with_param("A", a);
        if curve.unit_speed_projection(&samples) {
            spec = spec.with_claim(Claim::new(ClaimKind::ConstantRatio, radial.clone(), Some(1.0 / a.abs())));
        }
    }
    if let Profile::LogSec(c) = curve.last {
        spec = spec.with_param("C", c);
        if curve.geodesic_projection(&samples) && curve.unit_speed_projection(&samples) {
            spec = spec.with_claim(Claim::new(ClaimKind::NormalParallel, radial, None));
        }
    }
    spec.check_regular(CHECK_GRID)?;
    Ok(spec)
}

/// Radial factor `ρ(s)` of `f = ρ(s) φ_s`.
#[derive(Clone, Debug, PartialEq)]
pub enum RadialProfile {
    /// `e^{A s}`.
    Linear(f64),
    /// `sec(s + C)`.
    LogSec(f64),
    /// `√(1 + G(s + C)²)`.
    SqrtG(f64),
    /// `e^{a(s)}`.
    Custom(Profile),
}

impl RadialProfile {
    pub fn eval<D: Real>(&self, s: D) -> D {
        match self {
            RadialProfile::Linear(a) => (s * *a).exp(),
            RadialProfile::LogSec(c) => (s + *c).cos().recip(),
            RadialProfile::SqrtG(c) => {
                let g = super::family::g_inverse_real(s + *c);
                (g * g + 1.0).sqrt()
            }
            RadialProfile::Custom(p) => p.eval(s).exp(),
        }
    }

    /// The part of `s_range` where the profile is defined, kept `margin` away from singular ends.
    pub fn clip(&self, s_range: (f64, f64), margin: f64) -> (f64, f64) {
        let (lo, hi) = s_range;
        match self {
            RadialProfile::LogSec(c) => Profile::LogSec(*c).clip(lo, hi, margin),
            RadialProfile::SqrtG(c) => (lo.max(-c + margin), hi),
            RadialProfile::Custom(p) => p.clip(lo, hi, margin),
            RadialProfile::Linear(_) => (lo, hi),
        }
    }
}

struct RadialGraphMap {
    family: HypersurfaceFamily,
    profile: RadialProfile,
}

impl Formula for RadialGraphMap {
    fn dim_in(&self) -> usize {
        Formula::dim_in(&self.family)
    }

    fn dim_out(&self) -> usize {
        self.family.embed_dim()
    }

    fn apply<D: Real>(&self, u: &[D]) -> Vec<D> {
        let r = self.profile.eval(u[0]);
        self.family.apply(u).into_iter().map(|v| v * r).collect()
    }

    fn analytic(&self) -> bool {
        self.family.analytic()
    }
}

/// `f(s, x) = ρ(s) φ_s(x)` into `ℝ^{n+1}∖{0}` for a parallel family in `Sⁿ`.
pub fn radial_graph(
    family: &HypersurfaceFamily,
    profile: RadialProfile,
    s_range: (f64, f64),
) -> Result<ImmersionSpec> {
    if family.form != SpaceForm::Sphere {
        return Err(GeomError::Precondition("radial graphs need a family in a sphere".into()));
    }
    let s_range = profile.clip(s_range, 0.05);
    if !(s_range.0 < s_range.1) {
        return Err(GeomError::OutsideDomain(vec![s_range.0, s_range.1]));
    }
    if let RadialProfile::SqrtG(c) = profile {
        for s in s_samples(s_range) {
            super::family::g_inverse(s + c)?;
        }
    }
    let unit = (family.speed - 1.0).abs() < 1e-12;
    let ambient = AmbientSpace::euclidean(family.n + 1);
    let radial = AmbientField::radial(&ambient)?;
    let mut domain = vec![s_range];
    domain.extend_from_slice(&family.x_domain);
    let mut spec = ImmersionSpec::new(
        "radial_graph",
        domain,
        Arc::new(RadialGraphMap { family: family.clone(), profile: profile.clone() }),
        ambient,
    )?;
    spec = match profile {
        RadialProfile::Linear(a) => {
            if a == 0.0 {
                return Err(GeomError::Precondition("A must be non-zero".into()));
            }
            spec.with_param("A", a).with_claim(Claim::new(
                ClaimKind::ConstantRatio,
                radial.clone(),
                Some(family.speed / a.abs()),
            ))
        }
        RadialProfile::LogSec(c) if unit => spec
            .with_param("C", c)
            .with_claim(Claim::new(ClaimKind::NConstant, radial.clone(), Some(1.0))),
        RadialProfile::SqrtG(c) if unit => spec
            .with_param("C", c)
            .with_claim(Claim::new(ClaimKind::TConstant, radial.clone(), Some(1.0))),
        RadialProfile::Custom(_) => spec,
        _ => {
            return Err(GeomError::Precondition(
                "log_sec and sqrt_G profiles need a unit-speed family".into(),
            ))
        }
    };
    let spec = hypersurface_pd(spec, &radial);
    spec.check_regular(CHECK_GRID)?;
    Ok(spec)
}

/// `Ψ ∘ f`, with constant-ratio and principal-direction claims moved to the image fields.
///
/// Claims on fields with a registered partner `Ψ_* Z = Ẑ ∘ Ψ` use `Ẑ`; other fields are pushed
/// forward numerically. Claims that are not conformally invariant are dropped.
pub fn compose(map: Arc<ConformalMapSpec>, f: &ImmersionSpec) -> Result<ImmersionSpec> {
    if f.ambient != map.source {
        return Err(GeomError::Precondition(format!(
            "{} lands in {}, {} starts on {}",
            f.name, f.ambient, map.name, map.source
        )));
    }
    for u in Grid::new(&f.domain, CHECK_GRID).points() {
        let p = f.eval(&u)?;
        if map.apply(&p, Direction::Forward).is_err() {
            return Err(GeomError::ImageEscapes { immersion: f.name.clone(), map: map.name.clone() });
        }
    }
    let mut claims = Vec::new();
    for c in f.claims.iter().filter(|c| c.kind.is_conformally_invariant()) {
        let Some(z) = &c.field else { continue };
        claims.push(Claim::new(c.kind, transport_field(&map, z)?, c.expected));
    }
    let composed = Composed { outer: map.forward_map(), inner: f.map.clone() };
    let mut spec = ImmersionSpec::new(
        format!("{}({})", map.name, f.name),
        f.domain.clone(),
        Arc::new(composed),
        map.target.clone(),
    )?;
    spec.claims = claims;
    spec.params = f.params.clone();
    Ok(spec)
}

/// The field `Ẑ` on the target with `Ψ_* Z = Ẑ ∘ Ψ`: a registered partner when there is one,
/// the numerical pushforward otherwise.
pub fn transport_field(map: &Arc<ConformalMapSpec>, z: &AmbientField) -> Result<AmbientField> {
    match map.related_fields()?.into_iter().find(|(src, _)| src == z) {
        Some((_, tgt)) => Ok(tgt),
        None => AmbientField::pushforward(map.clone(), z.clone()),
    }
}

/// Re-reads an immersion into `ℝⁿ × ℝ` as one into `ℝ^{n+1}`; `∂/∂t` becomes the last
/// coordinate field.
pub fn flatten(f: &ImmersionSpec) -> Result<ImmersionSpec> {
    let AmbientSpace::Product { form: SpaceForm::Euclidean, n } = f.ambient else {
        return Err(GeomError::Precondition(format!("{} is not a flat product", f.ambient)));
    };
    let flat = AmbientSpace::euclidean(n + 1);
    let mut out = f.clone();
    out.ambient = flat.clone();
    for c in out.claims.iter_mut() {
        if let Some(z) = &c.field {
            if z.name() == "ddt" {
                c.field = Some(AmbientField::coordinate(&flat, n + 1)?);
            } else {
                c.field = Some(AmbientField::parse(z.name(), &flat)?);
            }
        }
    }
    Ok(out)
}

/// `Ψ ∘ cr_product(φ_s, A)` for a parallel family in `Hⁿ` and the Killing cover `Ψ`.
pub fn killing_from_family(family: &HypersurfaceFamily, a: f64, s_range: (f64, f64)) -> Result<ImmersionSpec> {
    if family.form != SpaceForm::Hyperbolic {
        return Err(GeomError::Precondition("the Killing construction needs a family in H^n".into()));
    }
    let cr = cr_product(&family_immersion(family, s_range)?, a)?;
    let mut spec = compose(Arc::new(ConformalMapSpec::killing_cover(family.n)), &cr)?;
    spec.check_regular(CHECK_GRID)?;
    spec.name = "killing_surface".into();
    Ok(spec)
}

/// The horocycle family under the Killing cover: `(t, e^{−s} cos As, e^{−s} sin As)` in the
/// chart `(s, t)`.
pub fn killing_horocycle(a: f64) -> Result<ImmersionSpec> {
    let family = HypersurfaceFamily::shipped(BaseCurve::Horocycle);
    let mut spec = killing_from_family(&family, a, (-1.0, 1.0))?;
    spec.name = "killing_horocycle".into();
    Ok(spec)
}

pub fn killing_geodesic(a: f64) -> Result<ImmersionSpec> {
    let family = HypersurfaceFamily::shipped(BaseCurve::HypGeodesic);
    let mut spec = killing_from_family(&family, a, (-1.0, 1.0))?;
    spec.name = "killing_geodesic".into();
    Ok(spec)
}

#[derive(Clone, Copy)]
enum Closed {
    LogSpiralCylinder(f64),
    Dini(f64),
    Sphere,
    Cylinder,
    Cone(f64),
}

struct ClosedMap(Closed);

impl Formula for ClosedMap {
    fn dim_in(&self) -> usize {
        2
    }

    fn dim_out(&self) -> usize {
        3
    }

    fn apply<D: Real>(&self, u: &[D]) -> Vec<D> {
        let (a, b) = (u[0], u[1]);
        match self.0 {
            Closed::LogSpiralCylinder(k) => {
                let r = (-b).exp();
                vec![a, r * (b * k).cos(), r * (b * k).sin()]
            }
            Closed::Dini(sigma) => {
                let (cs, sn) = (sigma.cos(), sigma.sin());
                let rho = (a - b * sn) / cs;
                let sech = rho.cosh().recip();
                vec![b.cos() * sech * cs, b.sin() * sech * cs, a - rho.tanh() * cs]
            }
            Closed::Sphere => vec![a.sin() * b.cos(), a.sin() * b.sin(), a.cos()],
            Closed::Cylinder => vec![a.cos(), a.sin(), b],
            Closed::Cone(k) => vec![a * k.cos() * b.cos(), a * k.cos() * b.sin(), a * k.sin()],
        }
    }
}

fn closed(name: &str, kind: Closed, domain: Vec<(f64, f64)>) -> Result<ImmersionSpec> {
    ImmersionSpec::new(name, domain, Arc::new(ClosedMap(kind)), AmbientSpace::euclidean(3))
}

/// The cylinder over a logarithmic spiral, `(t, e^{−s} cos As, e^{−s} sin As)` in the chart `(t, s)`.
pub fn log_spiral_cylinder(a: f64) -> Result<ImmersionSpec> {
    if a == 0.0 {
        return Err(GeomError::Precondition("A must be non-zero".into()));
    }
    let spec = closed("log_spiral_cylinder", Closed::LogSpiralCylinder(a), vec![(-1.0, 1.0), (-1.0, 1.0)])?;
    let k = AmbientField::killing(&spec.ambient, 2, 3)?;
    Ok(spec
        .with_param("A", a)
        .with_claim(Claim::new(ClaimKind::ConstantRatio, k.clone(), Some(1.0 / a.abs())))
        .with_claim(Claim::new(ClaimKind::PrincipalDirection, k, None)))
}

/// Dini's helicoidal surface of curvature `−1`, in the chart `(t, s)` with `s` the rotation
/// angle about the third axis; `σ = 0` gives the tractrix rotated about that axis.
pub fn dini(sigma: f64) -> Result<ImmersionSpec> {
    if !(sigma.abs() < PI / 2.0) {
        return Err(GeomError::Precondition("sigma must lie in (-pi/2, pi/2)".into()));
    }
    let spec = closed("dini", Closed::Dini(sigma), vec![(0.5, 2.5), (-1.0, 1.0)])?;
    let k = AmbientField::killing(&spec.ambient, 1, 2)?;
    let spec = spec
        .with_param("sigma", sigma)
        .with_claim(Claim::new(ClaimKind::ConstantRatio, k.clone(), Some(sigma.tan().abs())))
        .with_claim(Claim::new(ClaimKind::PrincipalDirection, k, None))
        .with_claim(Claim::gauss(-1.0));
    spec.check_regular(CHECK_GRID)?;
    Ok(spec)
}

/// Unit sphere in `(θ, φ)`; the position field is everywhere normal.
pub fn sphere() -> Result<ImmersionSpec> {
    let spec = closed("sphere", Closed::Sphere, vec![(0.3, PI - 0.3), (0.0, 6.0)])?;
    let r = AmbientField::radial(&spec.ambient)?;
    Ok(spec
        .with_claim(Claim::new(ClaimKind::ConstantRatio, r.clone(), None))
        .with_claim(Claim::new(ClaimKind::NConstant, r.clone(), Some(1.0)))
        .with_claim(Claim::new(ClaimKind::TConstant, r, Some(0.0)))
        .with_claim(Claim::gauss(1.0)))
}

/// Round cylinder `(cos φ, sin φ, z)`; the axis field is tangent.
pub fn cylinder() -> Result<ImmersionSpec> {
    let spec = closed("cylinder", Closed::Cylinder, vec![(0.0, 6.0), (0.5, 2.0)])?;
    let e3 = AmbientField::coordinate(&spec.ambient, 3)?;
    Ok(spec
        .with_claim(Claim::new(ClaimKind::ConstantRatio, e3.clone(), Some(0.0)))
        .with_claim(Claim::new(ClaimKind::PrincipalDirection, e3, None))
        .with_claim(Claim::gauss(0.0)))
}

/// Cone `s(cos a cos x, cos a sin x, sin a)`; the position field is tangent.
pub fn cone(angle: f64) -> Result<ImmersionSpec> {
    let spec = closed("cone", Closed::Cone(angle), vec![(0.5, 2.0), (0.0, 6.0)])?;
    spec.check_regular(CHECK_GRID)?;
    let r = AmbientField::radial(&spec.ambient)?;
    Ok(spec
        .with_param("angle", angle)
        .with_claim(Claim::new(ClaimKind::ConstantRatio, r.clone(), Some(0.0)))
        .with_claim(Claim::new(ClaimKind::PrincipalDirection, r, None)))
}

/// `s ↦ (cos λs, sin λs, A s)` in `S¹ × ℝ`.
pub fn helix(a: f64, speed: f64) -> Result<ImmersionSpec> {
    let family = HypersurfaceFamily::shipped(BaseCurve::Point(SpaceForm::Sphere)).with_speed(speed);
    let mut spec = cr_product(&family_immersion(&family, (-2.0, 2.0))?, a)?;
    spec.name = "helix".into();
    Ok(spec)
}

/// `e^{A s}(cos s, sin s)` in `ℝ²∖{0}`.
pub fn log_spiral(a: f64) -> Result<ImmersionSpec> {
    let family = HypersurfaceFamily::shipped(BaseCurve::Point(SpaceForm::Sphere));
    let mut spec = radial_graph(&family, RadialProfile::Linear(a), (-2.0, 2.0))?;
    spec.name = "log_spiral".into();
    Ok(spec)
}

/// The curve through a point in `S¹` along the warped line: a loxodrome of `S²` after
/// [`ConformalMapSpec::warp_sphere`], cutting meridians at angle `θ`.
pub fn loxodrome(theta: f64) -> Result<ImmersionSpec> {
    let (s, c) = theta.sin_cos();
    if s == 0.0 || c == 0.0 {
        return Err(GeomError::Precondition("theta must avoid multiples of pi/2".into()));
    }
    let family = HypersurfaceFamily::shipped(BaseCurve::Point(SpaceForm::Sphere)).with_speed(c);
    let base = family_immersion(&family, (-1.5, 1.5))?;
    let profile = Mercator::closed_form(crate::spaces::Warping::Sin, 0.0)?;
    let warped = cr_warped(&base, s, profile)?;
    let mut spec = compose(Arc::new(ConformalMapSpec::warp_sphere(1)), &warped)?;
    spec.name = "loxodrome".into();
    Ok(spec.with_param("theta", theta))
}

/// The shipped `k = 1` frame and a curve `γ̄(s) = (S_ε(β(s)), C_ε(β(s)))`, `γ_3 = last(s)`.
pub fn arc_curve(form: SpaceForm, beta: Profile, last: Profile) -> Result<CurveSpec> {
    CurveSpec::new(form, Projection::Arc { beta }, last)
}

pub fn killing_pd(beta: Profile, last: Profile) -> Result<ImmersionSpec> {
    let frame = NormalFrame::shipped(BaseCurve::HypGeodesic);
    let curve = arc_curve(SpaceForm::Hyperbolic, beta, last)?;
    let a = class_a(&frame, &curve, (-0.8, 0.8))?;
    let mut spec = compose(Arc::new(ConformalMapSpec::killing_cover(2)), &a)?;
    spec.name = "killing_pd".into();
    Ok(spec)
}

/// A constant-ratio surface of `ℝ² × ℝ` (the family of circles about the origin) read in
/// `ℝ³` and inverted in the unit sphere.
pub fn inversion_cr(a: f64) -> Result<ImmersionSpec> {
    let family = HypersurfaceFamily::shipped(BaseCurve::Circle(1.0));
    let cr = flatten(&cr_product(&family_immersion(&family, (-0.5, 0.5))?, a)?)?;
    let mut spec = compose(Arc::new(ConformalMapSpec::sphere_inversion(3)), &cr)?;
    spec.name = "inversion_cr".into();
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::from_pseudo_coordinates;
    use approx::assert_abs_diff_eq;

    fn close(a: &[f64], b: &[f64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() <= tol, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn cr_product_rejects_zero_slope() {
        let fam = HypersurfaceFamily::shipped(BaseCurve::Latitude(0.0));
        let base = family_immersion(&fam, (-1.0, 1.0)).unwrap();
        assert!(cr_product(&base, 0.0).is_err());
        let spec = cr_product(&base, 2.0).unwrap();
        assert_eq!(spec.claim(ClaimKind::ConstantRatio).unwrap().expected, Some(0.5));
    }

    #[test]
    fn non_polar_base_is_rejected() {
        let fam = HypersurfaceFamily::shipped(BaseCurve::Latitude(0.0));
        let base = family_immersion(&fam, (-1.0, 1.0)).unwrap().with_polar(2.0);
        assert!(cr_product(&base, 1.0).is_err());
    }

    #[test]
    fn helix_is_a_helix() {
        let h = helix(1.5, 1.0).unwrap();
        close(&h.eval(&[0.7]).unwrap(), &[0.7f64.cos(), 0.7f64.sin(), 1.05], 1e-15);
    }

    #[test]
    fn log_spiral_values() {
        let f = log_spiral(1.0).unwrap();
        let s = 0.4f64;
        close(&f.eval(&[s]).unwrap(), &[s.exp() * s.cos(), s.exp() * s.sin()], 1e-14);
    }

    #[test]
    fn killing_horocycle_matches_log_spiral_cylinder() {
        let a = 1.3;
        let k = killing_horocycle(a).unwrap();
        let cyl = log_spiral_cylinder(a).unwrap();
        for (s, t) in [(0.2, -0.5), (-0.7, 0.3)] {
            close(&k.eval(&[s, t]).unwrap(), &cyl.eval(&[t, s]).unwrap(), 1e-13);
        }
        let names: Vec<_> = k.claims.iter().map(|c| c.field.as_ref().unwrap().name().to_string()).collect();
        assert!(names.iter().all(|n| n == "killing:2,3"), "{names:?}");
    }

    #[test]
    fn horocycle_family_under_cover_uses_pseudo_coordinates() {
        let fam = HypersurfaceFamily::shipped(BaseCurve::Horocycle);
        let p = fam.member(0.0, &[0.5]);
        close(&p, &from_pseudo_coordinates(&[1.0, 0.5, 1.25]), 1e-15);
    }

    #[test]
    fn dini_tractrix_slice() {
        let d = dini(0.0).unwrap();
        for t in [0.6, 1.0, 2.0] {
            close(&d.eval(&[t, 0.0]).unwrap(), &[1.0 / f64::cosh(t), 0.0, t - f64::tanh(t)], 1e-15);
        }
    }

    #[test]
    fn pd_radial_equals_radial_exp_of_class_a() {
        let frame = NormalFrame::shipped(BaseCurve::Latitude(0.3));
        let curve = arc_curve(SpaceForm::Sphere, Profile::linear(1.0, 0.1), Profile::linear(0.7, 0.0)).unwrap();
        let direct = pd_radial(&frame, &curve, (-1.0, 1.0)).unwrap();
        let a = class_a(&frame, &curve, (-1.0, 1.0)).unwrap();
        let via = compose(Arc::new(ConformalMapSpec::radial_exp(3)), &a).unwrap();
        for u in [[0.3, 0.2], [2.0, -0.6]] {
            close(&direct.eval(&u).unwrap(), &via.eval(&u).unwrap(), 1e-13);
        }
        assert_eq!(via.claims.len(), 2);
        assert!(via.claims.iter().all(|c| c.field.as_ref().unwrap().name() == "radial"));
    }

    #[test]
    fn class_a_claims_follow_curve_flags() {
        let frame = NormalFrame::shipped(BaseCurve::Latitude(0.3));
        let geo = arc_curve(SpaceForm::Sphere, Profile::linear(1.0, 0.0), Profile::linear(2.0, 0.0)).unwrap();
        let spec = class_a(&frame, &geo, (-1.0, 1.0)).unwrap();
        assert!(spec.claim(ClaimKind::ConstantRatio).is_some());
        assert!(spec.claim(ClaimKind::NormalParallel).is_some());
        let bent = arc_curve(SpaceForm::Sphere, Profile::Poly(vec![0.0, 1.0, 0.3]), Profile::linear(2.0, 0.0)).unwrap();
        let spec = class_a(&frame, &bent, (-1.0, 1.0)).unwrap();
        assert!(spec.claim(ClaimKind::ConstantRatio).is_none());
        assert!(spec.claim(ClaimKind::PrincipalDirection).is_some());
    }

    #[test]
    fn constant_last_component_is_rejected() {
        let frame = NormalFrame::shipped(BaseCurve::Latitude(0.3));
        let curve = arc_curve(SpaceForm::Sphere, Profile::linear(1.0, 0.0), Profile::constant(1.0)).unwrap();
        assert!(pd_radial(&frame, &curve, (-1.0, 1.0)).is_err());
        assert!(class_a(&frame, &curve, (-1.0, 1.0)).is_err());
    }

    #[test]
    fn mismatched_frame_and_curve_are_rejected() {
        let frame = NormalFrame::shipped(BaseCurve::Latitude3(0.3));
        let curve = arc_curve(SpaceForm::Sphere, Profile::linear(1.0, 0.0), Profile::linear(1.0, 0.0)).unwrap();
        assert!(class_a(&frame, &curve, (-1.0, 1.0)).is_err());
    }

    #[test]
    fn radial_profiles_at_origin() {
        assert_abs_diff_eq!(RadialProfile::LogSec(0.0).eval(0.0), 1.0);
        assert_abs_diff_eq!(RadialProfile::SqrtG(0.0).eval(1e-12), 1.0, epsilon = 1e-6);
    }

    #[test]
    fn compose_rejects_wrong_source() {
        let s = sphere().unwrap();
        assert!(compose(Arc::new(ConformalMapSpec::radial_exp(3)), &s).is_err());
    }

    #[test]
    fn compose_detects_escaping_image() {
        // t = s reaches 1, past the blow-up of the sinh profile through F(0) = 1.
        let fam = HypersurfaceFamily::shipped(BaseCurve::Latitude(0.0));
        let cr = cr_product(&family_immersion(&fam, (-1.0, 1.0)).unwrap(), 1.0).unwrap();
        let m = Mercator::from_initial(crate::spaces::Warping::Sinh, 0.0, 1.0).unwrap();
        let map = ConformalMapSpec::mercator(m, SpaceForm::Sphere, 2);
        let err = compose(Arc::new(map), &cr).unwrap_err();
        assert!(matches!(err, GeomError::ImageEscapes { .. }), "{err}");
    }

    #[test]
    fn loxodrome_matches_classical_formula() {
        let theta = PI / 4.0;
        let f = loxodrome(theta).unwrap();
        let cot = 1.0 / theta.tan();
        for s in [-1.0, 0.2, 1.1] {
            let u = 2.0 * (theta.sin() * s).exp().atan();
            let phase = cot * (u / 2.0).tan().ln();
            let want = [phase.cos() * u.sin(), phase.sin() * u.sin(), u.cos()];
            close(&f.eval(&[s]).unwrap(), &want, 1e-13);
        }
    }
}
