//! Cross-checks that tie several reports together: the equivalences for parallel fields,
//! invariance under the conformal atlas, and the hypersurface implication CR ⇒ PD.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    decompose, geodesic_residual, length_report, pd_residual, ratio_report, weingarten_residual, Grid, Part,
    VerifyOptions,
};
use crate::atlas::{default_initial, ConformalMapSpec, Mercator};
use crate::error::{GeomError, Result};
use crate::fields::AmbientField;
use crate::gallery::{
    by_name, class_a, compose, cr_product, cr_warped, family_immersion, flatten, names, transport_field,
    BaseCurve, ClaimKind, CurveSpec, GalleryParams, HypersurfaceFamily, ImmersionSpec, NormalFrame, Profile,
    Projection,
};
use crate::spaces::{AmbientSpace, SpaceForm};

/// Verdicts of the equivalent conditions for one surface with a parallel field.
#[derive(Clone, Debug)]
pub struct EquivalenceCase {
    pub label: String,
    /// Built to have the constant-ratio property.
    pub expected: bool,
    pub ratio: bool,
    pub tangent_length: bool,
    pub weingarten: bool,
    pub geodesic: bool,
    /// Largest residual among the three equivalent conditions.
    pub worst: f64,
}

impl EquivalenceCase {
    pub fn agree(&self) -> bool {
        self.tangent_length == self.weingarten && self.weingarten == self.geodesic && self.ratio == self.geodesic
    }
}

/// A class-𝒜 surface in `ℝ² × ℝ` over a circle of radius `r`, with `γ = (β, 1, a)`.
pub fn flat_class_a(r: f64, beta: [f64; 3], last: [f64; 3]) -> Result<ImmersionSpec> {
    let frame = NormalFrame::shipped(BaseCurve::Circle(r));
    let curve = CurveSpec::new(
        SpaceForm::Euclidean,
        Projection::Arc { beta: Profile::Poly(beta.to_vec()) },
        Profile::Poly(last.to_vec()),
    )?;
    class_a(&frame, &curve, (-0.4, 0.4))
}

/// `count` randomized flat-ambient surfaces, half of them built to have constant ratio
/// for `∂/∂t`, each checked for `‖Zᵀ‖` constancy, `A_{Z⊥}Zᵀ = 0` and geodesic integral curves.
pub fn parallel_field_equivalences(count: usize, seed: u64, per_axis: usize, tol: f64) -> Result<Vec<EquivalenceCase>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let opts = VerifyOptions { tol, ..VerifyOptions::default() };
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let sign = |rng: &mut ChaCha8Rng| if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let r = rng.random_range(1.0..2.0);
        let b1 = sign(&mut rng) * rng.random_range(0.5..1.5);
        let a1 = sign(&mut rng) * rng.random_range(0.5..2.0);
        let cr = i % 2 == 0;
        let bend = sign(&mut rng) * rng.random_range(0.2..0.6);
        // Bend exactly one of the two components so the ratio cannot stay constant by accident.
        let (b2, a2) = match (cr, rng.random_bool(0.5)) {
            (true, _) => (0.0, 0.0),
            (false, true) => (bend, 0.0),
            (false, false) => (0.0, bend),
        };
        let f = flat_class_a(r, [0.0, b1, b2], [0.0, a1, a2])?;
        let z = AmbientField::ddt(&f.ambient)?;
        let grid = Grid::new(&f.domain, per_axis);
        let ratio = ratio_report(&f, &z, &grid, &opts)?;
        let len = length_report(&f, &z, Part::Tangent, &grid, &opts, None)?;
        let wein = weingarten_residual(&f, &z, &grid, &opts)?;
        let geo = geodesic_residual(&f, &z, &grid, &opts)?;
        out.push(EquivalenceCase {
            label: format!("r={r:.3} b=({b1:.3},{b2:.3}) a=({a1:.3},{a2:.3})"),
            expected: cr,
            ratio: ratio.passed(),
            tangent_length: len.passed(),
            weingarten: wein.passed(),
            geodesic: geo.passed(),
            worst: len.summary.max.max(wein.summary.max).max(geo.summary.max),
        });
    }
    Ok(out)
}

/// Comparison of one immersion with its image under an atlas map.
#[derive(Clone, Debug)]
pub struct InvarianceCase {
    pub immersion: String,
    pub map: String,
    pub field: String,
    pub ratio_verdicts: (bool, bool),
    pub pd_verdicts: (bool, bool),
    /// Largest pointwise difference of the sampled ratios.
    pub ratio_diff: f64,
    /// Largest difference of the chart coefficients of the tangent parts.
    pub coeff_diff: f64,
}

impl InvarianceCase {
    pub fn holds(&self, tol: f64) -> bool {
        self.ratio_verdicts.0 == self.ratio_verdicts.1
            && self.pd_verdicts.0 == self.pd_verdicts.1
            && self.ratio_diff <= tol
            && self.coeff_diff <= tol
    }
}

/// Ratio and principal-direction reports for `f` against `Z`, and for `Ψ ∘ f` against the
/// transported field.
pub fn invariance_case(
    f: &ImmersionSpec,
    map: ConformalMapSpec,
    z: &AmbientField,
    per_axis: usize,
    opts: &VerifyOptions,
) -> Result<InvarianceCase> {
    let map = Arc::new(map);
    let g = compose(map.clone(), f)?;
    let zh = transport_field(&map, z)?;
    let grid = Grid::new(&f.domain, per_axis);
    let (r0, r1) = (ratio_report(f, z, &grid, opts)?, ratio_report(&g, &zh, &grid, opts)?);
    let (p0, p1) = (pd_residual(f, z, &grid, opts)?, pd_residual(&g, &zh, &grid, opts)?);
    let ratio_diff = r0
        .values
        .iter()
        .zip(&r1.values)
        .map(|(a, b)| if a.is_nan() && b.is_nan() { 0.0 } else { (a - b).abs() })
        .fold(0.0, f64::max);
    let mut coeff_diff = 0.0f64;
    for u in grid.points() {
        let (d0, d1) = (decompose(f, z, &u)?, decompose(&g, &zh, &u)?);
        coeff_diff = coeff_diff.max((&d0.tangent_coeffs - &d1.tangent_coeffs).amax());
    }
    Ok(InvarianceCase {
        immersion: f.name.clone(),
        map: map.name.clone(),
        field: z.name().to_string(),
        ratio_verdicts: (r0.passed(), r1.passed()),
        pd_verdicts: (p0.passed(), p1.passed()),
        ratio_diff,
        coeff_diff,
    })
}

fn base_family(form: SpaceForm) -> HypersurfaceFamily {
    HypersurfaceFamily::shipped(match form {
        SpaceForm::Sphere => BaseCurve::Latitude(0.2),
        SpaceForm::Hyperbolic => BaseCurve::HypGeodesic,
        SpaceForm::Euclidean => BaseCurve::Circle(1.0),
    })
}

fn entry(name: &str, params: &[(&str, f64)]) -> Result<ImmersionSpec> {
    let p: GalleryParams = params.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    by_name(name, &p)
}

/// Immersions with a field to test against each applicable atlas map: constant-ratio
/// constructions on the map's source plus non-CR controls where the source allows one.
pub fn invariance_inputs(map: &ConformalMapSpec) -> Result<Vec<(ImmersionSpec, AmbientField)>> {
    let mut out = Vec::new();
    match &map.source {
        AmbientSpace::Product { form, n: 2 } => {
            let base = family_immersion(&base_family(*form), (-1.0, 1.0))?;
            let f = cr_product(&base, 0.8)?;
            let ddt = AmbientField::ddt(&f.ambient)?;
            out.push((f, ddt.clone()));
            if *form == SpaceForm::Sphere {
                out.push((entry("class_a", &[])?, ddt.clone()));
                out.push((entry("class_a", &[("b2", 0.3)])?, ddt));
            }
        }
        AmbientSpace::Product { form: SpaceForm::Sphere, n: 3 } => {
            let f = entry("class_a_codim2", &[])?;
            let ddt = AmbientField::ddt(&f.ambient)?;
            out.push((f, ddt));
        }
        AmbientSpace::Warped { warping, form, n: 2 } => {
            let base = family_immersion(&base_family(*form), (-1.0, 1.0))?;
            let profile = Mercator::from_initial(warping.clone(), 0.0, default_initial(warping))?;
            let f = cr_warped(&base, 0.5, profile)?;
            let ddt = AmbientField::ddt(&f.ambient)?;
            out.push((f, ddt));
        }
        AmbientSpace::Flat(sig) if sig.dim() == 3 && sig.is_euclidean() => {
            let base = family_immersion(&base_family(SpaceForm::Euclidean), (-0.5, 0.5))?;
            let f = flatten(&cr_product(&base, 1.0)?)?;
            for i in 1..=3 {
                out.push((f.clone(), AmbientField::coordinate(&f.ambient, i)?));
            }
            let bent = entry("log_spiral_cylinder", &[])?;
            let k = AmbientField::killing(&bent.ambient, 2, 3)?;
            out.push((bent, k));
        }
        _ => {}
    }
    Ok(out)
}

/// Every atlas map used by the invariance suite, in the dimensions the gallery lives in.
pub fn invariance_maps() -> Vec<ConformalMapSpec> {
    let sin = Mercator::closed_form(crate::spaces::Warping::Sin, 0.0).expect("closed form");
    vec![
        ConformalMapSpec::radial_exp(3),
        ConformalMapSpec::radial_exp(4),
        ConformalMapSpec::mercator(sin, SpaceForm::Sphere, 2),
        ConformalMapSpec::killing_cover(2),
        ConformalMapSpec::warp_euclid(2),
        ConformalMapSpec::warp_sphere(2),
        ConformalMapSpec::warp_hyp_elliptic(2),
        ConformalMapSpec::warp_hyp_hyperbolic(2),
        ConformalMapSpec::warp_hyp_parabolic(2),
        ConformalMapSpec::sphere_inversion(3),
    ]
}

/// Runs [`invariance_case`] for every map and every input it accepts.
pub fn conformal_invariance(per_axis: usize, opts: &VerifyOptions) -> Result<Vec<InvarianceCase>> {
    let mut out = Vec::new();
    for map in invariance_maps() {
        let inputs = invariance_inputs(&map)?;
        if inputs.is_empty() {
            return Err(GeomError::Precondition(format!("no invariance inputs for {}", map.name)));
        }
        for (f, z) in inputs {
            out.push(invariance_case(&f, map.clone(), &z, per_axis, opts)?);
        }
    }
    Ok(out)
}

/// For every hypersurface in the gallery and every field it claims constant ratio for:
/// `(entry, field, ratio passed, principal direction passed)`.
pub fn hypersurface_implication(per_axis: usize, opts: &VerifyOptions) -> Result<Vec<(String, String, bool, bool)>> {
    let mut out = Vec::new();
    for name in names() {
        let f = by_name(name, &GalleryParams::new())?;
        if !f.is_hypersurface() {
            continue;
        }
        let grid = Grid::new(&f.domain, per_axis);
        for c in f.claims.iter().filter(|c| c.kind == ClaimKind::ConstantRatio) {
            let Some(z) = &c.field else { continue };
            let cr = ratio_report(&f, z, &grid, opts)?.passed();
            let pd = pd_residual(&f, z, &grid, opts)?.passed();
            out.push((name.to_string(), z.name().to_string(), cr, pd));
        }
    }
    Ok(out)
}
