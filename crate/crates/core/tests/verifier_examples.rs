//! Worked examples for the individual checks, with oracles computed independently here.

use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::DVector;
use subgeom::atlas::ConformalMapSpec;
use subgeom::fields::AmbientField;
use subgeom::gallery::{
    self, arc_curve, by_name, class_a, compose, cr_product, family_immersion, pd_radial, radial_graph,
    BaseCurve, CurveSpec, GalleryParams, HypersurfaceFamily, ImmersionSpec, NormalFrame, Profile, Projection,
    RadialProfile,
};
use subgeom::kernel::{FnMap, Formula, Real, Scheme};
use subgeom::spaces::{AmbientSpace, SpaceForm};
use subgeom::verify::*;

fn opts() -> VerifyOptions {
    VerifyOptions::default()
}

fn grid(f: &ImmersionSpec, n: usize) -> Grid {
    Grid::new(&f.domain, n)
}

fn entry(name: &str, params: &[(&str, f64)]) -> ImmersionSpec {
    let p: GalleryParams = params.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    by_name(name, &p).unwrap()
}

#[test]
fn cone_normal_part_is_trivially_parallel() {
    let c = gallery::cone(0.5).unwrap();
    let rad = AmbientField::radial(&c.ambient).unwrap();
    let r = normal_connection_residual(&c, &rad, &grid(&c, 7), Along::AllDirections, false, &opts()).unwrap();
    assert!(r.summary.max < 1e-9, "{}", r.summary.max);
}

#[test]
fn parallel_radial_normal_needs_a_geodesic_projection() {
    let good = entry("pd_radial_log_sec", &[]);
    let rad = AmbientField::radial(&good.ambient).unwrap();
    let g = grid(&good, 9);
    let all = normal_connection_residual(&good, &rad, &g, Along::AllDirections, false, &opts()).unwrap();
    assert!(all.summary.max <= 1e-6, "{}", all.summary.max);

    // Bent projection: the normal part is parallel only across the tangent part.
    let generic = entry("pd_radial", &[("b2", 0.4), ("a2", 0.2)]);
    let g = grid(&generic, 9);
    let all = normal_connection_residual(&generic, &rad, &g, Along::AllDirections, false, &opts()).unwrap();
    let perp = normal_connection_residual(&generic, &rad, &g, Along::PerpToTangentPart, false, &opts()).unwrap();
    assert!(all.summary.max > 1e-3, "{}", all.summary.max);
    assert!(perp.summary.max <= 1e-6, "{}", perp.summary.max);
}

#[test]
fn both_paths_agree() {
    let bent: &[(&str, f64)] = &[("b2", 0.3)];
    for (name, field, params) in
        [("pd_radial", "radial", bent), ("class_a", "ddt", bent), ("cr_warped_sphere", "ddt", &[])]
    {
        let f = entry(name, params);
        let z = AmbientField::parse(field, &f.ambient).unwrap();
        let g = grid(&f, 5);
        let nc = normal_connection_residual(&f, &z, &g, Along::AllDirections, false, &opts()).unwrap();
        assert!(nc.stat("cross_check").unwrap() <= 1e-6, "{name}: {:?}", nc.stat("cross_check"));
        let unit = normal_connection_residual(&f, &z, &g, Along::AllDirections, true, &opts()).unwrap();
        assert!(unit.stat("cross_check").unwrap() <= 1e-6, "{name}: {:?}", unit.stat("cross_check"));
        let geo = geodesic_residual(&f, &z, &g, &opts()).unwrap();
        assert!(geo.stat("cross_check").unwrap() <= 1e-6, "{name}: {:?}", geo.stat("cross_check"));
    }
}

struct Line;

impl Formula for Line {
    fn dim_in(&self) -> usize {
        1
    }

    fn dim_out(&self) -> usize {
        2
    }

    fn apply<D: Real>(&self, u: &[D]) -> Vec<D> {
        vec![u[0] * 2.0, D::cst(1.0) - u[0]]
    }
}

#[test]
fn geodesic_examples() {
    let f = entry("cr_product_s2", &[]);
    let ddt = AmbientField::ddt(&f.ambient).unwrap();
    assert!(geodesic_residual(&f, &ddt, &grid(&f, 9), &opts()).unwrap().summary.max <= 1e-5);

    let line = ImmersionSpec::new(
        "line",
        vec![(-1.0, 1.0)],
        Arc::new(Line),
        AmbientSpace::euclidean(2),
    )
    .unwrap();
    let e1 = AmbientField::coordinate(&line.ambient, 1).unwrap();
    assert!(geodesic_residual(&line, &e1, &grid(&line, 9), &opts()).unwrap().summary.max < 1e-9);

    // Position field on the round cylinder: ℛᵀ = z ∂_z flows along the rulings with
    // ∇_{ℛᵀ}ℛᵀ = z ∂_z ≠ 0, so its integral curves are rulings traversed at varying speed.
    let cyl = gallery::cylinder().unwrap();
    let rad = AmbientField::radial(&cyl.ambient).unwrap();
    let g = Grid::new(&[(0.0, 6.0), (0.5, 2.0)], 9);
    let flow = geodesic_residual(&cyl, &rad, &g, &opts()).unwrap();
    assert!(flow.summary.max > 1e-3);
    for (v, u) in flow.residuals.iter().zip(&flow.points) {
        assert!((v - u[1]).abs() < 1e-6, "{v} vs z = {}", u[1]);
    }
    let unit = geodesic_residual_with(&cyl, &rad, &g, Parametrization::Unit, &opts()).unwrap();
    assert!(unit.summary.max < 1e-6);
    assert!(!ratio_report(&cyl, &rad, &g, &opts()).unwrap().passed());
}

#[test]
fn cylinder_ratio_by_hand() {
    // ℛ at (cos φ, sin φ, z): normal part (cos φ, sin φ, 0), tangent part (0, 0, z).
    let cyl = gallery::cylinder().unwrap();
    let rad = AmbientField::radial(&cyl.ambient).unwrap();
    for z in [0.5, 2.0] {
        let d = decompose(&cyl, &rad, &[0.3, z]).unwrap();
        assert!((d.normal_norm / d.tangent_norm - 1.0 / z).abs() < 1e-14);
    }
}

#[test]
fn polar_constant_of_products() {
    let fam = HypersurfaceFamily::shipped(BaseCurve::Latitude(0.2));
    let base = family_immersion(&fam, (-1.0, 1.0)).unwrap();
    let g = grid(&base, 9);
    assert!(polar_residual(&base, 1.0, &g, &opts()).unwrap().summary.max <= 1e-8);
    for a in [0.5, 2.0] {
        let f = cr_product(&base, a).unwrap();
        assert!(polar_residual(&f, 1.0 + a * a, &g, &opts()).unwrap().summary.max <= 1e-10);
    }
}

#[test]
fn tangent_part_length_of_cr_products() {
    // ∂/∂t splits along f(s, x) = (φ_s(x), A s) with tangent length |A|/√(1 + A²).
    let fam = HypersurfaceFamily::shipped(BaseCurve::Latitude(0.0));
    let base = family_immersion(&fam, (-1.0, 1.0)).unwrap();
    for a in [0.5, 1.0, 2.0] {
        let f = cr_product(&base, a).unwrap();
        let ddt = AmbientField::ddt(&f.ambient).unwrap();
        let want = a / (1.0 + a * a).sqrt();
        let r = length_report(&f, &ddt, Part::Tangent, &grid(&f, 9), &opts(), Some(want)).unwrap();
        assert!(r.summary.max <= 1e-6, "A = {a}: {}", r.summary.max);
    }
}

#[test]
fn class_a_shape_operator_along_the_curve() {
    let lat = 0.3;
    let frame = NormalFrame::shipped(BaseCurve::Latitude(lat));
    let curve = CurveSpec::new(
        SpaceForm::Sphere,
        Projection::Arc { beta: Profile::Poly(vec![0.1, 1.0, 0.3]) },
        Profile::Poly(vec![0.0, 0.8, 0.25]),
    )
    .unwrap();
    let f = class_a(&frame, &curve, (-1.0, 1.0)).unwrap();
    for u in grid(&f, 5).points() {
        let (x, s) = (&u[..1], u[1]);
        let (g, g1, g2) = curve.jet(s);
        // ζ ⊥ γ' in ℝ³ and ⊥ (γ̄, 0), so that Ξ(x, ζ) is tangent to S² × ℝ.
        let v1 = nalgebra::Vector3::new(g1[0], g1[1], g1[2]);
        let v2 = nalgebra::Vector3::new(g[0], g[1], 0.0);
        let zeta = v1.cross(&v2).normalize();
        let phi = frame.base.eval(x);
        let xi1 = frame.xis[0].eval(x);
        let mut xi: Vec<f64> = (0..3).map(|i| zeta[0] * xi1[i] + zeta[1] * phi[i]).collect();
        xi.push(zeta[2]);
        let xi = DVector::from_vec(xi);

        let geo = LocalGeometry::at(&f, &u, Scheme::Analytic).unwrap();
        let mut a = nalgebra::DMatrix::zeros(2, 2);
        for (n, op) in geo.normals.iter().zip(geo.shape_operators(&f)) {
            a += op * n.dot(&xi);
        }
        let a_ds = a.column(1);
        let want = (zeta[0] * g2[0] + zeta[1] * g2[1] + zeta[2] * g2[2]) / v1.norm_squared();
        assert!((a_ds[1] - want).abs() <= 1e-6, "{} vs {want}", a_ds[1]);
        assert!(a_ds[0].abs() <= 1e-6);
    }
}

#[test]
fn log_sec_and_sqrt_g_profiles() {
    let lat = |_| HypersurfaceFamily::shipped(BaseCurve::Latitude(0.0));
    let f = radial_graph(&lat(()), RadialProfile::LogSec(0.0), (-1.0, 1.0)).unwrap();
    let rad = AmbientField::radial(&f.ambient).unwrap();
    let r = length_report(&f, &rad, Part::Normal, &grid(&f, 11), &opts(), Some(1.0)).unwrap();
    assert!(r.summary.max <= 1e-6);
    let f = radial_graph(&lat(()), RadialProfile::SqrtG(0.5), (-0.4, 1.0)).unwrap();
    let r = length_report(&f, &rad, Part::Tangent, &grid(&f, 11), &opts(), Some(1.0)).unwrap();
    assert!(r.summary.max <= 1e-6);
}

#[test]
fn radial_exp_of_product_is_the_linear_radial_graph() {
    let fam = HypersurfaceFamily::shipped(BaseCurve::Latitude(0.2));
    let a = 0.8;
    let via = compose(
        Arc::new(ConformalMapSpec::radial_exp(3)),
        &cr_product(&family_immersion(&fam, (-1.0, 1.0)).unwrap(), a).unwrap(),
    )
    .unwrap();
    let direct = radial_graph(&fam, RadialProfile::Linear(a), (-1.0, 1.0)).unwrap();
    for u in grid(&direct, 7).points() {
        let (p, q) = (via.eval(&u).unwrap(), direct.eval(&u).unwrap());
        for (x, y) in p.iter().zip(&q) {
            assert!((x - y).abs() <= 1e-10);
        }
    }
}

#[test]
fn dini_curvature_is_constant() {
    let d = gallery::dini(0.2).unwrap();
    let g = Grid::new(&d.domain, 20);
    let r = gauss_report(&d, &g, &opts(), None).unwrap();
    assert!(r.stat("std_dev").unwrap() <= 1e-4);
    assert!((r.stat("constant").unwrap() + 1.0).abs() <= 1e-9);
}

#[test]
fn dini_profile_is_a_tractrix() {
    let d = gallery::dini(0.0).unwrap();
    for t in [0.6, 1.2, 2.4] {
        let p = d.eval(&[t, 0.0]).unwrap();
        let want = [1.0 / t.cosh(), 0.0, t - t.tanh()];
        for (x, y) in p.iter().zip(&want) {
            assert!((x - y).abs() <= 1e-10);
        }
    }
}

#[test]
fn log_spiral_cylinder_closed_form() {
    let a = 1.5;
    let f = gallery::log_spiral_cylinder(a).unwrap();
    for u in grid(&f, 5).points() {
        let (t, s) = (u[0], u[1]);
        let want = [t, (-s).exp() * (a * s).cos(), (-s).exp() * (a * s).sin()];
        assert_eq!(f.eval(&u).unwrap(), want.to_vec());
    }
}

#[test]
fn spherical_loxodrome_matches_the_classical_curve() {
    let theta = 0.6f64;
    let f = gallery::loxodrome(theta).unwrap();
    let (lo, hi) = f.domain[0];
    for k in 1..20 {
        let s = lo + (hi - lo) * k as f64 / 20.0;
        let u = 2.0 * ((theta.sin() * s).exp()).atan();
        let lon = (1.0 / theta.tan()) * (u / 2.0).tan().ln();
        let want = [lon.cos() * u.sin(), lon.sin() * u.sin(), u.cos()];
        let p = f.eval(&[s]).unwrap();
        for (x, y) in p.iter().zip(&want) {
            assert!((x - y).abs() <= 1e-8, "s = {s}: {p:?} vs {want:?}");
        }
    }
}

#[test]
fn pd_radial_members_and_corollary() {
    let frame = NormalFrame::shipped(BaseCurve::Latitude(0.3));
    for (beta, last) in [
        (Profile::linear(1.0, 0.0), Profile::linear(0.7, 0.0)),
        (Profile::Poly(vec![0.0, 1.0, 0.4]), Profile::Poly(vec![0.0, 0.6, 0.3])),
        (Profile::linear(1.0, 0.0), Profile::LogSec(0.0)),
    ] {
        let curve = arc_curve(SpaceForm::Sphere, beta, last).unwrap();
        let f = pd_radial(&frame, &curve, (0.1, 1.0)).unwrap();
        let rad = AmbientField::radial(&f.ambient).unwrap();
        let g = grid(&f, 9);
        assert!(pd_residual(&f, &rad, &g, &opts()).unwrap().summary.max <= 1e-6);
        let d = directional_constancy(&f, &rad, Part::Normal, &g, &opts()).unwrap();
        assert!(d.summary.max <= 1e-5, "{}", d.summary.max);
    }
}

#[test]
fn unit_normal_clause_on_the_sphere_is_parallel() {
    let s = gallery::sphere().unwrap();
    let rad = AmbientField::radial(&s.ambient).unwrap();
    let r = normal_connection_residual(&s, &rad, &grid(&s, 7), Along::AllDirections, true, &opts()).unwrap();
    assert!(r.passed(), "{}", r.summary.max);
    let c = gallery::cone(0.4).unwrap();
    let rad = AmbientField::radial(&c.ambient).unwrap();
    let r = normal_connection_residual(&c, &rad, &grid(&c, 5), Along::AllDirections, true, &opts()).unwrap();
    assert!(matches!(r.verdict, Verdict::Degenerate(_)));
}

#[test]
fn finite_differences_reproduce_analytic_reports() {
    let f = entry("class_a", &[("b2", 0.3)]);
    let ddt = AmbientField::ddt(&f.ambient).unwrap();
    let g = grid(&f, 5);
    let fd = VerifyOptions { scheme: Scheme::fd_default(), ..opts() };
    let exact = pd_residual(&f, &ddt, &g, &opts()).unwrap();
    let approx = pd_residual(&f, &ddt, &g, &fd).unwrap();
    assert_eq!(exact.passed(), approx.passed());
    for (a, b) in exact.values.iter().zip(&approx.values) {
        assert!((a - b).abs() < 1e-8);
    }
}

#[test]
fn lorentzian_sphere_in_minkowski_space() {
    // Unit hyperbolic plane as an immersion into ℝ³_1: position is normal with length 1.
    let h = ImmersionSpec::new(
        "hyperboloid",
        vec![(0.2, 1.5), (0.0, 2.0 * PI - 0.1)],
        Arc::new(FnMap::new(2, 3, |u: &[f64]| vec![u[0].sinh() * u[1].cos(), u[0].sinh() * u[1].sin(), u[0].cosh()])),
        AmbientSpace::minkowski(3),
    )
    .unwrap();
    let rad = AmbientField::radial(&h.ambient).unwrap();
    let d = decompose(&h, &rad, &[0.7, 1.0]).unwrap();
    assert!(d.tangent_norm < 1e-8);
    assert!((d.normal_norm - 1.0).abs() < 1e-12);
}
