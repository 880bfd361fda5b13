//! Acceptance gate: one PASS/FAIL line per criterion, tolerances pinned below.
//!
//! Exits nonzero when a criterion fails, unless it is listed in [`KNOWN_UNATTAINABLE`].

use std::f64::consts::{PI, SQRT_2};
use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::process::Command;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use subgeom::atlas::{
    self, conformality_residual, conformality_tolerance, mercator_solve, CatalogOptions, ConformalMapSpec, Mercator,
};
use subgeom::fields::{related_residual, AmbientField};
use subgeom::gallery::{
    self, by_name, class_a, family_immersion, g_inverse, BaseCurve, ClaimKind, CurveSpec, GalleryParams,
    HypersurfaceFamily, ImmersionSpec, NormalFrame, Profile, Projection,
};
use subgeom::kernel::Scheme;
use subgeom::spaces::{SpaceForm, Warping};
use subgeom::verify::suites::{conformal_invariance, hypersurface_implication, parallel_field_equivalences};
use subgeom::verify::*;

/// Criteria whose failure is expected and explained in the project notes.
const KNOWN_UNATTAINABLE: &[u32] = &[2];

const SAMPLE_POINTS_CONFORMAL: usize = 200;
const SAMPLE_POINTS_RELATED: usize = 100;
const ISOMETRY_TOL: f64 = 1e-12;
const RELATED_TOL: f64 = 1e-6;
const CONSTRUCTION_TOL: f64 = 1e-6;
const LOXODROME_TOL: f64 = 1e-8;
const ODE_TOL: f64 = 1e-8;
const G_INVERSE_TOL: f64 = 1e-10;
const NC_GENERIC_MIN: f64 = 1e-3;
const EQUIVALENCE_TOL: f64 = 1e-5;
const INVARIANCE_TOL: f64 = 1e-6;
const GAUSS_STD_TOL: f64 = 1e-4;
const TRACTRIX_TOL: f64 = 1e-10;
const GRID_PD: usize = 21;

type Outcome = (bool, String);
type Criterion = (u32, &'static str, fn() -> Outcome);

fn entry(name: &str, params: &[(&str, f64)]) -> ImmersionSpec {
    let p: GalleryParams = params.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    by_name(name, &p).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn opts() -> VerifyOptions {
    VerifyOptions::default()
}

fn linspace(lo: f64, hi: f64, k: usize) -> Vec<f64> {
    (0..k).map(|i| lo + (hi - lo) * i as f64 / (k - 1) as f64).collect()
}

fn max_of(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, |a, b| if b.is_nan() { f64::INFINITY } else { a.max(b) })
}

fn c1_conformality() -> Outcome {
    let mut maps: Vec<ConformalMapSpec> = [2, 3].iter().flat_map(|&n| atlas::catalog(n)).collect();
    for rho in ["sinh", "cosh", "exp", "id", "sqrt2exp"] {
        let w = Warping::from_name(rho).unwrap();
        let form = w.model_form().unwrap_or(SpaceForm::Euclidean);
        let o = CatalogOptions { n: 2, rho: w, form, ..Default::default() };
        maps.push(atlas::by_name("mercator", &o).unwrap());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut ok, mut worst_fd, mut worst_an, mut isometries, mut fd_maps) = (true, 0.0f64, 0.0f64, 0, 0);
    let mut failures = Vec::new();
    for m in &maps {
        let scheme = if m.is_analytic() { Scheme::Analytic } else { Scheme::fd_default() };
        let tol = conformality_tolerance(scheme);
        let mut worst = 0.0f64;
        let mut factor_dev = 0.0f64;
        for _ in 0..SAMPLE_POINTS_CONFORMAL {
            let p = m.sample_source(&mut rng);
            worst = worst.max(conformality_residual(m, &p, 4, &mut rng, scheme).unwrap_or(f64::INFINITY));
            factor_dev = factor_dev.max((m.factor(&p).unwrap_or(f64::NAN) - 1.0).abs());
        }
        match scheme {
            Scheme::Analytic => worst_an = worst_an.max(worst),
            _ => {
                fd_maps += 1;
                worst_fd = worst_fd.max(worst)
            }
        }
        if worst > tol {
            ok = false;
            failures.push(format!("{} {worst:.1e}", m.name));
        }
        if m.name.starts_with("warp_") {
            isometries += 1;
            if !(m.is_isometry && factor_dev <= ISOMETRY_TOL) {
                ok = false;
                failures.push(format!("{} factor {factor_dev:.1e}", m.name));
            }
        }
    }
    (
        ok,
        format!(
            "{} maps x {SAMPLE_POINTS_CONFORMAL} points, max analytic {worst_an:.1e}, max fd {worst_fd:.1e} ({fd_maps} fd maps), {} warped-model maps with factor 1{}",
            maps.len(),
            isometries,
            if failures.is_empty() { String::new() } else { format!("; failing: {}", failures.join(", ")) }
        ),
    )
}

fn related_max(map: &ConformalMapSpec, src: &AmbientField, tgt: &AmbientField, points: &[Vec<f64>]) -> f64 {
    max_of(points.iter().map(|p| related_residual(map, src, tgt, p).unwrap_or(f64::INFINITY)))
}

fn sample(map: &ConformalMapSpec, k: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..k).map(|_| map.sample_source(&mut rng)).collect()
}

fn c2_relatedness() -> Outcome {
    let radial = ConformalMapSpec::radial_exp(3);
    let pts = sample(&radial, SAMPLE_POINTS_RELATED, 2);
    let r1 = related_max(
        &radial,
        &AmbientField::ddt(&radial.source).unwrap(),
        &AmbientField::radial(&radial.target).unwrap(),
        &pts,
    );
    let cover = ConformalMapSpec::killing_cover(2);
    let pts = sample(&cover, SAMPLE_POINTS_RELATED, 3);
    let r2 = related_max(
        &cover,
        &AmbientField::ddt(&cover.source).unwrap(),
        &AmbientField::default_killing(&cover.target).unwrap(),
        &pts,
    );

    // Inversion, as literally stated: I_* ∂_i = −2‖x‖⁻² 𝒞_i, at the image point or at the source point.
    let inv = ConformalMapSpec::sphere_inversion(3);
    let mut pts = sample(&inv, SAMPLE_POINTS_RELATED - 1, 4);
    pts.push(vec![0.3, 0.4, 0.0]);
    let (mut lit_image, mut lit_source, mut corrected) = (0.0f64, 0.0f64, 0.0f64);
    for i in 1..=3 {
        let src = AmbientField::coordinate(&inv.source, i).unwrap();
        let ck = AmbientField::conformal_killing(&inv.target, i).unwrap();
        lit_image = lit_image.max(related_max(&inv, &src, &ck.clone().norm_scaled(-2.0, -2), &pts));
        lit_source = lit_source.max(related_max(&inv, &src, &ck.clone().norm_scaled(-2.0, 2), &pts));
        corrected = corrected.max(related_max(&inv, &src, &ck.scaled(-2.0), &pts));
    }
    let literal = lit_image.min(lit_source);
    let ok = r1 <= RELATED_TOL && r2 <= RELATED_TOL && literal <= RELATED_TOL;
    (
        ok,
        format!(
            "radial_exp d/dt->R {r1:.1e}, killing_cover d/dt->K {r2:.1e}, inversion d_i->-2|x|^-2 C_i {lit_image:.1e} \
             (factor at source {lit_source:.1e}); the identity holds as -2 C_i(I(y)): {corrected:.1e}"
        ),
    )
}

fn c3_constant_ratio() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for a in [0.5, 1.0, 2.0] {
        let f = entry("cr_product_s2", &[("A", a)]);
        let z = AmbientField::ddt(&f.ambient).unwrap();
        let g = Grid::new(&f.domain, GRID_PD);
        let want_t = a.abs() / (1.0 + a * a).sqrt();
        let t = length_report(&f, &z, Part::Tangent, &g, &opts(), Some(want_t)).unwrap();
        let r = ratio_report_expecting(&f, &z, &g, &opts(), Some(1.0 / a.abs())).unwrap();
        ok &= t.summary.max <= CONSTRUCTION_TOL && r.summary.max <= CONSTRUCTION_TOL && r.passed();
        lines.push(format!("A={a}: |Zt| {:.1e}, ratio {:.1e}", t.summary.max, r.summary.max));
    }

    // f(s,x) = sin(2arctan(e^{(sinθ)s})) φ(s,x) + cos(2arctan(e^{(sinθ)s})) N.
    let theta = 0.7f64;
    let lox = entry("spherical_loxodrome", &[("A", theta.sin()), ("lat", 0.0)]);
    let base = family_immersion(&HypersurfaceFamily::shipped(BaseCurve::Latitude(0.0)), (-1.0, 1.0)).unwrap();
    let polar_unit = base.polar_constant.is_some_and(|c| (c - 1.0).abs() < 1e-12);
    let mut worst = 0.0f64;
    for u in Grid::new(&lox.domain, GRID_PD).points() {
        let big_f = 2.0 * (theta.sin() * u[0]).exp().atan();
        let phi = base.eval(&u).unwrap();
        let mut want: Vec<f64> = phi.iter().map(|v| big_f.sin() * v).collect();
        want.push(big_f.cos());
        let got = lox.eval(&u).unwrap();
        worst = worst.max(max_of(got.iter().zip(&want).map(|(x, y)| (x - y).abs())));
    }
    ok &= polar_unit && worst <= LOXODROME_TOL;
    lines.push(format!("loxodromic formula {worst:.1e}"));
    (ok, lines.join("; "))
}

fn c4_ode() -> Outcome {
    let ts = linspace(-3.0, 3.0, 601);
    let mut sin_err = 0.0f64;
    for c in [0.0, 0.7] {
        let m = Mercator::closed_form(Warping::Sin, c).unwrap().force_rk4();
        assert!(!m.uses_closed_form());
        for &t in &ts {
            sin_err = sin_err.max((m.value(t).unwrap() - 2.0 * (t - c).exp().atan()).abs());
        }
    }
    let solved = mercator_solve(Warping::Sin, 0.0, PI / 2.0, &ts).unwrap();
    let solve_err = max_of(solved.iter().zip(&ts).map(|(v, t)| (v - 2.0 * t.exp().atan()).abs()));

    // F(t) = log(1/(c − √2 t)) solves F' = √2 e^F on (−∞, c/√2).
    let c = 1.0;
    let end = c / SQRT_2;
    let exact = Mercator::closed_form(Warping::Sqrt2Exp, c).unwrap();
    let numeric = exact.clone().force_rk4();
    let tp = linspace(-3.0, end - 0.05, 401);
    let mut para_err = 0.0f64;
    for &t in &tp {
        let want = (1.0 / (c - SQRT_2 * t)).ln();
        para_err = para_err.max((exact.value(t).unwrap() - want).abs()).max((numeric.value(t).unwrap() - want).abs());
    }
    let interval_ok = exact.maximal_interval().is_some_and(|(_, hi)| (hi - end).abs() < 1e-15);
    let blows_up = exact.value(end + 0.1).is_err() && numeric.value(end + 0.1).is_err();
    let ok = sin_err <= ODE_TOL && solve_err <= ODE_TOL && para_err <= ODE_TOL && interval_ok && blows_up;
    (
        ok,
        format!(
            "sin via RK4 on [-3,3] {sin_err:.1e}, solver {solve_err:.1e}; sqrt(2)e^F on (-3, c/sqrt2) {para_err:.1e}, \
             blow-up past c/sqrt2 reported: {blows_up}"
        ),
    )
}

/// `A_Ξ ∂s = (⟨γ″, ζ⟩/⟨γ′, γ′⟩) ∂s` on a bent class-𝒜 surface.
fn class_a_shape_formula() -> f64 {
    let frame = NormalFrame::shipped(BaseCurve::Latitude(0.3));
    let curve = CurveSpec::new(
        SpaceForm::Sphere,
        Projection::Arc { beta: Profile::Poly(vec![0.1, 1.0, 0.3]) },
        Profile::Poly(vec![0.0, 0.8, 0.25]),
    )
    .unwrap();
    let f = class_a(&frame, &curve, (-1.0, 1.0)).unwrap();
    let mut worst = 0.0f64;
    for u in Grid::new(&f.domain, 11).points() {
        let (x, s) = (&u[..1], u[1]);
        let (g, g1, g2) = curve.jet(s);
        // ζ = γ′ × (γ̄, 0), normalized: orthogonal to γ′ and to the position in the sphere factor.
        let zeta = [g1[1] * 0.0 - g1[2] * g[1], g1[2] * g[0] - g1[0] * 0.0, g1[0] * g[1] - g1[1] * g[0]];
        let zn = zeta.iter().map(|v| v * v).sum::<f64>().sqrt();
        let zeta = zeta.map(|v| v / zn);
        let phi = frame.base.eval(x);
        let xi1 = frame.xis[0].eval(x);
        let mut xi: Vec<f64> = (0..3).map(|i| zeta[0] * xi1[i] + zeta[1] * phi[i]).collect();
        xi.push(zeta[2]);

        let geo = LocalGeometry::at(&f, &u, Scheme::Analytic).unwrap();
        let (mut a11, mut a01) = (0.0, 0.0);
        for (n, op) in geo.normals.iter().zip(geo.shape_operators(&f)) {
            let w: f64 = n.iter().zip(&xi).map(|(p, q)| p * q).sum();
            a11 += op[(1, 1)] * w;
            a01 += op[(0, 1)] * w;
        }
        let speed2: f64 = g1.iter().map(|v| v * v).sum();
        let want = (0..3).map(|i| zeta[i] * g2[i]).sum::<f64>() / speed2;
        worst = worst.max((a11 - want).abs()).max(a01.abs());
    }
    worst
}

fn c5_principal_direction() -> Outcome {
    let members: Vec<ImmersionSpec> = vec![
        entry("class_a", &[]),
        entry("class_a", &[("b2", 0.3), ("a2", 0.2)]),
        entry("class_a_codim2", &[]),
        entry("class_a_flat", &[("b2", 0.4)]),
        entry("pd_radial", &[]),
        entry("pd_radial", &[("b2", 0.4), ("a2", 0.2)]),
        entry("pd_radial_log_sec", &[]),
        entry("killing_pd", &[]),
        entry("killing_pd", &[("a2", 0.3)]),
        entry("killing_horocycle", &[]),
        entry("killing_geodesic", &[]),
    ];
    let mut worst = 0.0f64;
    let mut ok = true;
    for f in &members {
        let z = f.claim(ClaimKind::PrincipalDirection).and_then(|c| c.field.clone()).expect("pd claim");
        let r = pd_residual(f, &z, &Grid::new(&f.domain, GRID_PD), &opts()).unwrap();
        ok &= r.passed() && r.summary.max <= CONSTRUCTION_TOL;
        worst = worst.max(r.summary.max);
    }
    let shape = class_a_shape_formula();
    ok &= shape <= CONSTRUCTION_TOL;
    (
        ok,
        format!("{} members on {GRID_PD}x{GRID_PD} grids, max pd residual {worst:.1e}; shape operator formula {shape:.1e}", members.len()),
    )
}

fn c6_t_n_constant() -> Outcome {
    let f = entry("radial_log_sec", &[]);
    let rad = AmbientField::radial(&f.ambient).unwrap();
    let n = length_report(&f, &rad, Part::Normal, &Grid::new(&f.domain, GRID_PD), &opts(), Some(1.0)).unwrap();
    let f = entry("radial_sqrt_g", &[]);
    let rad = AmbientField::radial(&f.ambient).unwrap();
    let t = length_report(&f, &rad, Part::Tangent, &Grid::new(&f.domain, GRID_PD), &opts(), Some(1.0)).unwrap();
    let mut g_err = 0.0f64;
    for y in linspace(0.0, 10.0, 1001) {
        let g = g_inverse(y).unwrap();
        g_err = g_err.max((g - g.atan() - y).abs());
    }
    let ok = n.summary.max <= CONSTRUCTION_TOL && t.summary.max <= CONSTRUCTION_TOL && g_err <= G_INVERSE_TOL;
    (ok, format!("log_sec |R_perp|-1 {:.1e}, sqrt_G |R_t|-1 {:.1e}, F(G(y))-y on [0,10] {g_err:.1e}", n.summary.max, t.summary.max))
}

fn c7_parallel_normal() -> Outcome {
    let good = entry("pd_radial_log_sec", &[]);
    let rad = AmbientField::radial(&good.ambient).unwrap();
    let g = Grid::new(&good.domain, 11);
    let all_good = normal_connection_residual(&good, &rad, &g, Along::AllDirections, false, &opts()).unwrap();
    let generic = entry("pd_radial", &[("b2", 0.4), ("a2", 0.2)]);
    let g = Grid::new(&generic.domain, 11);
    let all_gen = normal_connection_residual(&generic, &rad, &g, Along::AllDirections, false, &opts()).unwrap();
    let perp_gen = normal_connection_residual(&generic, &rad, &g, Along::PerpToTangentPart, false, &opts()).unwrap();
    let min_generic = all_gen.residuals.iter().copied().fold(f64::INFINITY, f64::min);
    let ok = all_good.summary.max <= CONSTRUCTION_TOL
        && all_good.passed()
        && !all_gen.passed()
        && all_gen.summary.max > NC_GENERIC_MIN
        && perp_gen.summary.max <= CONSTRUCTION_TOL
        && perp_gen.passed();
    (
        ok,
        format!(
            "geodesic projection, all directions {:.1e}; generic projection, all directions max {:.1e} (min {min_generic:.1e}), perpendicular to Zt {:.1e}",
            all_good.summary.max, all_gen.summary.max, perp_gen.summary.max
        ),
    )
}

fn c8_suites() -> Outcome {
    let eq = parallel_field_equivalences(20, 7, 9, EQUIVALENCE_TOL).unwrap();
    let agree = eq.iter().filter(|c| c.agree() && c.geodesic == c.expected).count();
    let cr_cases = eq.iter().filter(|c| c.expected).count();

    let inv = conformal_invariance(7, &opts()).unwrap();
    let holding = inv.iter().filter(|c| c.holds(INVARIANCE_TOL)).count();
    let both = inv.iter().any(|c| c.ratio_verdicts.0) && inv.iter().any(|c| !c.ratio_verdicts.0);
    let worst_inv = max_of(inv.iter().map(|c| c.ratio_diff.max(c.coeff_diff)));
    let mut map_names: Vec<&str> = inv.iter().map(|c| c.map.as_str()).collect();
    map_names.sort_unstable();
    map_names.dedup();

    let imp = hypersurface_implication(9, &opts()).unwrap();
    let implied = imp.iter().filter(|(_, _, cr, pd)| !cr || *pd).count();
    let cr_rows = imp.iter().filter(|r| r.2).count();

    let ok = agree == eq.len() && holding == inv.len() && both && implied == imp.len() && cr_rows > 0;
    (
        ok,
        format!(
            "parallel-field equivalences {agree}/{} agree ({cr_cases} constant-ratio); invariance {holding}/{} cases over {} maps, \
             max difference {worst_inv:.1e}; CR=>PD {implied}/{} hypersurface claims",
            eq.len(),
            inv.len(),
            map_names.len(),
            imp.len()
        ),
    )
}

fn c9_named_surfaces() -> Outcome {
    let sigma = 0.2f64;
    let d = gallery::dini(sigma).unwrap();
    let g = Grid::new(&d.domain, GRID_PD);
    let cr = check_claim(&d, d.claim(ClaimKind::ConstantRatio).unwrap(), &g, &opts()).unwrap();
    let pd = check_claim(&d, d.claim(ClaimKind::PrincipalDirection).unwrap(), &g, &opts()).unwrap();
    let field_ok = cr.field.as_deref().is_some_and(|n| n.starts_with("killing"));
    let k = gauss_report(&d, &Grid::new(&d.domain, 20), &opts(), None).unwrap();
    let std = k.stat("std_dev").unwrap_or(f64::INFINITY);

    let d0 = gallery::dini(0.0).unwrap();
    let (lo, hi) = d0.domain[0];
    let mut tractrix = 0.0f64;
    for t in linspace(lo.max(0.05), hi, 40) {
        let p = d0.eval(&[t, 0.0]).unwrap();
        let want = [1.0 / t.cosh(), 0.0, t - t.tanh()];
        tractrix = tractrix.max(max_of(p.iter().zip(&want).map(|(x, y)| (x - y).abs())));
    }

    let mut spiral_exact = true;
    for a in [1.0, 1.5] {
        let f = gallery::log_spiral_cylinder(a).unwrap();
        for u in Grid::new(&f.domain, 9).points() {
            let (t, s) = (u[0], u[1]);
            let want = vec![t, (-s).exp() * (a * s).cos(), (-s).exp() * (a * s).sin()];
            spiral_exact &= f.eval(&u).unwrap() == want;
        }
    }

    let mut lox = 0.0f64;
    for theta in [0.4f64, 0.6, 1.1] {
        let f = gallery::loxodrome(theta).unwrap();
        let (lo, hi) = f.domain[0];
        for s in linspace(lo, hi, 41) {
            let u = 2.0 * (theta.sin() * s).exp().atan();
            let lon = (u / 2.0).tan().ln() / theta.tan();
            let want = [lon.cos() * u.sin(), lon.sin() * u.sin(), u.cos()];
            let p = f.eval(&[s]).unwrap();
            lox = lox.max(max_of(p.iter().zip(&want).map(|(x, y)| (x - y).abs())));
        }
    }
    let ok = cr.passed()
        && pd.passed()
        && field_ok
        && std <= GAUSS_STD_TOL
        && tractrix <= TRACTRIX_TOL
        && spiral_exact
        && lox <= LOXODROME_TOL;
    (
        ok,
        format!(
            "dini(0.2) cr {} (ratio tan(sigma), max {:.1e}) pd {} w.r.t. {}, K std {std:.1e} mean {:.6}; tractrix {tractrix:.1e}; \
             log spiral cylinder exact: {spiral_exact}; loxodrome vs alpha(u) {lox:.1e}",
            cr.verdict.label(),
            cr.summary.max,
            pd.verdict.label(),
            cr.field.as_deref().unwrap_or("?"),
            k.stat("constant").unwrap_or(f64::NAN)
        ),
    )
}

fn c10_determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let exe = env!("CARGO_BIN_EXE_subgeom");
    let runs: [(&[&str], &str); 3] = [
        (&["generate", "dini", "--sigma", "0.2", "--grid", "64x64"], "obj"),
        (&["verify", "dini", "--field", "killing", "--property", "cr,pd", "--grid", "9"], "json"),
        (&["atlas", "check", "killing_cover", "--points", "40"], "json"),
    ];
    let mut same = 0;
    let mut sizes = Vec::new();
    for (k, (args, ext)) in runs.iter().enumerate() {
        let bytes: Vec<Vec<u8>> = (0..2)
            .map(|rep| {
                let path = dir.path().join(format!("run{k}_{rep}.{ext}"));
                let status = Command::new(exe).args(*args).arg("-o").arg(&path).output().unwrap().status;
                assert!(status.success(), "{args:?}");
                fs::read(&path).unwrap()
            })
            .collect();
        if !bytes[0].is_empty() && bytes[0] == bytes[1] {
            same += 1;
        }
        sizes.push(bytes[0].len());
    }
    (same == runs.len(), format!("{same}/{} repeated runs byte-identical (sizes {sizes:?})", runs.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "atlas conformality", c1_conformality),
        (2, "field relatedness", c2_relatedness),
        (3, "constant-ratio constructions", c3_constant_ratio),
        (4, "Mercator ODE", c4_ode),
        (5, "principal-direction constructions", c5_principal_direction),
        (6, "T/N-constant profiles", c6_t_n_constant),
        (7, "parallel normal part", c7_parallel_normal),
        (8, "equivalence suites", c8_suites),
        (9, "named surfaces", c9_named_surfaces),
        (10, "determinism", c10_determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut blocking = Vec::new();
    for (id, title, run) in criteria {
        let (ok, detail) = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            (false, format!("panicked: {msg}"))
        });
        let known = !ok && KNOWN_UNATTAINABLE.contains(&id);
        println!(
            "{} [{id:>2}] {title}: {detail}{}",
            if ok { "PASS" } else { "FAIL" },
            if known { " (known unattainable)" } else { "" }
        );
        if !ok && !known {
            blocking.push(id);
        }
    }
    let _ = panic::take_hook();
    if !blocking.is_empty() {
        println!("acceptance: blocking failures {blocking:?}");
        std::process::exit(1);
    }
    println!("acceptance: no blocking failures");
}
