//! Named gallery entries with numeric parameters, as used by the command line.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::Arc;

use super::build::*;
use super::family::{BaseCurve, CurveSpec, HypersurfaceFamily, NormalFrame, Profile, Projection};
use super::ImmersionSpec;
use crate::atlas::{ConformalMapSpec, Mercator};
use crate::error::{GeomError, Result};
use crate::spaces::{SpaceForm, Warping};

pub type GalleryParams = BTreeMap<String, f64>;

/// Entry names with their parameters and defaults.
pub const GALLERY_NAMES: &[(&str, &[(&str, f64)])] = &[
    ("sphere", &[]),
    ("cylinder", &[]),
    ("cone", &[("angle", 0.5)]),
    ("helix", &[("A", 1.0)]),
    ("log_spiral", &[("A", 1.0)]),
    ("cr_product_s2", &[("A", 1.0), ("lat", 0.0)]),
    ("cr_product_h2", &[("A", 1.0)]),
    ("cr_warped_sphere", &[("A", 0.7), ("lat", 0.0)]),
    ("cr_warped_sqrt2exp", &[("A", 0.5), ("r", 1.0)]),
    ("loxodrome", &[("theta", PI / 4.0)]),
    ("spherical_loxodrome", &[("A", 0.7), ("lat", 0.0)]),
    ("parabolic_loxodrome", &[("A", 0.5), ("r", 1.0)]),
    ("class_a", &[("lat", 0.3), ("A", 1.0), ("b0", 0.1), ("b1", 1.0), ("b2", 0.0), ("a2", 0.0)]),
    ("class_a_codim2", &[("lat", 0.2), ("A", 1.0), ("b1", 0.8), ("p1", 0.6)]),
    ("class_a_flat", &[("r", 1.0), ("A", 1.0), ("b1", 1.0), ("b2", 0.0), ("a2", 0.0)]),
    ("vertical_cylinder", &[("lat", 0.3), ("b0", 0.5)]),
    ("radial_linear", &[("A", 1.0), ("lat", 0.0)]),
    ("radial_log_sec", &[("C", 0.0), ("lat", 0.0)]),
    ("radial_sqrt_g", &[("C", 0.5), ("lat", 0.0)]),
    ("pd_radial", &[("lat", 0.3), ("A", 1.0), ("b1", 1.0), ("b2", 0.0), ("a2", 0.0)]),
    ("pd_radial_log_sec", &[("lat", 0.3), ("C", 0.0)]),
    ("killing_horocycle", &[("A", 1.0)]),
    ("killing_geodesic", &[("A", 1.0)]),
    ("killing_pd", &[("A", 1.0), ("a2", 0.0)]),
    ("log_spiral_cylinder", &[("A", 1.0)]),
    ("dini", &[("sigma", 0.3)]),
    ("inversion_cr", &[("A", 1.0)]),
];

fn lookup(name: &str) -> Option<&'static [(&'static str, f64)]> {
    GALLERY_NAMES.iter().find(|(n, _)| *n == name).map(|(_, p)| *p)
}

/// Every entry name.
pub fn names() -> Vec<&'static str> {
    GALLERY_NAMES.iter().map(|(n, _)| *n).collect()
}

/// Builds a named entry; unspecified parameters take their defaults, unknown ones are rejected.
pub fn by_name(name: &str, params: &GalleryParams) -> Result<ImmersionSpec> {
    let defaults = lookup(name).ok_or_else(|| GeomError::UnknownName(format!("immersion {name}")))?;
    for key in params.keys() {
        if !defaults.iter().any(|(k, _)| k == key) {
            return Err(GeomError::UnknownName(format!("parameter {key} of {name}")));
        }
    }
    let p = |key: &str| {
        params
            .get(key)
            .copied()
            .unwrap_or_else(|| defaults.iter().find(|(k, _)| *k == key).map(|(_, v)| *v).unwrap())
    };
    let latitude = || HypersurfaceFamily::shipped(BaseCurve::Latitude(p("lat")));
    let mut spec = match name {
        "sphere" => sphere()?,
        "cylinder" => cylinder()?,
        "cone" => cone(p("angle"))?,
        "helix" => helix(p("A"), 1.0)?,
        "log_spiral" => log_spiral(p("A"))?,
        "cr_product_s2" => cr_product(&family_immersion(&latitude(), (-1.0, 1.0))?, p("A"))?,
        "cr_product_h2" => {
            let fam = HypersurfaceFamily::shipped(BaseCurve::HypGeodesic);
            cr_product(&family_immersion(&fam, (-1.0, 1.0))?, p("A"))?
        }
        "cr_warped_sphere" | "spherical_loxodrome" => {
            let base = family_immersion(&latitude(), (-1.0, 1.0))?;
            let warped = cr_warped(&base, p("A"), Mercator::closed_form(Warping::Sin, 0.0)?)?;
            if name == "cr_warped_sphere" {
                warped
            } else {
                compose(Arc::new(ConformalMapSpec::warp_sphere(2)), &warped)?
            }
        }
        "cr_warped_sqrt2exp" | "parabolic_loxodrome" => {
            let fam = HypersurfaceFamily::shipped(BaseCurve::Circle(p("r")));
            let base = family_immersion(&fam, (-0.5, 0.5))?;
            if name == "cr_warped_sqrt2exp" {
                cr_warped(&base, p("A"), Mercator::closed_form(Warping::Sqrt2Exp, 1.0)?)?
            } else {
                let warped = cr_warped(&base, p("A"), Mercator::closed_form(Warping::Exp, 1.0)?)?;
                compose(Arc::new(ConformalMapSpec::warp_hyp_parabolic(2)), &warped)?
            }
        }
        "loxodrome" => loxodrome(p("theta"))?,
        "class_a" => {
            let frame = NormalFrame::shipped(BaseCurve::Latitude(p("lat")));
            let curve = CurveSpec::new(
                SpaceForm::Sphere,
                Projection::Arc { beta: Profile::Poly(vec![p("b0"), p("b1"), p("b2")]) },
                Profile::Poly(vec![0.0, p("A"), p("a2")]),
            )?;
            class_a(&frame, &curve, (-1.0, 1.0))?
        }
        "class_a_codim2" => {
            let frame = NormalFrame::shipped(BaseCurve::Latitude3(p("lat")));
            let curve = CurveSpec::new(
                SpaceForm::Sphere,
                Projection::Sphere2 {
                    beta: Profile::linear(p("b1"), 1.0),
                    psi: Profile::linear(p("p1"), 0.0),
                },
                Profile::linear(p("A"), 0.0),
            )?;
            class_a(&frame, &curve, (-0.8, 0.8))?
        }
        "class_a_flat" => {
            let frame = NormalFrame::shipped(BaseCurve::Circle(p("r")));
            let curve = CurveSpec::new(
                SpaceForm::Euclidean,
                Projection::Arc { beta: Profile::Poly(vec![0.0, p("b1"), p("b2")]) },
                Profile::Poly(vec![0.0, p("A"), p("a2")]),
            )?;
            class_a(&frame, &curve, (-0.4, 0.4))?
        }
        "vertical_cylinder" => {
            let frame = NormalFrame::shipped(BaseCurve::Latitude(p("lat")));
            let curve = arc_curve(SpaceForm::Sphere, Profile::constant(p("b0")), Profile::linear(1.0, 0.0))?;
            class_a(&frame, &curve, (-1.0, 1.0))?
        }
        "radial_linear" => radial_graph(&latitude(), RadialProfile::Linear(p("A")), (-1.0, 1.0))?,
        "radial_log_sec" => radial_graph(&latitude(), RadialProfile::LogSec(p("C")), (-1.0, 1.0))?,
        "radial_sqrt_g" => radial_graph(&latitude(), RadialProfile::SqrtG(p("C")), (-0.4, 1.0))?,
        "pd_radial" => {
            let frame = NormalFrame::shipped(BaseCurve::Latitude(p("lat")));
            let curve = arc_curve(
                SpaceForm::Sphere,
                Profile::Poly(vec![0.0, p("b1"), p("b2")]),
                Profile::Poly(vec![0.0, p("A"), p("a2")]),
            )?;
            pd_radial(&frame, &curve, (-1.0, 1.0))?
        }
        "pd_radial_log_sec" => {
            let frame = NormalFrame::shipped(BaseCurve::Latitude(p("lat")));
            let curve = arc_curve(SpaceForm::Sphere, Profile::linear(1.0, 0.0), Profile::LogSec(p("C")))?;
            // The last component must be strictly monotone.
            let c = p("C");
            pd_radial(&frame, &curve, (0.15 - c, 1.5 - c))?
        }
        "killing_horocycle" => killing_horocycle(p("A"))?,
        "killing_geodesic" => killing_geodesic(p("A"))?,
        "killing_pd" => killing_pd(Profile::linear(1.0, 0.0), Profile::Poly(vec![0.0, p("A"), p("a2")]))?,
        "log_spiral_cylinder" => log_spiral_cylinder(p("A"))?,
        "dini" => dini(p("sigma"))?,
        "inversion_cr" => inversion_cr(p("A"))?,
        _ => unreachable!("lookup succeeded"),
    };
    spec.name = name.to_string();
    for (k, _) in defaults {
        spec.params.insert(k.to_string(), p(k));
    }
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_builds_with_defaults() {
        for name in names() {
            let spec = by_name(name, &GalleryParams::new()).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(spec.name, name);
        }
    }

    #[test]
    fn unknown_names_and_parameters_are_rejected() {
        assert!(by_name("nope", &GalleryParams::new()).is_err());
        let mut p = GalleryParams::new();
        p.insert("bogus".into(), 1.0);
        assert!(by_name("helix", &p).is_err());
    }

    #[test]
    fn parameters_override_defaults() {
        let mut p = GalleryParams::new();
        p.insert("A".into(), 2.0);
        let spec = by_name("helix", &p).unwrap();
        assert_eq!(spec.params["A"], 2.0);
    }
}
