//! Suites relating several properties: parallel-field equivalences, invariance under the
//! conformal atlas, and CR ⇒ PD for hypersurfaces.

use subgeom::verify::suites::{conformal_invariance, hypersurface_implication, parallel_field_equivalences};
use subgeom::verify::VerifyOptions;

#[test]
fn parallel_field_conditions_agree() {
    let cases = parallel_field_equivalences(20, 7, 9, 1e-5).unwrap();
    for c in &cases {
        println!("{c:?}");
        assert!(c.agree(), "{c:?}");
        assert_eq!(c.geodesic, c.expected, "{c:?}");
    }
    assert_eq!(cases.iter().filter(|c| c.expected).count(), 10);
}

#[test]
fn ratios_survive_the_atlas() {
    let cases = conformal_invariance(7, &VerifyOptions::default()).unwrap();
    let maps: std::collections::BTreeSet<&str> = cases.iter().map(|c| c.map.as_str()).collect();
    assert_eq!(maps.len(), 9, "{maps:?}");
    for c in &cases {
        println!("{c:?}");
        assert!(c.holds(1e-6), "{c:?}");
    }
    // Both outcomes occur, so agreement is not vacuous.
    assert!(cases.iter().any(|c| c.ratio_verdicts.0));
    assert!(cases.iter().any(|c| !c.ratio_verdicts.0));
}

#[test]
fn constant_ratio_hypersurfaces_have_principal_direction() {
    let rows = hypersurface_implication(9, &VerifyOptions::default()).unwrap();
    assert!(rows.len() >= 10, "{rows:?}");
    for (name, field, cr, pd) in &rows {
        assert!(!cr || *pd, "{name} vs {field}");
    }
}
