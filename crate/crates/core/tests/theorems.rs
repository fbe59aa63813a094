//! Characterization, slant-helix, Gauss-map and geodesic equivalence checks
//! on the fixture curves.

mod common;

use common::{cylinder, de_sitter, on};
use isophote::curve::{darboux_apparatus, frenet_apparatus, stations, Arclength, CurveSpec};
use isophote::isophote::{
    characterization_function, detect_case, gauss_map_geodesic_curvature, phi_function, slant_helix_function,
    theorem_report, IsophoteCase, Status,
};
use isophote::{Exec, MVec3, Tolerances};

fn samples(c: &CurveSpec, n: usize) -> Vec<isophote::curve::DarbouxSample> {
    let tol = Tolerances::default();
    let arc = Arclength::new(c, 128, &tol).unwrap();
    darboux_apparatus(c, &arc, &stations(&arc, n), &tol, Exec::auto()).unwrap()
}

fn latitude() -> CurveSpec {
    on(de_sitter(), "0.5", "t", (0.0, 6.0))
}

fn helix() -> CurveSpec {
    on(cylinder(), "t", "t/2", (0.0, 6.0))
}

/// Geodesics: the helix C, the timelike helix and a timelike meridian of B.
fn geodesics() -> Vec<(&'static str, CurveSpec, MVec3)> {
    vec![
        ("C helix", helix(), MVec3::E0),
        ("timelike helix", on(cylinder(), "t", "2*t", (0.0, 0.9)), MVec3::E0),
        ("B meridian", on(de_sitter(), "t", "0.7", (-1.0, 1.0)), MVec3::new(0.0, -0.7f64.sin(), 0.7f64.cos())),
    ]
}

#[test]
fn latitude_characterization_is_tanh_half() {
    let tol = Tolerances::default();
    let s = samples(&latitude(), 200);
    let case = detect_case(&s).unwrap();
    assert_eq!(case, IsophoteCase::C2);
    let ch = characterization_function(&s, case, &tol).unwrap();
    assert!(ch.constant());
    for v in &ch.plus.values {
        assert!((v.abs() - 0.5f64.tanh()).abs() < 1e-6);
    }
}

#[test]
fn helix_characterization_vanishes() {
    let tol = Tolerances::default();
    let s = samples(&helix(), 200);
    let ch = characterization_function(&s, IsophoteCase::C2, &tol).unwrap();
    assert!(ch.plus.values.iter().all(|v| v.abs() < 1e-6));
}

#[test]
fn perturbed_curve_is_not_characterized() {
    let tol = Tolerances::default();
    let s = samples(&on(de_sitter(), "0.5+0.1*sin(2*t)", "t", (0.0, 6.2)), 200);
    let ch = characterization_function(&s, IsophoteCase::C2, &tol).unwrap();
    assert!(ch.plus.max_deviation > 1e-2);
    assert!(!ch.constant());
}

#[test]
fn gauss_map_matches_characterization() {
    for c in [latitude(), helix(), on(de_sitter(), "0.5+0.1*sin(2*t)", "t", (0.0, 6.0))] {
        let s = samples(&c, 200);
        let g = gauss_map_geodesic_curvature(&s).unwrap();
        for (gi, si) in g.iter().zip(&s) {
            assert!((gi.k_bar_g.abs() - phi_function(si).abs()).abs() < 1e-6, "{} vs {}", gi.k_bar_g, phi_function(si));
        }
    }
    // the helix image is the equator of the de Sitter sphere, a geodesic
    let g = gauss_map_geodesic_curvature(&samples(&helix(), 50)).unwrap();
    assert!(g.iter().all(|x| x.k_bar_g.abs() < 1e-12));
}

#[test]
fn slant_helix_detection() {
    let tol = Tolerances::default();
    let frenet = |c: &CurveSpec| {
        let arc = Arclength::new(c, 128, &tol).unwrap();
        frenet_apparatus(c, &arc, &stations(&arc, 200), &tol, Exec::auto()).unwrap()
    };
    let h = slant_helix_function(&frenet(&helix()), &tol).unwrap();
    assert!(h.is_slant_helix());
    assert!(h.values.values.iter().all(|v| v.abs() < 1e-10));
    let p = slant_helix_function(&frenet(&on(cylinder(), "t+0.1*sin(t)", "t/2", (0.0, 6.0))), &tol).unwrap();
    assert!(!p.is_slant_helix());
}

#[test]
fn geodesic_equivalence_and_frenet_axis() {
    let tol = Tolerances::default();
    for (name, c, d) in geodesics() {
        let r = theorem_report(&c, Some(d), 200, &tol, Exec::auto()).unwrap();
        for check in &r.checks {
            assert_eq!(check.status, Status::Pass, "{name}: {check}");
        }
    }
}

#[test]
fn latitude_is_an_isophote_but_not_a_geodesic() {
    let tol = Tolerances::default();
    let r = theorem_report(&latitude(), Some(MVec3::E0), 200, &tol, Exec::auto()).unwrap();
    assert!(r.is_isophote());
    assert_eq!(r.check("geodesic").unwrap().status, Status::Fail);
    assert!(r.check("characterization").unwrap().passed());
    assert!(r.check("gauss_map").unwrap().passed());
    assert!(r.axis.as_ref().unwrap().d.dist_up_to_sign(MVec3::E0) < 1e-8);
    assert!(matches!(r.check("frenet_axis").unwrap().status, Status::Skipped(_)));
}

#[test]
fn report_without_axis_uses_the_fit() {
    let tol = Tolerances::default();
    let r = theorem_report(&helix(), None, 200, &tol, Exec::auto()).unwrap();
    assert!(r.is_isophote());
    assert!(r.axis.unwrap().d.dist_up_to_sign(MVec3::E0) < 1e-8);
}
