#![allow(dead_code)]

pub mod oracle;

use std::f64::consts::PI;

use isophote::curve::CurveSpec;
use isophote::expr::parse;
use isophote::surface::{Domain, SurfaceSpec};
use isophote::isophote::IsophoteCase;
use isophote::MVec3;

pub fn surface(x: [&str; 3], u: Domain, v: Domain) -> SurfaceSpec {
    SurfaceSpec::new(x.map(|s| parse(s).unwrap()), u, v).unwrap()
}

/// `(v, cos u, sin u)`.
pub fn cylinder() -> SurfaceSpec {
    surface(["v", "cos(u)", "sin(u)"], Domain::new(0.0, 2.0 * PI, true), Domain::new(-2.0, 2.0, false))
}

/// `(sinh u, cosh u cos v, cosh u sin v)`.
pub fn de_sitter() -> SurfaceSpec {
    surface(
        ["sinh(u)", "cosh(u)*cos(v)", "cosh(u)*sin(v)"],
        Domain::new(-2.0, 2.0, false),
        Domain::new(0.0, 2.0 * PI, true),
    )
}

/// `(u, v, u v)`.
pub fn saddle(u: (f64, f64), v: (f64, f64)) -> SurfaceSpec {
    surface(["u", "v", "u*v"], Domain::new(u.0, u.1, false), Domain::new(v.0, v.1, false))
}

pub fn on(s: SurfaceSpec, u: &str, v: &str, t: (f64, f64)) -> CurveSpec {
    CurveSpec::on_surface(parse(u).unwrap(), parse(v).unwrap(), s, t.0, t.1)
}

/// A closed-form isophote for each case: `(case, curve, d, c)`.
pub fn case_fixtures() -> Vec<(IsophoteCase, CurveSpec, MVec3, f64)> {
    let e3 = MVec3::E2;
    let e1 = MVec3::E0;
    let s05 = 0.5f64.sinh();
    vec![
        // cosh u sin v = 1.5, u = acosh(1.5 / sin v)
        (
            IsophoteCase::C1a,
            on(de_sitter(), "log(1.5/sin(t)+sqrt((1.5/sin(t))^2-1))", "t", (0.3, 1.2)),
            e3,
            1.5,
        ),
        // -sinh u = -sinh 0.5: the latitude u = 0.5
        (IsophoteCase::C2, on(de_sitter(), "0.5", "t", (0.0, 6.0)), e1, -s05),
        // cosh u sin v = 0.5, u = acosh(0.5 / sin v)
        (
            IsophoteCase::C3a,
            on(de_sitter(), "log(0.5/sin(t)+sqrt((0.5/sin(t))^2-1))", "t", (0.05, 0.45)),
            e3,
            0.5,
        ),
        // -1/sqrt(1+u^2-v^2) = -0.95
        (
            IsophoteCase::C1b,
            on(saddle((-0.5, 0.5), (-0.5, 0.5)), "sqrt(1/0.9025-1+t^2)", "t", (-0.3, 0.3)),
            e3,
            -0.95,
        ),
        // v/sqrt(1+u^2-v^2) = 0.2
        (IsophoteCase::C4, on(saddle((-0.5, 0.5), (-0.5, 0.5)), "t", "sqrt(0.04*(1+t^2)/1.04)", (-0.5, 0.5)), e1, 0.2),
        // -1/sqrt(1+u^2-v^2) = -1.05
        (
            IsophoteCase::C3b,
            on(saddle((-0.2, 0.2), (-0.5, 0.5)), "t", "sqrt(1-1/1.1025+t^2)", (-0.2, 0.2)),
            e3,
            -1.05,
        ),
    ]
}

/// Named curves used by the frame suites: curves on A and B, the helix C
/// and the timelike helix.
pub fn frame_fixtures() -> Vec<(&'static str, CurveSpec)> {
    vec![
        ("A circle", on(cylinder(), "t", "0.3", (0.0, 6.0))),
        ("A oblique", on(cylinder(), "t+0.1*sin(t)", "t/2", (0.0, 6.0))),
        ("B latitude", on(de_sitter(), "0.5", "t", (0.0, 6.0))),
        ("B wobble", on(de_sitter(), "0.5+0.1*sin(2*t)", "t", (0.0, 6.0))),
        ("C helix", on(cylinder(), "t", "t/2", (0.0, 6.0))),
        ("timelike helix", on(cylinder(), "t", "2*t", (0.0, 0.9))),
        ("timelike saddle", on(saddle((-0.5, 0.5), (-0.5, 0.5)), "0.3*t", "t", (-0.4, 0.4))),
    ]
}

use isophote::curve::Station;
use isophote::isophote::{extract_isophotes, lift_polyline, reconstruct_axis, fit_axis, AxisEstimate};
use isophote::surface::IsophoteField;
use isophote::{Exec, Tolerances};

/// Seeded extraction fixtures: `(case, surface, d, c)`. Domains are cut so
/// that the chosen component keeps one causal class and delta sign.
pub fn extraction_fixtures() -> Vec<(IsophoteCase, SurfaceSpec, MVec3, f64)> {
    let ds = |u: (f64, f64)| {
        surface(
            ["sinh(u)", "cosh(u)*cos(v)", "cosh(u)*sin(v)"],
            Domain::new(u.0, u.1, false),
            Domain::new(0.0, 2.0 * PI, true),
        )
    };
    vec![
        (IsophoteCase::C1a, ds((0.0, 1.5)), MVec3::E2, 1.5),
        (IsophoteCase::C2, ds((-1.5, 1.5)), MVec3::E0, -0.5f64.sinh()),
        (IsophoteCase::C3a, ds((0.2, 1.5)), MVec3::E2, 0.5),
        (IsophoteCase::C1b, saddle((-0.5, 0.5), (-0.5, 0.5)), MVec3::E2, -0.95),
        (IsophoteCase::C4, saddle((-0.5, 0.5), (-0.5, 0.5)), MVec3::E0, 0.2),
        (IsophoteCase::C3b, saddle((-0.2, 0.2), (-0.5, 0.5)), MVec3::E2, -1.05),
    ]
}

/// Longest contiguous run of stations admissible for `case`.
pub fn admissible_run(sts: &[Station], case: IsophoteCase) -> Vec<Station> {
    let ok = |s: &Station| {
        s.darboux.is_some_and(|d| {
            let delta = d.delta();
            d.class == case.curve_class()
                && (delta > 0.0) == case.delta_positive()
                && delta.abs() > 1e-6 * (1.0 + d.k_n * d.k_n)
        })
    };
    let mut best: &[Station] = &[];
    let mut start = 0;
    for i in 0..=sts.len() {
        if i == sts.len() || !ok(&sts[i]) {
            if i - start > best.len() {
                best = &sts[start..i];
            }
            start = i + 1;
        }
    }
    best.to_vec()
}

pub struct Roundtrip {
    pub stations: usize,
    pub max_vertex_residual: f64,
    pub axis: isophote::Result<AxisEstimate>,
    pub fit: isophote::Result<AxisEstimate>,
}

/// Extracts `g = c`, lifts the longest component and reconstructs the axis.
pub fn roundtrip(case: IsophoteCase, s: SurfaceSpec, d: MVec3, c: f64, grid: usize, exec: Exec) -> Roundtrip {
    let tol = Tolerances::default();
    let field = IsophoteField::new(s, d, tol).unwrap();
    let ex = extract_isophotes(&field, c, grid, grid, &tol, exec).unwrap();
    let max_vertex_residual = ex.curves.iter().map(|k| k.residual).fold(0.0, f64::max);
    let longest = ex.curves.iter().max_by_key(|k| k.vertices.len()).expect("no component");
    let sts = lift_polyline(&field, longest, &tol, exec).unwrap();
    let run = admissible_run(&sts, case);
    let samples: Vec<_> = run.iter().filter_map(|s| s.darboux).collect();
    let normals: Vec<MVec3> = samples.iter().map(|s| s.normal).collect();
    Roundtrip {
        stations: samples.len(),
        max_vertex_residual,
        axis: reconstruct_axis(&samples, case, c, &tol),
        fit: fit_axis(&normals, &tol),
    }
}
