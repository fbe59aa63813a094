//! Aggregated theorem checks for one surface curve.

use std::fmt;

use super::{
    characterization_function, detect_case, fit_axis, frenet_axis, gauss_map_geodesic_curvature,
    phi_function, reconstruct_axis, slant_helix_function, verify_normals, AxisEstimate, Branch,
    IsophoteCase,
};
use crate::curve::{self, Arclength, CurveSpec, Station};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::lorentz::MVec3;
use crate::tolerances::Tolerances;

/// Tolerance for `| |Phi| - |f_slant| |` on geodesics.
pub const SLANT_MATCH_TOL: f64 = 1e-8;
/// Tolerance for `| |k_bar_g| - |Phi| |`.
pub const GAUSS_MATCH_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub enum Status {
    Pass,
    Fail,
    /// Not applicable, with the reason.
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub measured: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl Check {
    fn verdict(name: &'static str, measured: f64, tolerance: f64, detail: String) -> Check {
        let status = if measured <= tolerance { Status::Pass } else { Status::Fail };
        Check { name, status, measured, tolerance, detail }
    }

    fn failed(name: &'static str, err: &Error) -> Check {
        Check { name, status: Status::Fail, measured: f64::NAN, tolerance: f64::NAN, detail: err.to_string() }
    }

    fn skipped(name: &'static str, why: impl Into<String>) -> Check {
        Check { name, status: Status::Skipped(why.into()), measured: f64::NAN, tolerance: f64::NAN, detail: String::new() }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.status {
            Status::Skipped(why) => write!(f, "SKIP {:<16} {why}", self.name),
            status => {
                let tag = if *status == Status::Pass { "PASS" } else { "FAIL" };
                write!(
                    f,
                    "{tag} {:<16} measured={:.16e} tolerance={:.16e}",
                    self.name, self.measured, self.tolerance
                )?;
                if !self.detail.is_empty() {
                    write!(f, " ({})", self.detail)?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TheoremReport {
    pub checks: Vec<Check>,
    pub case: Option<IsophoteCase>,
    pub axis: Option<AxisEstimate>,
    pub c: Option<f64>,
}

impl TheoremReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Whether the isophote check passed; drives the CLI exit status.
    pub fn is_isophote(&self) -> bool {
        self.check("isophote").is_some_and(Check::passed)
    }
}

/// Runs every check on `stations` uniform stations of a surface curve. With
/// no axis given, the isophote verdict comes from the variance fit.
pub fn theorem_report(
    curve: &CurveSpec,
    d: Option<MVec3>,
    stations: usize,
    tol: &Tolerances,
    exec: Exec,
) -> Result<TheoremReport> {
    if curve.surface().is_none() {
        return Err(Error::Domain("theorem report needs a surface curve".into()));
    }
    let arc = Arclength::new(curve, stations.max(64), tol)?;
    let ss = curve::stations(&arc, stations);
    let sts = curve::station_apparatus(curve, &arc, &ss, tol, exec)?;
    Ok(report_from_stations(&sts, d, tol))
}

/// The report for precomputed stations (e.g. a lifted polyline).
pub fn report_from_stations(sts: &[Station], d: Option<MVec3>, tol: &Tolerances) -> TheoremReport {
    let darboux: Vec<_> = sts.iter().filter_map(|s| s.darboux).collect();
    let frenet: Vec<_> = sts.iter().map(|s| s.frenet).collect();
    let normals: Vec<MVec3> = darboux.iter().map(|s| s.normal).collect();
    let mut checks = Vec::new();

    // isophote
    let mut axis_hint = d;
    let mut c = None;
    match d {
        Some(d) => match d.normalize(tol.causal).and_then(|d| verify_normals(&normals, d, tol)) {
            Ok(r) => {
                c = Some(r.c_mean);
                checks.push(Check::verdict(
                    "isophote",
                    r.max_deviation,
                    r.tolerance,
                    format!("c = {:.16e}, kind {}", r.c_mean, r.kind),
                ));
            }
            Err(e) => checks.push(Check::failed("isophote", &e)),
        },
        None => match fit_axis(&normals, tol) {
            Ok(fit) => {
                axis_hint = Some(fit.d);
                c = Some(fit.c);
                checks.push(Check::verdict(
                    "isophote",
                    fit.residual_const,
                    tol.verify_band(fit.c),
                    format!("fitted d = ({:.16e}, {:.16e}, {:.16e})", fit.d.x0, fit.d.x1, fit.d.x2),
                ));
            }
            Err(e) => checks.push(Check::failed("isophote", &e)),
        },
    }

    // geodesic
    let max_kg = darboux.iter().map(|s| s.k_g.abs()).fold(0.0, f64::max);
    let geodesic = max_kg <= tol.geodesic;
    checks.push(Check::verdict("geodesic", max_kg, tol.geodesic, "max |k_g|".into()));

    // slant helix
    let slant = slant_helix_function(&frenet, tol);
    match &slant {
        Ok(h) => checks.push(Check::verdict(
            "slant_helix",
            h.values.max_deviation,
            h.values.tolerance,
            format!("mean {:.16e}", h.values.mean),
        )),
        Err(e) => checks.push(Check::failed("slant_helix", e)),
    }

    // characterization and axis
    let case = detect_case(&darboux);
    let mut axis = None;
    match &case {
        Ok(case) => match characterization_function(&darboux, *case, tol) {
            Ok(ch) => {
                checks.push(Check::verdict(
                    "characterization",
                    ch.plus.max_deviation,
                    ch.plus.tolerance,
                    format!("case {case}, {} argument {:.16e}", case.ratio_function(), ch.plus.mean),
                ));
                let c_case = c.unwrap_or(f64::NAN);
                let c_case = if case.amplitude(c_case).is_some() {
                    Ok(c_case)
                } else {
                    case.c_from_ratio(ch.plus.mean)
                };
                match c_case.and_then(|cc| reconstruct_axis(&darboux, *case, cc, tol)) {
                    Ok(a) => {
                        let mut detail = format!("d = ({:.16e}, {:.16e}, {:.16e})", a.d.x0, a.d.x1, a.d.x2);
                        let mut measured = a.residual_const.max(a.residual_deriv);
                        if let Some(h) = axis_hint {
                            if let Ok(h) = h.normalize(tol.causal) {
                                let dist = a.d.dist_up_to_sign(h);
                                detail.push_str(&format!(", distance to reference {dist:.16e}"));
                                measured = measured.max(dist);
                            }
                        }
                        checks.push(Check::verdict("axis", measured, tol.axis, detail));
                        axis = Some(a);
                    }
                    Err(e) => checks.push(Check::failed("axis", &e)),
                }
            }
            Err(e) => checks.push(Check::failed("characterization", &e)),
        },
        Err(e) => {
            checks.push(Check::failed("characterization", e));
            checks.push(Check::failed("axis", e));
        }
    }

    // Gauss image
    match gauss_map_geodesic_curvature(&darboux) {
        Ok(gs) if case.is_ok() => {
            let gap = gs
                .iter()
                .zip(&darboux)
                .map(|(g, s)| (g.k_bar_g.abs() - phi_function(s).abs()).abs())
                .fold(0.0, f64::max);
            checks.push(Check::verdict("gauss_map", gap, GAUSS_MATCH_TOL, "max ||k_bar_g| - |Phi||".into()));
        }
        Ok(_) => checks.push(Check::skipped("gauss_map", "no admissible case")),
        Err(e) => checks.push(Check::failed("gauss_map", &e)),
    }

    // Frenet substitution on geodesics
    if !geodesic {
        checks.push(Check::skipped("slant_equivalence", "curve is not a geodesic"));
        checks.push(Check::skipped("frenet_axis", "curve is not a geodesic"));
    } else {
        match &slant {
            Ok(h) => {
                let gap = h
                    .values
                    .values
                    .iter()
                    .zip(&darboux)
                    .map(|(f, s)| (f.abs() - phi_function(s).abs()).abs())
                    .fold(0.0, f64::max);
                let agree = h.is_slant_helix() == checks.iter().any(|c| c.name == "characterization" && c.passed());
                let detail = format!("verdicts {}", if agree { "agree" } else { "disagree" });
                let measured = if agree { gap } else { f64::INFINITY };
                checks.push(Check::verdict("slant_equivalence", measured, SLANT_MATCH_TOL, detail));
            }
            Err(e) => checks.push(Check::failed("slant_equivalence", e)),
        }
        match &axis {
            Some(a) => {
                let branch = a.branch.unwrap_or(Branch::Plus);
                match frenet_axis(sts, a.case.unwrap_or(IsophoteCase::C2), a.c, branch, tol) {
                    Ok(fa) => {
                        let dist = fa.d.dist_up_to_sign(a.d);
                        checks.push(Check::verdict(
                            "frenet_axis",
                            dist,
                            tol.axis,
                            format!("d_F = ({:.16e}, {:.16e}, {:.16e})", fa.d.x0, fa.d.x1, fa.d.x2),
                        ));
                    }
                    Err(e) => checks.push(Check::failed("frenet_axis", &e)),
                }
            }
            None => checks.push(Check::skipped("frenet_axis", "no Darboux axis")),
        }
    }

    TheoremReport { checks, case: case.ok(), axis, c }
}
