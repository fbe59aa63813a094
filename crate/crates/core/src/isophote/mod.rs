//! Isophote curves: extraction, verification, axis reconstruction and the
//! characterization checks.
//!
//! Every case shares one algebraic form. With `delta = k_n^2 - tau_g^2` and
//! `w = tau_g T + k_n B`, the axis of an isophote is
//!
//! ```text
//! d = lambda * A * w / sqrt|delta| + c N,      lambda = +1 or -1
//! ```
//!
//! where `c = <N, d>` and `A^2 = (<d,d> - c^2) / <w,w>/|delta|`. Requiring
//! `<N'', d> = 0` gives `c / A = -lambda * Phi` with
//!
//! ```text
//! Phi = (tau_g' k_n - k_n' tau_g + k_g delta) / (delta * sqrt|delta|)
//! ```
//!
//! so the characterization function of each case is `-lambda * Phi` and must
//! be constant along an isophote.

mod extract;
mod fit;
mod gauss;
mod lift;
mod report;
mod slant;

use std::fmt;

pub use extract::{extract_isophotes, Extraction, IsophoteCurve, Vertex};
pub use fit::fit_axis;
pub use gauss::{gauss_map_geodesic_curvature, GaussSample};
pub use lift::{lift_polyline, lift_vertex};
pub use report::{report_from_stations, theorem_report, Check, Status, TheoremReport, GAUSS_MATCH_TOL, SLANT_MATCH_TOL};
pub use slant::{frenet_axis, slant_helix_function, SlantHelix};

use crate::curve::{self, Arclength, CurveSpec, DarbouxSample};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::lorentz::{angle_invariant, AngleKind, CausalClass, MVec3};
use crate::tolerances::Tolerances;

/// The six isophote cases, by curve class, sign of `k_n^2 - tau_g^2` and axis class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IsophoteCase {
    /// Spacelike curve, spacelike axis, `<N,d> = cosh`.
    C1a,
    /// Spacelike curve, spacelike axis, `<N,d> = cos`.
    C1b,
    /// Spacelike curve, timelike axis, `<N,d> = sinh`.
    C2,
    /// Timelike curve, spacelike axis, `<N,d> = cos`.
    C3a,
    /// Timelike curve, spacelike axis, `<N,d> = cosh`.
    C3b,
    /// Timelike curve, timelike axis, `<N,d> = sinh`.
    C4,
}

impl IsophoteCase {
    pub const ALL: [IsophoteCase; 6] = [
        IsophoteCase::C1a,
        IsophoteCase::C1b,
        IsophoteCase::C2,
        IsophoteCase::C3a,
        IsophoteCase::C3b,
        IsophoteCase::C4,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IsophoteCase::C1a => "C1a",
            IsophoteCase::C1b => "C1b",
            IsophoteCase::C2 => "C2",
            IsophoteCase::C3a => "C3a",
            IsophoteCase::C3b => "C3b",
            IsophoteCase::C4 => "C4",
        }
    }

    pub fn curve_class(self) -> CausalClass {
        match self {
            IsophoteCase::C1a | IsophoteCase::C1b | IsophoteCase::C2 => CausalClass::Spacelike,
            _ => CausalClass::Timelike,
        }
    }

    pub fn axis_class(self) -> CausalClass {
        match self {
            IsophoteCase::C2 | IsophoteCase::C4 => CausalClass::Timelike,
            _ => CausalClass::Spacelike,
        }
    }

    /// Whether the case needs `k_n^2 - tau_g^2 > 0`.
    pub fn delta_positive(self) -> bool {
        matches!(self, IsophoteCase::C1a | IsophoteCase::C2 | IsophoteCase::C3a)
    }

    pub fn angle_kind(self) -> AngleKind {
        match self {
            IsophoteCase::C1a | IsophoteCase::C3b => AngleKind::Cosh,
            IsophoteCase::C1b | IsophoteCase::C3a => AngleKind::Cos,
            IsophoteCase::C2 | IsophoteCase::C4 => AngleKind::Sinh,
        }
    }

    /// Name of the inverse function whose argument is the characterization value.
    pub fn ratio_function(self) -> &'static str {
        match self {
            IsophoteCase::C1a | IsophoteCase::C3b => "coth",
            IsophoteCase::C1b | IsophoteCase::C3a => "cot",
            IsophoteCase::C2 | IsophoteCase::C4 => "tanh",
        }
    }

    /// Whether `v` lies in the range of the case's `c / A` function.
    pub fn ratio_in_range(self, v: f64) -> bool {
        match self.ratio_function() {
            "coth" => v.abs() > 1.0,
            "tanh" => v.abs() < 1.0,
            _ => v.is_finite(),
        }
    }

    /// `<w,w> / |delta|` for the case's curve class and delta sign.
    fn w_sq(self) -> f64 {
        let spacelike = self.curve_class() == CausalClass::Spacelike;
        if spacelike == self.delta_positive() {
            -1.0
        } else {
            1.0
        }
    }

    /// `A = |<d, w_hat>|` as a function of `c`; `None` outside the case's domain.
    pub fn amplitude(self, c: f64) -> Option<f64> {
        let a2 = (self.axis_class().sign() - c * c) / self.w_sq();
        (a2 >= 0.0 && a2.is_finite()).then(|| a2.sqrt())
    }

    /// Inverts `v = c / A(c)`, taking `sign(c) = sign(v)`.
    pub fn c_from_ratio(self, v: f64) -> Result<f64> {
        if !self.ratio_in_range(v) {
            return Err(Error::AngleRange { case: self, c: v });
        }
        let r = v * v;
        let c2 = r * self.axis_class().sign() / (self.w_sq() + r);
        if !(c2 >= 0.0 && c2.is_finite()) {
            return Err(Error::AngleRange { case: self, c: v });
        }
        Ok(c2.sqrt().copysign(v))
    }

    /// The unique case with this curve class, delta sign and axis class.
    pub fn from_parts(curve: CausalClass, delta_positive: bool, axis: CausalClass) -> Option<IsophoteCase> {
        IsophoteCase::ALL
            .into_iter()
            .find(|k| k.curve_class() == curve && k.delta_positive() == delta_positive && k.axis_class() == axis)
    }
}

impl fmt::Display for IsophoteCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for IsophoteCase {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        IsophoteCase::ALL
            .into_iter()
            .find(|k| k.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown case `{s}`"))
    }
}

/// Relative floor on `|delta|` below which a station is treated as `k_n^2 = tau_g^2`.
const DELTA_FLOOR: f64 = 1e-10;

fn delta_degenerate(s: &DarbouxSample) -> bool {
    s.delta().abs() <= DELTA_FLOOR * (1.0 + s.k_n * s.k_n + s.tau_g * s.tau_g)
}

/// Checks the case's class and delta-sign requirements at every station.
pub fn check_admissible(samples: &[DarbouxSample], case: IsophoteCase) -> Result<()> {
    for (i, s) in samples.iter().enumerate() {
        let sign_ok = (s.delta() > 0.0) == case.delta_positive();
        if s.class != case.curve_class() || delta_degenerate(s) || !sign_ok {
            return Err(Error::CaseInadmissible { case, station: i, delta: s.delta() });
        }
    }
    Ok(())
}

/// `Phi` at one station, in the form that never divides by `k_n`.
pub fn phi_function(s: &DarbouxSample) -> f64 {
    let delta = s.delta();
    let w = s.tau_g_prime * s.k_n - s.k_n_prime * s.tau_g;
    (w + s.k_g * delta) / (delta * delta.abs().sqrt())
}

/// Branch `lambda` of the axis formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn lambda(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Plus => "+",
            Branch::Minus => "-",
        }
    }
}

/// Summary statistics of a sampled scalar.
#[derive(Debug, Clone, PartialEq)]
pub struct Constancy {
    pub values: Vec<f64>,
    pub mean: f64,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub constant: bool,
}

impl Constancy {
    /// Passes when `max |x - mean| <= rel_tol * (1 + |mean|)`.
    pub fn of(values: Vec<f64>, rel_tol: f64) -> Constancy {
        let n = values.len().max(1) as f64;
        let mean = values.iter().sum::<f64>() / n;
        let max_deviation = values.iter().map(|x| (x - mean).abs()).fold(0.0, f64::max);
        let tolerance = rel_tol * (1.0 + mean.abs());
        let constant = max_deviation <= tolerance && values.iter().all(|x| x.is_finite());
        Constancy { values, mean, max_deviation, tolerance, constant }
    }
}

/// Characterization values for both sign branches.
#[derive(Debug, Clone, PartialEq)]
pub struct Characterization {
    pub case: IsophoteCase,
    /// `lambda = +1`: values `-Phi`.
    pub plus: Constancy,
    /// `lambda = -1`: values `+Phi`.
    pub minus: Constancy,
    /// Whether the mean lies in the range of the case's inverse function.
    pub in_range: bool,
}

impl Characterization {
    pub fn constant(&self) -> bool {
        self.plus.constant
    }

    pub fn branch(&self, b: Branch) -> &Constancy {
        match b {
            Branch::Plus => &self.plus,
            Branch::Minus => &self.minus,
        }
    }
}

/// Evaluates the case's characterization function at every station.
pub fn characterization_function(
    samples: &[DarbouxSample],
    case: IsophoteCase,
    tol: &Tolerances,
) -> Result<Characterization> {
    check_admissible(samples, case)?;
    let phi: Vec<f64> = samples.iter().map(phi_function).collect();
    let plus = Constancy::of(phi.iter().map(|x| -x).collect(), tol.constancy);
    let minus = Constancy::of(phi, tol.constancy);
    let in_range = case.ratio_in_range(plus.mean);
    Ok(Characterization { case, plus, minus, in_range })
}

/// Picks the case from the curve class, the sign of delta and `|Phi|`.
///
/// For a fixed curve class and delta sign at most two cases remain, and they
/// differ in the range of `c / A`, which `|Phi|` decides.
pub fn detect_case(samples: &[DarbouxSample]) -> Result<IsophoteCase> {
    let first = samples.first().ok_or_else(|| Error::Domain("no stations".into()))?;
    if delta_degenerate(first) {
        return Err(Error::CaseInadmissible { case: IsophoteCase::C2, station: 0, delta: first.delta() });
    }
    let positive = first.delta() > 0.0;
    let mean = samples.iter().map(phi_function).sum::<f64>() / samples.len() as f64;
    let candidates: Vec<IsophoteCase> = IsophoteCase::ALL
        .into_iter()
        .filter(|k| k.curve_class() == first.class && k.delta_positive() == positive)
        .collect();
    let case = candidates
        .iter()
        .copied()
        .find(|k| k.ratio_in_range(mean))
        .ok_or(Error::AngleRange { case: candidates[0], c: mean })?;
    check_admissible(samples, case)?;
    Ok(case)
}

/// An axis candidate with its sampled values and residuals.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisEstimate {
    pub d: MVec3,
    pub causal: CausalClass,
    /// `None` for the variance fit.
    pub case: Option<IsophoteCase>,
    pub branch: Option<Branch>,
    pub c: f64,
    pub samples: Vec<MVec3>,
    /// `max_s |d(s) - d_hat|` (Euclidean).
    pub residual_const: f64,
    /// `max_s |d'(s)|` by central differences (Euclidean).
    pub residual_deriv: f64,
}

fn fd_derivative_residual(ss: &[f64], ds: &[MVec3]) -> f64 {
    let n = ds.len();
    if n < 2 {
        return 0.0;
    }
    (0..n)
        .map(|i| {
            let (a, b) = (i.saturating_sub(1), (i + 1).min(n - 1));
            let h = ss[b] - ss[a];
            if h == 0.0 {
                0.0
            } else {
                ((ds[b] - ds[a]) / h).enorm()
            }
        })
        .fold(0.0, f64::max)
}

/// Both sign branches of the case formula; no constancy verdict.
pub fn reconstruct_branches(
    samples: &[DarbouxSample],
    case: IsophoteCase,
    c: f64,
    tol: &Tolerances,
) -> Result<[AxisEstimate; 2]> {
    check_admissible(samples, case)?;
    let amp = case.amplitude(c).ok_or(Error::AngleRange { case, c })?;
    let ss: Vec<f64> = samples.iter().map(|s| s.s).collect();
    let build = |branch: Branch| -> Result<AxisEstimate> {
        let lam = branch.lambda();
        let ds: Vec<MVec3> = samples
            .iter()
            .map(|s| {
                let w = s.tau_g * s.tangent + s.k_n * s.binormal;
                (lam * amp / s.delta().abs().sqrt()) * w + c * s.normal
            })
            .collect();
        let n = ds.len().max(1) as f64;
        let mean = ds.iter().fold(MVec3::ZERO, |a, &b| a + b) / n;
        let d = mean.normalize(tol.causal)?;
        let residual_const = ds.iter().map(|&x| (x - d).enorm()).fold(0.0, f64::max);
        Ok(AxisEstimate {
            d,
            causal: d.causal_class(tol.causal),
            case: Some(case),
            branch: Some(branch),
            c,
            residual_deriv: fd_derivative_residual(&ss, &ds),
            samples: ds,
            residual_const,
        })
    };
    Ok([build(Branch::Plus)?, build(Branch::Minus)?])
}

/// Selects the branch with the smaller constancy residual and requires it to
/// pass `axis_tol`.
pub fn reconstruct_axis(
    samples: &[DarbouxSample],
    case: IsophoteCase,
    c: f64,
    tol: &Tolerances,
) -> Result<AxisEstimate> {
    let [p, m] = reconstruct_branches(samples, case, c, tol)?;
    let best = if m.residual_const < p.residual_const { m } else { p };
    let residual = best.residual_const.max(best.residual_deriv);
    if !(residual <= tol.axis) {
        return Err(Error::NonConstantAxis { residual, tolerance: tol.axis });
    }
    Ok(best)
}

/// Outcome of a constant-angle check along a curve.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub c_mean: f64,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub kind: AngleKind,
    pub values: Vec<f64>,
    pub passed: bool,
}

/// Evaluates `<N_hat(s), d>` at `stations` uniform arclength stations.
pub fn verify_isophote(
    curve: &CurveSpec,
    d: MVec3,
    stations: usize,
    tol: &Tolerances,
    exec: Exec,
) -> Result<VerifyReport> {
    let surface = curve
        .surface()
        .ok_or_else(|| Error::Domain("verification needs a surface curve".into()))?;
    let d = d.normalize(tol.causal)?;
    let arc = Arclength::new(curve, stations.max(64), tol)?;
    let ss = curve::stations(&arc, stations);
    let normals: Vec<MVec3> = exec
        .map(&ss, |&s| -> Result<MVec3> {
            let t = arc.t_of_s(s)?;
            let (u, v) = curve.jet_len(t, 1)?.uv.unwrap_or_default();
            Ok(surface.normal(u, v, tol)?.1)
        })
        .into_iter()
        .collect::<Result<_>>()?;
    verify_normals(&normals, d, tol)
}

/// The verification verdict for precomputed unit normals.
pub fn verify_normals(normals: &[MVec3], d: MVec3, tol: &Tolerances) -> Result<VerifyReport> {
    let first = normals.first().ok_or_else(|| Error::Domain("no stations".into()))?;
    let values: Vec<f64> = normals.iter().map(|n| n.mdot(d)).collect();
    let stats = Constancy::of(values, 0.0);
    let kind = angle_invariant(*first, d, tol.causal)?.kind;
    let tolerance = tol.verify_band(stats.mean);
    Ok(VerifyReport {
        c_mean: stats.mean,
        max_deviation: stats.max_deviation,
        tolerance,
        kind,
        passed: stats.max_deviation <= tolerance,
        values: stats.values,
    })
}
