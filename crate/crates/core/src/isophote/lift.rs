//! Lifting extracted polylines to surface curves.
//!
//! Each vertex lies on `g = c`; the integral curve of `(-g_v, g_u)` through it
//! is the level curve itself, so its Taylor jet (built by Picard iteration on
//! jets) gives exact Darboux data at the vertex without fitting the polyline.

use super::IsophoteCurve;
use crate::curve::{station_at, CurveJet, Station};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::jet::{Jet, JET_LEN};
use crate::surface::{Domain, IsophoteField};
use crate::tolerances::Tolerances;

fn wrapped_diff(dom: &Domain, a: f64, b: f64) -> f64 {
    let d = b - a;
    if dom.periodic {
        let p = dom.span();
        d - p * (d / p).round()
    } else {
        d
    }
}

/// Curve jet of the level curve through `(u, v)`, traversed along
/// `orientation * (-g_v, g_u)` at unit parameter speed.
pub fn lift_vertex(field: &IsophoteField, u: f64, v: f64, orientation: f64) -> Result<CurveJet> {
    let mut uc = vec![u];
    let mut vc = vec![v];
    for k in 1..JET_LEN {
        let (gu, gv) = field.gradient_jets(Jet::from_coeffs(&uc), Jet::from_coeffs(&vc))?;
        let norm = (gu * gu + gv * gv).sqrt()?;
        if norm.value() == 0.0 {
            return Err(Error::Domain(format!("critical point at (u, v) = ({u}, {v})")));
        }
        let fu = (-gv).div(&norm)?.scale(orientation);
        let fv = gu.div(&norm)?.scale(orientation);
        uc.push(fu.coeff(k - 1) / k as f64);
        vc.push(fv.coeff(k - 1) / k as f64);
    }
    let (uj, vj) = (Jet::from_coeffs(&uc), Jet::from_coeffs(&vc));
    let (alpha, n) = field.surface.jets(uj, vj)?;
    Ok(CurveJet { param: 0.0, alpha, normal_raw: Some(n), uv: Some((u, v)) })
}

/// Frenet and Darboux data at every vertex, with `s` from cumulative
/// Minkowski chord length.
pub fn lift_polyline(
    field: &IsophoteField,
    curve: &IsophoteCurve,
    tol: &Tolerances,
    exec: Exec,
) -> Result<Vec<Station>> {
    let vs = &curve.vertices;
    let n = vs.len();
    if n < 2 {
        return Err(Error::Domain("polyline needs at least two vertices".into()));
    }
    let (du, dv) = (&field.surface.u, &field.surface.v);
    let points = vs
        .iter()
        .map(|x| field.surface.point(x.u, x.v))
        .collect::<Result<Vec<_>>>()?;
    let mut s = vec![0.0; n];
    for i in 1..n {
        let d = points[i] - points[i - 1];
        s[i] = s[i - 1] + d.mnorm_sq().abs().sqrt();
    }
    let idx: Vec<usize> = (0..n).collect();
    exec.map(&idx, |&i| -> Result<Station> {
        let (a, b) = match (i, curve.closed) {
            (0, true) => (n - 1, 1),
            (i, true) if i == n - 1 => (n - 2, 0),
            (0, false) => (0, 1),
            (i, false) if i == n - 1 => (n - 2, n - 1),
            (i, _) => (i - 1, i + 1),
        };
        let chord = (wrapped_diff(du, vs[a].u, vs[b].u), wrapped_diff(dv, vs[a].v, vs[b].v));
        let (gu, gv) = field.gradient(vs[i].u, vs[i].v)?;
        let orientation = if -gv * chord.0 + gu * chord.1 >= 0.0 { 1.0 } else { -1.0 };
        let jet = lift_vertex(field, vs[i].u, vs[i].v, orientation)?;
        station_at(&jet, s[i], tol)
    })
    .into_iter()
    .collect()
}
