//! Axis recovery by variance minimization, independent of the case formulas.
//!
//! With `G = diag(-1, 1, 1)` and `m_i = G N_i`, the variance of `<N_i, d>` is
//! `d^T C d` for the covariance `C` of the `m_i`. Stationary points under
//! `<d, d> = +-1` solve `C d = lambda G d`, and the variance there is `|lambda|`.

use nalgebra::{Matrix3, Vector3};

use super::AxisEstimate;
use crate::error::{Error, Result};
use crate::lorentz::{CausalClass, MVec3};
use crate::tolerances::Tolerances;

const IMAG_TOL: f64 = 1e-9;
const TIE_TOL: f64 = 1e-10;

fn g() -> Matrix3<f64> {
    Matrix3::from_diagonal(&Vector3::new(-1.0, 1.0, 1.0))
}

/// Unit `d` minimizing the variance of `<N_i, d>`; canonical sign applied.
///
/// `residual_const` reports `max_i |<N_i, d> - c|`; `residual_deriv` is zero.
pub fn fit_axis(normals: &[MVec3], tol: &Tolerances) -> Result<AxisEstimate> {
    if normals.len() < 3 {
        return Err(Error::DegenerateFit(format!("{} stations, need at least 3", normals.len())));
    }
    let gm = g();
    let ms: Vec<Vector3<f64>> = normals.iter().map(|n| gm * Vector3::new(n.x0, n.x1, n.x2)).collect();
    let k = ms.len() as f64;
    let mean = ms.iter().fold(Vector3::zeros(), |a, m| a + m) / k;
    let cov = ms.iter().fold(Matrix3::zeros(), |a, m| {
        let x = m - mean;
        a + x * x.transpose()
    }) / k;
    let scale = cov.trace().abs().max(f64::MIN_POSITIVE);

    let mut roots: Vec<f64> = (gm * cov)
        .complex_eigenvalues()
        .iter()
        .filter(|z| z.im.abs() <= IMAG_TOL * scale)
        .map(|z| z.re)
        .collect();
    roots.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
    let Some(&lam) = roots.first() else {
        return Err(Error::DegenerateFit("no real stationary value".into()));
    };
    if roots.len() > 1 && (roots[1].abs() - lam.abs()).abs() <= TIE_TOL * scale {
        return Err(Error::DegenerateFit(format!(
            "minimizer not unique (stationary values {lam:e} and {:e})",
            roots[1]
        )));
    }
    let svd = (cov - lam * gm).svd(false, true);
    let v_t = svd.v_t.ok_or_else(|| Error::DegenerateFit("SVD failed".into()))?;
    let imin = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let row = v_t.row(imin);
    let raw = MVec3::new(row[0], row[1], row[2]);
    let class = raw.causal_class(tol.causal);
    if class == CausalClass::Lightlike {
        return Err(Error::DegenerateFit("minimizer is lightlike".into()));
    }
    let d = raw.normalize(tol.causal)?.canonical_sign();
    let values: Vec<f64> = normals.iter().map(|n| n.mdot(d)).collect();
    let c = values.iter().sum::<f64>() / k;
    let residual_const = values.iter().map(|x| (x - c).abs()).fold(0.0, f64::max);
    Ok(AxisEstimate {
        d,
        causal: class,
        case: None,
        branch: None,
        c,
        samples: Vec::new(),
        residual_const,
        residual_deriv: 0.0,
    })
}
