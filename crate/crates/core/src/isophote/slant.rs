//! Slant-helix function of a Frenet curve and the Frenet form of the axis on
//! geodesics.

use super::{AxisEstimate, Branch, Constancy, IsophoteCase};
use crate::curve::{FrenetSample, Station};
use crate::error::{Error, Result};
use crate::lorentz::{CausalClass, MVec3};
use crate::tolerances::Tolerances;

const HELIX_FLOOR: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct SlantHelix {
    /// `(tau' kappa - tau kappa') / |tau^2 - kappa^2|^(3/2)` per station.
    pub values: Constancy,
}

impl SlantHelix {
    pub fn is_slant_helix(&self) -> bool {
        self.values.constant
    }
}

/// `kappa^2 (tau / kappa)' / |tau^2 - kappa^2|^(3/2)`, constant exactly on slant helices.
pub fn slant_helix_function(frenet: &[FrenetSample], tol: &Tolerances) -> Result<SlantHelix> {
    let mut values = Vec::with_capacity(frenet.len());
    for f in frenet {
        let fr = f.frame.ok_or(Error::VanishingCurvature { s: f.s })?;
        let (k, tau) = (f.kappa, fr.tau);
        let gap = tau * tau - k * k;
        if gap.abs() <= HELIX_FLOOR * (1.0 + k * k + tau * tau) {
            return Err(Error::DegenerateHelix { s: f.s });
        }
        values.push((fr.tau_prime * k - tau * fr.kappa_prime) / gap.abs().powf(1.5));
    }
    Ok(SlantHelix { values: Constancy::of(values, tol.constancy) })
}

/// The case axis rebuilt from Frenet data alone, valid on geodesics.
///
/// There `N = zeta n` with `zeta = sign <N, n>`, `B = zeta b`, `tau_g = tau`
/// and `k_n = -zeta kappa` (spacelike) or `+zeta kappa` (timelike).
pub fn frenet_axis(
    stations: &[Station],
    case: IsophoteCase,
    c: f64,
    branch: Branch,
    tol: &Tolerances,
) -> Result<AxisEstimate> {
    let amp = case.amplitude(c).ok_or(Error::AngleRange { case, c })?;
    let lam = branch.lambda();
    let mut ds = Vec::with_capacity(stations.len());
    for st in stations {
        let f = &st.frenet;
        let fr = f.frame.ok_or(Error::VanishingCurvature { s: f.s })?;
        let normal = st.darboux.map(|d| d.normal).unwrap_or(fr.principal);
        let zeta = if normal.mdot(fr.principal) < 0.0 { -1.0 } else { 1.0 };
        let k_n = if f.class == CausalClass::Timelike { zeta * f.kappa } else { -zeta * f.kappa };
        let gap = k_n * k_n - fr.tau * fr.tau;
        if gap.abs() <= HELIX_FLOOR {
            return Err(Error::DegenerateHelix { s: f.s });
        }
        let w = fr.tau * f.tangent + (k_n * zeta) * fr.binormal;
        ds.push((lam * amp / gap.abs().sqrt()) * w + (c * zeta) * fr.principal);
    }
    let n = ds.len().max(1) as f64;
    let d = (ds.iter().fold(MVec3::ZERO, |a, &b| a + b) / n).normalize(tol.causal)?;
    let residual_const = ds.iter().map(|&x| (x - d).enorm()).fold(0.0, f64::max);
    Ok(AxisEstimate {
        d,
        causal: d.causal_class(tol.causal),
        case: Some(case),
        branch: Some(branch),
        c,
        samples: ds,
        residual_const,
        residual_deriv: 0.0,
    })
}
