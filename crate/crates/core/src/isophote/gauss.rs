//! Geodesic curvature of the Gauss image `s -> N(s)` on the unit pseudo-sphere.

use crate::curve::DarbouxSample;
use crate::error::{Error, Result};

const GAUSS_FLOOR: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussSample {
    pub s: f64,
    pub k_bar_g: f64,
    /// `|N' x N''| / |N'|^3`, the curvature of the image.
    pub kappa_bar: f64,
}

/// `k_bar_g = <N'', N x N'> / (nu^3 <B_bar, B_bar>)` with `nu = |<N', N'>|^(1/2)`.
///
/// On the pseudo-sphere the position is the unit normal, so the image's own
/// normal curvature is one and `kappa_bar^2 = |1 + <B_bar, B_bar> k_bar_g^2|`.
pub fn gauss_map_geodesic_curvature(samples: &[DarbouxSample]) -> Result<Vec<GaussSample>> {
    samples
        .iter()
        .map(|s| {
            let (g, g1, g2) = (s.normal, s.normal_prime, s.normal_second);
            let q = g1.mnorm_sq();
            let scale = 1.0 + g1.edot(g1);
            if q.abs() <= GAUSS_FLOOR * scale {
                return Err(Error::DegenerateGaussImage { s: s.s });
            }
            let nu = q.abs().sqrt();
            let bb = -q.signum();
            let k_bar_g = g2.mdot(g.mcross(g1)) / (nu.powi(3) * bb);
            let c = g1.mcross(g2);
            let kappa_bar = c.mnorm_sq().abs().sqrt() / nu.powi(3);
            Ok(GaussSample { s: s.s, k_bar_g, kappa_bar })
        })
        .collect()
}
