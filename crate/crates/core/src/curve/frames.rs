//! Frenet and Darboux frames from Taylor jets.
//!
//! Arclength derivatives are taken as `D_s f = (df/dt) / sigma` with
//! `sigma = |<alpha', alpha'>|^(1/2)`, all on jets, so every scalar below is
//! exact up to rounding. The binormals follow `b = n x t` and `B = N x T`.

use super::{Arclength, CurveJet, CurveSpec};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::jet::{Jet, JetVec3};
use crate::lorentz::{CausalClass, MVec3};
use crate::tolerances::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrenetFrame {
    pub principal: MVec3,
    pub binormal: MVec3,
    pub tau: f64,
    /// `<n, n>`; `-1` only for spacelike curves with timelike principal normal.
    pub eps: f64,
    pub kappa_prime: f64,
    pub tau_prime: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrenetSample {
    pub s: f64,
    pub param: f64,
    pub position: MVec3,
    pub tangent: MVec3,
    /// `0` when the frame is withheld.
    pub kappa: f64,
    pub class: CausalClass,
    /// `None` when `kappa <= eps_curv` or the principal normal is lightlike.
    pub frame: Option<FrenetFrame>,
}

impl FrenetSample {
    /// Right-hand sides `(t', n', b')` of the Frenet equations.
    pub fn frame_derivatives(&self) -> Option<[MVec3; 3]> {
        let f = self.frame?;
        let (t, n, b, k, tau) = (self.tangent, f.principal, f.binormal, self.kappa, f.tau);
        Some(match self.class {
            CausalClass::Timelike => [k * n, k * t + tau * b, -tau * n],
            _ => [k * n, -f.eps * k * t + tau * b, tau * n],
        })
    }
}

/// One station of a curve on a timelike surface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DarbouxSample {
    pub s: f64,
    pub param: f64,
    pub uv: (f64, f64),
    pub position: MVec3,
    pub tangent: MVec3,
    pub binormal: MVec3,
    /// Unit surface normal, oriented as `r_u x r_v`.
    pub normal: MVec3,
    pub k_g: f64,
    pub k_n: f64,
    pub tau_g: f64,
    pub k_g_prime: f64,
    pub k_n_prime: f64,
    pub tau_g_prime: f64,
    pub class: CausalClass,
    /// `N'` from the jets.
    pub normal_prime: MVec3,
    /// `N''` assembled from the Darboux scalars and their derivatives.
    pub normal_second: MVec3,
    pub phi: Option<f64>,
    pub phi_prime: Option<f64>,
}

impl DarbouxSample {
    /// `k_n^2 - tau_g^2`.
    pub fn delta(&self) -> f64 {
        self.k_n * self.k_n - self.tau_g * self.tau_g
    }

    /// `<B, B>`: `-1` on spacelike curves, `+1` on timelike ones.
    pub fn binormal_sq(&self) -> f64 {
        if self.class == CausalClass::Timelike {
            1.0
        } else {
            -1.0
        }
    }

    /// Right-hand sides `(T', B', N')` of the Darboux equations.
    pub fn frame_derivatives(&self) -> [MVec3; 3] {
        let (t, b, n) = (self.tangent, self.binormal, self.normal);
        let (kg, kn, tg) = (self.k_g, self.k_n, self.tau_g);
        match self.class {
            CausalClass::Timelike => [kg * b + kn * n, kg * t - tg * n, kn * t + tg * b],
            _ => [kg * b - kn * n, kg * t + tg * n, kn * t + tg * b],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Station {
    pub frenet: FrenetSample,
    pub darboux: Option<DarbouxSample>,
}

struct Kinematics {
    sigma: Jet,
    tangent: JetVec3,
    tangent_prime: JetVec3,
    class: CausalClass,
}

fn kinematics(j: &CurveJet, tol: &Tolerances) -> Result<Kinematics> {
    let vel = j.alpha.deriv();
    let class = vel.value().causal_class(tol.causal);
    if class == CausalClass::Lightlike {
        return Err(Error::LightlikeTangent { t: j.param });
    }
    let q = vel.mdot(&vel);
    let sigma = if class == CausalClass::Timelike { -q } else { q }.sqrt()?;
    let tangent = vel.div_jet(&sigma)?;
    let tangent_prime = tangent.deriv().div_jet(&sigma)?;
    Ok(Kinematics { sigma, tangent, tangent_prime, class })
}

fn d_ds(f: &Jet, sigma: &Jet) -> Result<Jet> {
    f.deriv().div(sigma)
}

fn frenet_from(j: &CurveJet, k: &Kinematics, s: f64, tol: &Tolerances) -> Result<FrenetSample> {
    let tp = &k.tangent_prime;
    let kq = tp.mdot(tp);
    let kappa0 = kq.value().abs().sqrt();
    let mut sample = FrenetSample {
        s,
        param: j.param,
        position: j.alpha.value(),
        tangent: k.tangent.value(),
        kappa: kappa0,
        class: k.class,
        frame: None,
    };
    let n_class = tp.value().causal_class(tol.causal);
    if kappa0 <= tol.curv || n_class == CausalClass::Lightlike {
        sample.kappa = if kappa0 <= tol.curv { 0.0 } else { kappa0 };
        return Ok(sample);
    }
    let kappa = if kq.value() < 0.0 { -kq } else { kq }.sqrt()?;
    let n = tp.div_jet(&kappa)?;
    let b = n.mcross(&k.tangent);
    let bb = b.value().mnorm_sq();
    let np = n.deriv().div_jet(&k.sigma)?;
    let tau = np.mdot(&b).scale(1.0 / bb);
    sample.frame = Some(FrenetFrame {
        principal: n.value(),
        binormal: b.value(),
        tau: tau.value(),
        eps: n_class.sign(),
        kappa_prime: d_ds(&kappa, &k.sigma)?.value(),
        tau_prime: d_ds(&tau, &k.sigma)?.value(),
    });
    Ok(sample)
}

fn darboux_from(j: &CurveJet, k: &Kinematics, s: f64, tol: &Tolerances) -> Result<DarbouxSample> {
    let (u, v) = j.uv.unwrap_or((f64::NAN, f64::NAN));
    let raw = j.normal_raw.ok_or_else(|| Error::Domain("curve does not lie on a surface".into()))?;
    let nv = raw.value();
    let q = nv.mnorm_sq();
    if q.abs() <= tol.causal * nv.edot(nv) {
        return Err(Error::LightlikeNormal { u, v });
    }
    if q < 0.0 {
        return Err(Error::NotTimelike(format!("normal is timelike at (u, v) = ({u}, {v})")));
    }
    let n = raw.normalize()?;
    let t = &k.tangent;
    let b = n.mcross(t);
    let bb = if k.class == CausalClass::Timelike { 1.0 } else { -1.0 };
    let sn = bb;
    let tp = &k.tangent_prime;
    let np = n.deriv().div_jet(&k.sigma)?;
    let kg = tp.mdot(&b).scale(1.0 / bb);
    let kn = tp.mdot(&n).scale(sn);
    let tg = np.mdot(&b).scale(1.0 / bb);
    let (kgp, knp, tgp) = (d_ds(&kg, &k.sigma)?, d_ds(&kn, &k.sigma)?, d_ds(&tg, &k.sigma)?);
    let (kg, kn, tg) = (kg.value(), kn.value(), tg.value());
    let (kgp, knp, tgp) = (kgp.value(), knp.value(), tgp.value());
    let (tv, bv, nv) = (t.value(), b.value(), n.value());
    let delta = kn * kn - tg * tg;
    let normal_second = (knp + kg * tg) * tv + (tgp + kn * kg) * bv + (sn * delta) * nv;
    Ok(DarbouxSample {
        s,
        param: j.param,
        uv: (u, v),
        position: j.alpha.value(),
        tangent: tv,
        binormal: bv,
        normal: nv,
        k_g: kg,
        k_n: kn,
        tau_g: tg,
        k_g_prime: kgp,
        k_n_prime: knp,
        tau_g_prime: tgp,
        class: k.class,
        normal_prime: np.value(),
        normal_second,
        phi: None,
        phi_prime: None,
    })
}

pub fn frenet_at(j: &CurveJet, s: f64, tol: &Tolerances) -> Result<FrenetSample> {
    frenet_from(j, &kinematics(j, tol)?, s, tol)
}

pub fn darboux_at(j: &CurveJet, s: f64, tol: &Tolerances) -> Result<DarbouxSample> {
    station_at(j, s, tol)?
        .darboux
        .ok_or_else(|| Error::Domain("curve does not lie on a surface".into()))
}

/// Frenet data, plus Darboux data and `phi` when the jet carries a surface normal.
pub fn station_at(j: &CurveJet, s: f64, tol: &Tolerances) -> Result<Station> {
    let k = kinematics(j, tol)?;
    let frenet = frenet_from(j, &k, s, tol)?;
    let darboux = match j.normal_raw {
        None => None,
        Some(_) => {
            let mut d = darboux_from(j, &k, s, tol)?;
            if let Ok((phi, dphi)) = phi_and_rate(&d, &frenet) {
                d.phi = Some(phi);
                d.phi_prime = Some(dphi);
            }
            Some(d)
        }
    };
    Ok(Station { frenet, darboux })
}

fn phi_and_rate(d: &DarbouxSample, f: &FrenetSample) -> Result<(f64, f64)> {
    let frame = f.frame.ok_or(Error::VanishingCurvature { s: d.s })?;
    let (kg, kn, kgp, knp) = (d.k_g, d.k_n, d.k_g_prime, d.k_n_prime);
    let atanh_checked = |x: f64| {
        if x.abs() < 1.0 {
            Ok(x.atanh())
        } else {
            Err(Error::Domain(format!("|{x}| >= 1 in hyperbolic normal angle")))
        }
    };
    match d.class {
        CausalClass::Timelike => Ok((kn.atan2(kg), (knp * kg - kn * kgp) / (kg * kg + kn * kn))),
        _ if frame.eps > 0.0 => Ok((
            atanh_checked(kg / kn)?,
            (kgp * kn - kg * knp) / (kn * kn - kg * kg),
        )),
        _ => Ok((
            atanh_checked(kn / kg)?,
            (knp * kg - kn * kgp) / (kg * kg - kn * kn),
        )),
    }
}

/// Angle between the surface normal and the principal normal.
///
/// Spacelike curves use the hyperbolic relation between `k_g`, `k_n` and
/// `kappa` (roles swapped when `n` is timelike); timelike curves use
/// `(k_g, k_n) = kappa (cos phi, sin phi)`.
pub fn normal_angle_phi(sample: &DarbouxSample, frenet: &FrenetSample) -> Result<f64> {
    phi_and_rate(sample, frenet).map(|(phi, _)| phi)
}

/// `n` arclength values spread uniformly over the curve, both ends included.
pub fn stations(arc: &Arclength, n: usize) -> Vec<f64> {
    let n = n.max(2);
    let total = arc.total();
    (0..n)
        .map(|i| if i == n - 1 { total } else { total * i as f64 / (n - 1) as f64 })
        .collect()
}

/// Full stations at `s_values`; the tangent class must match `arc` throughout.
pub fn station_apparatus(
    curve: &CurveSpec,
    arc: &Arclength,
    s_values: &[f64],
    tol: &Tolerances,
    exec: Exec,
) -> Result<Vec<Station>> {
    let out = exec.map(s_values, |&s| -> Result<Station> {
        let t = arc.t_of_s(s)?;
        let j = curve.jet(t)?;
        let st = station_at(&j, s, tol)?;
        if st.frenet.class != arc.class() {
            return Err(Error::CausalClassChange { t });
        }
        Ok(st)
    });
    out.into_iter().collect()
}

pub fn frenet_apparatus(
    curve: &CurveSpec,
    arc: &Arclength,
    s_values: &[f64],
    tol: &Tolerances,
    exec: Exec,
) -> Result<Vec<FrenetSample>> {
    Ok(station_apparatus(curve, arc, s_values, tol, exec)?.into_iter().map(|s| s.frenet).collect())
}

pub fn darboux_apparatus(
    curve: &CurveSpec,
    arc: &Arclength,
    s_values: &[f64],
    tol: &Tolerances,
    exec: Exec,
) -> Result<Vec<DarbouxSample>> {
    station_apparatus(curve, arc, s_values, tol, exec)?
        .into_iter()
        .map(|s| s.darboux.ok_or_else(|| Error::Domain("curve does not lie on a surface".into())))
        .collect()
}
