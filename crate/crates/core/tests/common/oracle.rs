//! Finite-difference oracles, independent of the jet arithmetic.

use isophote::curve::CurveSpec;
use isophote::MVec3;

pub fn fd1(f: impl Fn(f64) -> MVec3, t: f64, h: f64) -> MVec3 {
    (f(t + h) - f(t - h)) / (2.0 * h)
}

pub fn fd2(f: impl Fn(f64) -> MVec3, t: f64, h: f64) -> MVec3 {
    (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h)
}

/// Darboux scalars `(k_g, k_n, tau_g)` from point evaluations only.
pub fn darboux_scalars(curve: &CurveSpec, t: f64) -> (f64, f64, f64) {
    let h = 1e-4;
    let surface = curve.surface().unwrap();
    let pos = |t: f64| curve.point(t).unwrap();
    let unit_normal = |t: f64| {
        let j = curve.jet_len(t, 1).unwrap();
        let (u, v) = j.uv.unwrap();
        let n = surface.normal_raw(u, v).unwrap();
        n / n.mnorm_sq().sqrt()
    };
    let vel = fd1(pos, t, h);
    let acc = fd2(pos, t, h);
    let q = vel.mnorm_sq();
    let spacelike = q > 0.0;
    let sigma = q.abs().sqrt();
    let tangent = vel / sigma;
    // d/ds T = (acc - <acc,T>_{sign} T) / sigma^2 with <T,T> = +-1
    let tt = if spacelike { 1.0 } else { -1.0 };
    let t_prime = (acc - (acc.mdot(tangent) / tt) * tangent) / (sigma * sigma);
    let n = unit_normal(t);
    let b = n.mcross(tangent);
    let bb = b.mnorm_sq();
    let n_prime = fd1(unit_normal, t, h) / sigma;
    let kg = t_prime.mdot(b) / bb;
    let kn = bb * t_prime.mdot(n);
    let tg = n_prime.mdot(b) / bb;
    (kg, kn, tg)
}
