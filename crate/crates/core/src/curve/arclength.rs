use super::CurveSpec;
use crate::error::{Error, Result};
use crate::lorentz::CausalClass;
use crate::tolerances::Tolerances;

const REL_TOL: f64 = 1e-10;
const MAX_DEPTH: u32 = 40;

fn simpson_rec<F: FnMut(f64) -> Result<f64>>(
    f: &mut F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    depth: u32,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm)?, f(rm)?);
    let h = b - a;
    let left = h / 12.0 * (fa + 4.0 * flm + fm);
    let right = h / 12.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        return Ok(left + right + delta / 15.0);
    }
    Ok(simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1)?
        + simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1)?)
}

/// Adaptive Simpson quadrature to relative accuracy `REL_TOL`.
fn integrate<F: FnMut(f64) -> Result<f64>>(mut f: F, a: f64, b: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let (fa, fb, fm) = (f(a)?, f(b)?, f(0.5 * (a + b))?);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let eps = REL_TOL * whole.abs().max(f64::MIN_POSITIVE);
    simpson_rec(&mut f, a, b, fa, fm, fb, whole, eps, MAX_DEPTH)
}

/// Monotone table `t -> s(t) = int |<alpha', alpha'>|^(1/2) dt` with inverse.
#[derive(Debug, Clone)]
pub struct Arclength {
    curve: CurveSpec,
    class: CausalClass,
    ts: Vec<f64>,
    ss: Vec<f64>,
    speeds: Vec<f64>,
    tol: Tolerances,
}

impl Arclength {
    /// Checks the tangent class at `n_samples` points and tabulates `s(t)`.
    pub fn new(curve: &CurveSpec, n_samples: usize, tol: &Tolerances) -> Result<Arclength> {
        let n = n_samples.max(2);
        let (a, b) = (curve.t_min, curve.t_max);
        let ts: Vec<f64> = (0..n)
            .map(|i| if i == n - 1 { b } else { a + (b - a) * i as f64 / (n - 1) as f64 })
            .collect();
        let mut class = None;
        let mut speeds = Vec::with_capacity(n);
        for &t in &ts {
            let vel = curve.velocity(t)?;
            let c = vel.causal_class(tol.causal);
            if c == CausalClass::Lightlike {
                return Err(Error::LightlikeTangent { t });
            }
            match class {
                None => class = Some(c),
                Some(c0) if c0 != c => return Err(Error::CausalClassChange { t }),
                _ => {}
            }
            speeds.push(vel.mnorm_sq().abs().sqrt());
        }
        let class = class.unwrap_or(CausalClass::Spacelike);
        let mut table = Arclength { curve: curve.clone(), class, ts, ss: vec![0.0], speeds, tol: *tol };
        for i in 0..n - 1 {
            let seg = table.integral(table.ts[i], table.ts[i + 1])?;
            let last = table.ss[i];
            table.ss.push(last + seg);
        }
        Ok(table)
    }

    fn speed(&self, t: f64) -> Result<f64> {
        let vel = self.curve.velocity(t)?;
        let c = vel.causal_class(self.tol.causal);
        if c == CausalClass::Lightlike {
            return Err(Error::LightlikeTangent { t });
        }
        if c != self.class {
            return Err(Error::CausalClassChange { t });
        }
        Ok(vel.mnorm_sq().abs().sqrt())
    }

    fn integral(&self, a: f64, b: f64) -> Result<f64> {
        integrate(|t| self.speed(t), a, b)
    }

    pub fn class(&self) -> CausalClass {
        self.class
    }

    pub fn total(&self) -> f64 {
        *self.ss.last().unwrap_or(&0.0)
    }

    pub fn params(&self) -> &[f64] {
        &self.ts
    }

    fn segment_t(&self, t: f64) -> usize {
        let k = self.ts.partition_point(|&x| x <= t);
        k.clamp(1, self.ts.len() - 1) - 1
    }

    pub fn s_of_t(&self, t: f64) -> Result<f64> {
        let i = self.segment_t(t);
        Ok(self.ss[i] + self.integral(self.ts[i], t)?)
    }

    /// Inverse by cubic Hermite interpolation, polished with Newton steps.
    pub fn t_of_s(&self, s: f64) -> Result<f64> {
        let total = self.total();
        if s < -1e-12 * total.max(1.0) || s > total * (1.0 + 1e-12) + 1e-300 {
            return Err(Error::Domain(format!("arclength {s} outside [0, {total}]")));
        }
        let s = s.clamp(0.0, total);
        let k = self.ss.partition_point(|&x| x <= s);
        let i = k.clamp(1, self.ss.len() - 1) - 1;
        let (s0, s1) = (self.ss[i], self.ss[i + 1]);
        let (t0, t1) = (self.ts[i], self.ts[i + 1]);
        let h = s1 - s0;
        let mut t = if h <= 0.0 {
            t0
        } else {
            let x = (s - s0) / h;
            let (h00, h10) = (2.0 * x.powi(3) - 3.0 * x * x + 1.0, x.powi(3) - 2.0 * x * x + x);
            let (h01, h11) = (-2.0 * x.powi(3) + 3.0 * x * x, x.powi(3) - x * x);
            h00 * t0 + h10 * h / self.speeds[i] + h01 * t1 + h11 * h / self.speeds[i + 1]
        };
        for _ in 0..12 {
            t = t.clamp(t0, t1);
            let r = self.ss[i] + self.integral(t0, t)? - s;
            let step = r / self.speed(t)?;
            t -= step;
            if step.abs() <= 1e-15 * (1.0 + t.abs()) {
                break;
            }
        }
        Ok(t.clamp(t0, t1))
    }
}
