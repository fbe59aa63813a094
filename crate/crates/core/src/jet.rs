//! Truncated Taylor series in one parameter.
//!
//! A [`Jet`] stores `f(t0 + h) = sum_k c[k] h^k` up to a tracked length.
//! Arithmetic keeps the shortest valid length of its operands, so a
//! coefficient is never read past the order it was computed to. Expression
//! trees evaluate on jets to give exact derivatives along curves.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::lorentz::MVec3;

/// Maximum number of Taylor coefficients carried.
pub const JET_LEN: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    c: [f64; JET_LEN],
    len: usize,
}

impl Jet {
    /// A constant, valid to every order.
    pub fn constant(x: f64) -> Jet {
        let mut c = [0.0; JET_LEN];
        c[0] = x;
        Jet { c, len: JET_LEN }
    }

    /// The independent variable `t0 + h`, truncated to `len` coefficients.
    pub fn variable(t0: f64, len: usize) -> Jet {
        let len = len.clamp(1, JET_LEN);
        let mut c = [0.0; JET_LEN];
        c[0] = t0;
        if len > 1 {
            c[1] = 1.0;
        }
        Jet { c, len }
    }

    pub fn from_coeffs(coeffs: &[f64]) -> Jet {
        let len = coeffs.len().clamp(1, JET_LEN);
        let mut c = [0.0; JET_LEN];
        c[..len].copy_from_slice(&coeffs[..len]);
        Jet { c, len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    pub fn coeff(&self, k: usize) -> f64 {
        debug_assert!(k < self.len, "coefficient {k} read past jet length {}", self.len);
        self.c[k]
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.c[..self.len]
    }

    /// `k`-th derivative at the expansion point.
    pub fn derivative(&self, k: usize) -> f64 {
        let mut f = 1.0;
        for i in 2..=k {
            f *= i as f64;
        }
        self.coeff(k) * f
    }

    pub fn truncate(&self, len: usize) -> Jet {
        let mut out = *self;
        out.len = self.len.min(len.max(1));
        for k in out.len..JET_LEN {
            out.c[k] = 0.0;
        }
        out
    }

    /// True when every coefficient past the value is zero.
    pub fn is_constant(&self) -> bool {
        self.c[1..self.len].iter().all(|&x| x == 0.0)
    }

    /// Derivative with respect to the expansion parameter; one order shorter.
    pub fn deriv(&self) -> Jet {
        let mut c = [0.0; JET_LEN];
        let len = self.len.saturating_sub(1).max(1);
        for k in 0..self.len.saturating_sub(1) {
            c[k] = (k + 1) as f64 * self.c[k + 1];
        }
        Jet { c, len }
    }

    pub fn scale(&self, k: f64) -> Jet {
        let mut out = *self;
        for x in out.c.iter_mut() {
            *x *= k;
        }
        out
    }

    pub fn recip(&self) -> Result<Jet> {
        Jet::constant(1.0).div(self)
    }

    pub fn div(&self, rhs: &Jet) -> Result<Jet> {
        let b0 = rhs.c[0];
        if b0 == 0.0 {
            return Err(Error::Domain("division by zero".into()));
        }
        let len = self.len.min(rhs.len);
        let mut q = [0.0; JET_LEN];
        for k in 0..len {
            let mut acc = self.c[k];
            for j in 1..=k {
                acc -= rhs.c[j] * q[k - j];
            }
            q[k] = acc / b0;
        }
        Ok(Jet { c: q, len })
    }

    pub fn sqrt(&self) -> Result<Jet> {
        let a0 = self.c[0];
        if a0 < 0.0 || (a0 == 0.0 && self.len > 1 && !self.is_constant()) {
            return Err(Error::Domain(format!("sqrt of {a0}")));
        }
        let mut r = [0.0; JET_LEN];
        r[0] = a0.sqrt();
        for k in 1..self.len {
            let mut acc = self.c[k];
            for j in 1..k {
                acc -= r[j] * r[k - j];
            }
            r[k] = if r[0] == 0.0 { 0.0 } else { acc / (2.0 * r[0]) };
        }
        Ok(Jet { c: r, len: self.len })
    }

    pub fn exp(&self) -> Jet {
        let mut e = [0.0; JET_LEN];
        e[0] = self.c[0].exp();
        for k in 1..self.len {
            let mut acc = 0.0;
            for j in 1..=k {
                acc += j as f64 * self.c[j] * e[k - j];
            }
            e[k] = acc / k as f64;
        }
        Jet { c: e, len: self.len }
    }

    pub fn ln(&self) -> Result<Jet> {
        let a0 = self.c[0];
        if a0 <= 0.0 {
            return Err(Error::Domain(format!("log of {a0}")));
        }
        let mut l = [0.0; JET_LEN];
        l[0] = a0.ln();
        for k in 1..self.len {
            let mut acc = 0.0;
            for j in 1..k {
                acc += j as f64 * l[j] * self.c[k - j];
            }
            l[k] = (self.c[k] - acc / k as f64) / a0;
        }
        Ok(Jet { c: l, len: self.len })
    }

    /// Simultaneous sine and cosine.
    pub fn sin_cos(&self) -> (Jet, Jet) {
        let mut s = [0.0; JET_LEN];
        let mut c = [0.0; JET_LEN];
        s[0] = self.c[0].sin();
        c[0] = self.c[0].cos();
        for k in 1..self.len {
            let (mut as_, mut ac) = (0.0, 0.0);
            for j in 1..=k {
                let ja = j as f64 * self.c[j];
                as_ += ja * c[k - j];
                ac += ja * s[k - j];
            }
            s[k] = as_ / k as f64;
            c[k] = -ac / k as f64;
        }
        (Jet { c: s, len: self.len }, Jet { c, len: self.len })
    }

    /// Simultaneous hyperbolic sine and cosine.
    pub fn sinh_cosh(&self) -> (Jet, Jet) {
        let mut s = [0.0; JET_LEN];
        let mut c = [0.0; JET_LEN];
        s[0] = self.c[0].sinh();
        c[0] = self.c[0].cosh();
        for k in 1..self.len {
            let (mut as_, mut ac) = (0.0, 0.0);
            for j in 1..=k {
                let ja = j as f64 * self.c[j];
                as_ += ja * c[k - j];
                ac += ja * s[k - j];
            }
            s[k] = as_ / k as f64;
            c[k] = ac / k as f64;
        }
        (Jet { c: s, len: self.len }, Jet { c, len: self.len })
    }

    /// `self^p` for a constant exponent.
    pub fn powf(&self, p: f64) -> Result<Jet> {
        let a0 = self.c[0];
        if a0 == 0.0 {
            if self.is_constant() {
                return Jet::constant(a0.powf(p)).finite("pow").map(|j| j.truncate(self.len));
            }
            if p >= 0.0 && p.fract() == 0.0 && p <= 64.0 {
                let mut acc = Jet::constant(1.0).truncate(self.len);
                for _ in 0..p as usize {
                    acc = acc * *self;
                }
                return Ok(acc);
            }
            return Err(Error::Domain(format!("pow of zero base with exponent {p}")));
        }
        if a0 < 0.0 && p.fract() != 0.0 {
            return Err(Error::Domain(format!("pow of negative base {a0} with exponent {p}")));
        }
        let mut r = [0.0; JET_LEN];
        r[0] = a0.powf(p);
        for k in 1..self.len {
            let mut acc = 0.0;
            for j in 1..=k {
                acc += ((p + 1.0) * j as f64 - k as f64) * self.c[j] * r[k - j];
            }
            r[k] = acc / (k as f64 * a0);
        }
        Jet { c: r, len: self.len }.finite("pow")
    }

    pub fn finite(self, op: &str) -> Result<Jet> {
        if self.c[..self.len].iter().all(|x| x.is_finite()) {
            Ok(self)
        } else {
            Err(Error::Domain(format!("{op} produced a non-finite value")))
        }
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        let len = self.len.min(o.len);
        let mut c = [0.0; JET_LEN];
        for k in 0..len {
            c[k] = self.c[k] + o.c[k];
        }
        Jet { c, len }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        let len = self.len.min(o.len);
        let mut c = [0.0; JET_LEN];
        for k in 0..len {
            c[k] = self.c[k] - o.c[k];
        }
        Jet { c, len }
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        let len = self.len.min(o.len);
        let mut c = [0.0; JET_LEN];
        for k in 0..len {
            let mut acc = 0.0;
            for j in 0..=k {
                acc += self.c[j] * o.c[k - j];
            }
            c[k] = acc;
        }
        Jet { c, len }
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

/// A vector whose components are jets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JetVec3(pub [Jet; 3]);

impl JetVec3 {
    pub fn constant(v: MVec3) -> JetVec3 {
        JetVec3([Jet::constant(v.x0), Jet::constant(v.x1), Jet::constant(v.x2)])
    }

    pub fn value(&self) -> MVec3 {
        MVec3::new(self.0[0].value(), self.0[1].value(), self.0[2].value())
    }

    /// Vector of `k`-th derivatives.
    pub fn derivative(&self, k: usize) -> MVec3 {
        MVec3::new(
            self.0[0].derivative(k),
            self.0[1].derivative(k),
            self.0[2].derivative(k),
        )
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(Jet::len).min().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn deriv(&self) -> JetVec3 {
        JetVec3(self.0.map(|j| j.deriv()))
    }

    pub fn mdot(&self, o: &JetVec3) -> Jet {
        -(self.0[0] * o.0[0]) + self.0[1] * o.0[1] + self.0[2] * o.0[2]
    }

    pub fn mcross(&self, o: &JetVec3) -> JetVec3 {
        let (x, y) = (&self.0, &o.0);
        JetVec3([
            x[1] * y[2] - x[2] * y[1],
            x[0] * y[2] - x[2] * y[0],
            x[1] * y[0] - x[0] * y[1],
        ])
    }

    pub fn mul_jet(&self, k: &Jet) -> JetVec3 {
        JetVec3(self.0.map(|j| j * *k))
    }

    pub fn div_jet(&self, k: &Jet) -> Result<JetVec3> {
        let r = k.recip()?;
        Ok(self.mul_jet(&r))
    }

    pub fn add(&self, o: &JetVec3) -> JetVec3 {
        JetVec3([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }

    pub fn scale(&self, k: f64) -> JetVec3 {
        JetVec3(self.0.map(|j| j.scale(k)))
    }

    /// Rescales to unit Minkowski length; the sign of `<v, v>` is kept.
    pub fn normalize(&self) -> Result<JetVec3> {
        let q = self.mdot(self);
        let m = if q.value() < 0.0 { -q } else { q }.sqrt()?;
        self.div_jet(&m)
    }
}
