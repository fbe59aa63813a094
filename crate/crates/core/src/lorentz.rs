//! Minkowski 3-space vector algebra.
//!
//! Vectors carry three real components `(x0, x1, x2)`; the inner product is
//! `-x0*y0 + x1*y1 + x2*y2`, so `x0` is the time-like direction. The
//! Lorentzian cross product satisfies `e0 x e1 = -e2`, `e1 x e2 = e0` and
//! `e2 x e0 = -e1`, and is orthogonal to both factors under the metric.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Default half-width of the lightlike band.
pub const EPS_CAUSAL: f64 = 1e-9;

/// A real 3-vector read under the signature `(-, +, +)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MVec3 {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
}

/// Causal character of a vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CausalClass {
    Spacelike,
    Timelike,
    Lightlike,
}

impl CausalClass {
    pub fn as_str(self) -> &'static str {
        match self {
            CausalClass::Spacelike => "spacelike",
            CausalClass::Timelike => "timelike",
            CausalClass::Lightlike => "lightlike",
        }
    }

    /// `+1` for spacelike, `-1` for timelike, `0` for lightlike.
    pub fn sign(self) -> f64 {
        match self {
            CausalClass::Spacelike => 1.0,
            CausalClass::Timelike => -1.0,
            CausalClass::Lightlike => 0.0,
        }
    }
}

impl fmt::Display for CausalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl MVec3 {
    pub const ZERO: MVec3 = MVec3::new(0.0, 0.0, 0.0);
    pub const E0: MVec3 = MVec3::new(1.0, 0.0, 0.0);
    pub const E1: MVec3 = MVec3::new(0.0, 1.0, 0.0);
    pub const E2: MVec3 = MVec3::new(0.0, 0.0, 1.0);

    pub const fn new(x0: f64, x1: f64, x2: f64) -> Self {
        MVec3 { x0, x1, x2 }
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        MVec3::new(a[0], a[1], a[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x0, self.x1, self.x2]
    }

    pub fn mdot(self, other: MVec3) -> f64 {
        mdot(self, other)
    }

    pub fn mcross(self, other: MVec3) -> MVec3 {
        mcross(self, other)
    }

    /// `<v, v>` under the Minkowski metric.
    pub fn mnorm_sq(self) -> f64 {
        mdot(self, self)
    }

    /// Euclidean dot product, used only for tolerances and residuals.
    pub fn edot(self, other: MVec3) -> f64 {
        self.x0 * other.x0 + self.x1 * other.x1 + self.x2 * other.x2
    }

    pub fn enorm(self) -> f64 {
        self.edot(self).sqrt()
    }

    pub fn max_abs(self) -> f64 {
        self.x0.abs().max(self.x1.abs()).max(self.x2.abs())
    }

    pub fn is_finite(self) -> bool {
        self.x0.is_finite() && self.x1.is_finite() && self.x2.is_finite()
    }

    pub fn causal_class(self, eps: f64) -> CausalClass {
        causal_class(self, eps)
    }

    /// Scales to `|<v, v>| = 1`. Fails inside the lightlike band.
    pub fn normalize(self, eps: f64) -> Result<MVec3> {
        if self.causal_class(eps) == CausalClass::Lightlike || self == MVec3::ZERO {
            return Err(Error::LightlikeInput);
        }
        Ok(self / self.mnorm_sq().abs().sqrt())
    }

    /// Flips the vector so its first non-zero component is positive.
    pub fn canonical_sign(self) -> MVec3 {
        for x in self.to_array() {
            if x != 0.0 {
                return if x < 0.0 { -self } else { self };
            }
        }
        self
    }

    /// Euclidean distance to `other` or `-other`, whichever is smaller.
    pub fn dist_up_to_sign(self, other: MVec3) -> f64 {
        (self - other).enorm().min((self + other).enorm())
    }
}

/// Minkowski inner product `-x0*y0 + x1*y1 + x2*y2`.
pub fn mdot(x: MVec3, y: MVec3) -> f64 {
    -x.x0 * y.x0 + x.x1 * y.x1 + x.x2 * y.x2
}

/// Lorentzian cross product.
pub fn mcross(x: MVec3, y: MVec3) -> MVec3 {
    MVec3::new(
        x.x1 * y.x2 - x.x2 * y.x1,
        x.x0 * y.x2 - x.x2 * y.x0,
        x.x1 * y.x0 - x.x0 * y.x1,
    )
}

/// Classifies `v` with a scale-aware lightlike band of half-width
/// `eps * (1 + max|component|^2)`. The zero vector is spacelike.
pub fn causal_class(v: MVec3, eps: f64) -> CausalClass {
    if v == MVec3::ZERO {
        return CausalClass::Spacelike;
    }
    let q = v.mnorm_sq();
    let m = v.max_abs();
    let band = eps * (1.0 + m * m);
    if q > band {
        CausalClass::Spacelike
    } else if q < -band {
        CausalClass::Timelike
    } else {
        CausalClass::Lightlike
    }
}

/// Which of the hyperbolic/circular angle notions relates two vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AngleKind {
    /// Two spacelike vectors spanning a timelike plane: `<v,w> = cosh`.
    Cosh,
    /// Two spacelike vectors spanning a spacelike plane: `<v,w> = cos`.
    Cos,
    /// One spacelike and one timelike vector: `<v,w> = sinh`.
    Sinh,
    /// Two timelike vectors: `<v,w> = -cosh` in the same timecone.
    TimeconeCosh,
}

impl AngleKind {
    pub fn as_str(self) -> &'static str {
        match self {
            AngleKind::Cosh => "cosh",
            AngleKind::Cos => "cos",
            AngleKind::Sinh => "sinh",
            AngleKind::TimeconeCosh => "timecone_cosh",
        }
    }

    /// Converts an angle to the invariant `c` carried by the kernel.
    pub fn invariant_of(self, angle: f64) -> f64 {
        match self {
            AngleKind::Cosh => angle.cosh(),
            AngleKind::Cos => angle.cos(),
            AngleKind::Sinh => angle.sinh(),
            AngleKind::TimeconeCosh => -angle.cosh(),
        }
    }
}

impl fmt::Display for AngleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for AngleKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "cosh" => Ok(AngleKind::Cosh),
            "cos" => Ok(AngleKind::Cos),
            "sinh" => Ok(AngleKind::Sinh),
            "timecone_cosh" => Ok(AngleKind::TimeconeCosh),
            other => Err(format!("unknown angle kind `{other}`")),
        }
    }
}

/// The signed invariant `c = <N, d>` together with its angle kind.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleInvariant {
    pub kind: AngleKind,
    pub c: f64,
}

impl AngleInvariant {
    /// Signed angle recovered from `c`. Cosh kinds return `acosh(|c|)`,
    /// since the sign of `c` only records orientation there.
    pub fn angle(&self) -> f64 {
        match self.kind {
            AngleKind::Cos => self.c.clamp(-1.0, 1.0).acos(),
            AngleKind::Sinh => self.c.asinh(),
            AngleKind::Cosh | AngleKind::TimeconeCosh => self.c.abs().max(1.0).acosh(),
        }
    }
}

/// Computes `c = <N, d>` after normalizing both inputs and dispatches the
/// angle kind from their causal classes (and, for two spacelike vectors,
/// from the sign of the Gram determinant of their span).
pub fn angle_invariant(n: MVec3, d: MVec3, eps: f64) -> Result<AngleInvariant> {
    let n = n.normalize(eps)?;
    let d = d.normalize(eps)?;
    let c = mdot(n, d);
    let kind = match (n.causal_class(eps), d.causal_class(eps)) {
        (CausalClass::Spacelike, CausalClass::Spacelike) => {
            let gram = n.mnorm_sq() * d.mnorm_sq() - c * c;
            if gram < 0.0 {
                AngleKind::Cosh
            } else {
                AngleKind::Cos
            }
        }
        (CausalClass::Timelike, CausalClass::Timelike) => AngleKind::TimeconeCosh,
        (CausalClass::Lightlike, _) | (_, CausalClass::Lightlike) => {
            return Err(Error::LightlikeInput)
        }
        _ => AngleKind::Sinh,
    };
    Ok(AngleInvariant { kind, c })
}

impl Add for MVec3 {
    type Output = MVec3;
    fn add(self, o: MVec3) -> MVec3 {
        MVec3::new(self.x0 + o.x0, self.x1 + o.x1, self.x2 + o.x2)
    }
}

impl AddAssign for MVec3 {
    fn add_assign(&mut self, o: MVec3) {
        *self = *self + o;
    }
}

impl Sub for MVec3 {
    type Output = MVec3;
    fn sub(self, o: MVec3) -> MVec3 {
        MVec3::new(self.x0 - o.x0, self.x1 - o.x1, self.x2 - o.x2)
    }
}

impl Neg for MVec3 {
    type Output = MVec3;
    fn neg(self) -> MVec3 {
        MVec3::new(-self.x0, -self.x1, -self.x2)
    }
}

impl Mul<f64> for MVec3 {
    type Output = MVec3;
    fn mul(self, k: f64) -> MVec3 {
        MVec3::new(self.x0 * k, self.x1 * k, self.x2 * k)
    }
}

impl Mul<MVec3> for f64 {
    type Output = MVec3;
    fn mul(self, v: MVec3) -> MVec3 {
        v * self
    }
}

impl Div<f64> for MVec3 {
    type Output = MVec3;
    fn div(self, k: f64) -> MVec3 {
        MVec3::new(self.x0 / k, self.x1 / k, self.x2 / k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn inner_product_examples() {
        assert_eq!(mdot(MVec3::E0, MVec3::E0), -1.0);
        assert_eq!(mdot(MVec3::E1, MVec3::E2), 0.0);
        assert_eq!(mdot(MVec3::new(1.0, 2.0, 0.0), MVec3::new(3.0, 1.0, 1.0)), -1.0);
    }

    #[test]
    fn cross_product_basis() {
        assert_eq!(mcross(MVec3::E0, MVec3::E1), -MVec3::E2);
        assert_eq!(mcross(MVec3::E1, MVec3::E2), MVec3::E0);
        assert_eq!(mcross(MVec3::E2, MVec3::E0), -MVec3::E1);
        assert_eq!(
            mcross(MVec3::new(1.0, 2.0, 3.0), MVec3::new(4.0, 5.0, 6.0)),
            MVec3::new(-3.0, -6.0, 3.0)
        );
    }

    #[test]
    fn classification() {
        assert_eq!(causal_class(MVec3::E0, EPS_CAUSAL), CausalClass::Timelike);
        assert_eq!(causal_class(MVec3::new(1.0, 1.0, 0.0), EPS_CAUSAL), CausalClass::Lightlike);
        assert_eq!(causal_class(MVec3::new(0.5, 1.0, 0.0), EPS_CAUSAL), CausalClass::Spacelike);
        assert_eq!(causal_class(MVec3::ZERO, EPS_CAUSAL), CausalClass::Spacelike);
    }

    #[test]
    fn angle_kinds() {
        let n = MVec3::E1;
        let a = angle_invariant(n, MVec3::new(0.0, 0.3f64.cos(), 0.3f64.sin()), EPS_CAUSAL).unwrap();
        assert_eq!(a.kind, AngleKind::Cos);
        assert!((a.c - 0.955_336_489_125_606).abs() < 1e-12);
        assert!((a.angle() - 0.3).abs() < 1e-12);

        let b = angle_invariant(n, MVec3::new(0.5f64.sinh(), 0.5f64.cosh(), 0.0), EPS_CAUSAL).unwrap();
        assert_eq!(b.kind, AngleKind::Cosh);
        assert!((b.c - 1.127_625_965_206_380_8).abs() < 1e-12);

        let c = angle_invariant(n, MVec3::new(0.7f64.cosh(), 0.7f64.sinh(), 0.0), EPS_CAUSAL).unwrap();
        assert_eq!(c.kind, AngleKind::Sinh);
        assert!((c.c - 0.758_583_701_839_533_5).abs() < 1e-12);

        let t = angle_invariant(MVec3::E0, MVec3::new(2.0, 1.0, 0.0), EPS_CAUSAL).unwrap();
        assert_eq!(t.kind, AngleKind::TimeconeCosh);

        assert_eq!(
            angle_invariant(n, MVec3::new(1.0, 1.0, 0.0), EPS_CAUSAL),
            Err(Error::LightlikeInput)
        );
    }

    fn vec3() -> impl Strategy<Value = MVec3> {
        (-10.0..10.0f64, -10.0..10.0f64, -10.0..10.0f64).prop_map(|(a, b, c)| MVec3::new(a, b, c))
    }

    proptest! {
        #[test]
        fn cross_is_orthogonal_and_antisymmetric(x in vec3(), y in vec3()) {
            let z = mcross(x, y);
            let scale = 1.0 + x.enorm() * x.enorm() * y.enorm();
            prop_assert!(mdot(z, x).abs() <= 1e-10 * scale);
            prop_assert!(mdot(z, y).abs() <= 1e-10 * (1.0 + y.enorm() * y.enorm() * x.enorm()));
            prop_assert_eq!(z, -mcross(y, x));
        }

        #[test]
        fn kind_is_scale_invariant(x in vec3(), y in vec3(), a in 0.1..20.0f64, b in 0.1..20.0f64) {
            if let (Ok(p), Ok(q)) = (angle_invariant(x, y, EPS_CAUSAL), angle_invariant(x * a, y * b, EPS_CAUSAL)) {
                prop_assert_eq!(p.kind, q.kind);
                prop_assert!((p.c - q.c).abs() <= 1e-9 * (1.0 + p.c.abs()));
            }
        }
    }
}
