//! Curves in Minkowski 3-space, free or lying on a surface, with their
//! arclength tables and Frenet/Darboux apparatus.

mod arclength;
mod frames;

use std::path::Path;

pub use arclength::Arclength;
pub use frames::{
    darboux_apparatus, darboux_at, frenet_apparatus, frenet_at, normal_angle_phi, station_at,
    station_apparatus, stations, DarbouxSample, FrenetFrame, FrenetSample, Station,
};

use crate::error::{Error, Result};
use crate::expr::{self, Env, Expr, Var};
use crate::jet::{Jet, JetVec3, JET_LEN};
use crate::lorentz::{CausalClass, MVec3};
use crate::surface::{eval3, SurfaceSpec};
use crate::tolerances::Tolerances;

#[derive(Debug, Clone)]
pub enum CurveKind {
    /// `alpha(t) = (x0(t), x1(t), x2(t))`.
    Space([Expr; 3]),
    /// `alpha(t) = r(u(t), v(t))`.
    Surface { u: Expr, v: Expr, surface: SurfaceSpec },
}

#[derive(Debug, Clone)]
pub struct CurveSpec {
    pub kind: CurveKind,
    pub t_min: f64,
    pub t_max: f64,
}

/// Taylor data of a curve at one parameter value.
///
/// Jets are in the curve parameter, which need not be arclength.
#[derive(Debug, Clone, Copy)]
pub struct CurveJet {
    pub param: f64,
    pub alpha: JetVec3,
    /// Raw surface normal `r_u x r_v` along the curve.
    pub normal_raw: Option<JetVec3>,
    pub uv: Option<(f64, f64)>,
}

impl CurveSpec {
    pub fn space(x: [Expr; 3], t_min: f64, t_max: f64) -> CurveSpec {
        CurveSpec { kind: CurveKind::Space(x), t_min, t_max }
    }

    pub fn on_surface(u: Expr, v: Expr, surface: SurfaceSpec, t_min: f64, t_max: f64) -> CurveSpec {
        CurveSpec { kind: CurveKind::Surface { u, v, surface }, t_min, t_max }
    }

    pub fn surface(&self) -> Option<&SurfaceSpec> {
        match &self.kind {
            CurveKind::Surface { surface, .. } => Some(surface),
            CurveKind::Space(_) => None,
        }
    }

    /// Parses the curve spec format:
    ///
    /// ```text
    /// kind = surface
    /// surface = desitter.srf   # optional, relative to this file
    /// u = 0.5
    /// v = t
    /// t = 0 2*pi
    /// ```
    ///
    /// Space curves use `x0`, `x1`, `x2` instead of `u`, `v`. An explicit
    /// `fallback` surface takes precedence over the `surface =` line.
    pub fn parse_spec(text: &str, path: &Path, fallback: Option<&SurfaceSpec>) -> Result<CurveSpec> {
        let err = |line: usize, message: String| Error::SpecFile {
            path: path.to_path_buf(),
            line,
            message,
        };
        let mut kind: Option<String> = None;
        let mut surface_path: Option<(usize, String)> = None;
        let mut exprs: [Option<Expr>; 5] = Default::default();
        let mut range: Option<(f64, f64)> = None;
        const KEYS: [&str; 5] = ["u", "v", "x0", "x1", "x2"];
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(err(line, format!("expected `key = value`, got `{content}`")));
            };
            let (key, value) = (key.trim(), value.trim());
            match key {
                "kind" => match value {
                    "surface" | "space" => kind = Some(value.to_string()),
                    _ => return Err(err(line, format!("kind must be `surface` or `space`, got `{value}`"))),
                },
                "surface" => surface_path = Some((line, value.to_string())),
                "t" => {
                    let toks: Vec<&str> = value.split_whitespace().collect();
                    if toks.len() != 2 {
                        return Err(err(line, format!("expected `<min> <max>`, got `{value}`")));
                    }
                    let num = |s: &str| {
                        expr::parse(s)
                            .and_then(|e| e.eval_at(&[]))
                            .map_err(|e| err(line, format!("in `{s}`: {e}")))
                    };
                    let (a, b) = (num(toks[0])?, num(toks[1])?);
                    if !(a < b) {
                        return Err(err(line, format!("empty interval [{a}, {b}]")));
                    }
                    range = Some((a, b));
                }
                _ => {
                    let Some(k) = KEYS.iter().position(|k| *k == key) else {
                        return Err(err(line, format!("unknown key `{key}`")));
                    };
                    let e = expr::parse(value).map_err(|e| err(line, e.to_string()))?;
                    if e.depends_on(Var::U) || e.depends_on(Var::V) || e.depends_on(Var::S) {
                        return Err(err(line, format!("`{key}` may only depend on t")));
                    }
                    exprs[k] = Some(e);
                }
            }
        }
        let (t_min, t_max) = range.ok_or_else(|| err(0, "missing `t` line".into()))?;
        let missing = |name: &str| err(0, format!("missing `{name}` line"));
        let [u, v, x0, x1, x2] = exprs;
        match kind.as_deref() {
            Some("space") => Ok(CurveSpec::space(
                [
                    x0.ok_or_else(|| missing("x0"))?,
                    x1.ok_or_else(|| missing("x1"))?,
                    x2.ok_or_else(|| missing("x2"))?,
                ],
                t_min,
                t_max,
            )),
            Some(_) => {
                let surface = match (fallback, surface_path) {
                    (Some(s), _) => s.clone(),
                    (None, Some((line, rel))) => {
                        let base = path.parent().unwrap_or(Path::new("."));
                        SurfaceSpec::load(&base.join(&rel)).map_err(|e| err(line, e.to_string()))?
                    }
                    (None, None) => return Err(err(0, "surface curve needs a surface".into())),
                };
                Ok(CurveSpec::on_surface(
                    u.ok_or_else(|| missing("u"))?,
                    v.ok_or_else(|| missing("v"))?,
                    surface,
                    t_min,
                    t_max,
                ))
            }
            None => Err(missing("kind")),
        }
    }

    pub fn load(path: &Path, fallback: Option<&SurfaceSpec>) -> Result<CurveSpec> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        CurveSpec::parse_spec(&text, path, fallback)
    }

    /// Jets of order `len - 1` at parameter `t`.
    pub fn jet_len(&self, t: f64, len: usize) -> Result<CurveJet> {
        let env = Env::new().with(Var::T, Jet::variable(t, len));
        match &self.kind {
            CurveKind::Space(x) => {
                let a = eval3(x, &env)?.map(|j| j.truncate(len));
                Ok(CurveJet { param: t, alpha: JetVec3(a), normal_raw: None, uv: None })
            }
            CurveKind::Surface { u, v, surface } => {
                let uj = u.eval(&env)?.truncate(len);
                let vj = v.eval(&env)?.truncate(len);
                let (alpha, n) = surface.jets(uj, vj)?;
                Ok(CurveJet {
                    param: t,
                    alpha,
                    normal_raw: Some(n),
                    uv: Some((uj.value(), vj.value())),
                })
            }
        }
    }

    pub fn jet(&self, t: f64) -> Result<CurveJet> {
        self.jet_len(t, JET_LEN)
    }

    pub fn point(&self, t: f64) -> Result<MVec3> {
        Ok(self.jet_len(t, 1)?.alpha.value())
    }

    /// `alpha'(t)` in the curve parameter.
    pub fn velocity(&self, t: f64) -> Result<MVec3> {
        Ok(self.jet_len(t, 2)?.alpha.derivative(1))
    }

    /// Causal class of the tangent at `t`.
    pub fn tangent_class(&self, t: f64, tol: &Tolerances) -> Result<CausalClass> {
        Ok(self.velocity(t)?.causal_class(tol.causal))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::Domain;
    use std::f64::consts::PI;

    fn cylinder() -> SurfaceSpec {
        SurfaceSpec::new(
            ["v", "cos(u)", "sin(u)"].map(|s| expr::parse(s).unwrap()),
            Domain::new(0.0, 2.0 * PI, true),
            Domain::new(-1.0, 1.0, false),
        )
        .unwrap()
    }

    #[test]
    fn surface_curve_jets() {
        let c = CurveSpec::on_surface(
            expr::parse("t").unwrap(),
            expr::parse("t/2").unwrap(),
            cylinder(),
            0.0,
            1.0,
        );
        let j = c.jet(0.3).unwrap();
        let want = MVec3::new(0.15, 0.3f64.cos(), 0.3f64.sin());
        assert!((j.alpha.value() - want).max_abs() < 1e-15);
        let vel = MVec3::new(0.5, -(0.3f64.sin()), 0.3f64.cos());
        assert!((j.alpha.derivative(1) - vel).max_abs() < 1e-15);
        assert_eq!(c.tangent_class(0.3, &Tolerances::default()).unwrap(), CausalClass::Spacelike);
    }

    #[test]
    fn parses_space_and_surface_curves() {
        let sp = CurveSpec::parse_spec("kind = space\nx0 = 2*t\nx1 = cos(t)\nx2 = sin(t)\nt = 0 2*pi\n", Path::new("h.crv"), None)
            .unwrap();
        assert!(matches!(sp.kind, CurveKind::Space(_)));
        assert!((sp.t_max - 2.0 * PI).abs() < 1e-15);
        let s = cylinder();
        let sc = CurveSpec::parse_spec("kind = surface\nu = t\nv = t/2\nt = 0 1\n", Path::new("c.crv"), Some(&s))
            .unwrap();
        assert!(sc.surface().is_some());
        let missing = CurveSpec::parse_spec("kind = surface\nu = t\nv = t\nt = 0 1\n", Path::new("c.crv"), None);
        assert!(matches!(missing, Err(Error::SpecFile { .. })));
        let bad = CurveSpec::parse_spec("kind = space\nx0 = u\n", Path::new("c.crv"), None);
        assert!(matches!(bad, Err(Error::SpecFile { line: 2, .. })));
    }
}
