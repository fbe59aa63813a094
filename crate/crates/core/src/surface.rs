//! Parametric surfaces `r(u, v)`, their Lorentzian normals and the isophote
//! scalar field `g = <N_hat, d>`.

use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::expr::{self, Env, Expr, Scalar, Var};
use crate::jet::{Jet, JetVec3};
use crate::lorentz::{CausalClass, MVec3};
use crate::tolerances::Tolerances;

/// One parameter interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain {
    pub min: f64,
    pub max: f64,
    pub periodic: bool,
}

impl Domain {
    pub fn new(min: f64, max: f64, periodic: bool) -> Domain {
        Domain { min, max, periodic }
    }

    pub fn span(&self) -> f64 {
        self.max - self.min
    }

    /// Grid abscissae. Periodic axes omit the right end, which duplicates the left.
    pub fn samples(&self, n: usize) -> Vec<f64> {
        let n = n.max(2);
        if self.periodic {
            let h = self.span() / n as f64;
            (0..n).map(|i| self.min + i as f64 * h).collect()
        } else {
            let h = self.span() / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { self.max } else { self.min + i as f64 * h })
                .collect()
        }
    }

    /// Maps `x` into the domain for periodic axes; others are left alone.
    pub fn wrap(&self, x: f64) -> f64 {
        if self.periodic {
            self.min + (x - self.min).rem_euclid(self.span())
        } else {
            x
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.periodic || (x >= self.min && x <= self.max)
    }
}

pub(crate) fn eval3<T: Scalar>(xs: &[Expr; 3], env: &Env<T>) -> Result<[T; 3]> {
    Ok([xs[0].eval(env)?, xs[1].eval(env)?, xs[2].eval(env)?])
}

fn to_mvec(a: [f64; 3]) -> MVec3 {
    MVec3::from_array(a)
}

fn cross_exprs(x: &[Expr; 3], y: &[Expr; 3]) -> [Expr; 3] {
    let p = |a: &Expr, b: &Expr| expr::mul(a.clone(), b.clone());
    [
        expr::sub(p(&x[1], &y[2]), p(&x[2], &y[1])),
        expr::sub(p(&x[0], &y[2]), p(&x[2], &y[0])),
        expr::sub(p(&x[1], &y[0]), p(&x[0], &y[1])),
    ]
}

fn mdot_exprs(x: &[Expr; 3], y: &[Expr; 3]) -> Expr {
    let p = |a: &Expr, b: &Expr| expr::mul(a.clone(), b.clone());
    expr::add(
        expr::sub(p(&x[1], &y[1]), p(&x[0], &y[0])),
        p(&x[2], &y[2]),
    )
}

/// A surface `r(u, v) = (x0, x1, x2)` over a parameter rectangle.
#[derive(Debug, Clone)]
pub struct SurfaceSpec {
    pub x: [Expr; 3],
    pub u: Domain,
    pub v: Domain,
    r_u: [Expr; 3],
    r_v: [Expr; 3],
    n_raw: [Expr; 3],
}

impl SurfaceSpec {
    pub fn new(x: [Expr; 3], u: Domain, v: Domain) -> Result<SurfaceSpec> {
        for e in &x {
            if e.depends_on(Var::T) || e.depends_on(Var::S) {
                return Err(Error::Domain(format!(
                    "surface coordinate `{e}` may only use u and v"
                )));
            }
        }
        let r_u = x.clone().map(|e| e.diff(Var::U));
        let r_v = x.clone().map(|e| e.diff(Var::V));
        let n_raw = cross_exprs(&r_u, &r_v);
        Ok(SurfaceSpec { x, u, v, r_u, r_v, n_raw })
    }

    /// Parses the line-oriented spec format:
    ///
    /// ```text
    /// # Lorentzian cylinder
    /// x0 = v
    /// x1 = cos(u)
    /// x2 = sin(u)
    /// u = 0 2*pi periodic
    /// v = -1 1
    /// ```
    ///
    /// Domain bounds are constant expressions without inner whitespace.
    pub fn parse_spec(text: &str, path: &Path) -> Result<SurfaceSpec> {
        let mut x: [Option<Expr>; 3] = [None, None, None];
        let mut dom: [Option<Domain>; 2] = [None, None];
        let err = |line: usize, message: String| Error::SpecFile {
            path: path.to_path_buf(),
            line,
            message,
        };
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
                "x0" | "x1" | "x2" => {
                    let k = (key.as_bytes()[1] - b'0') as usize;
                    let e = expr::parse(value).map_err(|e| err(line, e.to_string()))?;
                    x[k] = Some(e);
                }
                "u" | "v" => {
                    let d = parse_domain(value).map_err(|m| err(line, m))?;
                    dom[usize::from(key == "v")] = Some(d);
                }
                _ => return Err(err(line, format!("unknown key `{key}`"))),
            }
        }
        let missing = |name: &str| err(0, format!("missing `{name}` line"));
        let [x0, x1, x2] = x;
        let x = [
            x0.ok_or_else(|| missing("x0"))?,
            x1.ok_or_else(|| missing("x1"))?,
            x2.ok_or_else(|| missing("x2"))?,
        ];
        let u = dom[0].ok_or_else(|| missing("u"))?;
        let v = dom[1].ok_or_else(|| missing("v"))?;
        SurfaceSpec::new(x, u, v).map_err(|e| err(0, e.to_string()))
    }

    pub fn load(path: &Path) -> Result<SurfaceSpec> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        SurfaceSpec::parse_spec(&text, path)
    }

    fn env(u: f64, v: f64) -> Env<f64> {
        Env::new().with(Var::U, u).with(Var::V, v)
    }

    pub fn point(&self, u: f64, v: f64) -> Result<MVec3> {
        eval3(&self.x, &Self::env(u, v)).map(to_mvec)
    }

    /// Analytic `(r_u, r_v)`.
    pub fn partials(&self, u: f64, v: f64) -> Result<(MVec3, MVec3)> {
        let env = Self::env(u, v);
        Ok((to_mvec(eval3(&self.r_u, &env)?), to_mvec(eval3(&self.r_v, &env)?)))
    }

    /// `N_raw = r_u x r_v` evaluated from its symbolic form.
    pub fn normal_raw(&self, u: f64, v: f64) -> Result<MVec3> {
        eval3(&self.n_raw, &Self::env(u, v)).map(to_mvec)
    }

    /// `(N_raw, N_hat)`, keeping the orientation of `r_u x r_v`.
    pub fn normal(&self, u: f64, v: f64, tol: &Tolerances) -> Result<(MVec3, MVec3)> {
        let (ru, rv) = self.partials(u, v)?;
        let n = ru.mcross(rv);
        let scale = ru.enorm() * rv.enorm();
        if !(n.enorm() > 1e-12 * scale) || scale == 0.0 {
            return Err(Error::DegenerateParameterization { u, v });
        }
        let q = n.mdot(n);
        if q.abs() <= tol.causal * n.edot(n) {
            return Err(Error::LightlikeNormal { u, v });
        }
        Ok((n, n / q.abs().sqrt()))
    }

    /// Surface point and raw normal as jets along `(u(t), v(t))`.
    pub fn jets(&self, u: Jet, v: Jet) -> Result<(JetVec3, JetVec3)> {
        let env = Env::new().with(Var::U, u).with(Var::V, v);
        Ok((JetVec3(eval3(&self.x, &env)?), JetVec3(eval3(&self.n_raw, &env)?)))
    }

    pub fn grid(&self, nu: usize, nv: usize) -> (Vec<f64>, Vec<f64>) {
        (self.u.samples(nu), self.v.samples(nv))
    }

    /// Samples the causal class of `N_raw` over an `nu x nv` grid.
    pub fn classify(&self, nu: usize, nv: usize, tol: &Tolerances, exec: Exec) -> Classification {
        let (us, vs) = self.grid(nu, nv);
        let samples = exec.map_range(us.len() * vs.len(), |k| {
            let (u, v) = (us[k / vs.len()], vs[k % vs.len()]);
            match self.normal(u, v, tol) {
                Ok((n, _)) => NormalSample {
                    u,
                    v,
                    class: Some(n.causal_class(tol.causal)),
                    mdot: n.mdot(n),
                },
                Err(Error::LightlikeNormal { .. }) => {
                    let n = self.normal_raw(u, v).unwrap_or(MVec3::ZERO);
                    NormalSample { u, v, class: Some(CausalClass::Lightlike), mdot: n.mdot(n) }
                }
                Err(_) => NormalSample { u, v, class: None, mdot: f64::NAN },
            }
        });
        let all = |c: CausalClass| samples.iter().all(|s| s.class == Some(c));
        let class = if all(CausalClass::Spacelike) {
            SurfaceClass::Timelike
        } else if all(CausalClass::Timelike) {
            SurfaceClass::Spacelike
        } else {
            SurfaceClass::Mixed
        };
        Classification { class, samples }
    }

    /// Fails with [`Error::NotTimelike`] unless the grid sweep is uniformly timelike.
    pub fn require_timelike(&self, nu: usize, nv: usize, tol: &Tolerances, exec: Exec) -> Result<()> {
        let c = self.classify(nu, nv, tol, exec);
        match c.class {
            SurfaceClass::Timelike => Ok(()),
            other => {
                let w = c.witnesses().next();
                Err(Error::NotTimelike(match w {
                    Some(w) => format!("{other}; witness (u, v) = ({}, {})", w.u, w.v),
                    None => other.to_string(),
                }))
            }
        }
    }
}

fn parse_domain(value: &str) -> std::result::Result<Domain, String> {
    let toks: Vec<&str> = value.split_whitespace().collect();
    let periodic = match toks.len() {
        2 => false,
        3 if toks[2] == "periodic" => true,
        _ => return Err(format!("expected `<min> <max> [periodic]`, got `{value}`")),
    };
    let num = |s: &str| -> std::result::Result<f64, String> {
        let e = expr::parse(s).map_err(|e| format!("in `{s}`: {e}"))?;
        e.eval_at(&[]).map_err(|e| format!("in `{s}`: {e}"))
    };
    let (min, max) = (num(toks[0])?, num(toks[1])?);
    if !(min < max) {
        return Err(format!("empty interval [{min}, {max}]"));
    }
    Ok(Domain::new(min, max, periodic))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceClass {
    /// Spacelike normal at every sample.
    Timelike,
    Spacelike,
    Mixed,
}

impl SurfaceClass {
    pub fn as_str(self) -> &'static str {
        match self {
            SurfaceClass::Timelike => "timelike",
            SurfaceClass::Spacelike => "spacelike",
            SurfaceClass::Mixed => "mixed",
        }
    }
}

impl fmt::Display for SurfaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalSample {
    pub u: f64,
    pub v: f64,
    /// `None` where the parameterization degenerates.
    pub class: Option<CausalClass>,
    pub mdot: f64,
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub class: SurfaceClass,
    pub samples: Vec<NormalSample>,
}

impl Classification {
    /// Samples whose normal is not spacelike.
    pub fn witnesses(&self) -> impl Iterator<Item = &NormalSample> {
        self.samples
            .iter()
            .filter(|s| s.class != Some(CausalClass::Spacelike))
    }
}

/// `g(u, v) = <N_hat(u, v), d>` on a surface, with analytic gradient.
#[derive(Debug, Clone)]
pub struct IsophoteField {
    pub surface: SurfaceSpec,
    pub d: MVec3,
    g_u: Expr,
    g_v: Expr,
    tol: Tolerances,
}

impl IsophoteField {
    /// `d` is normalized here; lightlike axes are rejected.
    pub fn new(surface: SurfaceSpec, d: MVec3, tol: Tolerances) -> Result<IsophoteField> {
        let d = d.normalize(tol.causal)?;
        let dv = d.to_array().map(Expr::num);
        let n = &surface.n_raw;
        let g = expr::div(
            mdot_exprs(n, &dv),
            expr::call(
                expr::Func::Sqrt,
                expr::call(expr::Func::Abs, mdot_exprs(n, n)),
            ),
        );
        let g_u = g.diff(Var::U);
        let g_v = g.diff(Var::V);
        Ok(IsophoteField { surface, d, g_u, g_v, tol })
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    pub fn value(&self, u: f64, v: f64) -> Result<f64> {
        let (_, n) = self.surface.normal(u, v, &self.tol)?;
        Ok(n.mdot(self.d))
    }

    /// `(g_u, g_v)`; the contour direction is `(-g_v, g_u)`.
    pub fn gradient(&self, u: f64, v: f64) -> Result<(f64, f64)> {
        self.surface.normal(u, v, &self.tol)?;
        let env = SurfaceSpec::env(u, v);
        Ok((self.g_u.eval(&env)?, self.g_v.eval(&env)?))
    }

    /// Gradient as jets along `(u(t), v(t))`.
    pub fn gradient_jets(&self, u: Jet, v: Jet) -> Result<(Jet, Jet)> {
        let env = Env::new().with(Var::U, u).with(Var::V, v);
        Ok((self.g_u.eval(&env)?, self.g_v.eval(&env)?))
    }

    /// Evaluates `g` on the surface grid; `None` marks lightlike or degenerate nodes.
    pub fn sample_grid(&self, nu: usize, nv: usize, exec: Exec) -> FieldGrid {
        let (us, vs) = self.surface.grid(nu, nv);
        let values = exec.map_range(us.len() * vs.len(), |k| {
            self.value(us[k / vs.len()], vs[k % vs.len()]).ok()
        });
        FieldGrid { us, vs, values }
    }
}

/// Row-major samples of `g`: index `i * vs.len() + j` holds `(us[i], vs[j])`.
#[derive(Debug, Clone)]
pub struct FieldGrid {
    pub us: Vec<f64>,
    pub vs: Vec<f64>,
    pub values: Vec<Option<f64>>,
}

impl FieldGrid {
    pub fn at(&self, i: usize, j: usize) -> Option<f64> {
        self.values[i * self.vs.len() + j]
    }
}
