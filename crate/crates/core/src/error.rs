use std::path::PathBuf;

use thiserror::Error;

use crate::expr::Var;
use crate::isophote::IsophoteCase;

/// Errors raised anywhere in the geometry kernel.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { name: String, offset: usize },

    #[error("variable `{0}` is not bound")]
    UnboundVariable(Var),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("lightlike vector where a spacelike or timelike one is required")]
    LightlikeInput,

    #[error("surface normal is lightlike at (u, v) = ({u}, {v})")]
    LightlikeNormal { u: f64, v: f64 },

    #[error("degenerate parameterization at (u, v) = ({u}, {v}): r_u and r_v are dependent")]
    DegenerateParameterization { u: f64, v: f64 },

    #[error("surface is not timelike: {0}")]
    NotTimelike(String),

    #[error("curve tangent is lightlike at t = {t}")]
    LightlikeTangent { t: f64 },

    #[error("curve changes causal class near t = {t}")]
    CausalClassChange { t: f64 },

    #[error("curvature vanishes at s = {s}; Frenet frame undefined")]
    VanishingCurvature { s: f64 },

    #[error("case {case} is inadmissible at station {station}: k_n^2 - tau_g^2 = {delta}")]
    CaseInadmissible {
        case: IsophoteCase,
        station: usize,
        delta: f64,
    },

    #[error("invariant value c = {c} is outside the angle range of case {case}")]
    AngleRange { case: IsophoteCase, c: f64 },

    #[error("reconstructed axis is not constant (residual {residual:e} > {tolerance:e})")]
    NonConstantAxis { residual: f64, tolerance: f64 },

    #[error("axis fit is degenerate: {0}")]
    DegenerateFit(String),

    #[error("tau^2 = kappa^2 at s = {s}; slant-helix function undefined")]
    DegenerateHelix { s: f64 },

    #[error("Gauss image is degenerate at s = {s} (normal locally constant or lightlike)")]
    DegenerateGaussImage { s: f64 },

    #[error("{path}:{line}: {message}")]
    SpecFile {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
