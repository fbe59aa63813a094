//! Command-line front end. Output is assembled in memory and written in one
//! piece, so a failing run never leaves a partial file behind.

mod table;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::curve::{self, Arclength, CurveSpec};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::isophote::{
    characterization_function, detect_case, extract_isophotes, fit_axis, reconstruct_branches,
    theorem_report, verify_isophote, IsophoteCase, Status,
};
use crate::lorentz::{AngleKind, MVec3};
use crate::surface::{IsophoteField, SurfaceClass, SurfaceSpec};
use crate::tolerances::Tolerances;

pub use table::Format;
use table::{num, opt, Table};

/// Grid used to reject non-timelike surfaces before any other work.
const VALIDATION_GRID: usize = 33;

#[derive(Debug, Parser)]
#[command(name = "isophote", version, about = "Isophote curves on timelike surfaces in Minkowski 3-space")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Worker threads for grid and station sweeps (1 = sequential).
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    /// Write output here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    #[command(flatten)]
    pub tol: TolArgs,
}

#[derive(Debug, Args)]
pub struct TolArgs {
    #[arg(long, global = true, value_name = "EPS")]
    pub causal_tol: Option<f64>,
    #[arg(long, global = true, value_name = "EPS")]
    pub curv_tol: Option<f64>,
    #[arg(long, global = true, value_name = "EPS")]
    pub refine_tol: Option<f64>,
    #[arg(long, global = true, value_name = "EPS")]
    pub verify_tol: Option<f64>,
    #[arg(long, global = true, value_name = "EPS")]
    pub constancy_tol: Option<f64>,
    #[arg(long, global = true, value_name = "EPS")]
    pub axis_tol: Option<f64>,
    #[arg(long, global = true, value_name = "EPS")]
    pub geodesic_tol: Option<f64>,
}

impl TolArgs {
    pub fn resolve(&self) -> Tolerances {
        let mut t = Tolerances::default();
        let set = |dst: &mut f64, src: Option<f64>| {
            if let Some(x) = src {
                *dst = x;
            }
        };
        set(&mut t.causal, self.causal_tol);
        set(&mut t.curv, self.curv_tol);
        set(&mut t.refine, self.refine_tol);
        set(&mut t.verify, self.verify_tol);
        set(&mut t.constancy, self.constancy_tol);
        set(&mut t.axis, self.axis_tol);
        set(&mut t.geodesic, self.geodesic_tol);
        t
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Causal type of a surface, with the samples that break timelikeness.
    Classify {
        #[arg(long)]
        surface: PathBuf,
        #[command(flatten)]
        grid: GridArg<64>,
    },
    /// Grid dump of g = <N_hat, d>.
    Field {
        #[arg(long)]
        surface: PathBuf,
        #[arg(long, value_parser = parse_axis, allow_hyphen_values = true)]
        axis: MVec3,
        #[command(flatten)]
        grid: GridArg<64>,
    },
    /// Isophote polylines of g = c.
    Extract {
        #[arg(long)]
        surface: PathBuf,
        #[arg(long, value_parser = parse_axis, allow_hyphen_values = true)]
        axis: MVec3,
        #[command(flatten)]
        level: RequiredLevel,
        #[command(flatten)]
        grid: GridArg<128>,
    },
    /// Frenet and Darboux data at uniform arclength stations.
    Frames {
        #[command(flatten)]
        curve: CurveArgs,
    },
    /// Constant-angle check of a surface curve against an axis.
    Verify {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, value_parser = parse_axis, allow_hyphen_values = true)]
        axis: MVec3,
    },
    /// Axis reconstruction from the case formulas, cross-checked by a variance fit.
    Axis {
        #[command(flatten)]
        curve: CurveArgs,
        /// Override case detection.
        #[arg(long)]
        case: Option<IsophoteCase>,
        #[command(flatten)]
        level: OptionalLevel,
    },
    /// Every theorem check with measured residual and tolerance.
    Report {
        #[command(flatten)]
        curve: CurveArgs,
        /// Reference axis; fitted from the normals when omitted.
        #[arg(long, value_parser = parse_axis, allow_hyphen_values = true)]
        axis: Option<MVec3>,
    },
}

#[derive(Debug, Args)]
pub struct GridArg<const N: usize> {
    /// Samples along u and v.
    #[arg(long, num_args = 2, value_names = ["NU", "NV"], default_values_t = [N, N])]
    pub grid: Vec<usize>,
}

impl<const N: usize> GridArg<N> {
    fn counts(&self) -> (usize, usize) {
        (self.grid[0], self.grid[1])
    }
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[arg(long)]
    pub curve: PathBuf,
    /// Overrides the `surface =` line of the curve file.
    #[arg(long)]
    pub surface: Option<PathBuf>,
    #[arg(long, default_value_t = 200)]
    pub stations: usize,
}

#[derive(Debug, Args)]
pub struct RequiredLevel {
    /// Signed invariant c = <N, d>.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "angle", required_unless_present = "angle")]
    pub c: Option<f64>,
    /// Angle, converted to c through --kind.
    #[arg(long, allow_hyphen_values = true, requires = "kind")]
    pub angle: Option<f64>,
    #[arg(long, requires = "angle")]
    pub kind: Option<AngleKind>,
}

#[derive(Debug, Args)]
pub struct OptionalLevel {
    #[arg(long, allow_hyphen_values = true, conflicts_with = "angle")]
    pub c: Option<f64>,
    #[arg(long, allow_hyphen_values = true, requires = "kind")]
    pub angle: Option<f64>,
    #[arg(long, requires = "angle")]
    pub kind: Option<AngleKind>,
}

fn level_value(c: Option<f64>, angle: Option<f64>, kind: Option<AngleKind>) -> Option<f64> {
    c.or_else(|| Some(kind?.invariant_of(angle?)))
}

fn parse_axis(s: &str) -> std::result::Result<MVec3, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated components, got `{s}`"));
    }
    let mut x = [0.0; 3];
    for (dst, p) in x.iter_mut().zip(&parts) {
        *dst = p.parse().map_err(|_| format!("`{p}` is not a number"))?;
    }
    Ok(MVec3::from_array(x))
}

/// Result of a successful run: the rendered output and whether the
/// property under test held.
struct Outcome {
    text: Vec<u8>,
    holds: bool,
}

/// Parses `args` and runs the command. Returns the process exit code:
/// 0 success, 2 property does not hold, 1 error.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    1
                }
            };
        }
    };
    let outcome = execute(&cli).and_then(|o| {
        match &cli.output {
            Some(path) => std::fs::write(path, &o.text).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
            None => stdout.write_all(&o.text).map_err(Error::from),
        }?;
        Ok(o.holds)
    });
    match outcome {
        Ok(true) => 0,
        Ok(false) => 2,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

fn load_surface(path: &Path, tol: &Tolerances, exec: Exec) -> Result<SurfaceSpec> {
    let s = SurfaceSpec::load(path)?;
    s.require_timelike(VALIDATION_GRID, VALIDATION_GRID, tol, exec)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(s)
}

fn load_curve(args: &CurveArgs, tol: &Tolerances, exec: Exec) -> Result<CurveSpec> {
    let fallback = args.surface.as_deref().map(|p| load_surface(p, tol, exec)).transpose()?;
    let c = CurveSpec::load(&args.curve, fallback.as_ref())?;
    if fallback.is_none() {
        if let Some(s) = c.surface() {
            s.require_timelike(VALIDATION_GRID, VALIDATION_GRID, tol, exec)
                .map_err(|e| Error::Io(format!("{}: {e}", args.curve.display())))?;
        }
    }
    Ok(c)
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let tol = cli.tol.resolve();
    let exec = cli.workers.map(Exec::with_workers).unwrap_or_else(Exec::auto);
    let format = cli.format.unwrap_or(match cli.command {
        Command::Report { .. } => Format::Report,
        _ => Format::Csv,
    });
    let mut text = Vec::new();
    let holds = match &cli.command {
        Command::Classify { surface, grid } => {
            let s = SurfaceSpec::load(surface)?;
            let (nu, nv) = grid.counts();
            let c = s.classify(nu, nv, &tol, exec);
            let mut t = Table::new(&["surface_class", "u", "v", "normal_class", "normal_mdot"]);
            for w in c.witnesses() {
                let class = w.class.map(|k| k.as_str()).unwrap_or("degenerate");
                t.push(vec![c.class.to_string(), num(w.u), num(w.v), class.into(), num(w.mdot)]);
            }
            if c.class == SurfaceClass::Timelike {
                t.push(vec![c.class.to_string(), String::new(), String::new(), String::new(), String::new()]);
            }
            t.write(&mut text, format)?;
            c.class == SurfaceClass::Timelike
        }
        Command::Field { surface, axis, grid } => {
            let field = IsophoteField::new(load_surface(surface, &tol, exec)?, *axis, tol)?;
            let (nu, nv) = grid.counts();
            let g = field.sample_grid(nu, nv, exec);
            let mut t = Table::new(&["u", "v", "g"]);
            for (i, u) in g.us.iter().enumerate() {
                for (j, v) in g.vs.iter().enumerate() {
                    t.push(vec![num(*u), num(*v), opt(g.at(i, j))]);
                }
            }
            t.write(&mut text, format)?;
            true
        }
        Command::Extract { surface, axis, level, grid } => {
            let field = IsophoteField::new(load_surface(surface, &tol, exec)?, *axis, tol)?;
            let c = level_value(level.c, level.angle, level.kind)
                .ok_or_else(|| Error::Domain("missing --c or --angle/--kind".into()))?;
            let (nu, nv) = grid.counts();
            let ex = extract_isophotes(&field, c, nu, nv, &tol, exec)?;
            let mut t = Table::new(&["component_id", "vertex_id", "u", "v", "x0", "x1", "x2", "g"]);
            for (ci, curve) in ex.curves.iter().enumerate() {
                for (vi, vx) in curve.vertices.iter().enumerate() {
                    let p = field.surface.point(vx.u, vx.v)?;
                    t.push(vec![
                        ci.to_string(),
                        vi.to_string(),
                        num(vx.u),
                        num(vx.v),
                        num(p.x0),
                        num(p.x1),
                        num(p.x2),
                        num(vx.g),
                    ]);
                }
            }
            t.write(&mut text, format)?;
            true
        }
        Command::Frames { curve } => {
            let spec = load_curve(curve, &tol, exec)?;
            let arc = Arclength::new(&spec, curve.stations.max(64), &tol)?;
            let ss = curve::stations(&arc, curve.stations);
            let sts = curve::station_apparatus(&spec, &arc, &ss, &tol, exec)?;
            let mut t = Table::new(&[
                "s", "x0", "x1", "x2", "T0", "T1", "T2", "B0", "B1", "B2", "N0", "N1", "N2", "k_g", "k_n",
                "tau_g", "kappa", "tau", "phi",
            ]);
            for st in &sts {
                let f = &st.frenet;
                let d = st.darboux.as_ref();
                let vec3 = |v: Option<MVec3>| match v {
                    Some(v) => vec![num(v.x0), num(v.x1), num(v.x2)],
                    None => vec![String::new(); 3],
                };
                let mut row = vec![num(f.s)];
                row.extend(vec3(Some(f.position)));
                row.extend(vec3(Some(f.tangent)));
                row.extend(vec3(d.map(|d| d.binormal)));
                row.extend(vec3(d.map(|d| d.normal)));
                row.push(opt(d.map(|d| d.k_g)));
                row.push(opt(d.map(|d| d.k_n)));
                row.push(opt(d.map(|d| d.tau_g)));
                row.push(num(f.kappa));
                row.push(opt(f.frame.map(|fr| fr.tau)));
                row.push(opt(d.and_then(|d| d.phi)));
                t.push(row);
            }
            t.write(&mut text, format)?;
            true
        }
        Command::Verify { curve, axis } => {
            let spec = load_curve(curve, &tol, exec)?;
            let r = verify_isophote(&spec, *axis, curve.stations, &tol, exec)?;
            let mut t = Table::new(&["c_mean", "max_deviation", "tolerance", "kind", "verdict"]);
            let verdict = if r.passed { "isophote" } else { "not_isophote" };
            t.push(vec![num(r.c_mean), num(r.max_deviation), num(r.tolerance), r.kind.to_string(), verdict.into()]);
            t.write(&mut text, format)?;
            r.passed
        }
        Command::Axis { curve, case, level } => {
            let spec = load_curve(curve, &tol, exec)?;
            let arc = Arclength::new(&spec, curve.stations.max(64), &tol)?;
            let ss = curve::stations(&arc, curve.stations);
            let samples = curve::darboux_apparatus(&spec, &arc, &ss, &tol, exec)?;
            let case = match case {
                Some(k) => *k,
                None => detect_case(&samples)?,
            };
            let c = match level_value(level.c, level.angle, level.kind) {
                Some(c) => c,
                None => case.c_from_ratio(characterization_function(&samples, case, &tol)?.plus.mean)?,
            };
            let branches = reconstruct_branches(&samples, case, c, &tol)?;
            let mut t = Table::new(&["branch", "d0", "d1", "d2", "causal", "c", "residual_const", "residual_deriv"]);
            for b in &branches {
                let label = b.branch.map(|x| x.as_str()).unwrap_or("");
                t.push(vec![
                    label.into(),
                    num(b.d.x0),
                    num(b.d.x1),
                    num(b.d.x2),
                    b.causal.as_str().into(),
                    num(b.c),
                    num(b.residual_const),
                    num(b.residual_deriv),
                ]);
            }
            let normals: Vec<MVec3> = samples.iter().map(|s| s.normal).collect();
            if let Ok(f) = fit_axis(&normals, &tol) {
                t.push(vec![
                    "fit".into(),
                    num(f.d.x0),
                    num(f.d.x1),
                    num(f.d.x2),
                    f.causal.as_str().into(),
                    num(f.c),
                    num(f.residual_const),
                    num(f.residual_deriv),
                ]);
            }
            t.write(&mut text, format)?;
            branches.iter().any(|b| b.residual_const.max(b.residual_deriv) <= tol.axis)
        }
        Command::Report { curve, axis } => {
            let spec = load_curve(curve, &tol, exec)?;
            let r = theorem_report(&spec, *axis, curve.stations, &tol, exec)?;
            match format {
                Format::Report => {
                    let case = r.case.map(|k| k.to_string()).unwrap_or_else(|| "none".into());
                    writeln!(text, "case {case}")?;
                    writeln!(text, "c {}", opt(r.c))?;
                    for check in &r.checks {
                        writeln!(text, "{check}")?;
                    }
                }
                _ => {
                    let mut t = Table::new(&["check", "status", "measured", "tolerance", "detail"]);
                    for check in &r.checks {
                        let (status, detail) = match &check.status {
                            Status::Pass => ("PASS", check.detail.clone()),
                            Status::Fail => ("FAIL", check.detail.clone()),
                            Status::Skipped(why) => ("SKIP", why.clone()),
                        };
                        t.push(vec![
                            check.name.into(),
                            status.into(),
                            num(check.measured),
                            num(check.tolerance),
                            detail,
                        ]);
                    }
                    t.write(&mut text, format)?;
                }
            }
            r.is_isophote()
        }
    };
    Ok(Outcome { text, holds })
}
