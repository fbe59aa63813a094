//! Acceptance criteria, one PASS/FAIL line each. Run with
//! `cargo test --test acceptance`; the process fails if any criterion fails.

mod common;

use std::path::Path;
use std::process::Command;

use common::{case_fixtures, cylinder, de_sitter, extraction_fixtures, frame_fixtures, on, roundtrip};
use isophote::curve::{
    darboux_apparatus, darboux_at, station_apparatus, stations, Arclength, CurveSpec, DarbouxSample, Station,
};
use isophote::isophote::{
    characterization_function, detect_case, extract_isophotes, fit_axis, gauss_map_geodesic_curvature,
    phi_function, reconstruct_axis, theorem_report, IsophoteCase, Status,
};
use isophote::surface::{IsophoteField, SurfaceSpec};
use isophote::{CausalClass, Exec, MVec3, Tolerances};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

struct Verdict {
    pass: bool,
    detail: String,
}

impl Verdict {
    fn new(pass: bool, detail: String) -> Verdict {
        Verdict { pass, detail }
    }
}

fn apparatus(c: &CurveSpec, n: usize) -> (Arclength, Vec<Station>) {
    let tol = Tolerances::default();
    let arc = Arclength::new(c, 128, &tol).unwrap();
    let ss = stations(&arc, n);
    let sts = station_apparatus(c, &arc, &ss, &tol, Exec::auto()).unwrap();
    (arc, sts)
}

fn darboux(c: &CurveSpec, n: usize) -> Vec<DarbouxSample> {
    let tol = Tolerances::default();
    let arc = Arclength::new(c, 128, &tol).unwrap();
    darboux_apparatus(c, &arc, &stations(&arc, n), &tol, Exec::auto()).unwrap()
}

fn helix() -> CurveSpec {
    on(cylinder(), "t", "t/2", (0.0, 6.0))
}

fn latitude(u0: f64) -> CurveSpec {
    on(de_sitter(), &format!("{u0}"), "t", (0.0, 6.0))
}

fn perturbed() -> CurveSpec {
    on(de_sitter(), "0.5+0.1*sin(2*t)", "t", (0.0, 6.0))
}

fn geodesics() -> Vec<(&'static str, CurveSpec, MVec3)> {
    vec![
        ("C helix", helix(), MVec3::E0),
        ("timelike helix", on(cylinder(), "t", "2*t", (0.0, 0.9)), MVec3::E0),
        ("B meridian", on(de_sitter(), "t", "0.7", (-1.0, 1.0)), MVec3::new(0.0, -0.7f64.sin(), 0.7f64.cos())),
    ]
}

fn c1_algebra() -> Verdict {
    let mut rng = StdRng::seed_from_u64(0x150f07e);
    let mut worst_orth = 0.0f64;
    let mut worst_anti = 0.0f64;
    for _ in 0..10_000 {
        let mut v = || MVec3::new(rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0));
        let (x, y) = (v(), v());
        let z = x.mcross(y);
        let scale = x.enorm() * y.enorm();
        let orth = (z.mdot(x).abs() + z.mdot(y).abs()) / (scale * (x.enorm() + y.enorm()));
        let anti = (z + y.mcross(x)).enorm() / scale;
        worst_orth = worst_orth.max(orth);
        worst_anti = worst_anti.max(anti);
    }
    let (e1, e2, e3) = (MVec3::E0, MVec3::E1, MVec3::E2);
    let basis = [(e1.mcross(e2) + e3), (e2.mcross(e3) - e1), (e3.mcross(e1) + e2)]
        .iter()
        .map(|r| r.max_abs())
        .fold(0.0, f64::max);
    Verdict::new(
        worst_orth <= 1e-10 && worst_anti <= 1e-10 && basis <= 1e-15,
        format!("orthogonality {worst_orth:.2e}, antisymmetry {worst_anti:.2e} (tol 1e-10); basis {basis:.2e} (tol 1e-15)"),
    )
}

fn c2_frames() -> Verdict {
    let tol = Tolerances::default();
    let h = 1e-4;
    let (mut sig, mut deriv) = (0.0f64, 0.0f64);
    for (_, c) in frame_fixtures() {
        let (arc, sts) = apparatus(&c, 200);
        let frame = |s: f64| {
            let d = darboux_at(&c.jet(arc.t_of_s(s).unwrap()).unwrap(), s, &tol).unwrap();
            [d.tangent, d.binormal, d.normal]
        };
        for st in &sts {
            let d = st.darboux.unwrap();
            let (tt, bb) = if d.class == CausalClass::Timelike { (-1.0, 1.0) } else { (1.0, -1.0) };
            sig = sig
                .max((d.tangent.mnorm_sq() - tt).abs())
                .max((d.binormal.mnorm_sq() - bb).abs())
                .max((d.normal.mnorm_sq() - 1.0).abs());
            if d.s < 2.0 * h || d.s > arc.total() - 2.0 * h {
                continue;
            }
            let (p, m) = (frame(d.s + h), frame(d.s - h));
            let rhs = d.frame_derivatives();
            for k in 0..3 {
                let fd = (p[k] - m[k]) / (2.0 * h);
                deriv = deriv.max((fd - rhs[k]).enorm() / (1.0 + fd.enorm()));
            }
        }
    }
    Verdict::new(
        sig <= 1e-8 && deriv <= 1e-5,
        format!("signature {sig:.2e} (tol 1e-8); derivative residual {deriv:.2e} relative (tol 1e-5)"),
    )
}

fn c3_curvature() -> Verdict {
    let (mut tl, mut sl, mut tg) = (0.0f64, 0.0f64, 0.0f64);
    let mut with_phi = 0;
    for (_, c) in frame_fixtures() {
        let (_, sts) = apparatus(&c, 200);
        for st in &sts {
            let d = st.darboux.unwrap();
            let k2 = st.frenet.kappa.powi(2);
            if d.class == CausalClass::Timelike {
                tl = tl.max((k2 - d.k_g.powi(2) - d.k_n.powi(2)).abs() / (1.0 + k2));
            } else {
                sl = sl.max((k2 - (d.k_n.powi(2) - d.k_g.powi(2)).abs()).abs() / (1.0 + k2));
            }
            if let (Some(f), Some(dphi)) = (st.frenet.frame, d.phi_prime) {
                if st.frenet.kappa > 1e-3 {
                    tg = tg.max((d.tau_g - f.tau - dphi).abs());
                    with_phi += 1;
                }
            }
        }
    }
    Verdict::new(
        tl <= 1e-7 && sl <= 1e-7 && tg <= 1e-4 && with_phi > 0,
        format!("timelike {tl:.2e}, spacelike {sl:.2e} (tol 1e-7); tau_g - tau - phi' {tg:.2e} at {with_phi} stations (tol 1e-4)"),
    )
}

fn count(s: SurfaceSpec, d: MVec3, c: f64) -> (usize, f64) {
    let tol = Tolerances::default();
    let field = IsophoteField::new(s, d, tol).unwrap();
    let ex = extract_isophotes(&field, c, 128, 128, &tol, Exec::auto()).unwrap();
    (ex.curves.len(), ex.curves.iter().map(|k| k.residual).fold(0.0, f64::max))
}

fn c4_extraction() -> Verdict {
    let mut ok = true;
    let mut res = 0.0f64;
    let mut counts = Vec::new();
    for c in [-0.8, -0.3, 0.1, 0.5, 0.9] {
        let (n, r) = count(cylinder(), MVec3::E2, c);
        ok &= n == 2;
        res = res.max(r);
        counts.push(n);
    }
    for c in [-1.5, -0.5, 0.0, 0.7, 1.9] {
        let (n, r) = count(de_sitter(), MVec3::E0, c);
        ok &= n == 1;
        res = res.max(r);
        counts.push(n);
    }
    let outside = count(cylinder(), MVec3::E2, 1.5).0 + count(de_sitter(), MVec3::E0, 10.0).0;
    let cli = Command::new(env!("CARGO_BIN_EXE_isophote"))
        .args(["extract", "--surface", "cylinder.srf", "--axis", "0,0,1", "--c", "1.5"])
        .current_dir(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data"))
        .output()
        .unwrap();
    let cli_empty = cli.status.code() == Some(0) && cli.stdout.iter().filter(|&&b| b == b'\n').count() == 1;
    Verdict::new(
        ok && res <= 1e-10 && outside == 0 && cli_empty,
        format!(
            "components {counts:?} (expect 2 x5, 1 x5); |g - c| {res:.2e} (tol 1e-10); out of range: {outside} components, CLI exit {:?}",
            cli.status.code()
        ),
    )
}

fn c5_roundtrip() -> Verdict {
    let mut ok = true;
    let mut worst = (0.0f64, 0.0f64);
    let mut failed = Vec::new();
    for (case, s, d, c) in extraction_fixtures() {
        let r = roundtrip(case, s, d, c, 96, Exec::auto());
        match r.axis {
            Ok(a) if r.stations >= 20 => {
                let dist = a.d.dist_up_to_sign(d);
                worst = (worst.0.max(dist), worst.1.max(a.residual_deriv));
                if dist > 1e-4 || a.residual_deriv > 1e-4 {
                    ok = false;
                    failed.push(case.to_string());
                }
            }
            _ => {
                ok = false;
                failed.push(case.to_string());
            }
        }
    }
    let tol = Tolerances::default();
    let mut named = 0.0f64;
    for c in [helix(), latitude(-0.8), latitude(0.3), latitude(0.5), latitude(1.0)] {
        let s = darboux(&c, 200);
        let case = detect_case(&s).unwrap();
        let cc = case.c_from_ratio(characterization_function(&s, case, &tol).unwrap().plus.mean).unwrap();
        match reconstruct_axis(&s, case, cc, &tol) {
            Ok(a) => named = named.max(a.d.dist_up_to_sign(MVec3::E0)),
            Err(_) => named = f64::INFINITY,
        }
    }
    ok &= named <= 1e-4;
    Verdict::new(
        ok,
        format!(
            "six cases: max distance {:.2e}, max |d'| {:.2e} (tol 1e-4){}; helix and latitudes to (1,0,0): {named:.2e}",
            worst.0,
            worst.1,
            if failed.is_empty() { String::new() } else { format!(", failed {failed:?}") }
        ),
    )
}

fn c6_constancy() -> Verdict {
    let tol = Tolerances::default();
    let ch = |c: &CurveSpec| characterization_function(&darboux(c, 200), IsophoteCase::C2, &tol).unwrap();
    let helix = ch(&helix()).plus.values.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let lat = ch(&latitude(0.5)).plus.values.iter().map(|v| (v.abs() - 0.5f64.tanh()).abs()).fold(0.0, f64::max);
    let pert = ch(&perturbed()).plus.max_deviation;
    Verdict::new(
        helix <= 1e-6 && lat <= 1e-6 && pert > 1e-2,
        format!("helix |psi| {helix:.2e}, latitude ||psi| - tanh 0.5| {lat:.2e} (tol 1e-6); perturbed deviation {pert:.2e} (need > 1e-2)"),
    )
}

fn c7_gauss() -> Verdict {
    let mut worst = 0.0f64;
    for c in [latitude(0.5), helix()] {
        let s = darboux(&c, 200);
        let g = gauss_map_geodesic_curvature(&s).unwrap();
        for (gi, si) in g.iter().zip(&s) {
            worst = worst.max((gi.k_bar_g.abs() - phi_function(si).abs()).abs());
        }
    }
    Verdict::new(worst <= 1e-6, format!("max ||k_bar_g| - |Phi|| {worst:.2e} (tol 1e-6)"))
}

fn c8_geodesics() -> Verdict {
    let tol = Tolerances::default();
    let mut ok = true;
    let mut notes = Vec::new();
    for (name, c, d) in geodesics() {
        let r = theorem_report(&c, Some(d), 200, &tol, Exec::auto()).unwrap();
        for key in ["geodesic", "slant_equivalence", "frenet_axis"] {
            let check = r.check(key).unwrap();
            if check.status != Status::Pass {
                ok = false;
                notes.push(format!("{name}: {check}"));
            }
        }
        notes.push(format!("{name} axis gap {:.2e}", r.check("frenet_axis").unwrap().measured));
    }
    let r = theorem_report(&latitude(0.5), Some(MVec3::E0), 200, &tol, Exec::auto()).unwrap();
    let lat = r.check("geodesic").unwrap().status == Status::Fail && r.is_isophote();
    ok &= lat;
    notes.push(format!("latitude: geodesic fails, isophote passes = {lat}"));
    Verdict::new(ok, notes.join("; "))
}

fn c9_fit() -> Verdict {
    let tol = Tolerances::default();
    let mut worst = 0.0f64;
    let mut bad = Vec::new();
    let mut curves: Vec<(String, CurveSpec, IsophoteCase, f64)> =
        case_fixtures().into_iter().map(|(k, c, _, cc)| (k.to_string(), c, k, cc)).collect();
    curves.push(("C helix".into(), helix(), IsophoteCase::C2, 0.0));
    curves.push(("B latitude".into(), latitude(0.5), IsophoteCase::C2, -0.5f64.sinh()));
    for (name, c, case, cc) in curves {
        let s = darboux(&c, 200);
        let normals: Vec<MVec3> = s.iter().map(|x| x.normal).collect();
        match (fit_axis(&normals, &tol), reconstruct_axis(&s, case, cc, &tol)) {
            (Ok(f), Ok(a)) => worst = worst.max(f.d.dist_up_to_sign(a.d)),
            _ => bad.push(name),
        }
    }
    Verdict::new(
        worst <= 1e-4 && bad.is_empty(),
        format!("max distance {worst:.2e} (tol 1e-4) over 8 isophotes{}", if bad.is_empty() { String::new() } else { format!(", failed {bad:?}") }),
    )
}

fn c10_cli() -> Verdict {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_isophote")).args(args).current_dir(dir.join("tests/data")).output().unwrap()
    };
    let extract = ["extract", "--surface", "cylinder.srf", "--axis", "0,0,1", "--c", "0", "--grid", "256", "256"];
    let verify = ["verify", "--surface", "desitter.srf", "--curve", "latitude05.crv", "--axis", "1,0,0"];
    let conflict = ["extract", "--c", "0", "--angle", "0.5", "--kind", "cosh", "--surface", "cylinder.srf", "--axis", "0,0,1"];
    let report = ["report", "--curve", "latitude05.crv", "--axis", "1,0,0"];
    let mut ok = true;
    for args in [&extract[..], &report[..]] {
        let a = run(args).stdout;
        ok &= (0..3).all(|_| run(args).stdout == a);
    }
    let golden = |name: &str| std::fs::read(dir.join("tests/golden").join(name)).unwrap_or_default();
    let e = run(&extract);
    let v = run(&verify);
    let x = run(&conflict);
    let pinned = e.stdout == golden("extract_cylinder.csv")
        && e.status.code() == Some(0)
        && v.stdout == golden("verify_latitude.csv")
        && v.status.code() == Some(0)
        && x.stderr == golden("extract_conflict.stderr")
        && x.status.code() == Some(1);
    Verdict::new(ok && pinned, format!("repeated runs identical = {ok}; golden files match = {pinned}"))
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 10] = [
        ("algebra", c1_algebra),
        ("frames", c2_frames),
        ("curvature identities", c3_curvature),
        ("extraction", c4_extraction),
        ("axis roundtrip", c5_roundtrip),
        ("characterization constancy", c6_constancy),
        ("Gauss map", c7_gauss),
        ("geodesic equivalence", c8_geodesics),
        ("variance fit cross-check", c9_fit),
        ("CLI determinism", c10_cli),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let v = std::panic::catch_unwind(f).unwrap_or_else(|_| Verdict::new(false, "panicked".into()));
        let tag = if v.pass { "PASS" } else { "FAIL" };
        println!("{tag} {:>2} {name}: {} [{:.2}s]", i + 1, v.detail, start.elapsed().as_secs_f64());
        failures += usize::from(!v.pass);
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}
