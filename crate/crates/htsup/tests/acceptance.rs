//! End-to-end acceptance run through the `htsup` binary. Prints one
//! PASS/FAIL line per criterion and exits nonzero if any fails.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use serde_json::Value;

const PARETO15: &str = r#"{"lambda": 1, "jump": {"kind": "pareto", "alpha": 1.5, "x_min": 1}}"#;
const MM1: &str = r#"{"lambda": 1, "jump": {"kind": "exponential", "rate": 1}}"#;
const BM: &str = r#"{"sigma2": 1}"#;

struct Ctx {
    dir: tempfile::TempDir,
    /// Invocations of criteria 2–7 with their output files, replayed by criterion 9.
    replay: Vec<(Vec<String>, PathBuf)>,
}

impl Ctx {
    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn file(&self, name: &str, text: &str) -> String {
        let p = self.path(name);
        std::fs::write(&p, text).unwrap();
        p.to_str().unwrap().to_owned()
    }

    /// Runs with one worker, writes `--out <name>` and remembers the call.
    fn report(&mut self, args: &[&str], name: &str) -> Result<Value, String> {
        let out = self.path(name);
        let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        let mut full = args.clone();
        full.extend(["--workers".into(), "1".into(), "--out".into(), out.to_str().unwrap().into()]);
        htsup(&full)?;
        self.replay.push((args, out.clone()));
        read_json(&out)
    }
}

fn htsup<S: AsRef<std::ffi::OsStr>>(args: &[S]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_htsup")).args(args).output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr).trim()));
    }
    Ok(String::from_utf8(out.stdout).unwrap())
}

fn read_json(path: &Path) -> Result<Value, String> {
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    serde_json::from_str(&text).map_err(|e| e.to_string())
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap_or(f64::NAN)
}

fn rows(v: &Value) -> &[Value] {
    v["rows"].as_array().map(Vec::as_slice).unwrap_or(&[])
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Result<Outcome, String> {
    Ok(Outcome { pass, detail })
}

fn criterion1(_: &mut Ctx) -> Result<Outcome, String> {
    let xs: Vec<f64> = (1..=100).map(|i| 0.1 * i as f64).collect();
    let list = xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    let out = htsup(&["ml-cdf", "--alpha", "1", "--x", &list])?;
    let vals: Vec<f64> = out.lines().map(|l| l.parse().unwrap()).collect();
    let err = xs.iter().zip(&vals).map(|(x, v)| (v - (1.0 - (-x).exp())).abs()).fold(0.0, f64::max);
    let half: f64 = htsup(&["ml-cdf", "--alpha", "0.5", "--x", "1"])?.trim().parse().unwrap();
    let oracle = 1.0 - std::f64::consts::E * libm::erfc(1.0);
    let pass = vals.len() == 100 && err < 1e-12 && (half - 0.572416).abs() < 1e-6 && (half - oracle).abs() < 1e-6;
    outcome(pass, format!("max |F-(1-e^-x)| = {err:.1e}; F_0.5(1) = {half:.9} (erfc oracle {oracle:.9})"))
}

fn criterion2(ctx: &mut Ctx) -> Result<Outcome, String> {
    let mut worst: f64 = 0.0;
    for (i, alpha) in ["0.5", "0.75", "1"].iter().enumerate() {
        let seed = (20 + i).to_string();
        let r = ctx.report(&["lst", "--kind", "ml", "--alpha", alpha, "--s", "0.5,1,2", "--n", "1000000", "--seed", &seed], &format!("c2_{i}.json"))?;
        for row in rows(&r) {
            worst = worst.max(f(&row["z"]).abs());
        }
    }
    outcome(worst < 3.0, format!("max |z| over 9 (alpha, s) cells = {worst:.3}"))
}

fn criterion3(ctx: &mut Ctx) -> Result<Outcome, String> {
    let model = ctx.file("mm1.json", MM1);
    let r = ctx.report(&["lst", "--kind", "ladder", "--model", &model, "--a", "2", "--s", "1", "--n", "1000000", "--seed", "3"], "c3.json")?;
    let row = &rows(&r)[0];
    let exact = f(&row["exact"]);
    let z = f(&row["z"]);
    outcome(exact == 2.0 / 3.0 && z.abs() < 3.0, format!("pk_lst(1) = {exact:.17}; ladder mean {:.6}, z = {z:.3}", f(&row["mean"])))
}

fn criterion4(ctx: &mut Ctx) -> Result<Outcome, String> {
    let cfg = ctx.file(
        "c4_config.json",
        &format!(r#"{{"seed": 4, "model": {PARETO15}, "rho_list": [0.9, 0.99, 0.999], "n_samples": 1e5}}"#),
    );
    let r = ctx.report(&["sweep", "--config", &cfg], "c4.json")?;
    let rs = rows(&r);
    let ks: Vec<f64> = rs.iter().map(|r| f(&r["ks"])).collect();
    let residual = rs.iter().map(|r| f(&r["residual"]).abs()).fold(0.0, f64::max);
    let pass = ks.len() == 3
        && ks.windows(2).all(|w| w[1] < w[0])
        && ks[2] < 0.02
        && residual < 1e-10
        && rs.iter().all(|r| r["method"] == "ladder" && r["n"] == 100_000);
    outcome(pass, format!("KS to ML_0.5 {ks:.4?}; max |residual| {residual:.1e}"))
}

fn criterion5(ctx: &mut Ctx) -> Result<Outcome, String> {
    let model = ctx.file("bm.json", BM);
    let mut rel: f64 = 0.0;
    for a in [0.1, 0.01, 0.001] {
        let sol: Value = serde_json::from_str(&htsup(&["solve-delta", "--mode", "defna", "--model", &model, "--a", &a.to_string()])?)
            .map_err(|e| e.to_string())?;
        rel = rel.max((f(&sol["delta"]) / a - 1.0).abs());
    }
    let cfg = ctx.file("c5_config.json", &format!(r#"{{"seed": 5, "model": {BM}, "a_list": [0.01], "n_samples": 1e5}}"#));
    let r = ctx.report(&["sweep", "--config", &cfg], "c5.json")?;
    let row = &rows(&r)[0];
    let ks = f(&row["ks"]);
    let pass = rel < 1e-9 && ks < 0.03 && r["limit"]["kind"] == "exp" && f(&r["limit"]["rate"]) == 2.0 && row["n"] == 100_000;
    outcome(pass, format!("max |Δ(a)/a - 1| = {rel:.1e}; KS at a=0.01 vs Exp(2) = {ks:.4}"))
}

fn criterion6(ctx: &mut Ctx) -> Result<Outcome, String> {
    let cfg = ctx.file(
        "c6_config.json",
        &format!(r#"{{"seed": 6, "model": {MM1}, "rho_list": [0.9, 0.99], "n_samples": 1e5, "coupled_paths": 1e4}}"#),
    );
    let r = ctx.report(&["equivalence", "--config", &cfg], "c6.json")?;
    let rs = rows(&r);
    let ks: Vec<f64> = rs.iter().map(|r| f(&r["ks"])).collect();
    let violations: f64 = rs.iter().map(|r| f(&r["extra"]["dominance_violations"])).sum();
    let coupled = rs.iter().all(|r| f(&r["extra"]["coupled_paths"]) >= 1e4);
    let pass = ks.len() == 2 && ks[1] < ks[0] && ks[1] < 0.03 && violations == 0.0 && coupled;
    outcome(pass, format!("two-sample KS {ks:.4?}; dominance violations {violations} on 1e4 coupled paths per row"))
}

fn criterion7(ctx: &mut Ctx) -> Result<Outcome, String> {
    let mut max = Vec::new();
    let mut worst: f64 = 0.0;
    for (i, n) in ["1e6", "2e6"].iter().enumerate() {
        let cfg = ctx.file(
            &format!("c7_config_{i}.json"),
            &format!(r#"{{"seed": 7, "model": {PARETO15}, "t_grid": [1, 4, 16], "x_grid": [4, 8, 16], "n_samples": {n}}}"#),
        );
        let r = ctx.report(&["pruitt", "--config", &cfg], &format!("c7_{i}.json"))?;
        for c in r["cells"].as_array().ok_or("no cells")? {
            if c.get("flag").is_none() {
                worst = worst.max(f(&c["ratio"]));
            }
        }
        max.push(f(&r["max_ratio"]));
    }
    let change = (max[1] / max[0] - 1.0).abs();
    outcome(worst <= 10.0 && change <= 0.5, format!("max unflagged ratio {worst:.4}; max ratio n=1e6 {:.4}, n=2e6 {:.4} ({:+.2}%)", max[0], max[1], 100.0 * (max[1] / max[0] - 1.0)))
}

fn criterion8(ctx: &mut Ctx) -> Result<Outcome, String> {
    let gauss = ctx.file("c8_gauss.json", &format!(r#"{{"seed": 8, "model": {BM}, "a_list": [0.1, 0.01, 0.001]}}"#));
    let g = ctx.report(&["htip", "--config", &gauss], "c8_gauss_out.json")?;
    let dev = rows(&g).iter().map(|r| (f(&r["product"]) - 1.0).abs()).fold(0.0, f64::max);
    let pareto = ctx.file("c8_pareto.json", &format!(r#"{{"seed": 8, "model": {PARETO15}, "a_list": [0.1, 0.01, 0.001]}}"#));
    let p = ctx.report(&["htip", "--config", &pareto], "c8_pareto_out.json")?;
    let drift = f(&p["drift"]);
    let pass = g["family"] == "gaussian" && rows(&g).len() == 3 && dev <= 2.0 * f64::EPSILON && drift < 0.02;
    outcome(pass, format!("Gaussian max |dΔ|μ| - 1| = {dev:.1e}; Pareto drift at a=1e-3 = {drift:.1e}"))
}

fn criterion9(ctx: &mut Ctx) -> Result<Outcome, String> {
    let mut differing = Vec::new();
    let replay: Vec<(Vec<String>, PathBuf)> = ctx.replay.iter().filter(|(_, out)| !out.to_string_lossy().contains("c8_")).cloned().collect();
    for (args, out) in &replay {
        let again = out.with_extension("w4.json");
        let mut full = args.clone();
        full.extend(["--workers".into(), "4".into(), "--out".into(), again.to_str().unwrap().into()]);
        htsup(&full)?;
        let a = std::fs::read(out).map_err(|e| e.to_string())?;
        let b = std::fs::read(&again).map_err(|e| e.to_string())?;
        if a != b {
            differing.push(out.file_name().unwrap().to_string_lossy().into_owned());
        }
    }
    outcome(differing.is_empty(), format!("{} report files compared (workers 1 vs 4), differing: {differing:?}", replay.len()))
}

fn main() {
    let mut ctx = Ctx { dir: tempfile::tempdir().unwrap(), replay: Vec::new() };
    type Criterion = fn(&mut Ctx) -> Result<Outcome, String>;
    let criteria: [(&str, Option<f64>, Criterion); 9] = [
        ("Mittag-Leffler correctness", Some(1.0), criterion1),
        ("Mittag-Leffler transform identity", Some(30.0), criterion2),
        ("Pollaczek-Khinchine consistency", Some(60.0), criterion3),
        ("Pareto heavy-traffic limit", Some(600.0), criterion4),
        ("Gaussian centered normalization", Some(300.0), criterion5),
        ("walk/path equivalence", Some(600.0), criterion6),
        ("Pruitt boundedness", Some(900.0), criterion7),
        ("condition (I)", Some(60.0), criterion8),
        ("determinism across workers", None, criterion9),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run(&mut ctx);
        let secs = start.elapsed().as_secs_f64();
        let (pass, detail) = match result {
            Ok(o) => (o.pass, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        let in_time = budget.is_none_or(|b| secs < b);
        let pass = pass && in_time;
        if !pass {
            failed += 1;
        }
        let limit = budget.map(|b| format!(" / {b} s")).unwrap_or_default();
        println!("criterion {} {}: {} [{secs:.1} s{limit}] {detail}", i + 1, name, if pass { "PASS" } else { "FAIL" });
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
