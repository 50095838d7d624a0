//! Experiments: heavy-traffic sweeps, the walk/path equivalence, the
//! Pruitt bound, condition (I) of the invariance principle and Laplace
//! transform checks.
//!
//! Draws are split into chunks of [`CHUNK`] samples. Chunk `c` of row `r`
//! always reads the stream `(seed, tag, r, c)` and chunks are merged in
//! order, so reports do not depend on the number of workers.

use std::collections::BTreeMap;
use std::time::Instant;

use htsup_core::laws::{ml_sample, select_limit_law, LimitLaw};
use htsup_core::normalize::{solve_contraction, solve_defna, NormalizationSolution, Route};
use htsup_core::rng::{stream, stream_id, StreamRng};
use htsup_core::simulate::{
    pk_lst, stable_sup_functional_sample, stopping_margin, sup_on_horizon, walk_and_path_sup, GridConfig,
    LadderSampler, StopRule, WalkMaxSampler,
};
use htsup_core::stats::ks_two_sample;
use htsup_core::{Error as CoreError, HeavyTrafficFamily, LevyModel, Result as CoreResult};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{ExperimentConfig, Traffic};
use crate::error::Result;
use crate::format::{num, LimitLawDoc};
use crate::model::ModelSpec;

/// Samples per random stream.
pub const CHUNK: usize = 4096;

/// Purpose tags that keep the streams of different experiments apart.
pub mod tag {
    pub const SUP: u16 = 1;
    pub const WALK: u16 = 2;
    pub const REFERENCE: u16 = 3;
    pub const COUPLED: u16 = 4;
    pub const PRUITT: u16 = 5;
    pub const LST: u16 = 6;
    pub const BATCH: u16 = 7;
}

/// A fixed-size worker pool.
pub struct Runner {
    pool: rayon::ThreadPool,
}

impl Runner {
    pub fn new(workers: usize) -> Result<Self> {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build()?;
        Ok(Runner { pool })
    }

    /// `n` draws of `f`, chunk `c` using stream `(seed, stream_id(tag, row, c))`.
    pub fn draw<T, F>(&self, seed: u64, tag: u16, row: u16, n: usize, f: F) -> CoreResult<Vec<T>>
    where
        T: Send,
        F: Fn(&mut StreamRng) -> CoreResult<T> + Sync,
    {
        let chunks = n.div_ceil(CHUNK);
        if chunks > u32::MAX as usize {
            return Err(CoreError::Domain("too many samples for the stream layout"));
        }
        let parts: Vec<CoreResult<Vec<T>>> = self.pool.install(|| {
            (0..chunks)
                .into_par_iter()
                .map(|c| {
                    let mut rng = stream(seed, stream_id(tag, row, c as u32));
                    let len = CHUNK.min(n - c * CHUNK);
                    (0..len).map(|_| f(&mut rng)).collect()
                })
                .collect()
        });
        let mut out = Vec::with_capacity(n);
        for part in parts {
            out.extend(part?);
        }
        Ok(out)
    }
}

/// Numerical settings shared by the experiments.
#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub n_samples: usize,
    pub c_horizon: f64,
    pub step_fraction: f64,
    pub tol: f64,
    pub eps: f64,
    pub brownian_bridge: bool,
    pub reference_samples: usize,
    pub reference_horizon: f64,
    pub reference_step: f64,
    pub coupled_paths: usize,
    /// Record wall-clock seconds per row; off by default so that reports
    /// are reproducible byte for byte.
    pub timing: bool,
}

impl From<&ExperimentConfig> for Settings {
    fn from(c: &ExperimentConfig) -> Self {
        Settings {
            n_samples: c.n_samples,
            c_horizon: c.c_horizon,
            step_fraction: c.step_fraction,
            tol: c.tol,
            eps: c.eps,
            brownian_bridge: c.brownian_bridge,
            reference_samples: c.reference_samples,
            reference_horizon: c.reference_horizon,
            reference_step: c.reference_step,
            coupled_paths: c.coupled_paths,
            timing: false,
        }
    }
}

fn route_name(route: Route) -> &'static str {
    match route {
        Route::Contraction => "contraction",
        Route::Centered => "centered",
    }
}

/// The model whose supremum is normalized on `route`: the input itself for
/// the contraction, the centered input otherwise.
fn route_model(model: &LevyModel, route: Route) -> CoreResult<LevyModel> {
    match route {
        Route::Contraction => Ok(*model),
        Route::Centered => model.centered(),
    }
}

/// The limit of `Δ · sup` for `model`, drawing an empirical reference
/// (or taking `cached`) when no closed form applies.
pub fn limit_law(
    model: &LevyModel,
    runner: &Runner,
    seed: u64,
    settings: &Settings,
    cached: Option<Vec<f64>>,
) -> CoreResult<LimitLaw> {
    let route = Route::for_model(model);
    let m = route_model(model, route)?;
    select_limit_law(&m, m.domain_index(), |alpha, beta| match cached {
        Some(v) => Ok(v),
        None => runner.draw(seed, tag::REFERENCE, 0, settings.reference_samples, |rng| {
            stable_sup_functional_sample(alpha, beta, rng, settings.reference_horizon, settings.reference_step)
        }),
    })
}

/// Everything needed to sample one row of a sweep.
struct RowPlan {
    drained: LevyModel,
    solution: NormalizationSolution,
    /// `1 / (Δ |E X^{(a)}_1|)`, the time the drift needs to cover the
    /// supremum scale; `n(a)` on the centered route.
    time_scale: f64,
    ladder: Option<LadderSampler>,
}

fn plan_row(model: &LevyModel, route: Route, traffic: &Traffic, param: f64, tol: f64) -> CoreResult<RowPlan> {
    match route {
        Route::Contraction => {
            let family = HeavyTrafficFamily::new(*model)?;
            let (rho, a) = match traffic {
                Traffic::Rho(_) => (param, family.drain_for_rho(param)?),
                Traffic::Drain(_) => (family.rho(param)?, param),
            };
            let solution = solve_contraction(model, rho, tol)?;
            let net = a - family.input_mean();
            Ok(RowPlan {
                drained: family.model_at(a),
                time_scale: 1.0 / (solution.delta * net),
                solution,
                ladder: LadderSampler::new(model, a).ok(),
            })
        }
        Route::Centered => {
            let centered = model.centered()?;
            let a = match traffic {
                Traffic::Drain(_) => param,
                Traffic::Rho(_) => {
                    let mu = model.mean()?;
                    if !(mu > 0.0) {
                        return Err(CoreError::Domain("a traffic intensity needs a positive input mean"));
                    }
                    mu / param - mu
                }
            };
            let solution = solve_defna(&centered, a, tol)?;
            Ok(RowPlan {
                drained: centered.with_drain(a),
                time_scale: 1.0 / (solution.delta * a),
                solution,
                ladder: if centered.is_pure_compound_poisson() { LadderSampler::new(&centered, a).ok() } else { None },
            })
        }
    }
}

/// Scaled suprema of one row: at the horizon `T = c · time_scale` and, for
/// truncated methods, at `2T` on the same paths.
struct SupDraws {
    method: &'static str,
    at_horizon: Vec<f64>,
    doubled: Option<Vec<f64>>,
    horizon: Option<f64>,
}

fn sup_draws(runner: &Runner, seed: u64, row: u16, plan: &RowPlan, s: &Settings) -> CoreResult<SupDraws> {
    let delta = plan.solution.delta;
    if let Some(ladder) = &plan.ladder {
        let at_horizon = runner.draw(seed, tag::SUP, row, s.n_samples, |rng| Ok(delta * ladder.sample(rng)?.value))?;
        return Ok(SupDraws { method: "ladder", at_horizon, doubled: None, horizon: None });
    }
    let horizon = s.c_horizon * plan.time_scale;
    let mut cfg = GridConfig::new(2.0 * horizon, s.step_fraction * plan.time_scale);
    cfg.checkpoints = vec![horizon];
    cfg.brownian_bridge = s.brownian_bridge;
    // Under infinite variance the margin is of order eps^(-1/(alpha-1)), so the
    // doubled horizon is the only cutoff.
    if plan.drained.domain_index() >= 2.0 {
        cfg.stop = Some(StopRule { kappa: stopping_margin(&plan.drained, s.eps)?, eps: s.eps });
    }
    let pairs = runner.draw(seed, tag::SUP, row, s.n_samples, |rng| {
        let out = sup_on_horizon(&plan.drained, &cfg, rng)?;
        Ok((delta * out.at_checkpoints[0], delta * out.sample.value))
    })?;
    let (at_horizon, doubled) = pairs.into_iter().unzip();
    Ok(SupDraws { method: "grid", at_horizon, doubled: Some(doubled), horizon: Some(horizon) })
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub param: f64,
    pub delta: f64,
    pub n: usize,
    pub ks: f64,
    /// Two-sample KS between the draws at `T` and at `2T`; zero for exact methods.
    pub drift: f64,
    pub seconds: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub time_scale: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub horizon: Option<f64>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub extra: BTreeMap<&'static str, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl ReportRow {
    fn failed(param: f64, e: &CoreError) -> Self {
        ReportRow {
            param,
            delta: f64::NAN,
            n: 0,
            ks: f64::NAN,
            drift: f64::NAN,
            seconds: 0.0,
            method: None,
            residual: None,
            time_scale: None,
            horizon: None,
            extra: BTreeMap::new(),
            error: Some(e.to_string()),
        }
    }

    pub fn is_failed(&self) -> bool {
        self.error.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub experiment: &'static str,
    pub model: ModelSpec,
    pub route: &'static str,
    /// `rho` or `a`.
    pub param_kind: &'static str,
    pub limit: LimitLawDoc,
    pub seed: u64,
    pub n_samples: usize,
    pub rows: Vec<ReportRow>,
}

pub const REPORT_CSV_HEADER: &str = "param,delta,n,ks,drift,seconds";

impl ConvergenceReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(REPORT_CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!("{},{},{},{},{},{}\n", num(r.param), num(r.delta), r.n, num(r.ks), num(r.drift), num(r.seconds)));
        }
        out
    }
}

fn param_kind(traffic: &Traffic) -> (&'static str, &[f64]) {
    match traffic {
        Traffic::Rho(v) => ("rho", v),
        Traffic::Drain(v) => ("a", v),
    }
}

fn run_rows<F>(traffic: &Traffic, timing: bool, mut row: F) -> CoreResult<Vec<ReportRow>>
where
    F: FnMut(u16, f64) -> CoreResult<ReportRow>,
{
    let (_, params) = param_kind(traffic);
    if params.len() > usize::from(u16::MAX) {
        return Err(CoreError::Domain("too many rows"));
    }
    let mut rows = Vec::with_capacity(params.len());
    for (i, &p) in params.iter().enumerate() {
        let start = Instant::now();
        let mut r = row(i as u16, p).unwrap_or_else(|e| ReportRow::failed(p, &e));
        if timing && !r.is_failed() {
            r.seconds = start.elapsed().as_secs_f64();
        }
        eprintln!("{}: param {} {}", i, num(p), r.error.as_deref().unwrap_or("ok"));
        rows.push(r);
    }
    Ok(rows)
}

/// `Δ · sup_t X^{(a)}_t` against its limit along `traffic`. Rows whose
/// solver or sampler fails are recorded with the error and skipped.
pub fn sweep_heavy_traffic(
    model: &LevyModel,
    traffic: &Traffic,
    limit: &LimitLaw,
    runner: &Runner,
    seed: u64,
    s: &Settings,
) -> CoreResult<ConvergenceReport> {
    let route = Route::for_model(model);
    let rows = run_rows(traffic, s.timing, |row, param| {
        let plan = plan_row(model, route, traffic, param, s.tol)?;
        let draws = sup_draws(runner, seed, row, &plan, s)?;
        let drift = match &draws.doubled {
            Some(d) => ks_two_sample(&sorted(draws.at_horizon.clone()), &sorted(d.clone()))?,
            None => 0.0,
        };
        Ok(ReportRow {
            param,
            delta: plan.solution.delta,
            n: draws.at_horizon.len(),
            ks: limit.ks(&sorted(draws.at_horizon))?,
            drift,
            seconds: 0.0,
            method: Some(draws.method),
            residual: Some(plan.solution.residual),
            time_scale: Some(plan.time_scale),
            horizon: draws.horizon,
            extra: BTreeMap::new(),
            error: None,
        })
    })?;
    Ok(ConvergenceReport {
        experiment: "sweep",
        model: model.into(),
        route: route_name(route),
        param_kind: param_kind(traffic).0,
        limit: limit.into(),
        seed,
        n_samples: s.n_samples,
        rows,
    })
}

/// The unit-step walk maximum and the path supremum of `X^{(a)}`, both
/// scaled by `Δ(a)`. `ks` is their two-sample distance; `extra` carries
/// each side's distance to the limit and, for compound-Poisson input, a
/// count of coupled paths whose supremum fell below the walk maximum.
pub fn rw_levy_equivalence(
    model: &LevyModel,
    traffic: &Traffic,
    limit: &LimitLaw,
    runner: &Runner,
    seed: u64,
    s: &Settings,
) -> CoreResult<ConvergenceReport> {
    let route = Route::for_model(model);
    let rows = run_rows(traffic, s.timing, |row, param| {
        let plan = plan_row(model, route, traffic, param, s.tol)?;
        let delta = plan.solution.delta;
        let sup = sup_draws(runner, seed, row, &plan, s)?;
        let drift = match &sup.doubled {
            Some(d) => ks_two_sample(&sorted(sup.at_horizon.clone()), &sorted(d.clone()))?,
            None => 0.0,
        };
        let walker = WalkMaxSampler::new(&plan.drained, s.eps)?;
        let walk = sorted(runner.draw(seed, tag::WALK, row, s.n_samples, |rng| Ok(delta * walker.sample(rng)?.value))?);
        let sup_sorted = sorted(sup.at_horizon);

        let mut extra = BTreeMap::new();
        extra.insert("ks_walk", limit.ks(&walk)?);
        extra.insert("ks_sup", limit.ks(&sup_sorted)?);
        extra.insert("walk_kappa", walker.kappa());
        if plan.drained.is_pure_compound_poisson() && s.coupled_paths > 0 {
            let horizon = plan.time_scale;
            let pairs = runner.draw(seed, tag::COUPLED, row, s.coupled_paths, |rng| walk_and_path_sup(&plan.drained, horizon, rng))?;
            let violations = pairs.iter().filter(|(walk, path)| path < walk).count();
            extra.insert("coupled_paths", pairs.len() as f64);
            extra.insert("coupled_horizon", horizon);
            extra.insert("dominance_violations", violations as f64);
        }
        Ok(ReportRow {
            param,
            delta,
            n: walk.len(),
            ks: ks_two_sample(&walk, &sup_sorted)?,
            drift,
            seconds: 0.0,
            method: Some(sup.method),
            residual: Some(plan.solution.residual),
            time_scale: Some(plan.time_scale),
            horizon: sup.horizon,
            extra,
            error: None,
        })
    })?;
    Ok(ConvergenceReport {
        experiment: "equivalence",
        model: model.into(),
        route: route_name(route),
        param_kind: param_kind(traffic).0,
        limit: limit.into(),
        seed,
        n_samples: s.n_samples,
        rows,
    })
}

/// Cells with fewer hits are flagged rather than trusted.
pub const MIN_HITS: usize = 20;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PruittCell {
    pub t: f64,
    pub x: f64,
    pub hits: usize,
    pub p_hat: f64,
    pub v: f64,
    /// `P̂(sup_{s≤t} X_s ≥ x) · x² / (t V(x))`.
    pub ratio: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flag: Option<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PruittReport {
    pub experiment: &'static str,
    pub model: ModelSpec,
    pub seed: u64,
    pub n_samples: usize,
    pub cells: Vec<PruittCell>,
    /// Largest unflagged ratio.
    pub max_ratio: Option<f64>,
    /// Largest factor by which an unflagged ratio grows between
    /// consecutive times at fixed `x`.
    pub t_growth: Option<f64>,
    pub flagged: usize,
}

/// Monte Carlo table of the Pruitt ratio for the centered model. All
/// cells share paths: one path is simulated to the largest `t` and its
/// running maximum read at every grid time.
pub fn pruitt_check(
    model: &LevyModel,
    t_grid: &[f64],
    x_grid: &[f64],
    n: usize,
    seed: u64,
    step_fraction: f64,
    runner: &Runner,
) -> CoreResult<PruittReport> {
    let centered = model.centered()?;
    let mut ts = t_grid.to_vec();
    ts.sort_by(f64::total_cmp);
    let mut cells = Vec::with_capacity(t_grid.len() * x_grid.len());
    if !ts.is_empty() && !x_grid.is_empty() {
        if ts[0] <= 0.0 || x_grid.iter().any(|&x| !(x > 0.0)) {
            return Err(CoreError::Domain("Pruitt grids must be positive"));
        }
        let t_max = ts[ts.len() - 1];
        let mut cfg = GridConfig::new(t_max, step_fraction * t_max);
        cfg.checkpoints = ts.clone();
        let maxima = runner.draw(seed, tag::PRUITT, 0, n, |rng| Ok(sup_on_horizon(&centered, &cfg, rng)?.at_checkpoints))?;
        for (i, &t) in ts.iter().enumerate() {
            for &x in x_grid {
                let hits = maxima.iter().filter(|m| m[i] >= x).count();
                let p_hat = hits as f64 / n as f64;
                let v = centered.truncated_second_moment(x, true)?;
                cells.push(PruittCell {
                    t,
                    x,
                    hits,
                    p_hat,
                    v,
                    ratio: p_hat * x * x / (t * v),
                    flag: (hits < MIN_HITS).then_some("InsufficientHits"),
                });
            }
        }
    }
    let ok = |c: &&PruittCell| c.flag.is_none() && c.ratio.is_finite();
    let max_ratio = cells.iter().filter(ok).map(|c| c.ratio).reduce(f64::max);
    let mut t_growth: Option<f64> = None;
    for w in cells.windows(x_grid.len() + 1).filter(|_| !x_grid.is_empty()) {
        let (early, late) = (&w[0], &w[x_grid.len()]);
        if ok(&early) && ok(&late) && early.ratio > 0.0 {
            let g = late.ratio / early.ratio;
            t_growth = Some(t_growth.map_or(g, |m| m.max(g)));
        }
    }
    Ok(PruittReport {
        experiment: "pruitt",
        model: model.into(),
        seed,
        n_samples: n,
        flagged: cells.iter().filter(|c| c.flag.is_some()).count(),
        cells,
        max_ratio,
        t_growth,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HtipRow {
    pub a: f64,
    pub d: f64,
    pub delta: f64,
    pub mu: f64,
    /// `d(a) Δ(a) |μ^{(a)}|`.
    pub product: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HtipReport {
    pub experiment: &'static str,
    pub family: &'static str,
    pub model: ModelSpec,
    pub rows: Vec<HtipRow>,
    /// Product in the last row.
    pub beta_hat: Option<f64>,
    /// `|last - second last| / last`.
    pub drift: Option<f64>,
}

/// Evaluates condition (I) on `a_list`.
pub fn htip_condition_check<D, S, M>(a_list: &[f64], d_fn: D, delta_fn: S, mu_fn: M) -> CoreResult<(Vec<HtipRow>, Option<f64>, Option<f64>)>
where
    D: Fn(f64) -> CoreResult<f64>,
    S: Fn(f64) -> CoreResult<f64>,
    M: Fn(f64) -> CoreResult<f64>,
{
    let mut rows = Vec::with_capacity(a_list.len());
    for &a in a_list {
        let (d, delta, mu) = (d_fn(a)?, delta_fn(a)?, mu_fn(a)?);
        rows.push(HtipRow { a, d, delta, mu, product: d * delta * mu.abs() });
    }
    let beta_hat = rows.last().map(|r| r.product);
    let drift = match rows.as_slice() {
        [.., prev, last] => Some((last.product - prev.product).abs() / last.product),
        _ => None,
    };
    Ok((rows, beta_hat, drift))
}

/// Condition (I) for `model`: the closed form `d = σ²/a²`, `Δ = a/σ²` for
/// Brownian input, the centered normalization `d = n(a)`, `Δ = 1/d(n(a))`
/// otherwise. `μ^{(a)} = -a` in both.
pub fn htip_for_model(model: &LevyModel, a_list: &[f64], tol: f64) -> CoreResult<HtipReport> {
    let mu = |a: f64| Ok(-a);
    let (family, (rows, beta_hat, drift)) = if model.is_gaussian_only() {
        let v = model.sigma2;
        ("gaussian", htip_condition_check(a_list, |a| Ok(v / (a * a)), |a| Ok(a / v), mu)?)
    } else {
        let centered = model.centered()?;
        let solve = |a: f64| solve_defna(&centered, a, tol);
        let n_of = |a: f64| solve(a)?.time_scale.ok_or(CoreError::Unsupported("no time scale"));
        ("defna", htip_condition_check(a_list, n_of, |a| Ok(solve(a)?.delta), mu)?)
    };
    Ok(HtipReport { experiment: "htip", family, model: model.into(), rows, beta_hat, drift })
}

/// Law whose Laplace transform is checked.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LstTarget {
    MittagLeffler { alpha: f64 },
    /// Supremum of `X_t - a t` via ladder heights.
    Ladder { model: LevyModel, a: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LstRow {
    pub s: f64,
    pub mean: f64,
    pub se: f64,
    pub exact: f64,
    /// `(mean - exact) / se`.
    pub z: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LstReport {
    pub experiment: &'static str,
    pub target: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    pub seed: u64,
    pub n_samples: usize,
    pub rows: Vec<LstRow>,
}

/// Monte Carlo `E e^{-sX}` against the closed form at every `s`.
pub fn lst_check(target: &LstTarget, s_list: &[f64], n: usize, seed: u64, runner: &Runner) -> CoreResult<LstReport> {
    if n < 2 {
        return Err(CoreError::Domain("a standard error needs at least two draws"));
    }
    if s_list.iter().any(|&s| !(s > 0.0 && s.is_finite())) {
        return Err(CoreError::Domain("transform arguments must be positive"));
    }
    let draws = match target {
        LstTarget::MittagLeffler { alpha } => runner.draw(seed, tag::LST, 0, n, |rng| ml_sample(*alpha, rng))?,
        LstTarget::Ladder { model, a } => {
            let ladder = LadderSampler::new(model, *a)?;
            runner.draw(seed, tag::LST, 0, n, |rng| Ok(ladder.sample(rng)?.value))?
        }
    };
    let mut rows = Vec::with_capacity(s_list.len());
    for &s in s_list {
        let exact = match target {
            LstTarget::MittagLeffler { alpha } => 1.0 / (1.0 + s.powf(*alpha)),
            LstTarget::Ladder { model, a } => pk_lst(model, *a, s)?,
        };
        let mean = draws.iter().map(|x| (-s * x).exp()).sum::<f64>() / n as f64;
        let var = draws.iter().map(|x| ((-s * x).exp() - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        let se = (var / n as f64).sqrt();
        rows.push(LstRow { s, mean, se, exact, z: (mean - exact) / se });
    }
    let (name, alpha, model, a) = match target {
        LstTarget::MittagLeffler { alpha } => ("ml", Some(*alpha), None, None),
        LstTarget::Ladder { model, a } => ("ladder", None, Some(model.into()), Some(*a)),
    };
    Ok(LstReport { experiment: "lst", target: name, alpha, model, a, seed, n_samples: n, rows })
}
