use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use htsup::format::{self, emit, num, to_json, SolutionRow};
use htsup::harness::{self, LstTarget, Runner, Settings};
use htsup::{Error, ExperimentConfig, ModelSpec, Result};
use htsup_core::laws::{ml_cdf, LimitLaw};
use htsup_core::normalize::{solve_contraction, solve_defna, Route};
use htsup_core::simulate::{stable_sup_functional_sample, sup_on_horizon, GridConfig, LadderSampler, WalkMaxSampler};
use htsup_core::LevyModel;
use serde::Serialize;

/// Heavy-traffic limits of Lévy and random-walk suprema.
#[derive(Parser)]
#[command(name = "htsup", version)]
struct Cli {
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the mean, index and classification of a model.
    ModelInfo {
        #[arg(long)]
        model: PathBuf,
        /// Also evaluate the Lévy tail and V at this level.
        #[arg(long)]
        x: Option<f64>,
        /// Also evaluate r at this argument.
        #[arg(long)]
        s: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve a normalization equation for Δ.
    SolveDelta {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long, required_if_eq("mode", "contraction"))]
        rho: Option<f64>,
        #[arg(long, required_if_eq("mode", "defna"))]
        a: Option<f64>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the Mittag-Leffler distribution function, one line per point.
    MlCdf {
        #[arg(long)]
        alpha: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<f64>,
    },
    /// Draw suprema and write them as CSV.
    SampleSup(SampleArgs),
    /// Heavy-traffic sweep against the limit law.
    Sweep(ExperimentArgs),
    /// Walk maximum against path supremum.
    Equivalence(ExperimentArgs),
    /// Pruitt ratio table.
    Pruitt(ExperimentArgs),
    /// Condition (I) of the invariance principle.
    Htip(ExperimentArgs),
    /// Monte Carlo Laplace transform against its closed form.
    Lst(LstArgs),
    /// Validate a config and print it with all defaults filled in.
    Config {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Contraction,
    Defna,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum SampleMethod {
    Ladder,
    Rw,
    Grid,
    Functional,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long, value_enum)]
    method: SampleMethod,
    #[arg(long, required_if_eq_any([("method", "ladder"), ("method", "rw"), ("method", "grid")]))]
    model: Option<PathBuf>,
    /// Drain rate.
    #[arg(long, required_if_eq_any([("method", "ladder"), ("method", "rw"), ("method", "grid")]))]
    a: Option<f64>,
    #[arg(long, required_if_eq("method", "functional"))]
    alpha: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    beta: f64,
    #[arg(long, default_value_t = 10_000)]
    n: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = htsup_core::simulate::FUNCTIONAL_HORIZON)]
    horizon: f64,
    #[arg(long, default_value_t = htsup_core::simulate::FUNCTIONAL_STEP)]
    step: f64,
    #[arg(long, default_value_t = 1e-3)]
    eps: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long)]
    config: PathBuf,
    /// Overrides the model in the config.
    #[arg(long)]
    model: Option<PathBuf>,
    /// Overrides the seed in the config.
    #[arg(long)]
    seed: Option<u64>,
    /// JSON report.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Rows as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Record wall-clock seconds per row.
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum LstKind {
    Ml,
    Ladder,
}

#[derive(Args)]
struct LstArgs {
    #[arg(long, value_enum)]
    kind: LstKind,
    #[arg(long, required_if_eq("kind", "ml"))]
    alpha: Option<f64>,
    #[arg(long, required_if_eq("kind", "ladder"))]
    model: Option<PathBuf>,
    #[arg(long, required_if_eq("kind", "ladder"))]
    a: Option<f64>,
    #[arg(long, value_delimiter = ',', default_value = "0.5,1,2")]
    s: Vec<f64>,
    #[arg(long, default_value_t = 1_000_000)]
    n: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn load_model(path: &Path) -> Result<LevyModel> {
    ModelSpec::load(path)?.to_model()
}

#[derive(Serialize)]
struct ModelInfo {
    model: ModelSpec,
    mean: Option<f64>,
    domain_index: f64,
    route: &'static str,
    spectrally_positive: bool,
    spectrally_negative: bool,
    pure_compound_poisson: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    x: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    levy_tail: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    v: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    r: Option<f64>,
}

fn model_info(path: &Path, x: Option<f64>, s: Option<f64>) -> Result<String> {
    let m = load_model(path)?;
    let info = ModelInfo {
        model: (&m).into(),
        mean: m.mean().ok(),
        domain_index: m.domain_index(),
        route: match Route::for_model(&m) {
            Route::Contraction => "contraction",
            Route::Centered => "centered",
        },
        spectrally_positive: m.is_spectrally_positive(),
        spectrally_negative: m.is_spectrally_negative(),
        pure_compound_poisson: m.is_pure_compound_poisson(),
        x,
        levy_tail: x.map(|x| m.levy_tail(x)).transpose()?,
        v: x.map(|x| m.truncated_second_moment(x, false)).transpose()?,
        s,
        r: s.map(|s| m.cumulant_r(s)).transpose()?,
    };
    Ok(to_json(&info))
}

fn sample_sup(args: &SampleArgs, runner: &Runner) -> Result<String> {
    let n = args.n;
    let seed = args.seed;
    let tag = harness::tag::BATCH;
    if args.method == SampleMethod::Functional {
        let alpha = args.alpha.expect("required by clap");
        let values = runner.draw(seed, tag, 0, n, |rng| stable_sup_functional_sample(alpha, args.beta, rng, args.horizon, args.step))?;
        return Ok(format::values_csv(&values));
    }
    let model = load_model(args.model.as_deref().expect("required by clap"))?;
    let a = args.a.expect("required by clap");
    let samples = match args.method {
        SampleMethod::Ladder => {
            let ladder = LadderSampler::new(&model, a)?;
            runner.draw(seed, tag, 0, n, |rng| ladder.sample(rng))?
        }
        SampleMethod::Rw => {
            let walker = WalkMaxSampler::new(&model.with_drain(a), args.eps)?;
            runner.draw(seed, tag, 0, n, |rng| walker.sample(rng))?
        }
        SampleMethod::Grid => {
            let drained = model.with_drain(a);
            let cfg = GridConfig::new(args.horizon, args.step);
            runner.draw(seed, tag, 0, n, |rng| Ok(sup_on_horizon(&drained, &cfg, rng)?.sample))?
        }
        SampleMethod::Functional => unreachable!(),
    };
    Ok(format::samples_csv(&samples))
}

/// Config, model and seed of an experiment after command-line overrides.
fn experiment_inputs(args: &ExperimentArgs) -> Result<(ExperimentConfig, LevyModel, u64)> {
    let mut cfg = ExperimentConfig::load(&args.config)?;
    if let Some(path) = &args.model {
        cfg.model = Some(ModelSpec::load(path)?);
    }
    let model = cfg.model_spec()?.to_model()?;
    let seed = args.seed.unwrap_or(cfg.seed);
    Ok((cfg, model, seed))
}

/// The limit law, reading or filling the reference cache of the config.
fn experiment_limit(cfg: &ExperimentConfig, model: &LevyModel, seed: u64, s: &Settings, runner: &Runner) -> Result<LimitLaw> {
    let cache = cfg.reference_csv.as_deref();
    let cached = match cache {
        Some(p) if p.exists() => Some(format::read_values_csv(p)?),
        _ => None,
    };
    let fresh = cached.is_none();
    let law = harness::limit_law(model, runner, seed, s, cached)?;
    if let (Some(p), true, LimitLaw::EmpiricalReference { samples, .. }) = (cache, fresh, &law) {
        emit(Some(p), &format::values_csv(samples))?;
    }
    Ok(law)
}

fn convergence(args: &ExperimentArgs, runner: &Runner, equivalence: bool) -> Result<()> {
    let (cfg, model, seed) = experiment_inputs(args)?;
    let traffic = cfg.traffic()?;
    let mut s = Settings::from(&cfg);
    s.timing = args.timing;
    let limit = experiment_limit(&cfg, &model, seed, &s, runner)?;
    let report = if equivalence {
        harness::rw_levy_equivalence(&model, &traffic, &limit, runner, seed, &s)?
    } else {
        harness::sweep_heavy_traffic(&model, &traffic, &limit, runner, seed, &s)?
    };
    if let Some(csv) = &args.csv {
        emit(Some(csv), &report.to_csv())?;
    }
    emit(args.out.as_deref(), &to_json(&report))
}

fn pruitt(args: &ExperimentArgs, runner: &Runner) -> Result<()> {
    let (cfg, model, seed) = experiment_inputs(args)?;
    let report = harness::pruitt_check(&model, &cfg.t_grid, &cfg.x_grid, cfg.n_samples, seed, cfg.step_fraction, runner)?;
    emit(args.out.as_deref(), &to_json(&report))
}

fn htip(args: &ExperimentArgs) -> Result<()> {
    let (cfg, model, _) = experiment_inputs(args)?;
    let a_list = cfg.a_list.as_deref().ok_or_else(|| Error::Config("a_list: required for htip".into()))?;
    let report = harness::htip_for_model(&model, a_list, cfg.tol)?;
    emit(args.out.as_deref(), &to_json(&report))
}

fn lst(args: &LstArgs, runner: &Runner) -> Result<()> {
    let target = match args.kind {
        LstKind::Ml => LstTarget::MittagLeffler { alpha: args.alpha.expect("required by clap") },
        LstKind::Ladder => LstTarget::Ladder {
            model: load_model(args.model.as_deref().expect("required by clap"))?,
            a: args.a.expect("required by clap"),
        },
    };
    let report = harness::lst_check(&target, &args.s, args.n, args.seed, runner)?;
    emit(args.out.as_deref(), &to_json(&report))
}

fn run(cli: Cli) -> Result<()> {
    let runner = Runner::new(cli.workers)?;
    match cli.command {
        Command::ModelInfo { model, x, s, out } => emit(out.as_deref(), &model_info(&model, x, s)?),
        Command::SolveDelta { model, mode, rho, a, tol, out } => {
            let m = load_model(&model)?;
            let sol = match mode {
                Mode::Contraction => solve_contraction(&m, rho.expect("required by clap"), tol)?,
                Mode::Defna => solve_defna(&m.centered()?, a.expect("required by clap"), tol)?,
            };
            emit(out.as_deref(), &to_json(&SolutionRow::from(&sol)))
        }
        Command::MlCdf { alpha, x } => {
            let mut text = String::new();
            for x in x {
                text.push_str(&num(ml_cdf(alpha, x)?));
                text.push('\n');
            }
            emit(None, &text)
        }
        Command::SampleSup(args) => emit(args.out.as_deref(), &sample_sup(&args, &runner)?),
        Command::Sweep(args) => convergence(&args, &runner, false),
        Command::Equivalence(args) => convergence(&args, &runner, true),
        Command::Pruitt(args) => pruitt(&args, &runner),
        Command::Htip(args) => htip(&args),
        Command::Lst(args) => lst(&args, &runner),
        Command::Config { config } => emit(None, &ExperimentConfig::load(&config)?.normalized_json()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

