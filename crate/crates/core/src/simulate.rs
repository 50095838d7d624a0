//! Samplers for suprema of Lévy processes with negative drift.
//!
//! * [`LadderSampler`] draws the all-time supremum of spectrally positive
//!   compound-Poisson input exactly, as a geometric sum of ladder heights.
//! * [`WalkMaxSampler`] draws the maximum of the embedded unit-step walk,
//!   stopped once the walk sits `κ` below its running maximum.
//! * [`sup_on_horizon`] draws the supremum over `[0, T]`: exactly for
//!   compound-Poisson paths, on a time grid otherwise.

use alloc::vec::Vec;

use rand::Rng;
use rand_distr::{Distribution, Exp1, Poisson, StandardNormal};

use crate::error::{Error, Result};
use crate::laws::StableGenerator;
use crate::levy::{JumpLaw, LevyModel, StablePart};
use crate::rng::{open01, stream};
use crate::stats::EmpiricalDistribution;

/// Default horizon of [`stable_sup_functional_sample`].
pub const FUNCTIONAL_HORIZON: f64 = 64.0;
/// Default grid step of [`stable_sup_functional_sample`].
pub const FUNCTIONAL_STEP: f64 = 1.0 / 256.0;
/// Step budget of [`WalkMaxSampler`] unless overridden.
pub const DEFAULT_MAX_STEPS: u64 = 1 << 34;

const CALIBRATION_SEED: u64 = 0x6b61_7070_61;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Ladder,
    RwTruncated,
    Grid,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::Ladder => "ladder",
            Method::RwTruncated => "rw_truncated",
            Method::Grid => "grid",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Method> {
        match tag {
            "ladder" => Some(Method::Ladder),
            "rw_truncated" => Some(Method::RwTruncated),
            "grid" => Some(Method::Grid),
            _ => None,
        }
    }
}

/// One draw of a supremum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupSample {
    pub value: f64,
    pub method: Method,
    /// Time simulated, when the draw was truncated.
    pub horizon: Option<f64>,
    /// Bound on the probability that truncation changed the value.
    pub error_bound: f64,
}

/// `E exp(-s sup_t (X_t - a t)) = s (a - μ) / (s (a - μ) + r(s) + σ² s² / 2)`.
pub fn pk_lst(model: &LevyModel, a: f64, s: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::Domain("transform argument must be positive"));
    }
    if model.stable.is_some() {
        return Err(Error::Unsupported("transform needs compound-Poisson or Brownian input"));
    }
    let mu = model.mean()?;
    if !(a > mu) {
        return Err(Error::UnstableSystem { rho: mu / a });
    }
    let lin = s * (a - mu);
    Ok(lin / (lin + model.cumulant_r(s)? + 0.5 * model.sigma2 * s * s))
}

/// Exact sampler of `sup_t (X_t - a t)` for compound-Poisson input:
/// a geometric(ρ) number of integrated-tail ladder heights.
#[derive(Debug, Clone, Copy)]
pub struct LadderSampler {
    jump: JumpLaw,
    rho: f64,
    log_rho: f64,
}

impl LadderSampler {
    pub fn new(model: &LevyModel, a: f64) -> Result<Self> {
        model.validate()?;
        let jump = match model.jump {
            Some(j) if model.is_pure_compound_poisson() => j,
            _ => return Err(Error::Unsupported("ladder sampler needs pure compound-Poisson input")),
        };
        let mu = model.mean()?;
        if !(a > mu) {
            return Err(Error::UnstableSystem { rho: mu / a });
        }
        let rho = model.jump_intensity * jump.mean()? / (a - model.drift);
        Ok(LadderSampler { jump, rho, log_rho: libm::log(rho) })
    }

    /// Probability of at least one ladder epoch.
    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<SupSample> {
        let k = libm::floor(libm::log(open01(rng)) / self.log_rho) as u64;
        let mut value = 0.0;
        for _ in 0..k {
            value += self.jump.sample_integrated_tail(rng)?;
        }
        Ok(SupSample { value, method: Method::Ladder, horizon: None, error_bound: 0.0 })
    }
}

/// One exact draw of `sup_t (X_t - a t)`.
pub fn mg1_supremum_exact<R: Rng + ?Sized>(model: &LevyModel, a: f64, rng: &mut R) -> Result<SupSample> {
    LadderSampler::new(model, a)?.sample(rng)
}

/// Draws `X_{t+dt} - X_t`.
#[derive(Debug, Clone)]
struct IncrementSampler {
    drift: f64,
    sd: f64,
    jumps: Option<(Poisson<f64>, JumpLaw)>,
    stable: Option<StableGenerator>,
}

impl IncrementSampler {
    fn new(model: &LevyModel, dt: f64) -> Result<Self> {
        let jumps = match model.jump {
            Some(j) if model.has_jumps() => Some((
                Poisson::new(model.jump_intensity * dt).map_err(|_| Error::Domain("jump rate times step is not usable"))?,
                j,
            )),
            _ => None,
        };
        let stable = match model.stable {
            Some(StablePart { alpha, beta, scale }) => {
                let step_scale = if alpha == 1.0 { scale * dt } else { scale * libm::pow(dt, 1.0 / alpha) };
                Some(StableGenerator::new(alpha, beta, step_scale)?)
            }
            None => None,
        };
        Ok(IncrementSampler {
            drift: model.drift * dt,
            sd: libm::sqrt(model.sigma2 * dt),
            jumps,
            stable,
        })
    }

    #[inline]
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let mut x = self.drift;
        if self.sd > 0.0 {
            let z: f64 = StandardNormal.sample(rng);
            x += self.sd * z;
        }
        if let Some((poisson, jump)) = &self.jumps {
            let n = poisson.sample(rng) as u64;
            for _ in 0..n {
                x += jump.sample(rng);
            }
        }
        if let Some(g) = &self.stable {
            x += g.sample(rng);
        }
        x
    }
}

/// Variance rate of the continuous Gaussian part, when it is the only part.
fn brownian_variance(model: &LevyModel) -> Option<f64> {
    if model.has_jumps() {
        return None;
    }
    match model.stable {
        None => Some(model.sigma2),
        Some(s) if s.alpha == 2.0 => Some(model.sigma2 + 2.0 * s.scale * s.scale),
        Some(_) => None,
    }
}

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain("error budget must lie in (0, 1)"))
    }
}

/// Margin `κ` with `P(sup_t X_t > κ) <= eps` for a process with negative mean.
///
/// Closed forms cover Brownian motion and exponential jumps; Pareto jumps
/// use a Monte Carlo quantile of the exact ladder law; anything else is
/// calibrated by doubling `κ` until the walk-maximum quantile settles.
pub fn stopping_margin(model: &LevyModel, eps: f64) -> Result<f64> {
    check_eps(eps)?;
    model.validate()?;
    let m = model.mean()?;
    if !(m < 0.0) {
        return Err(Error::UnstableSystem { rho: f64::INFINITY });
    }
    if let Some(v) = brownian_variance(model) {
        return Ok(v * libm::log(1.0 / eps) / (2.0 * -m));
    }
    if model.is_pure_compound_poisson() {
        let ladder = LadderSampler::new(model, 0.0)?;
        if let Some(JumpLaw::Exponential { rate }) = model.jump {
            let decay = rate - model.jump_intensity / -model.drift;
            return Ok((libm::log(ladder.rho / eps) / decay).max(0.0));
        }
        let n = libm::ceil(100.0 / eps).clamp(1e4, 2e6) as usize;
        let mut rng = stream(CALIBRATION_SEED, 0);
        let mut draws = Vec::with_capacity(n);
        for _ in 0..n {
            draws.push(ladder.sample(&mut rng)?.value);
        }
        return Ok(EmpiricalDistribution::new(draws)?.quantile(1.0 - eps));
    }
    calibrate_by_doubling(model, eps)
}

fn calibrate_by_doubling(model: &LevyModel, eps: f64) -> Result<f64> {
    let n = libm::ceil(20.0 / eps).clamp(1e3, 2e5) as usize;
    let spread = libm::sqrt(model.truncated_second_moment(1.0, true)?).max(1e-12);
    let mut kappa = spread.max(-model.mean()?);
    let mut prev: Option<f64> = None;
    for round in 0..40u32 {
        let sampler = WalkMaxSampler::with_kappa(model, kappa, eps)?;
        let mut rng = stream(CALIBRATION_SEED, 1 + u64::from(round));
        let mut draws = Vec::with_capacity(n);
        for _ in 0..n {
            draws.push(sampler.sample(&mut rng)?.value);
        }
        let q = EmpiricalDistribution::new(draws)?.quantile(1.0 - eps);
        if let Some(p) = prev {
            if q <= p * 1.01 && q <= kappa {
                return Ok(q);
            }
        }
        prev = Some(q);
        kappa *= 2.0;
    }
    Err(Error::NoConvergence { residual: kappa })
}

/// Maximum of `S_n = X_n` for unit steps, stopped at the first `n` with
/// `S_n <= max_{k<=n} S_k - κ`.
#[derive(Debug, Clone)]
pub struct WalkMaxSampler {
    model: LevyModel,
    kappa: f64,
    eps: f64,
    max_steps: u64,
    increments: IncrementSampler,
}

impl WalkMaxSampler {
    /// `model` is the increment process (already drained); `κ` is taken
    /// from [`stopping_margin`].
    pub fn new(model: &LevyModel, eps: f64) -> Result<Self> {
        let kappa = stopping_margin(model, eps)?;
        Self::with_kappa(model, kappa, eps)
    }

    pub fn with_kappa(model: &LevyModel, kappa: f64, eps: f64) -> Result<Self> {
        check_eps(eps)?;
        model.validate()?;
        if !(model.mean()? < 0.0) {
            return Err(Error::UnstableSystem { rho: f64::INFINITY });
        }
        if !(kappa >= 0.0 && kappa.is_finite()) {
            return Err(Error::Domain("stopping margin must be finite and nonnegative"));
        }
        Ok(WalkMaxSampler {
            model: *model,
            kappa,
            eps,
            max_steps: DEFAULT_MAX_STEPS,
            increments: IncrementSampler::new(model, 1.0)?,
        })
    }

    pub fn with_max_steps(mut self, max_steps: u64) -> Self {
        self.max_steps = max_steps;
        self
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<SupSample> {
        let (value, steps) = if self.model.is_pure_compound_poisson() {
            self.event_walk(rng)?
        } else {
            self.step_walk(rng)?
        };
        Ok(SupSample {
            value,
            method: Method::RwTruncated,
            horizon: Some(steps as f64),
            error_bound: self.eps,
        })
    }

    fn step_walk<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<(f64, u64)> {
        let (mut s, mut m) = (0.0f64, 0.0f64);
        let mut n = 0u64;
        loop {
            if n == self.max_steps {
                return Err(Error::HorizonExceeded { steps: n });
            }
            n += 1;
            s += self.increments.sample(rng);
            if s > m {
                m = s;
            } else if s <= m - self.kappa {
                return Ok((m, n));
            }
        }
    }

    /// Between jumps the path falls linearly, so on each inter-event
    /// interval only the first and last integer times matter.
    fn event_walk<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<(f64, u64)> {
        let model = &self.model;
        let jump = model.jump.ok_or(Error::Unsupported("no jump law"))?;
        let (c, inv_lambda) = (model.drift, 1.0 / model.jump_intensity);
        let (mut t, mut level, mut m) = (0.0f64, 0.0f64, 0.0f64);
        // First integer time not yet visited.
        let mut first = 0u64;
        loop {
            let e: f64 = Exp1.sample(rng);
            let next = t + e * inv_lambda;
            // Largest integer strictly below `next`.
            let whole = next as u64;
            let last = if whole as f64 == next { whole.wrapping_sub(1) } else { whole };
            if first <= last {
                let v_first = level + c * (first as f64 - t);
                m = m.max(v_first);
                let floor = m - self.kappa;
                if level + c * (last as f64 - t) <= floor {
                    let k = libm::ceil((v_first - floor) / -c).max(0.0) as u64;
                    return Ok((m, (first + k).min(last)));
                }
                if last >= self.max_steps {
                    return Err(Error::HorizonExceeded { steps: self.max_steps });
                }
                first = last + 1;
            }
            level += c * (next - t) + jump.sample(rng);
            t = next;
        }
    }
}

/// One draw of the truncated walk maximum.
pub fn rw_supremum_sample<R: Rng + ?Sized>(increment_model: &LevyModel, rng: &mut R, eps: f64) -> Result<SupSample> {
    WalkMaxSampler::new(increment_model, eps)?.sample(rng)
}

/// Early-stopping rule for horizon sampling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StopRule {
    pub kappa: f64,
    pub eps: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridConfig {
    pub horizon: f64,
    pub step: f64,
    /// Stop once the path is `κ` below its running maximum.
    pub stop: Option<StopRule>,
    /// Times at which the running maximum is also reported.
    pub checkpoints: Vec<f64>,
    /// Replace each grid interval by the exact maximum of the Brownian
    /// bridge through its endpoints (purely Gaussian models only).
    pub brownian_bridge: bool,
}

impl GridConfig {
    pub fn new(horizon: f64, step: f64) -> Self {
        GridConfig { horizon, step, stop: None, checkpoints: Vec::new(), brownian_bridge: false }
    }

    fn validate(&self) -> Result<()> {
        if !(self.horizon > 0.0 && self.horizon.is_finite()) {
            return Err(Error::Domain("horizon must be positive"));
        }
        if !(self.step > 0.0) {
            return Err(Error::Domain("grid step must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HorizonOutcome {
    pub sample: SupSample,
    /// Running maximum at each configured checkpoint.
    pub at_checkpoints: Vec<f64>,
}

/// Supremum of `X` over `[0, T]`, where `model` already includes the drain.
///
/// Pure compound-Poisson paths are simulated event by event and the
/// supremum is exact; other models use the maximum over `{0, h, 2h, …, T}`.
pub fn sup_on_horizon<R: Rng + ?Sized>(model: &LevyModel, cfg: &GridConfig, rng: &mut R) -> Result<HorizonOutcome> {
    cfg.validate()?;
    model.validate()?;
    let mut at = Vec::with_capacity(cfg.checkpoints.len());
    let (value, stopped) = if model.is_pure_compound_poisson() {
        exact_cp_sup(model, cfg, &mut at, rng)?
    } else {
        grid_sup(model, cfg, &mut at, rng)?
    };
    while at.len() < cfg.checkpoints.len() {
        at.push(value);
    }
    Ok(HorizonOutcome {
        sample: SupSample {
            value,
            method: Method::Grid,
            horizon: Some(stopped),
            error_bound: cfg.stop.map_or(0.0, |s| s.eps),
        },
        at_checkpoints: at,
    })
}

fn exact_cp_sup<R: Rng + ?Sized>(model: &LevyModel, cfg: &GridConfig, at: &mut Vec<f64>, rng: &mut R) -> Result<(f64, f64)> {
    let jump = model.jump.ok_or(Error::Unsupported("no jump law"))?;
    let (c, lambda, horizon) = (model.drift, model.jump_intensity, cfg.horizon);
    let (mut t, mut level, mut m) = (0.0f64, 0.0f64, 0.0f64);
    loop {
        let e: f64 = Exp1.sample(rng);
        let next = (t + e / lambda).min(horizon);
        while let Some(&cp) = cfg.checkpoints.get(at.len()) {
            if cp > next {
                break;
            }
            let v = level + c * (cp.max(t) - t);
            at.push(m.max(v));
        }
        let before = level + c * (next - t);
        m = m.max(before);
        if next >= horizon {
            return Ok((m, horizon));
        }
        if let Some(rule) = cfg.stop {
            if before <= m - rule.kappa {
                return Ok((m, next));
            }
        }
        level = before + jump.sample(rng);
        m = m.max(level);
        t = next;
    }
}

fn grid_sup<R: Rng + ?Sized>(model: &LevyModel, cfg: &GridConfig, at: &mut Vec<f64>, rng: &mut R) -> Result<(f64, f64)> {
    let n = libm::ceil(cfg.horizon / cfg.step * (1.0 - 1e-12)).max(1.0) as u64;
    let last_dt = cfg.horizon - (n - 1) as f64 * cfg.step;
    let body = IncrementSampler::new(model, cfg.step)?;
    let tail = IncrementSampler::new(model, last_dt)?;
    let bridge = if cfg.brownian_bridge { brownian_variance(model) } else { None };
    let (mut s, mut m) = (0.0f64, 0.0f64);
    for k in 1..=n {
        let (dt, inc) = if k == n { (last_dt, &tail) } else { (cfg.step, &body) };
        let t = if k == n { cfg.horizon } else { k as f64 * cfg.step };
        while let Some(&cp) = cfg.checkpoints.get(at.len()) {
            if cp >= t {
                break;
            }
            at.push(m);
        }
        let next = s + inc.sample(rng);
        if let Some(v) = bridge {
            let d = next - s;
            let top = 0.5 * (s + next + libm::sqrt(d * d - 2.0 * v * dt * libm::log(open01(rng))));
            m = m.max(top);
        }
        s = next;
        m = m.max(s);
        if let Some(rule) = cfg.stop {
            if s <= m - rule.kappa {
                return Ok((m, t));
            }
        }
    }
    Ok((m, cfg.horizon))
}

/// Supremum of `X_t - a t` over `[0, T]`: exact for compound Poisson,
/// the maximum over the grid `{0, h, …, T}` otherwise.
pub fn levy_sup_grid<R: Rng + ?Sized>(model: &LevyModel, a: f64, horizon: f64, step: f64, rng: &mut R) -> Result<SupSample> {
    let drained = model.with_drain(a);
    Ok(sup_on_horizon(&drained, &GridConfig::new(horizon, step), rng)?.sample)
}

/// Coarse (step `h`) and fine (step `h/2`) grid maxima of one path, the
/// coarse increments being sums of consecutive fine ones.
pub fn grid_refinement_pair<R: Rng + ?Sized>(model: &LevyModel, horizon: f64, step: f64, rng: &mut R) -> Result<(f64, f64)> {
    GridConfig::new(horizon, step).validate()?;
    model.validate()?;
    let n = libm::ceil(horizon / step * (1.0 - 1e-12)).max(1.0) as u64;
    let half = IncrementSampler::new(model, 0.5 * step)?;
    let (mut s, mut coarse, mut fine) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..n {
        s += half.sample(rng);
        fine = fine.max(s);
        s += half.sample(rng);
        fine = fine.max(s);
        coarse = coarse.max(s);
    }
    Ok((coarse, fine))
}

/// Walk maximum over integer times and exact path supremum over `[0, T]`
/// of one compound-Poisson path (`model` already drained).
pub fn walk_and_path_sup<R: Rng + ?Sized>(model: &LevyModel, horizon: f64, rng: &mut R) -> Result<(f64, f64)> {
    GridConfig::new(horizon, 1.0).validate()?;
    model.validate()?;
    let jump = match model.jump {
        Some(j) if model.is_pure_compound_poisson() => j,
        _ => return Err(Error::Unsupported("coupled walk needs pure compound-Poisson input")),
    };
    let (c, lambda) = (model.drift, model.jump_intensity);
    let (mut t, mut level, mut walk, mut path) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    loop {
        let e: f64 = Exp1.sample(rng);
        let next = (t + e / lambda).min(horizon);
        let first = libm::ceil(t);
        let last = if next >= horizon { libm::floor(horizon) } else { libm::ceil(next) - 1.0 };
        for n in [first, last] {
            if first <= last {
                walk = walk.max(level + c * (n - t));
            }
        }
        let before = level + c * (next - t);
        path = path.max(before);
        if next >= horizon {
            return Ok((walk, path));
        }
        level = before + jump.sample(rng);
        path = path.max(level);
        t = next;
    }
}

/// Draw of `sup_{t <= T} (L_t - t)` for the stable process `L` with
/// `V(x) = x^{2-α}` (standard Brownian motion at `α = 2`), resolved at
/// time step `h`.
///
/// At `α = 2` the path is a grid of step `h` bridged exactly, stopped once
/// a return to the maximum has probability below `1e-12`. For `α < 2`,
/// jumps larger than `ε = h^{1/α}` are simulated exactly and the
/// compensated smaller jumps are replaced by a Brownian motion of the same
/// variance, whose maxima between jumps are again exact bridge maxima.
pub fn stable_sup_functional_sample<R: Rng + ?Sized>(alpha: f64, beta: f64, rng: &mut R, horizon: f64, step: f64) -> Result<f64> {
    if !(alpha > 1.0 && alpha <= 2.0) {
        return Err(Error::Domain("functional index must lie in (1, 2]"));
    }
    if !(-1.0..=1.0).contains(&beta) {
        return Err(Error::Domain("stable skewness must lie in [-1, 1]"));
    }
    let cfg = GridConfig::new(horizon, step);
    cfg.validate()?;
    if alpha == 2.0 {
        let model = LevyModel::brownian(-1.0, 1.0)?;
        let mut cfg = cfg;
        cfg.brownian_bridge = true;
        cfg.stop = Some(StopRule { kappa: 0.5 * libm::log(1e12), eps: 1e-12 });
        return Ok(sup_on_horizon(&model, &cfg, rng)?.sample.value);
    }
    Ok(jump_adapted_sup(alpha, beta, horizon, libm::pow(step, 1.0 / alpha), rng))
}

fn jump_adapted_sup<R: Rng + ?Sized>(alpha: f64, beta: f64, horizon: f64, cutoff: f64, rng: &mut R) -> f64 {
    // Lévy density c± |x|^{-1-α} with c₊ + c₋ = 2 - α, so V(x) = x^{2-α}.
    let c_up = 0.5 * (1.0 + beta) * (2.0 - alpha);
    let c_down = 0.5 * (1.0 - beta) * (2.0 - alpha);
    let rate = (c_up + c_down) * libm::pow(cutoff, -alpha) / alpha;
    let p_up = c_up / (c_up + c_down);
    let drift = -1.0 - (c_up - c_down) * libm::pow(cutoff, 1.0 - alpha) / (alpha - 1.0);
    let var = libm::pow(cutoff, 2.0 - alpha);
    let (mut t, mut x, mut m) = (0.0f64, 0.0f64, 0.0f64);
    loop {
        let e: f64 = Exp1.sample(rng);
        let dt = (e / rate).min(horizon - t);
        let z: f64 = StandardNormal.sample(rng);
        let next = x + drift * dt + libm::sqrt(var * dt) * z;
        let d = next - x;
        let top = 0.5 * (x + next + libm::sqrt(d * d - 2.0 * var * dt * libm::log(open01(rng))));
        m = m.max(top);
        x = next;
        t += dt;
        if t >= horizon {
            return m;
        }
        let size = cutoff * libm::pow(open01(rng), -1.0 / alpha);
        x += if open01(rng) < p_up { size } else { -size };
        m = m.max(x);
    }
}
