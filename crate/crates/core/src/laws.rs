//! Limit laws: Mittag-Leffler, exponential and simulated references.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::error::{Error, Result};
use crate::levy::{unit_laplace_constant, LevyModel};
use crate::quad::integrate;
use crate::rng::open01;
use crate::stats::{ks_one_sample, ks_two_sample};

const SERIES_MAX_X: f64 = 8.0;
const TAIL_MIN_Z: f64 = 30.0;

fn check_ml_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha <= 1.0 {
        Ok(())
    } else {
        Err(Error::Domain("Mittag-Leffler index must lie in (0, 1]"))
    }
}

/// `F(x) = 1 - E_α(-x^α)`, the CDF of the law with LST `1 / (1 + s^α)`.
///
/// Uses the power series for `x <= 8`, the asymptotic tail expansion once
/// `x^α >= 30`, and an integral representation of `E_α(-x^α)` in between.
pub fn ml_cdf(alpha: f64, x: f64) -> Result<f64> {
    check_ml_alpha(alpha)?;
    if !(x >= 0.0) {
        return Err(Error::Domain("Mittag-Leffler CDF needs x >= 0"));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if alpha == 1.0 {
        return Ok(-libm::expm1(-x));
    }
    if x.is_infinite() {
        return Ok(1.0);
    }
    let z = libm::pow(x, alpha);
    let p = if x <= SERIES_MAX_X {
        series_cdf(alpha, z)
    } else if z >= TAIL_MIN_Z {
        1.0 - tail_survival(alpha, z)
    } else {
        1.0 - integral_survival(alpha, x)?
    };
    Ok(p.clamp(0.0, 1.0))
}

fn series_cdf(alpha: f64, z: f64) -> f64 {
    let mut sum = 0.0;
    let log_z = libm::log(z);
    for k in 1..2000 {
        let arg = 1.0 + alpha * k as f64;
        let mag = if arg < 170.0 {
            libm::pow(z, k as f64) / libm::tgamma(arg)
        } else {
            libm::exp(k as f64 * log_z - libm::lgamma(arg))
        };
        let term = if k % 2 == 1 { mag } else { -mag };
        sum += term;
        if arg > 2.0 && mag <= 1e-17 * sum.abs().max(1e-300) {
            break;
        }
    }
    sum
}

fn reciprocal_gamma(x: f64) -> f64 {
    if x <= 0.0 && x == libm::floor(x) {
        0.0
    } else {
        1.0 / libm::tgamma(x)
    }
}

/// `Σ_{k≥1} (-1)^{k+1} z^{-k} / Γ(1 - αk)`, truncated before the terms start to grow.
fn tail_survival(alpha: f64, z: f64) -> f64 {
    let mut sum = 0.0;
    let mut prev = f64::INFINITY;
    for k in 1..60 {
        let c = reciprocal_gamma(1.0 - alpha * k as f64);
        let mag = libm::pow(z, -(k as f64)) * c;
        if k > 3 && mag.abs() > prev {
            break;
        }
        sum += if k % 2 == 1 { mag } else { -mag };
        if mag != 0.0 {
            prev = mag.abs();
        }
    }
    sum
}

fn integral_survival(alpha: f64, x: f64) -> Result<f64> {
    let (s, c) = (libm::sin(alpha * PI), libm::cos(alpha * PI));
    let inv = 1.0 / alpha;
    let denom = move |t: f64| t * t + 2.0 * t * c + 1.0;
    let near = |t: f64| libm::exp(-x * libm::pow(t, inv)) / denom(t);
    let far = |t: f64| {
        if t == 0.0 {
            0.0
        } else {
            libm::exp(-x * libm::pow(t, -inv)) / denom(t)
        }
    };
    let (a, _) = integrate(near, 0.0, 1.0, 1e-17, 1e-13)?;
    let (b, _) = integrate(far, 0.0, 1.0, 1e-17, 1e-13)?;
    Ok(s / (alpha * PI) * (a + b))
}

/// Stable draw in the `S(α, β, scale)` parametrization via the
/// Chambers–Mallows–Stuck construction; `α = 2` is `N(0, 2 scale²)`.
pub fn stable_sample<R: Rng + ?Sized>(alpha: f64, beta: f64, scale: f64, rng: &mut R) -> Result<f64> {
    Ok(StableGenerator::new(alpha, beta, scale)?.sample(rng))
}

/// Precomputed Chambers–Mallows–Stuck constants for repeated draws.
#[derive(Debug, Clone, Copy)]
pub struct StableGenerator {
    alpha: f64,
    beta: f64,
    scale: f64,
    b: f64,
    s: f64,
    shift: f64,
}

impl StableGenerator {
    pub fn new(alpha: f64, beta: f64, scale: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 2.0) {
            return Err(Error::Domain("stable index must lie in (0, 2]"));
        }
        if !(-1.0..=1.0).contains(&beta) {
            return Err(Error::Domain("stable skewness must lie in [-1, 1]"));
        }
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::Domain("stable scale must be positive"));
        }
        let (b, s, shift) = if alpha == 1.0 {
            (0.0, 1.0, beta * scale * libm::log(scale) / FRAC_PI_2)
        } else if alpha == 2.0 {
            (0.0, 1.0, 0.0)
        } else {
            let t = beta * libm::tan(FRAC_PI_2 * alpha);
            (libm::atan(t) / alpha, libm::pow(1.0 + t * t, 0.5 / alpha), 0.0)
        };
        Ok(StableGenerator { alpha, beta, scale, b, s, shift })
    }

    #[inline]
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let alpha = self.alpha;
        if alpha == 2.0 {
            let z: f64 = StandardNormal.sample(rng);
            return self.scale * core::f64::consts::SQRT_2 * z;
        }
        let v = PI * (open01(rng) - 0.5);
        let w: f64 = Exp1.sample(rng);
        if alpha == 1.0 {
            let p = FRAC_PI_2 + self.beta * v;
            let x = (p * libm::tan(v) - self.beta * libm::log(FRAC_PI_2 * w * libm::cos(v) / p)) / FRAC_PI_2;
            return self.scale * x + self.shift;
        }
        let ab = alpha * (v + self.b);
        self.scale * self.s * libm::sin(ab) / libm::pow(libm::cos(v), 1.0 / alpha)
            * libm::pow(libm::cos(v - ab) / w, (1.0 - alpha) / alpha)
    }
}

/// Positive stable draw with LST `exp(-s^α)`, `α ∈ (0, 1)`.
fn positive_stable<R: Rng + ?Sized>(alpha: f64, rng: &mut R) -> f64 {
    let scale = libm::pow(libm::cos(FRAC_PI_2 * alpha), 1.0 / alpha);
    match StableGenerator::new(alpha, 1.0, scale) {
        Ok(g) => g.sample(rng),
        Err(_) => unreachable!("index checked by the caller"),
    }
}

/// Draw `E^{1/α} S_α` from the Mittag-Leffler law; `α = 1` is a unit exponential.
pub fn ml_sample<R: Rng + ?Sized>(alpha: f64, rng: &mut R) -> Result<f64> {
    check_ml_alpha(alpha)?;
    let e: f64 = Exp1.sample(rng);
    if alpha == 1.0 {
        return Ok(e);
    }
    Ok(libm::pow(e, 1.0 / alpha) * positive_stable(alpha, rng))
}

#[derive(Debug, Clone, PartialEq)]
pub enum LimitLaw {
    /// `scale · ML_α`.
    MittagLeffler { alpha: f64, scale: f64 },
    Exponential { rate: f64 },
    /// Sorted draws of a stable supremum functional with index `alpha`
    /// and skewness `beta`.
    EmpiricalReference { samples: Vec<f64>, alpha: f64, beta: f64 },
}

impl LimitLaw {
    pub fn mittag_leffler(alpha: f64) -> Self {
        LimitLaw::MittagLeffler { alpha, scale: 1.0 }
    }

    /// Sorts the samples.
    pub fn empirical(mut samples: Vec<f64>, alpha: f64, beta: f64) -> Result<Self> {
        if samples.iter().any(|x| x.is_nan()) {
            return Err(Error::Domain("reference samples must not be NaN"));
        }
        samples.sort_by(f64::total_cmp);
        let law = LimitLaw::EmpiricalReference { samples, alpha, beta };
        law.validate()?;
        Ok(law)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            LimitLaw::MittagLeffler { alpha, scale } => {
                check_ml_alpha(*alpha)?;
                if !(*scale > 0.0 && scale.is_finite()) {
                    return Err(Error::Domain("Mittag-Leffler scale must be positive"));
                }
            }
            LimitLaw::Exponential { rate } => {
                if !(*rate > 0.0 && rate.is_finite()) {
                    return Err(Error::Domain("exponential rate must be positive"));
                }
            }
            LimitLaw::EmpiricalReference { samples, .. } => {
                if samples.is_empty() {
                    return Err(Error::Domain("reference sample set is empty"));
                }
                if samples.windows(2).any(|w| w[1] < w[0]) {
                    return Err(Error::Domain("reference samples must be sorted"));
                }
            }
        }
        Ok(())
    }

    pub fn cdf(&self, x: f64) -> Result<f64> {
        if x <= 0.0 && !matches!(self, LimitLaw::EmpiricalReference { .. }) {
            return Ok(0.0);
        }
        match self {
            LimitLaw::MittagLeffler { alpha, scale } => ml_cdf(*alpha, x / scale),
            LimitLaw::Exponential { rate } => Ok(-libm::expm1(-rate * x)),
            LimitLaw::EmpiricalReference { samples, .. } => {
                let count = samples.partition_point(|&s| s <= x);
                Ok(count as f64 / samples.len() as f64)
            }
        }
    }

    /// KS distance from sorted draws; two-sample against a reference.
    pub fn ks(&self, sorted: &[f64]) -> Result<f64> {
        match self {
            LimitLaw::EmpiricalReference { samples, .. } => ks_two_sample(sorted, samples),
            _ => ks_one_sample(sorted, |x| self.cdf(x)),
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<f64> {
        match self {
            LimitLaw::MittagLeffler { alpha, scale } => Ok(scale * ml_sample(*alpha, rng)?),
            LimitLaw::Exponential { rate } => {
                let e: f64 = Exp1.sample(rng);
                Ok(e / rate)
            }
            LimitLaw::EmpiricalReference { samples, .. } => {
                let i = rng.random_range(0..samples.len());
                Ok(samples[i])
            }
        }
    }
}

/// Picks the limit of `Δ(a) · sup_t (X_t - a t)`.
///
/// Compound-Poisson input normalized by the contraction converges to
/// `ML_{α-1}`. Under the centered normalization the limit process is the
/// stable law with `V(x) = x^{2-α}`: Gaussian and spectrally negative input
/// give an exponential law (rate 2 at `α = 2`), spectrally positive stable
/// input a scaled `ML_{α-1}`, and anything else an empirical reference
/// produced by `reference(α, β)`.
pub fn select_limit_law<F>(model: &LevyModel, alpha: f64, reference: F) -> Result<LimitLaw>
where
    F: FnOnce(f64, f64) -> Result<Vec<f64>>,
{
    if !(alpha > 1.0 && alpha <= 2.0) {
        return Err(Error::Domain("limit index must lie in (1, 2]"));
    }
    model.validate()?;
    if model.has_jumps() && model.stable.is_none() {
        return Ok(LimitLaw::mittag_leffler(alpha - 1.0));
    }
    let beta = model.stable.map_or(0.0, |s| s.beta);
    if alpha == 2.0 || model.is_gaussian_only() {
        return Ok(LimitLaw::Exponential { rate: 2.0 });
    }
    let k = unit_laplace_constant(alpha);
    if beta == 1.0 {
        Ok(LimitLaw::MittagLeffler {
            alpha: alpha - 1.0,
            scale: libm::pow(k, 1.0 / (alpha - 1.0)),
        })
    } else if beta == -1.0 {
        Ok(LimitLaw::Exponential { rate: libm::pow(k, -1.0 / (alpha - 1.0)) })
    } else {
        LimitLaw::empirical(reference(alpha, beta)?, alpha, beta)
    }
}
