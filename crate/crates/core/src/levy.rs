//! Supported Lévy process families and their analytic functionals.
//!
//! A [`LevyModel`] is drift plus an optional Brownian part plus either a
//! compound-Poisson jump part with positive jumps or an α-stable part.
//! The functionals implemented here are the ones the normalizations and
//! samplers consume: the mean, the Lévy tail `ν(x, ∞)`, the truncated
//! second moment `V(x) = ∫_{|y|≤x} y² ν(dy)` and the cumulant integral
//! `r(s) = ∫_0^∞ (e^{-sx} - 1 + sx) ν(dx)`.

use core::f64::consts::PI;

use rand::Rng;
use rand_distr::{Distribution, Exp1};

use crate::error::{Error, Result};
use crate::quad;
use crate::rng::open01;

/// Positive jump-size distributions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum JumpLaw {
    /// Tail `P(J > x) = (x / x_min)^(-alpha)` for `x >= x_min`.
    Pareto { alpha: f64, x_min: f64 },
    Exponential { rate: f64 },
}

impl JumpLaw {
    pub fn validate(&self) -> Result<()> {
        match *self {
            JumpLaw::Pareto { alpha, x_min } => {
                if !(alpha > 0.0 && alpha.is_finite()) {
                    return Err(Error::InvalidModel("pareto tail index must be positive"));
                }
                if !(x_min > 0.0 && x_min.is_finite()) {
                    return Err(Error::InvalidModel("pareto scale must be positive"));
                }
            }
            JumpLaw::Exponential { rate } => {
                if !(rate > 0.0 && rate.is_finite()) {
                    return Err(Error::InvalidModel("exponential rate must be positive"));
                }
            }
        }
        Ok(())
    }

    pub fn mean(&self) -> Result<f64> {
        match *self {
            JumpLaw::Pareto { alpha, x_min } if alpha > 1.0 => Ok(alpha * x_min / (alpha - 1.0)),
            JumpLaw::Pareto { .. } => Err(Error::InfiniteMean),
            JumpLaw::Exponential { rate } => Ok(1.0 / rate),
        }
    }

    /// `P(J > x)`.
    pub fn tail(&self, x: f64) -> f64 {
        match *self {
            JumpLaw::Pareto { alpha, x_min } => {
                if x < x_min {
                    1.0
                } else {
                    libm::pow(x / x_min, -alpha)
                }
            }
            JumpLaw::Exponential { rate } => {
                if x <= 0.0 {
                    1.0
                } else {
                    libm::exp(-rate * x)
                }
            }
        }
    }

    /// Stability index of the domain of attraction: the Pareto tail index
    /// when it is below 2, otherwise 2 (finite variance).
    pub fn domain_index(&self) -> f64 {
        match *self {
            JumpLaw::Pareto { alpha, .. } if alpha < 2.0 => alpha,
            _ => 2.0,
        }
    }

    /// `E[J²; J ≤ x]`.
    pub fn truncated_second_moment(&self, x: f64) -> f64 {
        match *self {
            JumpLaw::Pareto { alpha, x_min } => {
                if x <= x_min {
                    return 0.0;
                }
                // α x_min^α ∫_{x_min}^x y^{1-α} dy, written with expm1 so α → 2 stays accurate.
                let log_ratio = libm::log(x / x_min);
                let gap = 2.0 - alpha;
                let integral = if gap.abs() < 1e-12 {
                    log_ratio
                } else {
                    libm::expm1(gap * log_ratio) / gap
                };
                alpha * x_min * x_min * integral
            }
            JumpLaw::Exponential { rate } => {
                if x <= 0.0 {
                    return 0.0;
                }
                2.0 / (rate * rate) * regularized_gamma3(rate * x)
            }
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            JumpLaw::Pareto { alpha, x_min } => x_min * libm::pow(open01(rng), -1.0 / alpha),
            JumpLaw::Exponential { rate } => {
                let e: f64 = Exp1.sample(rng);
                e / rate
            }
        }
    }

    /// Quantile of the integrated-tail (stationary excess) law with density
    /// `P(J > x) / E J`.
    pub fn integrated_tail_quantile(&self, u: f64) -> Result<f64> {
        if !(0.0..1.0).contains(&u) {
            return Err(Error::Domain("quantile level must lie in [0, 1)"));
        }
        match *self {
            JumpLaw::Pareto { alpha, x_min } => {
                let mean = self.mean()?;
                let flat = (alpha - 1.0) / alpha;
                if u <= flat {
                    Ok(u * mean)
                } else {
                    Ok(x_min * libm::pow(alpha * (1.0 - u), -1.0 / (alpha - 1.0)))
                }
            }
            JumpLaw::Exponential { rate } => Ok(-libm::log1p(-u) / rate),
        }
    }

    /// Draw from the integrated-tail law.
    pub fn sample_integrated_tail<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<f64> {
        match *self {
            // The integrated tail of an exponential law is the same law.
            JumpLaw::Exponential { .. } => Ok(self.sample(rng)),
            JumpLaw::Pareto { .. } => self.integrated_tail_quantile(1.0 - open01(rng)),
        }
    }

    /// `∫_0^∞ (e^{-sx} - 1 + sx) F(dx)` for the jump law `F`.
    fn cumulant(&self, s: f64) -> Result<f64> {
        if s == 0.0 {
            return Ok(0.0);
        }
        match *self {
            JumpLaw::Exponential { rate } => Ok(s * s / (rate * (rate + s))),
            JumpLaw::Pareto { alpha, x_min } => {
                if alpha <= 1.0 {
                    return Err(Error::InfiniteMean);
                }
                let u0 = s * x_min;
                let scaled = pareto_cumulant_integral(alpha, u0)?;
                Ok(alpha * libm::pow(u0, alpha) * scaled)
            }
        }
    }
}

/// `1 - e^{-u}(1 + u + u²/2)`, the regularized lower incomplete gamma P(3, u).
fn regularized_gamma3(u: f64) -> f64 {
    if u < 1.0 {
        // e^{-u} Σ_{k≥3} u^k / k!
        let mut term = u * u * u / 6.0;
        let mut sum = 0.0;
        let mut k = 3.0;
        while term > 1e-18 * sum || sum == 0.0 {
            sum += term;
            k += 1.0;
            term *= u / k;
            if term == 0.0 {
                break;
            }
        }
        libm::exp(-u) * sum
    } else {
        1.0 - libm::exp(-u) * (1.0 + u + 0.5 * u * u)
    }
}

/// `e^{-u} - 1 + u`, with a Taylor guard where the direct form cancels.
pub(crate) fn compensated_exp(u: f64) -> f64 {
    if u < 1e-4 {
        let u2 = u * u;
        u2 * (0.5 - u / 6.0 + u2 / 24.0 - u2 * u / 120.0)
    } else {
        u + libm::expm1(-u)
    }
}

/// `∫_{u0}^∞ (e^{-u} - 1 + u) u^{-α-1} du` for `α > 1`.
///
/// The piece below `u = 1` is integrated in `t = ln u`, which removes the
/// endpoint power law; above 1 the polynomial part is done in closed form
/// and only `∫ e^{-u} u^{-α-1}` is left to quadrature.
fn pareto_cumulant_integral(alpha: f64, u0: f64) -> Result<f64> {
    const TOL: f64 = 1e-13;
    let exp_tail = |start: f64| -> Result<f64> {
        // Integrand decays like e^{-u}; 60 units past the start is below 1e-26 relative.
        let (v, _) = quad::integrate(
            |u| libm::exp(-u) * libm::pow(u, -alpha - 1.0),
            start,
            start + 60.0,
            0.0,
            TOL,
        )?;
        Ok(v)
    };
    if u0 >= 1.0 {
        let poly = libm::pow(u0, 1.0 - alpha) / (alpha - 1.0) - libm::pow(u0, -alpha) / alpha;
        return Ok(poly + exp_tail(u0)?);
    }
    let (low, _) = quad::integrate(
        |t| {
            let u = libm::exp(t);
            compensated_exp(u) * libm::exp(-alpha * t)
        },
        libm::log(u0),
        0.0,
        0.0,
        TOL,
    )?;
    let poly = 1.0 / (alpha - 1.0) - 1.0 / alpha;
    Ok(low + poly + exp_tail(1.0)?)
}

/// An α-stable component in the (α, β, scale) parameterization with
/// location 0; `alpha = 2` is a Gaussian of variance `2 * scale²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StablePart {
    pub alpha: f64,
    pub beta: f64,
    pub scale: f64,
}

impl StablePart {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha <= 2.0) {
            return Err(Error::InvalidModel("stable index must lie in (0, 2]"));
        }
        if !(-1.0..=1.0).contains(&self.beta) {
            return Err(Error::InvalidModel("stable skewness must lie in [-1, 1]"));
        }
        if !(self.scale > 0.0 && self.scale.is_finite()) {
            return Err(Error::InvalidModel("stable scale must be positive"));
        }
        Ok(())
    }

    /// `V(x)` of the stable Lévy measure (zero for the Gaussian case).
    pub fn truncated_second_moment(&self, x: f64) -> f64 {
        if self.alpha >= 2.0 {
            return 0.0;
        }
        let a = self.alpha;
        a * tail_constant(a) * libm::pow(self.scale, a) * libm::pow(x, 2.0 - a) / (2.0 - a)
    }
}

/// `C_α` with `x^α P(X > x) → C_α (1 + β)/2 · scale^α` for the stable law.
pub fn tail_constant(alpha: f64) -> f64 {
    if (alpha - 1.0).abs() < 1e-12 {
        2.0 / PI
    } else {
        (1.0 - alpha) / (libm::tgamma(2.0 - alpha) * libm::cos(PI * alpha / 2.0))
    }
}

/// Scale of the stable law whose truncated second moment is exactly
/// `V(x) = x^{2-α}` (variance 1 when `α = 2`).
///
/// This is the law `X_n / d(n)` converges to when `d(n)` is built from
/// `V`, so it fixes the limit process in the centered normalization.
pub fn unit_stable_scale(alpha: f64) -> f64 {
    if alpha >= 2.0 {
        core::f64::consts::FRAC_1_SQRT_2
    } else {
        libm::pow((2.0 - alpha) / (alpha * tail_constant(alpha)), 1.0 / alpha)
    }
}

/// `k` in `E exp(-γ L_1) = exp(k γ^α)` for the totally skewed-right stable
/// law at [`unit_stable_scale`] (`α ∈ (1, 2]`); equals `(2 - α) Γ(-α)`.
pub fn unit_laplace_constant(alpha: f64) -> f64 {
    if alpha >= 2.0 {
        0.5
    } else {
        (2.0 - alpha) * libm::tgamma(-alpha)
    }
}

/// A Lévy process `δt + σB_t + (compound Poisson or stable)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevyModel {
    pub drift: f64,
    pub sigma2: f64,
    pub jump_intensity: f64,
    pub jump: Option<JumpLaw>,
    pub stable: Option<StablePart>,
}

impl LevyModel {
    pub fn new(
        drift: f64,
        sigma2: f64,
        jump_intensity: f64,
        jump: Option<JumpLaw>,
        stable: Option<StablePart>,
    ) -> Result<Self> {
        let model = LevyModel { drift, sigma2, jump_intensity, jump, stable };
        model.validate()?;
        Ok(model)
    }

    pub fn brownian(drift: f64, sigma2: f64) -> Result<Self> {
        Self::new(drift, sigma2, 0.0, None, None)
    }

    pub fn compound_poisson(drift: f64, jump_intensity: f64, jump: JumpLaw) -> Result<Self> {
        Self::new(drift, 0.0, jump_intensity, Some(jump), None)
    }

    pub fn stable(drift: f64, part: StablePart) -> Result<Self> {
        Self::new(drift, 0.0, 0.0, None, Some(part))
    }

    pub fn validate(&self) -> Result<()> {
        if !self.drift.is_finite() {
            return Err(Error::InvalidModel("drift must be finite"));
        }
        if !(self.sigma2 >= 0.0 && self.sigma2.is_finite()) {
            return Err(Error::InvalidModel("gaussian variance must be nonnegative"));
        }
        if !(self.jump_intensity >= 0.0 && self.jump_intensity.is_finite()) {
            return Err(Error::InvalidModel("jump intensity must be nonnegative"));
        }
        if let Some(j) = &self.jump {
            j.validate()?;
        } else if self.jump_intensity > 0.0 {
            return Err(Error::InvalidModel("positive jump intensity needs a jump law"));
        }
        if let Some(s) = &self.stable {
            s.validate()?;
            if self.has_jumps() {
                return Err(Error::InvalidModel("compound-Poisson and stable parts are exclusive"));
            }
        }
        let stable_scale = self.stable.map_or(0.0, |s| s.scale);
        if self.sigma2 + self.jump_intensity + stable_scale <= 0.0 {
            return Err(Error::InvalidModel("model is deterministic"));
        }
        Ok(())
    }

    /// Whether a compound-Poisson part with positive intensity is present.
    pub fn has_jumps(&self) -> bool {
        self.jump_intensity > 0.0 && self.jump.is_some()
    }

    pub fn is_gaussian_only(&self) -> bool {
        !self.has_jumps() && self.stable.is_none()
    }

    /// No negative jumps.
    pub fn is_spectrally_positive(&self) -> bool {
        match self.stable {
            Some(s) => s.alpha >= 2.0 || s.beta == 1.0,
            None => true,
        }
    }

    /// No positive jumps.
    pub fn is_spectrally_negative(&self) -> bool {
        if self.has_jumps() {
            return false;
        }
        match self.stable {
            Some(s) => s.alpha >= 2.0 || s.beta == -1.0,
            None => true,
        }
    }

    /// Compound Poisson with positive jumps, no Brownian and no stable part.
    pub fn is_pure_compound_poisson(&self) -> bool {
        self.has_jumps() && self.sigma2 == 0.0 && self.stable.is_none()
    }

    /// `E X_1`.
    pub fn mean(&self) -> Result<f64> {
        let mut m = self.drift;
        if self.has_jumps() {
            if let Some(j) = &self.jump {
                m += self.jump_intensity * j.mean()?;
            }
        }
        if let Some(s) = &self.stable {
            if s.alpha <= 1.0 {
                return Err(Error::InfiniteMean);
            }
        }
        Ok(m)
    }

    /// Stability index of the domain of attraction of `X_1`.
    pub fn domain_index(&self) -> f64 {
        if let Some(s) = &self.stable {
            return s.alpha;
        }
        match (self.has_jumps(), &self.jump) {
            (true, Some(j)) => j.domain_index(),
            _ => 2.0,
        }
    }

    /// `ν(x, ∞)`.
    pub fn levy_tail(&self, x: f64) -> Result<f64> {
        if !(x > 0.0) {
            return Err(Error::Domain("levy tail needs x > 0"));
        }
        if self.stable.is_some() {
            return Err(Error::Unsupported("stable Lévy tail is only known asymptotically"));
        }
        Ok(match (self.has_jumps(), &self.jump) {
            (true, Some(j)) => self.jump_intensity * j.tail(x),
            _ => 0.0,
        })
    }

    /// `V(x) = ∫_{|y|≤x} y² ν(dy)`; with `include_gaussian` the Brownian
    /// variance (and the variance of an α = 2 stable part) is added.
    pub fn truncated_second_moment(&self, x: f64, include_gaussian: bool) -> Result<f64> {
        if !(x > 0.0) {
            return Err(Error::Domain("truncated second moment needs x > 0"));
        }
        let mut v = 0.0;
        if let (true, Some(j)) = (self.has_jumps(), &self.jump) {
            v += self.jump_intensity * j.truncated_second_moment(x);
        }
        if let Some(s) = &self.stable {
            v += s.truncated_second_moment(x);
            if include_gaussian && s.alpha >= 2.0 {
                v += 2.0 * s.scale * s.scale;
            }
        }
        if include_gaussian {
            v += self.sigma2;
        }
        Ok(v)
    }

    /// `r(s) = ∫_0^∞ (e^{-sx} - 1 + sx) ν(dx)`.
    pub fn cumulant_r(&self, s: f64) -> Result<f64> {
        if !(s >= 0.0 && s.is_finite()) {
            return Err(Error::Domain("r(s) needs finite s >= 0"));
        }
        if self.stable.is_some() {
            return Err(Error::Unsupported("r(s) needs a compound-Poisson Lévy measure"));
        }
        match (self.has_jumps(), &self.jump) {
            (true, Some(j)) => Ok(self.jump_intensity * j.cumulant(s)?),
            _ => Ok(0.0),
        }
    }

    /// The same model with drift shifted so that the mean is zero.
    pub fn centered(&self) -> Result<Self> {
        let m = self.mean()?;
        Ok(LevyModel { drift: self.drift - m, ..*self })
    }

    /// `X_t - a t`.
    pub fn with_drain(&self, a: f64) -> Self {
        LevyModel { drift: self.drift - a, ..*self }
    }
}

/// `X^{(a)}_t = X_t - a t` for a base process with positive mean `μ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeavyTrafficFamily {
    base: LevyModel,
    mu: f64,
}

impl HeavyTrafficFamily {
    pub fn new(base: LevyModel) -> Result<Self> {
        let mu = base.mean()?;
        if !(mu > 0.0) {
            return Err(Error::InvalidModel("heavy-traffic family needs a positive input mean"));
        }
        Ok(HeavyTrafficFamily { base, mu })
    }

    pub fn base(&self) -> &LevyModel {
        &self.base
    }

    pub fn input_mean(&self) -> f64 {
        self.mu
    }

    /// `ρ(a) = μ / a`.
    pub fn rho(&self, a: f64) -> Result<f64> {
        if !(a > self.mu) {
            return Err(Error::UnstableSystem { rho: self.mu / a });
        }
        Ok(self.mu / a)
    }

    /// Drain rate `a = μ / ρ`.
    pub fn drain_for_rho(&self, rho: f64) -> Result<f64> {
        if !(rho > 0.0 && rho < 1.0) {
            return Err(Error::Domain("traffic intensity must lie in (0, 1)"));
        }
        Ok(self.mu / rho)
    }

    /// `E X^{(a)}_1 = μ - a`.
    pub fn mean_at(&self, a: f64) -> f64 {
        self.mu - a
    }

    pub fn model_at(&self, a: f64) -> LevyModel {
        self.base.with_drain(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pareto15() -> LevyModel {
        LevyModel::compound_poisson(0.0, 1.0, JumpLaw::Pareto { alpha: 1.5, x_min: 1.0 }).unwrap()
    }

    fn exp1(lambda: f64) -> LevyModel {
        LevyModel::compound_poisson(0.0, lambda, JumpLaw::Exponential { rate: 1.0 }).unwrap()
    }

    #[test]
    fn means() {
        assert_eq!(LevyModel::brownian(-1.0, 1.0).unwrap().mean().unwrap(), -1.0);
        assert_eq!(exp1(1.0).mean().unwrap(), 1.0);
        assert!((pareto15().mean().unwrap() - 3.0).abs() < 1e-15);
        let stable = LevyModel::stable(0.25, StablePart { alpha: 1.5, beta: 0.3, scale: 1.0 }).unwrap();
        assert_eq!(stable.mean().unwrap(), 0.25);
    }

    #[test]
    fn infinite_means_are_rejected() {
        let heavy = LevyModel::compound_poisson(0.0, 1.0, JumpLaw::Pareto { alpha: 0.9, x_min: 1.0 }).unwrap();
        assert_eq!(heavy.mean(), Err(Error::InfiniteMean));
        let cauchy = LevyModel::stable(0.0, StablePart { alpha: 1.0, beta: 0.0, scale: 1.0 }).unwrap();
        assert_eq!(cauchy.mean(), Err(Error::InfiniteMean));
    }

    #[test]
    fn deterministic_and_mixed_models_are_invalid() {
        assert!(LevyModel::brownian(-1.0, 0.0).is_err());
        let both = LevyModel::new(
            0.0,
            0.0,
            1.0,
            Some(JumpLaw::Exponential { rate: 1.0 }),
            Some(StablePart { alpha: 1.5, beta: 0.0, scale: 1.0 }),
        );
        assert!(both.is_err());
        assert!(LevyModel::new(0.0, 0.0, 1.0, None, None).is_err());
    }

    #[test]
    fn levy_tail_values() {
        assert!((pareto15().levy_tail(4.0).unwrap() - 0.125).abs() < 1e-15);
        assert_eq!(pareto15().levy_tail(1.0).unwrap(), 1.0);
        assert!((exp1(2.0).levy_tail(1e-300).unwrap() - 2.0).abs() < 1e-12);
        let stable = LevyModel::stable(0.0, StablePart { alpha: 1.5, beta: 0.0, scale: 1.0 }).unwrap();
        assert!(matches!(stable.levy_tail(1.0), Err(Error::Unsupported(_))));
    }

    #[test]
    fn truncated_second_moment_values() {
        assert!((pareto15().truncated_second_moment(4.0, false).unwrap() - 3.0).abs() < 1e-14);
        assert_eq!(pareto15().truncated_second_moment(0.5, false).unwrap(), 0.0);
        let with_gauss = LevyModel::new(0.0, 0.7, 1.0, Some(JumpLaw::Pareto { alpha: 1.5, x_min: 1.0 }), None).unwrap();
        assert_eq!(with_gauss.truncated_second_moment(0.5, true).unwrap(), 0.7);
        let v = exp1(1.0).truncated_second_moment(1.0, false).unwrap();
        let closed = 2.0 - libm::exp(-1.0) * 5.0;
        assert!((v - closed).abs() < 1e-14);
        assert!((v - 0.160603).abs() < 1e-6);
    }

    #[test]
    fn exponential_second_moment_small_argument() {
        // P(3, u) ≈ u³/6 for tiny u.
        let v = exp1(1.0).truncated_second_moment(1e-4, false).unwrap();
        assert!((v / (2.0 * 1e-12 / 6.0) - 1.0).abs() < 1e-3);
    }

    #[test]
    fn cumulant_closed_forms() {
        assert_eq!(pareto15().cumulant_r(0.0).unwrap(), 0.0);
        assert!((exp1(1.0).cumulant_r(1.0).unwrap() - 0.5).abs() < 1e-15);
        let gauss = LevyModel::brownian(0.0, 1.0).unwrap();
        assert_eq!(gauss.cumulant_r(3.0).unwrap(), 0.0);
    }

    #[test]
    fn cumulant_rejects_stable() {
        let stable = LevyModel::stable(0.0, StablePart { alpha: 1.5, beta: 1.0, scale: 1.0 }).unwrap();
        assert!(matches!(stable.cumulant_r(1.0), Err(Error::Unsupported(_))));
    }

    #[test]
    fn pareto_cumulant_matches_small_s_asymptote() {
        // r(s) ~ λ α x_min^α Γ(-α) s^α as s → 0.
        let s = 1e-8;
        let r = pareto15().cumulant_r(s).unwrap();
        let lead = 1.5 * libm::tgamma(-1.5) * libm::pow(s, 1.5);
        assert!((r / lead - 1.0).abs() < 1e-3);
    }

    #[test]
    fn pareto_cumulant_matches_large_s_asymptote() {
        // r(s)/s → λ E J = 3.
        let s = 1e7;
        let r = pareto15().cumulant_r(s).unwrap();
        assert!((r / s / 3.0 - 1.0).abs() < 1e-3);
    }

    #[test]
    fn integrated_tail_quantiles() {
        let j = JumpLaw::Pareto { alpha: 1.5, x_min: 1.0 };
        assert!((j.integrated_tail_quantile(1.0 / 3.0).unwrap() - 1.0).abs() < 1e-15);
        // F*(x) = 1 - (2/3) x^{-1/2} above x_min.
        let x = j.integrated_tail_quantile(0.9).unwrap();
        assert!((1.0 - (2.0 / 3.0) / libm::sqrt(x) - 0.9).abs() < 1e-14);
        let e = JumpLaw::Exponential { rate: 2.0 };
        assert!((e.integrated_tail_quantile(0.5).unwrap() - libm::log(2.0) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn unit_scale_constants() {
        // At α = 1.5: k = 0.5 Γ(-1.5) = 2√π/3.
        assert!((unit_laplace_constant(1.5) - 2.0 * libm::sqrt(PI) / 3.0).abs() < 1e-13);
        // Consistency with the scale: k = scale^α / |cos(πα/2)|.
        for &a in &[1.2, 1.5, 1.8] {
            let k = libm::pow(unit_stable_scale(a), a) / libm::cos(PI * a / 2.0).abs();
            assert!((k - unit_laplace_constant(a)).abs() < 1e-12, "alpha {a}");
        }
        let part = StablePart { alpha: 1.5, beta: 0.2, scale: unit_stable_scale(1.5) };
        assert!((part.truncated_second_moment(7.0) - libm::pow(7.0, 0.5)).abs() < 1e-12);
        // Continuity into the Gaussian case.
        assert!((unit_stable_scale(1.999_999) - core::f64::consts::FRAC_1_SQRT_2).abs() < 1e-5);
    }

    #[test]
    fn classification() {
        let gauss = LevyModel::brownian(0.0, 1.0).unwrap();
        assert!(gauss.is_gaussian_only() && gauss.is_spectrally_negative() && gauss.is_spectrally_positive());
        assert!(pareto15().is_spectrally_positive() && !pareto15().is_spectrally_negative());
        assert!(pareto15().is_pure_compound_poisson());
        let two_sided = LevyModel::stable(0.0, StablePart { alpha: 1.5, beta: 0.0, scale: 1.0 }).unwrap();
        assert!(!two_sided.is_spectrally_positive() && !two_sided.is_spectrally_negative());
        assert_eq!(pareto15().domain_index(), 1.5);
        assert_eq!(exp1(1.0).domain_index(), 2.0);
    }

    #[test]
    fn family_parameterization() {
        let fam = HeavyTrafficFamily::new(pareto15()).unwrap();
        let a = fam.drain_for_rho(0.9).unwrap();
        assert!((fam.rho(a).unwrap() - 0.9).abs() < 1e-15);
        assert!(fam.rho(2.0).is_err());
        assert_eq!(fam.mean_at(a), 3.0 - a);
        assert!(HeavyTrafficFamily::new(LevyModel::brownian(0.0, 1.0).unwrap()).is_err());
    }
}
