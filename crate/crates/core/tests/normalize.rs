use htsup_core::normalize::{d_of_n, solve_contraction, solve_defna};
use htsup_core::{Error, HeavyTrafficFamily, JumpLaw, LevyModel};

/// Pareto(1.5, 1) cumulant by composite Simpson after x = w^{-2}.
fn r_oracle(s: f64) -> f64 {
    let integrand = |w: f64| {
        if w == 0.0 {
            3.0 * s
        } else {
            let u = s / (w * w);
            3.0 * ((-u).exp() - 1.0 + u) * w * w
        }
    };
    let simpson = |n: usize| {
        let h = 1.0 / n as f64;
        let mut acc = integrand(0.0) + integrand(1.0);
        for i in 1..n {
            acc += if i % 2 == 1 { 4.0 } else { 2.0 } * integrand(i as f64 * h);
        }
        acc * h / 3.0
    };
    let mut n = 256;
    let mut prev = simpson(n);
    loop {
        n *= 2;
        let next = simpson(n);
        if (next - prev).abs() <= 1e-11 * next.abs() {
            return next;
        }
        prev = next;
        assert!(n < 1 << 24);
    }
}

fn pareto_cp() -> LevyModel {
    LevyModel::compound_poisson(0.0, 1.0, JumpLaw::Pareto { alpha: 1.5, x_min: 1.0 }).unwrap()
}

#[test]
fn contraction_matches_arithmetic_bisection_oracle() {
    let model = pareto_cp();
    let mu: f64 = 3.0;
    let rho = 0.9;
    let target = (1.0 - rho) / rho * mu.powf(1.5);
    let (mut lo, mut hi) = (1e-6, 10.0);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if r_oracle(mid) / mid < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let oracle = 0.5 * (lo + hi);
    let sol = solve_contraction(&model, rho, 1e-10).unwrap();
    assert!(sol.residual.abs() < 1e-10);
    assert!((sol.d / oracle - 1.0).abs() < 1e-7, "d={} oracle={oracle}", sol.d);
    assert!((sol.delta - sol.d / mu).abs() < 1e-15);
}

#[test]
fn contraction_delta_falls_with_load() {
    let model = pareto_cp();
    let deltas: Vec<f64> = [0.9, 0.99, 0.999, 0.9999]
        .iter()
        .map(|&rho| solve_contraction(&model, rho, 1e-10).unwrap().delta)
        .collect();
    for w in deltas.windows(2) {
        assert!(w[1] < w[0]);
    }
}

#[test]
fn exponential_bracket_failure_is_reported() {
    let mm1 = LevyModel::compound_poisson(0.0, 1.0, JumpLaw::Exponential { rate: 1.0 }).unwrap();
    assert!(matches!(solve_contraction(&mm1, 0.5, 1e-10), Err(Error::BracketFailure { .. })));
}

#[test]
fn pareto_d_of_n_approaches_power_law() {
    // V(t) ~ 3 t^{1/2}, so d(n) ~ (3 n)^{2/3}.
    let centered = pareto_cp().centered().unwrap();
    let n = 1e8;
    let d = d_of_n(&centered, n).unwrap();
    assert!((d / (3.0 * n).powf(2.0 / 3.0) - 1.0).abs() < 0.02);
    let mut prev = 0.0;
    for k in 0..12 {
        let d = d_of_n(&centered, 10f64.powi(k)).unwrap_or(0.0);
        assert!(d >= prev);
        prev = d;
    }
}

#[test]
fn gaussian_defna_matches_closed_form() {
    for &sigma2 in &[1.0, 2.0] {
        let gauss = LevyModel::brownian(0.0, sigma2).unwrap();
        for &a in &[1e-1, 1e-2, 1e-3] {
            let sol = solve_defna(&gauss, a, 1e-10).unwrap();
            let delta = a / sigma2;
            assert!((sol.delta / delta - 1.0).abs() < 1e-9);
            assert!((sol.time_scale.unwrap() / (sigma2 / (a * a)) - 1.0).abs() < 1e-9);
        }
    }
}

#[test]
fn pareto_defna_time_scale() {
    // a n = (3 n)^{2/3} gives n = 9 / a³.
    let centered = pareto_cp().centered().unwrap();
    let a = 1e-3;
    let sol = solve_defna(&centered, a, 1e-10).unwrap();
    assert!(sol.residual.abs() < 1e-10);
    assert!((a.powi(3) * sol.time_scale.unwrap() / 9.0 - 1.0).abs() < 0.02);
    let mut prev = 0.0;
    for &a in &[1e-4, 1e-3, 1e-2, 1e-1] {
        let delta = solve_defna(&centered, a, 1e-10).unwrap().delta;
        assert!(delta > prev);
        prev = delta;
    }
}

#[test]
fn contraction_and_centered_scalings_agree_up_to_a_constant() {
    // Both scalings are ∝ a²; their ratio tends to 9 / (4π) for Pareto(1.5, 1).
    let family = HeavyTrafficFamily::new(pareto_cp()).unwrap();
    let centered = pareto_cp().centered().unwrap();
    let mu = 3.0;
    let excess = [1e-2, 1e-3, 1e-4, 1e-5];
    let log_ratio: Vec<f64> = excess
        .iter()
        .map(|&e| {
            let rho = family.rho(mu + e).unwrap();
            let c = solve_contraction(family.base(), rho, 1e-10).unwrap().delta;
            let d = solve_defna(&centered, e, 1e-10).unwrap().delta;
            (c / d).ln()
        })
        .collect();
    let slope = (log_ratio[3] - log_ratio[2]) / (1e-5f64.ln() - 1e-4f64.ln());
    assert!(slope.abs() < 0.05, "slope {slope}");
    let limit = 9.0 / (4.0 * std::f64::consts::PI);
    assert!((log_ratio[3].exp() / limit - 1.0).abs() < 0.02);
}
