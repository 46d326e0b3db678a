//! Location families, the Russo-type derivative identity, sharp-threshold
//! widths, and the max-statistic hypothesis test.
//!
//! For an increasing set A and a location family nu_alpha (translates of a
//! base measure), alpha -> nu_alpha^n(A) is differentiable with derivative
//! equal to the influence sum under nu_alpha^n. Everything here exploits the
//! location structure for common random numbers: one base batch is drawn
//! once and shifted by alpha, so measured curves are monotone in alpha
//! sample-by-sample.

use crate::bounds::{BoundContext, BoundReport};
use crate::error::{Error, Result};
use crate::influence::influence_profile;
use crate::measure::{Measure1D, ProductSpace};
use crate::set::{McConfig, Monotonicity, SetDescriptor};
use crate::special;

#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdCurve {
    pub alphas: Vec<f64>,
    pub values: Vec<f64>,
    pub stderrs: Vec<f64>,
    pub n: usize,
    pub seed: u64,
}

fn require_increasing(set: &SetDescriptor) -> Result<()> {
    match set.monotonicity() {
        Some(Monotonicity::Increasing) => Ok(()),
        _ => Err(Error::Domain(
            "location-family experiments require an increasing set".into(),
        )),
    }
}

/// Measures alpha -> nu_alpha^n(A) along a grid with one shared base batch.
pub fn measure_curve(
    set: &SetDescriptor,
    base: &Measure1D,
    alphas: &[f64],
    n: usize,
    cfg: McConfig,
) -> Result<ThresholdCurve> {
    require_increasing(set)?;
    if set.dim() != n {
        return Err(Error::Domain("set dimension does not match n".into()));
    }
    let space = ProductSpace::iid(base, n)?;
    let mut x = vec![0.0; n];
    let mut shifted = vec![0.0; n];
    let mut hits = vec![0u64; alphas.len()];
    for k in 0..cfg.samples {
        space.sample_into(cfg.seed, k as u64, &mut x);
        for (j, &alpha) in alphas.iter().enumerate() {
            for i in 0..n {
                shifted[i] = x[i] + alpha;
            }
            if set.indicator(&shifted) {
                hits[j] += 1;
            }
        }
    }
    let nf = cfg.samples as f64;
    let values: Vec<f64> = hits.iter().map(|&h| h as f64 / nf).collect();
    let stderrs: Vec<f64> = values.iter().map(|&p| (p * (1.0 - p) / nf).sqrt()).collect();
    Ok(ThresholdCurve { alphas: alphas.to_vec(), values, stderrs, n, seed: cfg.seed })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RussoCheck {
    pub alpha: f64,
    pub finite_difference: f64,
    pub fd_stderr: f64,
    pub influence_sum: f64,
    pub sum_stderr: f64,
    pub discrepancy: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Compares the centered finite difference of the measure curve at alpha
/// (steps 1e-2 and 1e-3, Richardson-extrapolated) against the influence sum
/// under the shifted product measure. Discrepancy must stay within
/// 2% + 3 * combined stderr.
pub fn russo_check(
    set: &SetDescriptor,
    base: &Measure1D,
    alpha: f64,
    n: usize,
    cfg: McConfig,
) -> Result<RussoCheck> {
    require_increasing(set)?;
    let h1 = 1e-2;
    let h2 = 1e-3;
    let space = ProductSpace::iid(base, n)?;
    let mut x = vec![0.0; n];
    let mut shifted = vec![0.0; n];
    // Per-sample Richardson combination accumulates mean and variance.
    let w2 = h1 * h1 / (h1 * h1 - h2 * h2);
    let w1 = -h2 * h2 / (h1 * h1 - h2 * h2);
    let mut sum = 0.0;
    let mut sumsq = 0.0;
    let mut states = [false; 4];
    let offsets = [alpha - h1, alpha + h1, alpha - h2, alpha + h2];
    for k in 0..cfg.samples {
        space.sample_into(cfg.seed, k as u64, &mut x);
        for (s, &off) in states.iter_mut().zip(&offsets) {
            for i in 0..n {
                shifted[i] = x[i] + off;
            }
            *s = set.indicator(&shifted);
        }
        let d1 = (states[1] as i8 - states[0] as i8) as f64 / (2.0 * h1);
        let d2 = (states[3] as i8 - states[2] as i8) as f64 / (2.0 * h2);
        let combo = w1 * d1 + w2 * d2;
        sum += combo;
        sumsq += combo * combo;
    }
    let nf = cfg.samples as f64;
    let fd = sum / nf;
    let fd_var = (sumsq / nf - fd * fd).max(0.0) / nf;
    let fd_stderr = fd_var.sqrt();
    let shifted_space = space.translate(alpha);
    let profile = influence_profile(set, &shifted_space, cfg)?;
    let discrepancy = (fd - profile.sum).abs();
    let combined = (fd_var + profile.sum_stderr * profile.sum_stderr).sqrt();
    let tolerance = 0.02 * profile.sum.abs() + 3.0 * combined;
    Ok(RussoCheck {
        alpha,
        finite_difference: fd,
        fd_stderr,
        influence_sum: profile.sum,
        sum_stderr: profile.sum_stderr,
        discrepancy,
        tolerance,
        pass: discrepancy <= tolerance,
    })
}

/// Root-finds the location alpha with nu_alpha^n(A) = delta by bisection on
/// the (sample-monotone) measured curve; the bracket is [-20, 20]. The base
/// batch is drawn once and shifted per evaluation, so the whole search costs
/// one sampling pass.
pub fn threshold_alpha(
    set: &SetDescriptor,
    base: &Measure1D,
    delta: f64,
    n: usize,
    cfg: McConfig,
) -> Result<f64> {
    require_increasing(set)?;
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Domain(format!("delta must be in (0,1), got {delta}")));
    }
    let space = ProductSpace::iid(base, n)?;
    let batch = space.sample_batch(cfg.seed, cfg.samples);
    let mut shifted = vec![0.0; n];
    let mut eval = move |alpha: f64| -> (f64, f64) {
        let mut hits = 0u64;
        for k in 0..cfg.samples {
            let row = &batch[k * n..(k + 1) * n];
            for i in 0..n {
                shifted[i] = row[i] + alpha;
            }
            if set.indicator(&shifted) {
                hits += 1;
            }
        }
        let p = hits as f64 / cfg.samples as f64;
        (p, (p * (1.0 - p) / cfg.samples as f64).sqrt())
    };
    let (mut lo, mut hi) = (-20.0f64, 20.0f64);
    let (v_lo, _) = eval(lo);
    let (v_hi, _) = eval(hi);
    if v_lo > delta || v_hi < delta {
        return Err(Error::Domain(format!(
            "measure curve does not cross delta={delta} inside [-20, 20] (ends {v_lo}, {v_hi})"
        )));
    }
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        let (v, se) = eval(mid);
        if (v - delta).abs() <= (1e-3f64).max(3.0 * se) || hi - lo < 1e-6 {
            return Ok(mid);
        }
        if v < delta {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Sharp-threshold width of an increasing transitive set under the unit
/// Gaussian location family: alpha_A(1-eps) - alpha_A(eps) against
/// log(1/(2 eps)) / sqrt(log n).
pub fn width_check(
    set: &SetDescriptor,
    eps: f64,
    n: usize,
    cfg: McConfig,
    baseline: f64,
) -> Result<BoundReport> {
    if !(eps > 0.0 && eps < 0.5) {
        return Err(Error::Domain(format!("eps must be in (0, 1/2), got {eps}")));
    }
    if !set.is_transitive() {
        return Err(Error::Domain("width bound applies to transitive sets".into()));
    }
    let base = Measure1D::std_gaussian();
    let hi = threshold_alpha(set, &base, 1.0 - eps, n, cfg)?;
    let lo = threshold_alpha(set, &base, eps, n, cfg)?;
    let width = hi - lo;
    let rhs = (1.0 / (2.0 * eps)).ln() / (n as f64).ln().sqrt();
    let implied = if rhs > 0.0 { width / rhs } else { f64::INFINITY };
    // Upper bound: the width must stay BELOW baseline * rhs.
    Ok(BoundReport {
        name: "threshold_width".into(),
        lhs: width,
        rhs_at_c1: rhs,
        implied_constant: implied,
        baseline_constant: baseline,
        pass: width <= baseline * rhs + 1e-12,
        context: BoundContext { n, measure: "gaussian".into(), t: eps, seed: cfg.seed },
        note: String::new(),
    })
}

/// Exact threshold location for the max-threshold family:
/// alpha_A(delta) = level - Phi^{-1}((1 - delta)^{1/n}).
pub fn max_threshold_alpha_exact(level: f64, n: usize, delta: f64) -> Result<f64> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Domain(format!("delta must be in (0,1), got {delta}")));
    }
    if n < 1 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    // (1-delta)^{1/n} computed through logs to keep accuracy for large n.
    let p = ((1.0 - delta).ln() / n as f64).exp();
    Ok(level - special::std_normal_quantile(p))
}

/// Exact sharp-threshold width of the max-threshold family (the level
/// cancels).
pub fn max_threshold_width_exact(n: usize, eps: f64) -> Result<f64> {
    if !(eps > 0.0 && eps < 0.5) {
        return Err(Error::Domain(format!("eps must be in (0, 1/2), got {eps}")));
    }
    Ok(max_threshold_alpha_exact(0.0, n, 1.0 - eps)? - max_threshold_alpha_exact(0.0, n, eps)?)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PowerReport {
    pub theta0: f64,
    pub theta1: f64,
    pub beta: f64,
    pub n: usize,
    /// Critical value of the max statistic.
    pub critical: f64,
    pub power: f64,
}

/// Exact power of the level-beta max-statistic test of theta = theta0
/// against theta = theta1 on n iid unit-variance Gaussians: the critical
/// region is {max_i Z_i > K} with K = theta0 + Phi^{-1}((1-beta)^{1/n}),
/// and the power is 1 - Phi(K - theta1)^n.
pub fn max_test_power(theta0: f64, theta1: f64, beta: f64, n: usize) -> Result<PowerReport> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::Domain(format!("beta must be in (0,1), got {beta}")));
    }
    if theta1 < theta0 {
        return Err(Error::Domain("theta1 must be at least theta0".into()));
    }
    if n < 1 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    // ln Phi(K - theta0) = ln(1 - beta)/n, solved through the tail for
    // accuracy at large n: q = 1 - (1-beta)^{1/n}.
    let nf = n as f64;
    let q = -((1.0 - beta).ln() / nf).exp_m1();
    let z0 = special::std_normal_quantile_from_tail(q);
    let critical = theta0 + z0;
    // power = 1 - Phi(K - theta1)^n = -expm1(n * log Phi(K - theta1)).
    let z1 = critical - theta1;
    let ln_phi = (-special::std_normal_tail(z1)).ln_1p();
    let power = -(nf * ln_phi).exp_m1();
    Ok(PowerReport { theta0, theta1, beta, n, critical, power: power.clamp(0.0, 1.0) })
}
