//! Influence estimators.
//!
//! The influence of coordinate i on a set A under a product measure is the
//! expected lower Minkowski content of the one-dimensional fiber of A in
//! direction i. The h-influence replaces the content by h(fiber measure) for
//! a profile h on the unit interval; with h the isoperimetric profile of the
//! factor the two notions coincide on monotone sets and the content dominates
//! in general, which is what connects per-coordinate influences to boundary
//! measure.
//!
//! All estimators share one counter-based sample stream per run (common
//! random numbers): coordinates, complements, and content-vs-profile
//! comparisons are evaluated on identical points, which is what makes the
//! matched-pair tests in this crate sharp.

use crate::error::{Error, Result};
use crate::interval::IntervalUnion;
use crate::measure::{Measure1D, ProductSpace};
use crate::set::{McConfig, SetDescriptor};

#[derive(Clone, Debug, PartialEq)]
pub struct InfluenceEstimate {
    pub coordinate: usize,
    pub value: f64,
    pub stderr: f64,
    pub samples: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InfluenceProfile {
    pub estimates: Vec<InfluenceEstimate>,
    /// Estimate of the influence sum with its own (common-random-number)
    /// standard error; tighter than summing per-coordinate errors.
    pub sum: f64,
    pub sum_stderr: f64,
    pub max: f64,
    pub argmax: usize,
}

/// Profile h mapping the unit interval into [0, inf) for h-influences.
#[derive(Clone)]
pub enum HProfile {
    /// Ent(t) = -t log t - (1-t) log(1-t)
    Entropy,
    /// t (1 - t)
    Variance,
    /// density(quantile(t)) of the given factor measure
    IsoProfile(Measure1D),
    Custom { name: String, f: std::sync::Arc<dyn Fn(f64) -> f64 + Send + Sync> },
}

impl HProfile {
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            HProfile::Entropy => entropy(t).unwrap_or(0.0),
            HProfile::Variance => t * (1.0 - t),
            HProfile::IsoProfile(m) => {
                if t <= 0.0 || t >= 1.0 {
                    0.0
                } else {
                    m.iso_profile(t).expect("t in (0,1)")
                }
            }
            HProfile::Custom { f, .. } => f(t),
        }
    }

    pub fn name(&self) -> String {
        match self {
            HProfile::Entropy => "entropy".into(),
            HProfile::Variance => "variance".into(),
            HProfile::IsoProfile(_) => "iso_profile".into(),
            HProfile::Custom { name, .. } => name.clone(),
        }
    }
}

/// Ent(x) = -x log x - (1-x) log(1-x), natural logarithm, Ent(0) = Ent(1) = 0.
pub fn entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("entropy requires x in [0,1], got {x}")));
    }
    if x == 0.0 || x == 1.0 {
        return Ok(0.0);
    }
    Ok(-x * x.ln() - (1.0 - x) * (1.0 - x).ln())
}

/// Inverse of Ent on [0, 1/2]: the x in [0, 1/2] with Ent(x) = y.
pub fn entropy_inverse(y: f64) -> Result<f64> {
    let ln2 = std::f64::consts::LN_2;
    if !(0.0..=ln2).contains(&y) {
        return Err(Error::Domain(format!("entropy_inverse requires y in [0, log 2], got {y}")));
    }
    if y == 0.0 {
        return Ok(0.0);
    }
    let mut lo = 0.0f64;
    let mut hi = 0.5f64;
    // Ent is strictly increasing on [0, 1/2]; plain bisection to 1e-12.
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if entropy(mid)? < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// theta(y) = y / (-2 log y) on (0, 1/2].
pub fn theta(y: f64) -> Result<f64> {
    if !(y > 0.0 && y <= 0.5) {
        return Err(Error::Domain(format!("theta requires y in (0, 1/2], got {y}")));
    }
    Ok(y / (-2.0 * y.ln()))
}

/// Lower bound on the h-influence in terms of the entropy influence:
/// (delta / 2) * i_ent, where delta is the infimum of h/Ent over
/// [theta(i_ent/2), 1 - theta(i_ent/2)].
///
/// The infimum has no closed form; it is taken over a 10^4-point grid that is
/// log-spaced toward the interval endpoints (where h/Ent extremes live for
/// every shipped profile), then refined locally by ternary search.
pub fn ent_to_h_bound(h: &HProfile, i_ent: f64) -> Result<f64> {
    let ln2 = std::f64::consts::LN_2;
    if !(i_ent > 0.0 && i_ent <= ln2) {
        return Err(Error::Domain(format!(
            "ent_to_h_bound requires entropy influence in (0, log 2], got {i_ent}"
        )));
    }
    let lo = theta(i_ent / 2.0)?;
    let hi = 1.0 - lo;
    let ratio = |x: f64| {
        let e = entropy(x).unwrap();
        if e <= 0.0 {
            f64::INFINITY
        } else {
            h.eval(x) / e
        }
    };
    const HALF_GRID: usize = 5_000;
    let mut best_x = lo;
    let mut best = ratio(lo);
    let log_lo = lo.ln();
    let log_mid = 0.5f64.ln();
    for k in 0..=HALF_GRID {
        let s = k as f64 / HALF_GRID as f64;
        let x = (log_lo + s * (log_mid - log_lo)).exp();
        for cand in [x, 1.0 - x] {
            if cand < lo || cand > hi {
                continue;
            }
            let v = ratio(cand);
            if v < best {
                best = v;
                best_x = cand;
            }
        }
    }
    // Local ternary refinement around the best grid point.
    let mut a = (best_x * 0.98).max(lo);
    let mut b = (best_x * 1.02).min(hi);
    for _ in 0..80 {
        let m1 = a + (b - a) / 3.0;
        let m2 = b - (b - a) / 3.0;
        if ratio(m1) < ratio(m2) {
            b = m2;
        } else {
            a = m1;
        }
    }
    let refined = ratio(0.5 * (a + b)).min(best);
    Ok(0.5 * refined * i_ent)
}

struct Accumulator {
    sum: f64,
    sumsq: f64,
}

impl Accumulator {
    fn new() -> Self {
        Accumulator { sum: 0.0, sumsq: 0.0 }
    }

    fn push(&mut self, v: f64) {
        self.sum += v;
        self.sumsq += v * v;
    }

    fn finish(&self, n: usize) -> (f64, f64) {
        let nf = n as f64;
        let mean = self.sum / nf;
        let var = (self.sumsq / nf - mean * mean).max(0.0);
        (mean, (var / nf).sqrt())
    }
}

fn check_space(set: &SetDescriptor, space: &ProductSpace) -> Result<()> {
    if set.dim() != space.dim() {
        return Err(Error::Domain(format!(
            "set dimension {} does not match space dimension {}",
            set.dim(),
            space.dim()
        )));
    }
    Ok(())
}

/// Monte Carlo estimate of the influence of coordinate `i`: the mean Minkowski
/// content of the fiber of A along i under the product measure.
pub fn geometric_influence(
    set: &SetDescriptor,
    space: &ProductSpace,
    i: usize,
    cfg: McConfig,
) -> Result<InfluenceEstimate> {
    check_space(set, space)?;
    let n = space.dim();
    if i >= n {
        return Err(Error::Domain(format!("coordinate {i} out of range for dimension {n}")));
    }
    let mut acc = Accumulator::new();
    let mut x = vec![0.0; n];
    for k in 0..cfg.samples {
        space.sample_into(cfg.seed, k as u64, &mut x);
        let fiber = set.fiber(i, &x)?;
        acc.push(fiber.minkowski_content(space.factor(i)));
    }
    let (value, stderr) = acc.finish(cfg.samples);
    Ok(InfluenceEstimate { coordinate: i, value, stderr, samples: cfg.samples, seed: cfg.seed })
}

/// Monte Carlo estimate of the h-influence of coordinate `i`: the mean of
/// h(fiber measure).
pub fn h_influence(
    set: &SetDescriptor,
    space: &ProductSpace,
    h: &HProfile,
    i: usize,
    cfg: McConfig,
) -> Result<InfluenceEstimate> {
    check_space(set, space)?;
    let n = space.dim();
    let mut acc = Accumulator::new();
    let mut x = vec![0.0; n];
    for k in 0..cfg.samples {
        space.sample_into(cfg.seed, k as u64, &mut x);
        let fiber = set.fiber(i, &x)?;
        acc.push(h.eval(fiber.measure(space.factor(i))));
    }
    let (value, stderr) = acc.finish(cfg.samples);
    Ok(InfluenceEstimate { coordinate: i, value, stderr, samples: cfg.samples, seed: cfg.seed })
}

/// Per-sample fiber contents for every coordinate at once. Specialized to
/// O(n) total work for the structured kinds that show up in large suites;
/// the generic path takes a fiber per coordinate.
fn fiber_contents_all(
    set: &SetDescriptor,
    space: &ProductSpace,
    x: &[f64],
    out: &mut [f64],
) -> Result<()> {
    use SetDescriptor::*;
    let n = x.len();
    match set {
        Empty { .. } | Full { .. } => out.iter_mut().for_each(|v| *v = 0.0),
        Halfspace { normal, offset } => {
            let total: f64 = normal.iter().zip(x).map(|(u, v)| u * v).sum();
            for i in 0..n {
                let u = normal[i];
                if u == 0.0 {
                    out[i] = 0.0;
                    continue;
                }
                let partial = total - u * x[i];
                out[i] = space.factor(i).density((offset - partial) / u);
            }
        }
        BoxLower { corner } => {
            let mut outside = 0usize;
            let mut outside_at = usize::MAX;
            for i in 0..n {
                if x[i] > corner[i] {
                    outside += 1;
                    outside_at = i;
                }
            }
            for v in out.iter_mut() {
                *v = 0.0;
            }
            match outside {
                0 => {
                    for i in 0..n {
                        out[i] = space.factor(i).density(corner[i]);
                    }
                }
                1 => out[outside_at] = space.factor(outside_at).density(corner[outside_at]),
                _ => {}
            }
        }
        MaxThreshold { level, .. } => {
            // Fiber along i is R when another coordinate already exceeds the
            // level (content 0), the upper ray at the level otherwise.
            let mut above = 0usize;
            let mut above_at = usize::MAX;
            for i in 0..n {
                if x[i] > *level {
                    above += 1;
                    above_at = i;
                }
            }
            for v in out.iter_mut() {
                *v = 0.0;
            }
            match above {
                0 => {
                    for i in 0..n {
                        out[i] = space.factor(i).density(*level);
                    }
                }
                1 => out[above_at] = space.factor(above_at).density(*level),
                _ => {}
            }
        }
        SumThreshold { level, .. } => {
            let total: f64 = x.iter().sum();
            for i in 0..n {
                out[i] = space.factor(i).density(level - (total - x[i]));
            }
        }
        Ball { center, radius } => {
            let mut d2 = 0.0;
            for i in 0..n {
                let rel = x[i] - center[i];
                d2 += rel * rel;
            }
            for i in 0..n {
                let rel = x[i] - center[i];
                let rest = d2 - rel * rel;
                let slack = radius * radius - rest;
                out[i] = if slack > 0.0 {
                    let w = slack.sqrt();
                    let m = space.factor(i);
                    m.density(center[i] - w) + m.density(center[i] + w)
                } else {
                    0.0
                };
            }
        }
        Complement { base } => {
            // Fibers of the complement share every boundary point.
            fiber_contents_all(base, space, x, out)?;
        }
        Rotated { base, rotation } => {
            // One O(n^2) transform per sample; each coordinate fiber is a
            // line section of the base set along a row of the rotation.
            let mut y = vec![0.0; n];
            rotation.t_matvec(x, &mut y);
            let mut origin = vec![0.0; n];
            let mut dir = vec![0.0; n];
            for i in 0..n {
                for j in 0..n {
                    dir[j] = rotation.at(i, j);
                    origin[j] = y[j] - x[i] * dir[j];
                }
                let section = base.line_section(&origin, &dir)?;
                out[i] = section.minkowski_content(space.factor(i));
            }
        }
        _ => {
            for i in 0..n {
                let fiber = set.fiber(i, x)?;
                out[i] = fiber.minkowski_content(space.factor(i));
            }
        }
    }
    Ok(())
}

/// Per-sample fiber measures for every coordinate at once (h-influences).
fn fiber_measures_all(
    set: &SetDescriptor,
    space: &ProductSpace,
    x: &[f64],
    out: &mut [f64],
) -> Result<()> {
    use SetDescriptor::*;
    let n = x.len();
    match set {
        Empty { .. } => out.iter_mut().for_each(|v| *v = 0.0),
        Full { .. } => out.iter_mut().for_each(|v| *v = 1.0),
        Halfspace { normal, offset } => {
            let total: f64 = normal.iter().zip(x).map(|(u, v)| u * v).sum();
            for i in 0..n {
                let u = normal[i];
                if u == 0.0 {
                    out[i] = if total - u * x[i] <= *offset { 1.0 } else { 0.0 };
                    continue;
                }
                let endpoint = (offset - (total - u * x[i])) / u;
                out[i] = if u > 0.0 {
                    space.factor(i).cdf(endpoint)
                } else {
                    space.factor(i).upper_tail(endpoint)
                };
            }
        }
        BoxLower { corner } => {
            let mut outside = 0usize;
            let mut outside_at = usize::MAX;
            for i in 0..n {
                if x[i] > corner[i] {
                    outside += 1;
                    outside_at = i;
                }
            }
            for v in out.iter_mut() {
                *v = 0.0;
            }
            match outside {
                0 => {
                    for i in 0..n {
                        out[i] = space.factor(i).cdf(corner[i]);
                    }
                }
                1 => out[outside_at] = space.factor(outside_at).cdf(corner[outside_at]),
                _ => {}
            }
        }
        MaxThreshold { level, .. } => {
            let mut above = 0usize;
            let mut above_at = usize::MAX;
            for i in 0..n {
                if x[i] > *level {
                    above += 1;
                    above_at = i;
                }
            }
            for i in 0..n {
                out[i] = if above == 0 || (above == 1 && above_at == i) {
                    space.factor(i).upper_tail(*level)
                } else {
                    1.0
                };
            }
        }
        SumThreshold { level, .. } => {
            let total: f64 = x.iter().sum();
            for i in 0..n {
                out[i] = space.factor(i).upper_tail(level - (total - x[i]));
            }
        }
        Ball { center, radius } => {
            let mut d2 = 0.0;
            for i in 0..n {
                let rel = x[i] - center[i];
                d2 += rel * rel;
            }
            for i in 0..n {
                let rel = x[i] - center[i];
                let rest = d2 - rel * rel;
                let slack = radius * radius - rest;
                out[i] = if slack > 0.0 {
                    let w = slack.sqrt();
                    let m = space.factor(i);
                    (m.cdf(center[i] + w) - m.cdf(center[i] - w)).max(0.0)
                } else {
                    0.0
                };
            }
        }
        Complement { base } => {
            fiber_measures_all(base, space, x, out)?;
            for v in out.iter_mut() {
                *v = 1.0 - *v;
            }
        }
        Rotated { base, rotation } => {
            let mut y = vec![0.0; n];
            rotation.t_matvec(x, &mut y);
            let mut origin = vec![0.0; n];
            let mut dir = vec![0.0; n];
            for i in 0..n {
                for j in 0..n {
                    dir[j] = rotation.at(i, j);
                    origin[j] = y[j] - x[i] * dir[j];
                }
                let section = base.line_section(&origin, &dir)?;
                out[i] = section.measure(space.factor(i));
            }
        }
        _ => {
            for i in 0..n {
                let fiber = set.fiber(i, x)?;
                out[i] = fiber.measure(space.factor(i));
            }
        }
    }
    Ok(())
}

fn profile_from_values(
    set: &SetDescriptor,
    space: &ProductSpace,
    cfg: McConfig,
    per_sample: impl Fn(&SetDescriptor, &ProductSpace, &[f64], &mut [f64]) -> Result<()>,
) -> Result<InfluenceProfile> {
    check_space(set, space)?;
    let n = space.dim();
    let mut accs: Vec<Accumulator> = (0..n).map(|_| Accumulator::new()).collect();
    let mut total_acc = Accumulator::new();
    let mut x = vec![0.0; n];
    let mut vals = vec![0.0; n];
    for k in 0..cfg.samples {
        space.sample_into(cfg.seed, k as u64, &mut x);
        per_sample(set, space, &x, &mut vals)?;
        let mut total = 0.0;
        for i in 0..n {
            accs[i].push(vals[i]);
            total += vals[i];
        }
        total_acc.push(total);
    }
    let estimates: Vec<InfluenceEstimate> = accs
        .iter()
        .enumerate()
        .map(|(i, acc)| {
            let (value, stderr) = acc.finish(cfg.samples);
            InfluenceEstimate { coordinate: i, value, stderr, samples: cfg.samples, seed: cfg.seed }
        })
        .collect();
    let (sum, sum_stderr) = total_acc.finish(cfg.samples);
    let (argmax, max) = estimates
        .iter()
        .map(|e| e.value)
        .enumerate()
        .fold((0usize, f64::NEG_INFINITY), |best, (i, v)| if v > best.1 { (i, v) } else { best });
    Ok(InfluenceProfile { estimates, sum, sum_stderr, max, argmax })
}

/// Influences of every coordinate on one shared sample batch.
pub fn influence_profile(
    set: &SetDescriptor,
    space: &ProductSpace,
    cfg: McConfig,
) -> Result<InfluenceProfile> {
    profile_from_values(set, space, cfg, fiber_contents_all)
}

/// h-influences of every coordinate on one shared sample batch.
pub fn h_influence_profile(
    set: &SetDescriptor,
    space: &ProductSpace,
    h: &HProfile,
    cfg: McConfig,
) -> Result<InfluenceProfile> {
    profile_from_values(set, space, cfg, |set, space, x, out| {
        fiber_measures_all(set, space, x, out)?;
        for v in out.iter_mut() {
            *v = h.eval(*v);
        }
        Ok(())
    })
}

/// Fiber measure of A along coordinate i through x.
pub fn fiber_measure(
    set: &SetDescriptor,
    space: &ProductSpace,
    i: usize,
    x: &[f64],
) -> Result<f64> {
    let fiber: IntervalUnion = set.fiber(i, x)?;
    Ok(fiber.measure(space.factor(i)))
}
