//! Borel subsets of R^n as structured descriptors.
//!
//! Structured kinds (half-spaces, lower boxes, balls, max/sum thresholds and
//! their rotations/complements) expose exact fibers as interval unions; the
//! oracle kinds fall back to bisection (monotone indicator) or an adaptive
//! grid scan. Indicator oracles must be pure functions of their input; that
//! purity is part of the construction contract and is what makes descriptors
//! freely shareable across workers.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::interval::{Interval, IntervalUnion};
use crate::linalg::Matrix;
use crate::measure::ProductSpace;
use crate::rng;

pub type IndicatorFn = Arc<dyn Fn(&[f64]) -> bool + Send + Sync>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Monotonicity {
    Increasing,
    Decreasing,
}

/// Monte Carlo configuration. The seed is mandatory by design: there is no
/// ambient entropy anywhere in the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct McConfig {
    pub samples: usize,
    pub seed: u64,
}

impl McConfig {
    pub fn new(samples: usize, seed: u64) -> Self {
        McConfig { samples, seed }
    }
}

#[derive(Clone)]
pub enum SetDescriptor {
    Empty { dim: usize },
    Full { dim: usize },
    /// {x : normal . x <= offset}; the normal is stored with unit L2 norm.
    Halfspace { normal: Vec<f64>, offset: f64 },
    /// prod_i (-inf, corner_i]
    BoxLower { corner: Vec<f64> },
    /// {x : |x - center|_2 <= radius}
    Ball { center: Vec<f64>, radius: f64 },
    /// {x : max_i x_i > level}
    MaxThreshold { level: f64, dim: usize },
    /// {x : sum_i x_i >= level}
    SumThreshold { level: f64, dim: usize },
    /// Ball Minkowski-summed with the cube [-reach, reach]^n (the uniform
    /// enlargement of a ball); membership by coordinate-wise clamping.
    BallCube { center: Vec<f64>, radius: f64, reach: f64 },
    /// g(A) = {g x : x in A}; indicator(y) = base(g^T y).
    Rotated { base: Box<SetDescriptor>, rotation: Arc<Matrix> },
    Complement { base: Box<SetDescriptor> },
    MonotoneOracle {
        indicator: IndicatorFn,
        direction: Monotonicity,
        dim: usize,
        /// Fiber thresholds are searched inside [-window, window].
        window: f64,
    },
    GenericOracle {
        indicator: IndicatorFn,
        /// Largest number of fiber components the scan will accept.
        max_components: usize,
        /// Scan window per fiber.
        window: (f64, f64),
        dim: usize,
    },
}

use SetDescriptor::*;

impl std::fmt::Debug for SetDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Empty { dim } => write!(f, "Empty(n={dim})"),
            Full { dim } => write!(f, "Full(n={dim})"),
            Halfspace { normal, offset } => write!(f, "Halfspace(u={normal:?}, b={offset})"),
            BoxLower { corner } => write!(f, "BoxLower(a={corner:?})"),
            Ball { center, radius } => write!(f, "Ball(c={center:?}, R={radius})"),
            MaxThreshold { level, dim } => write!(f, "MaxThreshold(K={level}, n={dim})"),
            SumThreshold { level, dim } => write!(f, "SumThreshold(K={level}, n={dim})"),
            BallCube { center, radius, reach } => {
                write!(f, "BallCube(c={center:?}, R={radius}, r={reach})")
            }
            Rotated { base, .. } => write!(f, "Rotated({base:?})"),
            Complement { base } => write!(f, "Complement({base:?})"),
            MonotoneOracle { direction, dim, .. } => {
                write!(f, "MonotoneOracle({direction:?}, n={dim})")
            }
            GenericOracle { max_components, dim, .. } => {
                write!(f, "GenericOracle(k<={max_components}, n={dim})")
            }
        }
    }
}

/// Scan resolution for the generic oracle: 4096 grid cells, 40 bisection
/// refinements per detected crossing.
const ORACLE_GRID: usize = 4096;
const ORACLE_BISECTIONS: usize = 40;
const MONOTONE_TOL: f64 = 1e-9;

impl SetDescriptor {
    pub fn halfspace(mut normal: Vec<f64>, offset: f64) -> Result<Self> {
        let norm = normal.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::Domain("halfspace normal must be a nonzero vector".into()));
        }
        if (norm - 1.0).abs() > 1e-12 {
            for v in normal.iter_mut() {
                *v /= norm;
            }
        }
        Ok(Halfspace { normal, offset })
    }

    pub fn box_lower(corner: Vec<f64>) -> Self {
        BoxLower { corner }
    }

    pub fn ball(center: Vec<f64>, radius: f64) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::Domain("ball radius must be positive".into()));
        }
        Ok(Ball { center, radius })
    }

    pub fn max_threshold(level: f64, dim: usize) -> Self {
        MaxThreshold { level, dim }
    }

    pub fn sum_threshold(level: f64, dim: usize) -> Self {
        SumThreshold { level, dim }
    }

    pub fn complement(base: SetDescriptor) -> Self {
        match base {
            Complement { base } => *base,
            other => Complement { base: Box::new(other) },
        }
    }

    pub fn monotone_oracle(indicator: IndicatorFn, direction: Monotonicity, dim: usize) -> Self {
        MonotoneOracle { indicator, direction, dim, window: 64.0 }
    }

    pub fn generic_oracle(
        indicator: IndicatorFn,
        max_components: usize,
        window: (f64, f64),
        dim: usize,
    ) -> Self {
        GenericOracle { indicator, max_components, window, dim }
    }

    pub fn rotated(base: SetDescriptor, rotation: Arc<Matrix>) -> Result<Self> {
        if rotation.dim() != base.dim() {
            return Err(Error::Domain(format!(
                "rotation dimension {} does not match set dimension {}",
                rotation.dim(),
                base.dim()
            )));
        }
        Ok(match base {
            // Half-spaces and balls rotate in closed form.
            Halfspace { normal, offset } => {
                let mut moved = vec![0.0; normal.len()];
                rotation.matvec(&normal, &mut moved);
                Halfspace { normal: moved, offset }
            }
            Ball { center, radius } => {
                let mut moved = vec![0.0; center.len()];
                rotation.matvec(&center, &mut moved);
                Ball { center: moved, radius }
            }
            Rotated { base, rotation: inner } => {
                let composed = rotation.matmul(&inner);
                Rotated { base, rotation: Arc::new(composed) }
            }
            other => Rotated { base: Box::new(other), rotation },
        })
    }

    pub fn dim(&self) -> usize {
        match self {
            Empty { dim } | Full { dim } => *dim,
            Halfspace { normal, .. } => normal.len(),
            BoxLower { corner } => corner.len(),
            Ball { center, .. } | BallCube { center, .. } => center.len(),
            MaxThreshold { dim, .. } | SumThreshold { dim, .. } => *dim,
            Rotated { base, .. } => base.dim(),
            Complement { base } => base.dim(),
            MonotoneOracle { dim, .. } | GenericOracle { dim, .. } => *dim,
        }
    }

    /// Exact membership.
    pub fn indicator(&self, x: &[f64]) -> bool {
        debug_assert_eq!(x.len(), self.dim());
        match self {
            Empty { .. } => false,
            Full { .. } => true,
            Halfspace { normal, offset } => dot(normal, x) <= *offset,
            BoxLower { corner } => x.iter().zip(corner).all(|(xi, ai)| xi <= ai),
            Ball { center, radius } => dist2(x, center) <= radius * radius,
            MaxThreshold { level, .. } => x.iter().any(|xi| xi > level),
            SumThreshold { level, .. } => x.iter().sum::<f64>() >= *level,
            BallCube { center, radius, reach } => {
                let mut d2 = 0.0;
                for (xi, ci) in x.iter().zip(center) {
                    let gap = (xi - ci).abs() - reach;
                    if gap > 0.0 {
                        d2 += gap * gap;
                    }
                }
                d2 <= radius * radius
            }
            Rotated { base, rotation } => {
                let mut y = vec![0.0; x.len()];
                rotation.t_matvec(x, &mut y);
                base.indicator(&y)
            }
            Complement { base } => !base.indicator(x),
            MonotoneOracle { indicator, .. } | GenericOracle { indicator, .. } => indicator(x),
        }
    }

    /// The fiber of the set along coordinate `i` through the point `x`
    /// (the value of `x[i]` itself is irrelevant).
    pub fn fiber(&self, i: usize, x: &[f64]) -> Result<IntervalUnion> {
        let n = self.dim();
        debug_assert!(i < n && x.len() == n);
        let mut origin = x.to_vec();
        origin[i] = 0.0;
        let mut dir = vec![0.0; n];
        dir[i] = 1.0;
        self.line_section(&origin, &dir)
    }

    /// The one-dimensional section {t : origin + t * dir in A}.
    pub fn line_section(&self, origin: &[f64], dir: &[f64]) -> Result<IntervalUnion> {
        match self {
            Empty { .. } => Ok(IntervalUnion::empty()),
            Full { .. } => Ok(IntervalUnion::full()),
            Halfspace { normal, offset } => {
                Ok(below_linear(dot(normal, dir), dot(normal, origin), *offset))
            }
            SumThreshold { level, .. } => {
                // sum(origin) + t * sum(dir) >= level
                let a = dir.iter().sum::<f64>();
                let c = origin.iter().sum::<f64>();
                Ok(below_linear(-a, -c, -*level))
            }
            BoxLower { corner } => {
                let mut lo = f64::NEG_INFINITY;
                let mut hi = f64::INFINITY;
                for ((&a, &p), &d) in corner.iter().zip(origin).zip(dir) {
                    if d == 0.0 {
                        if p > a {
                            return Ok(IntervalUnion::empty());
                        }
                    } else {
                        let t = (a - p) / d;
                        if d > 0.0 {
                            hi = hi.min(t);
                        } else {
                            lo = lo.max(t);
                        }
                    }
                }
                Ok(clip_interval(lo, hi))
            }
            Ball { center, radius } => {
                let mut aa = 0.0;
                let mut bb = 0.0;
                let mut cc = -radius * radius;
                for ((&c, &p), &d) in center.iter().zip(origin).zip(dir) {
                    let rel = p - c;
                    aa += d * d;
                    bb += 2.0 * rel * d;
                    cc += rel * rel;
                }
                if aa == 0.0 {
                    return Ok(if cc <= 0.0 {
                        IntervalUnion::full()
                    } else {
                        IntervalUnion::empty()
                    });
                }
                let disc = bb * bb - 4.0 * aa * cc;
                if disc < 0.0 {
                    return Ok(IntervalUnion::empty());
                }
                let sq = disc.sqrt();
                Ok(IntervalUnion::segment((-bb - sq) / (2.0 * aa), (-bb + sq) / (2.0 * aa)))
            }
            MaxThreshold { level, .. } => {
                let mut left: Option<f64> = None; // (-inf, left)
                let mut right: Option<f64> = None; // (right, inf)
                for (&p, &d) in origin.iter().zip(dir) {
                    if d == 0.0 {
                        if p > *level {
                            return Ok(IntervalUnion::full());
                        }
                    } else {
                        let t = (level - p) / d;
                        if d > 0.0 {
                            right = Some(right.map_or(t, |r: f64| r.min(t)));
                        } else {
                            left = Some(left.map_or(t, |l: f64| l.max(t)));
                        }
                    }
                }
                let mut parts = Vec::new();
                if let Some(l) = left {
                    parts.push(Interval::new(f64::NEG_INFINITY, l));
                }
                if let Some(r) = right {
                    parts.push(Interval::new(r, f64::INFINITY));
                }
                Ok(IntervalUnion::from_components(parts))
            }
            BallCube { center, radius, reach } => {
                // Axis-aligned sections only (all that uniform-enlargement
                // boundary estimation needs).
                let axis = single_axis(dir).ok_or_else(|| {
                    Error::Capability("BallCube supports axis fibers only".into())
                })?;
                let mut rest = 0.0;
                for (j, (&c, &p)) in center.iter().zip(origin).enumerate() {
                    if j != axis {
                        let gap = (p - c).abs() - reach;
                        if gap > 0.0 {
                            rest += gap * gap;
                        }
                    }
                }
                let slack = radius * radius - rest;
                if slack < 0.0 {
                    return Ok(IntervalUnion::empty());
                }
                let w = slack.sqrt() + reach;
                let c = center[axis];
                let d = dir[axis];
                let lo = (c - w - origin[axis]) / d;
                let hi = (c + w - origin[axis]) / d;
                Ok(IntervalUnion::segment(lo.min(hi), lo.max(hi)))
            }
            Rotated { base, rotation } => {
                let n = origin.len();
                let mut p = vec![0.0; n];
                let mut d = vec![0.0; n];
                rotation.t_matvec(origin, &mut p);
                rotation.t_matvec(dir, &mut d);
                base.line_section(&p, &d)
            }
            Complement { base } => Ok(base.line_section(origin, dir)?.complement()),
            MonotoneOracle { indicator, direction, window, .. } => {
                monotone_section(indicator, *direction, *window, origin, dir)
            }
            GenericOracle { indicator, max_components, window, .. } => {
                oracle_scan(indicator, *max_components, *window, origin, dir)
            }
        }
    }

    /// Minkowski sum with the cube [-r, r]^n, as a new descriptor.
    pub fn enlarge(&self, r: f64) -> Result<SetDescriptor> {
        if !(r > 0.0) {
            return Err(Error::Domain(format!("enlargement radius must be positive, got {r}")));
        }
        Ok(match self {
            Empty { dim } => Empty { dim: *dim },
            Full { dim } => Full { dim: *dim },
            Halfspace { normal, offset } => {
                let l1: f64 = normal.iter().map(|v| v.abs()).sum();
                Halfspace { normal: normal.clone(), offset: offset + r * l1 }
            }
            BoxLower { corner } => BoxLower { corner: corner.iter().map(|a| a + r).collect() },
            MaxThreshold { level, dim } => MaxThreshold { level: level - r, dim: *dim },
            SumThreshold { level, dim } => {
                SumThreshold { level: level - r * *dim as f64, dim: *dim }
            }
            Ball { center, radius } => {
                BallCube { center: center.clone(), radius: *radius, reach: r }
            }
            BallCube { center, radius, reach } => {
                BallCube { center: center.clone(), radius: *radius, reach: reach + r }
            }
            MonotoneOracle { indicator, direction, dim, window } => {
                let inner = indicator.clone();
                // x is in A + [-r,r]^n iff shifting every coordinate toward
                // the set's growth direction lands in A.
                let shift = match direction {
                    Monotonicity::Increasing => r,
                    Monotonicity::Decreasing => -r,
                };
                let moved: IndicatorFn = Arc::new(move |x: &[f64]| {
                    let probe: Vec<f64> = x.iter().map(|v| v + shift).collect();
                    inner(&probe)
                });
                MonotoneOracle {
                    indicator: moved,
                    direction: *direction,
                    dim: *dim,
                    window: *window,
                }
            }
            Rotated { .. } | Complement { .. } | GenericOracle { .. } => {
                return Err(Error::Capability(
                    "uniform enlargement is not supported for this descriptor kind".into(),
                ))
            }
        })
    }

    /// Coordinate monotonicity, when it is known from the structure.
    pub fn monotonicity(&self) -> Option<Monotonicity> {
        match self {
            Halfspace { normal, .. } => {
                if normal.iter().all(|&v| v <= 0.0) {
                    Some(Monotonicity::Increasing)
                } else if normal.iter().all(|&v| v >= 0.0) {
                    Some(Monotonicity::Decreasing)
                } else {
                    None
                }
            }
            BoxLower { .. } => Some(Monotonicity::Decreasing),
            MaxThreshold { .. } | SumThreshold { .. } => Some(Monotonicity::Increasing),
            Complement { base } => base.monotonicity().map(|m| match m {
                Monotonicity::Increasing => Monotonicity::Decreasing,
                Monotonicity::Decreasing => Monotonicity::Increasing,
            }),
            MonotoneOracle { direction, .. } => Some(*direction),
            _ => None,
        }
    }

    pub fn is_monotone(&self) -> bool {
        self.monotonicity().is_some()
    }

    /// Convexity known from the structure (rotations preserve it).
    pub fn is_convex(&self) -> bool {
        match self {
            Empty { .. } | Full { .. } | Halfspace { .. } | BoxLower { .. } | Ball { .. }
            | SumThreshold { .. } | BallCube { .. } => true,
            Rotated { base, .. } => base.is_convex(),
            _ => false,
        }
    }

    /// Invariance under a transitive group of coordinate permutations, when
    /// the structure makes it plain.
    pub fn is_transitive(&self) -> bool {
        match self {
            MaxThreshold { .. } | SumThreshold { .. } | Empty { .. } | Full { .. } => true,
            Ball { center, .. } => center.iter().all(|&c| c == center[0]),
            BoxLower { corner } => corner.iter().all(|&a| a == corner[0]),
            Complement { base } => base.is_transitive(),
            _ => false,
        }
    }

    /// Monte Carlo measure with binomial standard error.
    pub fn measure_mc(&self, space: &ProductSpace, cfg: McConfig) -> Result<(f64, f64)> {
        if cfg.samples < 100 {
            return Err(Error::Domain("measure_mc requires at least 100 samples".into()));
        }
        match self {
            Empty { .. } => return Ok((0.0, 0.0)),
            Full { .. } => return Ok((1.0, 0.0)),
            _ => {}
        }
        let n = self.dim();
        if space.dim() != n {
            return Err(Error::Domain(format!(
                "space dimension {} does not match set dimension {n}",
                space.dim()
            )));
        }
        let mut hits = 0u64;
        let mut x = vec![0.0; n];
        for k in 0..cfg.samples {
            space.sample_into(cfg.seed, k as u64, &mut x);
            if self.indicator(&x) {
                hits += 1;
            }
        }
        let p = hits as f64 / cfg.samples as f64;
        let stderr = (p * (1.0 - p) / cfg.samples as f64).sqrt();
        Ok((p, stderr))
    }

    /// Spot-checks that membership probes of A stay inside the double
    /// enlargement of the eroded set. Statistical, not certifying: structured
    /// kinds use closed forms, oracle kinds probe the epsilon-balls at random.
    pub fn regularity_spotcheck(
        &self,
        eps: f64,
        space: &ProductSpace,
        probes: usize,
        seed: u64,
    ) -> Result<RegularityReport> {
        let n = self.dim();
        let mut points = Vec::with_capacity(probes);
        let mut x = vec![0.0; n];
        let mut attempts = 0u64;
        let attempt_cap = (probes as u64) * 10_000;
        while points.len() < probes && attempts < attempt_cap {
            space.sample_into(seed, attempts, &mut x);
            attempts += 1;
            if self.indicator(&x) {
                points.push(x.clone());
            }
        }
        if points.is_empty() {
            return Err(Error::Domain(
                "could not find membership probes; the set looks null".into(),
            ));
        }
        self.regularity_spotcheck_at(eps, &points, seed)
    }

    /// Same check against caller-provided probe points of A.
    pub fn regularity_spotcheck_at(
        &self,
        eps: f64,
        points: &[Vec<f64>],
        seed: u64,
    ) -> Result<RegularityReport> {
        if !(eps > 0.0) {
            return Err(Error::Domain("epsilon must be positive".into()));
        }
        let mut violations = 0usize;
        for (idx, p) in points.iter().enumerate() {
            if !self.in_double_enlarged_erosion(eps, p, rng::subseed(seed, idx as u64))? {
                violations += 1;
            }
        }
        Ok(RegularityReport { probes: points.len(), violations, eps })
    }

    fn in_double_enlarged_erosion(&self, eps: f64, x: &[f64], seed: u64) -> Result<bool> {
        match self {
            // Erosion and dilation of these kinds are parameter shifts.
            Halfspace { normal, offset } => Ok(dot(normal, x) < offset + eps),
            Ball { center, radius } => {
                if *radius <= eps {
                    return Ok(false);
                }
                Ok(dist2(x, center).sqrt() < radius + eps)
            }
            BoxLower { corner } => {
                // Euclidean distance to the eroded box must stay under 2 eps.
                let mut d2 = 0.0;
                for (xi, ai) in x.iter().zip(corner) {
                    let gap = xi - (ai - eps);
                    if gap > 0.0 {
                        d2 += gap * gap;
                    }
                }
                Ok(d2.sqrt() < 2.0 * eps)
            }
            Empty { .. } => Ok(false),
            Full { .. } => Ok(true),
            _ => self.probe_double_enlarged_erosion(eps, x, seed),
        }
    }

    /// Probabilistic erosion membership: x is accepted when every probe of
    /// the closed eps-ball around it is in A.
    fn eroded_probe(&self, eps: f64, x: &[f64], seed: u64) -> bool {
        let n = x.len();
        let mut y = x.to_vec();
        for i in 0..n {
            for s in [-1.0, 1.0] {
                y[i] = x[i] + s * eps;
                if !self.indicator(&y) {
                    return false;
                }
            }
            y[i] = x[i];
        }
        for probe in 0..16u64 {
            let mut norm = 0.0;
            for i in 0..n {
                let u = rng::uniform01(seed, probe, i as u64);
                y[i] = crate::special::std_normal_quantile(u);
                norm += y[i] * y[i];
            }
            let norm = norm.sqrt().max(1e-300);
            for i in 0..n {
                y[i] = x[i] + eps * y[i] / norm;
            }
            if !self.indicator(&y) {
                return false;
            }
        }
        true
    }

    fn probe_double_enlarged_erosion(&self, eps: f64, x: &[f64], seed: u64) -> Result<bool> {
        // x itself may already sit in the erosion.
        if self.eroded_probe(eps, x, rng::subseed(seed, 0)) {
            return Ok(true);
        }
        let n = x.len();
        let mut y = vec![0.0; n];
        for probe in 0..64u64 {
            let mut norm = 0.0;
            for i in 0..n {
                let u = rng::uniform01(seed, probe + 1, i as u64);
                y[i] = crate::special::std_normal_quantile(u);
                norm += y[i] * y[i];
            }
            let norm = norm.sqrt().max(1e-300);
            let radius = 1.99 * eps * rng::uniform01(seed, probe + 1, n as u64).sqrt();
            let candidate: Vec<f64> = (0..n).map(|i| x[i] + radius * y[i] / norm).collect();
            if self.indicator(&candidate)
                && self.eroded_probe(eps, &candidate, rng::subseed(seed, probe + 1))
            {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Measured effect of one uniform enlargement step.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnlargementResult {
    pub r: f64,
    pub measure_before: f64,
    pub measure_after: f64,
    /// Combined stderr of the two estimates (same batch, nested events).
    pub stderr: f64,
}

/// Measures A and A + [-r, r]^n on one shared batch.
pub fn measure_enlargement(
    set: &SetDescriptor,
    space: &ProductSpace,
    r: f64,
    cfg: McConfig,
) -> crate::error::Result<EnlargementResult> {
    let grown = set.enlarge(r)?;
    let n = space.dim();
    let mut x = vec![0.0; n];
    let mut before = 0u64;
    let mut after = 0u64;
    for k in 0..cfg.samples {
        space.sample_into(cfg.seed, k as u64, &mut x);
        if set.indicator(&x) {
            before += 1;
            after += 1;
        } else if grown.indicator(&x) {
            after += 1;
        }
    }
    let nf = cfg.samples as f64;
    let (b, a) = (before as f64 / nf, after as f64 / nf);
    // Variance of the difference is driven by the shell alone.
    let shell = a - b;
    let stderr = (shell * (1.0 - shell) / nf).sqrt();
    Ok(EnlargementResult { r, measure_before: b, measure_after: a, stderr })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegularityReport {
    pub probes: usize,
    pub violations: usize,
    pub eps: f64,
}

impl RegularityReport {
    pub fn violation_fraction(&self) -> f64 {
        self.violations as f64 / self.probes as f64
    }
}

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn single_axis(dir: &[f64]) -> Option<usize> {
    let mut axis = None;
    for (i, &d) in dir.iter().enumerate() {
        if d != 0.0 {
            if axis.is_some() {
                return None;
            }
            axis = Some(i);
        }
    }
    axis
}

fn clip_interval(lo: f64, hi: f64) -> IntervalUnion {
    if lo > hi {
        IntervalUnion::empty()
    } else if lo == f64::NEG_INFINITY && hi == f64::INFINITY {
        IntervalUnion::full()
    } else {
        IntervalUnion::segment(lo, hi)
    }
}

/// Section of {t : a t + c <= b}.
fn below_linear(a: f64, c: f64, b: f64) -> IntervalUnion {
    if a.abs() < 1e-300 {
        return if c <= b { IntervalUnion::full() } else { IntervalUnion::empty() };
    }
    let t = (b - c) / a;
    if !t.is_finite() {
        return if (b - c).signum() * a.signum() > 0.0 {
            IntervalUnion::full()
        } else {
            IntervalUnion::empty()
        };
    }
    if a > 0.0 {
        IntervalUnion::ray_le(t)
    } else {
        IntervalUnion::ray_ge(t)
    }
}

fn monotone_section(
    indicator: &IndicatorFn,
    direction: Monotonicity,
    window: f64,
    origin: &[f64],
    dir: &[f64],
) -> Result<IntervalUnion> {
    let axis = single_axis(dir)
        .ok_or_else(|| Error::Capability("monotone oracle supports axis fibers only".into()))?;
    if dir[axis] != 1.0 || origin[axis] != 0.0 {
        return Err(Error::Capability(
            "monotone oracle sections must be taken along unit axis fibers".into(),
        ));
    }
    let mut probe = origin.to_vec();
    let mut eval = |y: f64| {
        probe[axis] = y;
        indicator(&probe)
    };
    // The fiber of a monotone set is a ray (or everything or nothing).
    let increasing = matches!(direction, Monotonicity::Increasing);
    let (lo, hi) = (-window, window);
    let (at_lo, at_hi) = (eval(lo), eval(hi));
    let (inside_low, inside_high) = if increasing { (at_hi, at_lo) } else { (at_lo, at_hi) };
    // inside_low: membership on the side where it should hold if nonempty.
    if !inside_low {
        return Ok(IntervalUnion::empty());
    }
    if inside_high {
        return Ok(IntervalUnion::full());
    }
    // Bisect the single threshold.
    let (mut inside, mut outside) = if increasing { (hi, lo) } else { (lo, hi) };
    while (inside - outside).abs() > MONOTONE_TOL {
        let mid = 0.5 * (inside + outside);
        if eval(mid) {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    let threshold = 0.5 * (inside + outside);
    Ok(if increasing {
        IntervalUnion::ray_ge(threshold)
    } else {
        IntervalUnion::ray_le(threshold)
    })
}

fn oracle_scan(
    indicator: &IndicatorFn,
    max_components: usize,
    window: (f64, f64),
    origin: &[f64],
    dir: &[f64],
) -> Result<IntervalUnion> {
    let (l, r) = window;
    let n = origin.len();
    let mut probe = vec![0.0; n];
    let mut eval = |t: f64| {
        for i in 0..n {
            probe[i] = origin[i] + t * dir[i];
        }
        indicator(&probe)
    };
    let h = (r - l) / ORACLE_GRID as f64;
    let mut states: Vec<bool> = Vec::with_capacity(ORACLE_GRID + 1);
    for k in 0..=ORACLE_GRID {
        states.push(eval(l + k as f64 * h));
    }
    let mut crossings: Vec<(f64, bool)> = Vec::new(); // (t, entering)
    for k in 0..ORACLE_GRID {
        if states[k] != states[k + 1] {
            let mut a = l + k as f64 * h;
            let mut b = a + h;
            let target = states[k + 1];
            for _ in 0..ORACLE_BISECTIONS {
                let mid = 0.5 * (a + b);
                if eval(mid) == target {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            crossings.push((0.5 * (a + b), target));
        }
    }
    let mut parts = Vec::new();
    // Beyond the scan window the set keeps the state seen at the window edge.
    let mut open: Option<f64> = if states[0] { Some(f64::NEG_INFINITY) } else { None };
    for (t, entering) in crossings {
        if entering {
            open = Some(t);
        } else if let Some(start) = open.take() {
            parts.push(Interval::new(start, t));
        }
    }
    if let Some(start) = open {
        parts.push(Interval::new(start, f64::INFINITY));
    }
    let section = IntervalUnion::from_components(parts);
    if section.components().len() > max_components {
        return Err(Error::FiberResolution(format!(
            "fiber scan found {} components, more than the declared maximum {}",
            section.components().len(),
            max_components
        )));
    }
    Ok(section)
}

/// Spot check that an indicator really is monotone along fibers: draws random
/// (x, i, y < y') triples and verifies membership never decreases (increasing)
/// or never increases (decreasing).
pub fn validate_monotone_oracle(
    indicator: &IndicatorFn,
    direction: Monotonicity,
    space: &ProductSpace,
    checks: usize,
    seed: u64,
) -> bool {
    let n = space.dim();
    let mut x = vec![0.0; n];
    for k in 0..checks {
        space.sample_into(seed, k as u64, &mut x);
        let i = (rng::mix3(seed, k as u64, 1_000_003) % n as u64) as usize;
        let u1 = rng::uniform01(seed, k as u64, n as u64 + 1);
        let u2 = rng::uniform01(seed, k as u64, n as u64 + 2);
        let (a, b) = (8.0 * (u1 - 0.5), 8.0 * (u2 - 0.5));
        let (y_low, y_high) = if a < b { (a, b) } else { (b, a) };
        let keep = x[i];
        x[i] = y_low;
        let at_low = indicator(&x);
        x[i] = y_high;
        let at_high = indicator(&x);
        x[i] = keep;
        let ok = match direction {
            Monotonicity::Increasing => !at_low || at_high,
            Monotonicity::Decreasing => !at_high || at_low,
        };
        if !ok {
            return false;
        }
    }
    true
}
