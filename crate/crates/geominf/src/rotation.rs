//! Haar-random orthogonal matrices and influence sums under rotation.
//!
//! The Gaussian product measure is rotation invariant but the influence sum
//! is not: a half-space of measure 1/2 carries an influence sum of order 1
//! when axis-aligned and of order sqrt(n) along the diagonal. The experiments
//! here sample Haar rotations (QR of a Gaussian matrix with the positive-
//! diagonal sign convention), track per-rotation influence sums, and test
//! the mean against the sqrt(n)-scaled reference.

use std::sync::Arc;

use crate::bounds::{BoundContext, BoundReport};
use crate::error::{Error, Result};
use crate::influence::influence_profile;
use crate::linalg::{qr_decompose, Matrix};
use crate::measure::ProductSpace;
use crate::rng;
use crate::set::{McConfig, SetDescriptor};
use crate::special;

#[derive(Clone, Debug)]
pub struct OrthogonalMatrix {
    matrix: Arc<Matrix>,
    seed: u64,
}

impl OrthogonalMatrix {
    pub fn matrix(&self) -> &Arc<Matrix> {
        &self.matrix
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Max entrywise deviation of M^T M from the identity.
    pub fn orthogonality_error(&self) -> f64 {
        self.matrix.orthogonality_error()
    }

    pub fn det(&self) -> f64 {
        self.matrix.det()
    }
}

/// Draws a Haar-distributed orthogonal matrix: QR of an n x n matrix of
/// standard Gaussians, with the sign convention that makes the diagonal of R
/// positive (which is exactly what makes the factor Haar).
pub fn haar_sample(n: usize, seed: u64) -> Result<OrthogonalMatrix> {
    if n < 1 {
        return Err(Error::Domain("orthogonal matrices need n >= 1".into()));
    }
    let gauss_seed = rng::subseed(seed, 0x6861_6172);
    let gauss = Matrix::from_fn(n, |i, j| {
        special::std_normal_quantile(rng::uniform01(gauss_seed, i as u64, j as u64))
    });
    let (mut q, diag) = qr_decompose(&gauss);
    for (j, &d) in diag.iter().enumerate() {
        if d < 0.0 {
            for i in 0..n {
                let v = q.at(i, j);
                q.set(i, j, -v);
            }
        }
    }
    Ok(OrthogonalMatrix { matrix: Arc::new(q), seed })
}

/// The rotated set g(A).
pub fn rotate_set(set: &SetDescriptor, g: &OrthogonalMatrix) -> Result<SetDescriptor> {
    SetDescriptor::rotated(set.clone(), g.matrix.clone())
}

/// Exact influences of a half-space under the standard Gaussian product
/// measure: I_i = |u_i| phi(b) for a unit normal u.
pub fn halfspace_influences_exact(normal: &[f64], offset: f64) -> Result<Vec<f64>> {
    let norm: f64 = normal.iter().map(|v| v * v).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::Domain(format!("normal must be unit length, |u| = {norm}")));
    }
    let phi_b = special::std_normal_pdf(offset);
    Ok(normal.iter().map(|u| u.abs() * phi_b).collect())
}

#[derive(Clone, Debug)]
pub struct RotationScan {
    /// Influence sum and its standard error per sampled rotation
    /// (stderr 0 for the exact half-space path).
    pub sums: Vec<(f64, f64)>,
    pub mean: f64,
    pub max: f64,
    pub min: f64,
    pub report: BoundReport,
}

/// Samples Haar rotations M_1..M_k and computes the influence sum of each
/// M_j(A) under the standard Gaussian product measure. Half-spaces use the
/// exact per-rotation formula |M u|_1 phi(b); other convex kinds estimate
/// each rotated profile by Monte Carlo. The mean is compared against
/// sqrt(n) t(1-t) sqrt(-log(t(1-t))) at the committed baseline.
pub fn rotation_scan(
    set: &SetDescriptor,
    space: &ProductSpace,
    num_rotations: usize,
    cfg: McConfig,
    baseline: f64,
) -> Result<RotationScan> {
    if !set.is_convex() {
        return Err(Error::Capability(
            "rotation scans require a convex structured descriptor".into(),
        ));
    }
    if num_rotations == 0 {
        return Err(Error::Domain("need at least one rotation".into()));
    }
    let n = space.dim();
    let mut sums = Vec::with_capacity(num_rotations);
    for j in 0..num_rotations {
        let g = haar_sample(n, rng::subseed(cfg.seed, j as u64))?;
        match set {
            SetDescriptor::Halfspace { normal, offset } => {
                let mut rotated = vec![0.0; n];
                g.matrix.matvec(normal, &mut rotated);
                let phi_b = special::std_normal_pdf(*offset);
                let sum: f64 = rotated.iter().map(|u| u.abs() * phi_b).sum();
                sums.push((sum, 0.0));
            }
            _ => {
                let rotated = rotate_set(set, &g)?;
                let profile = influence_profile(&rotated, space, cfg)?;
                sums.push((profile.sum, profile.sum_stderr));
            }
        }
    }
    let mean = sums.iter().map(|s| s.0).sum::<f64>() / num_rotations as f64;
    let max = sums.iter().map(|s| s.0).fold(f64::NEG_INFINITY, f64::max);
    let min = sums.iter().map(|s| s.0).fold(f64::INFINITY, f64::min);
    let t = set_measure_exact_or_mc(set, space, cfg)?;
    let tt = t * (1.0 - t);
    let rhs = if tt > 0.0 { (n as f64).sqrt() * tt * (-tt.ln()).sqrt() } else { 0.0 };
    let implied = if rhs > 0.0 { mean / rhs } else { f64::INFINITY };
    let report = BoundReport {
        name: "rotation_mean".into(),
        lhs: mean,
        rhs_at_c1: rhs,
        implied_constant: implied,
        baseline_constant: baseline,
        pass: mean + 1e-12 >= baseline * rhs,
        context: BoundContext { n, measure: "gaussian".into(), t, seed: cfg.seed },
        note: String::new(),
    };
    Ok(RotationScan { sums, mean, max, min, report })
}

/// Measure of the shipped kinds under the standard Gaussian product measure,
/// exact where a closed form exists.
pub fn set_measure_exact_or_mc(
    set: &SetDescriptor,
    space: &ProductSpace,
    cfg: McConfig,
) -> Result<f64> {
    match set {
        SetDescriptor::Halfspace { offset, .. } => Ok(special::std_normal_cdf(*offset)),
        SetDescriptor::Ball { center, radius } if center.iter().all(|&c| c == 0.0) => {
            // Chi-square tail: P(|Z|^2 <= R^2) = P(n/2, R^2/2).
            Ok(special::gamma_p(space.dim() as f64 / 2.0, radius * radius / 2.0))
        }
        _ => Ok(set.measure_mc(space, cfg)?.0),
    }
}

#[derive(Clone, Debug)]
pub struct CubeEnlargement {
    /// Mean over rotations of mu(A + M^{-1}(s [-r, r]^n)).
    pub mean_measure: f64,
    pub stderr: f64,
    /// mu(A) + mu(A^{r/3} \ A) / 2 with the exact Euclidean dilation.
    pub floor: f64,
    pub base_measure: f64,
    pub pass: bool,
}

/// Cube scale for randomly rotated enlargements.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CubeScale {
    /// K n^{-1/2}: the regime where half the rotations cover the dilation.
    InverseSqrtN,
    /// K sqrt(log n) n^{-1/2}: the unconditional variant.
    SqrtLogOverSqrtN,
}

/// Estimates E_M[ mu(A + M^{-1}(s [-r,r]^n)) ] over Haar rotations M with
/// s = K n^{-1/2} (or K sqrt(log n) n^{-1/2}) and checks it against
/// mu(A) + mu(A^{r/3} \ A)/2, using exact Euclidean dilations of half-spaces
/// and centered balls for the floor.
pub fn random_cube_enlargement(
    set: &SetDescriptor,
    space: &ProductSpace,
    r: f64,
    k_const: f64,
    scale: CubeScale,
    num_rotations: usize,
    cfg: McConfig,
) -> Result<CubeEnlargement> {
    if !(r > 0.0) {
        return Err(Error::Domain("r must be positive".into()));
    }
    let n = space.dim();
    let nf = n as f64;
    let s = match scale {
        CubeScale::InverseSqrtN => k_const / nf.sqrt(),
        CubeScale::SqrtLogOverSqrtN => k_const * nf.ln().max(1.0).sqrt() / nf.sqrt(),
    };
    let (base_measure, dilated_measure) = match set {
        SetDescriptor::Halfspace { offset, .. } => (
            special::std_normal_cdf(*offset),
            special::std_normal_cdf(*offset + r / 3.0),
        ),
        SetDescriptor::Ball { center, radius } if center.iter().all(|&c| c == 0.0) => (
            special::gamma_p(nf / 2.0, radius * radius / 2.0),
            special::gamma_p(nf / 2.0, (radius + r / 3.0).powi(2) / 2.0),
        ),
        _ => {
            return Err(Error::Capability(
                "random cube enlargement needs a half-space or centered ball".into(),
            ))
        }
    };
    let floor = base_measure + 0.5 * (dilated_measure - base_measure);
    // mu(A + M^{-1}(s r C)) = mu(M(A) + s r C) by rotation invariance.
    let mut total = 0.0;
    let mut total_var = 0.0;
    for j in 0..num_rotations {
        let g = haar_sample(n, rng::subseed(cfg.seed, 0x63756265 ^ j as u64))?;
        let rotated = rotate_set(set, &g)?;
        let grown = rotated.enlarge(s * r)?;
        let (m, se) = grown.measure_mc(space, cfg)?;
        total += m;
        total_var += se * se;
    }
    let kf = num_rotations as f64;
    let mean_measure = total / kf;
    let stderr = total_var.sqrt() / kf;
    Ok(CubeEnlargement {
        mean_measure,
        stderr,
        floor,
        base_measure,
        pass: mean_measure >= floor - 3.0 * stderr,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::Measure1D;

    const PHI0: f64 = 0.3989422804014327;

    fn gaussian_space(n: usize) -> ProductSpace {
        ProductSpace::iid(&Measure1D::std_gaussian(), n).unwrap()
    }

    #[test]
    fn haar_samples_are_orthogonal() {
        for &n in &[1usize, 2, 8, 64] {
            let m = haar_sample(n, 100 + n as u64).unwrap();
            assert!(
                m.orthogonality_error() < 1e-12,
                "n={n}: orthogonality error {}",
                m.orthogonality_error()
            );
            assert!((m.det().abs() - 1.0).abs() < 1e-9, "n={n}: det {}", m.det());
        }
    }

    #[test]
    fn haar_one_dimensional_is_sign_flip() {
        let mut plus = 0usize;
        let trials = 2_000;
        for seed in 0..trials {
            let m = haar_sample(1, seed).unwrap();
            let v = m.matrix().at(0, 0);
            assert!((v.abs() - 1.0).abs() < 1e-12);
            if v > 0.0 {
                plus += 1;
            }
        }
        let frac = plus as f64 / trials as f64;
        assert!((frac - 0.5).abs() < 4.0 / (trials as f64).sqrt(), "sign fraction {frac}");
    }

    #[test]
    fn haar_first_column_moments() {
        // The first column is uniform on the sphere: mean 0, mean square 1/n.
        let n = 8;
        let trials = 10_000;
        let mut sum = 0.0;
        let mut sumsq = 0.0;
        for seed in 0..trials {
            let m = haar_sample(n, 7_000 + seed).unwrap();
            let v = m.matrix().at(0, 0);
            sum += v;
            sumsq += v * v;
        }
        let tf = trials as f64;
        let mean = sum / tf;
        let meansq = sumsq / tf;
        assert!(mean.abs() < 4e-2, "mean {mean}");
        let se = (meansq * 2.0f64 / tf).sqrt(); // rough stderr of the second moment
        assert!(
            (meansq - 1.0 / n as f64).abs() < 3.0 * se + 1e-3,
            "mean square {meansq} vs {}",
            1.0 / n as f64
        );
    }

    #[test]
    fn rotated_halfspace_keeps_measure_and_sums() {
        let n = 4;
        let space = gaussian_space(n);
        let mut u = vec![0.0; n];
        u[0] = 1.0;
        let h = SetDescriptor::halfspace(u.clone(), 0.3).unwrap();
        let g = haar_sample(n, 51).unwrap();
        let rh = rotate_set(&h, &g).unwrap();
        let cfg = McConfig::new(40_000, 52);
        let (m0, s0) = h.measure_mc(&space, cfg).unwrap();
        let (m1, s1) = rh.measure_mc(&space, cfg).unwrap();
        assert!(
            (m0 - m1).abs() <= 3.0 * (s0 * s0 + s1 * s1).sqrt() + 1e-9,
            "measures {m0} vs {m1}"
        );
        // Closed-form rotated influence sum = |Mu|_1 phi(b).
        match &rh {
            SetDescriptor::Halfspace { normal, offset } => {
                let exact = halfspace_influences_exact(normal, *offset).unwrap();
                let sum_exact: f64 = exact.iter().sum();
                let profile = influence_profile(&rh, &space, cfg).unwrap();
                assert!(
                    (profile.sum - sum_exact).abs() <= 3.0 * profile.sum_stderr + 1e-9,
                    "profile sum {} vs exact {}",
                    profile.sum,
                    sum_exact
                );
            }
            other => panic!("expected closed-form rotated halfspace, got {other:?}"),
        }
    }

    #[test]
    fn halfspace_exact_influences() {
        let v = halfspace_influences_exact(&[1.0, 0.0, 0.0], 0.0).unwrap();
        assert_eq!(v[1], 0.0);
        assert!((v[0] - PHI0).abs() < 1e-12);
        let n = 4;
        let diag = vec![0.5; n]; // unit norm
        let v = halfspace_influences_exact(&diag, 0.0).unwrap();
        let total: f64 = v.iter().sum();
        assert!((total - 2.0 * PHI0).abs() < 1e-12); // sqrt(n) phi(0)
        assert!(halfspace_influences_exact(&[2.0, 0.0], 0.0).is_err());
    }

    #[test]
    fn rotation_scan_halfspace_exact_path() {
        let n = 16;
        let space = gaussian_space(n);
        let mut u = vec![0.0; n];
        u[0] = 1.0;
        let h = SetDescriptor::halfspace(u, 0.0).unwrap();
        let scan = rotation_scan(&h, &space, 64, McConfig::new(1_000, 53), 0.5).unwrap();
        assert_eq!(scan.sums.len(), 64);
        // Any rotation keeps |Mu|_1 >= |Mu|_2 = 1: the sum never drops below
        // phi(0), and the scan mean sits near sqrt(2 n / pi) phi(0).
        assert!(scan.min >= PHI0 - 1e-12);
        // No rotation drops the sum below the committed dimension-free floor
        // tracked against t(1-t) sqrt(-log(t(1-t))).
        let floor = crate::bounds::Baselines::shipped().get("rotation_any.floor").unwrap();
        let t = scan.report.context.t;
        let tt = t * (1.0 - t);
        assert!(scan.min >= floor * tt * (-tt.ln()).sqrt());
        let reference = (2.0 * n as f64 / std::f64::consts::PI).sqrt() * PHI0;
        assert!(
            (scan.mean - reference).abs() / reference < 0.1,
            "mean {} vs reference {reference}",
            scan.mean
        );
        assert!(scan.report.pass);
        // Non-convex sets are rejected.
        let mx = SetDescriptor::max_threshold(0.5, n);
        assert!(rotation_scan(&mx, &space, 4, McConfig::new(1_000, 53), 0.5).is_err());
    }

    #[test]
    fn rotating_a_box_can_only_raise_the_max_sum() {
        // Axis-aligned one-sided boxes sit at the bottom of the rotation
        // orbit: the max over sampled rotations stays at or above the
        // axis-aligned influence sum.
        let n = 16;
        let space = gaussian_space(n);
        let g = Measure1D::std_gaussian();
        let corner = g.quantile((0.5f64).powf(1.0 / n as f64)).unwrap();
        let bx = SetDescriptor::box_lower(vec![corner; n]);
        let cfg = McConfig::new(2_000, 60);
        let axis_profile = influence_profile(&bx, &space, cfg).unwrap();
        let scan = rotation_scan(&bx, &space, 50, cfg, 0.1).unwrap();
        assert!(
            scan.max >= axis_profile.sum - 3.0 * axis_profile.sum_stderr,
            "max over rotations {} below axis-aligned sum {}",
            scan.max,
            axis_profile.sum
        );
        // Closed-form axis-aligned sum for the cross-check.
        let exact = n as f64 * (0.5f64).powf((n as f64 - 1.0) / n as f64) * g.density(corner);
        assert!((axis_profile.sum - exact).abs() <= 3.0 * axis_profile.sum_stderr + 1e-9);
    }

    #[test]
    fn rotation_scan_ball_is_rotation_invariant() {
        let n = 4;
        let space = gaussian_space(n);
        // Median-radius ball: measure 1/2.
        let r2 = 2.0 * special::inv_gamma_p(n as f64 / 2.0, 0.5);
        let ball = SetDescriptor::ball(vec![0.0; n], r2.sqrt()).unwrap();
        let scan = rotation_scan(&ball, &space, 4, McConfig::new(20_000, 54), 0.1).unwrap();
        for (sum, se) in &scan.sums {
            assert!(
                (sum - scan.mean).abs() <= 3.0 * (2.0f64).sqrt() * se + 1e-9,
                "ball sums differ across rotations: {} vs mean {}",
                sum,
                scan.mean
            );
        }
    }

    #[test]
    fn exact_measures_match_mc() {
        let n = 8;
        let space = gaussian_space(n);
        let cfg = McConfig::new(40_000, 55);
        let r2 = 2.0 * special::inv_gamma_p(n as f64 / 2.0, 0.5);
        let ball = SetDescriptor::ball(vec![0.0; n], r2.sqrt()).unwrap();
        let exact = set_measure_exact_or_mc(&ball, &space, cfg).unwrap();
        assert!((exact - 0.5).abs() < 1e-10);
        let (mc, se) = ball.measure_mc(&space, cfg).unwrap();
        assert!((mc - exact).abs() <= 3.0 * se);
    }

    #[test]
    fn random_cube_enlargement_covers_dilation() {
        let k_const = crate::bounds::Baselines::shipped().get("cube_enlargement.K").unwrap();
        // Ball, n = 8, r = 0.05, 50 rotations.
        let n = 8;
        let space = gaussian_space(n);
        let r2 = 2.0 * special::inv_gamma_p(n as f64 / 2.0, 0.5);
        let ball = SetDescriptor::ball(vec![0.0; n], r2.sqrt()).unwrap();
        let res = random_cube_enlargement(
            &ball,
            &space,
            0.05,
            k_const,
            CubeScale::InverseSqrtN,
            50,
            McConfig::new(8_000, 56),
        )
        .unwrap();
        assert!(res.pass, "{res:?}");
        // Half-space, closed-form floor.
        let mut u = vec![0.0; n];
        u[0] = 1.0;
        let h = SetDescriptor::halfspace(u, 0.0).unwrap();
        let res = random_cube_enlargement(
            &h,
            &space,
            0.05,
            k_const,
            CubeScale::SqrtLogOverSqrtN,
            20,
            McConfig::new(8_000, 57),
        )
        .unwrap();
        assert!(res.pass, "{res:?}");
        // r -> 0: both sides collapse onto mu(A).
        let res = random_cube_enlargement(
            &h,
            &space,
            1e-4,
            k_const,
            CubeScale::InverseSqrtN,
            5,
            McConfig::new(8_000, 58),
        )
        .unwrap();
        assert!((res.mean_measure - res.base_measure).abs() < 0.01);
        // Unsupported kinds error out.
        let bx = SetDescriptor::box_lower(vec![0.0; n]);
        assert!(random_cube_enlargement(
            &bx,
            &space,
            0.05,
            k_const,
            CubeScale::InverseSqrtN,
            2,
            McConfig::new(1_000, 59)
        )
        .is_err());
    }
}
