//! One-dimensional measures and product spaces.
//!
//! Shipped families: the Boltzmann family with density e^{-|x|^rho} / (2
//! Gamma(1 + 1/rho)) for rho >= 1 (rho = 2 is a centered Gaussian with
//! variance 1/2, rho = 1 the two-sided exponential), Gaussians with arbitrary
//! mean and variance, the uniform measure on [0, 1], and location shifts of
//! any of these. All families are log-concave and symmetric about their
//! center.

use crate::error::{Error, Result};
use crate::rng;
use crate::special;

#[derive(Clone, Debug, PartialEq)]
enum Family {
    /// density e^{-|x|^rho} / (2 Gamma(1+1/rho)), rho >= 1
    Boltzmann { rho: f64 },
    Gaussian { mean: f64, variance: f64 },
    Uniform01,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Measure1D {
    family: Family,
    /// Location shift applied on top of the base family.
    shift: f64,
    /// Cached normalizer: 2 Gamma(1+1/rho) for Boltzmann, sqrt(2 pi var) for
    /// Gaussian, 1 for uniform.
    norm: f64,
}

impl Measure1D {
    pub fn boltzmann(rho: f64) -> Result<Self> {
        if !(rho >= 1.0) || !rho.is_finite() {
            return Err(Error::Domain(format!("boltzmann rho must be >= 1, got {rho}")));
        }
        Ok(Measure1D {
            norm: 2.0 * special::gamma(1.0 + 1.0 / rho),
            family: Family::Boltzmann { rho },
            shift: 0.0,
        })
    }

    pub fn gaussian(mean: f64, variance: f64) -> Result<Self> {
        if !(variance > 0.0) || !variance.is_finite() || !mean.is_finite() {
            return Err(Error::Domain(format!(
                "gaussian variance must be positive, got mean {mean}, variance {variance}"
            )));
        }
        Ok(Measure1D {
            norm: (2.0 * std::f64::consts::PI * variance).sqrt(),
            family: Family::Gaussian { mean, variance },
            shift: 0.0,
        })
    }

    pub fn std_gaussian() -> Self {
        Measure1D::gaussian(0.0, 1.0).expect("unit variance")
    }

    pub fn uniform01() -> Self {
        Measure1D { family: Family::Uniform01, shift: 0.0, norm: 1.0 }
    }

    /// Location shift: the density of the result is `self` evaluated at x - alpha.
    pub fn translate(&self, alpha: f64) -> Measure1D {
        let mut out = self.clone();
        out.shift += alpha;
        out
    }

    /// Center of symmetry (median).
    pub fn center(&self) -> f64 {
        match &self.family {
            Family::Boltzmann { .. } => self.shift,
            Family::Gaussian { mean, .. } => mean + self.shift,
            Family::Uniform01 => 0.5 + self.shift,
        }
    }

    pub fn is_boltzmann(&self) -> Option<f64> {
        match self.family {
            Family::Boltzmann { rho } => Some(rho),
            _ => None,
        }
    }

    /// Short human-readable family label for reports.
    pub fn label(&self) -> String {
        let base = match &self.family {
            Family::Boltzmann { rho } => format!("boltzmann(rho={rho})"),
            Family::Gaussian { mean, variance } => format!("gaussian({mean},{variance})"),
            Family::Uniform01 => "uniform01".into(),
        };
        if self.shift != 0.0 {
            format!("{base}+{}", self.shift)
        } else {
            base
        }
    }

    pub fn density(&self, x: f64) -> f64 {
        let z = x - self.shift;
        match &self.family {
            Family::Boltzmann { rho } => (-z.abs().powf(*rho)).exp() / self.norm,
            Family::Gaussian { mean, variance } => {
                let d = z - mean;
                (-0.5 * d * d / variance).exp() / self.norm
            }
            Family::Uniform01 => {
                if (0.0..=1.0).contains(&z) {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        let z = x - self.shift;
        match &self.family {
            Family::Boltzmann { rho } => {
                if z >= 0.0 {
                    0.5 * (1.0 + special::gamma_p(1.0 / rho, z.powf(*rho)))
                } else {
                    0.5 * special::gamma_q(1.0 / rho, (-z).powf(*rho))
                }
            }
            Family::Gaussian { mean, variance } => {
                special::std_normal_cdf((z - mean) / variance.sqrt())
            }
            Family::Uniform01 => z.clamp(0.0, 1.0),
        }
    }

    /// Upper tail 1 - cdf(x), computed without cancellation.
    pub fn upper_tail(&self, x: f64) -> f64 {
        let z = x - self.shift;
        match &self.family {
            Family::Boltzmann { rho } => {
                if z >= 0.0 {
                    0.5 * special::gamma_q(1.0 / rho, z.powf(*rho))
                } else {
                    0.5 * (1.0 + special::gamma_p(1.0 / rho, (-z).powf(*rho)))
                }
            }
            Family::Gaussian { mean, variance } => {
                special::std_normal_tail((z - mean) / variance.sqrt())
            }
            Family::Uniform01 => (1.0 - z).clamp(0.0, 1.0),
        }
    }

    /// The unique x with cdf(x) = p, to absolute tolerance 1e-10.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::Domain(format!("quantile requires p in (0,1), got {p}")));
        }
        let z = match &self.family {
            Family::Boltzmann { rho } => {
                // Solve on the side with the smaller mass q and invert the
                // tail directly when q is small, so the result keeps relative
                // accuracy deep into the tails.
                let q = if p < 0.5 { p } else { 1.0 - p };
                let a = 1.0 / rho;
                let mag = if q >= 0.25 {
                    special::inv_gamma_p(a, 1.0 - 2.0 * q)
                } else {
                    special::inv_gamma_q(a, 2.0 * q)
                }
                .powf(1.0 / rho);
                if p >= 0.5 {
                    mag
                } else {
                    -mag
                }
            }
            Family::Gaussian { mean, variance } => {
                mean + variance.sqrt() * special::std_normal_quantile(p)
            }
            Family::Uniform01 => p,
        };
        Ok(z + self.shift)
    }

    /// Isoperimetric profile h(t) = density(quantile(t)).
    ///
    /// This is the boundary density of the extremal ray of measure t; for
    /// monotone sets it equals the per-coordinate geometric influence profile.
    pub fn iso_profile(&self, t: f64) -> Result<f64> {
        if !(t > 0.0 && t < 1.0) {
            return Err(Error::Domain(format!("iso_profile requires t in (0,1), got {t}")));
        }
        Ok(self.density(self.quantile(t)?))
    }
}

/// Two-sided elementary bracket for the Boltzmann upper tail at z > 0:
/// returns (lower, upper) with lower <= 1 - cdf(z) <= upper whenever
/// lower > 0, where
///   upper = z^{1-rho} e^{-z^rho} / (2 rho Gamma(1+1/rho)),
///   lower = (z^{1-rho} - (rho-1) z^{-rho}) e^{-z^rho} / (2 rho Gamma(1+1/rho)).
/// The lower expression goes nonpositive for z <= rho - 1; the caller must
/// treat the bracket as one-sided there.
pub fn tail_bracket(rho: f64, z: f64) -> Result<(f64, f64)> {
    if !(rho >= 1.0) {
        return Err(Error::Domain(format!("tail_bracket requires rho >= 1, got {rho}")));
    }
    if !(z > 0.0) {
        return Err(Error::Domain(format!("tail_bracket requires z > 0, got {z}")));
    }
    let coef = 1.0 / (2.0 * rho * special::gamma(1.0 + 1.0 / rho));
    let expf = (-z.powf(rho)).exp();
    let upper = coef * z.powf(1.0 - rho) * expf;
    let lower = coef * (z.powf(1.0 - rho) - (rho - 1.0) * z.powf(-rho)) * expf;
    Ok((lower, upper))
}

/// A finite product of one-dimensional measures.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductSpace {
    factors: Vec<Measure1D>,
}

impl ProductSpace {
    pub fn new(factors: Vec<Measure1D>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Domain("product space needs n >= 1 factors".into()));
        }
        Ok(ProductSpace { factors })
    }

    pub fn iid(m: &Measure1D, n: usize) -> Result<Self> {
        ProductSpace::new(vec![m.clone(); n])
    }

    pub fn dim(&self) -> usize {
        self.factors.len()
    }

    pub fn factor(&self, i: usize) -> &Measure1D {
        &self.factors[i]
    }

    pub fn factors(&self) -> &[Measure1D] {
        &self.factors
    }

    /// Translate every factor by alpha (location family move).
    pub fn translate(&self, alpha: f64) -> ProductSpace {
        ProductSpace { factors: self.factors.iter().map(|m| m.translate(alpha)).collect() }
    }

    /// Writes the `index`-th i.i.d. draw of the stream identified by `seed`
    /// into `out`. Pure function of (seed, index, coordinate): identical
    /// output for identical arguments no matter how calls are scheduled.
    pub fn sample_into(&self, seed: u64, index: u64, out: &mut [f64]) {
        debug_assert_eq!(out.len(), self.dim());
        for (i, m) in self.factors.iter().enumerate() {
            let u = rng::uniform01(seed, index, i as u64);
            // u lies strictly inside (0,1); quantile cannot fail.
            out[i] = m.quantile(u).expect("uniform variate in open interval");
        }
    }

    /// Collects `count` draws into a flat row-major buffer.
    pub fn sample_batch(&self, seed: u64, count: usize) -> Vec<f64> {
        let n = self.dim();
        let mut buf = vec![0.0; count * n];
        for k in 0..count {
            let row = &mut buf[k * n..(k + 1) * n];
            self.sample_into(seed, k as u64, row);
        }
        buf
    }
}
