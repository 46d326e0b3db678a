//! Junta approximation: a monotone set with a small weighted influence sum
//! is close to a set determined by few coordinates. The greedy search keeps
//! adding the highest-influence coordinates until the majority-vote cylinder
//! lands within eps in symmetric difference.
//!
//!     cargo run --example junta_approximation

use geominf::bounds::{junta_approx, Baselines, JuntaConfig, RhoOrGauss};
use geominf::measure::{Measure1D, ProductSpace};
use geominf::set::{McConfig, SetDescriptor};

fn main() {
    let c2 = Baselines::shipped().get("junta.c2").unwrap();
    let n = 8;
    let space = ProductSpace::iid(&Measure1D::std_gaussian(), n).unwrap();
    let cfg = JuntaConfig {
        mc: McConfig::new(6_000, 47),
        inner_samples: 500,
        bins: 32,
    };

    // A set that genuinely depends on two coordinates.
    let mut normal = vec![0.0; n];
    normal[0] = -0.6;
    normal[1] = -0.8;
    let planted = SetDescriptor::halfspace(normal, 0.0).unwrap();

    // The box family spreads its influence over everything.
    let corner = Measure1D::std_gaussian()
        .quantile((0.5f64).powf(1.0 / n as f64))
        .unwrap();
    let spread = SetDescriptor::box_lower(vec![corner; n]);

    for (name, set, eps) in [
        ("two-coordinate half-space", planted, 0.1),
        ("box of measure 1/2", spread, 0.3),
    ] {
        let res = junta_approx(&set, &space, eps, RhoOrGauss::Gaussian, cfg).unwrap();
        println!("{name} (eps = {eps}):");
        println!(
            "  k = {} coordinates {:?}, symmetric difference {:.4} +- {:.4}",
            res.k, res.coordinates, res.symmdiff, res.symmdiff_stderr
        );
        let budget = (c2 * res.s_statistic / eps).exp();
        println!(
            "  weighted influence sum s = {:.4}; committed budget exp(c2 s / eps) = {:.1} {}",
            res.s_statistic,
            budget,
            if (res.k as f64) <= budget { "(respected)" } else { "(exceeded)" }
        );
    }
}
