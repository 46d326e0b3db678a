//! Boundary measure under uniform enlargement vs the influence sum: the two
//! agree for monotone and convex sets, which is the geometric meaning of the
//! influences.
//!
//!     cargo run --example boundary_identity

use geominf::bounds::boundary_estimate;
use geominf::influence::influence_profile;
use geominf::measure::{Measure1D, ProductSpace};
use geominf::set::{McConfig, SetDescriptor};
use geominf::special::inv_gamma_p;

fn main() {
    let n = 5;
    let space = ProductSpace::iid(&Measure1D::std_gaussian(), n).unwrap();
    let cfg = McConfig::new(400_000, 19);
    let r_schedule = [0.1, 0.03, 0.01, 0.003];
    let median_radius = (2.0 * inv_gamma_p(n as f64 / 2.0, 0.5)).sqrt();
    let sets: Vec<(&str, SetDescriptor)> = vec![
        ("box_lower(0.3)", SetDescriptor::box_lower(vec![0.3; n])),
        ("max_threshold(0.8)", SetDescriptor::max_threshold(0.8, n)),
        ("sum_threshold(0.5)", SetDescriptor::sum_threshold(0.5, n)),
        ("ball(median)", SetDescriptor::ball(vec![0.0; n], median_radius).unwrap()),
    ];
    println!("n = {n}, {} samples, radii {:?}", cfg.samples, r_schedule);
    println!(
        "{:<22} {:>12} {:>12} {:>10} {:>10}",
        "set", "boundary", "infl. sum", "gap", "gap/sum"
    );
    for (name, set) in sets {
        let est = boundary_estimate(&set, &space, &r_schedule, cfg).unwrap();
        let profile = influence_profile(&set, &space, cfg).unwrap();
        let gap = est.limit - profile.sum;
        println!(
            "{:<22} {:>12.6} {:>12.6} {:>10.2e} {:>9.3}%",
            name,
            est.limit,
            profile.sum,
            gap,
            100.0 * gap / profile.sum
        );
        for (r, value, stderr) in &est.per_r {
            println!("    r = {r:<6} difference quotient {value:.6} +- {stderr:.1e}");
        }
    }
}
