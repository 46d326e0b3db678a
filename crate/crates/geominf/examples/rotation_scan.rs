//! Influence sums under Haar-random rotation. The Gaussian measure is
//! rotation invariant but influence sums are not: an axis-aligned half-space
//! of measure 1/2 has sum phi(0), the diagonal orientation reaches
//! sqrt(n) phi(0), and a random rotation lands near sqrt(2 n / pi) phi(0).
//!
//!     cargo run --example rotation_scan

use geominf::bounds::Baselines;
use geominf::measure::{Measure1D, ProductSpace};
use geominf::rotation::rotation_scan;
use geominf::set::{McConfig, SetDescriptor};
use geominf::special::std_normal_pdf;

fn main() {
    let baselines = Baselines::shipped();
    let floor = baselines.get("rotation_mean.floor").unwrap();
    let phi0 = std_normal_pdf(0.0);
    println!("axis half-space of measure 1/2 under 200 Haar rotations");
    println!(
        "{:>4} {:>10} {:>10} {:>10} {:>14} {:>12}",
        "n", "min sum", "mean sum", "max sum", "sqrt(2n/pi)p0", "exact Haar"
    );
    for n in [4usize, 16, 64] {
        let space = ProductSpace::iid(&Measure1D::std_gaussian(), n).unwrap();
        let mut u = vec![0.0; n];
        u[0] = 1.0;
        let set = SetDescriptor::halfspace(u, 0.0).unwrap();
        let scan = rotation_scan(&set, &space, 200, McConfig::new(1_000, 41), floor).unwrap();
        let nf = n as f64;
        let asymptotic = (2.0 * nf / std::f64::consts::PI).sqrt() * phi0;
        // Exact mean of |M e_1|_1 phi(0) over the Haar measure.
        let exact = nf
            * (geominf::special::ln_gamma(nf / 2.0)
                - geominf::special::ln_gamma((nf + 1.0) / 2.0))
            .exp()
            / std::f64::consts::PI.sqrt()
            * phi0;
        println!(
            "{:>4} {:>10.4} {:>10.4} {:>10.4} {:>14.4} {:>12.4}",
            n, scan.min, scan.mean, scan.max, asymptotic, exact
        );
    }
    println!("\nthe asymptotic sqrt(2n/pi) reference undershoots the exact Haar mean");
    println!("at small n (6.4% at n = 4) and converges from below as n grows.");
}
