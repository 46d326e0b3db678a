//! Sharp thresholds of increasing transitive sets: the alpha-window over
//! which the measure climbs from eps to 1 - eps shrinks like
//! log(1/(2 eps)) / sqrt(log n).
//!
//!     cargo run --example sharp_threshold

use geominf::measure::Measure1D;
use geominf::russo::{max_threshold_width_exact, threshold_alpha};
use geominf::set::{McConfig, SetDescriptor};

fn main() {
    let eps = 0.1;
    let reference = (1.0f64 / (2.0 * eps)).ln();
    println!("max-threshold family, eps = {eps}");
    println!(
        "{:>8} {:>12} {:>14} {:>22}",
        "n", "width", "rhs at c=1", "width*sqrt(log n)/ref"
    );
    for n in [10usize, 100, 1_000, 10_000] {
        let width = max_threshold_width_exact(n, eps).unwrap();
        let rhs = reference / (n as f64).ln().sqrt();
        println!(
            "{:>8} {:>12.6} {:>14.6} {:>22.4}",
            n,
            width,
            rhs,
            width / rhs
        );
    }

    // Monte Carlo threshold location agrees with the closed form.
    let n = 100;
    let level = 1.0;
    let set = SetDescriptor::max_threshold(level, n);
    let g = Measure1D::std_gaussian();
    let cfg = McConfig::new(100_000, 29);
    println!("\nthreshold locations at n = {n}, level = {level} (MC vs closed form):");
    for delta in [0.1, 0.5, 0.9] {
        let mc = threshold_alpha(&set, &g, delta, n, cfg).unwrap();
        let exact =
            level - geominf::special::std_normal_quantile((1.0 - delta).powf(1.0 / n as f64));
        println!("delta {delta:>4}: alpha {mc:>8.4} (exact {exact:>8.4})");
    }
}
