//! The derivative of alpha -> nu_alpha^n(A) for an increasing set equals the
//! influence sum under the shifted measure: finite differences of the
//! measured curve against the Monte Carlo influence sum.
//!
//!     cargo run --example russo_derivative

use geominf::measure::Measure1D;
use geominf::russo::{measure_curve, russo_check};
use geominf::set::{McConfig, SetDescriptor};

fn main() {
    let n = 5;
    let g = Measure1D::std_gaussian();
    let set = SetDescriptor::max_threshold(1.0, n);
    let cfg = McConfig::new(500_000, 23);

    let alphas: Vec<f64> = (0..9).map(|k| -1.0 + 0.25 * k as f64).collect();
    let curve = measure_curve(&set, &g, &alphas, n, cfg).unwrap();
    println!("max-threshold at 1.0, n = {n}: location curve");
    println!("{:>8} {:>10} {:>10} {:>12}", "alpha", "measure", "stderr", "closed form");
    for ((a, v), se) in curve.alphas.iter().zip(&curve.values).zip(&curve.stderrs) {
        let exact = 1.0 - g.cdf(1.0 - a).powi(n as i32);
        println!("{:>8.2} {:>10.5} {:>10.1e} {:>12.5}", a, v, se, exact);
    }

    println!("\nderivative identity at selected locations:");
    for alpha in [-0.5, 0.0, 0.5] {
        let check = russo_check(&set, &g, alpha, n, cfg).unwrap();
        let exact = n as f64 * g.density(1.0 - alpha) * g.cdf(1.0 - alpha).powi(n as i32 - 1);
        println!(
            "alpha {:>4}: finite difference {:.5} vs influence sum {:.5} (exact {:.5}) -> {}",
            alpha,
            check.finite_difference,
            check.influence_sum,
            exact,
            if check.pass { "ok" } else { "MISMATCH" }
        );
    }
}
