//! Recomputes the committed regression baselines.
//!
//! Prints a replacement for `baselines/default.txt`: measured implied
//! constants with the margins the shipped checks assume. Run after touching
//! the estimators and compare against the committed file.
//!
//!     cargo run --example fit_baselines

use geominf::bounds::{box_exact, Baselines};
use geominf::russo::{max_test_power, max_threshold_width_exact};

fn band_of(values: &[f64]) -> (f64, f64) {
    let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    (lo, hi)
}

fn main() {
    println!("# Measured constants with suggested committed bands.\n");

    // Box family: implied KKL constant I * n / (t(1-t) (log n)^{1-1/rho}).
    for rho in [1.5, 2.0, 3.0] {
        let mut implied = Vec::new();
        for e in 2..=12u32 {
            let n = 2usize.pow(e);
            let be = box_exact(n, rho).unwrap();
            let rhs = 0.25 * (n as f64).ln().powf(1.0 - 1.0 / rho) / n as f64;
            implied.push(be.influence / rhs);
        }
        let (lo, hi) = band_of(&implied);
        println!("# kkl_box rho={rho}: measured [{lo:.4}, {hi:.4}], ratio {:.4}", hi / lo);
    }

    // Talagrand sum over the box family, rho = 2.
    let mut implied = Vec::new();
    for e in 2..=12u32 {
        let n = 2usize.pow(e);
        let be = box_exact(n, 2.0).unwrap();
        let v = be.influence;
        let lhs = n as f64 * v / (-v.ln()).sqrt();
        implied.push(lhs / 0.25);
    }
    let (lo, hi) = band_of(&implied);
    println!("# talagrand_box rho=2: measured [{lo:.4}, {hi:.4}], ratio {:.4}", hi / lo);

    // Sharp-threshold width of the max-threshold family, eps = 0.1.
    let mut scaled = Vec::new();
    for n in [10usize, 100, 1_000, 10_000] {
        let w = max_threshold_width_exact(n, 0.1).unwrap();
        scaled.push(w * (n as f64).ln().sqrt() / (1.0f64 / 0.2).ln());
    }
    let (lo, hi) = band_of(&scaled);
    println!("# width_max_threshold: measured [{lo:.4}, {hi:.4}], ratio {:.4}", hi / lo);

    // Smallest separation constant c with power >= 1 - beta across the grid.
    let mut c_needed = 0.0f64;
    for beta in [0.01f64, 0.05] {
        for e in 2..=6u32 {
            let n = 10usize.pow(e);
            // Bisect the smallest c that reaches power 1 - beta.
            let (mut lo_c, mut hi_c) = (0.0f64, 4.0f64);
            for _ in 0..60 {
                let mid = 0.5 * (lo_c + hi_c);
                let sep = mid * (1.0 / (2.0 * beta)).ln() / (n as f64).ln().sqrt();
                let rep = max_test_power(0.0, sep, beta, n).unwrap();
                if rep.power >= 1.0 - beta {
                    hi_c = mid;
                } else {
                    lo_c = mid;
                }
            }
            c_needed = c_needed.max(hi_c);
        }
    }
    println!("# power_separation: smallest c over the grid = {c_needed:.4} (commit with margin)");

    // Tightness direction at the committed constant / 10.
    let c = Baselines::shipped().get("power_separation.c").unwrap();
    for beta in [0.01f64, 0.05] {
        let n = 10_000;
        let sep = (c / 10.0) * (1.0 / (2.0 * beta)).ln() / (n as f64).ln().sqrt();
        let rep = max_test_power(0.0, sep, beta, n).unwrap();
        println!(
            "# tightness: c/10 at n=10^4, beta={beta}: power {:.4} (must be < {:.2})",
            rep.power,
            1.0 - beta
        );
    }

    println!("\n# committed file: baselines/default.txt");
    println!("{}", include_str!("../baselines/default.txt"));
}
