//! The one-sided box family of measure 1/2: closed-form influences, their
//! (log n)^{1-1/rho} / n scaling, and the regression slope that pins the
//! exponent.
//!
//!     cargo run --example box_tightness

use geominf::bounds::box_exact;

fn main() {
    for rho in [1.5, 2.0, 3.0] {
        println!("rho = {rho}");
        println!(
            "{:>6} {:>12} {:>14} {:>18}",
            "n", "corner", "influence", "n*I/(log n)^(1-1/rho)"
        );
        let mut pts = Vec::new();
        for e in 2..=12u32 {
            let n = 2usize.pow(e);
            let be = box_exact(n, rho).unwrap();
            let scaled = be.influence_sum / (n as f64).ln().powf(1.0 - 1.0 / rho);
            println!("{:>6} {:>12.6} {:>14.8} {:>18.6}", n, be.corner, be.influence, scaled);
            pts.push(((n as f64).ln().ln(), (n as f64 * be.influence).ln()));
        }
        let m = pts.len() as f64;
        let mx: f64 = pts.iter().map(|p| p.0).sum::<f64>() / m;
        let my: f64 = pts.iter().map(|p| p.1).sum::<f64>() / m;
        let slope: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>()
            / pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum::<f64>();
        println!(
            "log-log regression slope {slope:.4}, exponent target {:.4}\n",
            1.0 - 1.0 / rho
        );
    }
}
