//! Boundary-regularity spot check: a set is regular enough for the rotation
//! experiments when every point of it survives erosion followed by a double
//! dilation. Statistical probing only, not a certificate.
//!
//!     cargo run --example regularity_check

use std::sync::Arc;

use geominf::measure::{Measure1D, ProductSpace};
use geominf::set::{IndicatorFn, SetDescriptor};

fn main() {
    let n = 3;
    let space = ProductSpace::iid(&Measure1D::std_gaussian(), n).unwrap();
    let eps = 0.05;
    let probes = 200;

    let smooth: Vec<(&str, SetDescriptor)> = vec![
        ("half-space", SetDescriptor::halfspace(vec![1.0, 0.0, 0.0], 0.2).unwrap()),
        ("ball", SetDescriptor::ball(vec![0.0; n], 1.5).unwrap()),
        ("lower box", SetDescriptor::box_lower(vec![0.4; n])),
    ];
    println!("eps = {eps}, {probes} membership probes each");
    for (name, set) in smooth {
        let rep = set.regularity_spotcheck(eps, &space, probes, 61).unwrap();
        println!(
            "{:<12} violations {:>3} / {:<3} ({:.1}%)",
            name,
            rep.violations,
            rep.probes,
            100.0 * rep.violation_fraction()
        );
    }

    // A two-point set fails outright: erosion empties it.
    let pts = vec![vec![1.0, 1.0, 1.0], vec![-1.0, -1.0, -1.0]];
    let pts_ind = pts.clone();
    let ind: IndicatorFn = Arc::new(move |x: &[f64]| {
        pts_ind.iter().any(|p| p.iter().zip(x).all(|(a, b)| (a - b).abs() < 1e-9))
    });
    let two = SetDescriptor::generic_oracle(ind, 2, (-8.0, 8.0), n);
    let rep = two.regularity_spotcheck_at(eps, &pts, 62).unwrap();
    println!(
        "{:<12} violations {:>3} / {:<3} (erosion empties a discrete set)",
        "two points", rep.violations, rep.probes
    );
}
