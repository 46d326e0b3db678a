//! h-influences: replace the fiber content by h(fiber measure). With h the
//! isoperimetric profile of the factor the h-influence equals the geometric
//! influence on monotone sets and lower-bounds it in general; the entropy
//! profile connects the two through the ratio bound.
//!
//!     cargo run --example h_influences

use geominf::influence::{
    ent_to_h_bound, h_influence, geometric_influence, HProfile,
};
use geominf::measure::{Measure1D, ProductSpace};
use geominf::set::{McConfig, SetDescriptor};

fn main() {
    let n = 3;
    let m = Measure1D::boltzmann(2.0).unwrap();
    let space = ProductSpace::iid(&m, n).unwrap();
    let cfg = McConfig::new(100_000, 53);
    let corner = m.quantile((0.5f64).powf(1.0 / n as f64)).unwrap();
    let bx = SetDescriptor::box_lower(vec![corner; n]);
    let ball = SetDescriptor::ball(vec![0.0; n], 1.1).unwrap();

    let profiles =
        [HProfile::Variance, HProfile::Entropy, HProfile::IsoProfile(m.clone())];
    for (name, set) in [("box (monotone)", &bx), ("ball (not monotone)", &ball)] {
        println!("{name}, coordinate 0:");
        let geo = geometric_influence(set, &space, 0, cfg).unwrap();
        println!("  geometric influence      {:.6} +- {:.1e}", geo.value, geo.stderr);
        for h in &profiles {
            let est = h_influence(set, &space, h, 0, cfg).unwrap();
            println!("  h = {:<12} influence {:.6} +- {:.1e}", h.name(), est.value, est.stderr);
        }
        println!();
    }

    // Chain: entropy influence -> ratio bound -> measured iso-profile value.
    let iso = HProfile::IsoProfile(m.clone());
    let ent = h_influence(&bx, &space, &HProfile::Entropy, 0, cfg).unwrap();
    let bound = ent_to_h_bound(&iso, ent.value).unwrap();
    let measured = h_influence(&bx, &space, &iso, 0, cfg).unwrap();
    println!("entropy influence {:.5} gives iso-profile floor {:.5};", ent.value, bound);
    println!("measured iso-profile influence {:.5} sits above it.", measured.value);
}
