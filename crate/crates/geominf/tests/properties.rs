//! Property tests for the deterministic arithmetic layers: interval algebra,
//! measure/quantile consistency, one-dimensional isoperimetry, and report
//! formatting. Statistical (Monte Carlo) guarantees live in the acceptance
//! suite with fixed seeds instead.

use proptest::prelude::*;

use geominf::bounds::check_1d_iso;
use geominf::interval::{Interval, IntervalUnion};
use geominf::measure::{tail_bracket, Measure1D};
use geominf::report::fmt_float;

fn endpoint() -> impl Strategy<Value = f64> {
    prop_oneof![
        8 => -6.0..6.0f64,
        1 => Just(f64::NEG_INFINITY),
        1 => Just(f64::INFINITY),
    ]
}

fn interval() -> impl Strategy<Value = Interval> {
    (endpoint(), endpoint()).prop_filter_map("needs lo <= hi, not (inf, inf)", |(a, b)| {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        if lo == f64::INFINITY || hi == f64::NEG_INFINITY || lo > hi {
            None
        } else {
            Some(Interval::new(lo, hi))
        }
    })
}

fn interval_union() -> impl Strategy<Value = IntervalUnion> {
    proptest::collection::vec(interval(), 0..5).prop_map(IntervalUnion::from_components)
}

fn shipped_measure() -> impl Strategy<Value = Measure1D> {
    prop_oneof![
        Just(Measure1D::boltzmann(1.0).unwrap()),
        Just(Measure1D::boltzmann(1.5).unwrap()),
        Just(Measure1D::boltzmann(2.0).unwrap()),
        Just(Measure1D::boltzmann(3.0).unwrap()),
        Just(Measure1D::std_gaussian()),
        (-2.0..2.0f64).prop_map(|a| Measure1D::std_gaussian().translate(a)),
    ]
}

proptest! {
    #[test]
    fn union_normalization_invariants(u in interval_union()) {
        let parts = u.components();
        for w in parts.windows(2) {
            // Sorted with gaps of strictly positive length.
            prop_assert!(w[0].hi < w[1].lo);
        }
        for iv in parts {
            prop_assert!(iv.lo <= iv.hi);
        }
        // Re-normalizing is a fixed point.
        let again = IntervalUnion::from_components(parts.to_vec());
        prop_assert_eq!(&again, &u);
    }

    #[test]
    fn complement_is_an_involution(u in interval_union()) {
        prop_assert_eq!(&u.complement().complement(), &u);
    }

    #[test]
    fn complement_splits_total_measure(u in interval_union(), m in shipped_measure()) {
        let total = u.measure(&m) + u.complement().measure(&m);
        prop_assert!((total - 1.0).abs() < 1e-9, "total {total}");
        // Shared boundaries: identical Minkowski content on both sides.
        let a = u.minkowski_content(&m);
        let b = u.complement().minkowski_content(&m);
        prop_assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs()));
    }

    #[test]
    fn enlargement_grows_measure(u in interval_union(), m in shipped_measure(), r in 0.01..1.0f64) {
        let before = u.measure(&m);
        let after = u.enlarge(r).measure(&m);
        prop_assert!(after >= before - 1e-12);
    }

    #[test]
    fn one_dimensional_isoperimetry_never_violated(
        u in interval_union(),
        r in 0.01..1.0f64,
        rho in 1.0..3.5f64,
    ) {
        let m = Measure1D::boltzmann(rho).unwrap();
        let rep = check_1d_iso(&u, &m, r).unwrap();
        prop_assert!(rep.pass, "lhs {} rhs {}", rep.lhs, rep.rhs_at_c1);
    }

    #[test]
    fn quantile_cdf_roundtrip(p in 0.001..0.999f64, m in shipped_measure()) {
        let x = m.quantile(p).unwrap();
        let back = m.cdf(x);
        prop_assert!((back - p).abs() < 1e-10, "p {p} -> {x} -> {back}");
    }

    #[test]
    fn density_is_symmetric_about_center(x in -5.0..5.0f64, m in shipped_measure()) {
        let c = m.center();
        let a = m.density(c + x);
        let b = m.density(c - x);
        prop_assert!((a - b).abs() <= 1e-12 * (1.0 + a));
    }

    #[test]
    fn tail_brackets_enclose_the_tail(rho in 1.0..4.0f64, z in 0.05..6.0f64) {
        let m = Measure1D::boltzmann(rho).unwrap();
        let (lower, upper) = tail_bracket(rho, z).unwrap();
        let tail = m.upper_tail(z);
        prop_assert!(tail <= upper + 1e-12);
        if lower > 0.0 {
            prop_assert!(tail >= lower - 1e-12);
        }
    }

    #[test]
    fn float_formatting_roundtrips(x in -1e12..1e12f64) {
        let s = fmt_float(x).unwrap();
        let back: f64 = s.parse().unwrap();
        prop_assert!((back - x).abs() <= x.abs() * 1e-9 + 1e-300, "{x} -> {s} -> {back}");
    }
}
