//! One-dimensional sets as finite unions of intervals.
//!
//! Components are kept sorted and separated by gaps of positive length; a
//! degenerate component (lo == hi) is a single point. Endpoint open/closed
//! distinctions are not tracked: every quantity computed here (measure,
//! Minkowski content, enlargement) is insensitive to them under a continuous
//! density, and unions whose gaps have zero length are merged for the same
//! reason.

use crate::measure::Measure1D;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64, // may be -inf
    pub hi: f64, // may be +inf
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Interval {
        debug_assert!(lo <= hi, "interval endpoints out of order: [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IntervalUnion {
    components: Vec<Interval>,
}

impl IntervalUnion {
    pub fn empty() -> Self {
        IntervalUnion { components: vec![] }
    }

    pub fn full() -> Self {
        IntervalUnion { components: vec![Interval::new(f64::NEG_INFINITY, f64::INFINITY)] }
    }

    /// (-inf, t]
    pub fn ray_le(t: f64) -> Self {
        IntervalUnion { components: vec![Interval::new(f64::NEG_INFINITY, t)] }
    }

    /// [t, +inf)
    pub fn ray_ge(t: f64) -> Self {
        IntervalUnion { components: vec![Interval::new(t, f64::INFINITY)] }
    }

    pub fn segment(a: f64, b: f64) -> Self {
        IntervalUnion { components: vec![Interval::new(a, b)] }
    }

    pub fn point(a: f64) -> Self {
        IntervalUnion { components: vec![Interval::new(a, a)] }
    }

    /// Builds a union from arbitrary components, sorting and merging anything
    /// that overlaps or touches.
    pub fn from_components(mut parts: Vec<Interval>) -> Self {
        parts.retain(|iv| !(iv.lo.is_nan() || iv.hi.is_nan()));
        parts.sort_by(|a, b| a.lo.partial_cmp(&b.lo).unwrap());
        let mut merged: Vec<Interval> = Vec::with_capacity(parts.len());
        for iv in parts {
            match merged.last_mut() {
                Some(last) if iv.lo <= last.hi => {
                    if iv.hi > last.hi {
                        last.hi = iv.hi;
                    }
                }
                _ => merged.push(iv),
            }
        }
        IntervalUnion { components: merged }
    }

    pub fn components(&self) -> &[Interval] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.components.len() == 1
            && self.components[0].lo == f64::NEG_INFINITY
            && self.components[0].hi == f64::INFINITY
    }

    pub fn contains(&self, x: f64) -> bool {
        self.components.iter().any(|iv| iv.lo <= x && x <= iv.hi)
    }

    pub fn complement(&self) -> IntervalUnion {
        if self.is_empty() {
            return IntervalUnion::full();
        }
        let mut parts = Vec::new();
        let mut cursor = f64::NEG_INFINITY;
        for iv in &self.components {
            if iv.lo > cursor {
                parts.push(Interval::new(cursor, iv.lo));
            }
            cursor = iv.hi;
        }
        if cursor < f64::INFINITY {
            parts.push(Interval::new(cursor, f64::INFINITY));
        }
        // Gaps between distinct components have positive length, so the
        // complement parts are already disjoint and sorted.
        IntervalUnion { components: parts }
    }

    /// Minkowski sum with [-r, r].
    pub fn enlarge(&self, r: f64) -> IntervalUnion {
        debug_assert!(r >= 0.0);
        IntervalUnion::from_components(
            self.components.iter().map(|iv| Interval::new(iv.lo - r, iv.hi + r)).collect(),
        )
    }

    /// nu(S) under the given measure. Segments on the right half are
    /// differenced through the upper tail so deep-tail components keep full
    /// relative accuracy.
    pub fn measure(&self, m: &Measure1D) -> f64 {
        let center = m.center();
        let mut total = 0.0;
        for iv in &self.components {
            total += if iv.hi == f64::INFINITY {
                if iv.lo == f64::NEG_INFINITY {
                    1.0
                } else {
                    m.upper_tail(iv.lo)
                }
            } else if iv.lo == f64::NEG_INFINITY {
                m.cdf(iv.hi)
            } else if iv.lo >= center {
                (m.upper_tail(iv.lo) - m.upper_tail(iv.hi)).max(0.0)
            } else {
                (m.cdf(iv.hi) - m.cdf(iv.lo)).max(0.0)
            };
        }
        total.min(1.0)
    }

    /// Lower Minkowski content m_nu(S): the sum of the density over the finite
    /// boundary sides. A segment [a, b] contributes density(a) + density(b), a
    /// ray its finite endpoint, a single point 2 * density(a); the empty set
    /// and the full line contribute nothing.
    pub fn minkowski_content(&self, m: &Measure1D) -> f64 {
        let mut total = 0.0;
        for iv in &self.components {
            if iv.is_point() {
                total += 2.0 * m.density(iv.lo);
                continue;
            }
            if iv.lo != f64::NEG_INFINITY {
                total += m.density(iv.lo);
            }
            if iv.hi != f64::INFINITY {
                total += m.density(iv.hi);
            }
        }
        total
    }
}
