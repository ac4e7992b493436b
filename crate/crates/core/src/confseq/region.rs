use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A finite union of disjoint closed intervals, sorted left to right.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConfidenceRegion {
    intervals: Vec<(f64, f64)>,
}

impl ConfidenceRegion {
    /// Validates ordering and disjointness; degenerate `[x, x]` intervals are
    /// allowed.
    pub fn new(intervals: Vec<(f64, f64)>) -> Result<Self> {
        for &(lo, hi) in &intervals {
            if !(lo.is_finite() && hi.is_finite()) {
                return Err(Error::InvalidRegion("endpoints must be finite"));
            }
            if lo > hi {
                return Err(Error::InvalidRegion("interval with lo > hi"));
            }
        }
        for w in intervals.windows(2) {
            if !(w[0].1 < w[1].0) {
                return Err(Error::InvalidRegion("intervals must be sorted and disjoint"));
            }
        }
        Ok(Self { intervals })
    }

    pub fn empty() -> Self {
        Self { intervals: Vec::new() }
    }

    pub fn interval(lo: f64, hi: f64) -> Result<Self> {
        Self::new(alloc::vec![(lo, hi)])
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    /// Lebesgue measure.
    pub fn volume(&self) -> f64 {
        self.intervals.iter().map(|(lo, hi)| hi - lo).sum()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.intervals.iter().any(|&(lo, hi)| lo <= x && x <= hi)
    }

    /// Smallest and largest point.
    pub fn hull(&self) -> Option<(f64, f64)> {
        Some((self.intervals.first()?.0, self.intervals.last()?.1))
    }

    /// Midpoint of the hull.
    pub fn center(&self) -> Option<f64> {
        self.hull().map(|(lo, hi)| 0.5 * (lo + hi))
    }

    /// Every point of `self` lies within `slack` of a point of `other`'s
    /// intervals, interval by interval (each of ours must fit inside one of
    /// theirs widened by `slack`).
    pub fn is_subset_of(&self, other: &Self, slack: f64) -> bool {
        self.intervals
            .iter()
            .all(|&(lo, hi)| other.intervals.iter().any(|&(olo, ohi)| olo - slack <= lo && hi <= ohi + slack))
    }

    /// Distance from `x` to the nearest point of the region.
    pub fn distance_to(&self, x: f64) -> Result<f64> {
        if self.is_empty() {
            return Err(Error::EmptyRegion);
        }
        Ok(self
            .intervals
            .iter()
            .map(|&(lo, hi)| {
                if x < lo {
                    lo - x
                } else if x > hi {
                    x - hi
                } else {
                    0.0
                }
            })
            .fold(f64::INFINITY, f64::min))
    }
}

fn directed(a: &ConfidenceRegion, b: &ConfidenceRegion) -> Result<f64> {
    // the distance to b is piecewise linear, so its maximum over a is at an
    // endpoint of a or at the middle of a gap of b that a covers
    let mut worst = 0.0_f64;
    for &(lo, hi) in a.intervals() {
        worst = worst.max(b.distance_to(lo)?).max(b.distance_to(hi)?);
        for gap in b.intervals().windows(2) {
            let mid = 0.5 * (gap[0].1 + gap[1].0);
            if lo <= mid && mid <= hi {
                worst = worst.max(b.distance_to(mid)?);
            }
        }
    }
    Ok(worst)
}

/// Hausdorff distance between two non-empty regions.
pub fn hausdorff(a: &ConfidenceRegion, b: &ConfidenceRegion) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyRegion);
    }
    Ok(directed(a, b)?.max(directed(b, a)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn r(v: &[(f64, f64)]) -> ConfidenceRegion {
        ConfidenceRegion::new(v.to_vec()).unwrap()
    }

    #[test]
    fn validation() {
        assert!(ConfidenceRegion::new(vec![(1.0, 0.0)]).is_err());
        assert!(ConfidenceRegion::new(vec![(0.0, 2.0), (1.0, 3.0)]).is_err());
        assert!(ConfidenceRegion::new(vec![(2.0, 3.0), (0.0, 1.0)]).is_err());
        assert!(ConfidenceRegion::new(vec![(0.0, f64::INFINITY)]).is_err());
        let e = ConfidenceRegion::empty();
        assert!(e.is_empty() && e.volume() == 0.0);
    }

    #[test]
    fn volume_and_membership() {
        let a = r(&[(0.0, 1.0), (2.0, 4.5)]);
        assert_eq!(a.volume(), 3.5);
        assert!(a.contains(0.0) && a.contains(3.0) && !a.contains(1.5));
        assert_eq!(a.hull(), Some((0.0, 4.5)));
    }

    #[test]
    fn hausdorff_examples() {
        let a = r(&[(0.0, 1.0)]);
        assert_eq!(hausdorff(&a, &a).unwrap(), 0.0);
        assert_eq!(hausdorff(&a, &r(&[(0.0, 2.0)])).unwrap(), 1.0);
        assert_eq!(hausdorff(&a, &r(&[(3.0, 4.0)])).unwrap(), 3.0);
        // gap in the middle of the other region
        assert_eq!(hausdorff(&r(&[(0.0, 10.0)]), &r(&[(0.0, 1.0), (9.0, 10.0)])).unwrap(), 4.0);
        assert_eq!(hausdorff(&a, &ConfidenceRegion::empty()), Err(Error::EmptyRegion));
    }

    #[test]
    fn subset_with_slack() {
        let inner = r(&[(0.1, 0.9)]);
        let outer = r(&[(0.0, 1.0)]);
        assert!(inner.is_subset_of(&outer, 0.0));
        assert!(!outer.is_subset_of(&inner, 0.0));
        assert!(outer.is_subset_of(&inner, 0.1 + 1e-12));
        assert!(ConfidenceRegion::empty().is_subset_of(&inner, 0.0));
    }
}
