//! Exact header-frequency bookkeeping.
//!
//! [`FrequencyVector`] stores every header it sees, so it is the brute-force
//! ground truth the sketch is measured against, not something a switch could
//! afford to keep.

use alloc::collections::BTreeMap;

use crate::detector::Verdict;
use crate::error::{Error, Result};
use crate::HeaderId;

/// Default `F0 / M` ratio at or above which a window is labelled zombie.
pub const DEFAULT_UNIQUE_RATIO: f64 = 0.80;

/// Sparse per-window header counts. Absent headers have count zero.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FrequencyVector {
    counts: BTreeMap<HeaderId, u64>,
    total: u64,
}

impl FrequencyVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn observe(&mut self, header: HeaderId) {
        *self.counts.entry(header).or_insert(0) += 1;
        self.total += 1;
    }

    pub fn count(&self, header: HeaderId) -> u64 {
        self.counts.get(&header).copied().unwrap_or(0)
    }

    /// Non-zero `(header, count)` pairs in header order.
    pub fn iter(&self) -> impl Iterator<Item = (HeaderId, u64)> + '_ {
        self.counts.iter().map(|(&h, &c)| (h, c))
    }

    /// Number of distinct headers.
    pub fn f0(&self) -> u64 {
        self.counts.len() as u64
    }

    /// Number of packets.
    pub fn f1(&self) -> u64 {
        self.total
    }

    /// Sum of squared frequencies.
    pub fn f2(&self) -> u64 {
        self.counts.values().map(|&c| c * c).sum()
    }

    /// Variance of the non-zero frequencies, `F2/F0 - (F1/F0)^2`.
    pub fn variance(&self) -> Result<f64> {
        if self.counts.is_empty() {
            return Err(Error::EmptyWindow);
        }
        let f0 = self.f0() as f64;
        let mean = self.f1() as f64 / f0;
        Ok((self.f2() as f64 / f0 - mean * mean).max(0.0))
    }

    /// Labels the window zombie when `F0 / M >= ratio_threshold`.
    pub fn ground_truth_label(&self, ratio_threshold: f64) -> Result<Verdict> {
        if self.total == 0 {
            return Err(Error::EmptyWindow);
        }
        if !(0.0..=1.0).contains(&ratio_threshold) {
            return Err(Error::Domain("ratio threshold must lie in [0, 1]"));
        }
        // Cross-multiplied so the 80% boundary is not lost to rounding.
        let unique = self.f0() as f64;
        let total = self.total as f64;
        Ok(if unique >= ratio_threshold * total {
            Verdict::Zombie
        } else {
            Verdict::Good
        })
    }
}

impl FromIterator<HeaderId> for FrequencyVector {
    fn from_iter<I: IntoIterator<Item = HeaderId>>(iter: I) -> Self {
        let mut v = FrequencyVector::new();
        v.extend(iter);
        v
    }
}

impl Extend<HeaderId> for FrequencyVector {
    fn extend<I: IntoIterator<Item = HeaderId>>(&mut self, iter: I) {
        for h in iter {
            self.observe(h);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fv(s: &[u64]) -> FrequencyVector {
        s.iter().copied().collect()
    }

    #[test]
    fn observe_counts() {
        let mut v = FrequencyVector::new();
        v.observe(7);
        assert_eq!((v.count(7), v.f1()), (1, 1));
        v.observe(7);
        assert_eq!((v.count(7), v.f1()), (2, 2));
        v.observe(9);
        assert_eq!(v.iter().collect::<Vec<_>>(), vec![(7, 2), (9, 1)]);
        assert_eq!(v.f1(), 3);
    }

    #[test]
    fn moments() {
        let empty = FrequencyVector::new();
        assert_eq!((empty.f0(), empty.f1(), empty.f2()), (0, 0, 0));

        let aab = fv(&[1, 1, 2]);
        assert_eq!((aab.f0(), aab.f1(), aab.f2()), (2, 3, 5));
        assert_eq!(aab.variance().unwrap(), 0.25);

        let distinct = fv(&(0..50).collect::<Vec<_>>());
        assert_eq!((distinct.f0(), distinct.f1(), distinct.f2()), (50, 50, 50));
        assert_eq!(distinct.variance().unwrap(), 0.0);

        let same = fv(&[4; 50]);
        assert_eq!((same.f0(), same.f1(), same.f2()), (1, 50, 2500));
        assert_eq!(same.variance().unwrap(), 0.0);
    }

    #[test]
    fn variance_of_empty_window_errors() {
        assert_eq!(FrequencyVector::new().variance(), Err(Error::EmptyWindow));
    }

    fn window(unique: u64, total: u64) -> FrequencyVector {
        let mut v: FrequencyVector = (0..unique).collect();
        v.extend(core::iter::repeat_n(0, (total - unique) as usize));
        v
    }

    #[test]
    fn ground_truth_rule() {
        let t = DEFAULT_UNIQUE_RATIO;
        assert_eq!(window(490, 500).ground_truth_label(t), Ok(Verdict::Zombie));
        assert_eq!(window(10, 50).ground_truth_label(t), Ok(Verdict::Good));
        assert_eq!(window(40, 50).ground_truth_label(t), Ok(Verdict::Zombie));
        assert_eq!(window(39, 50).ground_truth_label(t), Ok(Verdict::Good));
        assert_eq!(
            FrequencyVector::new().ground_truth_label(t),
            Err(Error::EmptyWindow)
        );
    }

    proptest! {
        #[test]
        fn moment_inequalities(stream in prop::collection::vec(0u64..20, 1..200)) {
            let v = fv(&stream);
            let (f0, f1, f2) = (v.f0(), v.f1(), v.f2());
            prop_assert_eq!(f1, v.iter().map(|(_, c)| c).sum::<u64>());
            prop_assert!(v.iter().all(|(_, c)| c >= 1));
            prop_assert!(f0 <= f1 && f1 <= f2 && f2 <= f1 * f1);
        }

        #[test]
        fn variance_zero_iff_flat(stream in prop::collection::vec(0u64..8, 1..100)) {
            let v = fv(&stream);
            let var = v.variance().unwrap();
            prop_assert!(var >= 0.0);
            let first = v.iter().next().unwrap().1;
            let flat = v.iter().all(|(_, c)| c == first);
            prop_assert_eq!(var.abs() < 1e-9, flat);
        }

        #[test]
        fn f2_monotone_under_concatenation(
            a in prop::collection::vec(0u64..30, 0..100),
            b in prop::collection::vec(0u64..30, 0..100),
        ) {
            let joined = fv(&[a.clone(), b.clone()].concat());
            prop_assert!(joined.f2() >= fv(&a).f2());
            prop_assert!(joined.f2() >= fv(&b).f2());
        }
    }
}
