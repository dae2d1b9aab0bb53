use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::monomial::Degree;

/// Per-coordinate cut points. A chamber is a product of intervals on which no
/// predicate `α_i ≥ t` with `t ∈ T_i` changes value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ThresholdSet(Vec<BTreeSet<i64>>);

impl ThresholdSet {
    /// `T_i = {0}` for every coordinate.
    pub fn zero(num_vars: usize) -> Self {
        ThresholdSet(vec![BTreeSet::from([0]); num_vars])
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn coordinate(&self, i: usize) -> &BTreeSet<i64> {
        &self.0[i]
    }

    pub fn insert(&mut self, i: usize, t: i64) {
        self.0[i].insert(t);
    }

    /// Adds `p_i` to `T_i` for each coordinate.
    pub fn insert_point(&mut self, p: &[i64]) {
        for (set, &t) in self.0.iter_mut().zip(p) {
            set.insert(t);
        }
    }

    pub fn union(&self, other: &ThresholdSet) -> ThresholdSet {
        ThresholdSet(self.0.iter().zip(&other.0).map(|(a, b)| a | b).collect())
    }

    /// Thresholds for `α ↦ f(-α-1)`: the predicate `(-α-1)_i ≥ t` flips at `-t`.
    pub fn reflect(&self) -> ThresholdSet {
        ThresholdSet(self.0.iter().map(|s| s.iter().map(|t| -t).collect()).collect())
    }

    /// Thresholds for `α ↦ f(α + s)`.
    pub fn shift(&self, s: &[i64]) -> ThresholdSet {
        ThresholdSet(self.0.iter().zip(s).map(|(set, &s)| set.iter().map(|t| t - s).collect()).collect())
    }

    /// Thresholds for `α ↦ f(k∘α)`: `k α_i ≥ t` iff `α_i ≥ ⌈t/k⌉`.
    pub fn scale_preimage(&self, k: &[u32]) -> ThresholdSet {
        ThresholdSet(
            self.0
                .iter()
                .zip(k)
                .map(|(set, &k)| {
                    set.iter().map(|&t| t.div_euclid(k as i64) + i64::from(t.rem_euclid(k as i64) != 0)).collect()
                })
                .collect(),
        )
    }

    /// Adds every integer in `lo..=hi` on each coordinate.
    pub fn with_range(&self, lo: i64, hi: i64) -> ThresholdSet {
        ThresholdSet(self.0.iter().map(|s| s.iter().copied().chain(lo..=hi).collect()).collect())
    }
}

/// An integer interval; `None` marks an infinite end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub lo: Option<i64>,
    pub hi: Option<i64>,
}

impl Interval {
    pub fn contains(&self, v: i64) -> bool {
        self.lo.is_none_or(|lo| v >= lo) && self.hi.is_none_or(|hi| v <= hi)
    }

    /// Point of least absolute value, preferring the nonnegative one.
    pub fn representative(&self) -> i64 {
        if self.contains(0) {
            0
        } else if self.hi.is_some_and(|hi| hi < 0) {
            self.hi.unwrap()
        } else {
            self.lo.expect("interval missing 0 with no upper bound below 0 has a lower bound")
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_some() && self.hi.is_some()
    }

    /// `[lo, hi]` as JSON-style pair.
    pub fn to_pair(&self) -> [Option<i64>; 2] {
        [self.lo, self.hi]
    }
}

/// A product of intervals with its chosen representative point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Chamber {
    pub intervals: Vec<Interval>,
    pub rep: Degree,
}

impl Chamber {
    pub fn contains(&self, alpha: &Degree) -> bool {
        self.intervals.iter().zip(alpha.coords()).all(|(iv, &v)| iv.contains(v))
    }

    pub fn is_bounded(&self) -> bool {
        self.intervals.iter().all(Interval::is_bounded)
    }

    /// Extreme points used to probe constancy: interval ends, with rays probed
    /// `reach` steps beyond their finite end.
    pub fn probes(&self, reach: i64) -> Vec<Degree> {
        let per_coord: Vec<Vec<i64>> = self
            .intervals
            .iter()
            .map(|iv| {
                let lo = iv.lo.unwrap_or_else(|| iv.hi.map_or(-reach, |h| h - reach));
                let hi = iv.hi.unwrap_or_else(|| iv.lo.map_or(reach, |l| l + reach));
                if lo == hi {
                    vec![lo]
                } else {
                    vec![lo, hi]
                }
            })
            .collect();
        let mut out = vec![Vec::new()];
        for options in per_coord {
            out = out
                .into_iter()
                .flat_map(|p: Vec<i64>| {
                    options.iter().map(move |&v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                })
                .collect();
        }
        out.into_iter().map(Degree).collect()
    }
}

/// Intervals cut by sorted thresholds `t_0 < ... < t_m`:
/// `(-∞, t_0-1], [t_0, t_1-1], ..., [t_m, ∞)`.
fn cut(ts: &BTreeSet<i64>) -> Vec<Interval> {
    let ts: Vec<i64> = ts.iter().copied().collect();
    let mut out = Vec::with_capacity(ts.len() + 1);
    out.push(Interval { lo: None, hi: Some(ts[0] - 1) });
    for w in ts.windows(2) {
        out.push(Interval { lo: Some(w[0]), hi: Some(w[1] - 1) });
    }
    out.push(Interval { lo: Some(*ts.last().unwrap()), hi: None });
    out
}

/// The finite partition of `Z^d` into chambers generated by a threshold set,
/// ordered lexicographically by interval index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChamberDecomposition {
    thresholds: ThresholdSet,
    axes: Vec<Vec<Interval>>,
    chambers: Vec<Chamber>,
}

impl ChamberDecomposition {
    pub fn new(thresholds: ThresholdSet) -> Self {
        let mut thresholds = thresholds;
        for i in 0..thresholds.num_vars() {
            thresholds.insert(i, 0);
        }
        let axes: Vec<Vec<Interval>> = thresholds.0.iter().map(cut).collect();
        let mut chambers = vec![Chamber { intervals: Vec::new(), rep: Degree(Vec::new()) }];
        for axis in &axes {
            chambers = chambers
                .into_iter()
                .flat_map(|c| {
                    axis.iter().map(move |iv| {
                        let mut c = c.clone();
                        c.intervals.push(*iv);
                        c.rep.0.push(iv.representative());
                        c
                    })
                })
                .collect();
        }
        ChamberDecomposition { thresholds, axes, chambers }
    }

    pub fn thresholds(&self) -> &ThresholdSet {
        &self.thresholds
    }

    pub fn chambers(&self) -> &[Chamber] {
        &self.chambers
    }

    pub fn len(&self) -> usize {
        self.chambers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chambers.is_empty()
    }

    /// Common refinement.
    pub fn refine(&self, other: &ChamberDecomposition) -> ChamberDecomposition {
        ChamberDecomposition::new(self.thresholds.union(&other.thresholds))
    }

    /// Index of the chamber containing `α`.
    pub fn locate(&self, alpha: &Degree) -> usize {
        let mut idx = 0;
        for (axis, &v) in self.axes.iter().zip(alpha.coords()) {
            let pos = axis.iter().position(|iv| iv.contains(v)).expect("intervals cover Z");
            idx = idx * axis.len() + pos;
        }
        idx
    }

    /// Chambers meeting the box `[lo, hi]^d`.
    pub fn meeting_box(&self, lo: i64, hi: i64) -> Vec<usize> {
        (0..self.chambers.len())
            .filter(|&c| {
                self.chambers[c]
                    .intervals
                    .iter()
                    .all(|iv| iv.lo.is_none_or(|l| l <= hi) && iv.hi.is_none_or(|h| h >= lo))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn one_variable_cuts() {
        let mut t = ThresholdSet::zero(1);
        t.insert(0, 2);
        let dec = ChamberDecomposition::new(t);
        let reps: Vec<i64> = dec.chambers().iter().map(|c| c.rep.0[0]).collect();
        assert_eq!(reps, vec![-1, 0, 2]);
        assert_eq!(dec.locate(&Degree(vec![1])), 1);
        assert_eq!(dec.locate(&Degree(vec![-7])), 0);
        assert_eq!(dec.locate(&Degree(vec![9])), 2);
    }

    #[test]
    fn negative_thresholds_prefer_nearest_zero() {
        let mut t = ThresholdSet::zero(1);
        t.insert(0, -3);
        let dec = ChamberDecomposition::new(t);
        let reps: Vec<i64> = dec.chambers().iter().map(|c| c.rep.0[0]).collect();
        assert_eq!(reps, vec![-4, -1, 0]);
    }

    #[test]
    fn scale_preimage_rounds_up() {
        let mut t = ThresholdSet::zero(1);
        t.insert(0, 3);
        t.insert(0, -3);
        let s = t.scale_preimage(&[2]);
        assert_eq!(s.coordinate(0).iter().copied().collect::<Vec<_>>(), vec![-1, 0, 2]);
    }

    proptest! {
        #[test]
        fn chambers_partition_points(ts in proptest::collection::vec(-4i64..5, 0..4), a in -8i64..8, b in -8i64..8) {
            let mut t = ThresholdSet::zero(2);
            for (j, v) in ts.iter().enumerate() {
                t.insert(j % 2, *v);
            }
            let dec = ChamberDecomposition::new(t);
            let alpha = Degree(vec![a, b]);
            let hits: Vec<usize> = (0..dec.len()).filter(|&c| dec.chambers()[c].contains(&alpha)).collect();
            prop_assert_eq!(hits, vec![dec.locate(&alpha)]);
            for c in dec.chambers() {
                prop_assert!(c.contains(&c.rep));
            }
        }
    }
}
