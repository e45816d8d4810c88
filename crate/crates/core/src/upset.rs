//! Upward-closed subsets of a box in `Z^m`, stored by their minimal points.

use rayon::prelude::*;
use serde::Serialize;

use crate::category::{DegreeVector, Window};
use crate::error::{Error, Result};

/// An upward-closed set, known only inside `window`: `v ∈ window` belongs to
/// it iff `v ≥ u` for some `u` in `minimal`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UpSet {
    pub window: Window,
    pub minimal: Vec<DegreeVector>,
}

impl UpSet {
    /// Scans `window` and returns the set of points where `pred` holds.
    /// Fails with a witness pair if `pred` is not upward closed there.
    pub fn from_predicate<P>(window: Window, pred: P) -> Result<UpSet>
    where
        P: Fn(&DegreeVector) -> bool + Sync,
    {
        let points = window.points();
        let truth: Vec<bool> = points.par_iter().map(&pred).collect();
        let lookup = |v: &DegreeVector| -> Option<bool> {
            window.contains(v).then(|| truth[linear_index(&window, v)])
        };
        let m = window.m();
        let mut minimal = Vec::new();
        for (p, &t) in points.iter().zip(&truth) {
            if !t {
                continue;
            }
            let mut is_min = true;
            for j in 0..m {
                let up = p.plus(&DegreeVector::unit(m, j));
                if lookup(&up) == Some(false) {
                    return Err(Error::NotUpwardClosed {
                        lower: p.0.clone(),
                        upper: up.0,
                    });
                }
                if lookup(&p.minus(&DegreeVector::unit(m, j))) == Some(true) {
                    is_min = false;
                }
            }
            if is_min {
                minimal.push(p.clone());
            }
        }
        Ok(UpSet { window, minimal })
    }

    /// `{v ∈ window : v ≥ min}`.
    pub fn principal(window: Window, min: DegreeVector) -> Result<UpSet> {
        UpSet::from_predicate(window, |v| min.le(v))
    }

    pub fn full(window: Window) -> UpSet {
        UpSet {
            minimal: vec![window.lower.clone()],
            window,
        }
    }

    pub fn m(&self) -> usize {
        self.window.m()
    }

    pub fn contains(&self, v: &DegreeVector) -> bool {
        self.window.contains(v) && self.minimal.iter().any(|u| u.le(v))
    }

    pub fn is_empty(&self) -> bool {
        self.minimal.is_empty()
    }

    /// True when the set is the whole window.
    pub fn is_full(&self) -> bool {
        self.contains(&self.window.lower)
    }

    /// Intersection, known on the intersection of the windows.
    pub fn intersect(&self, other: &UpSet) -> Result<UpSet> {
        let window = self
            .window
            .intersect(&other.window)
            .ok_or_else(|| Error::Shape("windows do not intersect".into()))?;
        UpSet::from_predicate(window, |v| self.contains(v) && other.contains(v))
    }

    pub fn translate(&self, v: &DegreeVector) -> UpSet {
        UpSet {
            window: self.window.translate(v),
            minimal: self.minimal.iter().map(|u| u.plus(v)).collect(),
        }
    }

    /// The same set on a smaller window.
    pub fn restrict(&self, window: &Window) -> Result<UpSet> {
        let w = self
            .window
            .intersect(window)
            .ok_or_else(|| Error::Shape("windows do not intersect".into()))?;
        UpSet::from_predicate(w, |v| self.contains(v))
    }

    /// The part inside `N^m`.
    pub fn naturals(&self) -> Result<UpSet> {
        let lower = self.window.lower.join(&DegreeVector::zero(self.m()));
        let upper = self.window.upper.clone();
        self.restrict(&Window::new(lower, upper)?)
    }
}

fn linear_index(window: &Window, v: &DegreeVector) -> usize {
    let mut idx = 0usize;
    for j in 0..window.m() {
        let extent = (window.upper.0[j] - window.lower.0[j] + 1) as usize;
        idx = idx * extent + (v.0[j] - window.lower.0[j]) as usize;
    }
    idx
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(v: &[i64]) -> DegreeVector {
        DegreeVector(v.to_vec())
    }

    fn square(lo: i64, hi: i64) -> Window {
        Window::new(dv(&[lo, lo]), dv(&[hi, hi])).unwrap()
    }

    #[test]
    fn intersect_translate_scan() {
        let w = square(-2, 4);
        let a = UpSet::principal(w.clone(), dv(&[0, 1])).unwrap();
        let b = UpSet::principal(w.clone(), dv(&[0, 0])).unwrap();
        assert_eq!(a.intersect(&b).unwrap().minimal, vec![dv(&[0, 1])]);
        assert_eq!(a.translate(&dv(&[0, 1])).minimal, vec![dv(&[0, 2])]);
        let s = UpSet::from_predicate(w, |v| v.0[1] >= 1).unwrap();
        assert_eq!(s.minimal, vec![dv(&[-2, 1])]);
    }

    #[test]
    fn rejects_non_upward_closed() {
        let err = UpSet::from_predicate(square(0, 3), |v| v.0[0] == 1).unwrap_err();
        assert!(matches!(err, Error::NotUpwardClosed { .. }));
    }

    #[test]
    fn antichain_of_a_staircase() {
        let s = UpSet::from_predicate(square(0, 5), |v| v.0[0] + v.0[1] >= 3).unwrap();
        assert_eq!(s.minimal, vec![dv(&[0, 3]), dv(&[1, 2]), dv(&[2, 1]), dv(&[3, 0])]);
        for p in square(0, 5).points() {
            assert_eq!(s.contains(&p), p.0[0] + p.0[1] >= 3);
        }
        let n = UpSet::from_predicate(square(-3, 3), |v| v.0[0] + v.0[1] >= 3).unwrap().naturals().unwrap();
        assert_eq!(n, s.restrict(&square(0, 3)).unwrap());
    }
}
