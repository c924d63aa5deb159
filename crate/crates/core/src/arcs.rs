//! Finite unions of closed arcs of the unit circle.
//!
//! Stored as sorted, disjoint closed intervals of `[0, 2 pi]`; an arc that
//! crosses angle 0 is split in two and glued back by [`ArcSet::to_arcs`].

use std::f64::consts::TAU;

use crate::wrap_angle;

/// Arcs separated by less than this are merged.
pub const MERGE_TOL: f64 = 1e-12;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ArcSet {
    parts: Vec<(f64, f64)>,
}

impl ArcSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn full() -> Self {
        Self {
            parts: vec![(0.0, TAU)],
        }
    }

    /// Closed arc from `lo` counterclockwise to `hi`; lengths of `2 pi` or
    /// more give the full circle.
    pub fn arc(lo: f64, hi: f64) -> Self {
        let len = hi - lo;
        if len < 0.0 {
            return Self::empty();
        }
        if len >= TAU {
            return Self::full();
        }
        let a = wrap_angle(lo, 0.0);
        let b = a + len;
        if b <= TAU {
            Self { parts: vec![(a, b)] }
        } else {
            Self {
                parts: vec![(0.0, b - TAU), (a, TAU)],
            }
        }
    }

    /// Closed ball `[c - r, c + r]` along the circle.
    pub fn ball(center: f64, radius: f64) -> Self {
        Self::arc(center - radius, center + radius)
    }

    fn from_parts(mut parts: Vec<(f64, f64)>) -> Self {
        parts.sort_by(|x, y| x.0.total_cmp(&y.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(parts.len());
        for (lo, hi) in parts {
            match merged.last_mut() {
                Some(last) if lo <= last.1 + MERGE_TOL => last.1 = last.1.max(hi),
                _ => merged.push((lo, hi)),
            }
        }
        if let [(lo, hi)] = merged[..] {
            if lo <= MERGE_TOL && hi >= TAU - MERGE_TOL {
                return Self::full();
            }
        }
        Self { parts: merged }
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::from_parts(self.parts.iter().chain(&other.parts).copied().collect())
    }

    pub fn union_all<'a>(sets: impl IntoIterator<Item = &'a ArcSet>) -> Self {
        Self::from_parts(sets.into_iter().flat_map(|s| s.parts.iter().copied()).collect())
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let (a, b) = (&self.parts, &other.parts);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            let lo = a[i].0.max(b[j].0);
            let hi = a[i].1.min(b[j].1);
            if lo <= hi {
                out.push((lo, hi));
            }
            if a[i].1 < b[j].1 {
                i += 1;
            } else {
                j += 1;
            }
        }
        Self::from_parts(out)
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.parts == [(0.0, TAU)]
    }

    pub fn contains_point(&self, theta: f64) -> bool {
        let t = wrap_angle(theta, 0.0);
        self.parts.iter().any(|&(lo, hi)| lo <= t && t <= hi) || (t == 0.0 && self.parts.last().is_some_and(|p| p.1 == TAU))
    }

    /// `other ⊆ self`.
    pub fn contains_set(&self, other: &Self) -> bool {
        other
            .parts
            .iter()
            .all(|&(lo, hi)| self.parts.iter().any(|&(a, b)| a <= lo && hi <= b))
    }

    /// Every arc widened by `r` on both sides.
    pub fn thicken(&self, r: f64) -> Self {
        Self::union_all(&self.to_arcs().iter().map(|&(lo, hi)| Self::arc(lo - r, hi + r)).collect::<Vec<_>>())
    }

    /// Total angular length.
    pub fn length(&self) -> f64 {
        self.parts.iter().map(|p| p.1 - p.0).sum()
    }

    /// Connected components as `[lo, hi]` with `lo` in `[0, 2 pi)` and
    /// `hi = lo + length`; the full circle is `[0, 2 pi]`.
    pub fn to_arcs(&self) -> Vec<(f64, f64)> {
        if self.parts.is_empty() {
            return Vec::new();
        }
        if self.is_full() {
            return vec![(0.0, TAU)];
        }
        let mut arcs = self.parts.clone();
        let n = arcs.len();
        if n > 1 && arcs[0].0 <= MERGE_TOL && arcs[n - 1].1 >= TAU - MERGE_TOL {
            let first = arcs.remove(0);
            let last = arcs.last_mut().unwrap();
            last.1 = TAU + first.1;
        }
        if arcs.len() == 1 && arcs[0] == (0.0, TAU) {
            return arcs;
        }
        arcs.iter_mut().for_each(|a| {
            if a.0 == TAU {
                *a = (0.0, a.1 - TAU);
            }
        });
        arcs.sort_by(|x, y| x.0.total_cmp(&y.0));
        arcs
    }

    /// The component containing `theta`, as returned by [`ArcSet::to_arcs`].
    pub fn component_containing(&self, theta: f64) -> Option<(f64, f64)> {
        let t = wrap_angle(theta, 0.0);
        self.to_arcs()
            .into_iter()
            .find(|&(lo, hi)| (lo <= t && t <= hi) || (lo <= t + TAU && t + TAU <= hi))
    }

    /// Drops the component containing `theta`, if any.
    pub fn without_component_at(&self, theta: f64) -> Self {
        match self.component_containing(theta) {
            None => self.clone(),
            Some(comp) => Self::union_all(
                &self
                    .to_arcs()
                    .into_iter()
                    .filter(|&a| a != comp)
                    .map(|(lo, hi)| Self::arc(lo, hi))
                    .collect::<Vec<_>>(),
            ),
        }
    }
}
