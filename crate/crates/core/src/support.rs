//! Accumulation of SOF zeros and the resulting support estimate.
//!
//! Limit points of zero sets are infinite-order objects. At finite order a
//! point counts as recurring when every order `n >= n_min` places a zero
//! within `epsilon` of it, so the proxy for the derived set is
//! `∩_{n >= n_min} (Z_n ⊕ epsilon)`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arcs::ArcSet;
use crate::measures::{schur_from_measure, MeasureSpec};
use crate::opuc::build_opuc;
use crate::para::QuadratureRule;
use crate::poly::Poly;
use crate::sof::{sof_family, SofContext, SofFamilySpec, SofMode};
use crate::{cis, circular_distance, format, wrap_angle, Error, Result};

/// Matching tolerance for zeros common to all late orders.
pub const MATCH_TOL: f64 = 1e-6;

#[derive(Clone, Debug)]
pub struct ZeroCloud {
    pub orders: Vec<usize>,
    /// `zeros[i]` holds the sorted zeros of order `orders[i]`.
    pub zeros: Vec<Vec<f64>>,
    pub anchor: Option<f64>,
    pub omega0: f64,
}

impl ZeroCloud {
    pub fn zeros_of(&self, n: usize) -> Option<&[f64]> {
        self.orders.iter().position(|&m| m == n).map(|i| self.zeros[i].as_slice())
    }

    pub fn max_order(&self) -> usize {
        self.orders.iter().copied().max().unwrap_or(0)
    }

    /// All zeros of all orders, sorted.
    pub fn union(&self) -> Vec<f64> {
        let mut z: Vec<f64> = self.zeros.iter().flatten().copied().collect();
        z.sort_by(f64::total_cmp);
        z
    }

    /// Zeros of the top order that have a match within `eps` at every order
    /// `>= n_min`.
    pub fn eventually_common(&self, n_min: usize, eps: f64) -> Vec<f64> {
        let top = self.max_order();
        let Some(last) = self.zeros_of(top) else {
            return Vec::new();
        };
        last.iter()
            .copied()
            .filter(|&t| {
                self.orders
                    .iter()
                    .zip(&self.zeros)
                    .filter(|(&n, _)| n >= n_min)
                    .all(|(_, z)| z.iter().any(|&s| circular_distance(s, t) < eps))
            })
            .collect()
    }

    /// Largest circular gap between consecutive zeros of order `n`.
    pub fn max_gap(&self, n: usize) -> Option<f64> {
        let z = self.zeros_of(n)?;
        if z.is_empty() {
            return None;
        }
        let k = z.len();
        Some(
            (0..k)
                .map(|i| if i + 1 < k { z[i + 1] - z[i] } else { z[0] + std::f64::consts::TAU - z[i] })
                .fold(0.0, f64::max),
        )
    }
}

/// Zero sets of a family for each order in `orders`.
pub fn zero_cloud(ctx: &SofContext, family: &SofFamilySpec, orders: std::ops::RangeInclusive<usize>) -> Result<ZeroCloud> {
    let insts = sof_family(ctx, family, orders)?;
    let anchor = match family.mode {
        SofMode::F1 => Some(wrap_angle(family.anchor.arg(), family.omega0)),
        _ => None,
    };
    Ok(ZeroCloud {
        orders: insts.iter().map(|f| f.order).collect(),
        zeros: insts.into_iter().map(|f| f.zeros).collect(),
        anchor,
        omega0: family.omega0,
    })
}

/// `∩_{n >= n_min} ∪_{z in Z_n} [z - eps, z + eps]`.
pub fn accumulation_set(cloud: &ZeroCloud, epsilon: f64, n_min: usize) -> ArcSet {
    let mut acc = ArcSet::full();
    for (_, z) in cloud.orders.iter().zip(&cloud.zeros).filter(|(&n, _)| n >= n_min) {
        let balls: Vec<ArcSet> = z.iter().map(|&t| ArcSet::ball(t, epsilon)).collect();
        acc = acc.intersect(&ArcSet::union_all(&balls));
        if acc.is_empty() {
            break;
        }
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SupportEstimate {
    pub arcs: Vec<(f64, f64)>,
    pub epsilon: f64,
    pub n_max: usize,
    pub anchors: Vec<f64>,
    #[serde(skip)]
    pub n_min: usize,
}

impl SupportEstimate {
    pub fn set(&self) -> ArcSet {
        ArcSet::union_all(&self.arcs.iter().map(|&(lo, hi)| ArcSet::arc(lo, hi)).collect::<Vec<_>>())
    }

    pub fn to_json(&self) -> String {
        format::to_json(self)
    }
}

/// Accumulation set of the `f^{(1)}` family anchored at `anchor`, with
/// the anchor's own component dropped when it is no longer than `2 eps`.
pub fn anchor_accumulation(ctx: &SofContext, anchor: f64, n_min: usize, n_max: usize, epsilon: f64) -> Result<ArcSet> {
    let family = SofFamilySpec::anchored(anchor, SofMode::F1);
    let cloud = zero_cloud(ctx, &family, n_min.max(1)..=n_max)?;
    let acc = accumulation_set(&cloud, epsilon, n_min);
    Ok(match acc.component_containing(anchor) {
        Some((lo, hi)) if hi - lo <= 2.0 * epsilon * (1.0 + 1e-9) => acc.without_component_at(anchor),
        _ => acc,
    })
}

/// `supp μ ≈ ∩_k Z(w_k)'`, one `f^{(1)}` family per anchor angle.
///
/// `n_min` defaults to `n_max / 2`.
pub fn support_estimate(
    spec: &MeasureSpec,
    anchors: &[f64],
    n_max: usize,
    epsilon: f64,
    n_min: Option<usize>,
) -> Result<SupportEstimate> {
    if anchors.is_empty() {
        return Err(Error::InvalidFamily("at least one anchor is required".into()));
    }
    if !epsilon.is_finite() || epsilon <= 0.0 {
        return Err(Error::InvalidFamily(format!("epsilon must be positive, got {epsilon}")));
    }
    if n_max == 0 {
        return Err(Error::OrderOutOfRange { requested: 0, available: 0 });
    }
    let n_min = n_min.unwrap_or(n_max / 2).clamp(1, n_max);
    let schur = schur_from_measure(spec, n_max)?;
    let ctx = SofContext::from_table(build_opuc(&schur, n_max)?)?;
    let per_anchor = anchors
        .par_iter()
        .map(|&a| anchor_accumulation(&ctx, a, n_min, n_max, epsilon))
        .collect::<Result<Vec<_>>>()?;
    let set = per_anchor
        .iter()
        .fold(ArcSet::full(), |acc, s| acc.intersect(s));
    Ok(SupportEstimate {
        arcs: set.to_arcs(),
        epsilon,
        n_max,
        anchors: anchors.to_vec(),
        n_min,
    })
}

/// Number of zeros of each order lying in the closed arc `gap`, as
/// `(n, count)`.
pub fn gap_zero_census(cloud: &ZeroCloud, gap: (f64, f64)) -> Vec<(usize, usize)> {
    let g = ArcSet::arc(gap.0, gap.1);
    cloud
        .orders
        .iter()
        .zip(&cloud.zeros)
        .map(|(&n, z)| (n, z.iter().filter(|&&t| g.contains_point(t)).count()))
        .collect()
}

/// First cyclic gap of `z_n` (as the pair of bounding zeros) that contains
/// no zero of `z_m`. Every component of the circle minus two zeros of `f_n`
/// must meet the zeros of every later `f_m`, which reduces to this check on
/// consecutive pairs.
pub fn separation_violation(z_n: &[f64], z_m: &[f64]) -> Option<(f64, f64)> {
    let k = z_n.len();
    if k < 2 {
        return None;
    }
    (0..k)
        .map(|i| (z_n[i], z_n[(i + 1) % k]))
        .find(|&(lo, hi)| {
            let len = (hi - lo).rem_euclid(std::f64::consts::TAU);
            !z_m.iter().any(|&t| {
                let d = (t - lo).rem_euclid(std::f64::consts::TAU);
                d > 0.0 && d < len
            })
        })
}

/// `sum_k H_k z_k R(z_k) conj(P(z_k))` with `R = P / ((z - z1)(z - z2))`,
/// together with `sum_k |H_k z_k R(z_k) conj(P(z_k))|` for scale.
///
/// On the circle the summand is a constant multiple of
/// `|P|^2 / (sin((θ - θ1)/2) sin((θ - θ2)/2))`; for a para-orthogonal `P`
/// of degree `n` and a rule exact beyond degree `n` the sum vanishes.
pub fn separation_integral(p: &Poly, theta1: f64, theta2: f64, rule: &QuadratureRule) -> Result<(Complex64, f64)> {
    let (r, rem1) = p.divide_linear(cis(theta1));
    let (r, rem2) = r.divide_linear(cis(theta2));
    let rem = rem1.norm().max(rem2.norm());
    if rem > 1e-8 * p.l1_norm() {
        return Err(Error::RemainderTooLarge { remainder: rem });
    }
    let terms: Vec<Complex64> = rule
        .node_angles
        .iter()
        .zip(&rule.weights)
        .map(|(&t, &h)| {
            let z = cis(t);
            z * r.eval(z) * p.eval(z).conj() * h
        })
        .collect();
    Ok((terms.iter().sum(), terms.iter().map(|v| v.norm()).sum()))
}
