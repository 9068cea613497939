//! Discrete channel families whose one-way capacity bounds increase while
//! the two-way capacity decreases.
//!
//! Starting from `x₀ = b`, each step solves `Q_ub(t) = Q_lb(x_{n−1})` by
//! bisection and sets `x_n = (t + a)/2`. The resulting `x_n` shrink
//! geometrically fast, so the bisection uses a relative tolerance and the
//! two-way values are carried as unevaluated double-double sums.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qmath::binary_entropy;

use super::continuity_entropic_term;

/// `hi + lo` kept unevaluated; exact for the sum of two doubles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExactSum {
    pub hi: f64,
    pub lo: f64,
}

impl ExactSum {
    /// Knuth's two-sum.
    pub fn of(a: f64, b: f64) -> Self {
        let hi = a + b;
        let bb = hi - a;
        let lo = (a - (hi - bb)) + (b - bb);
        Self { hi, lo }
    }

    pub fn value(&self) -> f64 {
        self.hi + self.lo
    }
}

impl PartialOrd for ExactSum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi)? {
            Ordering::Equal => self.lo.partial_cmp(&other.lo),
            ord => Some(ord),
        }
    }
}

/// The three monotone curves the construction needs.
pub struct BoundCurves<'a> {
    /// Increasing lower bound on the one-way capacity.
    pub lower: &'a dyn Fn(f64) -> f64,
    /// Increasing upper bound on the one-way capacity.
    pub upper: &'a dyn Fn(f64) -> f64,
    /// Decreasing two-way capacity.
    pub two_way: &'a dyn Fn(f64) -> ExactSum,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SequenceItem {
    pub n: usize,
    pub x: f64,
    pub q_lb: f64,
    pub q_ub: f64,
    pub q_two_way: ExactSum,
}

const GRID_POINTS: usize = 100;
const RELATIVE_TOL: f64 = 1e-12;

fn violated(msg: String) -> Error {
    Error::PreconditionViolated(msg)
}

/// Spot-checks the preconditions on a uniform grid over `[a, b]`.
pub fn check_preconditions(curves: &BoundCurves, a: f64, b: f64) -> Result<()> {
    if !(a < b) {
        return Err(violated(format!("interval [{a}, {b}] is empty")));
    }
    let gap = ((curves.lower)(a) - (curves.upper)(a)).abs();
    if gap > 1e-9 {
        return Err(violated(format!("bounds differ by {gap:.3e} at a = {a}")));
    }
    let grid: Vec<f64> = (0..GRID_POINTS)
        .map(|i| {
            if i + 1 == GRID_POINTS {
                b
            } else {
                a + (b - a) * i as f64 / (GRID_POINTS - 1) as f64
            }
        })
        .collect();
    for w in grid.windows(2) {
        let (x0, x1) = (w[0], w[1]);
        if (curves.lower)(x1) <= (curves.lower)(x0) {
            return Err(violated(format!("lower bound not increasing at x = {x1:e}")));
        }
        if (curves.upper)(x1) <= (curves.upper)(x0) {
            return Err(violated(format!("upper bound not increasing at x = {x1:e}")));
        }
        if (curves.two_way)(x1) >= (curves.two_way)(x0) {
            return Err(violated(format!("two-way capacity not decreasing at x = {x1:e}")));
        }
    }
    for &x in &grid {
        let (lb, ub) = ((curves.lower)(x), (curves.upper)(x));
        if lb > ub + 1e-12 {
            return Err(violated(format!("lower bound {lb} exceeds upper bound {ub} at x = {x:e}")));
        }
        if x > a && ub >= (curves.two_way)(x).value() {
            return Err(violated(format!(
                "upper bound {ub} reaches the two-way capacity at x = {x:e}"
            )));
        }
    }
    Ok(())
}

/// Builds `n_terms` members `x₁ > x₂ > …` of the discrete family.
pub fn proposition1_sequence(
    curves: &BoundCurves,
    a: f64,
    b: f64,
    n_terms: usize,
) -> Result<Vec<SequenceItem>> {
    check_preconditions(curves, a, b)?;
    let mut items = Vec::with_capacity(n_terms);
    let mut prev = b;
    for n in 1..=n_terms {
        let target = (curves.lower)(prev);
        let t = solve_upper(curves, a, prev, target);
        let x = 0.5 * (t + a);
        if !(x > a && x < prev) {
            return Err(violated(format!(
                "term {n} collapsed onto the endpoint (x = {x:e}); floating-point range exhausted"
            )));
        }
        items.push(SequenceItem {
            n,
            x,
            q_lb: (curves.lower)(x),
            q_ub: (curves.upper)(x),
            q_two_way: (curves.two_way)(x),
        });
        prev = x;
    }
    Ok(items)
}

/// Largest `t` found by bisection with `upper(t) ≤ target`.
fn solve_upper(curves: &BoundCurves, a: f64, b: f64, target: f64) -> f64 {
    let (mut lo, mut hi) = (a, b);
    loop {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= RELATIVE_TOL * hi.abs() || mid <= lo || mid >= hi {
            return lo;
        }
        if (curves.upper)(mid) <= target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// Checks the three invariants a constructed sequence must satisfy:
/// `x` strictly decreasing, the two-way value strictly increasing, and
/// `Q_ub(x_{n+1}) < Q_lb(x_n)`.
pub fn check_sequence(items: &[SequenceItem], curves: &BoundCurves, b: f64) -> Result<()> {
    let mut prev_x = b;
    for item in items {
        if !(item.x < prev_x) {
            return Err(violated(format!("x_{} = {:e} does not decrease", item.n, item.x)));
        }
        prev_x = item.x;
    }
    for w in items.windows(2) {
        if !(w[1].q_two_way > w[0].q_two_way) {
            return Err(violated(format!("two-way value does not increase at n = {}", w[1].n)));
        }
        if !((curves.upper)(w[1].x) < (curves.lower)(w[0].x)) {
            return Err(violated(format!(
                "Q_ub(x_{}) is not below Q_lb(x_{})",
                w[1].n, w[0].n
            )));
        }
    }
    Ok(())
}

/// The family `λ(p) = 1/2 + p`, parametrised by `p`.
pub mod half_plus {
    use super::*;

    /// Right end of the range quoted for this family.
    pub const QUOTED_ENDPOINT: f64 = 2e-4;
    /// Default cap on the right end of the sequence interval.
    pub const DEFAULT_CAP: f64 = 1e-4;

    /// `max{0, (1/2 + p) H(p) − 2p}`, i.e. `1 − λ(2 − H(p))` without
    /// forming `λ` explicitly.
    pub fn lower(p: f64) -> f64 {
        ((0.5 + p) * binary_entropy(p).unwrap_or(0.0) - 2.0 * p).max(0.0)
    }

    /// Entropic branch of the continuity bound with `ε = 4(1/2 + p)√(p(1−p))`.
    pub fn entropic(p: f64) -> f64 {
        continuity_entropic_term(4.0 * (0.5 + p) * (p * (1.0 - p)).sqrt())
    }

    pub fn upper(p: f64) -> f64 {
        (0.5 - p).min(entropic(p))
    }

    pub fn two_way(p: f64) -> ExactSum {
        ExactSum::of(0.5, -p)
    }

    pub fn curves() -> BoundCurves<'static> {
        BoundCurves {
            lower: &lower,
            upper: &upper,
            two_way: &two_way,
        }
    }

    /// Where the entropic branch first meets `1 − λ = 1/2 − p`.
    pub fn crossing() -> f64 {
        let g = |p: f64| entropic(p) - (0.5 - p);
        let mut hi = 1e-6;
        while g(hi) < 0.0 {
            hi *= 2.0;
        }
        let mut lo = 0.0;
        while hi - lo > 1e-15 * hi {
            let mid = 0.5 * (lo + hi);
            if g(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    #[derive(Debug, Clone, PartialEq, Serialize)]
    pub struct SequenceReport {
        /// Computed crossing of the continuity bound with `1 − λ`.
        pub b_star: f64,
        /// Right end actually used, `min(cap, b_star)`.
        pub b: f64,
        pub quoted_endpoint: f64,
        pub items: Vec<SequenceItem>,
    }

    pub fn sequence(n_terms: usize, cap: f64) -> Result<SequenceReport> {
        let b_star = crossing();
        let b = cap.min(b_star);
        let items = proposition1_sequence(&curves(), 0.0, b, n_terms)?;
        Ok(SequenceReport {
            b_star,
            b,
            quoted_endpoint: QUOTED_ENDPOINT,
            items,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::capacity::{coherent_info_lower_bound, continuity_upper_bound};
    use approx::assert_relative_eq;

    #[test]
    fn exact_sum_orders_tiny_offsets() {
        let a = ExactSum::of(0.5, -1e-30);
        let b = ExactSum::of(0.5, -1e-40);
        assert_eq!(a.hi, 0.5);
        assert!(b > a);
        assert_eq!(ExactSum::of(0.25, 0.5).value(), 0.75);
    }

    #[test]
    fn family_curves_match_generic_bounds() {
        for p in [1e-3, 5e-3, 0.02] {
            let lambda = 0.5 + p;
            assert_relative_eq!(half_plus::lower(p), coherent_info_lower_bound(lambda, p).unwrap(), max_relative = 1e-9);
            assert_relative_eq!(half_plus::upper(p), continuity_upper_bound(lambda, p).unwrap(), max_relative = 1e-12);
        }
        assert_eq!(half_plus::lower(0.0), 0.0);
        assert_eq!(half_plus::upper(0.0), 0.0);
    }

    #[test]
    fn crossing_is_below_quoted_range() {
        let b_star = half_plus::crossing();
        assert!(b_star > half_plus::DEFAULT_CAP && b_star < half_plus::QUOTED_ENDPOINT);
        let gap = half_plus::entropic(b_star) - (0.5 - b_star);
        assert!(gap.abs() < 1e-12);
    }

    #[test]
    fn five_terms_satisfy_invariants() {
        let report = half_plus::sequence(5, half_plus::DEFAULT_CAP).unwrap();
        assert_eq!(report.items.len(), 5);
        check_sequence(&report.items, &half_plus::curves(), report.b).unwrap();
    }

    #[test]
    fn single_term_matches_definition() {
        let report = half_plus::sequence(1, half_plus::DEFAULT_CAP).unwrap();
        let x1 = report.items[0].x;
        let t = 2.0 * x1;
        let target = half_plus::lower(report.b);
        assert!(half_plus::upper(t) <= target);
        assert_relative_eq!(half_plus::upper(t), target, max_relative = 1e-9);
    }

    #[test]
    fn rejects_non_monotone_curves() {
        let lower = |x: f64| x;
        let upper = |x: f64| (x * 10.0).sin().abs();
        let two_way = |x: f64| ExactSum::of(2.0, -x);
        let curves = BoundCurves {
            lower: &lower,
            upper: &upper,
            two_way: &two_way,
        };
        assert!(matches!(
            proposition1_sequence(&curves, 0.0, 1.0, 3),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn rejects_upper_bound_above_two_way() {
        let lower = |x: f64| x;
        let upper = |x: f64| 2.0 * x;
        let two_way = |x: f64| ExactSum::of(1.0, -x);
        let curves = BoundCurves {
            lower: &lower,
            upper: &upper,
            two_way: &two_way,
        };
        assert!(proposition1_sequence(&curves, 0.0, 1.0, 3).is_err());
        assert!(proposition1_sequence(&curves, 0.0, 0.3, 3).is_ok());
    }
}
