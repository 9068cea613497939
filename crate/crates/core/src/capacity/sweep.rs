use serde::Serialize;

use crate::error::{unit_interval, Error, Result};

use super::{coherent_info_lower_bound, continuity_upper_bound, one_way_capacity, two_way_capacity};

/// One row of a capacity sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CapacityCurvePoint {
    /// Sweep coordinate (`lambda` or `p`).
    pub x: f64,
    pub lambda: f64,
    pub p: f64,
    /// Certified one-way capacity; `None` outside the degradable regime.
    pub one_way: Option<f64>,
    pub two_way: f64,
    pub lower_bound: f64,
    pub upper_bound: f64,
}

/// `points` evenly spaced values from `min` to `max`, both ends exact.
pub fn uniform_grid(min: f64, max: f64, points: usize) -> Result<Vec<f64>> {
    if points < 2 {
        return Err(Error::Domain {
            name: "points",
            value: points as f64,
            allowed: "[2, ∞)",
        });
    }
    if !(min <= max) {
        return Err(Error::Domain {
            name: "min",
            value: min,
            allowed: "values not above max",
        });
    }
    let last = points - 1;
    Ok((0..points)
        .map(|i| {
            if i == last {
                max
            } else {
                min + (max - min) * (i as f64 / last as f64)
            }
        })
        .collect())
}

/// Evaluates every column at `(λ, p)`.
///
/// Inside the degradable regime the one-way value is exact and both bound
/// columns equal it. Above `λ = 1/2` only the single-letter lower bound and
/// the continuity upper bound are reported.
pub fn capacity_point(x: f64, lambda: f64, p: f64) -> Result<CapacityCurvePoint> {
    unit_interval("lambda", lambda)?;
    unit_interval("p", p)?;
    let two_way = two_way_capacity(lambda)?;
    let lower_bound = coherent_info_lower_bound(lambda, p)?;
    let (one_way, upper_bound) = if lambda <= 0.5 {
        let q = one_way_capacity(lambda, p)?;
        (Some(q), q)
    } else {
        (None, continuity_upper_bound(lambda, p)?)
    };
    Ok(CapacityCurvePoint {
        x,
        lambda,
        p,
        one_way,
        two_way,
        lower_bound,
        upper_bound,
    })
}

pub const FIG3_RANGE: (f64, f64) = (0.25, 0.3125);
pub const FIG4_RANGE: (f64, f64) = (0.35, 0.5);

/// `p(λ) = 4λ − 1`.
pub fn fig3_p(lambda: f64) -> f64 {
    4.0 * lambda - 1.0
}

/// `λ(p) = p / log₂(1/p)`.
pub fn fig4_lambda(p: f64) -> f64 {
    p / (1.0 / p).log2()
}

/// Sweep over `λ ∈ [0.25, 0.3125]` with `p = 4λ − 1`.
pub fn sweep_fig3(points: usize) -> Result<Vec<CapacityCurvePoint>> {
    uniform_grid(FIG3_RANGE.0, FIG3_RANGE.1, points)?
        .into_iter()
        .map(|lambda| capacity_point(lambda, lambda, fig3_p(lambda).clamp(0.0, 1.0)))
        .collect()
}

/// Sweep over `p ∈ [0.35, 0.5]` with `λ = p / log₂(1/p)`.
pub fn sweep_fig4(points: usize) -> Result<Vec<CapacityCurvePoint>> {
    uniform_grid(FIG4_RANGE.0, FIG4_RANGE.1, points)?
        .into_iter()
        .map(|p| capacity_point(p, fig4_lambda(p), p))
        .collect()
}

/// Free sweep over `λ` at fixed `p`.
pub fn sweep_lambda(lambda_min: f64, lambda_max: f64, p: f64, points: usize) -> Result<Vec<CapacityCurvePoint>> {
    unit_interval("lambda_min", lambda_min)?;
    unit_interval("lambda_max", lambda_max)?;
    uniform_grid(lambda_min, lambda_max, points)?
        .into_iter()
        .map(|lambda| capacity_point(lambda, lambda, p))
        .collect()
}

/// Free sweep over `p` at fixed `λ`.
pub fn sweep_p(p_min: f64, p_max: f64, lambda: f64, points: usize) -> Result<Vec<CapacityCurvePoint>> {
    unit_interval("p_min", p_min)?;
    unit_interval("p_max", p_max)?;
    uniform_grid(p_min, p_max, points)?
        .into_iter()
        .map(|p| capacity_point(p, lambda, p))
        .collect()
}
