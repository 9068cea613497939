use crate::error::{Error, Result};
use crate::qmath::binary_entropy;

use super::one_way_capacity;

const CURVE_STEP: f64 = 1e-6;
const CAPACITY_STEP: f64 = 1e-5;

/// Slope of `λ ↦ Q(N(λ, p(λ)))` computed two ways.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeCheck {
    /// `H(p) − 2 + λ p'(λ) log₂((1−p)/p)`.
    pub analytic: f64,
    /// Central difference of the one-way capacity along the curve.
    pub numeric: f64,
    /// Whether `p'(λ) ≥ 2p(λ)/λ`, which suffices for an increasing capacity.
    pub sufficient: bool,
}

pub fn derivative_check(p_of_lambda: impl Fn(f64) -> f64, lambda: f64) -> Result<DerivativeCheck> {
    let p = p_of_lambda(lambda);
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain {
            name: "p(lambda)",
            value: p,
            allowed: "(0, 1)",
        });
    }
    let slope = (p_of_lambda(lambda + CURVE_STEP) - p_of_lambda(lambda - CURVE_STEP)) / (2.0 * CURVE_STEP);
    let analytic = binary_entropy(p)? - 2.0 + lambda * slope * ((1.0 - p) / p).log2();

    let q = |l: f64| -> Result<f64> {
        let pl = p_of_lambda(l);
        if !(0.0..=1.0).contains(&pl) {
            return Err(Error::Domain {
                name: "p(lambda)",
                value: pl,
                allowed: "[0, 1]",
            });
        }
        one_way_capacity(l, pl)
    };
    let numeric = (q(lambda + CAPACITY_STEP)? - q(lambda - CAPACITY_STEP)?) / (2.0 * CAPACITY_STEP);

    Ok(DerivativeCheck {
        analytic,
        numeric,
        sufficient: slope >= 2.0 * p / lambda,
    })
}
