//! Closed-form capacities and bounds for `N(λ, p)` and related channels.
//! All rates are in qubits (or private bits) per channel use.

use crate::error::{degradable_regime, unit_interval, Result};
use crate::qmath::binary_entropy;

/// Quantum and private capacity in the degradable regime: `1 − λ(2 − H(p))`.
pub fn one_way_capacity(lambda: f64, p: f64) -> Result<f64> {
    degradable_regime("lambda", lambda)?;
    Ok(one_way_expression(lambda, p)?)
}

/// `(1 − 2λ) + λ H(p)`, the coherent information at the maximally mixed
/// input, written without the cancellation in `1 − λ(2 − H)`.
pub(crate) fn one_way_expression(lambda: f64, p: f64) -> Result<f64> {
    Ok((1.0 - 2.0 * lambda) + lambda * binary_entropy(p)?)
}

/// Two-way assisted quantum and private capacity, `1 − λ`.
pub fn two_way_capacity(lambda: f64) -> Result<f64> {
    unit_interval("lambda", lambda)?;
    Ok(1.0 - lambda)
}

/// Capacities of the complementary channel `N̄(λ, p)` for `λ ≤ 1/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplementCapacities {
    /// Always zero: the complement is antidegradable in this regime.
    pub one_way: f64,
    pub two_way: f64,
}

pub fn complement_two_way_capacity(lambda: f64, p: f64) -> Result<ComplementCapacities> {
    degradable_regime("lambda", lambda)?;
    Ok(ComplementCapacities {
        one_way: 0.0,
        two_way: er_bound_complement(lambda, p)?,
    })
}

/// Relative-entropy-of-entanglement bound `λ(1 − H(p))` for the complement.
pub fn er_bound_complement(lambda: f64, p: f64) -> Result<f64> {
    unit_interval("lambda", lambda)?;
    Ok(lambda * (1.0 - binary_entropy(p)?))
}

/// Erasure channel reference values `(max{0, 1 − 2λ}, 1 − λ)`.
pub fn erasure_capacities(lambda: f64) -> Result<(f64, f64)> {
    unit_interval("lambda", lambda)?;
    Ok(((1.0 - 2.0 * lambda).max(0.0), 1.0 - lambda))
}

/// Single-letter coherent-information bound `max{0, 1 − λ(2 − H(p))}`.
pub fn coherent_info_lower_bound(lambda: f64, p: f64) -> Result<f64> {
    unit_interval("lambda", lambda)?;
    Ok(one_way_expression(lambda, p)?.max(0.0))
}

/// Diamond distance from `N(λ, p)` to the antidegradable channel `T`:
/// `4λ√(p(1−p))`.
pub fn closeness_epsilon(lambda: f64, p: f64) -> Result<f64> {
    unit_interval("lambda", lambda)?;
    unit_interval("p", p)?;
    Ok(4.0 * lambda * (p * (1.0 - p)).sqrt())
}

/// Continuity bound for an `ε`-close antidegradable channel with a
/// four-dimensional output: `2ε log₂ 4 + 2(2 + ε) H(ε / (2 + ε))`.
pub fn continuity_entropic_term(epsilon: f64) -> f64 {
    let ratio = epsilon / (2.0 + epsilon);
    4.0 * epsilon + 2.0 * (2.0 + epsilon) * binary_entropy(ratio).unwrap_or(0.0)
}

/// `min{1 − λ, continuity_entropic_term(4λ√(p(1−p)))}`.
///
/// Valid as an upper bound on the one-way capacity only for `λ ≥ 1/2`,
/// where the comparison channel `T` is antidegradable.
pub fn continuity_upper_bound(lambda: f64, p: f64) -> Result<f64> {
    let eps = closeness_epsilon(lambda, p)?;
    Ok((1.0 - lambda).min(continuity_entropic_term(eps)))
}
