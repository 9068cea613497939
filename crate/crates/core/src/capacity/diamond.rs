use num_complex::Complex64 as C64;

use crate::channels::{channel_n, comparison_channel_t, KrausChannel, PureState};
use crate::error::{Error, Result};
use crate::qmath::trace_norm;
use crate::rng::SplitMix64;

use super::closeness_epsilon;

/// Restricted-input estimate of `‖N(λ,p) − T‖_⋄` next to its analytic value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiamondEstimate {
    /// Best `‖((N − T) ⊗ id)(ψ)‖₁` found over pure two-qubit inputs. Always a
    /// lower bound on the diamond distance.
    pub estimate: f64,
    /// `4λ√(p(1−p))`.
    pub analytic: f64,
}

/// Number of best random starts that get refined by pattern search.
const REFINED_STARTS: usize = 4;
/// Gains below this are round-off on a flat optimum, not progress.
const MIN_GAIN: f64 = 1e-12;
/// A move of size `h` must gain at least `SUFFICIENT_GAIN · h²`.
const SUFFICIENT_GAIN: f64 = 1e-2;

/// Samples `restarts` random pure inputs on `R ⊗ A`, refines the best few by
/// a coordinate pattern search over the eight real amplitude parameters, and
/// reports the largest trace distance between the outputs of `N ⊗ id` and
/// `T ⊗ id`.
pub fn diamond_distance_to_t(
    lambda: f64,
    p: f64,
    restarts: usize,
    tol: f64,
    seed: u64,
) -> Result<DiamondEstimate> {
    let analytic = closeness_epsilon(lambda, p)?;
    if restarts == 0 {
        return Err(Error::Domain {
            name: "restarts",
            value: 0.0,
            allowed: "[1, ∞)",
        });
    }
    if !(tol > 0.0) {
        return Err(Error::Domain {
            name: "tol",
            value: tol,
            allowed: "(0, ∞)",
        });
    }
    let n = channel_n(lambda, p)?;
    let t = comparison_channel_t(lambda, p)?;
    let objective = |params: &[f64; 8]| output_distance(&n, &t, params);

    let mut rng = SplitMix64::new(seed);
    let mut starts: Vec<([f64; 8], f64)> = Vec::with_capacity(restarts);
    for _ in 0..restarts {
        let params: [f64; 8] = std::array::from_fn(|_| rng.next_gaussian());
        let value = objective(&params)?;
        starts.push((params, value));
    }
    starts.sort_by(|a, b| b.1.total_cmp(&a.1));

    let mut estimate = starts[0].1;
    for (params, value) in starts.into_iter().take(REFINED_STARTS) {
        let refined = pattern_search(params, value, tol, &objective)?;
        estimate = estimate.max(refined);
    }
    Ok(DiamondEstimate { estimate, analytic })
}

fn pattern_search(
    mut params: [f64; 8],
    mut value: f64,
    tol: f64,
    objective: &impl Fn(&[f64; 8]) -> Result<f64>,
) -> Result<f64> {
    let scale = params.iter().map(|v| v * v).sum::<f64>().sqrt();
    let mut step = 0.25 * scale.max(1e-3);
    while step >= tol * scale.max(1e-3) {
        let mut improved = false;
        for axis in 0..8 {
            for dir in [1.0, -1.0] {
                let mut trial = params;
                trial[axis] += dir * step;
                if trial.iter().all(|v| *v == 0.0) {
                    continue;
                }
                let v = objective(&trial)?;
                if v > value + MIN_GAIN.max(SUFFICIENT_GAIN * step * step) {
                    params = trial;
                    value = v;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    Ok(value)
}

fn output_distance(n: &KrausChannel, t: &KrausChannel, params: &[f64; 8]) -> Result<f64> {
    let amps = (0..4).map(|i| C64::new(params[2 * i], params[2 * i + 1])).collect();
    let psi = PureState::normalized(amps)?.projector();
    let dims = (2, 2);
    let diff = &n.apply_with_reference_matrix(&psi, dims)? - &t.apply_with_reference_matrix(&psi, dims)?;
    trace_norm(&diff)
}

/// `‖((N − T) ⊗ id)(ψ)‖₁` for a given pure input on `R ⊗ A`.
pub fn output_trace_distance(lambda: f64, p: f64, input: &PureState) -> Result<f64> {
    if input.dim() != 4 {
        return Err(Error::ShapeMismatch(format!(
            "input must live on a two-qubit space, got dimension {}",
            input.dim()
        )));
    }
    let n = channel_n(lambda, p)?;
    let t = comparison_channel_t(lambda, p)?;
    let psi = input.projector();
    let diff = &n.apply_with_reference_matrix(&psi, (2, 2))? - &t.apply_with_reference_matrix(&psi, (2, 2))?;
    trace_norm(&diff)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn zero_dephasing_makes_channels_equal() {
        let d = diamond_distance_to_t(0.7, 0.0, 10, 1e-6, 1).unwrap();
        assert_eq!(d.analytic, 0.0);
        assert!(d.estimate.abs() < 1e-12);
    }

    #[test]
    fn analytic_value() {
        let d = diamond_distance_to_t(0.5, 0.5, 1, 1e-3, 1).unwrap();
        assert_abs_diff_eq!(d.analytic, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn input_on_one_attains_the_bound() {
        // |1⟩_A ⊗ |+⟩_R, written on R ⊗ A
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let z = C64::new(0.0, 0.0);
        let psi = PureState::new(vec![z, C64::new(s, 0.0), z, C64::new(s, 0.0)]).unwrap();
        for &(lambda, p) in &[(0.3, 0.2), (0.8, 0.5), (1.0, 0.05)] {
            let v = output_trace_distance(lambda, p, &psi).unwrap();
            assert_abs_diff_eq!(v, closeness_epsilon(lambda, p).unwrap(), epsilon = 1e-12);
        }
    }

    #[test]
    fn estimate_is_a_lower_bound_and_tight() {
        let d = diamond_distance_to_t(0.6, 0.3, 200, 1e-6, 17).unwrap();
        assert!(d.estimate <= d.analytic + 1e-9);
        assert!(d.estimate >= d.analytic - 1e-3);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(diamond_distance_to_t(0.6, 0.3, 0, 1e-6, 1).is_err());
        assert!(diamond_distance_to_t(1.6, 0.3, 5, 1e-6, 1).is_err());
    }
}
