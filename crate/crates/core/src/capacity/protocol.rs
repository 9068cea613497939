use crate::channels::{channel_n, PureState};
use crate::error::{unit_interval, Error, Result};
use crate::qmath::{ComplexMatrix, C64};
use crate::rng::SplitMix64;

/// Outcome of the entanglement-distribution protocol behind the two-way rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoWayEstimate {
    /// Fraction of uses that landed in the identity block.
    pub rate: f64,
    /// `√(λ(1−λ)/uses)`.
    pub std_error: f64,
    pub identity_events: u64,
    /// Largest `1 − F` between a post-selected identity-block state and the
    /// maximally entangled pair.
    pub fidelity_error: f64,
}

/// Sends half of `|Φ⟩` through `N(λ, p)` `uses` times.
///
/// Each use samples a Kraus branch with its Born probability, reads the
/// block flag off the branch, and keeps the pair when the identity block
/// fired. Kept pairs are compared against `|Φ⟩` on `R ⊗ B₂`.
pub fn simulate_two_way_protocol(lambda: f64, p: f64, uses: u64, seed: u64) -> Result<TwoWayEstimate> {
    unit_interval("lambda", lambda)?;
    if uses == 0 {
        return Err(Error::Domain {
            name: "uses",
            value: 0.0,
            allowed: "[1, ∞)",
        });
    }
    let channel = channel_n(lambda, p)?;
    let phi = PureState::maximally_entangled(2);
    let input = ComplexMatrix::column(phi.amplitudes());
    // |Φ⟩ on R ⊗ B with B's identity block at {0, 1}
    let target = PureState::new(
        (0..8)
            .map(|i| {
                let (r, b) = (i / 4, i % 4);
                if r == b {
                    phi.amplitudes()[r * 2 + r]
                } else {
                    C64::new(0.0, 0.0)
                }
            })
            .collect(),
    )?;

    struct Branch {
        weight: f64,
        identity_block: bool,
        fidelity_error: f64,
    }
    let id_r = ComplexMatrix::identity(2);
    let mut branches = Vec::new();
    for (k, op) in channel.kraus().iter().enumerate() {
        let out = id_r.kron(op).matmul(&input);
        let amps: Vec<C64> = (0..out.rows()).map(|i| out[(i, 0)]).collect();
        let weight: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        let identity_block = channel.block_of(k) == Some(0);
        let fidelity_error = if identity_block && weight > 0.0 {
            1.0 - PureState::normalized(amps)?.fidelity(&target)
        } else {
            0.0
        };
        branches.push(Branch {
            weight,
            identity_block,
            fidelity_error,
        });
    }
    let weights: Vec<f64> = branches.iter().map(|b| b.weight).collect();

    let mut rng = SplitMix64::new(seed);
    let mut hits = 0u64;
    let mut fidelity_error: f64 = 0.0;
    for _ in 0..uses {
        let branch = &branches[rng.pick(&weights)];
        if branch.identity_block {
            hits += 1;
            fidelity_error = fidelity_error.max(branch.fidelity_error.abs());
        }
    }
    Ok(TwoWayEstimate {
        rate: hits as f64 / uses as f64,
        std_error: (lambda * (1.0 - lambda) / uses as f64).sqrt(),
        identity_events: hits,
        fidelity_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn noiseless_and_fully_broken() {
        let e = simulate_two_way_protocol(0.0, 0.3, 1000, 1).unwrap();
        assert_eq!(e.rate, 1.0);
        assert!(e.fidelity_error <= 1e-10);
        let e = simulate_two_way_protocol(1.0, 0.3, 1000, 1).unwrap();
        assert_eq!(e.rate, 0.0);
    }

    #[test]
    fn concentrates_on_one_minus_lambda() {
        let e = simulate_two_way_protocol(0.3, 0.2, 100_000, 7).unwrap();
        assert!((e.rate - 0.7).abs() <= 3.0 * e.std_error);
        assert!(e.fidelity_error <= 1e-10);
    }

    #[test]
    fn deterministic_for_seed() {
        let a = simulate_two_way_protocol(0.4, 0.2, 5000, 99).unwrap();
        let b = simulate_two_way_protocol(0.4, 0.2, 5000, 99).unwrap();
        assert_eq!(a, b);
        assert!(simulate_two_way_protocol(0.4, 0.2, 0, 99).is_err());
    }
}
