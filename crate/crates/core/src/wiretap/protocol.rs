use crate::error::{unit_interval, Error, Result};
use crate::rng::SplitMix64;

use super::info::{mutual_information, JointPmf};

/// Result of the public-feedback key agreement on the wiretap channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeedbackEstimate {
    /// Kept rounds per channel use.
    pub throughput: f64,
    /// `√(λ(1−λ)/uses)`.
    pub std_error: f64,
    pub kept: u64,
    /// Plug-in `I(X; Z)` over kept rounds, in bits.
    pub leakage: f64,
}

/// Alice sends uniform bits; after each use Bob announces the branch label
/// and both keep only the rounds where Eve saw noise.
pub fn simulate_feedback_protocol(lambda: f64, p: f64, uses: u64, seed: u64) -> Result<FeedbackEstimate> {
    unit_interval("lambda", lambda)?;
    unit_interval("p", p)?;
    if uses == 0 {
        return Err(Error::Domain {
            name: "uses",
            value: 0.0,
            allowed: "[1, ∞)",
        });
    }
    let mut rng = SplitMix64::new(seed);
    let mut counts = [0u64; 4];
    let mut kept = 0u64;
    for _ in 0..uses {
        let x = rng.next_bool(0.5) as usize;
        let eve_sees_input = rng.next_bool(lambda);
        let (y, z) = if eve_sees_input {
            (x ^ rng.next_bool(p) as usize, x)
        } else {
            (x, rng.next_bool(0.5) as usize)
        };
        if !eve_sees_input {
            debug_assert_eq!(y, x);
            kept += 1;
            counts[x * 2 + z] += 1;
        }
    }
    let leakage = if kept == 0 {
        0.0
    } else {
        let probs = counts.iter().map(|&c| c as f64 / kept as f64).collect();
        mutual_information(&JointPmf::new(2, 2, probs)?)
    };
    Ok(FeedbackEstimate {
        throughput: kept as f64 / uses as f64,
        std_error: (lambda * (1.0 - lambda) / uses as f64).sqrt(),
        kept,
        leakage,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn throughput_concentrates() {
        let e = simulate_feedback_protocol(0.3, 0.2, 100_000, 5).unwrap();
        assert!((e.throughput - 0.7).abs() <= 3.0 * e.std_error);
        assert!(e.leakage <= 1e-3);
    }

    #[test]
    fn edge_cases() {
        let e = simulate_feedback_protocol(1.0, 0.2, 100, 5).unwrap();
        assert_eq!(e.kept, 0);
        assert_eq!(e.leakage, 0.0);
        let e = simulate_feedback_protocol(0.0, 0.2, 100, 5).unwrap();
        assert_eq!(e.throughput, 1.0);
        assert!(simulate_feedback_protocol(0.3, 0.2, 0, 5).is_err());
        assert_eq!(
            simulate_feedback_protocol(0.4, 0.1, 1000, 9).unwrap(),
            simulate_feedback_protocol(0.4, 0.1, 1000, 9).unwrap()
        );
    }
}
