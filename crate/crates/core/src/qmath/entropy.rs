use crate::channels::DensityMatrix;
use crate::error::{Error, Result};

/// `-x log₂ x` with `0 log 0 = 0`.
fn plogp(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * x.log2()
    }
}

/// Entropy in bits of a list of eigenvalues or probabilities already known
/// to be nonnegative (up to clamping) and normalised.
pub fn spectrum_entropy(values: &[f64]) -> f64 {
    values.iter().map(|&v| plogp(v)).sum::<f64>().max(0.0)
}

/// Von Neumann entropy `-Tr ρ log₂ ρ` in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    spectrum_entropy(rho.eigenvalues())
}

/// `H(p) = -p log₂ p - (1-p) log₂(1-p)`.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain {
            name: "p",
            value: p,
            allowed: "[0, 1]",
        });
    }
    if p == 0.0 || p == 1.0 {
        return Ok(0.0);
    }
    // ln_1p keeps the (1-p) term accurate for tiny p.
    let q_term = -(1.0 - p) * (-p).ln_1p() / std::f64::consts::LN_2;
    Ok(plogp(p) + q_term)
}

/// Shannon entropy in bits; entries may dip to `-1e-12` and the sum must be
/// within `1e-9` of one.
pub fn shannon_entropy(dist: &[f64]) -> Result<f64> {
    if dist.is_empty() {
        return Err(Error::NotADistribution("empty distribution".into()));
    }
    if let Some(bad) = dist.iter().find(|&&v| !v.is_finite() || v < -1e-12) {
        return Err(Error::NotADistribution(format!("entry {bad} is negative")));
    }
    let total: f64 = dist.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::NotADistribution(format!("entries sum to {total}")));
    }
    Ok(spectrum_entropy(dist))
}
