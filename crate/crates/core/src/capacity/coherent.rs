use crate::channels::{
    channel_n, complement_n, complementary_dephasing, dephasing_channel, DensityMatrix, KrausChannel,
};
use crate::error::{unit_interval, Error, Result};
use crate::qmath::{binary_entropy, pauli_x, pauli_z, von_neumann_entropy, Subsystem};

/// `I_c(N, ρ) = H(N(ρ)) − H(N̄(ρ))` in bits.
pub fn coherent_information(
    channel: &KrausChannel,
    complement: &KrausChannel,
    rho: &DensityMatrix,
) -> Result<f64> {
    if channel.dim_in() != complement.dim_in() {
        return Err(Error::ShapeMismatch(format!(
            "channel input {} differs from complement input {}",
            channel.dim_in(),
            complement.dim_in()
        )));
    }
    let out = channel.apply(rho)?;
    let env = complement.apply(rho)?;
    Ok(von_neumann_entropy(&out) - von_neumann_entropy(&env))
}

/// `I_c(ρ_AB) = H(B) − H(AB)` for a state on `dims.0 ⊗ dims.1`.
pub fn coherent_information_state(rho_ab: &DensityMatrix, dims: (usize, usize)) -> Result<f64> {
    let rho_b = rho_ab.partial_trace(dims, Subsystem::First)?;
    Ok(von_neumann_entropy(&rho_b) - von_neumann_entropy(rho_ab))
}

/// Result of maximising the coherent information over qubit inputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IcMaximum {
    pub value: f64,
    pub bloch: [f64; 3],
}

impl IcMaximum {
    pub fn bloch_norm(&self) -> f64 {
        self.bloch.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

const GRID_STEP: f64 = 0.1;

/// Maximises `I_c(N(λ,p), ρ)` over the Bloch ball.
///
/// A coarse grid (spacing 0.1) seeds a coordinate pattern search whose step
/// halves from 0.1 down to `tol`. Candidates outside the ball are projected
/// back onto its surface.
pub fn maximize_coherent_information(lambda: f64, p: f64, tol: f64) -> Result<IcMaximum> {
    unit_interval("lambda", lambda)?;
    unit_interval("p", p)?;
    if !(tol >= 1e-8) {
        return Err(Error::Domain {
            name: "tol",
            value: tol,
            allowed: "[1e-8, ∞)",
        });
    }
    let channel = channel_n(lambda, p)?;
    let complement = complement_n(lambda, p)?;
    let objective = |r: [f64; 3]| -> Result<f64> {
        coherent_information(&channel, &complement, &DensityMatrix::from_bloch(r)?)
    };

    let ticks: Vec<f64> = (-10..=10).map(|i| i as f64 * GRID_STEP).collect();
    let mut best = IcMaximum {
        value: f64::NEG_INFINITY,
        bloch: [0.0; 3],
    };
    for &x in &ticks {
        for &y in &ticks {
            for &z in &ticks {
                if x * x + y * y + z * z > 1.0 + 1e-12 {
                    continue;
                }
                let r = [x, y, z];
                let v = objective(r)?;
                if v > best.value {
                    best = IcMaximum { value: v, bloch: r };
                }
            }
        }
    }

    let mut step = GRID_STEP;
    while step >= tol {
        let mut improved = false;
        for axis in 0..3 {
            for dir in [1.0, -1.0] {
                let mut r = best.bloch;
                r[axis] += dir * step;
                let r = project_to_ball(r);
                let v = objective(r)?;
                if v > best.value + 1e-14 {
                    best = IcMaximum { value: v, bloch: r };
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    Ok(best)
}

fn project_to_ball(r: [f64; 3]) -> [f64; 3] {
    let n = r.iter().map(|v| v * v).sum::<f64>().sqrt();
    if n > 1.0 {
        r.map(|v| v / n)
    } else {
        r
    }
}

/// `(|I_c(ρ) − I_c(ZρZ)|, |I_c(ρ) − I_c(XρX)|)` for `N(λ, p)`.
pub fn ic_conjugation_residual(lambda: f64, p: f64, rho: &DensityMatrix) -> Result<(f64, f64)> {
    let channel = channel_n(lambda, p)?;
    let complement = complement_n(lambda, p)?;
    let ic = |state: &DensityMatrix| coherent_information(&channel, &complement, state);
    let base = ic(rho)?;
    let dz = (base - ic(&rho.conjugate_by(&pauli_z())?)?).abs();
    let dx = (base - ic(&rho.conjugate_by(&pauli_x())?)?).abs();
    Ok((dz, dx))
}

/// Output entropies of `N(λ, p)` and its complement, evaluated directly
/// from eigenvalues and through the block decomposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropySplit {
    pub channel_direct: f64,
    /// `H(λ) + (1 − λ) H(ρ) + λ H(D̄_p(ρ))`
    pub channel_blocks: f64,
    pub complement_direct: f64,
    /// `H(λ) + λ H(D_p(ρ))`
    pub complement_blocks: f64,
}

impl EntropySplit {
    pub fn residual(&self) -> f64 {
        (self.channel_direct - self.channel_blocks)
            .abs()
            .max((self.complement_direct - self.complement_blocks).abs())
    }
}

pub fn output_entropy_split(lambda: f64, p: f64, rho: &DensityMatrix) -> Result<EntropySplit> {
    let h_lambda = binary_entropy(lambda)?;
    let h = von_neumann_entropy;
    let dephased = dephasing_channel(p)?.apply(rho)?;
    let env = complementary_dephasing(p)?.apply(rho)?;
    Ok(EntropySplit {
        channel_direct: h(&channel_n(lambda, p)?.apply(rho)?),
        channel_blocks: h_lambda + (1.0 - lambda) * h(rho) + lambda * h(&env),
        complement_direct: h(&complement_n(lambda, p)?.apply(rho)?),
        complement_blocks: h_lambda + lambda * h(&dephased),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::capacity::one_way_capacity;
    use crate::channels::{constant_channel, identity_channel, PureState};
    use crate::rng::SplitMix64;
    use approx::assert_abs_diff_eq;

    #[test]
    fn block_entropy_decomposition() {
        let mut rng = SplitMix64::new(3);
        for _ in 0..20 {
            let rho = DensityMatrix::random(2, &mut rng);
            let split = output_entropy_split(0.37, 0.21, &rho).unwrap();
            assert!(split.residual() <= 1e-10, "{split:?}");
        }
    }

    #[test]
    fn identity_channel_has_unit_ic() {
        let id = identity_channel(2);
        let env = constant_channel(2, &PureState::basis(1, 0));
        let v = coherent_information(&id, &env, &DensityMatrix::maximally_mixed(2)).unwrap();
        assert_abs_diff_eq!(v, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn ic_at_mixed_input_matches_closed_form() {
        let ch = channel_n(0.3, 0.1).unwrap();
        let env = complement_n(0.3, 0.1).unwrap();
        let v = coherent_information(&ch, &env, &DensityMatrix::maximally_mixed(2)).unwrap();
        assert_abs_diff_eq!(v, 0.540699, epsilon = 1e-6);
        assert_abs_diff_eq!(v, one_way_capacity(0.3, 0.1).unwrap(), epsilon = 1e-12);
    }

    #[test]
    fn pure_input_is_no_better_than_mixed() {
        let zero = DensityMatrix::from_bloch([0.0, 0.0, 1.0]).unwrap();
        let pi = DensityMatrix::maximally_mixed(2);
        for &(lambda, p) in &[(0.1, 0.2), (0.3, 0.1), (0.5, 0.9)] {
            let ch = channel_n(lambda, p).unwrap();
            let env = complement_n(lambda, p).unwrap();
            let at_zero = coherent_information(&ch, &env, &zero).unwrap();
            let at_pi = coherent_information(&ch, &env, &pi).unwrap();
            assert!(at_zero <= at_pi + 1e-12);
        }
    }

    #[test]
    fn shape_mismatch_is_reported() {
        let ch = channel_n(0.3, 0.1).unwrap();
        let env = identity_channel(3);
        assert!(coherent_information(&ch, &env, &DensityMatrix::maximally_mixed(2)).is_err());
    }

    #[test]
    fn state_coherent_information() {
        let phi = PureState::maximally_entangled(2).density();
        assert_abs_diff_eq!(coherent_information_state(&phi, (2, 2)).unwrap(), 1.0, epsilon = 1e-14);

        let mut rng = SplitMix64::new(11);
        let a = DensityMatrix::random(2, &mut rng);
        let b = DensityMatrix::random(3, &mut rng);
        let prod = DensityMatrix::new(a.matrix().kron(b.matrix())).unwrap();
        let v = coherent_information_state(&prod, (2, 3)).unwrap();
        assert_abs_diff_eq!(v, -von_neumann_entropy(&a), epsilon = 1e-12);

        let choi = channel_n(0.3, 0.1).unwrap().choi();
        let v = coherent_information_state(&choi.state, (2, 4)).unwrap();
        assert_abs_diff_eq!(v, 0.540699, epsilon = 1e-6);
    }

    #[test]
    fn maximisation_examples() {
        let m = maximize_coherent_information(0.3, 0.1, 1e-6).unwrap();
        assert_abs_diff_eq!(m.value, 0.540699, epsilon = 1e-6);
        assert!(m.bloch_norm() <= 1e-3);

        let m = maximize_coherent_information(0.0, 0.77, 1e-6).unwrap();
        assert_abs_diff_eq!(m.value, 1.0, epsilon = 1e-12);

        let m = maximize_coherent_information(1.0, 0.5, 1e-6).unwrap();
        assert_abs_diff_eq!(m.value, 0.0, epsilon = 1e-12);

        assert!(maximize_coherent_information(0.3, 0.1, 1e-9).is_err());
        assert!(maximize_coherent_information(1.3, 0.1, 1e-6).is_err());
    }

    #[test]
    fn conjugation_residuals() {
        let pi = DensityMatrix::maximally_mixed(2);
        assert_eq!(ic_conjugation_residual(0.4, 0.3, &pi).unwrap(), (0.0, 0.0));
        let zero = DensityMatrix::from_bloch([0.0, 0.0, 1.0]).unwrap();
        let (dz, _) = ic_conjugation_residual(0.7, 0.2, &zero).unwrap();
        assert!(dz <= 1e-12);
        let mut rng = SplitMix64::new(12);
        for _ in 0..100 {
            let rho = DensityMatrix::random(2, &mut rng);
            let (dz, dx) = ic_conjugation_residual(0.4, 0.3, &rho).unwrap();
            assert!(dz <= 1e-9 && dx <= 1e-9);
        }
    }
}
