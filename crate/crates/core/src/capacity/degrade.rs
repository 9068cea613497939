use crate::channels::{channel_n, complement_n, Block, KrausChannel};
use crate::error::{degradable_regime, unit_interval, Result};
use crate::qmath::{ComplexMatrix, C64};

/// Probability with which the degrading map discards an identity-block
/// output in favour of the flag: `x = (1 − 2λ)/(1 − λ)`.
pub fn flag_mixing(lambda: f64) -> Result<f64> {
    degradable_regime("lambda", lambda)?;
    Ok((1.0 - 2.0 * lambda) / (1.0 - lambda))
}

/// Measure-and-prepare map `R : B → C` with `R ∘ N(λ,p) = N̄(λ,p)`.
///
/// The `D̄_p` block is replaced by the flag. The identity block is replaced
/// by the flag with probability `x` and dephased into `C₁` otherwise.
pub fn degrading_map(lambda: f64, p: f64) -> Result<KrausChannel> {
    let x = flag_mixing(lambda)?;
    degrading_map_with_mixing(x, p)
}

pub(crate) fn degrading_map_with_mixing(x: f64, p: f64) -> Result<KrausChannel> {
    unit_interval("x", x)?;
    unit_interval("p", p)?;
    let one = |value: f64, row: usize, col: usize| {
        let mut m = ComplexMatrix::zeros(3, 4);
        m[(row, col)] = C64::new(value, 0.0);
        m
    };
    let mut kraus = vec![one(1.0, 0, 2), one(1.0, 0, 3), one(x.sqrt(), 0, 0), one(x.sqrt(), 0, 1)];
    let keep = (1.0 - x).sqrt();
    let mut dephase_id = ComplexMatrix::zeros(3, 4);
    dephase_id[(1, 0)] = C64::new(keep * (1.0 - p).sqrt(), 0.0);
    dephase_id[(2, 1)] = C64::new(keep * (1.0 - p).sqrt(), 0.0);
    let mut dephase_z = ComplexMatrix::zeros(3, 4);
    dephase_z[(1, 0)] = C64::new(keep * p.sqrt(), 0.0);
    dephase_z[(2, 1)] = C64::new(-keep * p.sqrt(), 0.0);
    kraus.push(dephase_id);
    kraus.push(dephase_z);
    let kraus = kraus.into_iter().filter(|k| k.frobenius_norm() > 0.0).collect();
    KrausChannel::new(kraus, Some(vec![Block::new(0, 1), Block::new(1, 2)]))
}

/// `max |Choi(R ∘ N) − Choi(N̄)|` entrywise.
pub fn verify_degradable(lambda: f64, p: f64) -> Result<f64> {
    let r = degrading_map(lambda, p)?;
    degradability_residual(lambda, p, &r)
}

pub(crate) fn degradability_residual(lambda: f64, p: f64, r: &KrausChannel) -> Result<f64> {
    let composed = channel_n(lambda, p)?.then(r)?;
    Ok(composed.choi().distance(&complement_n(lambda, p)?.choi()))
}
