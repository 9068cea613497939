use crate::error::{unit_interval, Result};
use crate::qmath::{pauli_z, ComplexMatrix, C64};

use super::{Block, Isometry, KrausChannel, PureState};

/// `|φ₀⟩ = √(1−p)|0⟩ + √p|1⟩` and `|φ₁⟩ = √(1−p)|0⟩ − √p|1⟩`.
pub fn phi_states(p: f64) -> Result<(PureState, PureState)> {
    unit_interval("p", p)?;
    let a = C64::new((1.0 - p).sqrt(), 0.0);
    let b = C64::new(p.sqrt(), 0.0);
    Ok((
        PureState::normalized(vec![a, b])?,
        PureState::normalized(vec![a, -b])?,
    ))
}

/// Embeds a `rows × cols` operator into a taller operator, shifting its rows
/// down by `offset`.
fn shift_rows(m: &ComplexMatrix, offset: usize, total_rows: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(total_rows, m.cols(), |r, c| {
        if r >= offset && r - offset < m.rows() {
            m[(r - offset, c)]
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

fn ket_bra(ket: &[C64], bra_index: usize, bra_dim: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(ket.len(), bra_dim, |r, c| {
        if c == bra_index {
            ket[r]
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

fn build(kraus: Vec<ComplexMatrix>, blocks: Option<Vec<Block>>) -> KrausChannel {
    let kraus = kraus.into_iter().filter(|k| k.frobenius_norm() > 0.0).collect();
    KrausChannel::new(kraus, blocks).expect("family constructors are trace preserving")
}

pub fn identity_channel(dim: usize) -> KrausChannel {
    build(vec![ComplexMatrix::identity(dim)], None)
}

/// `ρ ↦ Tr(ρ) |s⟩⟨s|`.
pub fn constant_channel(dim_in: usize, state: &PureState) -> KrausChannel {
    let kraus = (0..dim_in)
        .map(|i| ket_bra(state.amplitudes(), i, dim_in))
        .collect();
    build(kraus, None)
}

/// `D_p(ρ) = (1−p)ρ + p ZρZ`.
pub fn dephasing_channel(p: f64) -> Result<KrausChannel> {
    unit_interval("p", p)?;
    Ok(build(
        vec![
            ComplexMatrix::identity(2).scale_real((1.0 - p).sqrt()),
            pauli_z().scale_real(p.sqrt()),
        ],
        None,
    ))
}

/// `D̄_p(ρ) = ⟨0|ρ|0⟩ φ₀ + ⟨1|ρ|1⟩ φ₁`.
pub fn complementary_dephasing(p: f64) -> Result<KrausChannel> {
    let (phi0, phi1) = phi_states(p)?;
    Ok(build(
        vec![
            ket_bra(phi0.amplitudes(), 0, 2),
            ket_bra(phi1.amplitudes(), 1, 2),
        ],
        None,
    ))
}

/// `N(λ,p)(ρ) = (1−λ) ρ ⊕ λ D̄_p(ρ)` on a 4-dimensional output.
pub fn channel_n(lambda: f64, p: f64) -> Result<KrausChannel> {
    unit_interval("lambda", lambda)?;
    let (phi0, phi1) = phi_states(p)?;
    let keep = ComplexMatrix::identity(2).scale_real((1.0 - lambda).sqrt());
    let s = lambda.sqrt();
    Ok(build(
        vec![
            shift_rows(&keep, 0, 4),
            shift_rows(&ket_bra(phi0.amplitudes(), 0, 2).scale_real(s), 2, 4),
            shift_rows(&ket_bra(phi1.amplitudes(), 1, 2).scale_real(s), 2, 4),
        ],
        Some(vec![Block::new(0, 2), Block::new(2, 2)]),
    ))
}

/// `N̄(λ,p)(ρ) = (1−λ)|f⟩⟨f| ⊕ λ D_p(ρ)` on a 3-dimensional output with the
/// flag at index 0.
pub fn complement_n(lambda: f64, p: f64) -> Result<KrausChannel> {
    unit_interval("lambda", lambda)?;
    unit_interval("p", p)?;
    let flag = [C64::new(1.0, 0.0)];
    let f = (1.0 - lambda).sqrt();
    let s = lambda.sqrt();
    Ok(build(
        vec![
            shift_rows(&ket_bra(&flag, 0, 2).scale_real(f), 0, 3),
            shift_rows(&ket_bra(&flag, 1, 2).scale_real(f), 0, 3),
            shift_rows(&ComplexMatrix::identity(2).scale_real(s * (1.0 - p).sqrt()), 1, 3),
            shift_rows(&pauli_z().scale_real(s * p.sqrt()), 1, 3),
        ],
        Some(vec![Block::new(0, 1), Block::new(1, 2)]),
    ))
}

/// Stinespring isometry of [`channel_n`] into `B ⊗ C` with `|B| = 4`,
/// `|C| = 3`; tracing out `C` gives [`channel_n`], tracing out `B` gives
/// [`complement_n`].
pub fn isometry_n(lambda: f64, p: f64) -> Result<Isometry> {
    unit_interval("lambda", lambda)?;
    unit_interval("p", p)?;
    const DC: usize = 3;
    let mut v = ComplexMatrix::zeros(4 * DC, 2);
    let keep = (1.0 - lambda).sqrt();
    // identity branch: |i⟩_B ⊗ |f⟩_C
    for i in 0..2 {
        v[(i * DC, i)] = C64::new(keep, 0.0);
    }
    // dephasing branch: √λ Σ_b √w_b |2+b⟩_B ⊗ (P_b |i⟩ shifted into C₁)
    let s = lambda.sqrt();
    let weights = [(1.0 - p).sqrt(), p.sqrt()];
    for (b, w) in weights.iter().enumerate() {
        for i in 0..2 {
            let sign = if b == 1 && i == 1 { -1.0 } else { 1.0 };
            v[((2 + b) * DC + 1 + i, i)] = C64::new(s * w * sign, 0.0);
        }
    }
    Isometry::new(v, (4, DC))
}

/// `T(ρ) = (1−λ) ρ ⊕ λ Tr(ρ) |φ₀⟩⟨φ₀|`, same blocks as [`channel_n`].
pub fn comparison_channel_t(lambda: f64, p: f64) -> Result<KrausChannel> {
    unit_interval("lambda", lambda)?;
    let (phi0, _) = phi_states(p)?;
    let keep = ComplexMatrix::identity(2).scale_real((1.0 - lambda).sqrt());
    let s = lambda.sqrt();
    Ok(build(
        vec![
            shift_rows(&keep, 0, 4),
            shift_rows(&ket_bra(phi0.amplitudes(), 0, 2).scale_real(s), 2, 4),
            shift_rows(&ket_bra(phi0.amplitudes(), 1, 2).scale_real(s), 2, 4),
        ],
        Some(vec![Block::new(0, 2), Block::new(2, 2)]),
    ))
}

/// Qubit erasure: input kept in `{0, 1}` with weight `1−λ`, flag at index 2.
pub fn erasure_channel(lambda: f64) -> Result<KrausChannel> {
    unit_interval("lambda", lambda)?;
    let flag = [C64::new(1.0, 0.0)];
    let s = lambda.sqrt();
    Ok(build(
        vec![
            shift_rows(&ComplexMatrix::identity(2).scale_real((1.0 - lambda).sqrt()), 0, 3),
            shift_rows(&ket_bra(&flag, 0, 2).scale_real(s), 2, 3),
            shift_rows(&ket_bra(&flag, 1, 2).scale_real(s), 2, 3),
        ],
        Some(vec![Block::new(0, 2), Block::new(2, 1)]),
    ))
}
