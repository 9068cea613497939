//! Dense complex linear algebra and entropy primitives.
//!
//! Everything here targets small operators (dimension at most
//! [`MAX_DIM`]), which is all the channel family ever needs.

mod eig;
mod entropy;
mod matrix;

pub use eig::{hermitian_eig, HermitianSpectrum};
pub use entropy::{binary_entropy, shannon_entropy, spectrum_entropy, von_neumann_entropy};
pub use matrix::{ComplexMatrix, Subsystem};

pub use num_complex::Complex64 as C64;

/// Largest square dimension accepted by the eigensolver and the trace norm.
pub const MAX_DIM: usize = 16;

/// Tolerance used for Hermiticity checks.
pub const HERMITIAN_TOL: f64 = 1e-10;

use crate::error::{Error, Result};

/// Pauli X.
pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])
}

/// Pauli Y.
pub fn pauli_y() -> ComplexMatrix {
    let i = C64::new(0.0, 1.0);
    ComplexMatrix::from_rows(&[vec![C64::new(0.0, 0.0), -i], vec![i, C64::new(0.0, 0.0)]])
}

/// Pauli Z.
pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]])
}

/// Sum of singular values.
///
/// Hermitian input uses `Σ|λ_k|` directly; anything else goes through the
/// eigenvalues of `m† m`.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    if !m.is_square() {
        return Err(Error::ShapeMismatch(format!(
            "trace norm needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    if m.rows() > MAX_DIM {
        return Err(Error::DimensionTooLarge {
            dim: m.rows(),
            max: MAX_DIM,
        });
    }
    if m.hermiticity_residual() <= HERMITIAN_TOL {
        let spec = hermitian_eig(&m.hermitian_part())?;
        return Ok(spec.eigenvalues.iter().map(|v| v.abs()).sum());
    }
    let gram = m.dagger().matmul(m);
    let spec = hermitian_eig(&gram.hermitian_part())?;
    Ok(spec.eigenvalues.iter().map(|v| v.max(0.0).sqrt()).sum())
}

/// Kronecker product `a ⊗ b`.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kron(b)
}

/// Places `block` on the diagonal of a `total_dim × total_dim` zero matrix,
/// starting at row and column `offset`.
pub fn direct_sum_embed(
    block: &ComplexMatrix,
    offset: usize,
    total_dim: usize,
) -> Result<ComplexMatrix> {
    if !block.is_square() || offset + block.rows() > total_dim {
        return Err(Error::ShapeMismatch(format!(
            "cannot embed a {}x{} block at offset {offset} in dimension {total_dim}",
            block.rows(),
            block.cols()
        )));
    }
    let mut out = ComplexMatrix::zeros(total_dim, total_dim);
    for r in 0..block.rows() {
        for c in 0..block.cols() {
            out[(offset + r, offset + c)] = block[(r, c)];
        }
    }
    Ok(out)
}

/// Traces out one factor of an operator on `dims.0 ⊗ dims.1`.
pub fn partial_trace(
    m: &ComplexMatrix,
    dims: (usize, usize),
    traced: Subsystem,
) -> Result<ComplexMatrix> {
    m.partial_trace(dims, traced)
}
