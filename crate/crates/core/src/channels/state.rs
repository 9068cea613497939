use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::qmath::{hermitian_eig, ComplexMatrix, Subsystem, HERMITIAN_TOL, MAX_DIM};
use crate::rng::SplitMix64;

const TRACE_TOL: f64 = 1e-9;
const NEGATIVITY_TOL: f64 = 1e-10;

/// A validated density operator.
///
/// The spectrum is computed once at construction; eigenvalues in
/// `[-1e-10, 0)` are clamped to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    eigenvalues: Vec<f64>,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "density matrix must be square, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if matrix.rows() > MAX_DIM {
            return Err(Error::DimensionTooLarge {
                dim: matrix.rows(),
                max: MAX_DIM,
            });
        }
        let residual = matrix.hermiticity_residual();
        if residual > HERMITIAN_TOL {
            return Err(Error::NonHermitian { residual });
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > TRACE_TOL || trace.im.abs() > TRACE_TOL {
            return Err(Error::NotAState(format!("trace is {trace}")));
        }
        let spectrum = hermitian_eig(&matrix)?;
        if let Some(&min) = spectrum.eigenvalues.first() {
            if min < -NEGATIVITY_TOL {
                return Err(Error::NotAState(format!("eigenvalue {min:.3e} is negative")));
            }
        }
        let eigenvalues = spectrum.eigenvalues.iter().map(|v| v.max(0.0)).collect();
        Ok(Self {
            matrix: matrix.hermitian_part(),
            eigenvalues,
        })
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self::new(ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64))
            .expect("I/d is a state")
    }

    /// `(I + r·σ) / 2`; `bloch` must have norm at most one.
    pub fn from_bloch(bloch: [f64; 3]) -> Result<Self> {
        let [x, y, z] = bloch;
        let norm = (x * x + y * y + z * z).sqrt();
        if norm > 1.0 + 1e-12 {
            return Err(Error::NotAState(format!("Bloch vector has norm {norm}")));
        }
        let m = ComplexMatrix::from_rows(&[
            vec![C64::new((1.0 + z) / 2.0, 0.0), C64::new(x / 2.0, -y / 2.0)],
            vec![C64::new(x / 2.0, y / 2.0), C64::new((1.0 - z) / 2.0, 0.0)],
        ]);
        Self::new(m)
    }

    /// Random mixed state `G G† / Tr(G G†)` from a complex Ginibre matrix.
    pub fn random(dim: usize, rng: &mut SplitMix64) -> Self {
        let g = ComplexMatrix::from_fn(dim, dim, |_, _| {
            C64::new(rng.next_gaussian(), rng.next_gaussian())
        });
        let gg = g.matmul(&g.dagger());
        let tr = gg.trace().re;
        Self::new(gg.scale_real(1.0 / tr)).expect("Ginibre construction yields a state")
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Clamped eigenvalues, ascending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn partial_trace(&self, dims: (usize, usize), traced: Subsystem) -> Result<Self> {
        Self::new(self.matrix.partial_trace(dims, traced)?)
    }

    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Result<Self> {
        Self::new(u.sandwich(&self.matrix))
    }
}

/// A unit-norm state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<C64>,
}

impl PureState {
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if amplitudes.is_empty() || (norm - 1.0).abs() > 1e-10 {
            return Err(Error::NotAState(format!("state vector has norm {norm}")));
        }
        Ok(Self { amplitudes })
    }

    /// Rescales a nonzero vector to unit norm.
    pub fn normalized(amplitudes: Vec<C64>) -> Result<Self> {
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotAState("cannot normalise a zero vector".into()));
        }
        Self::new(amplitudes.into_iter().map(|a| a / norm).collect())
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = vec![C64::new(0.0, 0.0); dim];
        v[index] = C64::new(1.0, 0.0);
        Self { amplitudes: v }
    }

    /// `Σ_i |ii⟩ / √d`.
    pub fn maximally_entangled(dim: usize) -> Self {
        let mut v = vec![C64::new(0.0, 0.0); dim * dim];
        let amp = 1.0 / (dim as f64).sqrt();
        for i in 0..dim {
            v[i * dim + i] = C64::new(amp, 0.0);
        }
        Self { amplitudes: v }
    }

    pub fn random(dim: usize, rng: &mut SplitMix64) -> Self {
        let v = (0..dim)
            .map(|_| C64::new(rng.next_gaussian(), rng.next_gaussian()))
            .collect();
        Self::normalized(v).expect("Gaussian vector is nonzero almost surely")
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn projector(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.amplitudes, &self.amplitudes)
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix::new(self.projector()).expect("projector onto a unit vector is a state")
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &PureState) -> f64 {
        assert_eq!(self.dim(), other.dim());
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum::<C64>()
            .norm_sqr()
    }
}
