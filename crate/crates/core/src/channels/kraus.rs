use crate::error::{Error, Result};
use crate::qmath::{ComplexMatrix, Subsystem};

use super::{DensityMatrix, PureState};

const COMPLETENESS_TOL: f64 = 1e-10;

/// One summand `[offset, offset + size)` of a direct-sum output space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Block {
    pub offset: usize,
    pub size: usize,
}

impl Block {
    pub const fn new(offset: usize, size: usize) -> Self {
        Self { offset, size }
    }

    pub fn contains(&self, index: usize) -> bool {
        (self.offset..self.offset + self.size).contains(&index)
    }
}

/// A CPTP map in Kraus form, optionally tagged with a direct-sum structure on
/// its output.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    dim_in: usize,
    dim_out: usize,
    kraus: Vec<ComplexMatrix>,
    blocks: Option<Vec<Block>>,
}

impl KrausChannel {
    pub fn new(kraus: Vec<ComplexMatrix>, blocks: Option<Vec<Block>>) -> Result<Self> {
        let first = kraus
            .first()
            .ok_or_else(|| Error::ShapeMismatch("a channel needs at least one Kraus operator".into()))?;
        let (dim_out, dim_in) = (first.rows(), first.cols());
        if let Some(k) = kraus.iter().find(|k| k.rows() != dim_out || k.cols() != dim_in) {
            return Err(Error::ShapeMismatch(format!(
                "Kraus operator is {}x{}, expected {dim_out}x{dim_in}",
                k.rows(),
                k.cols()
            )));
        }
        let channel = Self {
            dim_in,
            dim_out,
            kraus,
            blocks,
        };
        let residual = channel.completeness_residual();
        if residual > COMPLETENESS_TOL {
            return Err(Error::PreconditionViolated(format!(
                "Kraus operators are not trace preserving (residual {residual:.3e})"
            )));
        }
        if let Some(blocks) = &channel.blocks {
            channel.check_blocks(blocks)?;
        }
        Ok(channel)
    }

    fn check_blocks(&self, blocks: &[Block]) -> Result<()> {
        let mut next = 0;
        for b in blocks {
            if b.offset != next || b.size == 0 {
                return Err(Error::ShapeMismatch(format!(
                    "blocks must tile the output in order; found {b:?} where offset {next} was expected"
                )));
            }
            next += b.size;
        }
        if next != self.dim_out {
            return Err(Error::ShapeMismatch(format!(
                "blocks cover {next} of {} output dimensions",
                self.dim_out
            )));
        }
        for (i, k) in self.kraus.iter().enumerate() {
            let support: Vec<usize> = (0..self.dim_out)
                .filter(|&r| (0..self.dim_in).any(|c| k[(r, c)].norm() > 0.0))
                .collect();
            let inside = |b: &Block| support.iter().all(|&r| b.contains(r));
            if blocks.iter().filter(|b| inside(b)).count() != 1 && !support.is_empty() {
                return Err(Error::ShapeMismatch(format!(
                    "Kraus operator {i} has rows outside a single block"
                )));
            }
        }
        Ok(())
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn blocks(&self) -> Option<&[Block]> {
        self.blocks.as_deref()
    }

    /// Index of the block holding the rows of Kraus operator `k`, if any.
    pub fn block_of(&self, k: usize) -> Option<usize> {
        let blocks = self.blocks.as_ref()?;
        let op = &self.kraus[k];
        let row = (0..self.dim_out).find(|&r| (0..self.dim_in).any(|c| op[(r, c)].norm() > 0.0))?;
        blocks.iter().position(|b| b.contains(row))
    }

    /// `max |Σ K† K − I|` entrywise.
    pub fn completeness_residual(&self) -> f64 {
        let mut sum = ComplexMatrix::zeros(self.dim_in, self.dim_in);
        for k in &self.kraus {
            sum = &sum + &k.dagger().matmul(k);
        }
        sum.max_abs_diff(&ComplexMatrix::identity(self.dim_in))
    }

    /// `Σ K m K†` without any validation of `m`.
    pub fn apply_matrix(&self, m: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.dim_out, self.dim_out);
        for k in &self.kraus {
            out = &out + &k.sandwich(m);
        }
        out
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != self.dim_in {
            return Err(Error::ShapeMismatch(format!(
                "channel input dimension is {}, state dimension is {}",
                self.dim_in,
                rho.dim()
            )));
        }
        DensityMatrix::new(self.apply_matrix(rho.matrix()))
    }

    /// Applies `id_R ⊗ self` to an operator on `R ⊗ A` with `dims = (d_R, d_A)`.
    pub fn apply_with_reference_matrix(
        &self,
        m: &ComplexMatrix,
        dims: (usize, usize),
    ) -> Result<ComplexMatrix> {
        let (d_ref, d_a) = dims;
        if d_a != self.dim_in || m.rows() != d_ref * d_a || !m.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "reference application needs a {0}x{0} operator on {d_ref}x{1}",
                d_ref * self.dim_in,
                self.dim_in
            )));
        }
        let id = ComplexMatrix::identity(d_ref);
        let mut out = ComplexMatrix::zeros(d_ref * self.dim_out, d_ref * self.dim_out);
        for k in &self.kraus {
            out = &out + &id.kron(k).sandwich(m);
        }
        Ok(out)
    }

    pub fn apply_with_reference(
        &self,
        rho: &DensityMatrix,
        dims: (usize, usize),
    ) -> Result<DensityMatrix> {
        DensityMatrix::new(self.apply_with_reference_matrix(rho.matrix(), dims)?)
    }

    /// `after ∘ self`.
    pub fn then(&self, after: &KrausChannel) -> Result<KrausChannel> {
        if after.dim_in != self.dim_out {
            return Err(Error::ShapeMismatch(format!(
                "cannot compose a channel with output {} into one with input {}",
                self.dim_out, after.dim_in
            )));
        }
        let kraus = after
            .kraus
            .iter()
            .flat_map(|a| self.kraus.iter().map(move |k| a.matmul(k)))
            .filter(|k| k.frobenius_norm() > 0.0)
            .collect();
        KrausChannel::new(kraus, None)
    }

    /// Normalised Choi state `(id ⊗ self)(|Φ⟩⟨Φ|)`.
    pub fn choi(&self) -> ChoiState {
        let phi = PureState::maximally_entangled(self.dim_in);
        let matrix = self
            .apply_with_reference_matrix(&phi.projector(), (self.dim_in, self.dim_in))
            .expect("dimensions match by construction");
        ChoiState {
            dim_in: self.dim_in,
            dim_out: self.dim_out,
            state: DensityMatrix::new(matrix).expect("Choi operator of a channel is a state"),
        }
    }
}

/// Normalised Choi state; the input reference is the first factor.
#[derive(Debug, Clone, PartialEq)]
pub struct ChoiState {
    pub dim_in: usize,
    pub dim_out: usize,
    pub state: DensityMatrix,
}

impl ChoiState {
    /// Largest entrywise deviation between two Choi matrices, the
    /// channel-equality test used throughout.
    pub fn distance(&self, other: &ChoiState) -> f64 {
        if (self.dim_in, self.dim_out) != (other.dim_in, other.dim_out) {
            return f64::INFINITY;
        }
        self.state.matrix().max_abs_diff(other.state.matrix())
    }

    /// `max |Tr_out J − I/d_in|`.
    pub fn marginal_residual(&self) -> f64 {
        let reduced = self
            .state
            .matrix()
            .partial_trace((self.dim_in, self.dim_out), Subsystem::Second)
            .expect("dimensions match by construction");
        let target = ComplexMatrix::identity(self.dim_in).scale_real(1.0 / self.dim_in as f64);
        reduced.max_abs_diff(&target)
    }
}

/// Isometry `V : A → B ⊗ C` with `V† V = I`.
#[derive(Debug, Clone, PartialEq)]
pub struct Isometry {
    dim_in: usize,
    dims_out: (usize, usize),
    matrix: ComplexMatrix,
}

impl Isometry {
    pub fn new(matrix: ComplexMatrix, dims_out: (usize, usize)) -> Result<Self> {
        if matrix.rows() != dims_out.0 * dims_out.1 {
            return Err(Error::ShapeMismatch(format!(
                "isometry has {} rows, expected {}",
                matrix.rows(),
                dims_out.0 * dims_out.1
            )));
        }
        let iso = Self {
            dim_in: matrix.cols(),
            dims_out,
            matrix,
        };
        let residual = iso.isometry_residual();
        if residual > COMPLETENESS_TOL {
            return Err(Error::PreconditionViolated(format!(
                "V†V deviates from the identity by {residual:.3e}"
            )));
        }
        Ok(iso)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dims_out(&self) -> (usize, usize) {
        self.dims_out
    }

    pub fn isometry_residual(&self) -> f64 {
        self.matrix
            .dagger()
            .matmul(&self.matrix)
            .max_abs_diff(&ComplexMatrix::identity(self.dim_in))
    }

    /// The channel `ρ ↦ Tr_traced(V ρ V†)`, with Kraus operators
    /// `(⟨e_k| ⊗ I) V` or `(I ⊗ ⟨e_k|) V`.
    pub fn trace_out(&self, traced: Subsystem) -> KrausChannel {
        let (db, dc) = self.dims_out;
        let (kept, dropped) = match traced {
            Subsystem::First => (dc, db),
            Subsystem::Second => (db, dc),
        };
        let kraus = (0..dropped)
            .map(|k| {
                ComplexMatrix::from_fn(kept, self.dim_in, |r, c| {
                    let row = match traced {
                        Subsystem::First => k * dc + r,
                        Subsystem::Second => r * dc + k,
                    };
                    self.matrix[(row, c)]
                })
            })
            .filter(|k| k.frobenius_norm() > 0.0)
            .collect();
        KrausChannel::new(kraus, None).expect("slices of an isometry form a channel")
    }
}
