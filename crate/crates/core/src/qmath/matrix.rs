use std::fmt::Write as _;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Which factor of a bipartite space an operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

const ZERO: C64 = C64::new(0.0, 0.0);

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major entries, checking length and finiteness.
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries cannot form a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::ShapeMismatch("matrix has non-finite entries".into()));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Self {
        let cols = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |r, c| rows[r][c])
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let cols = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |r, c| C64::new(rows[r][c], 0.0))
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |r, c| if r == c { C64::new(diag[r], 0.0) } else { ZERO })
    }

    /// Column vector from amplitudes.
    pub fn column(v: &[C64]) -> Self {
        Self::from_fn(v.len(), 1, |r, _| v[r])
    }

    /// `|a⟩⟨b|`.
    pub fn outer(a: &[C64], b: &[C64]) -> Self {
        Self::from_fn(a.len(), b.len(), |r, c| a[r] * b[c].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == ZERO {
                    continue;
                }
                for c in 0..other.cols {
                    out.data[r * other.cols + c] += a * other.data[k * other.cols + c];
                }
            }
        }
        out
    }

    /// `self · m · self†`.
    pub fn sandwich(&self, m: &Self) -> Self {
        self.matmul(m).matmul(&self.dagger())
    }

    pub fn kron(&self, other: &Self) -> Self {
        Self::from_fn(self.rows * other.rows, self.cols * other.cols, |r, c| {
            self[(r / other.rows, c / other.cols)] * other[(r % other.rows, c % other.cols)]
        })
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |m - m†|` entrywise; infinite for non-square input.
    pub fn hermiticity_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst: f64 = 0.0;
        for r in 0..self.rows {
            for c in r..self.cols {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    /// `(m + m†) / 2`.
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |r, c| (self[(r, c)] + self[(c, r)].conj()) * 0.5)
    }

    pub fn partial_trace(&self, dims: (usize, usize), traced: Subsystem) -> Result<Self> {
        let (da, db) = dims;
        if !self.is_square() || self.rows != da * db {
            return Err(Error::ShapeMismatch(format!(
                "partial trace over {da}x{db} needs a square matrix of dimension {}, got {}x{}",
                da * db,
                self.rows,
                self.cols
            )));
        }
        Ok(match traced {
            Subsystem::Second => Self::from_fn(da, da, |i, j| {
                (0..db).map(|k| self[(i * db + k, j * db + k)]).sum()
            }),
            Subsystem::First => Self::from_fn(db, db, |i, j| {
                (0..da).map(|k| self[(k * db + i, k * db + j)]).sum()
            }),
        })
    }

    /// Text dump with one `row col re im` line per entry, 17 significant digits.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for r in 0..self.rows {
            for c in 0..self.cols {
                let z = self[(r, c)];
                let _ = writeln!(out, "{r} {c} {:.16e} {:.16e}", z.re, z.im);
            }
        }
        out
    }

    /// Parses the format written by [`ComplexMatrix::dump`].
    pub fn parse_dump(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let bad = || Error::ShapeMismatch(format!("malformed dump line {}: {line:?}", n + 1));
            if fields.len() != 4 {
                return Err(bad());
            }
            let r: usize = fields[0].parse().map_err(|_| bad())?;
            let c: usize = fields[1].parse().map_err(|_| bad())?;
            let re: f64 = fields[2].parse().map_err(|_| bad())?;
            let im: f64 = fields[3].parse().map_err(|_| bad())?;
            entries.push((r, c, C64::new(re, im)));
        }
        let rows = entries.iter().map(|e| e.0).max().map_or(0, |m| m + 1);
        let cols = entries.iter().map(|e| e.1).max().map_or(0, |m| m + 1);
        if entries.len() != rows * cols || rows == 0 {
            return Err(Error::ShapeMismatch("dump does not list every entry exactly once".into()));
        }
        let mut data = vec![None; rows * cols];
        for (r, c, z) in entries {
            if data[r * cols + c].replace(z).is_some() {
                return Err(Error::ShapeMismatch(format!("duplicate entry ({r}, {c})")));
            }
        }
        Self::new(rows, cols, data.into_iter().map(|z| z.unwrap_or(ZERO)).collect())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_trace_of_product() {
        let rho = ComplexMatrix::from_real_rows(&[&[0.6, 0.2], &[0.2, 0.4]]);
        let sigma = ComplexMatrix::from_real_diag(&[0.1, 0.3, 0.6]);
        let joint = rho.kron(&sigma);
        let a = joint.partial_trace((2, 3), Subsystem::Second).unwrap();
        let b = joint.partial_trace((2, 3), Subsystem::First).unwrap();
        assert!(a.max_abs_diff(&rho) < 1e-15);
        assert!(b.max_abs_diff(&sigma) < 1e-15);
        assert!(joint.partial_trace((3, 3), Subsystem::First).is_err());
    }

    #[test]
    fn maximally_entangled_reduces_to_mixed() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let phi = [C64::new(s, 0.0), ZERO, ZERO, C64::new(s, 0.0)];
        let m = ComplexMatrix::outer(&phi, &phi);
        let red = m.partial_trace((2, 2), Subsystem::Second).unwrap();
        assert!(red.max_abs_diff(&ComplexMatrix::from_real_diag(&[0.5, 0.5])) < 1e-15);
    }

    #[test]
    fn dump_roundtrip_is_exact() {
        let m = ComplexMatrix::from_fn(3, 2, |r, c| C64::new(0.1 * r as f64 + 1.0 / 3.0, -(c as f64) / 7.0));
        let back = ComplexMatrix::parse_dump(&m.dump()).unwrap();
        assert_eq!(back, m);
        assert!(m.dump().starts_with("0 0 3.3333333333333331e-1 -0.0000000000000000e0"));
    }

    #[test]
    fn parse_dump_rejects_garbage() {
        assert!(ComplexMatrix::parse_dump("0 0 1.0").is_err());
        assert!(ComplexMatrix::parse_dump("0 0 1 0\n0 0 1 0").is_err());
        assert!(ComplexMatrix::parse_dump("").is_err());
    }

    #[test]
    fn new_rejects_bad_shapes() {
        assert!(ComplexMatrix::new(2, 2, vec![ZERO; 3]).is_err());
        assert!(ComplexMatrix::new(1, 1, vec![C64::new(f64::NAN, 0.0)]).is_err());
    }
}
