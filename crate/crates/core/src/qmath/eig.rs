use num_complex::Complex64 as C64;

use super::{ComplexMatrix, HERMITIAN_TOL, MAX_DIM};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 64;
const OFF_DIAGONAL_TOL: f64 = 1e-14;

/// Eigenvalues in ascending order with matching orthonormal eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianSpectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<Vec<C64>>,
}

impl HermitianSpectrum {
    /// `Σ_k λ_k v_k v_k†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let mut out = ComplexMatrix::zeros(n, n);
        for (val, vec) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            for r in 0..n {
                for c in 0..n {
                    out[(r, c)] += vec[r] * vec[c].conj() * *val;
                }
            }
        }
        out
    }
}

/// Diagonalises a Hermitian matrix with cyclic complex Jacobi rotations.
///
/// Sweeps stop once the off-diagonal Frobenius mass drops below
/// `1e-14 · max(1, ‖m‖_F)`.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<HermitianSpectrum> {
    if !m.is_square() {
        return Err(Error::ShapeMismatch(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    if n > MAX_DIM {
        return Err(Error::DimensionTooLarge { dim: n, max: MAX_DIM });
    }
    let residual = m.hermiticity_residual();
    if residual > HERMITIAN_TOL {
        return Err(Error::NonHermitian { residual });
    }

    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let threshold = OFF_DIAGONAL_TOL * m.frobenius_norm().max(1.0);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) < threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    Ok(HermitianSpectrum {
        eigenvalues: order.iter().map(|&i| a[(i, i)].re).collect(),
        eigenvectors: order
            .iter()
            .map(|&i| (0..n).map(|r| v[(r, i)]).collect())
            .collect(),
    })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                sum += a[(r, c)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Annihilates `a[p][q]` with `W = diag(1, e^{-iφ}) · R(θ)` acting on the
/// `(p, q)` plane, where `a[p][q] = |g| e^{iφ}`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let g = a[(p, q)];
    let g_abs = g.norm();
    if g_abs == 0.0 {
        return;
    }
    let phase = g / g_abs;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * g_abs);
    let t = if theta.is_infinite() {
        0.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let pc = phase.conj();

    // W = [[c, s], [-s e^{-iφ}, c e^{-iφ}]]
    let w_pp = C64::new(c, 0.0);
    let w_pq = C64::new(s, 0.0);
    let w_qp = -pc * s;
    let w_qq = pc * c;

    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * w_pp + akq * w_qp;
        a[(k, q)] = akp * w_pq + akq * w_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = w_pp.conj() * apk + w_qp.conj() * aqk;
        a[(q, k)] = w_pq.conj() * apk + w_qq.conj() * aqk;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * w_pp + vkq * w_qp;
        v[(k, q)] = vkp * w_pq + vkq * w_qq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmath::pauli_x;
    use crate::rng::SplitMix64;
    use approx::assert_abs_diff_eq;

    fn random_hermitian(rng: &mut SplitMix64, n: usize) -> ComplexMatrix {
        let g = ComplexMatrix::from_fn(n, n, |_, _| C64::new(rng.next_gaussian(), rng.next_gaussian()));
        (&g + &g.dagger()).scale_real(0.5)
    }

    #[test]
    fn identity_and_diagonal() {
        let s = hermitian_eig(&ComplexMatrix::identity(2)).unwrap();
        assert_eq!(s.eigenvalues, vec![1.0, 1.0]);
        let s = hermitian_eig(&ComplexMatrix::from_real_diag(&[0.75, 0.25])).unwrap();
        assert_eq!(s.eigenvalues, vec![0.25, 0.75]);
    }

    #[test]
    fn bloch_state_eigenvalues() {
        // (I + r X) / 2 has eigenvalues (1 ± r) / 2
        let m = &ComplexMatrix::identity(2) + &pauli_x().scale_real(0.6);
        let s = hermitian_eig(&m.scale_real(0.5)).unwrap();
        assert_abs_diff_eq!(s.eigenvalues[0], 0.2, epsilon = 1e-15);
        assert_abs_diff_eq!(s.eigenvalues[1], 0.8, epsilon = 1e-15);
    }

    #[test]
    fn rejects_non_hermitian_and_large() {
        let m = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(hermitian_eig(&m), Err(Error::NonHermitian { .. })));
        assert!(matches!(
            hermitian_eig(&ComplexMatrix::identity(17)),
            Err(Error::DimensionTooLarge { .. })
        ));
    }

    #[test]
    fn reconstruction_and_orthonormality_on_random_matrices() {
        let mut rng = SplitMix64::new(0x5eed);
        for trial in 0..1000 {
            let n = 1 + trial % 12;
            let m = random_hermitian(&mut rng, n);
            let s = hermitian_eig(&m).unwrap();
            assert!(s.reconstruct().max_abs_diff(&m) <= 1e-10, "trial {trial}");
            assert!(s.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
            for i in 0..n {
                for j in 0..n {
                    let dot: C64 = (0..n).map(|k| s.eigenvectors[i][k].conj() * s.eigenvectors[j][k]).sum();
                    let expected = if i == j { 1.0 } else { 0.0 };
                    assert!((dot - expected).norm() <= 1e-10);
                }
            }
        }
    }

    #[test]
    fn deterministic() {
        let mut rng = SplitMix64::new(3);
        let m = random_hermitian(&mut rng, 6);
        assert_eq!(hermitian_eig(&m).unwrap(), hermitian_eig(&m).unwrap());
    }
}
