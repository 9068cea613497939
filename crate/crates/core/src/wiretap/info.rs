use crate::error::{Error, Result};
use crate::qmath::shannon_entropy;

use super::WiretapChannel;

/// Binary input law `P(X = 1) = q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InputDistribution {
    q: f64,
}

impl InputDistribution {
    pub fn new(q: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&q) {
            return Err(Error::Domain {
                name: "q",
                value: q,
                allowed: "[0, 1]",
            });
        }
        Ok(Self { q })
    }

    pub fn uniform() -> Self {
        Self { q: 0.5 }
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn prob(&self, x: usize) -> f64 {
        if x == 1 {
            self.q
        } else {
            1.0 - self.q
        }
    }
}

/// Joint pmf over a finite rectangle, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct JointPmf {
    rows: usize,
    cols: usize,
    probs: Vec<f64>,
}

impl JointPmf {
    pub fn new(rows: usize, cols: usize, probs: Vec<f64>) -> Result<Self> {
        if probs.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} table",
                probs.len()
            )));
        }
        shannon_entropy(&probs)?;
        Ok(Self { rows, cols, probs })
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.probs[r * self.cols + c]
    }

    pub fn row_marginal(&self) -> Vec<f64> {
        (0..self.rows).map(|r| (0..self.cols).map(|c| self.get(r, c)).sum()).collect()
    }

    pub fn col_marginal(&self) -> Vec<f64> {
        (0..self.cols).map(|c| (0..self.rows).map(|r| self.get(r, c)).sum()).collect()
    }

    /// `X` rows against Bob's `(y, l)` columns.
    pub fn bob(ch: &WiretapChannel, input: InputDistribution) -> Self {
        Self::from_view(input, |x, col| ch.bob(x, col % 2, 1 + (col / 2) as u8))
    }

    /// `X` rows against Eve's `(z, l)` columns.
    pub fn eve(ch: &WiretapChannel, input: InputDistribution) -> Self {
        Self::from_view(input, |x, col| ch.eve(x, col % 2, 1 + (col / 2) as u8))
    }

    /// Conditional on `L = l`: `X` against Bob's `y`, or Eve's `z`.
    pub fn slice(ch: &WiretapChannel, input: InputDistribution, l: u8, eve: bool) -> Self {
        let weight = if l == 1 { ch.lambda() } else { 1.0 - ch.lambda() };
        let probs = (0..2)
            .flat_map(|x| {
                (0..2).map(move |v| {
                    let joint = if eve { ch.eve(x, v, l) } else { ch.bob(x, v, l) };
                    if weight > 0.0 {
                        input.prob(x) * joint / weight
                    } else {
                        // empty branch: any product law carries zero information
                        input.prob(x) * 0.5
                    }
                })
            })
            .collect();
        Self {
            rows: 2,
            cols: 2,
            probs,
        }
    }

    fn from_view(input: InputDistribution, view: impl Fn(usize, usize) -> f64) -> Self {
        let probs = (0..2)
            .flat_map(|x| (0..4).map(move |col| (x, col)))
            .map(|(x, col)| input.prob(x) * view(x, col))
            .collect();
        Self {
            rows: 2,
            cols: 4,
            probs,
        }
    }
}

/// `I(R; C) = H(R) + H(C) − H(R, C)` in bits.
pub fn mutual_information(joint: &JointPmf) -> f64 {
    let h = |v: &[f64]| shannon_entropy(v).unwrap_or(0.0);
    (h(&joint.row_marginal()) + h(&joint.col_marginal()) - h(&joint.probs)).max(0.0)
}

/// `I(X; Y, L) − I(X; Z, L)` under input `q`.
pub fn secrecy_rate(ch: &WiretapChannel, input: InputDistribution) -> f64 {
    mutual_information(&JointPmf::bob(ch, input)) - mutual_information(&JointPmf::eve(ch, input))
}

/// Difference between the secrecy rate and its per-branch decomposition.
pub fn decomposition_residual(ch: &WiretapChannel, input: InputDistribution) -> f64 {
    let branch = |l: u8| {
        mutual_information(&JointPmf::slice(ch, input, l, false))
            - mutual_information(&JointPmf::slice(ch, input, l, true))
    };
    let split = ch.lambda() * branch(1) + (1.0 - ch.lambda()) * branch(2);
    (secrecy_rate(ch, input) - split).abs()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecrecyMaximum {
    pub value: f64,
    pub argmax: f64,
}

const GOLDEN_TOL: f64 = 1e-10;

/// Maximises the secrecy rate over `q` on a uniform grid, then refines
/// around the best grid point by golden-section search.
pub fn secrecy_capacity_bruteforce(ch: &WiretapChannel, grid: usize) -> Result<SecrecyMaximum> {
    if grid < 3 {
        return Err(Error::Domain {
            name: "grid",
            value: grid as f64,
            allowed: "[3, ∞)",
        });
    }
    let rate = |q: f64| secrecy_rate(ch, InputDistribution { q });
    let step = 1.0 / (grid - 1) as f64;
    let (best, _) = (0..grid)
        .map(|i| (i, rate(i as f64 * step)))
        .fold((0, f64::NEG_INFINITY), |acc, (i, v)| if v > acc.1 { (i, v) } else { acc });
    let mut a = (best as f64 - 1.0).max(0.0) * step;
    let mut b = ((best + 1) as f64 * step).min(1.0);
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (rate(c), rate(d));
    while b - a > GOLDEN_TOL {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = rate(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = rate(d);
        }
    }
    let argmax = 0.5 * (a + b);
    let grid_best = rate(best as f64 * step);
    let refined = rate(argmax);
    Ok(if refined >= grid_best {
        SecrecyMaximum {
            value: refined,
            argmax,
        }
    } else {
        SecrecyMaximum {
            value: grid_best,
            argmax: best as f64 * step,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmath::binary_entropy;
    use crate::wiretap::{build_wiretap, one_way_secrecy_capacity};
    use approx::assert_abs_diff_eq;

    #[test]
    fn mutual_information_of_copies() {
        let copy = JointPmf::new(2, 2, vec![0.5, 0.0, 0.0, 0.5]).unwrap();
        assert_abs_diff_eq!(mutual_information(&copy), 1.0, epsilon = 1e-15);
        let product = JointPmf::new(2, 2, vec![0.25; 4]).unwrap();
        assert_abs_diff_eq!(mutual_information(&product), 0.0, epsilon = 1e-15);
        assert!(JointPmf::new(2, 2, vec![0.5; 4]).is_err());
        assert!(JointPmf::new(2, 3, vec![0.25; 4]).is_err());
    }

    #[test]
    fn uniform_input_rate() {
        let ch = build_wiretap(0.2, 0.1).unwrap();
        let rate = secrecy_rate(&ch, InputDistribution::uniform());
        let expected = 1.0 - 0.2 * (1.0 + binary_entropy(0.1).unwrap());
        assert_abs_diff_eq!(rate, expected, epsilon = 1e-12);
    }

    #[test]
    fn bruteforce_matches_closed_form() {
        for (lambda, p) in [(0.2, 0.1), (0.45, 0.3), (0.1, 0.9), (0.0, 0.5)] {
            let ch = build_wiretap(lambda, p).unwrap();
            let m = secrecy_capacity_bruteforce(&ch, 101).unwrap();
            assert_abs_diff_eq!(m.value, one_way_secrecy_capacity(lambda, p).unwrap(), epsilon = 1e-9);
            assert!((m.argmax - 0.5).abs() <= 1e-4);
        }
    }

    #[test]
    fn decomposes_by_branch() {
        let ch = build_wiretap(0.35, 0.2).unwrap();
        for q in [0.0, 0.1, 0.5, 0.77, 1.0] {
            assert!(decomposition_residual(&ch, InputDistribution::new(q).unwrap()) <= 1e-12);
        }
        assert!(InputDistribution::new(1.5).is_err());
    }
}
