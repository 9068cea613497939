use crate::capacity::{uniform_grid, CapacityCurvePoint};
use crate::error::{degradable_regime, unit_interval, Error, Result};
use crate::qmath::binary_entropy;

/// Conditional pmf `P(y, z, l | x)` over binary `x, y, z` and `l ∈ {1, 2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct WiretapChannel {
    lambda: f64,
    p: f64,
    /// `[x][y][z][l − 1]`
    table: [[[[f64; 2]; 2]; 2]; 2],
}

fn l_index(l: u8) -> usize {
    match l {
        1 => 0,
        2 => 1,
        _ => panic!("branch label must be 1 or 2, got {l}"),
    }
}

/// Eve's noise in the second branch is uniform.
const Z2_UNIFORM: f64 = 0.5;

pub fn build_wiretap(lambda: f64, p: f64) -> Result<WiretapChannel> {
    unit_interval("lambda", lambda)?;
    unit_interval("p", p)?;
    let mut table = [[[[0.0; 2]; 2]; 2]; 2];
    for x in 0..2 {
        for y in 0..2 {
            for z in 0..2 {
                // L = 1: z = x, y = z through BSC(p)
                if z == x {
                    table[x][y][z][0] = lambda * if y == z { 1.0 - p } else { p };
                }
                // L = 2: y = x, z independent
                if y == x {
                    table[x][y][z][1] = (1.0 - lambda) * Z2_UNIFORM;
                }
            }
        }
    }
    let ch = WiretapChannel { lambda, p, table };
    ch.validate()?;
    Ok(ch)
}

impl WiretapChannel {
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// `P(y, z, l | x)`.
    pub fn prob(&self, x: usize, y: usize, z: usize, l: u8) -> f64 {
        self.table[x][y][z][l_index(l)]
    }

    /// `P(y, l | x)`, Bob's view.
    pub fn bob(&self, x: usize, y: usize, l: u8) -> f64 {
        (0..2).map(|z| self.prob(x, y, z, l)).sum()
    }

    /// `P(z, l | x)`, Eve's view.
    pub fn eve(&self, x: usize, z: usize, l: u8) -> f64 {
        (0..2).map(|y| self.prob(x, y, z, l)).sum()
    }

    fn validate(&self) -> Result<()> {
        for x in 0..2 {
            let mut total = 0.0;
            let mut flag_one = 0.0;
            for y in 0..2 {
                for z in 0..2 {
                    for l in [1, 2] {
                        let v = self.prob(x, y, z, l);
                        if v < 0.0 {
                            return Err(Error::NotADistribution(format!("negative entry {v}")));
                        }
                        total += v;
                        if l == 1 {
                            flag_one += v;
                        }
                    }
                }
            }
            if (total - 1.0).abs() > 1e-12 {
                return Err(Error::NotADistribution(format!("slice x={x} sums to {total}")));
            }
            if (flag_one - self.lambda).abs() > 1e-12 {
                return Err(Error::NotADistribution(format!("P(L=1|x={x}) = {flag_one}")));
            }
        }
        Ok(())
    }
}

/// `1 − λ(1 + H(p))`, valid for `λ ≤ 1/2`.
pub fn one_way_secrecy_capacity(lambda: f64, p: f64) -> Result<f64> {
    degradable_regime("lambda", lambda)?;
    Ok(1.0 - lambda * (1.0 + binary_entropy(p)?))
}

/// `1 − λ`.
pub fn two_way_secrecy_capacity(lambda: f64) -> Result<f64> {
    unit_interval("lambda", lambda)?;
    Ok(1.0 - lambda)
}

/// Stochastic map `T(z, l' | y, l)` taking Bob's view to Eve's.
#[derive(Debug, Clone, PartialEq)]
pub struct DegradingMap {
    /// `[y][l − 1][z][l' − 1]`
    table: [[[[f64; 2]; 2]; 2]; 2],
}

impl DegradingMap {
    pub fn prob(&self, z: usize, l_out: u8, y: usize, l_in: u8) -> f64 {
        self.table[y][l_index(l_in)][z][l_index(l_out)]
    }
}

/// Bob relabels `L = 1` rounds as `L' = 2` with fresh noise; on `L = 2`
/// rounds he forwards `z = y` under `L' = 1` with probability `λ/(1 − λ)`
/// and fresh noise under `L' = 2` otherwise.
pub fn degrading_stochastic_map(lambda: f64) -> Result<DegradingMap> {
    degradable_regime("lambda", lambda)?;
    let forward = if lambda == 0.0 { 0.0 } else { lambda / (1.0 - lambda) };
    let mut table = [[[[0.0; 2]; 2]; 2]; 2];
    for y in 0..2 {
        for z in 0..2 {
            table[y][0][z][1] = Z2_UNIFORM;
            table[y][1][z][1] = (1.0 - forward) * Z2_UNIFORM;
            if z == y {
                table[y][1][z][0] = forward;
            }
        }
    }
    Ok(DegradingMap { table })
}

/// `max |Σ_{y,l} T(z,l'|y,l) P(y,l|x) − P(z,l'|x)|`.
pub fn verify_degraded(ch: &WiretapChannel) -> Result<f64> {
    let t = degrading_stochastic_map(ch.lambda())?;
    let mut worst: f64 = 0.0;
    for x in 0..2 {
        for z in 0..2 {
            for l_out in [1, 2] {
                let mut simulated = 0.0;
                for y in 0..2 {
                    for l_in in [1, 2] {
                        simulated += t.prob(z, l_out, y, l_in) * ch.bob(x, y, l_in);
                    }
                }
                worst = worst.max((simulated - ch.eve(x, z, l_out)).abs());
            }
        }
    }
    Ok(worst)
}

pub const FIG6_RANGE: (f64, f64) = (0.8687, 1.0);

/// `λ(p) = p / (2 log₂(6/p))`.
pub fn fig6_lambda(p: f64) -> f64 {
    p / (2.0 * (6.0 / p).log2())
}

fn fig6_one_way(p: f64) -> f64 {
    let lambda = fig6_lambda(p);
    1.0 - lambda * (1.0 + binary_entropy(p).unwrap_or(0.0))
}

pub fn sweep_fig6(points: usize) -> Result<Vec<CapacityCurvePoint>> {
    uniform_grid(FIG6_RANGE.0, FIG6_RANGE.1, points)?
        .into_iter()
        .map(|p| {
            let lambda = fig6_lambda(p);
            let one_way = one_way_secrecy_capacity(lambda, p)?;
            Ok(CapacityCurvePoint {
                x: p,
                lambda,
                p,
                one_way: Some(one_way),
                two_way: two_way_secrecy_capacity(lambda)?,
                lower_bound: one_way,
                upper_bound: one_way,
            })
        })
        .collect()
}

/// Point in `(1/2, 1)` where the one-way curve of the Fig. 6 family turns
/// from decreasing to increasing. It lies a few `1e-5` above the sweep's
/// lower end, so a coarse grid still sees a strictly increasing curve.
pub fn fig6_crossover() -> f64 {
    let h = 1e-7;
    let slope = |p: f64| (fig6_one_way(p + h) - fig6_one_way(p - h)) / (2.0 * h);
    let (mut lo, mut hi) = (0.55, 1.0 - 2.0 * h);
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if slope(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn perfect_bob_when_lambda_zero() {
        let ch = build_wiretap(0.0, 0.3).unwrap();
        for x in 0..2 {
            assert_abs_diff_eq!(ch.bob(x, x, 2), 1.0);
            assert_abs_diff_eq!(ch.eve(x, 0, 2), 0.5);
            assert_abs_diff_eq!(ch.eve(x, 1, 2), 0.5);
        }
    }

    #[test]
    fn both_see_input_when_lambda_one_noiseless() {
        let ch = build_wiretap(1.0, 0.0).unwrap();
        for x in 0..2 {
            assert_eq!(ch.bob(x, x, 1), 1.0);
            assert_eq!(ch.eve(x, x, 1), 1.0);
        }
    }

    #[test]
    fn bsc_branch() {
        let ch = build_wiretap(0.2, 0.1).unwrap();
        for x in 0..2 {
            let p_l1: f64 = (0..2).map(|y| ch.bob(x, y, 1)).sum();
            assert_abs_diff_eq!(ch.bob(x, x, 1) / p_l1, 0.9, epsilon = 1e-15);
        }
        assert!(build_wiretap(1.2, 0.1).is_err());
    }

    #[test]
    fn closed_forms() {
        assert_abs_diff_eq!(one_way_secrecy_capacity(0.2, 0.1).unwrap(), 0.706201, epsilon = 1e-6);
        assert_abs_diff_eq!(two_way_secrecy_capacity(0.2).unwrap(), 0.8, epsilon = 1e-15);
        assert_eq!(one_way_secrecy_capacity(0.0, 0.4).unwrap(), 1.0);
        assert_eq!(two_way_secrecy_capacity(0.0).unwrap(), 1.0);
        let lambda = 1.0 / (2.0 * 6f64.log2());
        assert_abs_diff_eq!(lambda, 0.193426, epsilon = 1e-6);
        assert_abs_diff_eq!(one_way_secrecy_capacity(lambda, 1.0).unwrap(), 0.806574, epsilon = 1e-6);
        assert_abs_diff_eq!(two_way_secrecy_capacity(lambda).unwrap(), 0.806574, epsilon = 1e-6);
        assert!(one_way_secrecy_capacity(0.6, 0.1).is_err());
    }

    #[test]
    fn degrading_map_examples() {
        for (lambda, p) in [(0.0, 0.2), (0.3, 0.4), (0.5, 0.7)] {
            let ch = build_wiretap(lambda, p).unwrap();
            assert!(verify_degraded(&ch).unwrap() <= 1e-12);
        }
        let t = degrading_stochastic_map(0.0).unwrap();
        assert_eq!(t.prob(0, 2, 1, 2), 0.5);
        assert_eq!(t.prob(1, 1, 1, 2), 0.0);
        let t = degrading_stochastic_map(0.5).unwrap();
        assert_eq!(t.prob(1, 1, 1, 2), 1.0);
        assert!(degrading_stochastic_map(0.6).is_err());
        assert!(verify_degraded(&build_wiretap(0.7, 0.1).unwrap()).is_err());
    }

    #[test]
    fn fig6_endpoints() {
        let s = sweep_fig6(100).unwrap();
        let last = s.last().unwrap();
        assert_eq!(last.p, 1.0);
        assert_abs_diff_eq!(last.one_way.unwrap(), 0.806574, epsilon = 1e-6);
        assert_abs_diff_eq!(last.two_way, 0.806574, epsilon = 1e-6);
        let first = s.first().unwrap();
        assert_abs_diff_eq!(first.lambda, 0.155791, epsilon = 1e-6);
        assert_abs_diff_eq!(first.two_way, 1.0 - first.lambda, epsilon = 1e-15);
        let h = binary_entropy(0.1313).unwrap();
        assert_abs_diff_eq!(first.one_way.unwrap(), 1.0 - first.lambda * (1.0 + h), epsilon = 1e-12);
    }

    #[test]
    fn crossover_sits_at_the_rounded_endpoint() {
        let c = fig6_crossover();
        assert!((c - FIG6_RANGE.0).abs() < 1e-4, "{c}");
        let s = sweep_fig6(100).unwrap();
        assert!(s[1].one_way.unwrap() - s[0].one_way.unwrap() > 1e-9);
    }
}
