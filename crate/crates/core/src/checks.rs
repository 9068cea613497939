//! Named invariant checks, run by `chancap verify`.
//!
//! Each check reports a residual and a pass flag. Checks are grouped
//! (`qmath`, `channels`, `capacity`, `degradable`, `sequence`, `wiretap`,
//! `protocols`) so a subset can be selected by group or by name.

use crate::capacity::sequence::half_plus;
use crate::capacity::{
    self, coherent_info_lower_bound, coherent_information, coherent_information_state,
    continuity_upper_bound, degradability_residual, degrading_map_with_mixing, derivative_check,
    diamond_distance_to_t, fig3_p, flag_mixing, ic_conjugation_residual,
    maximize_coherent_information, one_way_capacity, output_entropy_split, sweep_fig3, sweep_fig4,
    two_way_capacity,
};
use crate::channels::{
    channel_n, comparison_channel_t, complement_n, erasure_channel, isometry_n, DensityMatrix,
};
use crate::error::Result;
use crate::qmath::{
    binary_entropy, hermitian_eig, pauli_x, trace_norm, von_neumann_entropy, ComplexMatrix,
    Subsystem, C64,
};
use crate::rng::SplitMix64;
use crate::wiretap::{
    build_wiretap, decomposition_residual, one_way_secrecy_capacity, secrecy_capacity_bruteforce,
    simulate_feedback_protocol, sweep_fig6, two_way_secrecy_capacity, verify_degraded,
    InputDistribution,
};

/// Deliberate corruptions used to confirm that the checks can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    /// Degrading map built with `x = 1 − 2λ` instead of `(1 − 2λ)/(1 − λ)`.
    FlagMixingWithoutDenominator,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckConfig {
    pub seed: u64,
    pub mutation: Option<Mutation>,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self {
            seed: 20_240_601,
            mutation: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub group: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub residual: f64,
    /// Set when the check itself errored.
    pub error: Option<String>,
}

impl CheckOutcome {
    /// `PASS|FAIL <name> <residual>`
    pub fn line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        match &self.error {
            Some(e) => format!("{status} {} NaN ({e})", self.name),
            None => format!("{status} {} {:.3e}", self.name, self.residual),
        }
    }
}

type Verdict = Result<(f64, bool)>;

pub struct Check {
    pub group: &'static str,
    pub name: &'static str,
    run: fn(&CheckConfig) -> Verdict,
}

impl Check {
    pub fn run(&self, cfg: &CheckConfig) -> CheckOutcome {
        let (residual, passed, error) = match (self.run)(cfg) {
            Ok((r, ok)) => (r, ok, None),
            Err(e) => (f64::NAN, false, Some(e.to_string())),
        };
        CheckOutcome {
            group: self.group,
            name: self.name,
            passed,
            residual,
            error,
        }
    }
}

fn below(residual: f64, tol: f64) -> Verdict {
    Ok((residual, residual <= tol))
}

/// Smallest signed step of `values` in the given direction; passes when it
/// clears `margin`.
fn monotone(values: &[f64], increasing: bool, margin: f64) -> Verdict {
    let worst = values
        .windows(2)
        .map(|w| if increasing { w[1] - w[0] } else { w[0] - w[1] })
        .fold(f64::INFINITY, f64::min);
    Ok((worst, worst > margin))
}

fn random_hermitian(dim: usize, rng: &mut SplitMix64) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(dim, dim, |_, _| C64::new(rng.next_gaussian(), rng.next_gaussian()));
    &g + &g.dagger()
}

fn random_pairs(rng: &mut SplitMix64, n: usize) -> Vec<(f64, f64)> {
    (0..n).map(|_| (0.5 * rng.next_f64(), rng.next_f64())).collect()
}

fn grid(n: usize, max: f64) -> Vec<f64> {
    (0..n).map(|i| max * i as f64 / (n - 1) as f64).collect()
}

fn eig_reconstruction(cfg: &CheckConfig) -> Verdict {
    let mut rng = SplitMix64::new(cfg.seed);
    let mut worst: f64 = 0.0;
    for i in 0..200 {
        let m = random_hermitian(2 + i % 11, &mut rng);
        worst = worst.max(hermitian_eig(&m)?.reconstruct().max_abs_diff(&m));
    }
    below(worst, 1e-10)
}

fn eig_orthonormality(cfg: &CheckConfig) -> Verdict {
    let mut rng = SplitMix64::new(cfg.seed ^ 1);
    let mut worst: f64 = 0.0;
    for i in 0..100 {
        let dim = 2 + i % 11;
        let s = hermitian_eig(&random_hermitian(dim, &mut rng))?;
        for a in 0..dim {
            for b in 0..dim {
                let dot: C64 = s.eigenvectors[a].iter().zip(&s.eigenvectors[b]).map(|(x, y)| x.conj() * y).sum();
                let want = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((dot - C64::new(want, 0.0)).norm());
            }
        }
    }
    below(worst, 1e-10)
}

fn trace_norm_values(cfg: &CheckConfig) -> Verdict {
    let mut rng = SplitMix64::new(cfg.seed ^ 2);
    let mut worst = (trace_norm(&pauli_x())? - 2.0).abs();
    for _ in 0..50 {
        // a Hermitian matrix's trace norm is the sum of |eigenvalues|, and
        // it dominates |Tr M|
        let m = random_hermitian(4, &mut rng);
        let tn = trace_norm(&m)?;
        worst = worst.max((m.trace().norm() - tn).max(0.0));
    }
    below(worst, 1e-12)
}

fn binary_entropy_diagonal(_: &CheckConfig) -> Verdict {
    let mut worst: f64 = 0.0;
    for p in grid(21, 1.0) {
        let rho = DensityMatrix::new(ComplexMatrix::from_real_diag(&[p, 1.0 - p]))?;
        worst = worst.max((von_neumann_entropy(&rho) - binary_entropy(p)?).abs());
    }
    below(worst, 1e-12)
}

fn partial_trace_product(cfg: &CheckConfig) -> Verdict {
    let mut rng = SplitMix64::new(cfg.seed ^ 3);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let a = DensityMatrix::random(2, &mut rng);
        let b = DensityMatrix::random(3, &mut rng);
        let ab = a.matrix().kron(b.matrix());
        worst = worst.max(ab.partial_trace((2, 3), Subsystem::Second)?.max_abs_diff(a.matrix()));
        worst = worst.max(ab.partial_trace((2, 3), Subsystem::First)?.max_abs_diff(b.matrix()));
    }
    below(worst, 1e-12)
}

fn kraus_completeness(_: &CheckConfig) -> Verdict {
    let mut worst: f64 = 0.0;
    for lambda in grid(6, 0.5) {
        for p in grid(5, 1.0) {
            for ch in [
                channel_n(lambda, p)?,
                complement_n(lambda, p)?,
                comparison_channel_t(lambda, p)?,
                capacity::degrading_map(lambda, p)?,
            ] {
                worst = worst.max(ch.completeness_residual());
            }
        }
        worst = worst.max(erasure_channel(lambda)?.completeness_residual());
    }
    below(worst, 1e-12)
}

fn isometry_marginals(_: &CheckConfig) -> Verdict {
    let mut worst: f64 = 0.0;
    for lambda in grid(5, 1.0) {
        for p in grid(5, 1.0) {
            let v = isometry_n(lambda, p)?;
            worst = worst.max(v.isometry_residual());
            let ch = v.trace_out(Subsystem::Second);
            let env = v.trace_out(Subsystem::First);
            worst = worst.max(ch.choi().distance(&channel_n(lambda, p)?.choi()));
            worst = worst.max(env.choi().distance(&complement_n(lambda, p)?.choi()));
        }
    }
    below(worst, 1e-12)
}

fn choi_marginals(_: &CheckConfig) -> Verdict {
    let mut worst: f64 = 0.0;
    for lambda in grid(5, 1.0) {
        for p in grid(5, 1.0) {
            worst = worst.max(channel_n(lambda, p)?.choi().marginal_residual());
            worst = worst.max(complement_n(lambda, p)?.choi().marginal_residual());
        }
    }
    below(worst, 1e-12)
}

fn output_entropy_blocks(cfg: &CheckConfig) -> Verdict {
    let mut rng = SplitMix64::new(cfg.seed ^ 4);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let (lambda, p) = (rng.next_f64(), rng.next_f64());
        let rho = DensityMatrix::random(2, &mut rng);
        worst = worst.max(output_entropy_split(lambda, p, &rho)?.residual());
    }
    below(worst, 1e-10)
}

fn one_way_oracle(cfg: &CheckConfig) -> Verdict {
    let mut rng = SplitMix64::new(cfg.seed ^ 5);
    let mut worst: f64 = 0.0;
    for (lambda, p) in random_pairs(&mut rng, 4) {
        let m = maximize_coherent_information(lambda, p, 1e-6)?;
        worst = worst.max((m.value - one_way_capacity(lambda, p)?).abs());
    }
    below(worst, 1e-5)
}

fn argmax_maximally_mixed(cfg: &CheckConfig) -> Verdict {
    let mut rng = SplitMix64::new(cfg.seed ^ 6);
    let mut worst: f64 = 0.0;
    for (lambda, p) in random_pairs(&mut rng, 4) {
        worst = worst.max(maximize_coherent_information(lambda, p, 1e-6)?.bloch_norm());
    }
    below(worst, 1e-3)
}

fn choi_coherent_information(_: &CheckConfig) -> Verdict {
    let mut worst: f64 = 0.0;
    for lambda in grid(5, 1.0) {
        for p in grid(5, 1.0) {
            let ch = channel_n(lambda, p)?;
            let env = complement_n(lambda, p)?;
            let direct = coherent_information(&ch, &env, &DensityMatrix::maximally_mixed(2))?;
            let from_choi = coherent_information_state(&ch.choi().state, (2, 4))?;
            worst = worst.max((direct - from_choi).abs());
        }
    }
    below(worst, 1e-10)
}

fn conjugation_invariance(cfg: &CheckConfig) -> Verdict {
    let mut rng = SplitMix64::new(cfg.seed ^ 7);
    let mut worst: f64 = 0.0;
    for _ in 0..5 {
        let (lambda, p) = (rng.next_f64(), rng.next_f64());
        for _ in 0..100 {
            let rho = DensityMatrix::random(2, &mut rng);
            let (dz, dx) = ic_conjugation_residual(lambda, p, &rho)?;
            worst = worst.max(dz).max(dx);
        }
    }
    below(worst, 1e-9)
}

/// Only on `λ ≥ 1/2`, the range where the continuity bound is a bound.
fn bound_ordering(_: &CheckConfig) -> Verdict {
    let mut worst = f64::NEG_INFINITY;
    for lambda in grid(21, 0.5).into_iter().map(|l| 0.5 + l) {
        for p in grid(21, 1.0) {
            let gap = coherent_info_lower_bound(lambda, p)? - continuity_upper_bound(lambda, p)?;
            worst = worst.max(gap);
        }
    }
    Ok((worst, worst <= 1e-9))
}

fn one_way_below_two_way(_: &CheckConfig) -> Verdict {
    let mut worst = f64::NEG_INFINITY;
    for lambda in grid(21, 0.5) {
        for p in grid(21, 1.0) {
            worst = worst.max(one_way_capacity(lambda, p)? - two_way_capacity(lambda)?);
        }
    }
    Ok((worst, worst <= 1e-12))
}

fn fig3_one_way_increasing(_: &CheckConfig) -> Verdict {
    let s = sweep_fig3(100)?;
    monotone(&s.iter().map(|pt| pt.one_way.unwrap_or(f64::NAN)).collect::<Vec<_>>(), true, 1e-9)
}

fn fig3_two_way_decreasing(_: &CheckConfig) -> Verdict {
    let s = sweep_fig3(100)?;
    monotone(&s.iter().map(|pt| pt.two_way).collect::<Vec<_>>(), false, 1e-9)
}

fn fig3_endpoints(_: &CheckConfig) -> Verdict {
    let s = sweep_fig3(100)?;
    let (first, last) = (s[0], s[s.len() - 1]);
    let worst = [
        first.one_way.unwrap_or(f64::NAN) - 0.5,
        first.two_way - 0.75,
        last.one_way.unwrap_or(f64::NAN) - 0.628_524_413_893_479,
        last.two_way - 0.6875,
    ]
    .iter()
    .fold(0.0f64, |m, d| m.max(d.abs()));
    below(worst, 1e-6)
}

fn fig4_endpoint(_: &CheckConfig) -> Verdict {
    let s = sweep_fig4(100)?;
    let last = s[s.len() - 1];
    let worst = (last.one_way.unwrap_or(f64::NAN) - 0.5).abs().max((last.two_way - 0.5).abs());
    below(worst, 1e-9)
}

fn derivative_agreement(_: &CheckConfig) -> Verdict {
    let mut worst: f64 = 0.0;
    for i in 0..=10 {
        let lambda = 0.26 + 0.005 * i as f64;
        let c = derivative_check(fig3_p, lambda)?;
        worst = worst.max((c.analytic - c.numeric).abs());
    }
    below(worst, 1e-5)
}

fn complement_capacity(_: &CheckConfig) -> Verdict {
    let mut worst: f64 = 0.0;
    for lambda in grid(6, 0.5) {
        for p in grid(5, 1.0) {
            let c = capacity::complement_two_way_capacity(lambda, p)?;
            worst = worst.max((c.two_way - capacity::er_bound_complement(lambda, p)?).abs());
            worst = worst.max(c.one_way.abs());
            worst = worst.max((c.two_way - lambda * (1.0 - binary_entropy(p)?)).abs());
        }
    }
    below(worst, 1e-15)
}

fn erasure_reference(_: &CheckConfig) -> Verdict {
    let mut worst: f64 = 0.0;
    for lambda in grid(11, 1.0) {
        let (one, two) = capacity::erasure_capacities(lambda)?;
        worst = worst.max((one - (1.0 - 2.0 * lambda).max(0.0)).abs());
        worst = worst.max((two - (1.0 - lambda)).abs());
    }
    below(worst, 1e-15)
}

fn diamond_estimate(cfg: &CheckConfig) -> Verdict {
    let mut rng = SplitMix64::new(cfg.seed ^ 8);
    let mut worst: f64 = 0.0;
    let mut ok = true;
    for k in 0..3 {
        let (lambda, p) = (rng.next_f64(), rng.next_f64());
        let d = diamond_distance_to_t(lambda, p, 200, 1e-6, cfg.seed.wrapping_add(k))?;
        ok &= d.estimate <= d.analytic + 1e-9;
        worst = worst.max(d.analytic - d.estimate);
    }
    Ok((worst, ok && worst <= 1e-3))
}

fn degradable_grid(cfg: &CheckConfig) -> Verdict {
    let mut worst: f64 = 0.0;
    for lambda in grid(6, 0.5) {
        for p in grid(5, 1.0) {
            let x = match cfg.mutation {
                Some(Mutation::FlagMixingWithoutDenominator) => 1.0 - 2.0 * lambda,
                None => flag_mixing(lambda)?,
            };
            let r = degrading_map_with_mixing(x, p)?;
            worst = worst.max(degradability_residual(lambda, p, &r)?);
        }
    }
    below(worst, 1e-10)
}

fn degradable_rejects_above_half(_: &CheckConfig) -> Verdict {
    let rejected = [0.51, 0.75, 1.0].iter().all(|&l| capacity::degrading_map(l, 0.3).is_err());
    Ok((0.0, rejected))
}

fn sequence_invariants(_: &CheckConfig) -> Verdict {
    let report = half_plus::sequence(5, half_plus::DEFAULT_CAP)?;
    capacity::sequence::check_sequence(&report.items, &half_plus::curves(), report.b)?;
    Ok((report.items[report.items.len() - 1].x, report.items.len() == 5))
}

fn sequence_endpoint_bounds(_: &CheckConfig) -> Verdict {
    let gap = (half_plus::lower(0.0) - half_plus::upper(0.0)).abs();
    below(gap, 1e-15)
}

fn wiretap_oracle(cfg: &CheckConfig) -> Verdict {
    let mut rng = SplitMix64::new(cfg.seed ^ 9);
    let mut worst: f64 = 0.0;
    for (lambda, p) in random_pairs(&mut rng, 20) {
        let m = secrecy_capacity_bruteforce(&build_wiretap(lambda, p)?, 101)?;
        worst = worst.max((m.value - one_way_secrecy_capacity(lambda, p)?).abs());
    }
    below(worst, 1e-4)
}

fn wiretap_argmax(cfg: &CheckConfig) -> Verdict {
    let mut rng = SplitMix64::new(cfg.seed ^ 10);
    let mut worst: f64 = 0.0;
    for (lambda, p) in random_pairs(&mut rng, 20) {
        let m = secrecy_capacity_bruteforce(&build_wiretap(lambda, p)?, 101)?;
        worst = worst.max((m.argmax - 0.5).abs());
    }
    below(worst, 1e-4)
}

fn wiretap_degraded(_: &CheckConfig) -> Verdict {
    let mut worst: f64 = 0.0;
    for lambda in grid(6, 0.5) {
        for p in grid(5, 1.0) {
            worst = worst.max(verify_degraded(&build_wiretap(lambda, p)?)?);
        }
    }
    below(worst, 1e-12)
}

fn wiretap_decomposition(_: &CheckConfig) -> Verdict {
    let mut worst: f64 = 0.0;
    for lambda in grid(5, 1.0) {
        for p in grid(5, 1.0) {
            let ch = build_wiretap(lambda, p)?;
            for q in grid(5, 1.0) {
                worst = worst.max(decomposition_residual(&ch, InputDistribution::new(q)?));
            }
        }
    }
    below(worst, 1e-12)
}

fn wiretap_two_way_dominates(_: &CheckConfig) -> Verdict {
    let mut worst = f64::NEG_INFINITY;
    for lambda in grid(11, 0.5) {
        for p in grid(11, 1.0) {
            worst = worst.max(one_way_secrecy_capacity(lambda, p)? - two_way_secrecy_capacity(lambda)?);
        }
    }
    Ok((worst, worst <= 0.0))
}

fn fig6_one_way_increasing(_: &CheckConfig) -> Verdict {
    let s = sweep_fig6(100)?;
    monotone(&s.iter().map(|pt| pt.one_way.unwrap_or(f64::NAN)).collect::<Vec<_>>(), true, 1e-9)
}

fn fig6_two_way_decreasing(_: &CheckConfig) -> Verdict {
    let s = sweep_fig6(100)?;
    monotone(&s.iter().map(|pt| pt.two_way).collect::<Vec<_>>(), false, 1e-9)
}

fn fig6_endpoint(_: &CheckConfig) -> Verdict {
    let s = sweep_fig6(100)?;
    let last = s[s.len() - 1];
    let target = 1.0 - 1.0 / (2.0 * 6f64.log2());
    let worst = (last.one_way.unwrap_or(f64::NAN) - target).abs().max((last.two_way - target).abs());
    below(worst, 1e-12)
}

fn two_way_protocol(cfg: &CheckConfig) -> Verdict {
    let mut worst_sigma: f64 = 0.0;
    let mut fidelity: f64 = 0.0;
    for k in 0..3 {
        let e = capacity::simulate_two_way_protocol(0.3, 0.2, 100_000, cfg.seed.wrapping_add(k))?;
        worst_sigma = worst_sigma.max((e.rate - 0.7).abs() / e.std_error);
        fidelity = fidelity.max(e.fidelity_error);
    }
    Ok((worst_sigma, worst_sigma <= 3.0 && fidelity <= 1e-10))
}

fn feedback_throughput(cfg: &CheckConfig) -> Verdict {
    let mut worst_sigma: f64 = 0.0;
    for k in 0..3 {
        let e = simulate_feedback_protocol(0.3, 0.2, 100_000, cfg.seed.wrapping_add(k))?;
        worst_sigma = worst_sigma.max((e.throughput - 0.7).abs() / e.std_error);
    }
    below(worst_sigma, 3.0)
}

fn feedback_leakage(cfg: &CheckConfig) -> Verdict {
    let e = simulate_feedback_protocol(0.3, 0.2, 100_000, cfg.seed)?;
    below(e.leakage, 1e-2)
}

macro_rules! check {
    ($group:literal, $name:literal, $f:ident) => {
        Check {
            group: $group,
            name: $name,
            run: $f,
        }
    };
}

/// Every check, in execution order.
pub fn registry() -> Vec<Check> {
    vec![
        check!("qmath", "eig_reconstruction", eig_reconstruction),
        check!("qmath", "eig_orthonormality", eig_orthonormality),
        check!("qmath", "trace_norm_values", trace_norm_values),
        check!("qmath", "binary_entropy_diagonal", binary_entropy_diagonal),
        check!("qmath", "partial_trace_product", partial_trace_product),
        check!("channels", "kraus_completeness", kraus_completeness),
        check!("channels", "isometry_marginals", isometry_marginals),
        check!("channels", "choi_marginals", choi_marginals),
        check!("channels", "output_entropy_blocks", output_entropy_blocks),
        check!("capacity", "one_way_oracle", one_way_oracle),
        check!("capacity", "argmax_maximally_mixed", argmax_maximally_mixed),
        check!("capacity", "choi_coherent_information", choi_coherent_information),
        check!("capacity", "conjugation_invariance", conjugation_invariance),
        check!("capacity", "bound_ordering", bound_ordering),
        check!("capacity", "one_way_below_two_way", one_way_below_two_way),
        check!("capacity", "fig3_endpoints", fig3_endpoints),
        check!("capacity", "fig3_one_way_increasing", fig3_one_way_increasing),
        check!("capacity", "fig3_two_way_decreasing", fig3_two_way_decreasing),
        check!("capacity", "fig4_endpoint", fig4_endpoint),
        check!("capacity", "derivative_agreement", derivative_agreement),
        check!("capacity", "complement_capacity", complement_capacity),
        check!("capacity", "erasure_reference", erasure_reference),
        check!("capacity", "diamond_estimate", diamond_estimate),
        check!("degradable", "degrading_map_grid", degradable_grid),
        check!("degradable", "rejects_above_half", degradable_rejects_above_half),
        check!("sequence", "sequence_invariants", sequence_invariants),
        check!("sequence", "sequence_endpoint_bounds", sequence_endpoint_bounds),
        check!("wiretap", "secrecy_oracle", wiretap_oracle),
        check!("wiretap", "secrecy_argmax", wiretap_argmax),
        check!("wiretap", "degraded_composition", wiretap_degraded),
        check!("wiretap", "branch_decomposition", wiretap_decomposition),
        check!("wiretap", "two_way_dominates", wiretap_two_way_dominates),
        check!("wiretap", "fig6_endpoint", fig6_endpoint),
        check!("wiretap", "fig6_one_way_increasing", fig6_one_way_increasing),
        check!("wiretap", "fig6_two_way_decreasing", fig6_two_way_decreasing),
        check!("protocols", "two_way_protocol", two_way_protocol),
        check!("protocols", "feedback_throughput", feedback_throughput),
        check!("protocols", "feedback_leakage", feedback_leakage),
    ]
}

/// Runs the checks whose group or name equals `only` (all when `None`).
pub fn run_checks(only: Option<&str>, cfg: &CheckConfig) -> Vec<CheckOutcome> {
    registry()
        .iter()
        .filter(|c| only.map_or(true, |f| c.group == f || c.name == f))
        .map(|c| c.run(cfg))
        .collect()
}
