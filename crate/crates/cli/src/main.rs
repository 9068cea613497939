//! `chancap`: verification suite, figure sweeps, discrete-family sequences
//! and Monte Carlo runs for the glued dephasing channel family.

mod config;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use chancap::capacity::sequence::half_plus;
use chancap::capacity::{self, CapacityCurvePoint};
use chancap::checks::{self, CheckConfig, Mutation};
use chancap::export::{self, Meta, SimulationRow, Table};
use chancap::wiretap;
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "chancap", version, about = "Capacities of glued dephasing channels")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Plain-text `key = value` file mirroring the long flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    #[arg(long, global = true, env = "CHANCAP_SEED", default_value_t = 7)]
    seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Scenario {
    Fig3,
    Fig4,
    Fig6,
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MutationArg {
    FlagMixing,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the invariant checks and print one PASS/FAIL line per check.
    Verify {
        /// Run only the checks of this group or with this name.
        #[arg(long)]
        only: Option<String>,
        #[arg(long, value_enum, hide = true)]
        mutate: Option<MutationArg>,
    },
    /// Tabulate capacities and bounds along a parameter curve.
    Sweep {
        #[arg(long, value_enum, default_value_t = Scenario::Fig3)]
        scenario: Scenario,
        #[arg(long, default_value_t = 100)]
        points: usize,
        #[arg(long)]
        lambda_min: Option<f64>,
        #[arg(long)]
        lambda_max: Option<f64>,
        #[arg(long)]
        p_min: Option<f64>,
        #[arg(long)]
        p_max: Option<f64>,
        /// Fixed `p` for a custom sweep over `λ`.
        #[arg(long)]
        p: Option<f64>,
        /// Fixed `λ` for a custom sweep over `p`.
        #[arg(long)]
        lambda: Option<f64>,
        /// Also write a gnuplot script next to the output file.
        #[arg(long)]
        emit_plot_script: bool,
    },
    /// Build the discrete family for `λ(p) = 1/2 + p`.
    Seq {
        #[arg(long, default_value_t = 5)]
        terms: usize,
        /// Upper cap on the right end of the interval.
        #[arg(long, default_value_t = half_plus::DEFAULT_CAP)]
        cap: f64,
    },
    /// Monte Carlo runs of the two-way and wiretap feedback protocols.
    Simulate {
        #[arg(long, default_value_t = 0.3)]
        lambda: f64,
        #[arg(long, default_value_t = 0.2)]
        p: f64,
        #[arg(long, default_value_t = 100_000)]
        uses: u64,
    },
}

enum Failure {
    Verification,
    Domain(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification => 1,
            Failure::Domain(_) => 2,
            Failure::Io(_) => 3,
        }
    }
}

impl From<chancap::Error> for Failure {
    fn from(e: chancap::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

fn io_failure(path: &Path, e: io::Error) -> Failure {
    Failure::Io(format!("{}: {e}", path.display()))
}

fn main() -> ExitCode {
    let args = match config::merged_args(std::env::args_os().collect()) {
        Ok(a) => a,
        Err(f) => return report(f),
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => report(f),
    }
}

fn report(f: Failure) -> ExitCode {
    match &f {
        Failure::Verification => {}
        Failure::Domain(m) => eprintln!("error: {m}"),
        Failure::Io(m) => eprintln!("I/O error: {m}"),
    }
    ExitCode::from(f.code())
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Verify { only, mutate } => verify(cli, only.as_deref(), *mutate),
        Command::Sweep {
            scenario,
            points,
            lambda_min,
            lambda_max,
            p_min,
            p_max,
            p,
            lambda,
            emit_plot_script,
        } => {
            let range = Ranges {
                lambda_min: *lambda_min,
                lambda_max: *lambda_max,
                p_min: *p_min,
                p_max: *p_max,
                p: *p,
                lambda: *lambda,
            };
            sweep(cli, *scenario, *points, &range, *emit_plot_script)
        }
        Command::Seq { terms, cap } => seq(cli, *terms, *cap),
        Command::Simulate { lambda, p, uses } => simulate(cli, *lambda, *p, *uses),
    }
}

fn verify(cli: &Cli, only: Option<&str>, mutate: Option<MutationArg>) -> Result<(), Failure> {
    let cfg = CheckConfig {
        seed: cli.seed,
        mutation: mutate.map(|MutationArg::FlagMixing| Mutation::FlagMixingWithoutDenominator),
    };
    let outcomes = checks::run_checks(only, &cfg);
    if outcomes.is_empty() {
        return Err(Failure::Domain(format!(
            "no check or group named {:?}",
            only.unwrap_or_default()
        )));
    }
    let mut text = String::new();
    for o in &outcomes {
        text.push_str(&o.line());
        text.push('\n');
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    text.push_str(&format!("{} checks, {failed} failed\n", outcomes.len()));
    emit(cli.out.as_deref(), &text)?;
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

struct Ranges {
    lambda_min: Option<f64>,
    lambda_max: Option<f64>,
    p_min: Option<f64>,
    p_max: Option<f64>,
    p: Option<f64>,
    lambda: Option<f64>,
}

fn sweep(cli: &Cli, scenario: Scenario, points: usize, r: &Ranges, plot: bool) -> Result<(), Failure> {
    let mut meta = Meta::new();
    let (rows, wiretap): (Vec<CapacityCurvePoint>, bool) = match scenario {
        Scenario::Fig3 => {
            meta.push("scenario", "fig3")
                .push("parametrization", "p(lambda) = 4 lambda - 1, lambda in [0.25, 0.3125]");
            (capacity::sweep_fig3(points)?, false)
        }
        Scenario::Fig4 => {
            meta.push("scenario", "fig4")
                .push("parametrization", "lambda(p) = p / log2(1/p), p in [0.35, 0.5]")
                .push(
                    "log_base_note",
                    "p/log p is read as p/log2(1/p) since the literal form is negative on (0,1); \
                     under this reading the one-way curve is not monotone on the range, \
                     only the p = 1/2 endpoint equality holds",
                );
            (capacity::sweep_fig4(points)?, false)
        }
        Scenario::Fig6 => {
            meta.push("scenario", "fig6")
                .push("parametrization", "lambda(p) = p / (2 log2(6/p)), p in [0.8687, 1]")
                .push("one_way_crossover_p", export::format_float(wiretap::fig6_crossover()));
            (wiretap::sweep_fig6(points)?, true)
        }
        Scenario::Custom => {
            meta.push("scenario", "custom");
            let rows = match (r.p, r.lambda) {
                (Some(p), None) => {
                    let (lo, hi) = (r.lambda_min.unwrap_or(0.0), r.lambda_max.unwrap_or(1.0));
                    meta.push("parametrization", format!("lambda in [{lo}, {hi}], p = {p}"));
                    capacity::sweep_lambda(lo, hi, p, points)?
                }
                (None, Some(lambda)) => {
                    let (lo, hi) = (r.p_min.unwrap_or(0.0), r.p_max.unwrap_or(1.0));
                    meta.push("parametrization", format!("p in [{lo}, {hi}], lambda = {lambda}"));
                    capacity::sweep_p(lo, hi, lambda, points)?
                }
                _ => {
                    return Err(Failure::Domain(
                        "custom sweeps need exactly one of --p (sweep lambda) or --lambda (sweep p)".into(),
                    ))
                }
            };
            (rows, false)
        }
    };
    if !wiretap {
        meta.push(
            "one_way_policy",
            "exact for lambda <= 1/2; empty above, where only lower_bound and upper_bound are certified",
        );
    }
    let table = export::sweep_table(&rows, wiretap);
    write_table(cli, &table, &meta)?;
    if plot {
        let out = cli.out.as_deref().ok_or_else(|| {
            Failure::Domain("--emit-plot-script needs --out so the script can reference the data file".into())
        })?;
        let script_path = out.with_extension("gp");
        let data_name = out.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        fs::write(&script_path, export::gnuplot_script(&data_name, &table))
            .map_err(|e| io_failure(&script_path, e))?;
    }
    Ok(())
}

fn seq(cli: &Cli, terms: usize, cap: f64) -> Result<(), Failure> {
    if terms == 0 {
        return Err(Failure::Domain("--terms must be at least 1".into()));
    }
    let report = half_plus::sequence(terms, cap)?;
    let mut meta = Meta::new();
    meta.push("family", "lambda(p) = 1/2 + p")
        .push("a", "0")
        .push("b_star", export::format_float(report.b_star))
        .push("quoted_endpoint", export::format_float(report.quoted_endpoint))
        .push("b", export::format_float(report.b))
        .push(
            "q_two_way_note",
            "1/2 - x_n rounded to double; ordering is checked on the unrounded value",
        );
    write_table(cli, &export::sequence_table(&report.items), &meta)
}

fn simulate(cli: &Cli, lambda: f64, p: f64, uses: u64) -> Result<(), Failure> {
    let seed = cli.seed;
    let q = capacity::simulate_two_way_protocol(lambda, p, uses, seed)?;
    let w = wiretap::simulate_feedback_protocol(lambda, p, uses, seed)?;
    let row = |kind, estimate, std_error, target| SimulationRow {
        kind,
        lambda,
        p,
        uses,
        seed,
        estimate,
        std_error,
        target,
    };
    let rows = vec![
        row("quantum_two_way", q.rate, q.std_error, 1.0 - lambda),
        row("wiretap_feedback", w.throughput, w.std_error, 1.0 - lambda),
        row("wiretap_leakage", w.leakage, 0.0, 0.0),
    ];
    let mut meta = Meta::new();
    meta.push("rng", "splitmix64")
        .push("quantum_fidelity_error", export::format_float(q.fidelity_error))
        .push("wiretap_leakage_units", "bits, plug-in estimate over accepted rounds");
    write_table(cli, &export::simulation_table(&rows), &meta)
}

fn write_table(cli: &Cli, table: &Table, meta: &Meta) -> Result<(), Failure> {
    let text = match cli.format {
        Format::Csv => table.to_csv(meta),
        Format::Json => table.to_json(meta),
    };
    emit(cli.out.as_deref(), &text)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| io_failure(path, e)),
        None => io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(format!("stdout: {e}"))),
    }
}
