use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use polylog_core::realization::Precision;
use polylog_verify::apply::{self, Morphism, Source};
use polylog_verify::{audit, catalog, run_all, run_selected, Settings, VerifyError};

/// Runs named, seeded checks of the polylogarithm engine.
#[derive(Parser, Debug)]
#[command(name = "verify", version, args_conflicts_with_subcommands = true)]
struct Cli {
    /// `all`, or one or more check ids (see `verify list`).
    targets: Vec<String>,
    #[command(flatten)]
    run: RunArgs,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Global seed [default: 1].
    #[arg(long)]
    seed: Option<u64>,
    /// Trials per check, overriding the catalog defaults.
    #[arg(long)]
    trials: Option<usize>,
    /// Working precision in decimal digits [default: 50].
    #[arg(long)]
    precision: Option<u32>,
    /// Residual tolerance of numeric tiers [default: 1e-10].
    #[arg(long)]
    tol: Option<f64>,
    /// Number of field variables [default: 2].
    #[arg(long)]
    vars: Option<usize>,
    /// Bound on constant parts of sampled coordinates [default: 20].
    #[arg(long = "coeff-bound")]
    coeff_bound: Option<i64>,
    /// Write the JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Key-value configuration file; flags given on the command line win.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Worker threads [default: all cores].
    #[arg(long)]
    jobs: Option<usize>,
    /// Leave wall-clock times out of the report.
    #[arg(long)]
    no_timings: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the check catalog.
    List,
    /// List covered statements lacking a registered check.
    Audit,
    /// Evaluate a morphism on a configuration such as "[[0,1],[1,0],[1,1],[a,1]]".
    Apply {
        #[arg(value_enum)]
        morphism: Morphism,
        configuration: String,
        /// Weight for tau0_n.
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Apply to the configuration, or to its boundary under d or d′.
        #[arg(long, value_enum, default_value_t = Source::Itself)]
        source: Source,
        /// Print the image under the target's differential.
        #[arg(long)]
        differential: bool,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Print a relator and its boundary image.
    Relator {
        kind: String,
        params: Vec<String>,
        #[command(flatten)]
        field: FieldArgs,
    },
}

#[derive(Args, Debug)]
struct FieldArgs {
    /// Variable names, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "t1,t2")]
    names: Vec<String>,
    /// Images of the variables under D, separated by `;`.
    #[arg(long, value_delimiter = ';', required = true)]
    derivation: Vec<String>,
}

fn settings(args: &RunArgs) -> Result<Settings, VerifyError> {
    let mut s = Settings::default();
    if let Some(path) = &args.config {
        s.apply_config(&std::fs::read_to_string(path)?)?;
    }
    if let Some(v) = args.seed {
        s.seed = v;
    }
    if let Some(v) = args.trials {
        s.trials = Some(v);
    }
    if let Some(v) = args.precision {
        s.precision = Precision(v);
    }
    if let Some(v) = args.tol {
        s.tolerance = v;
    }
    if let Some(v) = args.vars {
        s.nvars = v;
    }
    if let Some(v) = args.coeff_bound {
        s.coeff_bound = v;
    }
    Ok(s)
}

/// Exit codes: 0 all passed, 1 some check did not pass, 2 usage or input error.
fn run(cli: Cli, out: &mut impl Write) -> Result<u8, VerifyError> {
    match cli.command {
        Some(Command::List) => {
            for c in catalog::CATALOG {
                writeln!(out, "{:<28} {:>4}  {:<7} {}", c.id, c.default_trials, format!("{:?}", c.tier).to_lowercase(), c.anchor)?;
            }
            return Ok(0);
        }
        Some(Command::Audit) => {
            let missing = audit();
            for s in &missing {
                writeln!(out, "uncovered: {s}")?;
            }
            writeln!(out, "{} statements, {} uncovered", catalog::STATEMENTS.len(), missing.len())?;
            return Ok(if missing.is_empty() { 0 } else { 1 });
        }
        Some(Command::Apply { morphism, configuration, n, source, differential, field }) => {
            let ctx = apply::context(&field.names, &field.derivation)?;
            write!(out, "{}", apply::apply(&ctx, morphism, n, &configuration, source, differential)?)?;
            return Ok(0);
        }
        Some(Command::Relator { kind, params, field }) => {
            let ctx = apply::context(&field.names, &field.derivation)?;
            write!(out, "{}", apply::relator_text(&ctx, &kind, &params)?)?;
            return Ok(0);
        }
        None => {}
    }
    if cli.targets.is_empty() {
        eprintln!("nothing to run; pass `all`, check ids, or a subcommand (see --help)");
        return Ok(2);
    }
    let s = settings(&cli.run)?;
    if let Some(jobs) = cli.run.jobs {
        // Fails only if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    let report = if cli.targets.iter().any(|t| t == "all") {
        run_all(&s)
    } else {
        let ids: Vec<&str> = cli.targets.iter().map(String::as_str).collect();
        run_selected(&ids, &s)?
    };
    let report = if cli.run.no_timings { report.without_timings() } else { report };
    writeln!(out, "{report}")?;
    if let Some(path) = &cli.run.json {
        std::fs::write(path, report.to_json()? + "\n")?;
    }
    Ok(if report.all_passed() { 0 } else { 1 })
}

fn main() -> ExitCode {
    match run(Cli::parse(), &mut std::io::stdout().lock()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
