use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use kinemalab_cli::config::{Experiment, ExperimentConfig};
use kinemalab_cli::corpus::{write_corpus, CorpusSpec, Kind};
use kinemalab_cli::{run, write_outputs, CliError};

#[derive(Parser)]
#[command(name = "kinemalab", version, about = "Integral-geometry experiments on polytopes and piecewise-linear functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Monte-Carlo check of the kinematic formula.
    Pkf(RunArgs),
    /// Exact decomposition of the curvature measures of A ∩ γB.
    Decomposition(RunArgs),
    /// Steiner formula against Monte-Carlo parallel volumes.
    Steiner(RunArgs),
    /// Covering curves and Minkowski content of structured sets.
    Content(RunArgs),
    /// Weak-regularity certificate of a DC function.
    Weakreg(RunArgs),
    /// Kinematic constants by the template method.
    Constants(RunArgs),
    /// Write a corpus of generated bodies.
    Corpus(CorpusArgs),
}

#[derive(Args)]
struct RunArgs {
    /// JSON experiment configuration; without it the defaults are used.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Master seed; overrides the configuration, required without one.
    #[arg(long)]
    seed: Option<u64>,
    /// Monte-Carlo sample count.
    #[arg(long)]
    samples: Option<usize>,
    /// Output directory for report.json and the CSV table.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Refuse to run unless the configuration hash matches.
    #[arg(long)]
    expect_hash: Option<String>,
}

#[derive(Args)]
struct CorpusArgs {
    /// random-hull, box, simplex or union-ring.
    #[arg(long, default_value = "random-hull")]
    kind: String,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    /// Points per random hull.
    #[arg(long, default_value_t = 8)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("KINEMALAB_THREADS") else { return Ok(()) };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| CliError::Config(format!("KINEMALAB_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| CliError::Config(e.to_string()))
}

fn load(experiment: Experiment, args: &RunArgs) -> Result<(ExperimentConfig, PathBuf), CliError> {
    let (mut c, base) = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
            let c = ExperimentConfig::parse(&text)?;
            if c.experiment != experiment {
                return Err(CliError::Config(format!("configuration is for {}, not {experiment}", c.experiment)));
            }
            (c, path.parent().map(Path::to_path_buf).unwrap_or_default())
        }
        None => {
            let seed = args.seed.ok_or_else(|| CliError::Config("--seed is required without --config".into()))?;
            (ExperimentConfig::inline(experiment, seed), PathBuf::from("."))
        }
    };
    if let Some(s) = args.seed {
        c.seed = s;
    }
    if args.samples.is_some() {
        c.samples = args.samples;
    }
    if args.out.is_some() {
        c.out = args.out.clone();
    }
    c.validate()?;
    if let Some(h) = &args.expect_hash {
        let actual = c.hash();
        if !actual.eq_ignore_ascii_case(h) {
            return Err(CliError::Config(format!("configuration hash {actual} does not match {h}")));
        }
    }
    Ok((c, base))
}

fn run_experiment(experiment: Experiment, args: &RunArgs) -> Result<ExitCode, CliError> {
    let (c, base) = load(experiment, args)?;
    let (report, err) = match run(&c, &base) {
        Ok(r) => (r, None),
        Err((e, r)) => (r, Some(e)),
    };
    match &c.out {
        Some(dir) => write_outputs(&report, dir)?,
        None => println!("{}", report.to_json()),
    }
    eprint!("{}", report.summary());
    if let Some(e) = err {
        return Err(e);
    }
    Ok(if report.pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn dispatch(cli: Cli) -> Result<ExitCode, CliError> {
    configure_threads()?;
    let (experiment, args) = match cli.command {
        Command::Pkf(a) => (Experiment::Pkf, a),
        Command::Decomposition(a) => (Experiment::Decomposition, a),
        Command::Steiner(a) => (Experiment::Steiner, a),
        Command::Content(a) => (Experiment::Content, a),
        Command::Weakreg(a) => (Experiment::Weakreg, a),
        Command::Constants(a) => (Experiment::Constants, a),
        Command::Corpus(a) => {
            let spec = CorpusSpec { kind: Kind::parse(&a.kind)?, dim: a.dim, n: a.n, count: a.count, seed: a.seed };
            let entries = write_corpus(&spec, &a.out)?;
            eprintln!("wrote {} bodies to {}", entries.len(), a.out.display());
            return Ok(ExitCode::SUCCESS);
        }
    };
    run_experiment(experiment, &args)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("kinemalab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
