//! `parrondo-walk`: runs quantum-walk game sequences and writes plot-ready CSV.
//!
//! Exit codes: 0 on success, 1 on runtime or I/O failure, 2 on usage errors.

mod format;

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use parrondo_walk::{
    evolve, expectation_position, expectation_series, parrondo_screen, sweep, Chirality, GameSequence,
    InitialStateSpec, PhaseGrid, PhasePair, SweepGrid, WalkError, WalkerState, Workers,
};

#[derive(Parser, Debug)]
#[command(name = "parrondo-walk", version, about = "Quantum walks with phase-biased coins played as periodic game sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evolve the walker and write the final amplitudes and probabilities per site.
    Evolve(EvolveArgs),
    /// Write <x>(t) for t = 1..=steps.
    Series(SeriesArgs),
    /// Write <x> after a fixed number of steps over an (alpha, beta) grid.
    Sweep(SweepArgs),
    /// Sweep every canonical sequence up to --max-len and report which ones go positive.
    Screen(ScreenArgs),
}

#[derive(Args, Debug)]
struct GameArgs {
    /// Game sequence over {A, B}, played periodically from its first letter.
    #[arg(long, default_value = "AB", value_parser = parse_sequence)]
    sequence: GameSequence,
    /// Phase of game A in radians.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    alpha: f64,
    /// Phase of game B in radians.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    beta: f64,
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Significant digits of floating-point output.
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..=17))]
    precision: u32,
}

#[derive(Args, Debug)]
struct GridArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    alpha_min: f64,
    #[arg(long, default_value_t = 0.2, allow_negative_numbers = true)]
    alpha_max: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    beta_min: f64,
    #[arg(long, default_value_t = 0.2, allow_negative_numbers = true)]
    beta_max: f64,
    #[arg(long, default_value_t = 81)]
    n_alpha: usize,
    #[arg(long, default_value_t = 81)]
    n_beta: usize,
    /// Worker threads; defaults to the available parallelism. 1 runs serially.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    threads: Option<u32>,
}

impl GridArgs {
    fn phase_grid(&self) -> PhaseGrid {
        PhaseGrid {
            alpha_min: self.alpha_min,
            alpha_max: self.alpha_max,
            beta_min: self.beta_min,
            beta_max: self.beta_max,
            n_alpha: self.n_alpha,
            n_beta: self.n_beta,
        }
    }

    fn workers(&self) -> Workers {
        let n = match self.threads {
            Some(n) => n as usize,
            None => std::thread::available_parallelism().map_or(1, |n| n.get()),
        };
        Workers::from_count(n)
    }
}

#[derive(Args, Debug)]
struct EvolveArgs {
    #[command(flatten)]
    game: GameArgs,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    steps: u64,
    /// Weight of |R> in a general initial state; the standard state is used when omitted.
    #[arg(long, requires = "mu")]
    eta: Option<f64>,
    /// Relative phase of |L> in a general initial state.
    #[arg(long, requires = "eta", allow_negative_numbers = true)]
    mu: Option<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct SeriesArgs {
    #[command(flatten)]
    game: GameArgs,
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    steps: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Game sequence over {A, B}.
    #[arg(long, default_value = "AB", value_parser = parse_sequence)]
    sequence: GameSequence,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    steps: u64,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct ScreenArgs {
    /// Longest period to enumerate (1 to 8).
    #[arg(long, default_value_t = 4)]
    max_len: usize,
    /// Target step count; each sequence runs for the largest whole number of periods within it.
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    steps: u64,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    output: OutputArgs,
}

fn parse_sequence(s: &str) -> Result<GameSequence, String> {
    s.parse().map_err(|e: WalkError| e.to_string())
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(io::Error),
}

impl From<WalkError> for CliError {
    fn from(e: WalkError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

fn warn_phases(alpha: f64, beta: f64) {
    if !PhasePair::new(alpha, beta).in_canonical_range() {
        eprintln!("warning: phases ({alpha}, {beta}) lie outside [-pi/2, pi/2]; the sign of the bias may flip");
    }
}

fn emit(out: &Option<PathBuf>, body: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, body)?,
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(body.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn run_evolve(args: &EvolveArgs) -> Result<(), CliError> {
    let g = &args.game;
    warn_phases(g.alpha, g.beta);
    let start = match (args.eta, args.mu) {
        (Some(eta), Some(mu)) => WalkerState::general(InitialStateSpec::new(eta, mu)?)?,
        _ => WalkerState::standard(),
    };
    let state = evolve(&start, &g.sequence, PhasePair::new(g.alpha, g.beta), args.steps as usize)?;
    let p = args.output.precision as usize;
    let mut body = String::from("x,re_l,im_l,re_r,im_r,prob\n");
    let t = state.time() as i64;
    for x in (-t..=t).step_by(2) {
        let (l, r) = (state.amplitude(x, Chirality::L), state.amplitude(x, Chirality::R));
        let prob = l.norm_sqr() + r.norm_sqr();
        let fmt = |v: f64| format::sig(v, p);
        writeln!(body, "{x},{},{},{},{},{}", fmt(l.re), fmt(l.im), fmt(r.re), fmt(r.im), fmt(prob)).unwrap();
    }
    emit(&args.output.out, &body)?;
    if args.output.out.is_some() {
        println!("t = {}, <x> = {}", state.time(), format::sig(expectation_position(&state), p));
    }
    Ok(())
}

fn run_series(args: &SeriesArgs) -> Result<(), CliError> {
    let g = &args.game;
    warn_phases(g.alpha, g.beta);
    let series = expectation_series(&g.sequence, PhasePair::new(g.alpha, g.beta), args.steps as usize)?;
    let p = args.output.precision as usize;
    let mut body = String::with_capacity(24 * (series.len() + 1));
    body.push_str("t,exp_x\n");
    for (t, x) in series {
        writeln!(body, "{t},{}", format::sig(x, p)).unwrap();
    }
    emit(&args.output.out, &body)
}

fn run_sweep(args: &SweepArgs) -> Result<(), CliError> {
    let phases = args.grid.phase_grid();
    phases.validate()?;
    warn_phases(phases.alpha_min, phases.beta_min);
    warn_phases(phases.alpha_max, phases.beta_max);
    let grid = SweepGrid::new(phases, args.sequence.clone(), args.steps as usize)?;
    let result = sweep(&grid, args.grid.workers())?;
    let p = args.output.precision as usize;
    let mut body = String::with_capacity(40 * (phases.cell_count() + 1));
    body.push_str("alpha,beta,exp_x\n");
    for c in result.cells() {
        writeln!(body, "{},{},{}", format::sig(c.alpha, p), format::sig(c.beta, p), format::sig(c.exp_x, p)).unwrap();
    }
    emit(&args.output.out, &body)
}

fn run_screen(args: &ScreenArgs) -> Result<(), CliError> {
    let phases = args.grid.phase_grid();
    phases.validate()?;
    let entries = parrondo_screen(args.max_len, phases, args.steps as usize, args.grid.workers())?;
    let p = args.output.precision as usize;
    let mut body = String::from("sequence,steps,max_exp_x,has_positive\n");
    for e in &entries {
        writeln!(body, "{},{},{},{}", e.sequence, e.steps, format::sig(e.max_exp_x, p), e.has_positive).unwrap();
    }
    emit(&args.output.out, &body)?;
    let positive: Vec<String> = entries.iter().filter(|e| e.has_positive).map(|e| e.sequence.to_string()).collect();
    let summary = format!(
        "positive sequences: {}",
        if positive.is_empty() { "none".to_string() } else { positive.join(" ") }
    );
    // Keep stdout pure CSV when the table itself goes there.
    if args.output.out.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Evolve(a) => run_evolve(a),
        Command::Series(a) => run_series(a),
        Command::Sweep(a) => run_sweep(a),
        Command::Screen(a) => run_screen(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
