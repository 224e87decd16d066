//! Command-line front end: schedule, lower, verify, measure and sweep.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qsched::analyzer::{self, DEFAULT_THETA};
use qsched::decompose::lower_circuit;
use qsched::schedulers::{
    restore_output_order, schedule_grover, schedule_jw, schedule_qft, AlgorithmKind, GroverSpec,
    ParitySpec, ScheduleResult,
};
use qsched::serialize::{schedule_from_json, schedule_to_json};
use qsched::simulator::check_equivalence;
use qsched::topology::TopologyKind;

#[derive(Parser)]
#[command(
    name = "qsched",
    version,
    about = "Connectivity-aware quantum circuit scheduling"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgArg {
    Qft,
    Jw,
    Grover,
}

impl From<AlgArg> for AlgorithmKind {
    fn from(a: AlgArg) -> AlgorithmKind {
        match a {
            AlgArg::Qft => AlgorithmKind::Qft,
            AlgArg::Jw => AlgorithmKind::JordanWigner,
            AlgArg::Grover => AlgorithmKind::GroverDiffusion,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TopoArg {
    Linear,
    Ladder,
    Grid,
    All,
}

impl From<TopoArg> for TopologyKind {
    fn from(t: TopoArg) -> TopologyKind {
        match t {
            TopoArg::Linear => TopologyKind::Linear,
            TopoArg::Ladder => TopologyKind::Ladder,
            TopoArg::Grid => TopologyKind::Grid,
            TopoArg::All => TopologyKind::AllToAll,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Emit a schedule as JSON.
    Schedule(ScheduleArgs),
    /// Lower a schedule to the native gate set {H, rotations/phases, CNOT}.
    Lower(LowerArgs),
    /// Verify a schedule against its brute-force oracle.
    Verify(VerifyArgs),
    /// Report depths of a schedule file.
    Depth(DepthArgs),
    /// Write the predicted/measured depth sweep as CSV.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct ScheduleArgs {
    #[arg(long, value_enum)]
    alg: AlgArg,
    #[arg(long, value_enum)]
    topo: TopoArg,
    #[arg(long)]
    n: u32,
    /// Rotation angle for --alg jw (radians; default π/4).
    #[arg(long)]
    theta: Option<f64>,
    /// Comma-separated 1-based logical indices forming the parity subset.
    #[arg(long, value_delimiter = ',')]
    subset: Option<Vec<u32>>,
    /// Append SWAPs restoring the QFT output to natural qubit order.
    #[arg(long)]
    restore_order: bool,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct LowerArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Fuse adjacent CP+SWAP pairs (default: on for QFT schedules only).
    #[arg(long, overrides_with = "no_fuse")]
    fuse: bool,
    #[arg(long, overrides_with = "fuse")]
    no_fuse: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Args)]
struct DepthArgs {
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(Args)]
struct SweepArgs {
    /// Algorithms to sweep (default: all three).
    #[arg(long, value_enum, value_delimiter = ',')]
    alg: Option<Vec<AlgArg>>,
    /// Topologies to sweep (default: all four).
    #[arg(long, value_enum, value_delimiter = ',')]
    topo: Option<Vec<TopoArg>>,
    #[arg(long, default_value_t = 16)]
    n_max: u32,
    #[arg(long)]
    csv: PathBuf,
    /// Also schedule and lower each row to measure realized depth.
    #[arg(long)]
    measure: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Schedule(args) => cmd_schedule(args),
        Command::Lower(args) => cmd_lower(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Depth(args) => cmd_depth(args),
        Command::Sweep(args) => cmd_sweep(args),
    }
}

fn build_schedule(args: &ScheduleArgs) -> Result<ScheduleResult, String> {
    let alg: AlgorithmKind = args.alg.into();
    let topo: TopologyKind = args.topo.into();
    if alg != AlgorithmKind::JordanWigner {
        if args.theta.is_some() {
            return Err(format!(
                "--theta applies only to --alg jw, not {}",
                alg.name()
            ));
        }
        if args.subset.is_some() {
            return Err(format!(
                "--subset applies only to --alg jw, not {}",
                alg.name()
            ));
        }
    }
    if args.restore_order && alg != AlgorithmKind::Qft {
        return Err("--restore-order applies only to --alg qft".into());
    }
    let mut result = match alg {
        AlgorithmKind::Qft => schedule_qft(topo, args.n),
        AlgorithmKind::JordanWigner => {
            let theta = args.theta.unwrap_or(DEFAULT_THETA);
            let spec = match &args.subset {
                Some(subset) => ParitySpec::new(args.n, theta, subset.clone()),
                None => ParitySpec::full(args.n, theta),
            }
            .map_err(|e| e.to_string())?;
            schedule_jw(topo, &spec)
        }
        AlgorithmKind::GroverDiffusion => {
            let spec = GroverSpec::new(args.n).map_err(|e| e.to_string())?;
            schedule_grover(topo, &spec)
        }
    }
    .map_err(|e| e.to_string())?;
    if args.restore_order {
        restore_output_order(&mut result).map_err(|e| e.to_string())?;
    }
    Ok(result)
}

fn cmd_schedule(args: ScheduleArgs) -> Result<ExitCode, String> {
    let result = build_schedule(&args)?;
    std::fs::write(&args.out, schedule_to_json(&result))
        .map_err(|e| format!("writing {}: {e}", args.out.display()))?;
    println!(
        "{} on {} n={}: {} qubits, depth {} ({} gates) -> {}",
        result.algorithm.name(),
        result.topology.kind().name(),
        result.params.n,
        result.active_qubits(),
        result.circuit.depth(),
        result.circuit.gate_count(),
        args.out.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn read_schedule(path: &PathBuf) -> Result<ScheduleResult, String> {
    let text =
        std::fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))?;
    schedule_from_json(&text).map_err(|e| e.to_string())
}

fn cmd_lower(args: LowerArgs) -> Result<ExitCode, String> {
    let mut schedule = read_schedule(&args.input)?;
    let fuse = if args.fuse {
        true
    } else if args.no_fuse {
        false
    } else {
        schedule.algorithm == AlgorithmKind::Qft
    };
    schedule.circuit = lower_circuit(&schedule.circuit, fuse);
    std::fs::write(&args.out, schedule_to_json(&schedule))
        .map_err(|e| format!("writing {}: {e}", args.out.display()))?;
    println!(
        "lowered (fuse={fuse}): depth {} ({} gates) -> {}",
        schedule.circuit.depth(),
        schedule.circuit.gate_count(),
        args.out.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, String> {
    let schedule = read_schedule(&args.input)?;
    let (oracle, setup) = schedule
        .verification_oracle(args.tol)
        .map_err(|e| e.to_string())?;
    let report =
        check_equivalence(&schedule.circuit, &oracle, &setup).map_err(|e| e.to_string())?;
    println!(
        "{} on {} n={}: max error {:.3e} (tol {:.1e}), output permutation {:?}",
        schedule.algorithm.name(),
        schedule.topology.kind().name(),
        schedule.params.n,
        report.max_error,
        report.tolerance,
        report.permutation
    );
    if report.passed {
        println!("PASS");
        Ok(ExitCode::SUCCESS)
    } else {
        match &report.failure {
            Some(qsched::simulator::FailureClass::AncillaNotRestored { input, output }) => {
                println!("FAIL: ancilla not restored (input {input:#x} -> output {output:#x})");
            }
            _ => println!("FAIL: unitary mismatch"),
        }
        Ok(ExitCode::from(1))
    }
}

fn cmd_depth(args: DepthArgs) -> Result<ExitCode, String> {
    let schedule = read_schedule(&args.input)?;
    let fuse = schedule.algorithm == AlgorithmKind::Qft;
    let lowered = lower_circuit(&schedule.circuit, fuse);
    let predicted = analyzer::predicted_depth(
        schedule.algorithm,
        schedule.topology.kind(),
        schedule.params.n,
    );
    println!(
        "depth {} as scheduled, {} lowered (fuse={fuse})",
        schedule.circuit.depth(),
        lowered.depth()
    );
    match predicted {
        Some(p) => println!("predicted {} (closed form at n={})", p.depth, p.padded_n),
        None => println!("predicted - (no closed form for this combination)"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_sweep(args: SweepArgs) -> Result<ExitCode, String> {
    let algs: Vec<AlgorithmKind> = args
        .alg
        .unwrap_or_else(|| vec![AlgArg::Qft, AlgArg::Jw, AlgArg::Grover])
        .into_iter()
        .map(Into::into)
        .collect();
    let topos: Vec<TopologyKind> = args
        .topo
        .unwrap_or_else(|| {
            vec![
                TopoArg::Linear,
                TopoArg::Ladder,
                TopoArg::Grid,
                TopoArg::All,
            ]
        })
        .into_iter()
        .map(Into::into)
        .collect();
    let rows =
        analyzer::sweep(&algs, &topos, args.n_max, args.measure).map_err(|e| e.to_string())?;
    std::fs::write(&args.csv, analyzer::render_csv(&rows))
        .map_err(|e| format!("writing {}: {e}", args.csv.display()))?;
    println!("{} rows -> {}", rows.len(), args.csv.display());
    Ok(ExitCode::SUCCESS)
}
