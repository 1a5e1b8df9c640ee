//! Command-line front end: compute capacities, emit schedules, verify
//! pipelines, generate instances, run self-checks.
//!
//! Exit codes: 0 success, 2 input error, 3 solver failure, 4 verification
//! failure, 5 self-test mismatch.

mod selftest;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use sha2::{Digest, Sha256};

use hd121::capacity::{solve_p1_with, SolveOptions};
use hd121::netmodel::{generate_random_network, Network};
use hd121::scheduler::{schedule_from_solution, verify_schedule, Schedule};
use hd121::Error as LibError;

const EXIT_INPUT: u8 = 2;
const EXIT_SOLVER: u8 = 3;
const EXIT_VERIFY: u8 = 4;
const EXIT_SELFTEST: u8 = 5;

#[derive(Parser)]
#[command(
    name = "hd121",
    version,
    about = "Approximate capacity and optimal schedules for half-duplex 1-2-1 relay networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Feasibility tolerance for all constraint comparisons.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,

    /// Cap on constraint-generation iterations (default scales with N^4).
    #[arg(long, global = true)]
    max_iterations: Option<usize>,

    /// Emit a machine-readable JSON report on stdout.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the approximate capacity of a network file.
    Capacity {
        /// Network JSON file.
        path: PathBuf,
    },
    /// Compute an optimal link/state schedule for a network file.
    Schedule {
        /// Network JSON file.
        path: PathBuf,
        /// Re-check the schedule's min-cut rate against the capacity.
        #[arg(long)]
        verify: bool,
    },
    /// Run the brute-force cross-oracle batteries.
    Selftest {
        /// Largest relay count used by the batteries.
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Trials per battery.
        #[arg(long, default_value_t = 40)]
        trials: usize,
        /// Base seed for all batteries.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Flip one verdict to exercise the mismatch path (harness sanity).
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Generate a random network file.
    Gen {
        /// Number of relays.
        #[arg(long)]
        n: usize,
        /// Probability of each permitted directed link.
        #[arg(long)]
        density: f64,
        /// RNG seed.
        #[arg(long)]
        seed: u64,
        /// Output path.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Serialize)]
struct RunReport {
    command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    input_digest: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    capacity: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    schedule_states: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    total_activation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    iterations: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cut_count: Option<usize>,
    wall_ms: f64,
    tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_iterations: Option<usize>,
}

impl RunReport {
    fn new(command: &str, tolerance: f64, max_iterations: Option<usize>) -> Self {
        RunReport {
            command: command.to_string(),
            input_digest: None,
            capacity: None,
            schedule_states: None,
            total_activation: None,
            iterations: None,
            cut_count: None,
            wall_ms: 0.0,
            tolerance,
            max_iterations,
        }
    }
}

fn exit_code_for(err: &LibError) -> u8 {
    if err.is_input_error() {
        EXIT_INPUT
    } else {
        EXIT_SOLVER
    }
}

fn read_network(path: &Path) -> Result<(Network, String), u8> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        EXIT_INPUT
    })?;
    let net = Network::parse(&text).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        EXIT_INPUT
    })?;
    let digest = format!("{:x}", Sha256::digest(text.as_bytes()));
    Ok((net, digest))
}

fn print_connection_table(net: &Network, sol: &hd121::capacity::CapacitySolution) {
    println!("connection activations:");
    let support = net.support();
    for (e, &(i, j)) in support.edges().iter().enumerate() {
        let v = sol.point.connection_activations[e];
        if v > 1e-12 {
            println!("  {i} -- {j}   {v:.6}");
        }
    }
}

fn print_schedule(sched: &Schedule) {
    println!("schedule ({} states):", sched.states.len());
    let mut entries: Vec<(&hd121::scheduler::StateMatrix, f64)> =
        sched.states.iter().map(|(s, phi)| (s, *phi)).collect();
    entries.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then_with(|| a.0.links().cmp(b.0.links())));
    for (state, phi) in entries {
        let links: Vec<String> =
            state.links().iter().map(|(i, j)| format!("{i}->{j}")).collect();
        println!("  {phi:.6}  [{}]", links.join(", "));
    }
}

fn cmd_capacity(path: &Path, opts: SolveOptions, json: bool) -> Result<(), u8> {
    let started = Instant::now();
    let (net, digest) = read_network(path)?;
    let sol = solve_p1_with(&net, opts).map_err(|e| {
        eprintln!("error: solver failed: {e}");
        exit_code_for(&e)
    })?;
    let mut report = RunReport::new("capacity", opts.tolerance, opts.max_iterations);
    report.input_digest = Some(digest);
    report.capacity = Some(sol.capacity);
    report.iterations = Some(sol.iterations);
    report.cut_count = Some(sol.generated_cuts.len());
    report.wall_ms = started.elapsed().as_secs_f64() * 1e3;
    if json {
        let out = serde_json::json!({
            "report": report,
            "solution": sol.to_json(&net),
        });
        println!("{}", serde_json::to_string_pretty(&out).expect("json"));
    } else {
        println!("capacity: {:.9}", sol.capacity);
        print_connection_table(&net, &sol);
        println!(
            "({} iterations, {} generated cuts, {:.1} ms)",
            sol.iterations,
            sol.generated_cuts.len(),
            report.wall_ms
        );
    }
    Ok(())
}

fn cmd_schedule(path: &Path, verify: bool, opts: SolveOptions, json: bool) -> Result<(), u8> {
    let started = Instant::now();
    let (net, digest) = read_network(path)?;
    let sol = solve_p1_with(&net, opts).map_err(|e| {
        eprintln!("error: solver failed: {e}");
        exit_code_for(&e)
    })?;
    let sched = schedule_from_solution(&net, &sol).map_err(|e| {
        eprintln!("error: scheduling failed: {e}");
        EXIT_SOLVER
    })?;
    let mut verified_rate = None;
    if verify {
        let (_, rate) = verify_schedule(&net, &sched).map_err(|e| {
            eprintln!("error: schedule verification failed: {e}");
            EXIT_VERIFY
        })?;
        if (rate - sol.capacity).abs() > 1e-6 {
            eprintln!(
                "error: schedule achieves {rate}, capacity is {}; mismatch beyond 1e-6",
                sol.capacity
            );
            return Err(EXIT_VERIFY);
        }
        verified_rate = Some(rate);
    }
    let mut report = RunReport::new("schedule", opts.tolerance, opts.max_iterations);
    report.input_digest = Some(digest);
    report.capacity = Some(sol.capacity);
    report.schedule_states = Some(sched.states.len());
    report.total_activation = Some(sched.total_activation());
    report.iterations = Some(sol.iterations);
    report.cut_count = Some(sol.generated_cuts.len());
    report.wall_ms = started.elapsed().as_secs_f64() * 1e3;
    if json {
        let out = serde_json::json!({
            "report": report,
            "capacity": sol.capacity,
            "verified_rate": verified_rate,
            "schedule": sched.to_json(),
        });
        println!("{}", serde_json::to_string_pretty(&out).expect("json"));
    } else {
        println!("capacity: {:.9}", sol.capacity);
        print_schedule(&sched);
        if let Some(rate) = verified_rate {
            println!("verified: schedule achieves {rate:.9}");
        }
        println!("({:.1} ms)", report.wall_ms);
    }
    Ok(())
}

fn cmd_selftest(cfg: &selftest::Config, tolerance: f64, json: bool) -> Result<(), u8> {
    let started = Instant::now();
    match selftest::run_all(cfg) {
        Ok(outcomes) => {
            let wall_ms = started.elapsed().as_secs_f64() * 1e3;
            if json {
                let batteries: Vec<_> = outcomes
                    .iter()
                    .map(|o| serde_json::json!({ "battery": o.name, "checks": o.checks }))
                    .collect();
                let report = RunReport::new("selftest", tolerance, None);
                let out = serde_json::json!({
                    "report": report,
                    "batteries": batteries,
                    "wall_ms": wall_ms,
                });
                println!("{}", serde_json::to_string_pretty(&out).expect("json"));
            } else {
                for o in &outcomes {
                    println!("battery {:<22} ok ({} checks)", o.name, o.checks);
                }
                println!("selftest passed in {wall_ms:.1} ms");
            }
            Ok(())
        }
        Err(mismatch) => {
            eprintln!("selftest mismatch in battery {}: {}", mismatch.battery, mismatch.detail);
            eprintln!("reproducer: {}", mismatch.reproducer);
            Err(EXIT_SELFTEST)
        }
    }
}

fn cmd_gen(n: usize, density: f64, seed: u64, out: &Path, json: bool) -> Result<(), u8> {
    let started = Instant::now();
    let net = generate_random_network(n, density, seed);
    let text = net.to_json_string();
    std::fs::write(out, &text).map_err(|e| {
        eprintln!("error: cannot write {}: {e}", out.display());
        EXIT_INPUT
    })?;
    let digest = format!("{:x}", Sha256::digest(text.as_bytes()));
    if json {
        let mut report = RunReport::new("gen", 0.0, None);
        report.input_digest = Some(digest);
        report.wall_ms = started.elapsed().as_secs_f64() * 1e3;
        let out_json = serde_json::json!({
            "report": report,
            "path": out.display().to_string(),
            "links": net.links().len(),
        });
        println!("{}", serde_json::to_string_pretty(&out_json).expect("json"));
    } else {
        println!(
            "wrote {} ({} relays, {} links, sha256 {})",
            out.display(),
            net.n_relays(),
            net.links().len(),
            &digest[..12]
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = SolveOptions { tolerance: cli.tolerance, max_iterations: cli.max_iterations };
    let result = match &cli.command {
        Command::Capacity { path } => cmd_capacity(path, opts, cli.json),
        Command::Schedule { path, verify } => cmd_schedule(path, *verify, opts, cli.json),
        Command::Selftest { n, trials, seed, inject_fault } => cmd_selftest(
            &selftest::Config {
                max_relays: *n,
                trials: *trials,
                seed: *seed,
                inject_fault: *inject_fault,
            },
            cli.tolerance,
            cli.json,
        ),
        Command::Gen { n, density, seed, out } => {
            cmd_gen(*n, *density, *seed, out, cli.json)
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => ExitCode::from(code),
    }
}
