use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};

use clap::Parser;

use periodic_rigidity::development::Window;
use periodic_rigidity::lattice::LatticeBasis;
use periodic_rigidity::linear_rep::DEFAULT_TRIALS;
use periodic_rigidity_cli::command::{parse_basis, parse_window};
use periodic_rigidity_cli::{run_command, Command, Format, Output, Verb};

/// Generic rigidity of planar periodic frameworks from `.cg` colored graphs.
#[derive(Parser, Debug)]
#[command(name = "prig", version)]
struct Args {
    verb: Verb,

    /// One or more `.cg` files; several files are processed as a batch.
    #[arg(required = true)]
    inputs: Vec<PathBuf>,

    /// Drives every random choice.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Collapse threshold for `realize`, float rank tolerance for `rank`.
    #[arg(long)]
    tol: Option<f64>,

    /// Random trials for `rank`.
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: u32,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Development window `x0:x1,y0:y1`.
    #[arg(long, default_value = "-2:2,-2:2", allow_hyphen_values = true, value_parser = parse_window)]
    window: Window,

    /// Sublattice basis for `cover`, row-major `a,b,c,d` (columns are the basis vectors).
    #[arg(long, default_value = "1,0,0,2", allow_hyphen_values = true, value_parser = parse_basis)]
    basis: LatticeBasis,

    /// Worker threads for batches.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

fn run_batch(commands: &[Command], jobs: usize) -> Vec<Output> {
    let next = AtomicUsize::new(0);
    let mut slots: Vec<Option<Output>> = vec![None; commands.len()];
    let results = std::sync::Mutex::new(&mut slots);
    std::thread::scope(|s| {
        for _ in 0..jobs.clamp(1, commands.len().max(1)) {
            s.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                let Some(cmd) = commands.get(k) else { break };
                let out = run_command(cmd);
                results.lock().expect("no poisoned worker")[k] = Some(out);
            });
        }
    });
    slots.into_iter().map(|o| o.expect("every command ran")).collect()
}

fn main() -> ExitCode {
    let args = Args::parse();
    let commands: Vec<Command> = args
        .inputs
        .iter()
        .map(|input| Command {
            verb: args.verb,
            input: input.clone(),
            seed: args.seed,
            tol: args.tol,
            trials: args.trials,
            format: args.format,
            window: args.window,
            basis: args.basis,
        })
        .collect();
    let outputs = run_batch(&commands, args.jobs);
    let batch = outputs.len() > 1;
    let mut stdout = std::io::stdout().lock();
    let mut stderr = std::io::stderr().lock();
    let mut code = 0;
    for (cmd, out) in commands.iter().zip(&outputs) {
        for w in &out.warnings {
            let _ = writeln!(stderr, "{}: {w}", cmd.input.display());
        }
        if batch {
            let _ = writeln!(stdout, "==> {} <== exit {}", cmd.input.display(), out.code);
        }
        let _ = stdout.write_all(&out.bytes);
        code = code.max(out.code);
    }
    ExitCode::from(code)
}
