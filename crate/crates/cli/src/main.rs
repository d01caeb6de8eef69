use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use nikolskii::extremal::solve_extremal;
use nikolskii::hardy::{hp_quasinorm, random_atom, validate_atom, OffsetKind};
use nikolskii::report::{load_rows, write_report, write_report_to, ReportKind};
use nikolskii::sweep::{run_sweep, SweepConfig};
use nikolskii::verify::{run_suite, Suite, VerifyOptions};
use nikolskii::{Error, Exponent};

#[derive(Parser)]
#[command(name = "nikolskii", version, about = "Bernstein-Nikolskii constants: sweeps, checks and extremal polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate witness ratios over the grid of a JSON config; writes <output_dir>/sweep.csv
    Sweep {
        config: PathBuf,
        /// worker threads (default: all cores)
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Run a verification suite: trig, entire, concave, extremal, hardy or all
    Verify {
        #[arg(value_parser = |s: &str| s.parse::<Suite>().map_err(|e| e.to_string()))]
        suite: Suite,
        /// smaller sweeps
        #[arg(long)]
        quick: bool,
        #[arg(long, default_value_t = VerifyOptions::default().seed)]
        seed: u64,
    },
    /// Solve the L1 extremal problem for p = 1, q = inf and print it as JSON
    Extremal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: u32,
        /// LP grid size
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Discrete Hardy space tools
    Hardy {
        #[command(subcommand)]
        command: HardyCommand,
    },
    /// Summarise sweep CSVs: band-summary or scan-table
    Report {
        #[arg(value_parser = |s: &str| s.parse::<ReportKind>().map_err(|e| e.to_string()))]
        kind: ReportKind,
        #[arg(required = true)]
        csv: Vec<PathBuf>,
        /// write here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum HardyCommand {
    /// Print random H_p atoms with their certificates as JSON
    Atoms {
        /// exponent in (0, 1], e.g. 1/2
        #[arg(long, value_parser = |s: &str| s.parse::<Exponent>().map_err(|e| e.to_string()))]
        p: Exponent,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Accuracy(_) | Error::Undersampled { .. } => 3,
        Error::Infeasible(_) | Error::Solver { .. } | Error::Structure(_) => 1,
        _ => 2,
    }
}

fn print_json(value: &serde_json::Value) -> nikolskii::Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

fn run(cli: Cli) -> nikolskii::Result<u8> {
    match cli.command {
        Command::Sweep { config, workers } => {
            let config = SweepConfig::load(&config)?;
            let (path, outcome) = run_sweep(&config, workers)?;
            println!("wrote {} rows to {} ({} cells skipped)", outcome.rows.len(), path.display(), outcome.skipped);
            Ok(0)
        }
        Command::Verify { suite, quick, seed } => {
            let report = run_suite(suite, &VerifyOptions { quick, seed });
            println!("{report}");
            Ok(report.status().exit_code() as u8)
        }
        Command::Extremal { n, s, grid } => {
            let sol = solve_extremal(n, s, grid)?;
            let zeros: Vec<_> = sol.zeros.iter().map(|z| json!({"x": z.x, "slope": z.slope, "simple": z.simple})).collect();
            print_json(&json!({
                "n": sol.n,
                "s": sol.s,
                "basis": format!("{:?}", sol.basis).to_lowercase(),
                "coeffs": sol.coeffs,
                "l1_norm": sol.l1_norm,
                "constant": sol.constant,
                "grid": sol.grid,
                "zeros": zeros,
                "lp_iterations": sol.diagnostics.lp_iterations,
                "lp_objective": sol.diagnostics.lp_objective,
                "polished": sol.diagnostics.polished,
            }))?;
            Ok(0)
        }
        Command::Hardy { command: HardyCommand::Atoms { p, count, seed } } => {
            let pv = match p {
                Exponent::Finite(v) if v > 0.0 && v <= 1.0 => v,
                _ => return Err(Error::Domain(format!("p must lie in (0, 1], got {p}"))),
            };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut atoms = Vec::with_capacity(count);
            for _ in 0..count {
                let atom = random_atom(pv, &mut rng);
                let cert = validate_atom(&atom.seq, atom.interval, pv)?;
                let plain = hp_quasinorm(&atom.seq, pv, OffsetKind::Integer)?;
                let star = hp_quasinorm(&atom.seq, pv, OffsetKind::Half)?;
                let values: Vec<f64> = atom.seq.values().iter().map(|v| v.re).collect();
                atoms.push(json!({
                    "offset": atom.seq.offset(),
                    "values": values,
                    "interval": [atom.interval.0, atom.interval.1],
                    "valid": cert.valid,
                    "sup_norm": cert.sup_norm,
                    "sup_bound": cert.sup_bound,
                    "moment_residuals": cert.moment_residuals,
                    "hp_norm": plain.value,
                    "hp_norm_half": star.value,
                }));
            }
            print_json(&json!({"p": pv, "seed": seed, "atoms": atoms}))?;
            Ok(0)
        }
        Command::Report { kind, csv, output } => {
            let rows = load_rows(&csv)?;
            match output {
                Some(path) => write_report(kind, &rows, &path)?,
                None => write_report_to(kind, &rows, std::io::stdout().lock())?,
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
