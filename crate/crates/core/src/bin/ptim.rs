// SPDX-License-Identifier: Apache-2.0

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ptim::cli::{
    cmd_analytic, cmd_crosscheck, cmd_mtff, cmd_sweep, LinearGrid, OutputFormat, StepsRule, SweepSpec,
};
use ptim::{Decoder, Error};

#[derive(Parser)]
#[command(name = "ptim", version, about = "Decoders for the projective transverse field Ising model")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decoding probability over a parameter grid.
    Sweep(Scan),
    /// Mean time to first failure over a parameter grid.
    Mtff(Scan),
    /// Quantum versus classical evaluation on small systems.
    Crosscheck(Scan),
    /// Closed-form matching curve at q = 0.
    Analytic(Scan),
}

#[derive(Args)]
struct Scan {
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    q: Option<f64>,
    /// start:stop:count
    #[arg(long = "p-grid")]
    p_grid: Option<LinearGrid>,
    /// start:stop:count
    #[arg(long = "q-grid")]
    q_grid: Option<LinearGrid>,
    /// Use q = p at every point.
    #[arg(long)]
    diagonal: bool,
    #[arg(long = "L", required = true)]
    lengths: Vec<usize>,
    /// Integer, or "L" for T = L.
    #[arg(long = "T", default_value = "L")]
    steps: StepsRule,
    /// Trajectories per point (default 1000; analytic runs no Monte Carlo
    /// unless given).
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long = "decoder", default_value = "mwpm")]
    decoders: Vec<Decoder>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long = "t-max", default_value_t = 100_000)]
    t_max: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    format: OutputFormat,
}

impl Scan {
    fn spec(&self) -> Result<SweepSpec, Error> {
        let p_grid = match (self.p, self.p_grid) {
            (Some(p), None) => LinearGrid::single(p),
            (None, Some(g)) => g,
            _ => return Err(Error::InvalidSpec("give exactly one of --p and --p-grid".into())),
        };
        let q_grid = match (self.q, self.q_grid, self.diagonal) {
            (Some(q), None, false) => Some(LinearGrid::single(q)),
            (None, Some(g), false) => Some(g),
            (None, None, true) => None,
            (None, None, false) if self.p.is_some() || self.p_grid.is_some() => {
                Some(LinearGrid::single(0.0))
            }
            _ => return Err(Error::InvalidSpec("give one of --q, --q-grid and --diagonal".into())),
        };
        Ok(SweepSpec {
            p_grid,
            q_grid,
            lengths: self.lengths.clone(),
            steps: self.steps,
            samples: self.samples.unwrap_or(1000),
            decoders: self.decoders.clone(),
            seed: self.seed,
            workers: self.workers,
            t_max: self.t_max,
            format: self.format,
        })
    }

    fn output(&self) -> Result<Box<dyn Write>, Error> {
        Ok(match &self.out {
            Some(path) => Box::new(BufWriter::new(File::create(path)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Sweep(scan) => {
            let spec = scan.spec()?;
            cmd_sweep(&spec, &mut scan.output()?)?;
        }
        Command::Mtff(scan) => {
            let spec = scan.spec()?;
            cmd_mtff(&spec, &mut scan.output()?)?;
        }
        Command::Crosscheck(scan) => {
            let spec = scan.spec()?;
            cmd_crosscheck(&spec, &mut scan.output()?)?;
        }
        Command::Analytic(scan) => {
            let spec = scan.spec()?;
            cmd_analytic(
                spec.p_grid,
                &spec.lengths,
                spec.steps,
                scan.samples.unwrap_or(0),
                spec.seed,
                spec.workers,
                spec.format,
                &mut scan.output()?,
            )?;
        }
    }
    Ok(())
}

fn error_line(kind: &str, message: &str) -> ExitCode {
    eprintln!("{}", serde_json::json!({ "error": kind, "message": message }));
    ExitCode::FAILURE
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return error_line("usage", e.to_string().trim_end()),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => error_line(e.kind(), &e.to_string()),
    }
}
