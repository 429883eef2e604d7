use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use qwalk_cli::commands::{cmd_figure, cmd_game, cmd_sweep, cmd_verify, cmd_walk, FigureSet};
use qwalk_cli::settings::Settings;
use qwalk_cli::verify::{parse_mutant, Exact, Model};

/// Discrete-time quantum walks on a line and the two-player walk game.
#[derive(Parser)]
#[command(name = "qwalk", version)]
struct Cli {
    /// JSON file with default values for any flag
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Walk with a single coin B(xi, theta, zeta) and emit P(x)
    Walk(Settings),
    /// Play a strategy program and adjudicate the winner
    Game(Settings),
    /// Composite-game winner map over the (xi, zeta) grid
    Sweep(Settings),
    /// Regenerate figure data with a manifest
    Figure {
        #[arg(value_enum)]
        which: FigureSet,
        #[command(flatten)]
        settings: Settings,
    },
    /// Run the acceptance checks and print a pass/fail table
    Verify {
        #[arg(long, hide = true)]
        mutant: Option<String>,
        #[command(flatten)]
        settings: Settings,
    },
}

fn configure_threads() -> Result<()> {
    if let Ok(n) = std::env::var("QWALK_THREADS") {
        let n: usize = n.parse().context("QWALK_THREADS must be a positive integer")?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    configure_threads()?;
    let file = match &cli.config {
        Some(path) => Settings::from_file(path)?,
        None => Settings::default(),
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Walk(s) => cmd_walk(&s.over(file).resolve()?, &mut out, &mut io::stderr())?,
        Command::Game(s) => cmd_game(&s.over(file).resolve()?, &mut out)?,
        Command::Sweep(s) => cmd_sweep(&s.over(file).resolve()?, &mut out)?,
        Command::Figure { which, settings } => {
            let manifest = cmd_figure(which, &settings.over(file).resolve()?)?;
            writeln!(out, "wrote {}", manifest.display())?;
        }
        Command::Verify { mutant, settings } => {
            let cfg = settings.over(file).resolve()?;
            let mutant = mutant.as_deref().map(parse_mutant).transpose()?;
            let model: &dyn Model = match &mutant {
                Some(m) => m,
                None => &Exact,
            };
            return cmd_verify(&cfg, model, &mut out);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
