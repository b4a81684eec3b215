use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mcps_core::{CodeMode, Game};
use mcps_games::{with_game, GameVisitor, GAME_NAMES};
use mcps_harness::output::{summary, write_csv, write_json};
use mcps_harness::{
    code_frequency_stats, run_match, AgentSpec, CodeStatsReport, HarnessError, MatchConfig,
};

#[derive(Parser)]
#[command(
    name = "mcps",
    version,
    about = "GRAVE and MCPS tournaments and playout statistics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Play a seat-rotated match between agents.
    Match {
        #[arg(long)]
        game: String,
        /// Agent spec, once per seat role (e.g. mcps:ref=50, grave:ref=50,bias=1e-5).
        #[arg(long = "agent", required = true)]
        agents: Vec<String>,
        #[arg(long, default_value_t = 1000)]
        playouts: u32,
        #[arg(long, default_value_t = 800)]
        games: u32,
        #[arg(long, default_value_t = 0)]
        seed_base: u64,
        #[arg(long, default_value = "exact")]
        code_mode: String,
        /// Worker threads; defaults to the number of CPUs.
        #[arg(long)]
        workers: Option<usize>,
        /// Results file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Write 0 in the millis column so reruns are byte-identical.
        #[arg(long)]
        no_timing: bool,
    },
    /// Code-presence statistics of uniform random playouts.
    Codestats {
        #[arg(long)]
        game: String,
        #[arg(long, default_value_t = 10_000)]
        playouts: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the registered games.
    Games,
}

fn open_out(path: &Option<PathBuf>) -> Result<Box<dyn Write>, HarnessError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

struct Stats {
    playouts: u32,
    seed: u64,
}

impl GameVisitor for Stats {
    type Output = CodeStatsReport;
    fn visit<G: Game + 'static>(self, game: G) -> CodeStatsReport {
        code_frequency_stats(&game, self.playouts, self.seed)
    }
}

fn run(cli: Cli) -> Result<(), HarnessError> {
    match cli.command {
        Command::Match {
            game,
            agents,
            playouts,
            games,
            seed_base,
            code_mode,
            workers,
            out,
            format,
            no_timing,
        } => {
            let agents = agents
                .iter()
                .map(|a| a.parse())
                .collect::<Result<Vec<AgentSpec>, _>>()?;
            let code_mode: CodeMode = code_mode.parse().map_err(HarnessError::Config)?;
            let workers = workers
                .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let config = MatchConfig {
                playouts,
                games,
                seed_base,
                code_mode,
                workers,
                ..MatchConfig::new(&game, agents)
            };
            let players = config.agents.len();
            match run_match(&config) {
                Ok(report) => {
                    let mut w = open_out(&out)?;
                    match format {
                        Format::Csv => write_csv(&mut w, players, &report.results, !no_timing)?,
                        Format::Json => write_json(&mut w, &report)?,
                    }
                    w.flush()?;
                    eprint!("{}", summary(&report));
                    Ok(())
                }
                Err(failure) => {
                    if !failure.partial.is_empty() {
                        let mut w = open_out(&out)?;
                        match format {
                            Format::Csv => {
                                write_csv(&mut w, players, &failure.partial, !no_timing)?
                            }
                            Format::Json => write_json(&mut w, &failure.partial)?,
                        }
                        w.flush()?;
                        eprintln!(
                            "wrote {} finished games before the failure",
                            failure.partial.len()
                        );
                    }
                    Err(failure.error)
                }
            }
        }
        Command::Codestats {
            game,
            playouts,
            seed,
            out,
        } => {
            if playouts == 0 {
                return Err(HarnessError::Config("need at least one playout".into()));
            }
            let report = with_game(&game, Stats { playouts, seed })?;
            let mut w = open_out(&out)?;
            write_json(&mut w, &report)?;
            w.flush()?;
            Ok(())
        }
        Command::Games => {
            for name in GAME_NAMES {
                println!("{name}");
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
