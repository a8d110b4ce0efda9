use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use qst_optomech::analysis::SweepParam;
use qst_optomech::cli::{self, EXIT_CONFIG, EXIT_OK, EXIT_VALIDATION};
use qst_optomech::oracles::OracleSuite;
use qst_optomech::params::ModelKind;

#[derive(Parser, Debug)]
#[command(
    name = "qst-optomech",
    version,
    about = "State transfer between two mechanical oscillators linked by fiber-coupled cavities"
)]
struct Cli {
    /// JSON config; missing keys take the reference scenario values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output CSV path.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Use the damped equations of motion.
    #[arg(long, global = true)]
    dissipative: bool,
    #[arg(long, global = true, value_enum)]
    model: Option<ModelArg>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum ModelArg {
    Effective,
    Full,
}

impl From<ModelArg> for ModelKind {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Effective => ModelKind::Effective,
            ModelArg::Full => ModelKind::Full,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Integrate one trajectory and print the transfer efficiency.
    Simulate,
    /// Scan one parameter and record the efficiency at t_final.
    Sweep {
        /// One of G0, delta, s, t_off.
        #[arg(long)]
        param: String,
        #[arg(long)]
        min: f64,
        #[arg(long)]
        max: f64,
        #[arg(long)]
        steps: usize,
    },
    /// Write the coupling schedule G1, G2, g, J on the sampling grid.
    Pulses,
    /// Run the built-in oracle checks.
    Validate,
}

fn main() -> ExitCode {
    let args = match Cli::try_parse() {
        Ok(args) => args,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_CONFIG as u8),
            };
        }
    };
    ExitCode::from(run(args) as u8)
}

fn run(args: Cli) -> i32 {
    let mut stdout = io::stdout().lock();

    if let Command::Validate = args.command {
        return match cli::run_validate(&OracleSuite::default(), &mut stdout) {
            Ok(true) => EXIT_OK,
            Ok(false) => EXIT_VALIDATION,
            Err(e) => cli::report(&e),
        };
    }

    let cfg = match cli::load_config(
        args.config.as_deref(),
        args.model.map(Into::into),
        args.dissipative,
        args.out,
    ) {
        Ok(cfg) => cfg,
        Err(e) => return cli::report(&e),
    };

    let result = match args.command {
        Command::Simulate => cli::run_simulate(&cfg, &mut stdout).map(|_| ()),
        Command::Sweep {
            param,
            min,
            max,
            steps,
        } => param
            .parse::<SweepParam>()
            .and_then(|p| cli::run_sweep(&cfg, p, min, max, steps, &mut stdout).map(|_| ())),
        Command::Pulses => cli::run_pulses(&cfg),
        Command::Validate => unreachable!("handled above"),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => cli::report(&e),
    }
}
