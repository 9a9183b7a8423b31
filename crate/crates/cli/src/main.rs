use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use z22susy::actions::ActionName;
use z22susy_cli::commands::{self, Outcome, Which};
use z22susy_cli::criteria::{self, Options, DEFAULT_SEED, DEFAULT_TRUNCATION};

#[derive(Parser)]
#[command(name = "z22susy", version, about = "Exact checks for Z2xZ2-graded superspace calculus")]
struct Cli {
    /// Truncation order K in z.
    #[arg(long, global = true, default_value_t = DEFAULT_TRUNCATION)]
    truncation: u32,
    /// Superfield degree, as a,b.
    #[arg(long, global = true, default_value = "0,0")]
    delta: String,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Write the artifact JSON to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every algebra relation on generic superfields of all degrees.
    VerifyAlgebra {
        #[arg(long, hide = true)]
        corrupt: bool,
    },
    /// Impose a constraint and extract the multiplet matrices.
    Constrain {
        #[arg(long, value_enum)]
        which: ConstraintArg,
    },
    /// Check one of the representation tables.
    Irreps {
        #[arg(value_parser = commands::IRREP_CASES)]
        case: String,
    },
    /// Reduce a named action and certify its invariance.
    Action {
        #[arg(value_parser = ActionName::ALL.map(|a| a.name()))]
        name: String,
    },
    Superfield {
        #[command(subcommand)]
        command: SuperfieldCommand,
    },
    /// Run one acceptance criterion.
    Criterion {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=10))]
        number: u8,
    },
    /// Run every acceptance criterion.
    VerifyAll,
}

#[derive(Subcommand)]
enum SuperfieldCommand {
    /// Write a superfield as JSON.
    Export {
        #[arg(long, default_value = "generic", value_parser = ["generic", "z", "f011"])]
        which: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstraintArg {
    Z,
    F011,
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {}", msg);
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let delta = match commands::parse_delta(&cli.delta) {
        Ok(d) => d,
        Err(e) => return usage(e),
    };
    let k = cli.truncation;
    let outcome: Outcome = match &cli.command {
        Command::VerifyAlgebra { corrupt } => commands::verify_algebra(k, *corrupt),
        Command::Constrain { which } => {
            let w = match which {
                ConstraintArg::Z => Which::Z,
                ConstraintArg::F011 => Which::F011,
            };
            commands::constrain(delta, w, k)
        }
        Command::Irreps { case } => match commands::irreps(case, cli.seed) {
            Ok(o) => o,
            Err(e) => return usage(e),
        },
        Command::Action { name } => match name.parse::<ActionName>() {
            Ok(a) => commands::action(a, k),
            Err(e) => return usage(e),
        },
        Command::Superfield { command: SuperfieldCommand::Export { which } } => {
            match commands::superfield_export(delta, which, k) {
                Ok(o) => o,
                Err(e) => return usage(e),
            }
        }
        Command::Criterion { number } => {
            let opts = Options { truncation: k, seed: cli.seed, ..Options::default() };
            let report = criteria::run(*number, &opts);
            let artifact = report.to_json();
            Outcome { report, artifact }
        }
        Command::VerifyAll => commands::verify_all(&Options { truncation: k, seed: cli.seed, ..Options::default() }),
    };
    if let Some(path) = &cli.out {
        let text = serde_json::to_string_pretty(&outcome.artifact).expect("JSON value");
        if let Err(e) = std::fs::write(path, text) {
            eprintln!("error: cannot write {}: {}", path.display(), e);
            return ExitCode::from(1);
        }
    }
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&outcome.report.to_json()).expect("JSON value"));
    } else {
        println!("{}", outcome.report);
    }
    ExitCode::from(outcome.report.exit_code() as u8)
}
