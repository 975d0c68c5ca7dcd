use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use nilhecke::subexpr::SubexprFilter;
use nilhecke_cli::system::{self, BUILTINS};
use nilhecke_cli::{commands, examples, CliResult, Output};

/// Light-leaves pairings computed in the nil Hecke ring.
#[derive(Parser)]
#[command(name = "nilhecke", version)]
struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Demazure product of a word, as a canonical reduced word.
    Demazure { system: String, word: String },
    /// Subexpressions of a word ending at x.
    Enumerate {
        system: String,
        word: String,
        /// Word for the endpoint x ("" for the identity).
        x: String,
        #[command(flatten)]
        filter: FilterArgs,
    },
    /// The pairing d(e1, e2) of two 01-sequences with a common endpoint.
    Pair {
        system: String,
        word: String,
        bits1: String,
        bits2: String,
        /// Also evaluate in the delta basis and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Gram matrix of pairings at x, with its integer invariants.
    Gram {
        system: String,
        word: String,
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        defect: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        max_defect: Option<i64>,
        /// Threads used for the entries.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Checks the Hecke-algebra product against defect counts.
    Deodhar { system: String, word: String },
    /// Recomputes a worked example and compares with the known answer.
    Examples {
        /// One of ks-s8, braden-s8, braden-d4, s12, dihedral-sts, all.
        #[arg(default_value = "all")]
        name: String,
    },
    /// Lists the built-in systems.
    Systems,
}

#[derive(Args)]
struct FilterArgs {
    /// Skip sequences with a D1 decoration.
    #[arg(long)]
    no_d1: bool,
    #[arg(long, allow_hyphen_values = true)]
    defect: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    max_defect: Option<i64>,
}

impl FilterArgs {
    fn filter(&self) -> SubexprFilter {
        SubexprFilter {
            no_d1: self.no_d1,
            exact_defect: self.defect,
            max_defect: self.max_defect,
        }
    }
}

fn run(command: Command) -> CliResult<Output> {
    match command {
        Command::Demazure { system, word } => commands::demazure(&system::load(&system)?, &word),
        Command::Enumerate {
            system,
            word,
            x,
            filter,
        } => commands::enumerate(&system::load(&system)?, &word, &x, filter.filter()),
        Command::Pair {
            system,
            word,
            bits1,
            bits2,
            oracle,
        } => commands::pair(&system::load(&system)?, &word, &bits1, &bits2, oracle),
        Command::Gram {
            system,
            word,
            x,
            defect,
            max_defect,
            jobs,
        } => {
            let filter = SubexprFilter {
                no_d1: true,
                exact_defect: defect,
                max_defect,
            };
            commands::gram(&system::load(&system)?, &word, &x, filter, jobs)
        }
        Command::Deodhar { system, word } => commands::deodhar(&system::load(&system)?, &word),
        Command::Examples { name } => examples::run(&name),
        Command::Systems => {
            let names: Vec<&str> = BUILTINS.iter().map(|(n, _)| *n).collect();
            Ok(Output {
                json: serde_json::json!({ "systems": names }),
                text: names.join("\n") + "\n",
                ok: true,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("serializable")
                ),
                Format::Text => print!("{}", out.text),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(2)
        }
    }
}
