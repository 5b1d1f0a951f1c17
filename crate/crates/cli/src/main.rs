use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hochschild_cli::{
    cmd_bracket, cmd_center, cmd_counterexample, cmd_hh1, cmd_hh1r, cmd_integrate,
    cmd_morita_check, cmd_ppower, cmd_validate, AlgebraArgs, CliError, Report, SearchArgs,
    EXIT_INPUT,
};
use hochschild_core::integrability::DEFAULT_BRANCH_LIMIT;

/// First Hochschild cohomology of finite-dimensional algebras over F_p.
#[derive(Parser)]
#[command(name = "hh1", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit JSON (default).
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Emit indented plain text.
    #[arg(long, global = true)]
    text: bool,
}

#[derive(Args)]
struct Input {
    /// Algebra file, or builtin:c<n> / builtin:s3.
    #[arg(long)]
    input: String,
    /// Prime for built-in algebras.
    #[arg(long, default_value_t = 3)]
    p: u32,
}

impl Input {
    fn args(&self) -> AlgebraArgs {
        AlgebraArgs {
            input: self.input.clone(),
            p: self.p,
        }
    }
}

#[derive(Args)]
struct Search {
    #[arg(long, default_value_t = 1)]
    r: usize,
    /// Truncation order N; defaults to p*r.
    #[arg(long)]
    order: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_BRANCH_LIMIT)]
    branch_limit: usize,
}

impl Search {
    fn args(&self) -> SearchArgs {
        SearchArgs {
            r: self.r,
            order: self.order,
            branch_limit: self.branch_limit,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check associativity and the unit.
    Validate(Input),
    /// Basis of the center.
    Center(Input),
    /// Derivations, inner derivations and a basis of HH^1.
    Hh1(Input),
    /// p-fold composite of a derivation and its class.
    Ppower {
        #[command(flatten)]
        input: Input,
        /// Derivation file, or f0/f1/f2 on builtin:c3.
        #[arg(long)]
        derivation: String,
    },
    /// Commutator of two derivations and its class.
    Bracket {
        #[command(flatten)]
        input: Input,
        /// Given twice.
        #[arg(long, num_args = 1, required = true)]
        derivation: Vec<String>,
    },
    /// Extend a derivation to a truncated higher derivation.
    Integrate {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        derivation: String,
        #[command(flatten)]
        search: Search,
    },
    /// Classes of HH^1 that are r-integrable to the given order.
    Hh1r {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        search: Search,
    },
    /// Transfer from F_3 C_3 to F_3 S_3 against the 3-power map.
    Counterexample,
    /// Compare HH^1(A) and HH^1(M_m(A)) under the induced map.
    MoritaCheck {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 2)]
        m: usize,
    },
}

fn run(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Validate(i) => cmd_validate(&i.args()),
        Command::Center(i) => cmd_center(&i.args()),
        Command::Hh1(i) => cmd_hh1(&i.args()),
        Command::Ppower { input, derivation } => cmd_ppower(&input.args(), derivation),
        Command::Bracket { input, derivation } => match derivation.as_slice() {
            [d, e] => cmd_bracket(&input.args(), d, e),
            other => Err(CliError::Input(format!(
                "bracket needs exactly two --derivation flags, got {}",
                other.len()
            ))),
        },
        Command::Integrate {
            input,
            derivation,
            search,
        } => cmd_integrate(&input.args(), derivation, &search.args()),
        Command::Hh1r { input, search } => cmd_hh1r(&input.args(), &search.args()),
        Command::Counterexample => cmd_counterexample(),
        Command::MoritaCheck { input, m } => cmd_morita_check(&input.args(), *m),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_INPUT as u8);
        }
    };
    match run(&cli.command) {
        Ok(report) => {
            let out = if cli.text {
                report.to_text()
            } else {
                report.to_json()
            };
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
