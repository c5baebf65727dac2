use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use seqrank::analytic::Tolerances;
use seqrank_cli::{cmd_genfun, cmd_rank, cmd_recover, cmd_verify, cmd_walks, input, CliError, Outcome, RankKindArg, EXIT_INPUT};

/// Exact rank certificates for complex-rational sequences.
///
/// Exit status: 0 certified, 1 input error, 2 not simple, 3 no finite rank
/// within the prefix, 4 non-integer masses, 5 cross-check disagreement.
/// SEQRANK_TOL overrides the numeric residual tolerance.
#[derive(Parser)]
#[command(name = "seqrank", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Rrank,
    Mrank,
    Urank,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a rank certificate. Defaults to mrank for `@index 0` files and
    /// urank for `@index 1` files.
    Rank {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: Option<Kind>,
        #[arg(long)]
        json: bool,
    },
    /// Recover the atomic measure behind a moment sequence.
    Recover {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print the rational generating function and its poles.
    Genfun { file: PathBuf },
    /// Cross-check every equivalent characterization of finite rank.
    Verify { file: PathBuf },
    /// Count nonzero eigenvalues of a square matrix from tr(A^n).
    Walks {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

fn dispatch(cli: Cli) -> Result<Outcome, CliError> {
    let tol = Tolerances::from_env()?;
    Ok(match cli.command {
        Command::Rank { file, kind, json } => {
            let kind = kind.map(|k| match k {
                Kind::Rrank => RankKindArg::Rrank,
                Kind::Mrank => RankKindArg::Mrank,
                Kind::Urank => RankKindArg::Urank,
            });
            cmd_rank(&input::read(&file)?, kind, json, &tol)
        }
        Command::Recover { file, json } => cmd_recover(&input::read(&file)?, json, &tol),
        Command::Genfun { file } => cmd_genfun(&input::read(&file)?, &tol),
        Command::Verify { file } => cmd_verify(&input::read(&file)?),
        Command::Walks { file, json } => cmd_walks(&input::read(&file)?, json, &tol),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT as u8 } else { 0 });
        }
    };
    let out = dispatch(cli).unwrap_or_else(Outcome::from_error);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
