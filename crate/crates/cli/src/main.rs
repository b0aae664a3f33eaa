use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use koszulcone_cli::input::{self, FieldSpec};
use koszulcone_cli::{run, CheckKind, CliError, Command, Format, JobSpec, Method};

#[derive(Parser)]
#[command(
    name = "koszulcone",
    version,
    about = "Minimal free resolutions of monomial ideals over Koszul algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Highest homological degree.
    #[arg(long, global = true, default_value_t = 4)]
    hmax: usize,
    /// Highest internal degree checked.
    #[arg(long, global = true, default_value_t = 6)]
    dmax: usize,
    /// Coefficient field, overriding the ring file: `p=<prime>` or `q`.
    #[arg(long, global = true)]
    field: Option<FieldSpec>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    out: Format,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Graded pieces of the dual coalgebra.
    Dual { file: PathBuf },
    /// The Priddy complex and a bounded Koszulness certificate.
    Priddy { file: PathBuf },
    /// Structural checks on the ring or the ideal.
    Check {
        #[command(subcommand)]
        what: CheckCmd,
    },
    /// Build the minimal resolution of A/J.
    Resolve {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Closed)]
        method: Method,
    },
    /// Graded Betti table of J.
    Betti { file: PathBuf },
    /// Check d^2 = 0, minimality and exactness of a complex.
    Verify {
        file: PathBuf,
        /// Complex exported by `resolve --out json`; built afresh when absent.
        #[arg(long)]
        complex: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Method::Closed)]
        method: Method,
    },
    /// Run the bundled fixtures and seeded random stable ideals.
    Selftest {
        #[arg(long, default_value_t = 8)]
        cases: usize,
    },
}

#[derive(Subcommand)]
enum CheckCmd {
    Quotients { file: PathBuf },
    Regular { file: PathBuf },
    StronglyKoszul { file: PathBuf },
    Star { file: PathBuf },
}

fn job(cli: Cli) -> Result<JobSpec, CliError> {
    let (command, file) = match cli.command {
        Cmd::Dual { file } => (Command::Dual, Some(file)),
        Cmd::Priddy { file } => (Command::Priddy, Some(file)),
        Cmd::Check { what } => match what {
            CheckCmd::Quotients { file } => (Command::Check(CheckKind::Quotients), Some(file)),
            CheckCmd::Regular { file } => (Command::Check(CheckKind::Regular), Some(file)),
            CheckCmd::StronglyKoszul { file } => {
                (Command::Check(CheckKind::StronglyKoszul), Some(file))
            }
            CheckCmd::Star { file } => (Command::Check(CheckKind::Star), Some(file)),
        },
        Cmd::Resolve { file, method } => (Command::Resolve(method), Some(file)),
        Cmd::Betti { file } => (Command::Betti, Some(file)),
        Cmd::Verify {
            file,
            complex,
            method,
        } => (Command::Verify { complex, method }, Some(file)),
        Cmd::Selftest { cases } => (Command::Selftest { cases }, None),
    };
    let ring = match file {
        Some(path) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            Some(
                input::parse(&text)
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?,
            )
        }
        None => None,
    };
    Ok(JobSpec {
        ring,
        command,
        hmax: cli.hmax,
        dmax: cli.dmax,
        field: cli.field,
        out: cli.out,
        seed: cli.seed,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out;
    match job(cli).and_then(|j| run(&j)) {
        Ok(report) => {
            print!("{}", report.render(out));
            ExitCode::from(if report.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
