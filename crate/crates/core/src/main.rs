use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use mcg_core::cli::{self, Exit, Format, Outcome};

#[derive(Parser)]
#[command(name = "mcg", version, about = "Exact models of mapping class groups of #_r S^p x S^p, p = 3, 7")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Table,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Table => Format::Table,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Orbit decomposition of quadratic refinements of rank r
    Orbits {
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: FormatArg,
    },
    /// Splitting verdicts for the smooth and homotopy models
    Split {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        r: usize,
        /// Homotopy coefficient modulus; 0 or a multiple of 4 (default 2c)
        #[arg(long)]
        modulus: Option<u64>,
        #[arg(long, value_enum, default_value = "table")]
        format: FormatArg,
    },
    /// Product of two element documents
    Mul {
        #[arg(long)]
        lhs: PathBuf,
        #[arg(long)]
        rhs: PathBuf,
        /// Base refinement as a bit string u1 v1 ... ur vr; checks membership
        #[arg(long)]
        psi: Option<String>,
    },
    /// Inverse of an element document
    Inv {
        #[arg(long)]
        lhs: PathBuf,
        #[arg(long)]
        psi: Option<String>,
    },
    /// Run the property suites
    Verify {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value = "table")]
        format: FormatArg,
        /// Add a deliberately broken cocycle; the run must then fail
        #[arg(long)]
        inject_negative_control: bool,
    },
    /// Table of Pontrjagin coefficients a_j c_j (2j-1)!
    Coeff {
        #[arg(long)]
        jmax: u32,
        #[arg(long, value_enum, default_value = "table")]
        format: FormatArg,
    },
}

fn read(path: &PathBuf) -> mcg_core::Result<String> {
    fs::read_to_string(path).map_err(|e| mcg_core::Error::Parse(format!("{}: {e}", path.display())))
}

fn run(command: Command) -> mcg_core::Result<Outcome> {
    match command {
        Command::Orbits { r, format } => cli::orbits(r, format.into()),
        Command::Split { p, r, modulus, format } => cli::split(p, r, modulus, format.into()),
        Command::Mul { lhs, rhs, psi } => cli::mul(&read(&lhs)?, &read(&rhs)?, psi.as_deref()),
        Command::Inv { lhs, psi } => cli::inv(&read(&lhs)?, psi.as_deref()),
        Command::Verify { r, samples, seed, format, inject_negative_control } => {
            cli::verify(r, samples, seed, inject_negative_control, format.into())
        }
        Command::Coeff { jmax, format } => cli::coeff(jmax, format.into()),
    }
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(Exit::InputError.code() as u8) } else { ExitCode::SUCCESS };
        }
    };
    match run(args.command) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            if let Some(msg) = outcome.stderr {
                eprintln!("mcg: {msg}");
            }
            ExitCode::from(outcome.exit.code() as u8)
        }
        Err(e) => {
            eprintln!("mcg: {e}");
            ExitCode::from(Exit::InputError.code() as u8)
        }
    }
}
