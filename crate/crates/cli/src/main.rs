use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod meta;

#[derive(Parser, Debug)]
#[command(
    name = "sxor",
    version,
    about = "Shift-and-XOR erasure codes over files"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Split a file into K source packets and write N encoded packet files
    Encode {
        input: PathBuf,
        #[command(flatten)]
        code: CodeArgs,
        /// Output directory (defaults to the input's directory)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rebuild the original file from exactly K packet files
    Decode {
        #[arg(required = true)]
        packets: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = Decoder::Map)]
        decoder: Decoder,
        /// Sidecar file (defaults to <stem>.sxmeta next to the first packet)
        #[arg(long)]
        meta: Option<PathBuf>,
        /// Generator matrix file, required for user codes
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Overheads and encoding cost of one code, or the comparison table
    Analyze {
        #[command(flatten)]
        code: CodeArgs,
        /// Compare systematic SXOR, SXOR and the zigzag baseline for K = 2..N-1
        #[arg(long)]
        compare: bool,
        #[arg(long, value_enum, default_value_t = Format::Markdown)]
        format: Format,
    },
    /// Equivalence classes of systematic SXOR codes
    Classify {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        g: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Markdown)]
        format: Format,
    },
    /// Check that every K columns of the generator matrix are invertible
    Check {
        #[command(flatten)]
        code: CodeArgs,
    },
    /// Write or read generator matrix files
    #[command(subcommand)]
    Matrix(MatrixCommand),
}

#[derive(Subcommand, Debug)]
enum MatrixCommand {
    /// Print the generator matrix in the text format
    Print {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Parse and validate a matrix file, then summarise it
    Load {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Markdown)]
        format: Format,
    },
}

#[derive(Args, Debug, Clone, Default)]
pub struct CodeArgs {
    #[arg(long, value_enum, default_value_t = Kind::Sxor)]
    kind: Kind,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Primitive modulus as hex, e.g. 0xB for z^3+z+1
    #[arg(long)]
    g: Option<String>,
    /// 1-based identity positions for systematic codes, e.g. 1,3,4
    #[arg(long)]
    x: Option<String>,
    /// Load the generator matrix from a file instead of building it
    #[arg(long)]
    matrix: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Kind {
    #[default]
    Sxor,
    Systematic,
    Zd3,
    User,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decoder {
    Map,
    Zigzag,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Markdown,
}

/// Exit 2 for bad invocations, 1 for everything that fails after that.
pub enum Failure {
    Usage(anyhow::Error),
    Failed(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Failed(e.into())
    }
}

pub type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Encode { input, code, out } => commands::encode(&input, &code, out.as_deref()),
        Command::Decode {
            packets,
            decoder,
            meta,
            matrix,
            out,
        } => commands::decode(&packets, decoder, meta.as_deref(), matrix.as_deref(), &out),
        Command::Analyze {
            code,
            compare,
            format,
        } => commands::analyze(&code, compare, format),
        Command::Classify { k, n, g, format } => commands::classify(k, n, g.as_deref(), format),
        Command::Check { code } => commands::check(&code),
        Command::Matrix(MatrixCommand::Print { code, out }) => {
            commands::matrix_print(&code, out.as_deref())
        }
        Command::Matrix(MatrixCommand::Load { file, format }) => {
            commands::matrix_load(&file, format)
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(e)) => {
            eprintln!("usage error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Failed(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
