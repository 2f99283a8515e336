//! Subcommand surface of the `gainlap` binary.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use gainlap::linalg::det_lu;
use gainlap::prelude::*;
use std::result::Result;
use thiserror::Error;

use crate::document::{parse_graph, DocumentError, GraphDocument};
use crate::format::{format_real, matrix_csv};
use crate::verify::{verify, Outcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Environment variable overriding the spanning-subset budget of forest enumeration.
pub const BUDGET_VAR: &str = "GAINLAP_BUDGET";

#[derive(Parser, Debug)]
#[command(
    name = "gainlap",
    version,
    about = "Gain distance matrices and Laplacians of complex unit gain graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Max,
    Min,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Max => Mode::Max,
            ModeArg::Min => Mode::Min,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Target {
    Dlmax,
    Dlmin,
    Adj,
    Lap,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Lu,
    Forests,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Gain distance matrix as CSV
    Dmatrix {
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Use the reverse of the file's vertex ordering
        #[arg(long)]
        reverse: bool,
        file: PathBuf,
    },
    /// Gain distance Laplacian as CSV
    Dlaplacian {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        reverse: bool,
        file: PathBuf,
    },
    /// Weighted incidence matrix, or the distance incidence matrix with --distance
    Incidence {
        #[arg(long)]
        distance: bool,
        #[arg(long, value_enum, default_value = "max")]
        mode: ModeArg,
        #[arg(long)]
        reverse: bool,
        file: PathBuf,
    },
    /// Eigenvalues in ascending order, one per line
    Spectrum {
        #[arg(long, value_enum)]
        target: Target,
        #[arg(long)]
        reverse: bool,
        file: PathBuf,
    },
    /// Determinant of the weighted Laplacian or a distance Laplacian
    Det {
        #[arg(long, value_enum, default_value = "lu")]
        method: Method,
        #[arg(long, value_enum, default_value = "lap")]
        target: Target,
        file: PathBuf,
    },
    /// Numerical rank (of DL^max unless --target says otherwise)
    Rank {
        #[arg(long, value_enum, default_value = "dlmax")]
        target: Target,
        file: PathBuf,
    },
    /// Prints `balanced` or `unbalanced`
    Balance { file: PathBuf },
    /// Checks one identity numerically on the input graph.
    ///
    /// 1: L = HH*; 2: cycle determinant closed form; 3: 1-forest expansion of
    /// det L; 6: balanced iff L singular; 7: DL = DH DH*; 11: balanced iff DL
    /// singular; 12: switching similarity of D; 13: balanced iff DL is
    /// cospectral to the distance Laplacian of the underlying graph.
    Verify {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(["1", "2", "3", "6", "7", "11", "12", "13"]))]
        theorem: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        file: PathBuf,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Document(#[from] DocumentError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Core(#[from] Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::PathExplosion { .. } | Error::TooLarge { .. }) => EXIT_BUDGET,
            _ => EXIT_USAGE,
        }
    }
}

fn load(path: &PathBuf) -> Result<GraphDocument, CliError> {
    let bytes = std::fs::read(path).map_err(|source| CliError::Read {
        path: path.display().to_string(),
        source,
    })?;
    Ok(parse_graph(&bytes)?)
}

fn ordering(doc: &GraphDocument, reverse: bool) -> VertexOrdering {
    let ord = doc.vertex_ordering();
    if reverse {
        ord.reverse()
    } else {
        ord
    }
}

fn limits() -> Result<EnumerationLimits, CliError> {
    let mut limits = EnumerationLimits::default();
    if let Ok(raw) = std::env::var(BUDGET_VAR) {
        limits.subset_budget = raw.trim().parse().map_err(|_| {
            CliError::Usage(format!(
                "{BUDGET_VAR}={raw:?} is not a non-negative integer"
            ))
        })?;
    }
    Ok(limits)
}

fn target_matrix(
    doc: &GraphDocument,
    target: Target,
    reverse: bool,
) -> Result<HermitianMatrix, CliError> {
    let ord = ordering(doc, reverse);
    Ok(match target {
        Target::Dlmax => distance_laplacian(&doc.graph(), &ord, Mode::Max)?,
        Target::Dlmin => distance_laplacian(&doc.graph(), &ord, Mode::Min)?,
        Target::Adj => weighted_adjacency(&doc.weighted()),
        Target::Lap => weighted_laplacian(&doc.weighted()),
    })
}

/// Executes one command line; returns the process exit status.
fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let mut emit = |text: String| {
        out.write_all(text.as_bytes())
            .map_err(|e| CliError::Usage(format!("writing output: {e}")))
    };
    match cli.command {
        Command::Dmatrix {
            mode,
            reverse,
            file,
        } => {
            let doc = load(&file)?;
            let d = gain_distance_matrix(&doc.graph(), &ordering(&doc, reverse), mode.into())?;
            emit(matrix_csv(&d.matrix))?;
        }
        Command::Dlaplacian {
            mode,
            reverse,
            file,
        } => {
            let doc = load(&file)?;
            let dl = distance_laplacian(&doc.graph(), &ordering(&doc, reverse), mode.into())?;
            emit(matrix_csv(&dl))?;
        }
        Command::Incidence {
            distance,
            mode,
            reverse,
            file,
        } => {
            let doc = load(&file)?;
            let ord = ordering(&doc, reverse);
            let h = if distance {
                distance_incidence(&doc.graph(), &ord, mode.into())?
            } else {
                let wg = doc.weighted();
                weighted_incidence(&wg, &Orientation::by_ordering(wg.graph(), &ord))
            };
            emit(matrix_csv(&h.matrix))?;
        }
        Command::Spectrum {
            target,
            reverse,
            file,
        } => {
            let doc = load(&file)?;
            let s = hermitian_spectrum(&target_matrix(&doc, target, reverse)?);
            emit(s.values().iter().map(|x| format!("{x}\n")).collect())?;
        }
        Command::Det {
            method,
            target,
            file,
        } => {
            let doc = load(&file)?;
            let det = match method {
                Method::Lu => det_lu(&target_matrix(&doc, target, false)?.into_inner()).re,
                Method::Forests => {
                    let limits = limits()?;
                    let ord = doc.vertex_ordering();
                    let wg = match target {
                        Target::Lap => doc.weighted(),
                        Target::Dlmax => associated_complete_graph(&doc.graph(), &ord, Mode::Max)?,
                        Target::Dlmin => associated_complete_graph(&doc.graph(), &ord, Mode::Min)?,
                        Target::Adj => {
                            return Err(CliError::Usage(
                                "the forest expansion applies to Laplacians only".into(),
                            ))
                        }
                    };
                    det_via_forests(&wg, &limits)?
                }
            };
            emit(format!("{}\n", format_real(det)))?;
        }
        Command::Rank { target, file } => {
            let doc = load(&file)?;
            emit(format!(
                "{}\n",
                numerical_rank(&target_matrix(&doc, target, false)?, None)
            ))?;
        }
        Command::Balance { file } => {
            let doc = load(&file)?;
            emit(format!(
                "{}\n",
                if doc.graph().is_balanced() {
                    "balanced"
                } else {
                    "unbalanced"
                }
            ))?;
        }
        Command::Verify {
            theorem,
            seed,
            file,
        } => {
            let doc = load(&file)?;
            let theorem: u32 = theorem.parse().expect("restricted by clap");
            let outcome = verify(
                theorem,
                &doc.weighted(),
                &doc.vertex_ordering(),
                seed,
                &limits()?,
            )?;
            emit(format!("{outcome}\n"))?;
            if matches!(outcome, Outcome::Fail { .. }) {
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
    }
    Ok(EXIT_OK)
}

/// Parses `args` (program name first) and runs the command, writing results to
/// `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "gainlap: {e}");
            e.exit_code()
        }
    }
}
