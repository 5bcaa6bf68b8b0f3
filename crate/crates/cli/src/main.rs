//! `llab`: command-line access to the llab-core operations.
//!
//! Every verb reads its parameters from inline flags, from an input
//! document (`--input`), or both, with flags taking precedence. The report
//! is a JSON document tagged `"format": "llab/1"` that echoes the validated
//! input. Exit status: 0 success or PASS, 1 FAIL, 2 input error, 3 resource
//! limit.

mod input;
mod verbs;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::verbs::Failure;

#[derive(Parser, Debug)]
#[command(name = "llab", version, about = "Determinantal unions, limit linear series and Abel fibers on a two-component nodal curve")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Io {
    /// Input document: a file path, `-` for standard input, or inline JSON.
    #[arg(long)]
    input: Option<String>,
    /// Write the report to this path instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Default, Serialize)]
pub struct MinorFlags {
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    /// Overlap length; -1 selects the full product.
    #[arg(long, allow_negative_numbers = true)]
    m: Option<i64>,
}

#[derive(Args, Debug, Clone, Default, Serialize)]
pub struct UnionFlags {
    #[arg(long)]
    r: Option<usize>,
    /// Comma-separated multiplicities m_0,...,m_n.
    #[arg(long, value_delimiter = ',')]
    mults: Option<Vec<usize>>,
}

#[derive(Args, Debug, Clone, Default, Serialize)]
pub struct CertifyFlags {
    #[command(flatten)]
    #[serde(flatten)]
    minor: MinorFlags,
    #[command(flatten)]
    #[serde(flatten)]
    union: UnionFlags,
    /// Largest degree of the square grid [0, grid]^2.
    #[arg(long)]
    grid: Option<u32>,
    /// Oracle for a single scheme: `combinatorial` or `linear-algebra`.
    #[arg(long)]
    oracle: Option<String>,
}

#[derive(Args, Debug, Clone, Default, Serialize)]
pub struct SequenceFlags {
    #[arg(long)]
    d: Option<usize>,
    /// Vanishing sequence on Y, comma-separated.
    #[arg(long = "aY", value_delimiter = ',')]
    #[serde(rename = "aY")]
    a_y: Option<Vec<usize>>,
    /// Vanishing sequence on Z, comma-separated.
    #[arg(long = "aZ", value_delimiter = ',')]
    #[serde(rename = "aZ")]
    a_z: Option<Vec<usize>>,
}

#[derive(Args, Debug, Clone, Default, Serialize)]
pub struct EhFlags {
    #[command(flatten)]
    #[serde(flatten)]
    seq: SequenceFlags,
    #[arg(long)]
    r: Option<usize>,
}

#[derive(Args, Debug, Clone, Default, Serialize)]
pub struct ScanFlags {
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long = "d-max")]
    #[serde(rename = "dMax")]
    d_max: Option<usize>,
    #[arg(long = "r-max")]
    #[serde(rename = "rMax")]
    r_max: Option<usize>,
}

#[derive(Args, Debug, Clone, Default, Serialize)]
pub struct DegenerateFlags {
    #[command(flatten)]
    #[serde(flatten)]
    union: UnionFlags,
    /// Also specialize the family at this rational value of z.
    #[arg(long, allow_negative_numbers = true)]
    z: Option<String>,
}

#[derive(Args, Debug, Clone, Default, Serialize)]
pub struct SampleFlags {
    #[command(flatten)]
    #[serde(flatten)]
    union: UnionFlags,
    #[arg(long)]
    seed: Option<u64>,
    /// Number of random points when no explicit points are given.
    #[arg(long)]
    count: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Hilbert polynomial of a single minor scheme Q_{p,q,m}.
    HilbertMinor {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        flags: MinorFlags,
    },
    /// Hilbert polynomial and components of a union of minor schemes.
    HilbertUnion {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        flags: UnionFlags,
    },
    /// Compare a closed form with an independent oracle on a grid.
    Certify {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        flags: CertifyFlags,
    },
    /// Irreducible components of an Abel fiber.
    Fiber {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        flags: SequenceFlags,
    },
    /// Existence of a refined limit g^r_d with the given vanishing data.
    Eh {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        flags: EhFlags,
    },
    /// Seeded property scan: small fiber components rule out limit series.
    NoGrdsScan {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        flags: ScanFlags,
    },
    /// Check the axioms of an explicit limit series document.
    SeriesValidate {
        #[command(flatten)]
        io: Io,
    },
    /// Adapted sections and jump indices of an exact series.
    SeriesDiagonalize {
        #[command(flatten)]
        io: Io,
    },
    /// Union spec and components attached to an exact series.
    SeriesPg {
        #[command(flatten)]
        io: Io,
    },
    /// Generators of the degeneration family of a full union.
    Degenerate {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        flags: DegenerateFlags,
    },
    /// Check that points of the union arise as limits in the family.
    Sample {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        flags: SampleFlags,
    },
}

impl Verb {
    fn io(&self) -> &Io {
        match self {
            Verb::HilbertMinor { io, .. }
            | Verb::HilbertUnion { io, .. }
            | Verb::Certify { io, .. }
            | Verb::Fiber { io, .. }
            | Verb::Eh { io, .. }
            | Verb::NoGrdsScan { io, .. }
            | Verb::SeriesValidate { io }
            | Verb::SeriesDiagonalize { io }
            | Verb::SeriesPg { io }
            | Verb::Degenerate { io, .. }
            | Verb::Sample { io, .. } => io,
        }
    }

    fn run(&self) -> Result<verbs::Outcome, Failure> {
        let doc = input::read_document(self.io().input.as_deref())?;
        match self {
            Verb::HilbertMinor { flags, .. } => verbs::hilbert_minor(input::merge(doc, flags)?),
            Verb::HilbertUnion { flags, .. } => verbs::hilbert_union(input::merge(doc, flags)?),
            Verb::Certify { flags, .. } => verbs::certify(input::merge(doc, flags)?),
            Verb::Fiber { flags, .. } => verbs::fiber(input::merge(doc, flags)?),
            Verb::Eh { flags, .. } => verbs::eh(input::merge(doc, flags)?),
            Verb::NoGrdsScan { flags, .. } => verbs::no_grds_scan(input::merge(doc, flags)?),
            Verb::SeriesValidate { .. } => verbs::series_validate(input::series(doc)?),
            Verb::SeriesDiagonalize { .. } => verbs::series_diagonalize(input::series(doc)?),
            Verb::SeriesPg { .. } => verbs::series_pg(input::series(doc)?),
            Verb::Degenerate { flags, .. } => verbs::degenerate(input::merge(doc, flags)?),
            Verb::Sample { flags, .. } => verbs::sample(input::merge(doc, flags)?),
        }
    }
}

/// Writes through a temporary file in the target directory, then renames.
fn write_atomically(path: &Path, text: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.verb.run() {
        Ok(outcome) => outcome,
        Err(failure) => {
            eprintln!("llab: {}", failure.message);
            return ExitCode::from(failure.status);
        }
    };
    let mut text = serde_json::to_string_pretty(&outcome.report).expect("reports are plain JSON values");
    text.push('\n');
    let written = match &cli.verb.io().output {
        Some(path) => write_atomically(path, &text)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| format!("cannot write to standard output: {e}")),
    };
    if let Err(message) = written {
        eprintln!("llab: {message}");
        return ExitCode::from(verbs::STATUS_INPUT);
    }
    ExitCode::from(outcome.status)
}
