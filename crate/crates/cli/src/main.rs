use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod input;

use commands::Output;

#[derive(Parser, Debug)]
#[command(name = "dessin", version, about = "Dessins, surface algebras and lattice embeddings")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Permutation triples [sigma, alpha, phi].
    #[command(subcommand)]
    Constellation(ConstellationCmd),
    /// Medial quiver with its gentle relations.
    #[command(subcommand)]
    Quiver(QuiverCmd),
    /// Glued product of hereditary orders.
    #[command(subcommand)]
    Order(OrderCmd),
    /// Affine permutations in window notation.
    #[command(subcommand)]
    Affine(AffineCmd),
    /// Lattices in Q((x))^n.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Embeddings of nilpotent data into lattices.
    #[command(subcommand)]
    Lusztig(LusztigCmd),
    /// Reduced words in the free group on x, y.
    #[command(subcommand)]
    F2(F2Cmd),
    /// String modules and sl2 representations.
    #[command(subcommand)]
    Gp(GpCmd),
}

#[derive(Subcommand, Debug)]
pub enum ConstellationCmd {
    Validate { input: String },
    Genus { input: String },
    Monodromy {
        input: String,
        #[arg(long, default_value_t = dessin_core::permgroup::DEFAULT_MONODROMY_CAP)]
        cap: usize,
    },
    /// Random valid constellation of even degree.
    Random {
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum QuiverCmd {
    Build { input: String },
    Axioms { input: String },
    Dot { input: String },
}

#[derive(Subcommand, Debug)]
pub enum OrderCmd {
    Build { input: String },
    /// Tests a tuple of matrices, one per vertex order, for membership.
    Member {
        input: String,
        #[arg(long)]
        element: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum AffineCmd {
    Validate {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        window: String,
    },
    Split {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        window: String,
    },
    Matrix {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        #[arg(long, default_value_t = dessin_core::DEFAULT_PRECISION)]
        precision: i64,
    },
    /// `u v` with `(u v)(i) = u(v(i))`.
    Compose {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        #[arg(long, allow_hyphen_values = true)]
        with: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum LatticeCmd {
    /// Pairwise equality table for a JSON list of bases.
    Equal { input: String },
    Component { input: String },
    /// Checks a periodic chain given as a JSON list, or the standard flag.
    Flag {
        input: Option<String>,
        #[arg(long, conflicts_with = "input")]
        standard: Option<usize>,
        #[arg(long, default_value_t = dessin_core::DEFAULT_PRECISION)]
        precision: i64,
    },
}

#[derive(Subcommand, Debug)]
pub enum LusztigCmd {
    /// Lattice of a nilpotent matrix.
    Embed {
        matrix: String,
        #[arg(long, default_value_t = dessin_core::DEFAULT_PRECISION)]
        precision: i64,
    },
    Equivariance {
        matrix: String,
        #[arg(long)]
        g: String,
        #[arg(long, default_value_t = dessin_core::DEFAULT_PRECISION)]
        precision: i64,
    },
    /// Nilpotency, big matrix and lattices of a cyclic-quiver representation.
    Rep {
        input: String,
        #[arg(long, value_enum, default_value_t = Mode::Composite)]
        mode: Mode,
        #[arg(long, default_value_t = dessin_core::DEFAULT_PRECISION)]
        precision: i64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Composite,
    Vanishing,
}

#[derive(Subcommand, Debug)]
pub enum F2Cmd {
    Encode { word: String },
    Decode {
        bits: String,
        #[arg(long)]
        copy: u8,
    },
    Compare { first: String, second: String },
}

#[derive(Subcommand, Debug)]
pub enum GpCmd {
    String { zigzag: String },
    Sym { n: usize },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(Output { text, status }) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::from(status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.status())
        }
    }
}
