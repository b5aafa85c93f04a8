//! frobenia: exact idempotents, averaging relations, and decomposition
//! matrices for split Frobenius algebras, from the command line.
//!
//! Output goes to stdout as JSON (or aligned text with --table); a run
//! manifest with input hashes goes to stderr. Exit codes: 0 success,
//! 1 verification failure, 2 input error.

mod cmds;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use sha2::{Digest, Sha256};

use cmds::{Failure, Phase};

#[derive(Parser)]
#[command(
    name = "frobenia",
    version,
    about = "exact structure of split Frobenius algebras: idempotents, \
             averaging relations, decomposition matrices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Aligned text output instead of JSON.
    #[arg(long, global = true)]
    pub table: bool,
    /// Seed for sampled coverage; the FROBENIA_SEED variable overrides it.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads across independent PIMs; assembly stays ordered.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Subcommand)]
pub enum Command {
    /// Validate an algebra file and report its trace-form structure.
    Check { file: PathBuf },
    /// Gram matrix and dual basis vectors.
    DualBasis { file: PathBuf },
    /// Nakayama automorphism matrix.
    Nakayama { file: PathBuf },
    /// Basis of the Jacobson radical.
    Radical { file: PathBuf },
    /// Projective indecomposables with their primitive idempotents.
    Pims { file: PathBuf },
    /// Socle-first adapted bases for all PIMs.
    Adapt { file: PathBuf },
    /// Structure tensor c(i,j,s,t) of each adapted PIM.
    CTensor {
        file: PathBuf,
        /// Cover every pair (s,t) regardless of dimension.
        #[arg(long)]
        full: bool,
        /// Structured covering set plus this many seeded random pairs.
        #[arg(long, conflicts_with = "full")]
        sample: Option<usize>,
    },
    /// Machine-check the averaging relations on every PIM.
    FsVerify {
        file: PathBuf,
        /// Cover every pair (s,t) regardless of dimension.
        #[arg(long)]
        full: bool,
        /// Structured covering set plus this many seeded random pairs.
        #[arg(long, conflicts_with = "full")]
        sample: Option<usize>,
    },
    /// Primitive idempotents from the lower-left block formulas.
    Idempotents { file: PathBuf },
    /// Projectivity certificates for the regular module and all PIMs.
    Gaschutz { file: PathBuf },
    /// Decomposition matrix of the reduction at a prime.
    Decomp {
        file: PathBuf,
        /// L for rational or ramified primes, L,[c0,c1,...] with a residue
        /// factor for unramified cyclotomic primes.
        #[arg(long)]
        prime: String,
    },
    /// Check the projective restriction matrix against the transpose.
    Reciprocity {
        file: PathBuf,
        /// Prime, same syntax as decomp.
        #[arg(long)]
        prime: String,
    },
    /// Excluded-prime sets certifying trivial decomposition columns.
    Criteria {
        file: PathBuf,
        /// Comma-separated basis indices generating the algebra.
        #[arg(long)]
        generators: Option<String>,
    },
    /// Build an Iwahori-Hecke algebra and emit it as an algebra file.
    Hecke {
        /// Catalog type: A1..A4, B2, B3, D4, H3, or I2:m.
        #[arg(long = "type", conflicts_with = "coxeter_matrix")]
        ctype: Option<String>,
        /// Raw Coxeter matrix as a JSON array of rows.
        #[arg(long)]
        coxeter_matrix: Option<String>,
        /// Parameter: root:e for v = zeta_e, fp:p,q for v = q in F_p, or one.
        #[arg(long)]
        param: String,
        /// Specialize at this prime after building, same syntax as decomp.
        #[arg(long)]
        prime: Option<String>,
    },
    /// Decomposition matrix of a Hecke algebra at a root of unity.
    JamesCheck {
        /// Catalog type, as for hecke.
        #[arg(long = "type")]
        ctype: String,
        /// Order of the root of unity v = zeta_e.
        #[arg(long)]
        e: u32,
        /// Rational prime to reduce at.
        #[arg(long)]
        ell: u64,
        /// Image of zeta_e in F_ell; implied for e <= 2 and ramified ell.
        #[arg(long)]
        root: Option<u64>,
    },
    /// Write the bundled corpus as JSON files.
    Examples {
        #[arg(long, default_value = "examples")]
        out: PathBuf,
    },
}

#[derive(Serialize)]
struct InputHash {
    path: String,
    sha256: String,
}

#[derive(Serialize)]
struct RunManifest {
    command: String,
    inputs: Vec<InputHash>,
    seed: u64,
    version: &'static str,
    elapsed_ms: u64,
}

fn input_files(cmd: &Command) -> Vec<&PathBuf> {
    match cmd {
        Command::Check { file }
        | Command::DualBasis { file }
        | Command::Nakayama { file }
        | Command::Radical { file }
        | Command::Pims { file }
        | Command::Adapt { file }
        | Command::CTensor { file, .. }
        | Command::FsVerify { file, .. }
        | Command::Idempotents { file }
        | Command::Gaschutz { file }
        | Command::Decomp { file, .. }
        | Command::Reciprocity { file, .. }
        | Command::Criteria { file, .. } => vec![file],
        Command::Hecke { .. } | Command::JamesCheck { .. } | Command::Examples { .. } => vec![],
    }
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, Failure> {
    match std::env::var("FROBENIA_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| Failure {
            phase: Phase::Input,
            code: "invalid-input",
            message: format!("FROBENIA_SEED must be an unsigned integer, got {s:?}"),
        }),
        Err(_) => Ok(flag.unwrap_or(frobenia_core::DEFAULT_SEED)),
    }
}

fn hash_inputs(files: &[&PathBuf]) -> Result<Vec<InputHash>, Failure> {
    let mut out = Vec::with_capacity(files.len());
    for f in files {
        let bytes = std::fs::read(f).map_err(|e| Failure {
            phase: Phase::Input,
            code: "io",
            message: format!("{}: {e}", f.display()),
        })?;
        let digest = Sha256::digest(&bytes);
        let mut hex = String::with_capacity(64);
        for b in digest {
            hex.push_str(&format!("{b:02x}"));
        }
        out.push(InputHash { path: f.display().to_string(), sha256: hex });
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();

    let mut inputs = Vec::new();
    let result = resolve_seed(cli.seed).and_then(|seed| {
        inputs = hash_inputs(&input_files(&cli.command))?;
        cmds::dispatch(&cli.command, seed, cli.jobs)
    });

    let (code, stdout) = match &result {
        Ok(out) => {
            let text = if cli.table {
                out.table.trim_end().to_string()
            } else {
                serde_json::to_string_pretty(&out.json).expect("report serializes")
            };
            (if out.pass { 0u8 } else { 1u8 }, text)
        }
        Err(f) => {
            let phase = match f.phase {
                Phase::Input => "input",
                Phase::Run => "run",
            };
            let v = serde_json::json!({
                "error": { "code": f.code, "message": f.message, "phase": phase }
            });
            let code = match f.phase {
                Phase::Input => 2u8,
                Phase::Run => 1u8,
            };
            (code, serde_json::to_string_pretty(&v).expect("error serializes"))
        }
    };
    println!("{stdout}");

    let manifest = RunManifest {
        command: std::env::args().skip(1).collect::<Vec<_>>().join(" "),
        inputs,
        seed: resolve_seed(cli.seed).unwrap_or(frobenia_core::DEFAULT_SEED),
        version: env!("CARGO_PKG_VERSION"),
        elapsed_ms: started.elapsed().as_millis() as u64,
    };
    eprintln!("{}", serde_json::to_string(&manifest).expect("manifest serializes"));
    ExitCode::from(code)
}
