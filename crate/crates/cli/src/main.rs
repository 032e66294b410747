//! `toric-chiral` command-line tool.
//!
//! Reads a fan (and, for most commands, a polynomial) as JSON and writes a
//! JSON report to stdout or `--out`. Exit codes: 0 on success, 1 when a
//! mathematical precondition fails (non-semiample divisor, non-anticanonical
//! polynomial, ...), 2 on I/O or parse errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use sha2::{Digest, Sha256};

use toric_chiral::chiral::ChiralRing;
use toric_chiral::cohomology::middle_cohomology;
use toric_chiral::coxring::{CoxRing, Polynomial};
use toric_chiral::divisors::semiample_quotient;
use toric_chiral::fan::Fan;
use toric_chiral::io::{self, InputError, InputHash, Metadata, PolySpec};
use toric_chiral::jacobian::JacobianRing;
use toric_chiral::Error;

#[derive(Parser, Debug)]
#[command(
    name = "toric-chiral",
    version,
    about = "Hodge numbers and chiral rings of toric hypersurfaces"
)]
struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a fan and summarize its class group and cohomology.
    Analyze {
        #[arg(long)]
        fan: String,
    },
    /// Analyze a semiample divisor: polytope, Iitaka dimension, quotient fan.
    Semiample {
        #[arg(long)]
        fan: String,
        /// Divisor file, or inline JSON such as `{"coefficients":[1,0,0]}`.
        #[arg(long)]
        divisor: String,
    },
    /// Hodge decomposition of the middle cohomology of the hypersurface.
    Hodge {
        #[command(flatten)]
        input: PolyInput,
        /// Recursion depth for lower-dimensional strata. Only 0 is supported.
        #[arg(long, default_value_t = 0)]
        depth: usize,
    },
    /// Chiral-ring basis, structure constants and pairings.
    Chiral {
        #[command(flatten)]
        input: PolyInput,
        /// Recover undetermined products from triple products via the pairing.
        #[arg(long)]
        complete_via_pairing: bool,
    },
    /// Evaluate specific products `u,v` or triple products `u,v,w`.
    Products {
        #[command(flatten)]
        input: PolyInput,
        /// Comma-separated basis indices; repeatable.
        #[arg(long, required = true)]
        query: Vec<String>,
        #[arg(long)]
        complete_via_pairing: bool,
    },
    /// Certify that the partial derivatives have no common zero off the
    /// exceptional set.
    Witness {
        #[command(flatten)]
        input: PolyInput,
        /// Largest power tried for each irrelevant-ideal generator.
        #[arg(long, default_value_t = 8)]
        kmax: usize,
        /// Use the generators `x_i ∂f/∂x_i` (regularity) instead of `∂f/∂x_i`.
        #[arg(long)]
        regular: bool,
    },
}

#[derive(Args, Debug)]
struct PolyInput {
    #[arg(long)]
    fan: String,
    /// Polynomial file or inline JSON; defaults to the anticanonical
    /// Fermat-type polynomial.
    #[arg(long)]
    poly: Option<String>,
    /// Seed for `"generator": "random"` polynomials (overrides the file).
    #[arg(long)]
    seed: Option<u64>,
}

/// A failed run, classified by exit code.
enum Failure {
    Math(Error),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::MalformedFan(_) | Error::InvalidInput(_) => Failure::Input(e.to_string()),
            other => Failure::Math(other),
        }
    }
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        match e {
            InputError::Math(m) => m.into(),
            other => Failure::Input(other.to_string()),
        }
    }
}

/// An input document: its text plus a provenance record.
struct Source {
    text: String,
    hash: InputHash,
}

/// Reads `arg` as inline JSON if it starts with `{`, otherwise as a path.
fn load(name: &str, arg: &str) -> Result<Source, Failure> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(Path::new(arg))
            .map_err(|e| Failure::Input(format!("cannot read {name} {arg:?}: {e}")))?
    };
    let sha256 = hex::encode(Sha256::digest(text.as_bytes()));
    Ok(Source {
        text,
        hash: InputHash {
            name: name.to_string(),
            sha256,
        },
    })
}

fn with_context(name: &str, e: InputError) -> Failure {
    match e {
        InputError::Json(j) => Failure::Input(format!("{name}: parse error: {j}")),
        other => other.into(),
    }
}

fn load_fan(arg: &str) -> Result<(Fan, InputHash), Failure> {
    let src = load("fan", arg)?;
    let fan = io::parse_fan(&src.text).map_err(|e| with_context("fan", e))?;
    Ok((fan, src.hash))
}

/// Loads fan and polynomial and builds the Jacobian ring.
fn load_jacobian(input: &PolyInput) -> Result<(Arc<JacobianRing>, Metadata), Failure> {
    let (fan, fan_hash) = load_fan(&input.fan)?;
    let ring = Arc::new(CoxRing::new(fan)?);
    let mut hashes = vec![fan_hash];
    let spec = match &input.poly {
        Some(p) => {
            let src = load("poly", p)?;
            hashes.push(src.hash);
            io::parse_poly_spec(&src.text).map_err(|e| with_context("poly", e))?
        }
        None => PolySpec::Generator {
            generator: "fermat".into(),
            degree: None,
            seed: None,
            range: None,
        },
    };
    let f: Polynomial = spec.to_polynomial(&ring, input.seed)?;
    if f.is_zero() {
        return Err(Failure::Input("polynomial is zero".into()));
    }
    let mut meta = Metadata::new(hashes);
    meta.seed = spec.seed(input.seed);
    if input.poly.is_none() {
        meta.notes
            .push("polynomial: Fermat-type generator in the anticanonical class".into());
    }
    Ok((Arc::new(JacobianRing::new(ring, f)), meta))
}

fn parse_query(q: &str) -> Result<Vec<usize>, Failure> {
    q.split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Failure::Input(format!("bad query {q:?}: expected indices like 3,5")))
        })
        .collect()
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let text = match &cli.command {
        Command::Analyze { fan } => {
            let (fan, h) = load_fan(fan)?;
            io::to_json(&io::analyze_report(&fan, Metadata::new(vec![h]))?)
        }
        Command::Semiample { fan, divisor } => {
            let (fan, h) = load_fan(fan)?;
            let src = load("divisor", divisor)?;
            let d = io::parse_divisor(&src.text).map_err(|e| with_context("divisor", e))?;
            let a = semiample_quotient(&fan, &d.coefficients)?;
            io::to_json(&io::semiample_report(&a, Metadata::new(vec![h, src.hash])))
        }
        Command::Hodge { input, depth } => {
            if *depth != 0 {
                return Err(Failure::Input(
                    "--depth > 0 is not supported: stratum contributions are reported as unknown".into(),
                ));
            }
            let (jr, meta) = load_jacobian(input)?;
            io::to_json(&io::hodge_report(&middle_cohomology(&jr)?, meta))
        }
        Command::Chiral {
            input,
            complete_via_pairing,
        } => {
            let (jr, meta) = load_jacobian(input)?;
            let cr = ChiralRing::new(jr)?;
            io::to_json(&io::chiral_report(&cr, *complete_via_pairing, meta)?)
        }
        Command::Products {
            input,
            query,
            complete_via_pairing,
        } => {
            let queries = query.iter().map(|q| parse_query(q)).collect::<Result<Vec<_>, _>>()?;
            let (jr, mut meta) = load_jacobian(input)?;
            let cr = ChiralRing::new(jr)?;
            meta.notes.push("regularity of f assumed".into());
            io::to_json(&io::products_report(&cr, &queries, *complete_via_pairing, meta)?)
        }
        Command::Witness { input, kmax, regular } => {
            let (jr, meta) = load_jacobian(input)?;
            let w = jr.quasismooth_witness(*kmax, *regular);
            io::to_json(&io::witness_report(&w, *regular, *kmax, meta))
        }
    };
    Ok(text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{text}");
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Math(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
