//! Command-line front end.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::diagrams::{enumerate_diagrams, CastelnuovoDiagram, HilbertFunction};
use crate::graph::{build_hilbert_graph, emit, Format};
use crate::incidence::{resolve_incidence, CoverPair, VerdictLine};
use crate::resolution::generic_betti;
use crate::strata::stratum_dim;
use crate::verify::sweep_n;

#[derive(Debug, Parser)]
#[command(
    name = "hilbert-strata",
    version,
    about = "Strata of the Hilbert scheme of points in the plane"
)]
pub struct Cli {
    /// Number of worker threads (defaults to all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub workers: Option<u32>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the Castelnuovo diagrams of weight n, one per line.
    Enumerate {
        #[arg(long, value_parser = positive)]
        n: u32,
    },
    /// Print the generic Betti table of a Hilbert function.
    Betti {
        /// Castelnuovo diagram "1,2,1" or Hilbert function "1,3,4,..".
        #[arg(long)]
        phi: String,
    },
    /// Print the dimension of a stratum.
    Dim {
        #[arg(long)]
        phi: String,
    },
    /// Decide whether the stratum of psi meets the closure of phi's.
    Resolve {
        #[arg(long)]
        phi: String,
        #[arg(long)]
        psi: String,
    },
    /// Write the Hilbert graph of Gamma_n.
    Graph {
        #[arg(long, value_parser = positive)]
        n: u32,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
        /// Output file; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check the incidence criteria on every length-zero pair for n in range.
    Verify {
        #[arg(long, default_value_t = 1, value_parser = positive)]
        n_min: u32,
        #[arg(long, value_parser = positive)]
        n_max: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Dot,
    Json,
}

impl From<GraphFormat> for Format {
    fn from(f: GraphFormat) -> Self {
        match f {
            GraphFormat::Dot => Format::Dot,
            GraphFormat::Json => Format::Json,
        }
    }
}

fn positive(s: &str) -> Result<u32, String> {
    match s.parse::<u32>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

const EXIT_COUNTEREXAMPLE: u8 = 1;
const EXIT_USAGE: u8 = 2;

/// Accepts either text form: a Hilbert function ends in `..`, anything else
/// is read as a diagram.
pub fn parse_hilbert_function(text: &str) -> Result<HilbertFunction, String> {
    let text = text.trim();
    if text.ends_with("..") {
        text.parse::<HilbertFunction>()
            .map_err(|e| format!("bad Hilbert function {text:?}: {e}"))
    } else {
        text.parse::<CastelnuovoDiagram>()
            .map(|d| d.hilbert_function())
            .map_err(|e| format!("bad diagram {text:?}: {e}"))
    }
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

/// Runs a parsed command, writing results to `out`.
pub fn run(cli: Cli, out: &mut (dyn Write + Send)) -> io::Result<ExitCode> {
    let pool = match cli.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w as usize)
            .build(),
        None => rayon::ThreadPoolBuilder::new().build(),
    }
    .map_err(io::Error::other)?;
    pool.install(|| dispatch(cli.command, out))
}

fn dispatch(command: Command, out: &mut (dyn Write + Send)) -> io::Result<ExitCode> {
    match command {
        Command::Enumerate { n } => {
            for d in enumerate_diagrams(n) {
                writeln!(out, "{d}")?;
            }
        }
        Command::Betti { phi } => match parse_hilbert_function(&phi) {
            Ok(h) => writeln!(out, "{}", generic_betti(&h))?,
            Err(e) => return Ok(usage_error(e)),
        },
        Command::Dim { phi } => match parse_hilbert_function(&phi) {
            Ok(h) => writeln!(out, "{}", stratum_dim(&h))?,
            Err(e) => return Ok(usage_error(e)),
        },
        Command::Resolve { phi, psi } => {
            let (phi, psi) = match (parse_hilbert_function(&phi), parse_hilbert_function(&psi)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => return Ok(usage_error(e)),
            };
            let pair = match CoverPair::new(phi, psi) {
                Ok(p) => p,
                Err(e) => return Ok(usage_error(e)),
            };
            let verdict = resolve_incidence(&pair);
            writeln!(out, "{}", VerdictLine(&pair, &verdict))?;
        }
        Command::Graph { n, format, output } => {
            let bytes = emit(&build_hilbert_graph(n), format.into());
            match output {
                Some(path) => fs::write(path, bytes)?,
                None => out.write_all(&bytes)?,
            }
        }
        Command::Verify { n_min, n_max } => {
            if n_min > n_max {
                return Ok(usage_error(format!(
                    "--n-min {n_min} exceeds --n-max {n_max}"
                )));
            }
            let mut failed = false;
            for n in n_min..=n_max {
                let summary = sweep_n(n);
                writeln!(out, "{summary}")?;
                for c in &summary.counterexamples {
                    writeln!(out, "{c}")?;
                }
                failed |= !summary.counterexamples.is_empty();
            }
            if failed {
                writeln!(out, "counterexamples found")?;
                return Ok(ExitCode::from(EXIT_COUNTEREXAMPLE));
            }
            writeln!(out, "all equivalences hold")?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// Entry point used by the binary; parse failures exit with status 2.
pub fn main_from_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli, &mut io::stdout()) {
        Ok(code) => code,
        Err(e) => usage_error(e),
    }
}
