//! `geomgraph`: geometric problems solved through graph algorithms.
//!
//! Exit status: 0 on success, 1 when `--verify` finds a discrepancy, 2 on
//! unreadable input or bad arguments.

mod commands;
mod generate;
mod report;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use commands::{ClusterQuery, Outcome};
use report::VerifyStatus;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "geomgraph",
    version,
    about = "Geometric problems solved through graph algorithms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Run the brute-force oracle when the instance is small enough.
    #[arg(long)]
    verify: bool,
    /// Write the machine-readable report to standard output.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct Figure {
    /// Write an SVG figure.
    #[arg(long, value_name = "PATH")]
    svg: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Vertex guards from a triangulation, or from a quadrilateralization.
    Gallery {
        /// Polygon file (.poly).
        #[arg(long = "in", value_name = "PATH")]
        input: PathBuf,
        /// Convex quadrilateralization (.quads) of an orthogonal polygon.
        #[arg(long, value_name = "PATH")]
        quads: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        figure: Figure,
    },
    /// Minimum partition of an orthogonal polygon into rectangles.
    Rectpart {
        #[arg(long = "in", value_name = "PATH")]
        input: PathBuf,
        /// Write the rectangles (.rects).
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        figure: Figure,
    },
    /// Largest cluster within a squared diameter, or the tightest k points.
    Cluster {
        /// Point file (.pts).
        #[arg(long = "in", value_name = "PATH")]
        input: PathBuf,
        /// Bound on the squared diameter.
        #[arg(long, value_name = "RATIONAL", conflicts_with = "k", required_unless_present = "k")]
        d2: Option<String>,
        /// Cluster size.
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        figure: Figure,
    },
    /// Minimum bends for a rectilinear map.
    Bends {
        /// Map file (.map).
        #[arg(long = "in", value_name = "PATH")]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// A single triangle strip through a closed mesh.
    Strip {
        /// Mesh file (OFF).
        #[arg(long = "in", value_name = "PATH")]
        input: PathBuf,
        /// Write the strip as one line of triangle indices.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        /// Write the refined mesh the strip indexes into (OFF).
        #[arg(long, value_name = "PATH")]
        mesh_out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        figure: Figure,
    },
    /// Maximize the smallest angle of a zonotopal tiling.
    Tiling {
        /// Tiling file (.tiling).
        #[arg(long = "in", value_name = "PATH")]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        figure: Figure,
    },
    /// Optimal star-metric embedding of a finite metric.
    Star {
        /// Distance file (.dist).
        #[arg(long = "in", value_name = "PATH")]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Generate an instance file.
    Gen {
        #[arg(value_enum)]
        family: generate::Family,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Family-specific size parameter.
        #[arg(long)]
        size: Option<usize>,
        /// Destination; standard output when omitted.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        /// Destination of the quadrilateralization, for families that have one.
        #[arg(long, value_name = "PATH")]
        quads: Option<PathBuf>,
    },
}

fn write_file(path: &Path, body: &str) -> Result<()> {
    std::fs::write(path, body).with_context(|| format!("cannot write {}", path.display()))
}

fn solve(command: Command) -> Result<Option<(Outcome, bool, Option<PathBuf>)>> {
    Ok(Some(match command {
        Command::Gallery {
            input,
            quads,
            common,
            figure,
        } => (
            commands::gallery(&input, quads.as_deref(), common.verify, figure.svg.is_some())?,
            common.json,
            figure.svg,
        ),
        Command::Rectpart {
            input,
            out,
            common,
            figure,
        } => (
            commands::rectpart(&input, out.as_deref(), common.verify, figure.svg.is_some())?,
            common.json,
            figure.svg,
        ),
        Command::Cluster {
            input,
            d2,
            k,
            common,
            figure,
        } => {
            let query = match (d2, k) {
                (Some(d2), _) => ClusterQuery::MaxDiameter(commands::parse_rational(&d2)?),
                (None, Some(k)) => ClusterQuery::Size(k),
                (None, None) => unreachable!("clap requires one of --d2 and --k"),
            };
            (
                commands::cluster(&input, query, common.verify, figure.svg.is_some())?,
                common.json,
                figure.svg,
            )
        }
        Command::Bends { input, common } => (commands::bends(&input, common.verify)?, common.json, None),
        Command::Strip {
            input,
            out,
            mesh_out,
            common,
            figure,
        } => (
            commands::strip(
                &input,
                out.as_deref(),
                mesh_out.as_deref(),
                common.verify,
                figure.svg.is_some(),
            )?,
            common.json,
            figure.svg,
        ),
        Command::Tiling { input, common, figure } => (
            commands::tiling(&input, common.verify, figure.svg.is_some())?,
            common.json,
            figure.svg,
        ),
        Command::Star { input, common } => (commands::star(&input, common.verify)?, common.json, None),
        Command::Gen {
            family,
            seed,
            size,
            out,
            quads,
        } => {
            let (body, quad_body) = generate::generate(family, seed, size)?;
            match out {
                Some(p) => write_file(&p, &body)?,
                None => print!("{body}"),
            }
            match (quads, quad_body) {
                (Some(p), Some(q)) => write_file(&p, &q)?,
                (Some(_), None) => anyhow::bail!("{family:?} has no quadrilateralization"),
                _ => {}
            }
            return Ok(None);
        }
    }))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let start = Instant::now();
    let solved = solve(cli.command).and_then(|s| {
        if let Some((outcome, _, Some(path))) = &s {
            write_file(path, outcome.svg.as_deref().expect("figure requested"))?;
        }
        Ok(s)
    });
    let (outcome, json) = match solved {
        Ok(Some((outcome, json, _))) => (outcome, json),
        Ok(None) => return ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let report = &outcome.report;
    let body = if json { report.to_json() } else { report.to_text() };
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(body.as_bytes()).and_then(|_| stdout.flush()).is_err() {
        return ExitCode::from(2);
    }
    eprintln!("wall time: {:.3}s", start.elapsed().as_secs_f64());
    match report.verification.status {
        VerifyStatus::Failed => ExitCode::from(1),
        _ => ExitCode::SUCCESS,
    }
}
