//! `plexmesh` command-line driver.
//!
//! Every subcommand prints one JSON document on stdout. Wall-clock numbers,
//! where reported, live under a `timing` key so the rest of the document is
//! reproducible byte for byte.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use plexmesh::io::{bundle_to_raw, raw_to_bundle, read_gmsh, write_gmsh};
use plexmesh::partition::{build_dual_graph, partition_cells, PartitionMap, PartitionMethod};
use plexmesh::MeshBundle;

pub mod commands;
pub mod report;

/// Exit status for an invalid command line.
pub const EXIT_USAGE: i32 = 1;
/// Exit status for unreadable or malformed input.
pub const EXIT_INPUT: i32 = 2;
/// Exit status for input that parses but cannot be processed.
pub const EXIT_VALIDATION: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "plexmesh",
    version,
    about = "Unstructured mesh topology toolkit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimension, stratum sizes and label counts of a mesh.
    Info { file: PathBuf },
    /// Partition the cells and report edge cut and imbalance.
    Partition {
        file: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        nparts: u32,
        #[arg(long, default_value_t = PartitionMethod::GreedyBfs)]
        method: PartitionMethod,
        /// Write the per-cell rank table (`cell,rank`) here.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Split the mesh over simulated ranks.
    Distribute {
        file: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        nparts: u32,
        #[arg(long, default_value_t = PartitionMethod::GreedyBfs)]
        method: PartitionMethod,
        /// Directory for rank{r}.msh, sf.json and report.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Renumber with reverse Cuthill-McKee and report the bandwidth change.
    Reorder {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// P1 sparsity pattern as `row,col` CSV.
    Spy {
        file: PathBuf,
        #[arg(long)]
        rcm: bool,
        /// Write the CSV here and print a JSON summary instead.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare preprocessor-style and run-time distribution start-up.
    Bench {
        file: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        nparts: u32,
        #[arg(long, default_value_t = 0)]
        fields: u32,
        #[arg(long, default_value_t = PartitionMethod::GreedyBfs)]
        method: PartitionMethod,
    },
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Validation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Validation(_) => EXIT_VALIDATION,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) | CliError::Validation(m) => f.write_str(m),
        }
    }
}

impl From<plexmesh::Error> for CliError {
    fn from(e: plexmesh::Error) -> Self {
        if e.is_input_error() {
            CliError::Input(e.to_string())
        } else {
            CliError::Validation(e.to_string())
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `args` (program name first), runs the command and returns the
/// process exit status.
pub fn run<I, A>(args: I) -> i32
where
    I: IntoIterator<Item = A>,
    A: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match execute(&cli, &mut out) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("plexmesh: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> CliResult<()> {
    match &cli.command {
        Command::Info { file } => commands::info(file, out),
        Command::Partition {
            file,
            nparts,
            method,
            csv,
        } => commands::partition(file, *nparts as usize, *method, csv.as_deref(), out),
        Command::Distribute {
            file,
            nparts,
            method,
            out: dir,
        } => commands::distribute(file, *nparts as usize, *method, dir.as_deref(), out),
        Command::Reorder { file, out: dest } => commands::reorder(file, dest.as_deref(), out),
        Command::Spy {
            file,
            rcm,
            out: dest,
        } => commands::spy(file, *rcm, dest.as_deref(), out),
        Command::Bench {
            file,
            nparts,
            fields,
            method,
        } => commands::bench(file, *nparts as usize, *fields as usize, *method, out),
    }
}

pub(crate) fn load(path: &Path) -> CliResult<MeshBundle> {
    let file = File::open(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let raw =
        read_gmsh::<f64, _>(BufReader::new(file)).map_err(|e| CliError::from(e).with_path(path))?;
    raw_to_bundle(&raw).map_err(|e| CliError::from(e).with_path(path))
}

pub(crate) fn save(bundle: &MeshBundle, path: &Path) -> CliResult<()> {
    let raw = bundle_to_raw(bundle)?;
    let file =
        File::create(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let mut w = BufWriter::new(file);
    write_gmsh(&raw, &mut w)?;
    w.flush()?;
    Ok(())
}

pub(crate) fn split(
    bundle: &MeshBundle,
    nparts: usize,
    method: PartitionMethod,
) -> CliResult<PartitionMap> {
    let graph = build_dual_graph(&bundle.plex)?;
    Ok(partition_cells(
        &graph,
        nparts,
        method,
        Some(&bundle.cell_centroids()),
    )?)
}

pub(crate) fn emit<S: serde::Serialize>(value: &S, out: &mut dyn Write) -> CliResult<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

impl CliError {
    fn with_path(self, path: &Path) -> CliError {
        match self {
            CliError::Input(m) => CliError::Input(format!("{}: {m}", path.display())),
            CliError::Validation(m) => CliError::Validation(format!("{}: {m}", path.display())),
        }
    }
}
