use std::fs;
use std::process::ExitCode;

use brick_cli::commands::{self, CliError, ExitStatus, Report, ScheduleSource};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "bricks", version, about = "Exact brick complexes: validation, corners, refinement and genus")]
struct Cli {
    /// Print a JSON report instead of the text summary.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify every brick pair; exit 1 if any pair is improperly joined.
    Validate { input: String },
    /// Brick graph degrees and corners.
    Graph {
        input: String,
        /// Exit 1 if any brick has degree at most 3.
        #[arg(long)]
        assert_cornerless: bool,
    },
    /// Euler characteristic and genus of the exposed surface.
    Genus {
        input: String,
        /// Cross-check chi against the voxel count (rectilinear inputs only).
        #[arg(long)]
        oracle: bool,
        /// Voxel size for --oracle (default: coarsest grid that fits).
        #[arg(long, requires = "oracle")]
        resolution: Option<String>,
    },
    /// Totals, chi and genus of a piece-count table.
    TableChi {
        #[arg(required_unless_present = "builtin", conflicts_with = "builtin")]
        input: Option<String>,
        #[arg(long, value_parser = ["buttressed-octahedron", "zz"])]
        builtin: Option<String>,
    },
    /// Apply a refinement schedule.
    Refine {
        input: String,
        #[arg(long, required_unless_present = "schedule", conflicts_with = "schedule")]
        standard_zz: bool,
        #[arg(long)]
        schedule: Option<String>,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Build zz-immersed, zz-embedded or a named fixture.
    Build {
        name: String,
        #[arg(long)]
        cube_side: Option<String>,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Write brick faces as an OBJ quad mesh.
    ExportObj {
        input: String,
        #[arg(long)]
        exposed_only: bool,
        #[arg(short, long)]
        output: Option<String>,
    },
}

fn run(command: Command) -> Result<(Report, Option<String>), CliError> {
    Ok(match command {
        Command::Validate { input } => (commands::cmd_validate(&commands::load_complex(&input)?), None),
        Command::Graph { input, assert_cornerless } => {
            (commands::cmd_graph(&commands::load_complex(&input)?, assert_cornerless)?, None)
        }
        Command::Genus { input, oracle, resolution } => {
            let c = commands::load_complex(&input)?;
            let oracle = if oracle { Some(resolution.as_deref().map(commands::scalar_arg).transpose()?) } else { None };
            (commands::cmd_genus(&c, oracle)?, None)
        }
        Command::TableChi { input, builtin } => {
            let table = match (input, builtin) {
                (_, Some(name)) => commands::builtin_table(&name)?,
                (Some(path), None) => commands::load_table(&path)?,
                (None, None) => unreachable!("clap requires one of them"),
            };
            (commands::cmd_table_chi(&table)?, None)
        }
        Command::Refine { input, standard_zz, schedule, output } => {
            let c = commands::load_complex(&input)?;
            let source = match schedule {
                Some(path) if !standard_zz => ScheduleSource::Schedule(commands::load_schedule(&path)?),
                _ => ScheduleSource::StandardZZ,
            };
            (commands::cmd_refine(&c, &source)?, output)
        }
        Command::Build { name, cube_side, output } => {
            let side = cube_side.as_deref().map(commands::scalar_arg).transpose()?;
            (commands::cmd_build(&name, side)?, output)
        }
        Command::ExportObj { input, exposed_only, output } => {
            (commands::cmd_export_obj(&commands::load_complex(&input)?, exposed_only)?, output)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, output) = match run(cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_status().code() as u8);
        }
    };
    let rendered = if cli.json { report.to_json() + "\n" } else { report.to_text() };
    match (&report.artifact, output) {
        (Some(artifact), Some(path)) => {
            if let Err(e) = fs::write(&path, artifact) {
                eprintln!("error: {path}: {e}");
                return ExitCode::from(ExitStatus::Input.code() as u8);
            }
            print!("{rendered}");
        }
        // The artifact owns stdout; the report goes to stderr.
        (Some(artifact), None) => {
            print!("{artifact}");
            eprint!("{rendered}");
        }
        (None, _) => print!("{rendered}"),
    }
    ExitCode::from(report.exit.code() as u8)
}
