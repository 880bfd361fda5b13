//! `subgeom`: generate gallery surfaces, verify their properties, check the conformal atlas.
//!
//! Exit status: 0 when every check passes, 1 when a property check fails, 2 on a
//! configuration error (unknown names, bad flags, unreadable files).

mod commands;
mod config;
mod export;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "subgeom", version, about = "Constant ratio and principal direction submanifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample a gallery entry and write a mesh or point cloud.
    ///
    /// Gallery parameters may be given as `--KEY VALUE` (e.g. `--sigma 0.2`).
    Generate(GenerateArgs),
    /// Check properties of a gallery entry and write a JSON report.
    Verify(VerifyArgs),
    /// Conformal maps between model spaces.
    #[command(subcommand)]
    Atlas(AtlasCommand),
    /// Named immersions.
    #[command(subcommand)]
    Gallery(GalleryCommand),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Obj,
    Ply,
    Csv,
    Json,
}

#[derive(clap::Args, Debug)]
pub struct GenerateArgs {
    /// Gallery entry (see `gallery list`).
    pub name: Option<String>,
    /// Gallery parameter as KEY=VALUE; repeatable.
    #[arg(long = "param", value_name = "KEY=VALUE")]
    pub param: Vec<String>,
    /// Samples per axis: `64x64`, or one count for every axis.
    #[arg(long)]
    pub grid: Option<String>,
    /// Output file; standard output when absent.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Output format; inferred from the output extension when absent.
    #[arg(long, value_enum)]
    pub fmt: Option<Format>,
    /// `key=value` file; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Warping for `cr_warped`: sin, exp or sqrt2exp.
    #[arg(long)]
    pub rho: Option<String>,
}

#[derive(clap::Args, Debug)]
pub struct VerifyArgs {
    pub name: Option<String>,
    #[arg(long = "param", value_name = "KEY=VALUE")]
    pub param: Vec<String>,
    /// Ambient field: ddt, radial, killing, killing:i,j, ckilling:i, coord:i.
    #[arg(long)]
    pub field: Option<String>,
    /// Comma-separated: cr, pd, tn, t_constant, n_constant, nc, nc_perp, nc_unit, geodesic,
    /// polar, gauss, all.
    #[arg(long)]
    pub property: Option<String>,
    #[arg(long)]
    pub grid: Option<String>,
    /// JSON report; standard output when absent.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Per-point CSV of every report.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long = "fd-step")]
    pub fd_step: Option<f64>,
    /// Derivatives of the immersion: analytic or fd.
    #[arg(long)]
    pub scheme: Option<String>,
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub rho: Option<String>,
}

#[derive(Subcommand, Debug)]
enum AtlasCommand {
    /// List catalog maps.
    List,
    /// Conformality and field-relatedness residuals at random source points.
    Check(AtlasCheckArgs),
}

#[derive(clap::Args, Debug)]
pub struct AtlasCheckArgs {
    pub map: String,
    /// Warping of the mercator entry.
    #[arg(long, default_value = "sin")]
    pub rho: String,
    /// Dimension parameter of the map.
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value_t = 200)]
    pub points: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Integrate the mercator profile numerically even when a closed form exists.
    #[arg(long)]
    pub rk4: bool,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum GalleryCommand {
    /// List entries with their parameters, ambient spaces and claims.
    List,
}

/// Output piped into a reader that stopped early (`| head`).
fn broken_pipe(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        c.downcast_ref::<std::io::Error>().is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
            || c.downcast_ref::<serde_json::Error>()
                .is_some_and(|j| j.io_error_kind() == Some(std::io::ErrorKind::BrokenPipe))
    })
}

fn main() -> ExitCode {
    let args = config::rewrite_param_flags(std::env::args().collect());
    let cli = Cli::parse_from(args);
    let outcome = match cli.command {
        Command::Generate(a) => commands::generate(&a),
        Command::Verify(a) => commands::verify(&a),
        Command::Atlas(AtlasCommand::List) => commands::atlas_list(),
        Command::Atlas(AtlasCommand::Check(a)) => commands::atlas_check(&a),
        Command::Gallery(GalleryCommand::List) => commands::gallery_list(),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
