//! Command-line surface: subcommands and the shared flag set.

use clap::{Args, Parser, Subcommand};

const CODE_TABLE: &str = "\
Schedule codes (each measurement picks one, nondecreasing):
  amplitude damping (ad):  1 -> t = 2*pi/d   2 -> 3*pi/d   3 -> 4*pi/d,  d = sqrt(2*gamma0*lambda - lambda^2)
                           (defaults: 1 -> 44.43, 2 -> 66.65, 3 -> 88.86)
  phase damping (pd):      1 -> t = pi       2 -> 3*pi/2   3 -> 2*pi

A --schedule value is either a code string (1-2-2-3 or 1223) or explicit
comma-separated times (e.g. 44.43,66.65,66.65,88.86). Gate sweeps take four
entries, resource sweeps three.

Config file: a flat TOML file whose keys mirror the long flags
(channel, lambda, gamma0, a, tau, gate, schedule, grid, scheme,
branch_convention, out, format, t_max, t_step). Precedence:
flags > config file > built-in defaults.";

/// Exact tables and curves for one-qubit gates driven by measurements on a
/// noisy five-qubit linear cluster.
#[derive(Debug, Parser)]
#[command(name = "mbqc", version, after_long_help = CODE_TABLE, after_help = CODE_TABLE)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Average cluster-state fidelity as a function of time (CSV: t, fidelity)
    ClusterCurve(SharedArgs),
    /// Average gate fidelity for all 15 nondecreasing schedule codes, both channels
    GateTable(SharedArgs),
    /// Resource-pair preparation fidelity for all 10 nondecreasing codes, both channels
    ResourceTable(SharedArgs),
    /// Dephasing memory kernel L(t) for tau in {30, 10, 5, 2}, plus a companion p(t) file
    MemoryCurves(SharedArgs),
    /// Per-input fidelity map and dispersion summary over the Bloch sphere
    StddevMap(SharedArgs),
    /// Cross-check the simulation against the analytical expressions and reference tables
    Verify(SharedArgs),
}

/// Flags shared by every subcommand; unset flags fall back to the config
/// file, then to built-in defaults.
#[derive(Debug, Default, Args)]
pub struct SharedArgs {
    /// Noise channel: ad (amplitude damping) or pd (phase damping)
    #[arg(long)]
    pub channel: Option<String>,

    /// Amplitude-damping bath linewidth (default 1e-3)
    #[arg(long)]
    pub lambda: Option<f64>,

    /// Amplitude-damping system rate (default 10)
    #[arg(long)]
    pub gamma0: Option<f64>,

    /// Dephasing coupling strength (default 1)
    #[arg(long)]
    pub a: Option<f64>,

    /// Dephasing memory time (default 30)
    #[arg(long)]
    pub tau: Option<f64>,

    /// Gate to teleport: x or z
    #[arg(long)]
    pub gate: Option<String>,

    /// Measurement schedule: code string or comma-separated times
    #[arg(long)]
    pub schedule: Option<String>,

    /// Bloch input grid as <n_theta>x<n_phi> (default 101x100)
    #[arg(long)]
    pub grid: Option<String>,

    /// Grid layout: angles (rectangular in theta,phi) or sphere (area-uniform)
    #[arg(long)]
    pub scheme: Option<String>,

    /// Outcome-branch combination: weighted or uniform
    #[arg(long = "branch-convention")]
    pub branch_convention: Option<String>,

    /// Output file path
    #[arg(long)]
    pub out: Option<String>,

    /// Output format: csv or json
    #[arg(long)]
    pub format: Option<String>,

    /// Flat TOML config file supplying any unset flag
    #[arg(long)]
    pub config: Option<String>,

    /// Last time sample of a curve command
    #[arg(long = "t-max")]
    pub t_max: Option<f64>,

    /// Time step of a curve command
    #[arg(long = "t-step")]
    pub t_step: Option<f64>,

    /// verify only: replace every schedule by t = 0 and require rows equal 1
    #[arg(long, default_value_t = false)]
    pub noiseless: bool,

    /// verify only: negate the damping kernel feeding the analytical path
    /// (mutation sanity check; must make verification fail)
    #[arg(long = "corrupt-ad-p", hide = true, default_value_t = false)]
    pub corrupt_ad_p: bool,
}
