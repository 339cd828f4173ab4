//! Settings resolution: command-line flags override config-file keys, which
//! override per-command defaults.

use serde::Deserialize;

use mbqc_sim::channels::{AdParams, Channel, PdParams};
use mbqc_sim::fidelity::{BlochGrid, GridScheme};
use mbqc_sim::mbqc::{BranchConvention, GateKind, MeasurementSchedule};

use crate::args::SharedArgs;
use crate::CliError;

/// Flat key-value config file (TOML); every key mirrors a long flag.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub channel: Option<String>,
    pub lambda: Option<f64>,
    pub gamma0: Option<f64>,
    pub a: Option<f64>,
    pub tau: Option<f64>,
    pub gate: Option<String>,
    pub schedule: Option<String>,
    pub grid: Option<String>,
    pub scheme: Option<String>,
    pub branch_convention: Option<String>,
    pub out: Option<String>,
    pub format: Option<String>,
    pub t_max: Option<f64>,
    pub t_step: Option<f64>,
}

impl FileConfig {
    pub fn load(path: Option<&str>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(FileConfig::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("config file {path}: {e}")))?;
        toml::from_str(&text).map_err(|e| CliError::Arg(format!("config file {path}: {e}")))
    }
}

/// Built-in fallbacks a command supplies before resolution.
#[derive(Debug, Clone, Copy)]
pub struct Defaults {
    pub channel: &'static str,
    pub gate: &'static str,
    pub schedule: Option<&'static str>,
    pub out: &'static str,
    pub grid: Option<&'static str>,
}

impl Default for Defaults {
    fn default() -> Self {
        Defaults { channel: "ad", gate: "z", schedule: None, out: "out.csv", grid: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelKind {
    Ad,
    Pd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// A parsed schedule: code string or explicit times, length-checked at use.
#[derive(Debug, Clone)]
pub enum ScheduleSpec {
    Codes(Vec<u8>),
    Times(Vec<f64>),
}

impl ScheduleSpec {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        if s.contains(',') {
            let times = s
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<f64>()
                        .map_err(|_| CliError::Arg(format!("schedule time {x:?} is not a number")))
                })
                .collect::<Result<Vec<f64>, _>>()?;
            return Ok(ScheduleSpec::Times(times));
        }
        let digits: Vec<char> = if s.contains('-') {
            s.split('-').map(|p| p.trim().chars().next().unwrap_or(' ')).collect()
        } else {
            s.chars().collect()
        };
        let codes = digits
            .iter()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as u8)
                    .ok_or_else(|| CliError::Arg(format!("schedule code {s:?} is not 1/2/3 digits")))
            })
            .collect::<Result<Vec<u8>, _>>()?;
        Ok(ScheduleSpec::Codes(codes))
    }

    /// Expand to a validated schedule of the requested length.
    pub fn to_schedule(
        &self,
        channel: &Channel,
        len: usize,
    ) -> Result<MeasurementSchedule, CliError> {
        match self {
            ScheduleSpec::Codes(codes) => {
                if codes.len() != len {
                    return Err(CliError::Arg(format!(
                        "schedule has {} entries, this command needs {len}",
                        codes.len()
                    )));
                }
                Ok(MeasurementSchedule::from_codes(channel, codes)?)
            }
            ScheduleSpec::Times(times) => {
                if times.len() != len {
                    return Err(CliError::Arg(format!(
                        "schedule has {} entries, this command needs {len}",
                        times.len()
                    )));
                }
                Ok(match len {
                    4 => MeasurementSchedule::gate([times[0], times[1], times[2], times[3]])?,
                    3 => MeasurementSchedule::resource([times[0], times[1], times[2]])?,
                    _ => return Err(CliError::Arg(format!("unsupported schedule length {len}"))),
                })
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            ScheduleSpec::Codes(c) => {
                c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("-")
            }
            ScheduleSpec::Times(t) => {
                t.iter().map(|x| format!("{x}")).collect::<Vec<_>>().join(",")
            }
        }
    }
}

/// Fully resolved settings for one command invocation.
#[derive(Debug)]
pub struct Settings {
    pub channel_kind: ChannelKind,
    pub lambda: f64,
    pub gamma0: f64,
    pub a: f64,
    pub tau: f64,
    pub gate: GateKind,
    pub schedule: Option<ScheduleSpec>,
    pub grid: BlochGrid,
    pub convention: BranchConvention,
    pub out: String,
    pub format: OutputFormat,
    pub t_max: Option<f64>,
    pub t_step: Option<f64>,
    pub noiseless: bool,
    pub corrupt_ad_p: bool,
}

fn pick<T: Clone>(flag: &Option<T>, file: &Option<T>, fallback: T) -> T {
    flag.clone().unwrap_or_else(|| file.clone().unwrap_or(fallback))
}

fn pick_opt<T: Clone>(flag: &Option<T>, file: &Option<T>) -> Option<T> {
    flag.clone().or_else(|| file.clone())
}

impl Settings {
    pub fn resolve(args: &SharedArgs, defaults: Defaults) -> Result<Self, CliError> {
        let file = FileConfig::load(args.config.as_deref())?;

        let channel_kind = match pick(&args.channel, &file.channel, defaults.channel.into())
            .as_str()
        {
            "ad" => ChannelKind::Ad,
            "pd" => ChannelKind::Pd,
            other => return Err(CliError::Arg(format!("channel must be ad or pd, got {other:?}"))),
        };
        let gate = match pick(&args.gate, &file.gate, defaults.gate.into()).as_str() {
            "x" => GateKind::X,
            "z" => GateKind::Z,
            other => return Err(CliError::Arg(format!("gate must be x or z, got {other:?}"))),
        };
        let scheme = match pick(&args.scheme, &file.scheme, "angles".into()).as_str() {
            "angles" => GridScheme::AngleGrid,
            "sphere" => GridScheme::SphereUniform,
            other => {
                return Err(CliError::Arg(format!("scheme must be angles or sphere, got {other:?}")))
            }
        };
        let grid_text = pick(
            &args.grid,
            &file.grid,
            defaults.grid.unwrap_or("101x100").to_string(),
        );
        let grid = parse_grid(&grid_text, scheme)?;
        let convention = match pick(&args.branch_convention, &file.branch_convention,
            "weighted".into())
            .as_str()
        {
            "weighted" => BranchConvention::Weighted,
            "uniform" => BranchConvention::Uniform,
            other => {
                return Err(CliError::Arg(format!(
                    "branch-convention must be weighted or uniform, got {other:?}"
                )))
            }
        };
        let format = match pick(&args.format, &file.format, "csv".into()).as_str() {
            "csv" => OutputFormat::Csv,
            "json" => OutputFormat::Json,
            other => return Err(CliError::Arg(format!("format must be csv or json, got {other:?}"))),
        };
        let schedule = match pick_opt(&args.schedule, &file.schedule) {
            Some(text) => Some(ScheduleSpec::parse(&text)?),
            None => defaults.schedule.map(ScheduleSpec::parse).transpose()?,
        };

        Ok(Settings {
            channel_kind,
            lambda: pick(&args.lambda, &file.lambda, 1e-3),
            gamma0: pick(&args.gamma0, &file.gamma0, 10.0),
            a: pick(&args.a, &file.a, 1.0),
            tau: pick(&args.tau, &file.tau, 30.0),
            gate,
            schedule,
            grid,
            convention,
            out: pick(&args.out, &file.out, defaults.out.to_string()),
            format,
            t_max: pick_opt(&args.t_max, &file.t_max),
            t_step: pick_opt(&args.t_step, &file.t_step),
            noiseless: args.noiseless,
            corrupt_ad_p: args.corrupt_ad_p,
        })
    }

    /// The channel selected by --channel with the resolved parameters.
    pub fn channel(&self) -> Result<Channel, CliError> {
        Ok(match self.channel_kind {
            ChannelKind::Ad => Channel::Ad(AdParams::new(self.lambda, self.gamma0)?),
            ChannelKind::Pd => Channel::Pd(PdParams::new(self.a, self.tau)?),
        })
    }

    /// Both channels (for the two-column table commands).
    pub fn both_channels(&self) -> Result<(Channel, Channel), CliError> {
        Ok((
            Channel::Ad(AdParams::new(self.lambda, self.gamma0)?),
            Channel::Pd(PdParams::new(self.a, self.tau)?),
        ))
    }
}

fn parse_grid(text: &str, scheme: GridScheme) -> Result<BlochGrid, CliError> {
    let (a, b) = text
        .split_once(['x', 'X'])
        .ok_or_else(|| CliError::Arg(format!("grid must look like 101x100, got {text:?}")))?;
    let nt: usize = a
        .trim()
        .parse()
        .map_err(|_| CliError::Arg(format!("grid theta count {a:?} is not a number")))?;
    let np: usize = b
        .trim()
        .parse()
        .map_err(|_| CliError::Arg(format!("grid phi count {b:?} is not a number")))?;
    Ok(BlochGrid::new(nt, np, scheme)?)
}
