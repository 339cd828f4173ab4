//! The five data-producing subcommands.

use mbqc_sim::channels::{AdParams, PdParams};
use mbqc_sim::closedform::closed_form_average;
use mbqc_sim::fidelity::{self, cluster_average_fidelity};
use mbqc_sim::mbqc::{resource_fidelity, GateKind, MeasurementSchedule, ResourceKind};
use mbqc_sim::reference::{code_label, gate_codes, resource_codes};

use crate::args::SharedArgs;
use crate::config::{ChannelKind, Defaults, Settings};
use crate::output::{companion_path, presentation, raw, Table};
use crate::CliError;

fn echo_channel(table: &mut Table, s: &Settings) {
    match s.channel_kind {
        ChannelKind::Ad => {
            table.param("channel", "ad");
            table.param("lambda", s.lambda);
            table.param("gamma0", s.gamma0);
        }
        ChannelKind::Pd => {
            table.param("channel", "pd");
            table.param("a", s.a);
            table.param("tau", s.tau);
        }
    }
}

fn echo_both_channels(table: &mut Table, s: &Settings) {
    table.param("lambda", s.lambda);
    table.param("gamma0", s.gamma0);
    table.param("a", s.a);
    table.param("tau", s.tau);
}

fn echo_grid(table: &mut Table, s: &Settings) {
    table.param("grid", format!("{}x{}", s.grid.theta_count, s.grid.phi_count));
    table.param("scheme", s.grid.scheme.name());
}

/// Label for a time sample, rounded to 12 decimals so k·Δt products don't
/// carry trailing representation noise into the CSV.
fn time_label(t: f64) -> String {
    raw((t * 1e12).round() / 1e12)
}

/// Time samples k·Δt for k = 0..=round(t_max/Δt).
fn time_samples(t_max: f64, t_step: f64) -> Result<Vec<f64>, CliError> {
    if !(t_step > 0.0) || !(t_max >= 0.0) {
        return Err(CliError::Arg("need t-max ≥ 0 and t-step > 0".into()));
    }
    let n = (t_max / t_step).round() as usize;
    Ok((0..=n).map(|k| k as f64 * t_step).collect())
}

/// Grid-averaged cluster fidelity as a function of the common noise time.
pub fn cluster_curve(args: &SharedArgs) -> Result<(), CliError> {
    let s = Settings::resolve(args, Defaults { out: "cluster_curve.csv", ..Default::default() })?;
    let channel = s.channel()?;
    // Default spans cover the revival/collapse landmarks of each kernel.
    let (def_max, def_step) = match s.channel_kind {
        ChannelKind::Ad => (70.0, 0.5),
        ChannelKind::Pd => (7.0, 0.05),
    };
    let t_max = s.t_max.unwrap_or(def_max);
    let t_step = s.t_step.unwrap_or(def_step);

    let mut table = Table::new("cluster-curve", vec!["t", "fidelity"]);
    echo_channel(&mut table, &s);
    echo_grid(&mut table, &s);
    table.param("t_max", t_max);
    table.param("t_step", t_step);
    for t in time_samples(t_max, t_step)? {
        let f = cluster_average_fidelity(t, &channel, &s.grid)?;
        table.push(vec![time_label(t), raw(f.value)]);
    }
    table.write(&s.out, s.format)
}

/// Average gate fidelity for every nondecreasing schedule code, both
/// channels, via the analytical per-input expression averaged over the grid
/// (the `verify` command certifies that path against the full simulation).
pub fn gate_table(args: &SharedArgs) -> Result<(), CliError> {
    let s = Settings::resolve(args, Defaults { out: "gate_table.csv", ..Default::default() })?;
    let (ad, pd) = s.both_channels()?;
    let mut table = Table::new(
        "gate-table",
        vec!["code", "fidelity_ad", "fidelity_pd", "fidelity_ad_raw", "fidelity_pd_raw"],
    );
    echo_both_channels(&mut table, &s);
    echo_grid(&mut table, &s);
    table.param("method", "analytical-average");
    for codes in gate_codes() {
        let sa = MeasurementSchedule::from_codes(&ad, &codes)?;
        let sp = MeasurementSchedule::from_codes(&pd, &codes)?;
        let fa = closed_form_average(&ad, &sa, &s.grid)?;
        let fp = closed_form_average(&pd, &sp, &s.grid)?;
        table.push(vec![
            code_label(&codes),
            presentation(fa),
            presentation(fp),
            raw(fa),
            raw(fp),
        ]);
    }
    table.write(&s.out, s.format)
}

/// Resource-pair preparation fidelity for every nondecreasing schedule code,
/// both channels, by full simulation (the protocol has no analytical form).
pub fn resource_table(args: &SharedArgs) -> Result<(), CliError> {
    let s = Settings::resolve(args, Defaults { out: "resource_table.csv", ..Default::default() })?;
    let (ad, pd) = s.both_channels()?;
    let kind = match s.gate {
        GateKind::X => ResourceKind::X,
        GateKind::Z => ResourceKind::Z,
    };
    let mut table = Table::new("resource-table", vec!["code", "fidelity_ad", "fidelity_pd"]);
    echo_both_channels(&mut table, &s);
    table.param("resource", kind.name());
    table.param("convention", s.convention.name());
    for codes in resource_codes() {
        let sa = MeasurementSchedule::from_codes(&ad, &codes)?;
        let sp = MeasurementSchedule::from_codes(&pd, &codes)?;
        let fa = resource_fidelity(kind, &ad, &sa, s.convention)?;
        let fp = resource_fidelity(kind, &pd, &sp, s.convention)?;
        table.push(vec![code_label(&codes), presentation(fa), presentation(fp)]);
    }
    table.write(&s.out, s.format)
}

/// The dephasing kernel L(t) for the four documented memory times, plus a
/// companion damping-kernel p(t) file at the resolved damping parameters.
pub fn memory_curves(args: &SharedArgs) -> Result<(), CliError> {
    let s = Settings::resolve(args, Defaults { out: "memory_curves.csv", ..Default::default() })?;
    let t_max = s.t_max.unwrap_or(10.0);
    let t_step = s.t_step.unwrap_or(0.01);
    let taus = [30.0, 10.0, 5.0, 2.0];
    let kernels = taus
        .iter()
        .map(|&tau| PdParams::new(s.a, tau))
        .collect::<Result<Vec<_>, _>>()?;
    let samples = time_samples(t_max, t_step)?;

    let mut table =
        Table::new("memory-curves", vec!["t", "L_tau30", "L_tau10", "L_tau5", "L_tau2"]);
    table.param("a", s.a);
    table.param("t_max", t_max);
    table.param("t_step", t_step);
    for &t in &samples {
        let mut row = vec![time_label(t)];
        row.extend(kernels.iter().map(|k| raw(k.l(t))));
        table.push(row);
    }
    table.write(&s.out, s.format)?;

    let ad = AdParams::new(s.lambda, s.gamma0)?;
    let mut companion = Table::new("memory-curves", vec!["t", "p"]);
    companion.param("lambda", s.lambda);
    companion.param("gamma0", s.gamma0);
    companion.param("t_max", t_max);
    companion.param("t_step", t_step);
    for &t in &samples {
        companion.push(vec![time_label(t), raw(ad.p(t))]);
    }
    companion.write(&companion_path(&s.out, "_p"), s.format)
}

/// Per-input fidelity surface with dispersion statistics; the summary JSON
/// goes to stdout, the surface to the output file.
pub fn stddev_map(args: &SharedArgs) -> Result<(), CliError> {
    let s = Settings::resolve(
        args,
        Defaults {
            channel: "pd",
            schedule: Some("1-2-2-2"),
            out: "stddev_map.csv",
            ..Default::default()
        },
    )?;
    let channel = s.channel()?;
    let spec = s.schedule.as_ref().expect("stddev-map has a default schedule");
    let schedule = spec.to_schedule(&channel, 4)?;
    let report = fidelity::stddev_map(s.gate, &channel, &schedule, &s.grid, s.convention)?;
    let points = report.per_state.as_ref().expect("map retains the surface");

    let mut table =
        Table::new("stddev-map", vec!["theta", "phi", "fidelity", "abs_deviation"]);
    echo_channel(&mut table, &s);
    echo_grid(&mut table, &s);
    table.param("gate", s.gate.name());
    table.param("schedule", spec.label());
    table.param("convention", s.convention.name());
    for p in points {
        table.push(vec![
            raw(p.theta),
            raw(p.phi),
            raw(p.fidelity),
            raw((p.fidelity - report.value).abs()),
        ]);
    }
    table.write(&s.out, s.format)?;

    let summary = serde_json::json!({
        "count": points.len(),
        "mean": report.value,
        "std_dev": report.std_dev,
        "mean_abs_dev": report.mean_abs_dev,
        "max_dev": report.max_dev,
    });
    println!("{summary}");
    Ok(())
}
