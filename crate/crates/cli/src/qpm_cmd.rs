use std::fmt::Write as _;

use clap::{Args, Subcommand};
use concur_core::format::fmt12;
use concur_core::qpm::{find_concurrences, qpm_period, shg_curve, ConcurrenceOptions, QpmInteraction, SellmeierSet, TensorLabel};
use concur_core::{Error, Result};

use crate::plot::{tuning_script, CurveSeries};
use crate::Outcome;

#[derive(Debug, Subcommand)]
pub enum QpmCommand {
    /// Poling period that phase-matches SHG at one temperature.
    Period {
        #[command(flatten)]
        target: Target,
        /// Crystal temperature, °C.
        #[arg(long, default_value_t = 25.0, allow_hyphen_values = true)]
        temp: f64,
    },
    /// SHG power versus temperature as CSV.
    Curve {
        #[command(flatten)]
        target: Target,
        /// Poling period in µm; default: the period matched at --temp.
        #[arg(long)]
        period: Option<f64>,
        #[arg(long, default_value_t = 25.0, allow_hyphen_values = true)]
        temp: f64,
        /// Crystal length, mm.
        #[arg(long, default_value_t = 10.0)]
        length: f64,
        /// Temperature range `lo:hi` in °C.
        #[arg(long, default_value = "0:100", value_parser = parse_range, allow_hyphen_values = true)]
        t_range: (f64, f64),
        #[arg(long, default_value_t = 2001)]
        steps: usize,
    },
    /// Periods and temperatures where lobes of two interactions coincide.
    Concur {
        /// First interaction as `label:order`.
        #[arg(long, default_value = "yzy:1", value_parser = parse_interaction)]
        first: (TensorLabel, u32),
        /// Second interaction as `label:order`.
        #[arg(long, default_value = "zzz:5", value_parser = parse_interaction)]
        second: (TensorLabel, u32),
        /// Fundamental wavelength, µm.
        #[arg(long, default_value_t = 1.064)]
        wavelength: f64,
        /// Poling period range `lo:hi` in µm.
        #[arg(long, default_value = "41.5:42.5", value_parser = parse_range)]
        period_range: (f64, f64),
        #[arg(long, default_value = "0:100", value_parser = parse_range, allow_hyphen_values = true)]
        t_range: (f64, f64),
        /// Side lobes considered on each side of the main lobe.
        #[arg(long, default_value_t = 1)]
        lobes: u32,
        #[arg(long, default_value_t = 10.0)]
        length: f64,
        #[arg(long, default_value_t = 1000)]
        period_steps: usize,
        /// Largest lobe temperature gap reported, °C.
        #[arg(long, default_value_t = 0.5)]
        tolerance: f64,
        /// Period for the plot-script overlay; default: best concurrence.
        #[arg(long)]
        plot_period: Option<f64>,
    },
}

#[derive(Debug, Args)]
pub struct Target {
    /// Tensor element: yzy, zzz or yyy.
    pub label: TensorLabel,
    #[arg(long, default_value_t = 1)]
    pub order: u32,
    /// Fundamental wavelength, µm.
    #[arg(long, default_value_t = 1.064)]
    pub wavelength: f64,
}

fn parse_range(s: &str) -> std::result::Result<(f64, f64), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected lo:hi, got {s:?}"))?;
    let a: f64 = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b: f64 = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    Ok((a, b))
}

fn parse_interaction(s: &str) -> std::result::Result<(TensorLabel, u32), String> {
    let (l, m) = s.split_once(':').unwrap_or((s, "1"));
    let label = l.parse::<TensorLabel>().map_err(|e| e.to_string())?;
    let order = m.trim().parse().map_err(|e| format!("order {m:?}: {e}"))?;
    Ok((label, order))
}

fn interaction(set: &SellmeierSet, label: TensorLabel, wavelength: f64, order: u32) -> Result<QpmInteraction> {
    QpmInteraction::from_dataset(set, label, wavelength, order)
}

fn describe(q: &QpmInteraction) -> String {
    format!("{} m={}", q.label, q.order)
}

pub fn run(cmd: &QpmCommand, set: &SellmeierSet) -> Result<Outcome> {
    match cmd {
        QpmCommand::Period { target, temp } => {
            let q = interaction(set, target.label, target.wavelength, target.order)?;
            let p = qpm_period(set, &q, *temp)?;
            Ok(Outcome { text: format!("{}\n", fmt12(p)), code: 0, plot: None })
        }
        QpmCommand::Curve { target, period, temp, length, t_range, steps } => {
            let q = interaction(set, target.label, target.wavelength, target.order)?;
            let period = match period {
                Some(p) => *p,
                None => qpm_period(set, &q, *temp)?,
            };
            let c = shg_curve(set, &q, period, *length, *t_range, *steps)?;
            let mut text = String::new();
            let _ = writeln!(text, "# {} at {} um, period {} um, length {} mm, dataset {}", describe(&q), fmt12(q.fundamental), fmt12(period), fmt12(*length), set.material);
            let _ = writeln!(text, "# power_normalized = sinc^2(dk L / 2); peak power d_eff^2 L^2 = {} (pm/V)^2 mm^2", fmt12(c.peak_power));
            text.push_str(&c.to_csv());
            let markers: Vec<f64> = c.main_peak().map(|p| vec![p.temperature]).unwrap_or_default();
            let plot = tuning_script(
                &format!("{} tuning curve, period {} um", describe(&q), fmt12(period)),
                &[CurveSeries { label: describe(&q), temperatures: &c.temperatures, power: &c.power }],
                &markers,
            );
            Ok(Outcome { text, code: 0, plot: Some(plot) })
        }
        QpmCommand::Concur { first, second, wavelength, period_range, t_range, lobes, length, period_steps, tolerance, plot_period } => {
            let q1 = interaction(set, first.0, *wavelength, first.1)?;
            let q2 = interaction(set, second.0, *wavelength, second.1)?;
            let opts = ConcurrenceOptions { length_mm: *length, period_steps: *period_steps, tolerance_c: *tolerance };
            let found = find_concurrences(set, &q1, &q2, *period_range, *t_range, *lobes, &opts)?;
            let mut text = String::new();
            let _ = writeln!(
                text,
                "# {} with {}, periods {}:{} um, {} grid steps, lobe depth {lobes}, length {} mm, dataset {}",
                describe(&q1),
                describe(&q2),
                fmt12(period_range.0),
                fmt12(period_range.1),
                period_steps,
                fmt12(*length),
                set.material
            );
            let _ = writeln!(text, "period_um,temperature_C,lobe_first,lobe_second,combined_efficiency,temperature_gap_C");
            for c in &found {
                let _ = writeln!(
                    text,
                    "{},{},{},{},{},{}",
                    fmt12(c.period),
                    fmt12(c.temperature),
                    c.lobes.0,
                    c.lobes.1,
                    fmt12(c.combined_efficiency),
                    fmt12(c.temperature_gap)
                );
            }
            let overlay = plot_period.or(found.first().map(|c| c.period)).unwrap_or(0.5 * (period_range.0 + period_range.1));
            let steps = ((t_range.1 - t_range.0) / 0.05).round().max(1.0) as usize + 1;
            let c1 = shg_curve(set, &q1, overlay, *length, *t_range, steps)?;
            let c2 = shg_curve(set, &q2, overlay, *length, *t_range, steps)?;
            let markers: Vec<f64> = found.iter().filter(|c| (c.period - overlay).abs() <= 0.02).map(|c| c.temperature).collect();
            let plot = tuning_script(
                &format!("{} and {} at period {} um", describe(&q1), describe(&q2), fmt12(overlay)),
                &[
                    CurveSeries { label: describe(&q1), temperatures: &c1.temperatures, power: &c1.power },
                    CurveSeries { label: describe(&q2), temperatures: &c2.temperatures, power: &c2.power },
                ],
                &markers,
            );
            let code = if found.is_empty() { 1 } else { 0 };
            Ok(Outcome { text, code, plot: Some(plot) })
        }
    }
}

/// Dataset from `path`, or the bundled one.
pub fn load_dataset(path: Option<&std::path::Path>) -> Result<SellmeierSet> {
    match path {
        Some(p) => SellmeierSet::from_path(p),
        None => SellmeierSet::shipped_rta(),
    }
    .map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("dataset: {m}")),
        other => other,
    })
}
