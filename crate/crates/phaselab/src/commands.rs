//! Command implementations. Each returns the text destined for standard
//! output; data files are written directly.

use std::f64::consts::PI;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use phaselab_core::{
    final_overlap, phase_breakdown, phase_series, readout_probability, schmidt_state, Axis, Parity,
    PhaseError, Qubit, RotationSchedule, RotationSegment, SchmidtParams, CYCLIC_TOL,
};
use rayon::prelude::*;
use thiserror::Error;

use crate::records::{
    write_run_csv, write_run_json, write_sweep_csv, BreakdownSummary, RunRecord, SweepRecord,
};
use crate::schedule_file::{parse_schedule, ScheduleFileError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Schedule {
        path: PathBuf,
        source: ScheduleFileError,
    },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Range(String),
    #[error(transparent)]
    Numeric(#[from] PhaseError),
}

impl CliError {
    /// 1 usage, 2 unreadable or invalid input, 3 numeric or contract failure.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Schedule { .. } | CliError::Io { .. } | CliError::Range(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunFormat {
    Csv,
    Json,
}

/// Command output: the stdout text plus warnings for stderr.
#[derive(Debug, Default, Clone, PartialEq)]
pub struct Report {
    pub stdout: String,
    pub warnings: Vec<String>,
}

pub fn load_schedule(path: &Path) -> Result<RotationSchedule, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_schedule(&text).map_err(|source| CliError::Schedule {
        path: path.to_path_buf(),
        source,
    })
}

fn check_steps(steps: usize) -> Result<(), CliError> {
    if steps < 2 {
        return Err(CliError::Usage(format!(
            "--steps must be at least 2, got {steps}"
        )));
    }
    Ok(())
}

fn write_file(
    path: &Path,
    write: impl FnOnce(&mut BufWriter<File>) -> std::io::Result<()>,
) -> Result<(), CliError> {
    let io_err = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut w = BufWriter::new(File::create(path).map_err(io_err)?);
    write(&mut w).map_err(io_err)?;
    w.flush().map_err(io_err)
}

fn cyclic_warning(schedule: &RotationSchedule) -> Option<String> {
    let v = final_overlap(schedule).norm();
    ((v - 1.0).abs() > CYCLIC_TOL).then(|| format!("warning: schedule is not cyclic (|<psi0|psi(T)>| = {v})"))
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map_or_else(|| "undefined".to_string(), |v| v.to_string())
}

pub fn run(
    schedule: &RotationSchedule,
    steps: usize,
    out: &Path,
    format: RunFormat,
) -> Result<Report, CliError> {
    check_steps(steps)?;
    let series = phase_series(schedule, steps)?;
    let rows: Vec<RunRecord> = series.iter().map(RunRecord::from).collect();
    write_file(out, |w| match format {
        RunFormat::Csv => write_run_csv(w, &rows),
        RunFormat::Json => write_run_json(w, &rows),
    })?;

    let last = series.last().expect("a series has at least one sample");
    let crossings = series.iter().filter(|s| s.crossing).count();
    let stdout = format!(
        "samples: {}\nfinal total phase: {}\nfinal unwrapped phase: {}\ncrossings: {} ({})\n",
        series.len(),
        fmt_opt(last.total_principal),
        fmt_opt(last.total_unwrapped),
        crossings,
        Parity::of(crossings).as_str(),
    );
    Ok(Report {
        stdout,
        warnings: cyclic_warning(schedule).into_iter().collect(),
    })
}

pub fn breakdown(schedule: &RotationSchedule, steps: usize) -> Result<Report, CliError> {
    check_steps(steps)?;
    let b = phase_breakdown(schedule, steps)?;
    let json = serde_json::to_string(&BreakdownSummary::from(&b)).expect("summary serializes");
    Ok(Report {
        stdout: json + "\n",
        warnings: Vec::new(),
    })
}

/// `a:b:n`, `n` evenly spaced points from `a` to `b` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridRange {
    pub start: f64,
    pub end: f64,
    pub count: usize,
}

impl FromStr for GridRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, n] = parts.as_slice() else {
            return Err(format!("range `{s}` is not of the form start:end:count"));
        };
        let num = |t: &str| -> Result<f64, String> {
            t.trim()
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| format!("invalid number `{t}` in range `{s}`"))
        };
        let count: usize = n
            .trim()
            .parse()
            .map_err(|_| format!("invalid count `{n}` in range `{s}`"))?;
        if count == 0 {
            return Err(format!("range `{s}` needs at least one point"));
        }
        Ok(GridRange {
            start: num(a)?,
            end: num(b)?,
            count,
        })
    }
}

impl GridRange {
    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let step = (self.end - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    self.end
                } else {
                    self.start + step * i as f64
                }
            })
            .collect()
    }
}

pub struct SweepConfig {
    pub lambda0: GridRange,
    pub theta: GridRange,
    pub axis: Axis,
    pub turns: u32,
    pub steps: usize,
}

/// Fixed-axis full-turn runs over a `(λ₀, θ)` grid, `λ₀`-major. Points are
/// evaluated in parallel; row order does not depend on scheduling.
pub fn sweep_records(cfg: &SweepConfig) -> Result<Vec<SweepRecord>, CliError> {
    check_steps(cfg.steps)?;
    if cfg.turns == 0 {
        return Err(CliError::Usage("--turns must be at least 1".into()));
    }
    let lambdas = cfg.lambda0.points();
    if let Some(bad) = lambdas.iter().find(|l| !(0.0..=1.0).contains(*l)) {
        return Err(CliError::Range(format!("lambda0 = {bad} is outside [0, 1]")));
    }
    let thetas = cfg.theta.points();
    let segment = RotationSegment::new(cfg.axis, 2.0 * PI * f64::from(cfg.turns))?;
    let grid: Vec<(f64, f64)> = lambdas
        .iter()
        .flat_map(|&l| thetas.iter().map(move |&t| (l, t)))
        .collect();
    grid.par_iter()
        .map(|&(l, t)| {
            let initial = schmidt_state(SchmidtParams::new(l, t)?);
            let schedule = RotationSchedule::new(initial, Qubit::First, vec![segment]);
            Ok(SweepRecord::new(l, t, &phase_breakdown(&schedule, cfg.steps)?))
        })
        .collect()
}

pub fn sweep(cfg: &SweepConfig, out: &Path) -> Result<Report, CliError> {
    let rows = sweep_records(cfg)?;
    write_file(out, |w| write_sweep_csv(w, &rows))?;
    Ok(Report {
        stdout: format!("grid points: {}\n", rows.len()),
        warnings: Vec::new(),
    })
}

/// Click probability `P = ½(1 − Re <s0|U⊗I|s0>)` and the `|cos φ_t|` it implies
/// for a cyclic run.
pub fn readout(schedule: &RotationSchedule) -> Result<Report, CliError> {
    let p = readout_probability(schedule);
    Ok(Report {
        stdout: format!("P: {p}\n|cos phi_t|: {}\n", (1.0 - 2.0 * p).abs()),
        warnings: cyclic_warning(schedule).into_iter().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_ranges() {
        let r: GridRange = "0:1:5".parse().unwrap();
        assert_eq!(r.points(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let r: GridRange = "0.3:0.9:1".parse().unwrap();
        assert_eq!(r.points(), vec![0.3]);
        let r: GridRange = "0:3.141592653589793:3".parse().unwrap();
        assert_eq!(r.points()[2], std::f64::consts::PI);
        for bad in ["0:1", "0:1:0", "a:1:2", "0:1:-1", "0:1:2:3", "0:inf:2"] {
            assert!(bad.parse::<GridRange>().is_err(), "{bad}");
        }
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Usage(String::new()).exit_code(), 1);
        assert_eq!(CliError::Range(String::new()).exit_code(), 2);
        let e = CliError::Numeric(PhaseError::NotCyclic { overlap: 0.5 });
        assert_eq!(e.exit_code(), 3);
    }
}
