//! CSV and JSON row formats.
//!
//! Floats are written in the shortest form that parses back to the same
//! value; undefined phases are written as `nan` in CSV and `null` in JSON.

use std::io::{self, Write};

use phaselab_core::{PhaseBreakdown, PhaseSample};
use serde::Serialize;

pub const RUN_HEADER: [&str; 14] = [
    "t",
    "sp_re",
    "sp_im",
    "phase_total_principal",
    "phase_total_unwrapped",
    "phase_dyn",
    "bloch_x",
    "bloch_y",
    "bloch_z",
    "so3_ax",
    "so3_ay",
    "so3_az",
    "so3_angle",
    "crossing_flag",
];

pub const SWEEP_HEADER: [&str; 7] = [
    "lambda0",
    "theta",
    "phi_total",
    "phi_dyn",
    "phi_geo",
    "crossings",
    "closure_residual",
];

pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else {
        format!("{x:?}")
    }
}

fn format_opt(x: Option<f64>) -> String {
    x.map_or_else(|| "nan".to_string(), format_float)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RunRecord {
    pub t: f64,
    pub sp_re: f64,
    pub sp_im: f64,
    pub phase_total_principal: Option<f64>,
    pub phase_total_unwrapped: Option<f64>,
    pub phase_dyn: f64,
    pub bloch_x: f64,
    pub bloch_y: f64,
    pub bloch_z: f64,
    pub so3_ax: f64,
    pub so3_ay: f64,
    pub so3_az: f64,
    pub so3_angle: f64,
    pub crossing_flag: u8,
}

impl From<&PhaseSample> for RunRecord {
    fn from(s: &PhaseSample) -> Self {
        let [ax, ay, az] = s.so3.axis.components();
        RunRecord {
            t: s.time,
            sp_re: s.sp.re,
            sp_im: s.sp.im,
            phase_total_principal: s.total_principal,
            phase_total_unwrapped: s.total_unwrapped,
            phase_dyn: s.dynamical,
            bloch_x: s.bloch.x,
            bloch_y: s.bloch.y,
            bloch_z: s.bloch.z,
            so3_ax: ax,
            so3_ay: ay,
            so3_az: az,
            so3_angle: s.so3.angle,
            crossing_flag: u8::from(s.crossing),
        }
    }
}

impl RunRecord {
    fn fields(&self) -> [String; 14] {
        [
            format_float(self.t),
            format_float(self.sp_re),
            format_float(self.sp_im),
            format_opt(self.phase_total_principal),
            format_opt(self.phase_total_unwrapped),
            format_float(self.phase_dyn),
            format_float(self.bloch_x),
            format_float(self.bloch_y),
            format_float(self.bloch_z),
            format_float(self.so3_ax),
            format_float(self.so3_ay),
            format_float(self.so3_az),
            format_float(self.so3_angle),
            self.crossing_flag.to_string(),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRecord {
    pub lambda0: f64,
    pub theta: f64,
    pub phi_total: f64,
    pub phi_dyn: f64,
    pub phi_geo: f64,
    pub crossings: usize,
    pub closure_residual: f64,
}

impl SweepRecord {
    pub fn new(lambda0: f64, theta: f64, b: &PhaseBreakdown) -> Self {
        SweepRecord {
            lambda0,
            theta,
            phi_total: b.total,
            phi_dyn: b.dynamical,
            phi_geo: b.geometric,
            crossings: b.crossings,
            closure_residual: b.closure_residual,
        }
    }

    fn fields(&self) -> [String; 7] {
        [
            format_float(self.lambda0),
            format_float(self.theta),
            format_float(self.phi_total),
            format_float(self.phi_dyn),
            format_float(self.phi_geo),
            self.crossings.to_string(),
            format_float(self.closure_residual),
        ]
    }
}

/// JSON form of a [`PhaseBreakdown`], keys in fixed order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BreakdownSummary {
    pub total: f64,
    pub dynamical: f64,
    pub geometric: f64,
    pub crossings: usize,
    pub parity: &'static str,
    pub degenerate: bool,
    pub closure_residual: f64,
}

impl From<&PhaseBreakdown> for BreakdownSummary {
    fn from(b: &PhaseBreakdown) -> Self {
        BreakdownSummary {
            total: b.total,
            dynamical: b.dynamical,
            geometric: b.geometric,
            crossings: b.crossings,
            parity: b.parity.as_str(),
            degenerate: b.degenerate,
            closure_residual: b.closure_residual,
        }
    }
}

fn write_csv<W: Write, const N: usize>(
    out: W,
    header: [&str; N],
    rows: impl Iterator<Item = [String; N]>,
) -> io::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.flush()
}

pub fn write_run_csv<W: Write>(out: W, rows: &[RunRecord]) -> io::Result<()> {
    write_csv(out, RUN_HEADER, rows.iter().map(RunRecord::fields))
}

pub fn write_sweep_csv<W: Write>(out: W, rows: &[SweepRecord]) -> io::Result<()> {
    write_csv(out, SWEEP_HEADER, rows.iter().map(SweepRecord::fields))
}

/// A JSON array with one object per row, followed by a newline.
pub fn write_run_json<W: Write>(mut out: W, rows: &[RunRecord]) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut out, rows)?;
    out.write_all(b"\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for x in [0.1, -2.5e-300, 1.0, std::f64::consts::PI, 1e21, -0.0] {
            assert_eq!(format_float(x).parse::<f64>().unwrap().to_bits(), x.to_bits());
        }
        assert_eq!(format_float(f64::NAN), "nan");
        assert_eq!(format_float(1.0), "1.0");
    }

    #[test]
    fn csv_headers() {
        let mut buf = Vec::new();
        write_run_csv(&mut buf, &[]).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            format!("{}\n", RUN_HEADER.join(","))
        );
        let mut buf = Vec::new();
        write_sweep_csv(&mut buf, &[]).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "lambda0,theta,phi_total,phi_dyn,phi_geo,crossings,closure_residual\n"
        );
    }

    #[test]
    fn undefined_phase_is_nan() {
        let row = RunRecord {
            t: 0.5,
            sp_re: 0.0,
            sp_im: 0.0,
            phase_total_principal: None,
            phase_total_unwrapped: None,
            phase_dyn: 0.0,
            bloch_x: 0.0,
            bloch_y: 0.0,
            bloch_z: 0.0,
            so3_ax: 0.0,
            so3_ay: 0.0,
            so3_az: 1.0,
            so3_angle: 0.0,
            crossing_flag: 1,
        };
        let mut buf = Vec::new();
        write_run_csv(&mut buf, &[row]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text.lines().nth(1).unwrap(),
            "0.5,0.0,0.0,nan,nan,0.0,0.0,0.0,0.0,0.0,0.0,1.0,0.0,1"
        );
        let mut buf = Vec::new();
        write_run_json(&mut buf, &[row]).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert!(v[0]["phase_total_principal"].is_null());
        assert_eq!(v[0]["crossing_flag"], 1);
    }
}
