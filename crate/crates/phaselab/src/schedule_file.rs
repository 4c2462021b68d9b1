//! Line-oriented schedule files.
//!
//! ```text
//! phaselab-schedule v1
//! # comment
//! state schmidt 0.4 0.0          # or: state amplitudes re im re im re im re im
//! evolve-qubit 1
//! builtin minus
//! segment 0 0 1 6.283185307179586
//! ```
//!
//! The header must be the first non-blank line. `evolve-qubit` defaults to 1.
//! Built-ins expand to their segments, so a parsed schedule carries no memory
//! of how its segments were written.

use std::fmt::Write as _;

use phaselab_core::{
    builtin_minus, builtin_plus, schmidt_state, Axis, ComplexAmplitude, Qubit, RotationSchedule,
    RotationSegment, SchmidtParams, TwoQubitState,
};
use thiserror::Error;

pub const HEADER: &str = "phaselab-schedule v1";

/// Axes whose norm is within this distance of 1 are rescaled; others are rejected.
pub const AXIS_TOLERANCE: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScheduleFileError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{}{message}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
    Validation { line: Option<usize>, message: String },
}

fn parse_err(line: usize, message: impl Into<String>) -> ScheduleFileError {
    ScheduleFileError::Parse {
        line,
        message: message.into(),
    }
}

fn invalid(line: usize, message: impl Into<String>) -> ScheduleFileError {
    ScheduleFileError::Validation {
        line: Some(line),
        message: message.into(),
    }
}

fn numbers<const N: usize>(line: usize, args: &[&str]) -> Result<[f64; N], ScheduleFileError> {
    if args.len() != N {
        return Err(parse_err(
            line,
            format!("expected {N} numbers, found {}", args.len()),
        ));
    }
    let mut out = [0.0; N];
    for (slot, tok) in out.iter_mut().zip(args) {
        let x: f64 = tok
            .parse()
            .map_err(|_| parse_err(line, format!("invalid number `{tok}`")))?;
        if !x.is_finite() {
            return Err(parse_err(line, format!("non-finite number `{tok}`")));
        }
        *slot = x;
    }
    Ok(out)
}

fn parse_state(line: usize, args: &[&str]) -> Result<TwoQubitState, ScheduleFileError> {
    match args.split_first() {
        Some((&"schmidt", rest)) => {
            let [lambda0, theta] = numbers::<2>(line, rest)?;
            let params = SchmidtParams::new(lambda0, theta)
                .map_err(|_| invalid(line, format!("lambda0 = {lambda0} is outside [0, 1]")))?;
            Ok(schmidt_state(params))
        }
        Some((&"amplitudes", rest)) => {
            let v = numbers::<8>(line, rest)?;
            let amps = [0, 1, 2, 3].map(|k| ComplexAmplitude::new(v[2 * k], v[2 * k + 1]));
            TwoQubitState::new(amps).map_err(|_| invalid(line, "state amplitudes have zero norm"))
        }
        Some((other, _)) => Err(parse_err(line, format!("unknown state form `{other}`"))),
        None => Err(parse_err(line, "`state` needs `schmidt` or `amplitudes`")),
    }
}

fn parse_segment(line: usize, args: &[&str]) -> Result<RotationSegment, ScheduleFileError> {
    let [nx, ny, nz, duration] = numbers::<4>(line, args)?;
    let axis = Axis::normalized_within([nx, ny, nz], AXIS_TOLERANCE)
        .map_err(|_| invalid(line, format!("axis ({nx}, {ny}, {nz}) is not of unit length")))?;
    RotationSegment::new(axis, duration)
        .map_err(|_| invalid(line, format!("duration {duration} must be positive")))
}

pub fn parse_schedule(text: &str) -> Result<RotationSchedule, ScheduleFileError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, raw)| (i + 1, raw.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    match lines.next() {
        Some((_, l)) if l == HEADER => {}
        Some((n, l)) => return Err(parse_err(n, format!("expected header `{HEADER}`, found `{l}`"))),
        None => return Err(parse_err(1, format!("missing header `{HEADER}`"))),
    }

    let mut state: Option<TwoQubitState> = None;
    let mut qubit: Option<Qubit> = None;
    let mut segments = Vec::new();
    for (n, l) in lines {
        let tokens: Vec<&str> = l.split_whitespace().collect();
        let (keyword, args) = tokens.split_first().expect("line is not blank");
        match *keyword {
            "state" => {
                if state.is_some() {
                    return Err(parse_err(n, "duplicate `state` declaration"));
                }
                state = Some(parse_state(n, args)?);
            }
            "evolve-qubit" => {
                if qubit.is_some() {
                    return Err(parse_err(n, "duplicate `evolve-qubit` declaration"));
                }
                qubit = Some(match args {
                    ["1"] => Qubit::First,
                    ["2"] => Qubit::Second,
                    _ => return Err(parse_err(n, "`evolve-qubit` takes 1 or 2")),
                });
            }
            "segment" => segments.push(parse_segment(n, args)?),
            "builtin" => match args {
                ["plus"] => segments.extend(builtin_plus()),
                ["minus"] => segments.extend(builtin_minus()),
                _ => return Err(parse_err(n, "`builtin` takes `plus` or `minus`")),
            },
            other => return Err(parse_err(n, format!("unknown directive `{other}`"))),
        }
    }

    let initial = state.ok_or(ScheduleFileError::Validation {
        line: None,
        message: "missing `state` declaration".into(),
    })?;
    Ok(RotationSchedule::new(
        initial,
        qubit.unwrap_or(Qubit::First),
        segments,
    ))
}

/// Writes `schedule` in the v1 format with the state as explicit amplitudes
/// and every segment spelled out. Numbers use the shortest representation
/// that parses back to the same `f64`.
pub fn serialize(schedule: &RotationSchedule) -> String {
    let mut out = String::new();
    out.push_str(HEADER);
    out.push_str("\nstate amplitudes");
    for a in schedule.initial.amplitudes() {
        let _ = write!(out, " {:?} {:?}", a.re, a.im);
    }
    let _ = write!(out, "\nevolve-qubit {}\n", schedule.evolved_qubit.index());
    for seg in &schedule.segments {
        let [x, y, z] = seg.axis.components();
        let _ = writeln!(out, "segment {x:?} {y:?} {z:?} {:?}", seg.duration);
    }
    out
}
