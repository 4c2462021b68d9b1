//! Piecewise-constant-axis rotation schedules acting on one qubit.
//!
//! A segment `(n̂, t)` applies `exp(-i t n̂·σ/2)` to the evolved qubit. The
//! duration is the rotation angle in radians.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{PhaseError, Result};
use crate::state::{Axis, Qubit, TwoQubitState, Unitary2};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationSegment {
    pub axis: Axis,
    pub duration: f64,
}

impl RotationSegment {
    pub fn new(axis: Axis, duration: f64) -> Result<Self> {
        if duration <= 0.0 || !duration.is_finite() {
            return Err(PhaseError::Domain("segment duration must be positive and finite"));
        }
        Ok(RotationSegment { axis, duration })
    }

    pub fn unitary(&self) -> Unitary2 {
        Unitary2::rotation(self.axis, self.duration)
    }

    /// The segment that undoes this one.
    pub fn inverse(&self) -> Self {
        RotationSegment {
            axis: -self.axis,
            duration: self.duration,
        }
    }
}

const THIRD_TURN: f64 = 2.0 * PI / 3.0;

fn diagonal_axis(sx: f64, sy: f64, sz: f64) -> Axis {
    let k = (1.0f64 / 3.0).sqrt();
    Axis::normalized_within([k * sx, k * sy, k * sz], 1e-12).expect("diagonal axis is unit length")
}

fn third_turns(signs: [[f64; 3]; 4]) -> Vec<RotationSegment> {
    signs
        .iter()
        .map(|s| RotationSegment {
            axis: diagonal_axis(s[0], s[1], s[2]),
            duration: THIRD_TURN,
        })
        .collect()
}

/// `A → B → F → D → A`: four 2π/3 rotations whose product is `+I`.
pub fn builtin_plus() -> Vec<RotationSegment> {
    third_turns([
        [-1.0, -1.0, -1.0],
        [1.0, -1.0, -1.0],
        [-1.0, -1.0, 1.0],
        [-1.0, 1.0, 1.0],
    ])
}

/// `A → B → F → Ē → Ā`: four 2π/3 rotations whose product is `−I`. The
/// cumulative rotation reaches the border of the SO(3) ball at `t = 4π/3`.
pub fn builtin_minus() -> Vec<RotationSegment> {
    third_turns([
        [-1.0, -1.0, -1.0],
        [1.0, -1.0, -1.0],
        [-1.0, -1.0, -1.0],
        [1.0, -1.0, -1.0],
    ])
}

/// A complete experiment: initial state, evolved qubit and the rotation sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct RotationSchedule {
    pub segments: Vec<RotationSegment>,
    pub evolved_qubit: Qubit,
    pub initial: TwoQubitState,
}

impl RotationSchedule {
    pub fn new(initial: TwoQubitState, evolved_qubit: Qubit, segments: Vec<RotationSegment>) -> Self {
        RotationSchedule {
            segments,
            evolved_qubit,
            initial,
        }
    }

    pub fn total_duration(&self) -> f64 {
        self.segments.iter().map(|s| s.duration).sum()
    }

    /// Start time of each segment followed by the total duration.
    pub fn boundary_times(&self) -> Vec<f64> {
        let mut times = Vec::with_capacity(self.segments.len() + 1);
        let mut t = 0.0;
        times.push(t);
        for seg in &self.segments {
            t += seg.duration;
            times.push(t);
        }
        times
    }

    /// Exact products of whole segments: `B₀ = I`, `B_{k+1} = U_k B_k`.
    pub fn boundary_unitaries(&self) -> Vec<Unitary2> {
        let mut out = Vec::with_capacity(self.segments.len() + 1);
        let mut acc = Unitary2::identity();
        out.push(acc);
        for seg in &self.segments {
            acc = seg.unitary() * acc;
            out.push(acc);
        }
        out
    }

    pub fn total_unitary(&self) -> Unitary2 {
        self.segments
            .iter()
            .fold(Unitary2::identity(), |acc, seg| seg.unitary() * acc)
    }

    /// Cumulative unitary at an arbitrary time, clamped to `[0, T]`.
    pub fn unitary_at(&self, t: f64) -> Unitary2 {
        let mut acc = Unitary2::identity();
        let mut start = 0.0;
        for seg in &self.segments {
            let end = start + seg.duration;
            if t < end {
                let elapsed = (t - start).max(0.0);
                return Unitary2::rotation(seg.axis, elapsed) * acc;
            }
            acc = seg.unitary() * acc;
            start = end;
        }
        acc
    }

    /// Uniform samples of the cumulative unitary. Each segment contributes
    /// `samples_per_segment` points including both endpoints; shared
    /// boundaries appear once.
    pub fn cumulative_unitaries(&self, samples_per_segment: usize) -> Result<Vec<(f64, Unitary2)>> {
        if samples_per_segment < 2 {
            return Err(PhaseError::Domain("samples_per_segment must be at least 2"));
        }
        let steps = samples_per_segment - 1;
        let mut out = Vec::with_capacity(1 + self.segments.len() * steps);
        let mut boundary = Unitary2::identity();
        let mut start = 0.0;
        out.push((0.0, boundary));
        for seg in &self.segments {
            for j in 1..steps {
                let elapsed = seg.duration * j as f64 / steps as f64;
                out.push((start + elapsed, Unitary2::rotation(seg.axis, elapsed) * boundary));
            }
            boundary = seg.unitary() * boundary;
            start += seg.duration;
            out.push((start, boundary));
        }
        Ok(out)
    }

    /// Appends the exact inverse of the current segments in reverse order,
    /// producing a schedule whose total unitary is the identity.
    pub fn with_reversal_completion(&self) -> Self {
        let mut segments = self.segments.clone();
        segments.extend(self.segments.iter().rev().map(RotationSegment::inverse));
        RotationSchedule {
            segments,
            ..self.clone()
        }
    }
}
