//! Numerical core for decomposing the global phase of a pure two-qubit state
//! evolved by single-qubit rotations.
//!
//! The crate is `no_std` (it needs `alloc`). Modules:
//!
//! - [`state`]: amplitudes, SU(2) rotations, partial traces and overlaps.
//! - [`geometry`]: Bloch and Hopf coordinates, concurrence, purification and
//!   the SU(2) → SO(3) projection with border-crossing detection.
//! - [`schedule`]: piecewise-constant-axis rotation schedules, including the
//!   built-in `plus` and `minus` trajectories.
//! - [`phase`]: total, dynamical, geometric and topological phases.

#![no_std]

extern crate alloc;

pub mod error;
pub mod geometry;
pub mod numeric;
pub mod phase;
pub mod schedule;
pub mod state;

pub use error::{PhaseError, Result};
pub use geometry::{
    ball_radius, bloch_of_density, bloch_of_pure, concurrence, cos_half_angle, hopf_coords, purify,
    purity_radius, so3_path, su2_to_so3, BlochVector, HopfCoordinates, Purification, SO3Path, SO3Point,
    SO3Sample,
};
pub use numeric::{distance_mod_2pi, wrap_angle, DEFAULT_SAMPLES_PER_SEGMENT, EPS_CROSS, EPS_ORTH};
pub use phase::{
    dynamical_phase, final_overlap, fixed_axis_closed_forms, geometric_phase_mixed, geometric_phase_pure,
    mixed_total_phase, phase_breakdown, phase_series, readout_probability, sp_formula, topological_crossings,
    total_phase, ClosedForms, Crossing, Crossings, Parity, PhaseBreakdown, PhaseSample, CYCLIC_TOL,
};
pub use schedule::{builtin_minus, builtin_plus, RotationSchedule, RotationSegment};
pub use state::{
    apply_local, evolution_operator, inner_product, make_two_qubit, reduced_density, schmidt_state, Axis,
    ComplexAmplitude, DensityMatrix2, PureQubitState, Qubit, SchmidtParams, TwoQubitState, Unitary2,
};
