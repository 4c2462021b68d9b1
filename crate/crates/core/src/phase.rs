//! Total, dynamical, geometric and topological phases along a rotation schedule.
//!
//! Sign convention: the dynamical phase is `φ_d = −∫ <H> dt` with
//! `H = n̂·σ/2` acting on the evolved qubit, and the geometric phase is the
//! discrete Bargmann phase `−arg Π <ψ_k|ψ_{k+1}>`. With these conventions
//! `φ_t ≡ φ_d + φ_g (mod 2π)` for every cyclic run.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{PhaseError, Result};
use crate::geometry::{bloch_of_density, purify, su2_to_so3, BlochVector, SO3Point};
use crate::numeric::{distance_mod_2pi, wrap_angle, EPS_CROSS, EPS_ORTH};
use crate::schedule::RotationSchedule;
use crate::state::{
    apply_local, inner_product, reduced_density, Axis, DensityMatrix2, PureQubitState, TwoQubitState,
    Unitary2,
};

/// Sign applied to `∫ <H> dt` when forming the dynamical phase.
pub const DYNAMICAL_PHASE_SIGN: f64 = -1.0;

/// Modulus tolerance for accepting a run as cyclic.
pub const CYCLIC_TOL: f64 = 1e-6;

/// `arg <initial|current>` in `(−π, π]`, or `None` at orthogonality.
pub fn total_phase(initial: &TwoQubitState, current: &TwoQubitState) -> Option<f64> {
    phase_of(inner_product(initial, current))
}

/// `arg Tr(U ρ)`, or `None` when the trace vanishes.
pub fn mixed_total_phase(u: &Unitary2, rho: &DensityMatrix2) -> Option<f64> {
    phase_of(rho.trace_with(u))
}

fn phase_of(z: Complex64) -> Option<f64> {
    if z.norm() <= EPS_ORTH {
        None
    } else {
        Some(wrap_angle(z.arg()))
    }
}

/// Closed-form overlap after a single segment started from the reference state:
/// `cos(t/2) − i (n̂·b) sin(t/2)`, with `b` the evolved qubit's Bloch vector.
pub fn sp_formula(t: f64, axis: [f64; 3], b: &BlochVector) -> Result<Complex64> {
    let n = Axis::new(axis)?;
    let (s, c) = (t / 2.0).sin_cos();
    Ok(Complex64::new(c, -b.dot(&n) * s))
}

fn evolved_bloch(schedule: &RotationSchedule, u: &Unitary2) -> BlochVector {
    let state = apply_local(u, schedule.evolved_qubit, &schedule.initial);
    bloch_of_density(&reduced_density(&state, schedule.evolved_qubit))
}

/// Dynamical phase accumulated up to the end of each segment, starting with 0.
/// `<n̂·σ>` is constant within a segment, so each term is exact.
fn dynamical_boundaries(schedule: &RotationSchedule) -> Vec<f64> {
    let boundaries = schedule.boundary_unitaries();
    let mut acc = 0.0;
    let mut out = Vec::with_capacity(boundaries.len());
    out.push(acc);
    for (seg, b) in schedule.segments.iter().zip(&boundaries) {
        let projection = evolved_bloch(schedule, b).dot(&seg.axis);
        acc += DYNAMICAL_PHASE_SIGN * 0.5 * projection * seg.duration;
        out.push(acc);
    }
    out
}

/// `−∫ <ψ|H|ψ> dt` over the whole schedule (not wrapped).
pub fn dynamical_phase(schedule: &RotationSchedule) -> f64 {
    *dynamical_boundaries(schedule)
        .last()
        .expect("at least one boundary")
}

/// `−Σ arg <ψ_k|ψ_{k+1}>` without reducing the sum modulo 2π. On a finely
/// sampled continuous path every term is small, so the sum tracks the
/// enclosed area continuously rather than its principal value.
pub fn bargmann_phase_unwrapped(path: &[PureQubitState], closed: bool) -> Result<f64> {
    let mut sum = open_arg_sum(path)?;
    if closed && path.len() > 1 {
        let last = path.len() - 1;
        sum += step_arg(&path[last], &path[0], last, 0)?;
    }
    Ok(-sum)
}

/// `Σ arg <ψ_k|ψ_{k+1}>` over consecutive pairs.
fn open_arg_sum(path: &[PureQubitState]) -> Result<f64> {
    path.windows(2)
        .enumerate()
        .map(|(k, w)| step_arg(&w[0], &w[1], k, k + 1))
        .sum()
}

fn step_arg(a: &PureQubitState, b: &PureQubitState, index: usize, next: usize) -> Result<f64> {
    let z = a.inner(b);
    if z.norm() <= EPS_ORTH {
        return Err(PhaseError::OrthogonalStep { index, next });
    }
    Ok(z.arg())
}

/// Discrete Bargmann phase `−arg[<ψ₀|ψ₁><ψ₁|ψ₂>···]` in `(−π, π]`, with the
/// closing leg `<ψ_{N−1}|ψ₀>` appended when `closed`. Invariant under
/// per-point phase changes.
pub fn geometric_phase_pure(path: &[PureQubitState], closed: bool) -> Result<f64> {
    if path.len() < 3 {
        return Err(PhaseError::Domain(
            "geometric phase needs at least three path points",
        ));
    }
    Ok(wrap_angle(bargmann_phase_unwrapped(path, closed)?))
}

/// Weighted geometric phase of the evolved qubit's reduced state: the two
/// purification eigenvectors are transported by the cumulative unitary and
/// their closed-loop Bargmann phases are combined with the eigenvalue weights.
///
/// A weighted sum is only meaningful modulo 2π when both loops are closed on
/// the same branch of the argument, so the closing leg of the minor loop is
/// taken on the branch of the dominant one.
///
/// Fails with `DegenerateSpectrum` for maximally entangled inputs, whose
/// reduced state does not move.
pub fn geometric_phase_mixed(schedule: &RotationSchedule, samples_per_segment: usize) -> Result<f64> {
    let rho = reduced_density(&schedule.initial, schedule.evolved_qubit);
    let p = purify(&rho)?;
    let unitaries = schedule.cumulative_unitaries(samples_per_segment)?;
    let path_m: Vec<PureQubitState> = unitaries.iter().map(|(_, u)| p.state_m.evolve(u)).collect();
    let path_n: Vec<PureQubitState> = unitaries.iter().map(|(_, u)| p.state_n.evolve(u)).collect();
    let last = path_m.len() - 1;
    let close_m = step_arg(&path_m[last], &path_m[0], last, 0)?;
    let close_n = close_m + wrap_angle(step_arg(&path_n[last], &path_n[0], last, 0)? - close_m);
    let phase_m = -(open_arg_sum(&path_m)? + close_m);
    let phase_n = -(open_arg_sum(&path_n)? + close_n);
    Ok(wrap_angle(p.weight_m * phase_m + p.weight_n * phase_n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(count: usize) -> Self {
        if count.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

/// A transversal zero of `<ψ(0)|ψ(t)>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossing {
    pub time: f64,
    /// First sample index at or after `time`.
    pub sample_index: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Crossings {
    pub events: Vec<Crossing>,
}

impl Crossings {
    pub fn count(&self) -> usize {
        self.events.len()
    }

    pub fn parity(&self) -> Parity {
        Parity::of(self.count())
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.events.iter().map(|c| c.time)
    }
}

/// Sampled overlap trajectory shared by the crossing finder and the time series.
struct Trajectory<'a> {
    schedule: &'a RotationSchedule,
    times: Vec<f64>,
    unitaries: Vec<Unitary2>,
    overlaps: Vec<Complex64>,
}

impl<'a> Trajectory<'a> {
    fn sample(schedule: &'a RotationSchedule, samples_per_segment: usize) -> Result<Self> {
        let cumulative = schedule.cumulative_unitaries(samples_per_segment)?;
        let mut times = Vec::with_capacity(cumulative.len());
        let mut unitaries = Vec::with_capacity(cumulative.len());
        let mut overlaps = Vec::with_capacity(cumulative.len());
        for (t, u) in cumulative {
            times.push(t);
            overlaps.push(overlap(schedule, &u));
            unitaries.push(u);
        }
        Ok(Trajectory {
            schedule,
            times,
            unitaries,
            overlaps,
        })
    }

    fn overlap_at(&self, t: f64) -> Complex64 {
        overlap(self.schedule, &self.schedule.unitary_at(t))
    }

    /// Locates zeros of the overlap from local minima of its modulus and keeps
    /// those across which the overlap reverses direction (a jump of π in its
    /// argument). Minima that only touch zero are discarded.
    fn crossings(&self) -> Crossings {
        let mag: Vec<f64> = self.overlaps.iter().map(|z| z.norm()).collect();
        let n = mag.len();
        let mut events = Vec::new();
        let mut k = 1;
        while k + 1 < n {
            if mag[k] < EPS_CROSS {
                let start = k;
                while k + 1 < n && mag[k] < EPS_CROSS {
                    k += 1;
                }
                // A run reaching the final sample cannot be classified.
                if mag[k] < EPS_CROSS {
                    break;
                }
                let end = k - 1;
                if self.reverses(self.overlaps[start - 1], self.overlaps[end + 1]) {
                    let time = if start == end {
                        self.times[start]
                    } else {
                        0.5 * (self.times[start] + self.times[end])
                    };
                    events.push(Crossing {
                        time,
                        sample_index: self.index_at_or_after(time, start),
                    });
                }
                continue;
            }
            let is_min = mag[k] < mag[k - 1] && mag[k] <= mag[k + 1];
            // |d<ψ0|ψ(t)>/dt| ≤ ‖H‖ = ½ bounds how far the true minimum can sit below the sample.
            let reachable = mag[k] - 0.5 * (self.times[k + 1] - self.times[k - 1]) < EPS_CROSS;
            if is_min && reachable {
                let t_min = self.golden_minimum(self.times[k - 1], self.times[k + 1]);
                if self.overlap_at(t_min).norm() < EPS_CROSS
                    && self.reverses(self.overlaps[k - 1], self.overlaps[k + 1])
                {
                    events.push(Crossing {
                        time: t_min,
                        sample_index: self.index_at_or_after(t_min, k - 1),
                    });
                }
            }
            k += 1;
        }
        Crossings { events }
    }

    fn reverses(&self, before: Complex64, after: Complex64) -> bool {
        (before * after.conj()).re < 0.0
    }

    fn index_at_or_after(&self, t: f64, from: usize) -> usize {
        (from..self.times.len())
            .find(|&i| self.times[i] >= t)
            .unwrap_or(self.times.len() - 1)
    }

    fn golden_minimum(&self, mut a: f64, mut b: f64) -> f64 {
        let inv_phi = (5.0f64.sqrt() - 1.0) / 2.0;
        let f = |t: f64| self.overlap_at(t).norm_sqr();
        let mut c = b - inv_phi * (b - a);
        let mut d = a + inv_phi * (b - a);
        let (mut fc, mut fd) = (f(c), f(d));
        for _ in 0..200 {
            if b - a <= 1e-13 {
                break;
            }
            if fc < fd {
                b = d;
                d = c;
                fd = fc;
                c = b - inv_phi * (b - a);
                fc = f(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + inv_phi * (b - a);
                fd = f(d);
            }
        }
        0.5 * (a + b)
    }
}

fn overlap(schedule: &RotationSchedule, u: &Unitary2) -> Complex64 {
    let evolved = apply_local(u, schedule.evolved_qubit, &schedule.initial);
    inner_product(&schedule.initial, &evolved)
}

/// Transversal zeros of `<ψ(0)|ψ(t)>` along the sampled schedule.
pub fn topological_crossings(schedule: &RotationSchedule, samples_per_segment: usize) -> Result<Crossings> {
    Ok(Trajectory::sample(schedule, samples_per_segment)?.crossings())
}

/// Phase decomposition of one cyclic run. All angles are in `(−π, π]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseBreakdown {
    pub total: f64,
    pub dynamical: f64,
    pub geometric: f64,
    pub crossings: usize,
    pub parity: Parity,
    /// Set when the reduced state is maximally mixed; the geometric phase is then 0.
    pub degenerate: bool,
    /// Distance from 0 (mod 2π) of `total − dynamical − geometric`, with the
    /// topological term `π·parity` also subtracted for degenerate runs.
    pub closure_residual: f64,
}

/// `<s0| U_total ⊗ I |s0>` for the schedule's evolved qubit.
pub fn final_overlap(schedule: &RotationSchedule) -> Complex64 {
    overlap(schedule, &schedule.total_unitary())
}

pub fn phase_breakdown(schedule: &RotationSchedule, samples_per_segment: usize) -> Result<PhaseBreakdown> {
    let v = final_overlap(schedule);
    if (v.norm() - 1.0).abs() > CYCLIC_TOL {
        return Err(PhaseError::NotCyclic { overlap: v.norm() });
    }
    let total = wrap_angle(v.arg());
    let dynamical = wrap_angle(dynamical_phase(schedule));
    let (geometric, degenerate) = match geometric_phase_mixed(schedule, samples_per_segment) {
        Ok(g) => (g, false),
        Err(PhaseError::DegenerateSpectrum { .. }) => (0.0, true),
        Err(e) => return Err(e),
    };
    let crossings = topological_crossings(schedule, samples_per_segment)?;
    let parity = crossings.parity();
    let topological = if degenerate && parity == Parity::Odd {
        PI
    } else {
        0.0
    };
    Ok(PhaseBreakdown {
        total,
        dynamical,
        geometric,
        crossings: crossings.count(),
        parity,
        degenerate,
        closure_residual: distance_mod_2pi(total - dynamical - geometric - topological),
    })
}

/// Printed closed forms for a full turn about a fixed axis starting from the
/// Schmidt state `(λ₀, θ)`: `φ_d = π(2λ₀−1)cos θ`, `φ_g = π + π(1−2λ₀)cos θ`,
/// `φ_t = π`. These use the opposite overall sign to this crate's convention;
/// the crate's values equal their negatives modulo 2π.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedForms {
    pub phi_d: f64,
    pub phi_g: f64,
    pub phi_t: f64,
}

pub fn fixed_axis_closed_forms(lambda0: f64, theta: f64) -> Result<ClosedForms> {
    if !(0.0..=1.0).contains(&lambda0) {
        return Err(PhaseError::Domain("lambda0 must lie in [0, 1]"));
    }
    let c = theta.cos();
    Ok(ClosedForms {
        phi_d: PI * (2.0 * lambda0 - 1.0) * c,
        phi_g: PI + PI * (1.0 - 2.0 * lambda0) * c,
        phi_t: PI,
    })
}

/// Click probability of the conditional-dynamics interferometer,
/// `½(1 − Re <s0|U_total ⊗ I|s0>)`.
pub fn readout_probability(schedule: &RotationSchedule) -> f64 {
    (0.5 * (1.0 - final_overlap(schedule).re)).clamp(0.0, 1.0)
}

/// One row of the phase time series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSample {
    pub time: f64,
    pub sp: Complex64,
    pub total_principal: Option<f64>,
    pub total_unwrapped: Option<f64>,
    pub dynamical: f64,
    pub bloch: BlochVector,
    pub so3: SO3Point,
    /// An orthogonality crossing happened after the previous sample and at or before this one.
    pub crossing: bool,
}

/// Samples the run with `samples_per_segment` points per segment.
///
/// The unwrapped total phase follows the principal value by minimal jumps;
/// across a detected crossing the jump is taken as `+π` plus the minimal
/// remainder.
pub fn phase_series(schedule: &RotationSchedule, samples_per_segment: usize) -> Result<Vec<PhaseSample>> {
    let traj = Trajectory::sample(schedule, samples_per_segment)?;
    let crossings = traj.crossings();
    let mut flagged = alloc::vec![false; traj.times.len()];
    for c in &crossings.events {
        flagged[c.sample_index] = true;
    }

    let dyn_bounds = dynamical_boundaries(schedule);
    let seg_bounds = schedule.boundary_times();
    let boundary_blochs: Vec<BlochVector> = schedule
        .boundary_unitaries()
        .iter()
        .map(|b| evolved_bloch(schedule, b))
        .collect();

    let mut out = Vec::with_capacity(traj.times.len());
    let mut last_defined: Option<(usize, f64, f64)> = None;
    let mut segment = 0;
    for (i, (&t, u)) in traj.times.iter().zip(&traj.unitaries).enumerate() {
        while segment + 1 < schedule.segments.len() && t >= seg_bounds[segment + 1] {
            segment += 1;
        }
        let dynamical = match schedule.segments.get(segment) {
            Some(seg) => {
                let elapsed = (t - seg_bounds[segment]).clamp(0.0, seg.duration);
                dyn_bounds[segment]
                    + DYNAMICAL_PHASE_SIGN * 0.5 * boundary_blochs[segment].dot(&seg.axis) * elapsed
            }
            None => 0.0,
        };

        let sp = traj.overlaps[i];
        let principal = phase_of(sp);
        let unwrapped = principal.map(|p| match last_defined {
            None => p,
            Some((j, prev_p, prev_u)) => {
                let crossed = flagged[j + 1..=i].iter().any(|&f| f);
                let step = if crossed {
                    PI + wrap_angle(p - prev_p - PI)
                } else {
                    wrap_angle(p - prev_p)
                };
                prev_u + step
            }
        });
        if let (Some(p), Some(w)) = (principal, unwrapped) {
            last_defined = Some((i, p, w));
        }

        out.push(PhaseSample {
            time: t,
            sp,
            total_principal: principal,
            total_unwrapped: unwrapped,
            dynamical,
            bloch: evolved_bloch(schedule, u),
            so3: su2_to_so3(u)?,
            crossing: flagged[i],
        });
    }
    Ok(out)
}
