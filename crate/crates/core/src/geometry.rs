//! Bloch-ball coordinates, the S⁷ → S⁴ Hopf base point of a two-qubit state,
//! purification of qubit density matrices, and the SU(2) → SO(3) projection
//! used to track the fiber trajectory as a displacement in a ball of radius π.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{PhaseError, Result};
use crate::schedule::RotationSchedule;
use crate::state::{norm3, Axis, DensityMatrix2, PureQubitState, TwoQubitState, Unitary2};

/// Expectation values `(<σx>, <σy>, <σz>)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        BlochVector { x, y, z }
    }

    pub fn components(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn length(&self) -> f64 {
        norm3(self.components())
    }

    pub fn dot(&self, axis: &Axis) -> f64 {
        axis.dot(self.components())
    }
}

pub fn bloch_of_pure(q: &PureQubitState) -> BlochVector {
    let [a0, a1] = q.amplitudes();
    let coherence = a0.conj() * a1;
    BlochVector {
        x: 2.0 * coherence.re,
        y: 2.0 * coherence.im,
        z: a0.norm_sqr() - a1.norm_sqr(),
    }
}

/// `Tr(ρσ)`. Note `<σy> = 2 Im ρ₁₀ = −2 Im ρ₀₁`.
pub fn bloch_of_density(rho: &DensityMatrix2) -> BlochVector {
    let m = rho.entries();
    BlochVector {
        x: 2.0 * m[0][1].re,
        y: 2.0 * m[1][0].im,
        z: m[0][0].re - m[1][1].re,
    }
}

/// Base point on the unit S⁴. `(x, y, z)` is the Bloch vector of the first
/// qubit's reduced state; `c_r + i c_i = 2(αδ − βγ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HopfCoordinates {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub c_r: f64,
    pub c_i: f64,
}

impl HopfCoordinates {
    pub fn concurrence(&self) -> f64 {
        self.c_r.hypot(self.c_i).min(1.0)
    }

    pub fn ball_radius(&self) -> f64 {
        (1.0 - self.c_r * self.c_r - self.c_i * self.c_i).max(0.0).sqrt()
    }

    pub fn sphere_norm_sqr(&self) -> f64 {
        self.x * self.x + self.y * self.y + self.z * self.z + self.c_r * self.c_r + self.c_i * self.c_i
    }
}

fn determinant_term(s: &TwoQubitState) -> Complex64 {
    s.amp(0, 0) * s.amp(1, 1) - s.amp(0, 1) * s.amp(1, 0)
}

pub fn hopf_coords(s: &TwoQubitState) -> HopfCoordinates {
    let (alpha, beta, gamma, delta) = (s.amp(0, 0), s.amp(0, 1), s.amp(1, 0), s.amp(1, 1));
    let coherence = alpha.conj() * gamma + beta.conj() * delta;
    let c = 2.0 * determinant_term(s);
    HopfCoordinates {
        x: 2.0 * coherence.re,
        y: 2.0 * coherence.im,
        z: alpha.norm_sqr() + beta.norm_sqr() - gamma.norm_sqr() - delta.norm_sqr(),
        c_r: c.re,
        c_i: c.im,
    }
}

/// `2|αδ − βγ|`: 0 for product states, 1 for maximally entangled ones.
pub fn concurrence(s: &TwoQubitState) -> f64 {
    (2.0 * determinant_term(s).norm()).min(1.0)
}

/// Radius of the reduced-state Bloch ball, `√(1 − C²)`.
pub fn ball_radius(s: &TwoQubitState) -> f64 {
    let c = concurrence(s);
    (1.0 - c * c).max(0.0).sqrt()
}

/// `√(2 Tr ρ² − 1)`, clamped to `[0, 1]`.
pub fn purity_radius(rho: &DensityMatrix2) -> f64 {
    (2.0 * rho.purity() - 1.0).clamp(0.0, 1.0).sqrt()
}

/// `ρ = w_m |m><m| + w_n |n><n|` with `w_m ≥ w_n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Purification {
    pub weight_m: f64,
    pub state_m: PureQubitState,
    pub weight_n: f64,
    pub state_n: PureQubitState,
}

/// Minimum eigenvalue gap for which the eigenbasis is considered well defined.
pub const MIN_SPECTRAL_GAP: f64 = 1e-9;

/// Splits `ρ` into its two orthogonal eigenstates. Eigenvectors are phase-fixed
/// so that their largest-magnitude component is real and positive.
pub fn purify(rho: &DensityMatrix2) -> Result<Purification> {
    let [hi, lo] = rho.eigenvalues();
    let gap = hi - lo;
    if gap.is_nan() || gap <= MIN_SPECTRAL_GAP {
        return Err(PhaseError::DegenerateSpectrum { gap });
    }
    let state_m = eigenvector(rho, hi)?;
    // Build the partner by orthogonal complement instead of solving again, so
    // that <m|n> = 0 holds to rounding even for nearly pure inputs.
    let [a0, a1] = state_m.amplitudes();
    let state_n = canonical_phase(PureQubitState::new(-a1.conj(), a0.conj())?);
    Ok(Purification {
        weight_m: hi,
        state_m,
        weight_n: lo,
        state_n,
    })
}

fn eigenvector(rho: &DensityMatrix2, lambda: f64) -> Result<PureQubitState> {
    let m = rho.entries();
    // Rows of (ρ − λI) annihilate the eigenvector; take the better-conditioned one.
    let first = (m[0][1], Complex64::new(lambda, 0.0) - m[0][0]);
    let second = (Complex64::new(lambda, 0.0) - m[1][1], m[1][0]);
    let pick = if first.0.norm_sqr() + first.1.norm_sqr() >= second.0.norm_sqr() + second.1.norm_sqr() {
        first
    } else {
        second
    };
    Ok(canonical_phase(PureQubitState::new(pick.0, pick.1)?))
}

fn canonical_phase(q: PureQubitState) -> PureQubitState {
    let [a0, a1] = q.amplitudes();
    let lead = if a0.norm() >= a1.norm() { a0 } else { a1 };
    q.with_global_phase(-lead.arg())
}

/// A rotation stored as a displacement `axis · angle` in the ball of radius π.
/// Antipodal border points describe the same rotation.
#[derive(Debug, Clone, Copy)]
pub struct SO3Point {
    pub axis: Axis,
    pub angle: f64,
}

const SO3_TOL: f64 = 1e-9;

impl SO3Point {
    pub fn center() -> Self {
        SO3Point {
            axis: Axis::Z,
            angle: 0.0,
        }
    }

    pub fn displacement(&self) -> [f64; 3] {
        let a = self.axis.components();
        [a[0] * self.angle, a[1] * self.angle, a[2] * self.angle]
    }

    /// Equality in SO(3) up to `tol`, honoring the border identification.
    pub fn same_rotation(&self, other: &SO3Point, tol: f64) -> bool {
        if (self.angle - other.angle).abs() > tol {
            return false;
        }
        let d = self.displacement();
        let e = other.displacement();
        let diff = norm3([d[0] - e[0], d[1] - e[1], d[2] - e[2]]);
        if diff <= tol {
            return true;
        }
        let on_border = PI - self.angle <= tol;
        on_border && norm3([d[0] + e[0], d[1] + e[1], d[2] + e[2]]) <= tol
    }
}

impl PartialEq for SO3Point {
    fn eq(&self, other: &Self) -> bool {
        self.same_rotation(other, SO3_TOL)
    }
}

/// Scalar and vector parts of `U = q₀ I − i q·σ`.
pub(crate) fn su2_components(u: &Unitary2) -> (f64, [f64; 3]) {
    let m = u.entries();
    let q0 = (m[0][0].re + m[1][1].re) / 2.0;
    let qx = -(m[0][1].im + m[1][0].im) / 2.0;
    let qy = (m[1][0].re - m[0][1].re) / 2.0;
    let qz = (m[1][1].im - m[0][0].im) / 2.0;
    (q0, [qx, qy, qz])
}

/// Projects `U = cos(t/2) I − i sin(t/2) n̂·σ` onto the rotation `(n̂, t)`,
/// folding `t ∈ (π, 2π]` to `(−n̂, 2π − t)`.
pub fn su2_to_so3(u: &Unitary2) -> Result<SO3Point> {
    let deviation = (u.det() - Complex64::new(1.0, 0.0)).norm();
    if deviation > SO3_TOL {
        return Err(PhaseError::NotSpecialUnitary { deviation });
    }
    let (q0, q) = su2_components(u);
    let qn = norm3(q);
    let t = 2.0 * qn.atan2(q0);
    if qn <= 1e-12 {
        return Ok(SO3Point::center());
    }
    let n = Axis::direction_of(q)?;
    Ok(if t > PI {
        SO3Point {
            axis: -n,
            angle: 2.0 * PI - t,
        }
    } else {
        SO3Point { axis: n, angle: t }
    })
}

/// `Re Tr U / 2`; its zeros are the border of the SO(3) ball.
pub fn cos_half_angle(u: &Unitary2) -> f64 {
    u.trace().re / 2.0
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SO3Sample {
    pub time: f64,
    pub point: SO3Point,
    pub cos_half_angle: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SO3Path {
    pub samples: Vec<SO3Sample>,
    /// Times at which `cos_half_angle` changes sign.
    pub crossings: Vec<f64>,
}

/// Values this close to zero are treated as touching the border.
const BORDER_ZERO: f64 = 1e-12;
const CROSSING_TIME_TOL: f64 = 1e-10;

pub fn so3_path(schedule: &RotationSchedule, samples_per_segment: usize) -> Result<SO3Path> {
    let cumulative = schedule.cumulative_unitaries(samples_per_segment)?;
    let mut samples = Vec::with_capacity(cumulative.len());
    for (time, u) in &cumulative {
        samples.push(SO3Sample {
            time: *time,
            point: su2_to_so3(u)?,
            cos_half_angle: cos_half_angle(u),
        });
    }
    let times: Vec<f64> = samples.iter().map(|s| s.time).collect();
    let values: Vec<f64> = samples.iter().map(|s| s.cos_half_angle).collect();
    let crossings = sign_changes(&times, &values, |t| cos_half_angle(&schedule.unitary_at(t)));
    Ok(SO3Path { samples, crossings })
}

/// Transversal sign changes of a sampled real function. Samples within
/// `BORDER_ZERO` of zero are skipped; a crossing is counted when the nearest
/// non-zero samples on either side have opposite signs. Between two adjacent
/// samples the zero is located by bisection on `f`.
pub(crate) fn sign_changes(times: &[f64], values: &[f64], f: impl Fn(f64) -> f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut last: Option<usize> = None;
    for (k, &v) in values.iter().enumerate() {
        if v.abs() <= BORDER_ZERO {
            continue;
        }
        if let Some(prev) = last {
            if values[prev].signum() != v.signum() {
                let time = if k == prev + 1 {
                    bisect(&f, times[prev], times[k], values[prev])
                } else {
                    (times[prev + 1] + times[k - 1]) / 2.0
                };
                out.push(time);
            }
        }
        last = Some(k);
    }
    out
}

fn bisect(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, fa: f64) -> f64 {
    let sign_a = fa.signum();
    while b - a > CROSSING_TIME_TOL {
        let mid = 0.5 * (a + b);
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == sign_a {
            a = mid;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}
