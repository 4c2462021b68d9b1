//! Small-dimension complex linear algebra: qubit and two-qubit states,
//! SU(2) rotations acting on one qubit, partial traces and overlaps.
//!
//! Two-qubit amplitudes are stored as `amp[2 * i + j]` where `i` is the
//! basis index of the first qubit and `j` the basis index of the second.

use core::ops::{Mul, Neg};

use num_complex::Complex64;

use crate::error::{PhaseError, Result};

pub type ComplexAmplitude = Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Smallest input norm accepted by the normalizing constructors.
pub const MIN_NORM: f64 = 1e-9;

/// Which factor of the two-qubit tensor product an operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Qubit {
    First,
    Second,
}

impl Qubit {
    pub fn from_index(index: u8) -> Option<Self> {
        match index {
            1 => Some(Qubit::First),
            2 => Some(Qubit::Second),
            _ => None,
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Qubit::First => 1,
            Qubit::Second => 2,
        }
    }

    pub fn other(self) -> Self {
        match self {
            Qubit::First => Qubit::Second,
            Qubit::Second => Qubit::First,
        }
    }
}

/// A unit vector in R³, used as a rotation axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis([f64; 3]);

impl Axis {
    pub const X: Axis = Axis([1.0, 0.0, 0.0]);
    pub const Y: Axis = Axis([0.0, 1.0, 0.0]);
    pub const Z: Axis = Axis([0.0, 0.0, 1.0]);

    /// Accepts `v` only if `| |v| - 1 | <= 1e-9`, then rescales it exactly.
    pub fn new(v: [f64; 3]) -> Result<Self> {
        Self::normalized_within(v, 1e-9)
    }

    /// Rescales `v` to unit length when its norm is within `tol` of one.
    pub fn normalized_within(v: [f64; 3], tol: f64) -> Result<Self> {
        if !v.iter().all(|c| c.is_finite()) {
            return Err(PhaseError::Domain("axis components must be finite"));
        }
        let n = norm3(v);
        if (n - 1.0).abs() > tol {
            return Err(PhaseError::Domain("rotation axis is not of unit length"));
        }
        Ok(Axis(rescale(v, n)))
    }

    /// Direction of an arbitrary non-zero vector.
    pub fn direction_of(v: [f64; 3]) -> Result<Self> {
        let n = norm3(v);
        if n <= MIN_NORM || !n.is_finite() {
            return Err(PhaseError::ZeroNorm { norm: n });
        }
        Ok(Axis(rescale(v, n)))
    }

    pub fn components(&self) -> [f64; 3] {
        self.0
    }

    pub fn dot(&self, v: [f64; 3]) -> f64 {
        self.0[0] * v[0] + self.0[1] * v[1] + self.0[2] * v[2]
    }
}

impl Neg for Axis {
    type Output = Axis;
    fn neg(self) -> Axis {
        Axis([-self.0[0], -self.0[1], -self.0[2]])
    }
}

pub(crate) fn norm3(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

fn normalize<const N: usize>(amps: [Complex64; N]) -> Result<[Complex64; N]> {
    if !amps.iter().all(|a| a.re.is_finite() && a.im.is_finite()) {
        return Err(PhaseError::Domain("amplitudes must be finite"));
    }
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if norm <= MIN_NORM {
        return Err(PhaseError::ZeroNorm { norm });
    }
    Ok(rescale(amps, norm))
}

/// Divides by `norm` unless the input is already unit length to rounding, so
/// normalizing twice is bitwise idempotent.
fn rescale<T: core::ops::Div<f64, Output = T> + Copy, const N: usize>(v: [T; N], norm: f64) -> [T; N] {
    if (norm - 1.0).abs() <= 4.0 * f64::EPSILON {
        v
    } else {
        v.map(|x| x / norm)
    }
}

/// Normalized single-qubit state `a0|0> + a1|1>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureQubitState {
    amps: [Complex64; 2],
}

impl PureQubitState {
    /// Normalizes the pair; fails with `ZeroNorm` for vanishing input.
    pub fn new(a0: Complex64, a1: Complex64) -> Result<Self> {
        Ok(PureQubitState {
            amps: normalize([a0, a1])?,
        })
    }

    pub fn zero() -> Self {
        PureQubitState { amps: [ONE, ZERO] }
    }

    pub fn one() -> Self {
        PureQubitState { amps: [ZERO, ONE] }
    }

    /// `cos(θ/2)|0> + e^{iφ} sin(θ/2)|1>`.
    pub fn from_polar(theta: f64, phi: f64) -> Self {
        PureQubitState {
            amps: [
                Complex64::new((theta / 2.0).cos(), 0.0),
                Complex64::from_polar((theta / 2.0).sin(), phi),
            ],
        }
    }

    pub fn amplitudes(&self) -> [Complex64; 2] {
        self.amps
    }

    pub fn inner(&self, other: &PureQubitState) -> Complex64 {
        self.amps[0].conj() * other.amps[0] + self.amps[1].conj() * other.amps[1]
    }

    pub fn with_global_phase(&self, phase: f64) -> Self {
        let f = Complex64::from_polar(1.0, phase);
        PureQubitState {
            amps: self.amps.map(|a| a * f),
        }
    }

    pub fn evolve(&self, u: &Unitary2) -> Self {
        PureQubitState {
            amps: u.apply(self.amps),
        }
    }
}

/// Normalized two-qubit state `α|00> + β|01> + γ|10> + δ|11>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitState {
    amps: [Complex64; 4],
}

/// Builds a two-qubit state from hand-entered amplitudes, rescaling to unit norm.
pub fn make_two_qubit(
    a00: Complex64,
    a01: Complex64,
    a10: Complex64,
    a11: Complex64,
) -> Result<TwoQubitState> {
    TwoQubitState::new([a00, a01, a10, a11])
}

impl TwoQubitState {
    pub fn new(amps: [Complex64; 4]) -> Result<Self> {
        Ok(TwoQubitState {
            amps: normalize(amps)?,
        })
    }

    pub fn product(first: &PureQubitState, second: &PureQubitState) -> Self {
        let a = first.amps;
        let b = second.amps;
        TwoQubitState {
            amps: [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]],
        }
    }

    /// `(|00> + |11>)/√2`.
    pub fn bell() -> Self {
        let h = Complex64::new(core::f64::consts::FRAC_1_SQRT_2, 0.0);
        TwoQubitState {
            amps: [h, ZERO, ZERO, h],
        }
    }

    pub fn amplitudes(&self) -> [Complex64; 4] {
        self.amps
    }

    /// Amplitude of `|i j>`; `i`, `j` ∈ {0, 1}.
    pub fn amp(&self, i: usize, j: usize) -> Complex64 {
        self.amps[2 * i + j]
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn with_global_phase(&self, phase: f64) -> Self {
        let f = Complex64::from_polar(1.0, phase);
        TwoQubitState {
            amps: self.amps.map(|a| a * f),
        }
    }
}

/// Schmidt weight `λ₀` and tilt angle `θ` of the reference state family.
/// The companion weight is always `1 - λ₀`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchmidtParams {
    lambda0: f64,
    theta: f64,
}

impl SchmidtParams {
    pub fn new(lambda0: f64, theta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda0) {
            return Err(PhaseError::Domain("lambda0 must lie in [0, 1]"));
        }
        if !theta.is_finite() {
            return Err(PhaseError::Domain("theta must be finite"));
        }
        Ok(SchmidtParams { lambda0, theta })
    }

    pub fn lambda0(&self) -> f64 {
        self.lambda0
    }

    pub fn lambda1(&self) -> f64 {
        1.0 - self.lambda0
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

/// `√λ₀ cos(θ/2)|00> − √λ₁ sin(θ/2)|01> + √λ₀ sin(θ/2)|10> + √λ₁ cos(θ/2)|11>`.
pub fn schmidt_state(p: SchmidtParams) -> TwoQubitState {
    let s0 = p.lambda0().sqrt();
    let s1 = p.lambda1().sqrt();
    let (s, c) = (p.theta() / 2.0).sin_cos();
    TwoQubitState {
        amps: [
            Complex64::new(s0 * c, 0.0),
            Complex64::new(-s1 * s, 0.0),
            Complex64::new(s0 * s, 0.0),
            Complex64::new(s1 * c, 0.0),
        ],
    }
}

/// A 2×2 unitary, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary2 {
    m: [[Complex64; 2]; 2],
}

/// Tolerance for accepting an externally supplied matrix as unitary.
const UNITARY_TOL: f64 = 1e-9;

impl Unitary2 {
    pub fn identity() -> Self {
        Unitary2 {
            m: [[ONE, ZERO], [ZERO, ONE]],
        }
    }

    /// `exp(-i t n·σ / 2)`:
    ///
    /// ```text
    /// [ cos(t/2) - i n_z sin(t/2)    -i n₋ sin(t/2)           ]
    /// [ -i n₊ sin(t/2)               cos(t/2) + i n_z sin(t/2) ]
    /// ```
    /// with `n± = n_x ± i n_y`.
    pub fn rotation(axis: Axis, t: f64) -> Self {
        let [nx, ny, nz] = axis.components();
        let (s, c) = (t / 2.0).sin_cos();
        let n_minus = Complex64::new(nx, -ny);
        let n_plus = Complex64::new(nx, ny);
        Unitary2 {
            m: [
                [Complex64::new(c, -nz * s), -I * n_minus * s],
                [-I * n_plus * s, Complex64::new(c, nz * s)],
            ],
        }
    }

    /// Wraps a raw matrix after checking `U†U = I` within 1e-9.
    pub fn from_entries(m: [[Complex64; 2]; 2]) -> Result<Self> {
        let u = Unitary2 { m };
        if !m.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(PhaseError::Domain("matrix entries must be finite"));
        }
        if u.unitarity_defect() > UNITARY_TOL {
            return Err(PhaseError::Domain("matrix is not unitary"));
        }
        Ok(u)
    }

    pub fn entries(&self) -> [[Complex64; 2]; 2] {
        self.m
    }

    pub fn adjoint(&self) -> Self {
        let m = self.m;
        Unitary2 {
            m: [[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]],
        }
    }

    pub fn det(&self) -> Complex64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn trace(&self) -> Complex64 {
        self.m[0][0] + self.m[1][1]
    }

    /// Largest entry of `|U†U − I|`.
    pub fn unitarity_defect(&self) -> f64 {
        let p = self.adjoint().m_mul(&self.m);
        let mut worst: f64 = 0.0;
        for (r, row) in p.iter().enumerate() {
            for (c, z) in row.iter().enumerate() {
                let target = if r == c { ONE } else { ZERO };
                worst = worst.max((*z - target).norm());
            }
        }
        worst
    }

    /// Largest entry-wise distance to another matrix.
    pub fn max_abs_diff(&self, other: &Unitary2) -> f64 {
        let mut worst: f64 = 0.0;
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((self.m[r][c] - other.m[r][c]).norm());
            }
        }
        worst
    }

    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        [
            self.m[0][0] * v[0] + self.m[0][1] * v[1],
            self.m[1][0] * v[0] + self.m[1][1] * v[1],
        ]
    }

    fn m_mul(&self, rhs: &[[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
        let a = &self.m;
        [
            [
                a[0][0] * rhs[0][0] + a[0][1] * rhs[1][0],
                a[0][0] * rhs[0][1] + a[0][1] * rhs[1][1],
            ],
            [
                a[1][0] * rhs[0][0] + a[1][1] * rhs[1][0],
                a[1][0] * rhs[0][1] + a[1][1] * rhs[1][1],
            ],
        ]
    }
}

impl Mul for Unitary2 {
    type Output = Unitary2;
    fn mul(self, rhs: Unitary2) -> Unitary2 {
        Unitary2 {
            m: self.m_mul(&rhs.m),
        }
    }
}

impl Neg for Unitary2 {
    type Output = Unitary2;
    fn neg(self) -> Unitary2 {
        Unitary2 {
            m: self.m.map(|row| row.map(|z| -z)),
        }
    }
}

/// Validating form of [`Unitary2::rotation`]: rejects axes that are not unit length.
pub fn evolution_operator(axis: [f64; 3], t: f64) -> Result<Unitary2> {
    if !t.is_finite() {
        return Err(PhaseError::Domain("rotation time must be finite"));
    }
    Ok(Unitary2::rotation(Axis::new(axis)?, t))
}

/// `U ⊗ I` (qubit 1) or `I ⊗ U` (qubit 2) applied to `s`.
pub fn apply_local(u: &Unitary2, qubit: Qubit, s: &TwoQubitState) -> TwoQubitState {
    let a = s.amps;
    let amps = match qubit {
        Qubit::First => {
            let [c0, c2] = u.apply([a[0], a[2]]);
            let [c1, c3] = u.apply([a[1], a[3]]);
            [c0, c1, c2, c3]
        }
        Qubit::Second => {
            let [c0, c1] = u.apply([a[0], a[1]]);
            let [c2, c3] = u.apply([a[2], a[3]]);
            [c0, c1, c2, c3]
        }
    };
    TwoQubitState { amps }
}

/// `<a|b>`, conjugate-linear in `a`.
pub fn inner_product(a: &TwoQubitState, b: &TwoQubitState) -> Complex64 {
    a.amps.iter().zip(b.amps.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// Hermitian, unit-trace, positive semidefinite 2×2 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix2 {
    m: [[Complex64; 2]; 2],
}

const DENSITY_TOL: f64 = 1e-12;

impl DensityMatrix2 {
    /// Validates Hermiticity, unit trace (both within 1e-12) and eigenvalues ≥ −1e-12.
    pub fn from_entries(m: [[Complex64; 2]; 2]) -> Result<Self> {
        if !m.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(PhaseError::Domain("matrix entries must be finite"));
        }
        if (m[0][1] - m[1][0].conj()).norm() > DENSITY_TOL
            || m[0][0].im.abs() > DENSITY_TOL
            || m[1][1].im.abs() > DENSITY_TOL
        {
            return Err(PhaseError::Domain("density matrix must be Hermitian"));
        }
        if (m[0][0].re + m[1][1].re - 1.0).abs() > DENSITY_TOL {
            return Err(PhaseError::Domain("density matrix must have unit trace"));
        }
        let rho = DensityMatrix2 { m };
        if rho.eigenvalues()[1] < -DENSITY_TOL {
            return Err(PhaseError::Domain("density matrix must be positive semidefinite"));
        }
        Ok(rho)
    }

    pub fn diagonal(p0: f64, p1: f64) -> Result<Self> {
        Self::from_entries([[Complex64::new(p0, 0.0), ZERO], [ZERO, Complex64::new(p1, 0.0)]])
    }

    pub fn maximally_mixed() -> Self {
        DensityMatrix2 {
            m: [[Complex64::new(0.5, 0.0), ZERO], [ZERO, Complex64::new(0.5, 0.0)]],
        }
    }

    pub fn projector(q: &PureQubitState) -> Self {
        let a = q.amplitudes();
        DensityMatrix2 {
            m: [
                [Complex64::new(a[0].norm_sqr(), 0.0), a[0] * a[1].conj()],
                [a[1] * a[0].conj(), Complex64::new(a[1].norm_sqr(), 0.0)],
            ],
        }
    }

    pub fn entries(&self) -> [[Complex64; 2]; 2] {
        self.m
    }

    pub fn trace(&self) -> f64 {
        self.m[0][0].re + self.m[1][1].re
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        self.m[0][0].re * self.m[0][0].re + self.m[1][1].re * self.m[1][1].re + 2.0 * self.m[0][1].norm_sqr()
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let a = self.m[0][0].re;
        let d = self.m[1][1].re;
        let half_gap = (((a - d) / 2.0).powi(2) + self.m[0][1].norm_sqr()).sqrt();
        let mean = (a + d) / 2.0;
        [mean + half_gap, mean - half_gap]
    }

    /// `Tr(U ρ)`.
    pub fn trace_with(&self, u: &Unitary2) -> Complex64 {
        let um = u.entries();
        um[0][0] * self.m[0][0] + um[0][1] * self.m[1][0] + um[1][0] * self.m[0][1] + um[1][1] * self.m[1][1]
    }
}

/// Partial trace of `|s><s|` over the qubit other than `keep`.
pub fn reduced_density(s: &TwoQubitState, keep: Qubit) -> DensityMatrix2 {
    let amp = |kept: usize, traced: usize| match keep {
        Qubit::First => s.amp(kept, traced),
        Qubit::Second => s.amp(traced, kept),
    };
    let mut m = [[ZERO; 2]; 2];
    for (r, row) in m.iter_mut().enumerate() {
        for (c, entry) in row.iter_mut().enumerate() {
            *entry = (0..2).map(|k| amp(r, k) * amp(c, k).conj()).sum();
        }
    }
    // Force exact Hermiticity of the diagonal.
    m[0][0].im = 0.0;
    m[1][1].im = 0.0;
    m[1][0] = m[0][1].conj();
    DensityMatrix2 { m }
}
