//! Noise channels: Kraus sets, their analytic action on Bloch vectors and
//! Bell-diagonal parameters, and Lindblad evolution.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::matcore::{self, ComplexMatrix};
use crate::math;
use crate::qstate::{BdsParams, BlochVector, DensityMatrix};

/// Largest `max(γ)·dt` used by the RK4 integrator.
pub const LINDBLAD_MAX_RATE_STEP: f64 = 1e-3;
/// Default cap on RK4 steps.
pub const LINDBLAD_STEP_CAP: u64 = 1_000_000;
const LINDBLAD_STEP_LIMIT: f64 = 1e8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChannelKind {
    BitFlip,
    BitPhaseFlip,
    PhaseFlip,
    Depolarizing,
    AmplitudeDamping,
    PhaseDamping,
    /// `σx ⊗ σx` applied to a qubit pair with probability `q/2`.
    CorrelatedBitFlip,
}

impl ChannelKind {
    pub const ALL: [ChannelKind; 7] = [
        Self::BitFlip,
        Self::BitPhaseFlip,
        Self::PhaseFlip,
        Self::Depolarizing,
        Self::AmplitudeDamping,
        Self::PhaseDamping,
        Self::CorrelatedBitFlip,
    ];

    /// Single-qubit kinds that fix the maximally mixed state.
    pub const UNITAL_LOCAL: [ChannelKind; 4] =
        [Self::BitFlip, Self::BitPhaseFlip, Self::PhaseFlip, Self::Depolarizing];

    pub fn short_name(&self) -> &'static str {
        match self {
            Self::BitFlip => "bf",
            Self::BitPhaseFlip => "bpf",
            Self::PhaseFlip => "pf",
            Self::Depolarizing => "dc",
            Self::AmplitudeDamping => "ad",
            Self::PhaseDamping => "pd",
            Self::CorrelatedBitFlip => "cbf",
        }
    }

    pub fn long_name(&self) -> &'static str {
        match self {
            Self::BitFlip => "bit_flip",
            Self::BitPhaseFlip => "bit_phase_flip",
            Self::PhaseFlip => "phase_flip",
            Self::Depolarizing => "depolarizing",
            Self::AmplitudeDamping => "amplitude_damping",
            Self::PhaseDamping => "phase_damping",
            Self::CorrelatedBitFlip => "correlated_bit_flip",
        }
    }

    pub fn is_unital(&self) -> bool {
        !matches!(self, Self::AmplitudeDamping)
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for ChannelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase().replace('-', "_");
        Self::ALL
            .into_iter()
            .find(|k| k.short_name() == lower || k.long_name() == lower)
            .ok_or(Error::UnknownKind { what: "channel", name: String::from(s) })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelSpec {
    pub kind: ChannelKind,
    pub q: f64,
}

impl ChannelSpec {
    pub fn new(kind: ChannelKind, q: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&q) {
            return Err(Error::OutOfRange { name: "q", value: q, range: "[0, 1]" });
        }
        Ok(Self { kind, q })
    }
}

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn unsupported(kind: ChannelKind, context: &'static str) -> Error {
    Error::Unsupported { kind: String::from(kind.long_name()), context }
}

/// Kraus operators; 2×2 for the single-qubit kinds, 4×4 for the correlated
/// pair channel.
pub fn kraus_set(spec: &ChannelSpec) -> Vec<ComplexMatrix> {
    let q = spec.q;
    let id = ComplexMatrix::identity(2);
    let (x, y, z) = (matcore::pauli_x(), matcore::pauli_y(), matcore::pauli_z());
    let flip = |p: &ComplexMatrix| {
        vec![id.scale_real(math::sqrt(1.0 - q / 2.0)), p.scale_real(math::sqrt(q / 2.0))]
    };
    match spec.kind {
        ChannelKind::BitFlip => flip(&x),
        ChannelKind::BitPhaseFlip => flip(&y),
        ChannelKind::PhaseFlip => flip(&z),
        ChannelKind::Depolarizing => {
            let s = math::sqrt(q / 4.0);
            vec![
                id.scale_real(math::sqrt(1.0 - 3.0 * q / 4.0)),
                x.scale_real(s),
                y.scale_real(s),
                z.scale_real(s),
            ]
        }
        ChannelKind::AmplitudeDamping => {
            let k0 = ComplexMatrix::from_diag(&[1.0, math::sqrt(1.0 - q)]);
            let mut k1 = ComplexMatrix::zeros(2);
            k1[(0, 1)] = c(math::sqrt(q));
            vec![k0, k1]
        }
        ChannelKind::PhaseDamping => vec![
            ComplexMatrix::from_diag(&[1.0, math::sqrt(1.0 - q)]),
            ComplexMatrix::from_diag(&[0.0, math::sqrt(q)]),
        ],
        ChannelKind::CorrelatedBitFlip => vec![
            ComplexMatrix::identity(4).scale_real(math::sqrt(1.0 - q / 2.0)),
            matcore::kron(&x, &x).scale_real(math::sqrt(q / 2.0)),
        ],
    }
}

fn validate_targets(targets: &[usize], n: usize) -> Result<Vec<usize>> {
    let mut t = targets.to_vec();
    t.sort_unstable();
    for w in t.windows(2) {
        if w[0] == w[1] {
            return Err(Error::DuplicateQubit(w[0]));
        }
    }
    if let Some(&bad) = t.iter().find(|&&i| i >= n) {
        return Err(Error::QubitOutOfRange { index: bad, num_qubits: n });
    }
    Ok(t)
}

/// Applies the channel independently to each target qubit, in ascending
/// index order. The correlated kind needs exactly two targets and acts on
/// them jointly.
pub fn apply_local(rho: &DensityMatrix, spec: &ChannelSpec, targets: &[usize]) -> Result<DensityMatrix> {
    let n = rho.num_qubits();
    let targets = validate_targets(targets, n)?;
    let mut m = rho.matrix().clone();

    if spec.kind == ChannelKind::CorrelatedBitFlip {
        if targets.len() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: targets.len() });
        }
        let xs = matcore::as_2x2(&matcore::pauli_x());
        let mut flipped = m.clone();
        for &t in &targets {
            flipped.left_mul_local(&xs, t, n);
            flipped.right_mul_local_adjoint(&xs, t, n);
        }
        let mut out = m.scale_real(1.0 - spec.q / 2.0);
        out.add_scaled(&flipped, spec.q / 2.0);
        return Ok(DensityMatrix::from_trusted(out));
    }

    let ops: Vec<[C64; 4]> = kraus_set(spec).iter().map(matcore::as_2x2).collect();
    for &t in &targets {
        let mut acc = ComplexMatrix::zeros(m.dim());
        for k in &ops {
            acc.add_scaled(&m.conjugate_local(k, t, n), 1.0);
        }
        m = acc;
    }
    Ok(DensityMatrix::from_trusted(m))
}

/// Applies the channel to every qubit of the register.
pub fn apply_all(rho: &DensityMatrix, spec: &ChannelSpec) -> Result<DensityMatrix> {
    let targets: Vec<usize> = (0..rho.num_qubits()).collect();
    apply_local(rho, spec, &targets)
}

/// Analytic Bloch-vector image. Phase damping contracts the transverse
/// components by `√(1 − q)`, i.e. phase flip at `q' = 1 − √(1 − q)`.
pub fn bloch_map(spec: &ChannelSpec, n: &BlochVector) -> Result<BlochVector> {
    let q = spec.q;
    let [n1, n2, n3] = n.as_array();
    let s = 1.0 - q;
    let out = match spec.kind {
        ChannelKind::BitFlip => [n1, s * n2, s * n3],
        ChannelKind::BitPhaseFlip => [s * n1, n2, s * n3],
        ChannelKind::PhaseFlip => [s * n1, s * n2, n3],
        ChannelKind::Depolarizing => [s * n1, s * n2, s * n3],
        ChannelKind::AmplitudeDamping => {
            let r = math::sqrt(s);
            [r * n1, r * n2, s * n3 + q]
        }
        ChannelKind::PhaseDamping => {
            let r = math::sqrt(s);
            [r * n1, r * n2, n3]
        }
        ChannelKind::CorrelatedBitFlip => return Err(unsupported(spec.kind, "single-qubit Bloch maps")),
    };
    Ok(BlochVector::raw(out[0], out[1], out[2]))
}

/// Analytic image of Bell-diagonal parameters under the channel on one or
/// both qubits.
pub fn bds_param_map(spec: &ChannelSpec, c: &BdsParams, both_qubits: bool) -> Result<BdsParams> {
    let f = if both_qubits { (1.0 - spec.q) * (1.0 - spec.q) } else { 1.0 - spec.q };
    let [c1, c2, c3] = c.as_array();
    let out = match spec.kind {
        ChannelKind::BitFlip => [c1, f * c2, f * c3],
        ChannelKind::BitPhaseFlip => [f * c1, c2, f * c3],
        ChannelKind::PhaseFlip => [f * c1, f * c2, c3],
        ChannelKind::Depolarizing => [f * c1, f * c2, f * c3],
        ChannelKind::PhaseDamping => {
            let r = if both_qubits { 1.0 - spec.q } else { math::sqrt(1.0 - spec.q) };
            [r * c1, r * c2, c3]
        }
        ChannelKind::CorrelatedBitFlip => [c1, c2, c3],
        ChannelKind::AmplitudeDamping => return Err(Error::NonUnitalBds),
    };
    Ok(BdsParams::raw(out[0], out[1], out[2]))
}

/// Jump operators with rates, integrated over `duration`.
#[derive(Debug, Clone, PartialEq)]
pub struct LindbladSpec {
    jumps: Vec<ComplexMatrix>,
    rates: Vec<f64>,
    duration: f64,
}

impl LindbladSpec {
    pub fn new(jumps: Vec<ComplexMatrix>, rates: Vec<f64>, duration: f64) -> Result<Self> {
        if jumps.len() != rates.len() {
            return Err(Error::DimensionMismatch { expected: jumps.len(), found: rates.len() });
        }
        if let Some(&r) = rates.iter().find(|r| !(**r >= 0.0) || !r.is_finite()) {
            return Err(Error::OutOfRange { name: "rate", value: r, range: "[0, inf)" });
        }
        if !(duration >= 0.0) || !duration.is_finite() {
            return Err(Error::OutOfRange { name: "duration", value: duration, range: "[0, inf)" });
        }
        if let Some(j) = jumps.iter().find(|j| j.dim() != jumps[0].dim()) {
            return Err(Error::DimensionMismatch { expected: jumps[0].dim(), found: j.dim() });
        }
        Ok(Self { jumps, rates, duration })
    }

    /// Per-qubit jumps reproducing a Kraus channel: `σx` for bit flip,
    /// `σ⁻ = |g⟩⟨e|` for amplitude damping.
    pub fn for_channel(kind: ChannelKind, gamma: f64, duration: f64, num_qubits: usize) -> Result<Self> {
        let op = match kind {
            ChannelKind::BitFlip => matcore::pauli_x(),
            ChannelKind::AmplitudeDamping => lowering(),
            _ => return Err(unsupported(kind, "Lindblad clocks (bit flip and amplitude damping only)")),
        };
        let jumps = (0..num_qubits).map(|t| lift_operator(&op, t, num_qubits)).collect();
        Self::new(jumps, vec![gamma; num_qubits], duration)
    }

    pub fn jumps(&self) -> &[ComplexMatrix] {
        &self.jumps
    }

    pub fn rates(&self) -> &[f64] {
        &self.rates
    }

    pub fn duration(&self) -> f64 {
        self.duration
    }

    pub fn with_duration(&self, duration: f64) -> Result<Self> {
        Self::new(self.jumps.clone(), self.rates.clone(), duration)
    }
}

/// `|g⟩⟨e|`.
pub fn lowering() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2);
    m[(0, 1)] = c(1.0);
    m
}

/// Identity-padded single-qubit operator on qubit `target` of `n`.
pub fn lift_operator(op: &ComplexMatrix, target: usize, n: usize) -> ComplexMatrix {
    matcore::lift(op, target, n)
}

/// Number of RK4 steps for the given spec, before the default cap.
fn step_count(spec: &LindbladSpec) -> Result<u64> {
    let gmax = spec.rates.iter().copied().fold(0.0, f64::max);
    let raw = libm::ceil(gmax * spec.duration / LINDBLAD_MAX_RATE_STEP);
    if raw > LINDBLAD_STEP_LIMIT {
        return Err(Error::StepUnderflow { steps: raw });
    }
    Ok((raw as u64).min(LINDBLAD_STEP_CAP))
}

/// Fixed-step RK4 integration of `dρ/dt = Σ_k γ_k (L ρ L† − ½{L†L, ρ})`.
pub fn lindblad_evolve(rho0: &DensityMatrix, spec: &LindbladSpec) -> Result<DensityMatrix> {
    let d = rho0.dim();
    if let Some(j) = spec.jumps.iter().find(|j| j.dim() != d) {
        return Err(Error::DimensionMismatch { expected: d, found: j.dim() });
    }
    let steps = step_count(spec)?;
    if steps == 0 {
        return Ok(rho0.clone());
    }
    let dt = spec.duration / steps as f64;

    let terms: Vec<(f64, ComplexMatrix, ComplexMatrix, ComplexMatrix)> = spec
        .jumps
        .iter()
        .zip(&spec.rates)
        .filter(|(_, &g)| g > 0.0)
        .map(|(l, &g)| {
            let ldag = l.adjoint();
            let ll = &ldag * l;
            (g, l.clone(), ldag, ll)
        })
        .collect();
    let dissipator = |rho: &ComplexMatrix| -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(d);
        for (g, l, ldag, ll) in &terms {
            let jump = &(l * rho) * ldag;
            let anti = &(ll * rho) + &(rho * ll);
            out.add_scaled(&jump, *g);
            out.add_scaled(&anti, -0.5 * g);
        }
        out
    };

    let mut rho = rho0.matrix().clone();
    for _ in 0..steps {
        let k1 = dissipator(&rho);
        let mut tmp = rho.clone();
        tmp.add_scaled(&k1, dt / 2.0);
        let k2 = dissipator(&tmp);
        let mut tmp = rho.clone();
        tmp.add_scaled(&k2, dt / 2.0);
        let k3 = dissipator(&tmp);
        let mut tmp = rho.clone();
        tmp.add_scaled(&k3, dt);
        let k4 = dissipator(&tmp);
        rho.add_scaled(&k1, dt / 6.0);
        rho.add_scaled(&k2, dt / 3.0);
        rho.add_scaled(&k3, dt / 3.0);
        rho.add_scaled(&k4, dt / 6.0);
    }
    rho.hermitize();
    Ok(DensityMatrix::from_trusted(rho))
}

/// Noise strength reached after time `t` at rate `gamma`.
pub fn q_of_t(kind: ChannelKind, gamma: f64, t: f64) -> Result<f64> {
    if !(gamma >= 0.0) {
        return Err(Error::OutOfRange { name: "gamma", value: gamma, range: "[0, inf)" });
    }
    if !(t >= 0.0) {
        return Err(Error::OutOfRange { name: "t", value: t, range: "[0, inf)" });
    }
    match kind {
        ChannelKind::BitFlip => Ok(-libm::expm1(-2.0 * gamma * t)),
        ChannelKind::AmplitudeDamping => Ok(-libm::expm1(-gamma * t)),
        other => Err(Error::Unsupported {
            kind: format!("{} clock", other.long_name()),
            context: "q(t) (bit flip and amplitude damping only)",
        }),
    }
}
