//! State families, Hamiltonians and the seeded separable-state sampler.
//!
//! Basis convention: `|g⟩ = (1, 0)`, `|e⟩ = (0, 1)`, qubit 0 is the leftmost
//! Kronecker factor.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64 as C64;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::matcore::{self, ComplexMatrix};
use crate::math;

/// Tolerance on trace and on negative eigenvalues when accepting a matrix as
/// a density matrix.
pub const STATE_TOL: f64 = 1e-10;
/// Largest register accepted by the multipartite constructors.
pub const MAX_QUBITS: usize = 8;

const SQRT_HALF: f64 = core::f64::consts::FRAC_1_SQRT_2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub n1: f64,
    pub n2: f64,
    pub n3: f64,
}

impl BlochVector {
    pub fn new(n1: f64, n2: f64, n3: f64) -> Result<Self> {
        let v = Self { n1, n2, n3 };
        let norm = v.norm();
        if !norm.is_finite() || norm * norm > 1.0 + 1e-12 {
            return Err(Error::BlochOutOfBall { norm });
        }
        Ok(v)
    }

    /// Skips the ball check; used for channel outputs of valid inputs.
    pub(crate) fn raw(n1: f64, n2: f64, n3: f64) -> Self {
        Self { n1, n2, n3 }
    }

    pub fn norm(&self) -> f64 {
        math::sqrt(self.n1 * self.n1 + self.n2 * self.n2 + self.n3 * self.n3)
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.n1, self.n2, self.n3]
    }

    /// `(I + n·σ) / 2`.
    pub fn to_density(&self) -> DensityMatrix {
        let m = ComplexMatrix::from_vec(
            2,
            vec![
                C64::new((1.0 + self.n3) / 2.0, 0.0),
                C64::new(self.n1 / 2.0, -self.n2 / 2.0),
                C64::new(self.n1 / 2.0, self.n2 / 2.0),
                C64::new((1.0 - self.n3) / 2.0, 0.0),
            ],
        )
        .expect("2x2 storage");
        DensityMatrix(m)
    }

    pub fn from_density(rho: &DensityMatrix) -> Result<Self> {
        let m = rho.matrix();
        if m.dim() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: m.dim() });
        }
        let off = m[(1, 0)];
        Self::new(2.0 * off.re, 2.0 * off.im, m[(0, 0)].re - m[(1, 1)].re)
    }
}

/// Correlation coordinates of a Bell-diagonal state
/// `(I⊗I + Σ c_i σ_i⊗σ_i) / 4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BdsParams {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl BdsParams {
    pub fn new(c1: f64, c2: f64, c3: f64) -> Result<Self> {
        let c = Self { c1, c2, c3 };
        for (i, &value) in c.eigenvalues().iter().enumerate() {
            if !(value >= -1e-12) {
                return Err(Error::BdsNotPositive { label: i + 1, value });
            }
        }
        Ok(c)
    }

    pub(crate) fn raw(c1: f64, c2: f64, c3: f64) -> Self {
        Self { c1, c2, c3 }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.c1, self.c2, self.c3]
    }

    /// Spectrum in the fixed label order
    /// `(1−c1−c2−c3, 1+c1+c2−c3, 1+c1−c2+c3, 1−c1+c2+c3) / 4`.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let Self { c1, c2, c3 } = *self;
        [
            (1.0 - c1 - c2 - c3) / 4.0,
            (1.0 + c1 + c2 - c3) / 4.0,
            (1.0 + c1 - c2 + c3) / 4.0,
            (1.0 - c1 + c2 + c3) / 4.0,
        ]
    }

    pub fn is_separable(&self) -> bool {
        self.c1.abs() + self.c2.abs() + self.c3.abs() <= 1.0 + 1e-12
    }
}

/// Single-qubit matrix `[[x, y], [y*, 1 − x]]`; `x` is the ground population.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalQubitParams {
    pub x: f64,
    pub y: C64,
}

impl LocalQubitParams {
    pub fn new(x: f64, y: C64) -> Result<Self> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::OutOfRange { name: "population", value: x, range: "[0, 1]" });
        }
        let bound = x * (1.0 - x);
        let coherence_sq = y.norm_sqr();
        if !(coherence_sq <= bound + 1e-12) {
            return Err(Error::LocalNotPositive { coherence_sq, bound });
        }
        Ok(Self { x, y })
    }

    pub fn real(x: f64, y: f64) -> Result<Self> {
        Self::new(x, C64::new(y, 0.0))
    }

    pub fn matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_vec(
            2,
            vec![C64::new(self.x, 0.0), self.y, self.y.conj(), C64::new(1.0 - self.x, 0.0)],
        )
        .expect("2x2 storage")
    }
}

/// Hermitian, unit-trace, positive semidefinite matrix on a qubit register.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(ComplexMatrix);

impl DensityMatrix {
    /// Validates Hermiticity, trace and positivity.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        m.num_qubits()?;
        m.check_hermitian()?;
        let tr = m.trace();
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(Error::InvalidTrace(tr.re));
        }
        let min = matcore::eigvalsh(&m)?[0];
        if min < -STATE_TOL {
            return Err(Error::NotPositive(min));
        }
        Ok(Self(m))
    }

    /// Wraps a matrix produced by a trace-preserving, positivity-preserving
    /// operation on a valid state.
    pub(crate) fn from_trusted(m: ComplexMatrix) -> Self {
        Self(m)
    }

    pub fn maximally_mixed(num_qubits: usize) -> Self {
        let d = 1usize << num_qubits;
        Self(ComplexMatrix::identity(d).scale_real(1.0 / d as f64))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn num_qubits(&self) -> usize {
        self.0.dim().trailing_zeros() as usize
    }

    pub fn purity(&self) -> f64 {
        self.0.as_slice().iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        Ok(Self(matcore::partial_trace(&self.0, keep)?))
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Self(matcore::kron(&self.0, &other.0))
    }
}

/// Sets eigenvalues in `[−STATE_TOL, 0)` to zero and renormalizes the sum.
pub fn clamp_spectrum(eigs: &mut [f64]) {
    let mut changed = false;
    for l in eigs.iter_mut() {
        if *l < 0.0 && *l >= -STATE_TOL {
            *l = 0.0;
            changed = true;
        }
    }
    if changed {
        let s: f64 = eigs.iter().sum();
        if s > 0.0 {
            for l in eigs.iter_mut() {
                *l /= s;
            }
        }
    }
}

fn check_unit(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::OutOfRange { name, value, range: "[0, 1]" })
    }
}

pub fn bloch_to_density(n: &BlochVector) -> DensityMatrix {
    n.to_density()
}

pub fn density_to_bloch(rho: &DensityMatrix) -> Result<BlochVector> {
    BlochVector::from_density(rho)
}

pub fn make_bds(c: &BdsParams) -> Result<DensityMatrix> {
    let c = BdsParams::new(c.c1, c.c2, c.c3)?;
    let (x, y, z) = (matcore::pauli_x(), matcore::pauli_y(), matcore::pauli_z());
    let mut m = ComplexMatrix::identity(4);
    m.add_scaled(&matcore::kron(&x, &x), c.c1);
    m.add_scaled(&matcore::kron(&y, &y), c.c2);
    m.add_scaled(&matcore::kron(&z, &z), c.c3);
    Ok(DensityMatrix(m.scale_real(0.25)))
}

/// `p |g⟩⟨g| ⊗ ρ(a, c) + (1 − p) |e⟩⟨e| ⊗ ρ(a, 0)`.
pub fn classical_quantum(p: f64, a: f64, c: C64) -> Result<DensityMatrix> {
    check_unit("p", p)?;
    let coherent = LocalQubitParams::new(a, c)?.matrix();
    let plain = LocalQubitParams::new(a, C64::new(0.0, 0.0))?.matrix();
    let g = ComplexMatrix::from_diag(&[1.0, 0.0]);
    let e = ComplexMatrix::from_diag(&[0.0, 1.0]);
    let mut m = matcore::kron(&g, &coherent).scale_real(p);
    m.add_scaled(&matcore::kron(&e, &plain), 1.0 - p);
    Ok(DensityMatrix(m))
}

/// `p ρ(a, c) ⊗ ρ(a, d) + (1 − p) ρ(a, d) ⊗ ρ(a, c)`.
pub fn symmetric_pair(p: f64, a: f64, c: C64, d: C64) -> Result<DensityMatrix> {
    check_unit("p", p)?;
    let rc = LocalQubitParams::new(a, c)?.matrix();
    let rd = LocalQubitParams::new(a, d)?.matrix();
    let mut m = matcore::kron(&rc, &rd).scale_real(p);
    m.add_scaled(&matcore::kron(&rd, &rc), 1.0 - p);
    Ok(DensityMatrix(m))
}

/// Average over all orderings of `⊗_i ρ(a, c_i)`.
///
/// Accumulates over subsets instead of the `N!` orderings: the sum over
/// orderings of a set `T` equals `Σ_{i∈T} ρ_i ⊗ (sum over orderings of T∖{i})`.
pub fn symmetrized_multipartite(a: f64, coherences: &[f64]) -> Result<DensityMatrix> {
    let n = coherences.len();
    if n == 0 {
        return Err(Error::OutOfRange { name: "qubit count", value: 0.0, range: "[1, 8]" });
    }
    if n > MAX_QUBITS {
        return Err(Error::TooManyQubits { n, max: MAX_QUBITS });
    }
    let locals: Vec<ComplexMatrix> = coherences
        .iter()
        .map(|&c| LocalQubitParams::real(a, c).map(|l| l.matrix()))
        .collect::<Result<_>>()?;

    // sums[mask] holds the ordering sum for the subset `mask`, built by size.
    let full = (1usize << n) - 1;
    let mut sums: Vec<Option<ComplexMatrix>> = vec![None; full + 1];
    for i in 0..n {
        sums[1 << i] = Some(locals[i].clone());
    }
    for size in 2..=n {
        for mask in 1..=full {
            if (mask as u32).count_ones() as usize != size {
                continue;
            }
            let mut acc: Option<ComplexMatrix> = None;
            for i in (0..n).filter(|i| mask & (1 << i) != 0) {
                let rest = sums[mask & !(1 << i)].as_ref().expect("smaller subsets first");
                let term = matcore::kron(&locals[i], rest);
                match acc.as_mut() {
                    Some(m) => m.add_scaled(&term, 1.0),
                    None => acc = Some(term),
                }
            }
            sums[mask] = acc;
        }
        for mask in 1..=full {
            if (mask as u32).count_ones() as usize == size - 1 {
                sums[mask] = None;
            }
        }
    }
    let factorial: f64 = (1..=n).map(|k| k as f64).product();
    let m = sums[full].take().expect("full set computed").scale_real(1.0 / factorial);
    Ok(DensityMatrix(m))
}

/// Coherence list `c_i = c0 + i·δ` for `i = 1..=n`.
pub fn linear_coherences(n: usize, c0: f64, delta: f64) -> Vec<f64> {
    (1..=n).map(|i| c0 + i as f64 * delta).collect()
}

/// `Σ_i p_i ρ_i^A ⊗ ρ_i^B`.
pub fn separable_mixture(terms: &[(f64, LocalQubitParams, LocalQubitParams)]) -> Result<DensityMatrix> {
    let total: f64 = terms.iter().map(|t| t.0).sum();
    if terms.is_empty() || (total - 1.0).abs() > STATE_TOL || terms.iter().any(|t| t.0 < 0.0) {
        return Err(Error::InvalidTrace(total));
    }
    let mut m = ComplexMatrix::zeros(4);
    for (p, la, lb) in terms {
        m.add_scaled(&matcore::kron(&la.matrix(), &lb.matrix()), *p);
    }
    Ok(DensityMatrix(m))
}

/// Seeded generator for one sample stream.
pub fn sample_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform draw on `[0, 1)` with 53 random bits.
pub fn uniform(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Random separable two-qubit state: weights from a flat Dirichlet draw,
/// populations uniform on `[0, 1]`, real non-negative coherences uniform on
/// `[0, √(a(1 − a))]`.
pub fn random_separable_with(rng: &mut impl RngCore, m: usize) -> Result<DensityMatrix> {
    if m == 0 {
        return Err(Error::OutOfRange { name: "terms", value: 0.0, range: "[1, inf)" });
    }
    let raw: Vec<f64> = (0..m).map(|_| -math::ln(1.0 - uniform(rng))).collect();
    let sum: f64 = raw.iter().sum();
    let weights: Vec<f64> = if sum > 0.0 {
        raw.iter().map(|w| w / sum).collect()
    } else {
        vec![1.0 / m as f64; m]
    };
    let mut terms = Vec::with_capacity(m);
    for &w in &weights {
        let la = random_local(rng);
        let lb = random_local(rng);
        terms.push((w, la, lb));
    }
    separable_mixture(&terms)
}

fn random_local(rng: &mut impl RngCore) -> LocalQubitParams {
    let a = uniform(rng);
    let c = uniform(rng) * math::sqrt(a * (1.0 - a));
    LocalQubitParams { x: a, y: C64::new(c, 0.0) }
}

pub fn random_separable(seed: u64, m: usize) -> Result<DensityMatrix> {
    random_separable_with(&mut sample_rng(seed, 0), m)
}

/// `cos θ |gg⟩ + sin θ |ee⟩` as a projector.
pub fn entangled_theta(theta: f64) -> DensityMatrix {
    let zero = C64::new(0.0, 0.0);
    let psi = [C64::new(math::cos(theta), 0.0), zero, zero, C64::new(math::sin(theta), 0.0)];
    DensityMatrix(ComplexMatrix::outer(&psi, &psi))
}

fn hadamard() -> [C64; 4] {
    let h = C64::new(SQRT_HALF, 0.0);
    [h, h, h, -h]
}

/// Conjugation by a Hadamard on every qubit.
pub fn apply_hadamard_all(rho: &DensityMatrix) -> DensityMatrix {
    let n = rho.num_qubits();
    let mut m = rho.0.clone();
    let h = hadamard();
    for t in 0..n {
        m.left_mul_local(&h, t, n);
        m.right_mul_local_adjoint(&h, t, n);
    }
    DensityMatrix(m)
}

/// `(U_H ⊗ U_H) ρ (U_H ⊗ U_H)†` for a two-qubit state.
pub fn apply_hadamard_pair(rho: &DensityMatrix) -> Result<DensityMatrix> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, found: rho.dim() });
    }
    Ok(apply_hadamard_all(rho))
}

/// Named Hamiltonian families (energies in units of the field strength).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HamiltonianKind {
    /// `Σ_i |e⟩⟨e|_i`; on one qubit this is `diag(0, 1)`.
    Excitation,
    /// `−½ Σ_i σz_i`.
    ZField,
    /// `strength · Σ_i σx_i`.
    XField { strength: f64 },
    /// Two qubits: `h (σx⊗I + I⊗σx) + J σx⊗σx`.
    XxInteracting { h: f64, j: f64 },
    /// Two qubits: `h (σz⊗I + I⊗σz) + J σx⊗σx`.
    ZFieldXx { h: f64, j: f64 },
    /// Arbitrary Hermitian matrix.
    Custom,
}

impl HamiltonianKind {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Excitation => "excitation",
            Self::ZField => "z-field",
            Self::XField { .. } => "x-field",
            Self::XxInteracting { .. } => "xx-interacting",
            Self::ZFieldXx { .. } => "z-field-xx",
            Self::Custom => "custom",
        }
    }
}

/// Orthonormal eigenbasis of a Hamiltonian, used for dephasing and for
/// coherence. Product bases are kept in factored form so that large
/// registers never need a dense change of basis.
#[derive(Debug, Clone, PartialEq)]
pub enum EigenBasis {
    Computational,
    /// The same single-qubit unitary (columns = local eigenvectors) on every
    /// qubit.
    LocalProduct([C64; 4]),
    /// Columns are eigenvectors.
    Dense(ComplexMatrix),
}

impl EigenBasis {
    /// `B† M B`.
    pub fn to_basis(&self, m: &ComplexMatrix) -> ComplexMatrix {
        match self {
            Self::Computational => m.clone(),
            Self::LocalProduct(u) => {
                let n = m.dim().trailing_zeros() as usize;
                let udag = [u[0].conj(), u[2].conj(), u[1].conj(), u[3].conj()];
                let mut out = m.clone();
                for t in 0..n {
                    out.left_mul_local(&udag, t, n);
                    out.right_mul_local_adjoint(&udag, t, n);
                }
                out
            }
            Self::Dense(v) => m.in_basis(v),
        }
    }

    /// `B M B†`.
    pub fn from_basis(&self, m: &ComplexMatrix) -> ComplexMatrix {
        match self {
            Self::Computational => m.clone(),
            Self::LocalProduct(u) => {
                let n = m.dim().trailing_zeros() as usize;
                let mut out = m.clone();
                for t in 0..n {
                    out.left_mul_local(u, t, n);
                    out.right_mul_local_adjoint(u, t, n);
                }
                out
            }
            Self::Dense(v) => m.from_basis(v),
        }
    }
}

/// A Hermitian operator together with a canonical eigenbasis and the energy
/// of each basis vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Hamiltonian {
    kind: HamiltonianKind,
    matrix: ComplexMatrix,
    basis: EigenBasis,
    energies: Vec<f64>,
}

impl Hamiltonian {
    pub fn build(kind: HamiltonianKind, num_qubits: usize) -> Result<Self> {
        if num_qubits == 0 || num_qubits > MAX_QUBITS {
            return Err(Error::TooManyQubits { n: num_qubits, max: MAX_QUBITS });
        }
        let n = num_qubits;
        let d = 1usize << n;
        let (x, z) = (matcore::pauli_x(), matcore::pauli_z());
        let sum_local = |op: &ComplexMatrix| {
            let mut m = ComplexMatrix::zeros(d);
            for t in 0..n {
                m.add_scaled(&matcore::lift(op, t, n), 1.0);
            }
            m
        };
        let two_qubit_only = |name: &'static str| -> Result<()> {
            if n == 2 {
                Ok(())
            } else {
                Err(Error::Unsupported { kind: format!("{name} Hamiltonian on {n} qubits"), context: "two-qubit registers only" })
            }
        };
        match kind {
            HamiltonianKind::Excitation => {
                let energies: Vec<f64> = (0..d).map(|i| (i as u32).count_ones() as f64).collect();
                let matrix = ComplexMatrix::from_diag(&energies);
                Ok(Self { kind, matrix, basis: EigenBasis::Computational, energies })
            }
            HamiltonianKind::ZField => {
                let energies: Vec<f64> =
                    (0..d).map(|i| (i as u32).count_ones() as f64 - n as f64 / 2.0).collect();
                let matrix = ComplexMatrix::from_diag(&energies);
                Ok(Self { kind, matrix, basis: EigenBasis::Computational, energies })
            }
            HamiltonianKind::XField { strength } => {
                let matrix = sum_local(&x).scale_real(strength);
                // Hadamard maps |g⟩ to |+⟩ (σx = +1) and |e⟩ to |−⟩ (σx = −1).
                let energies: Vec<f64> = (0..d)
                    .map(|i| strength * (n as f64 - 2.0 * (i as u32).count_ones() as f64))
                    .collect();
                Ok(Self { kind, matrix, basis: EigenBasis::LocalProduct(hadamard()), energies })
            }
            HamiltonianKind::XxInteracting { h, j } => {
                two_qubit_only("xx-interacting")?;
                let mut matrix = sum_local(&x).scale_real(h);
                matrix.add_scaled(&matcore::kron(&x, &x), j);
                let s = SQRT_HALF;
                // ψ⁻, φ⁻, |−−⟩, |++⟩: the first two span the degenerate −J level.
                let cols = [
                    [0.0, s, -s, 0.0],
                    [s, 0.0, 0.0, -s],
                    [0.5, -0.5, -0.5, 0.5],
                    [0.5, 0.5, 0.5, 0.5],
                ];
                let mut v = ComplexMatrix::zeros(4);
                for (k, col) in cols.iter().enumerate() {
                    for (r, &val) in col.iter().enumerate() {
                        v[(r, k)] = C64::new(val, 0.0);
                    }
                }
                let energies = vec![-j, -j, -2.0 * h + j, 2.0 * h + j];
                Ok(Self { kind, matrix, basis: EigenBasis::Dense(v), energies })
            }
            HamiltonianKind::ZFieldXx { h, j } => {
                two_qubit_only("z-field-xx")?;
                let mut matrix = sum_local(&z).scale_real(h);
                matrix.add_scaled(&matcore::kron(&x, &x), j);
                Self::dense(kind, matrix)
            }
            HamiltonianKind::Custom => Err(Error::Unsupported {
                kind: "custom".into(),
                context: "Hamiltonian::build (use Hamiltonian::from_matrix)",
            }),
        }
    }

    /// Arbitrary Hermitian matrix; the eigenbasis comes from the Jacobi
    /// solver.
    pub fn from_matrix(matrix: ComplexMatrix) -> Result<Self> {
        matrix.num_qubits()?;
        Self::dense(HamiltonianKind::Custom, matrix)
    }

    fn dense(kind: HamiltonianKind, matrix: ComplexMatrix) -> Result<Self> {
        let sd = matcore::herm_eig(&matrix)?;
        Ok(Self { kind, matrix, basis: EigenBasis::Dense(sd.eigenvectors), energies: sd.eigenvalues })
    }

    pub fn kind(&self) -> HamiltonianKind {
        self.kind
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn basis(&self) -> &EigenBasis {
        &self.basis
    }

    /// Energy of each basis vector, in basis order (not sorted).
    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn sorted_energies(&self) -> Vec<f64> {
        let mut e = self.energies.clone();
        e.sort_by(f64::total_cmp);
        e
    }
}

pub fn hamiltonian_builder(kind: HamiltonianKind, num_qubits: usize) -> Result<Hamiltonian> {
    Hamiltonian::build(kind, num_qubits)
}
