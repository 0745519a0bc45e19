//! Ergotropy, its incoherent and coherent parts, and the coherence and
//! entanglement measures that accompany them.
//!
//! Dephasing removes every off-diagonal element in the Hamiltonian's
//! canonical eigenbasis (see [`EigenBasis`]), including elements inside a
//! degenerate energy level.

use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64 as C64;

use crate::channels::{bloch_map, ChannelKind, ChannelSpec};
use crate::error::{Error, Result};
use crate::matcore::{self, ComplexMatrix};
use crate::math;
use crate::qstate::{clamp_spectrum, BlochVector, DensityMatrix, EigenBasis, Hamiltonian};

/// Work content of one state with respect to one Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErgotropyReport {
    /// `Tr[Hρ]`.
    pub energy: f64,
    pub total: f64,
    pub incoherent: f64,
    pub coherent: f64,
    pub passive_energy: f64,
    pub dephased_passive_energy: f64,
    pub l1_coherence: f64,
}

fn check_dims(rho: &DensityMatrix, h: &Hamiltonian) -> Result<()> {
    if rho.dim() != h.dim() {
        return Err(Error::DimensionMismatch { expected: h.dim(), found: rho.dim() });
    }
    Ok(())
}

/// Pairs descending weights with ascending energies.
fn passive_energy_of(weights: &[f64], sorted_energies: &[f64]) -> f64 {
    let mut w = weights.to_vec();
    w.sort_by(|a, b| b.total_cmp(a));
    w.iter().zip(sorted_energies).map(|(p, e)| p * e).sum()
}

/// Basis indices ordered by energy, ties by index.
fn energy_order(h: &Hamiltonian) -> Vec<usize> {
    let e = h.energies();
    let mut idx: Vec<usize> = (0..e.len()).collect();
    idx.sort_by(|&a, &b| e[a].total_cmp(&e[b]));
    idx
}

fn spectrum(rho: &DensityMatrix) -> Result<Vec<f64>> {
    let mut eigs = matcore::eigvalsh(rho.matrix())?;
    clamp_spectrum(&mut eigs);
    Ok(eigs)
}

/// `Σ_k λ_k^↓ |ε_k^↑⟩⟨ε_k^↑|`.
pub fn passive_state(rho: &DensityMatrix, h: &Hamiltonian) -> Result<DensityMatrix> {
    check_dims(rho, h)?;
    let mut eigs = matcore::herm_eig(rho.matrix())?.eigenvalues;
    clamp_spectrum(&mut eigs);
    eigs.reverse();
    let order = energy_order(h);
    let mut diag = alloc::vec![0.0; h.dim()];
    for (k, &i) in order.iter().enumerate() {
        diag[i] = eigs[k];
    }
    let m = h.basis().from_basis(&ComplexMatrix::from_diag(&diag));
    Ok(DensityMatrix::from_trusted(m))
}

pub fn passive_energy(rho: &DensityMatrix, h: &Hamiltonian) -> Result<f64> {
    check_dims(rho, h)?;
    Ok(passive_energy_of(&spectrum(rho)?, &h.sorted_energies()))
}

/// `Tr[H(ρ − π_ρ)]`.
pub fn ergotropy(rho: &DensityMatrix, h: &Hamiltonian) -> Result<f64> {
    check_dims(rho, h)?;
    let pops = populations(rho, h);
    let energy: f64 = pops.iter().zip(h.energies()).map(|(p, e)| p * e).sum();
    Ok(energy - passive_energy(rho, h)?)
}

/// Diagonal of `ρ` in the Hamiltonian's eigenbasis.
pub fn populations(rho: &DensityMatrix, h: &Hamiltonian) -> Vec<f64> {
    match h.basis() {
        EigenBasis::Computational => rho.matrix().diag_real(),
        basis => basis.to_basis(rho.matrix()).diag_real(),
    }
}

/// `ζ(ρ) = Σ_i ⟨ε_i|ρ|ε_i⟩ |ε_i⟩⟨ε_i|`.
pub fn dephase(rho: &DensityMatrix, h: &Hamiltonian) -> Result<DensityMatrix> {
    check_dims(rho, h)?;
    let diag = ComplexMatrix::from_diag(&populations(rho, h));
    Ok(DensityMatrix::from_trusted(h.basis().from_basis(&diag)))
}

/// Sum of off-diagonal moduli in the Hamiltonian's eigenbasis.
pub fn l1_coherence(rho: &DensityMatrix, h: &Hamiltonian) -> Result<f64> {
    check_dims(rho, h)?;
    Ok(off_diagonal_l1(&h.basis().to_basis(rho.matrix())))
}

fn off_diagonal_l1(m: &ComplexMatrix) -> f64 {
    let n = m.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m[(i, j)].norm();
            }
        }
    }
    s
}

/// Total, incoherent and coherent ergotropy with the passive energies and
/// l1 coherence.
pub fn decompose(rho: &DensityMatrix, h: &Hamiltonian) -> Result<ErgotropyReport> {
    check_dims(rho, h)?;
    let in_basis = h.basis().to_basis(rho.matrix());
    let pops = in_basis.diag_real();
    let energies = h.energies();
    let sorted = h.sorted_energies();

    let energy: f64 = pops.iter().zip(energies).map(|(p, e)| p * e).sum();
    let passive = passive_energy_of(&spectrum(rho)?, &sorted);
    let dephased_passive = passive_energy_of(&pops, &sorted);
    let total = energy - passive;
    let incoherent = (energy - dephased_passive).max(0.0);
    Ok(ErgotropyReport {
        energy,
        total,
        incoherent,
        coherent: total - incoherent,
        passive_energy: passive,
        dephased_passive_energy: dephased_passive,
        l1_coherence: off_diagonal_l1(&in_basis),
    })
}

/// Reference Hamiltonian for single-qubit closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    /// `H = |e⟩⟨e|`.
    Computational,
    /// `H = σx`.
    X,
}

impl Basis {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Computational => "computational",
            Self::X => "x",
        }
    }

    pub fn hamiltonian(&self) -> Hamiltonian {
        use crate::qstate::HamiltonianKind;
        let kind = match self {
            Self::Computational => HamiltonianKind::Excitation,
            Self::X => HamiltonianKind::XField { strength: 1.0 },
        };
        Hamiltonian::build(kind, 1).expect("single-qubit Hamiltonian")
    }
}

impl core::str::FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "computational" | "z" => Ok(Self::Computational),
            "x" => Ok(Self::X),
            _ => Err(Error::UnknownKind { what: "basis", name: String::from(s) }),
        }
    }
}

fn unsupported_pair(kind: ChannelKind, basis: Basis) -> Error {
    Error::Unsupported {
        kind: alloc::format!("{} in the {} basis", kind.long_name(), basis.name()),
        context: "single-qubit closed forms",
    }
}

/// Amplitude-damping branch point `z = |n3| / (1 + |n3|)`.
pub fn damping_critical_point(n: &BlochVector) -> f64 {
    n.n3.abs() / (1.0 + n.n3.abs())
}

/// Closed-form report for a single qubit prepared with Bloch vector `n` and
/// sent through the channel at strength `q`.
pub fn closed_form_single(kind: ChannelKind, q: f64, n: &BlochVector, basis: Basis) -> Result<ErgotropyReport> {
    let spec = ChannelSpec::new(kind, q)?;
    match basis {
        Basis::Computational => closed_form_computational(kind, q, n, &spec),
        Basis::X => closed_form_x(kind, q, n, &spec),
    }
}

fn closed_form_computational(kind: ChannelKind, q: f64, n: &BlochVector, spec: &ChannelSpec) -> Result<ErgotropyReport> {
    if kind == ChannelKind::PhaseDamping {
        let q_eff = 1.0 - math::sqrt(1.0 - q);
        return closed_form_single(ChannelKind::PhaseFlip, q_eff, n, Basis::Computational);
    }
    if kind == ChannelKind::CorrelatedBitFlip {
        return Err(unsupported_pair(kind, Basis::Computational));
    }
    let m = bloch_map(spec, n)?;
    let r = m.norm();
    let a3 = n.n3.abs();
    let negative = n.n3 < 0.0;
    let s = 1.0 - q;

    let (incoherent, coherent, coherence) = match kind {
        ChannelKind::BitFlip | ChannelKind::BitPhaseFlip => (
            if negative { a3 * s } else { 0.0 },
            0.5 * (r - a3 * s),
            math::hypot(m.n1, m.n2),
        ),
        ChannelKind::PhaseFlip => (
            if negative { a3 } else { 0.0 },
            0.5 * (r - a3),
            math::sqrt(n.n1 * n.n1 * s * s + n.n2 * n.n2 * s * s),
        ),
        ChannelKind::Depolarizing => (
            if negative { a3 * s } else { 0.0 },
            0.5 * s * (n.norm() - a3),
            s * math::hypot(n.n1, n.n2),
        ),
        ChannelKind::AmplitudeDamping => {
            let z = damping_critical_point(n);
            let (wi, wc) = if negative && q <= z {
                ((a3 - q * (1.0 + a3)).max(0.0), 0.5 * (r - a3 * s + q))
            } else if negative {
                (0.0, 0.5 * (r + a3 * s - q))
            } else {
                (0.0, 0.5 * (r - n.n3 * s - q))
            };
            (wi, wc, math::sqrt((n.n1 * n.n1 + n.n2 * n.n2) * s))
        }
        ChannelKind::PhaseDamping | ChannelKind::CorrelatedBitFlip => unreachable!("handled above"),
    };

    Ok(ErgotropyReport {
        energy: (1.0 - m.n3) / 2.0,
        total: incoherent + coherent,
        incoherent,
        coherent,
        passive_energy: 0.5 * (1.0 - r),
        dephased_passive_energy: 0.5 * (1.0 - m.n3.abs()),
        l1_coherence: coherence,
    })
}

fn closed_form_x(kind: ChannelKind, q: f64, n: &BlochVector, spec: &ChannelSpec) -> Result<ErgotropyReport> {
    match kind {
        ChannelKind::PhaseFlip => {}
        ChannelKind::PhaseDamping => {
            let q_eff = 1.0 - math::sqrt(1.0 - q);
            return closed_form_single(ChannelKind::PhaseFlip, q_eff, n, Basis::X);
        }
        other => return Err(unsupported_pair(other, Basis::X)),
    }
    let m = bloch_map(spec, n)?;
    let r = m.norm();
    let s = 1.0 - q;
    let incoherent = 2.0 * m.n1.max(0.0);
    let coherent = r - n.n1.abs() * s;
    Ok(ErgotropyReport {
        energy: m.n1,
        total: incoherent + coherent,
        incoherent,
        coherent,
        passive_energy: -r,
        dephased_passive_energy: -m.n1.abs(),
        l1_coherence: math::sqrt(n.n2 * n.n2 * s * s + n.n3 * n.n3),
    })
}

/// Noise strength at which coherent ergotropy starts to exceed its
/// noiseless value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Threshold {
    /// May lie outside `[0, 1]`: below zero every strength enhances, above
    /// one none does.
    Finite(f64),
    /// The contracted component vanishes, so no strength enhances.
    NoFinite,
}

impl Threshold {
    pub fn value(&self) -> Option<f64> {
        match self {
            Self::Finite(v) => Some(*v),
            Self::NoFinite => None,
        }
    }
}

/// `q_b = 2(n_a² + n_b² − |n_b|·‖n‖) / n_a²`, where `n_a` is the coherence
/// component the channel contracts and `n_b` the population-axis component.
/// Defined for bit flip and bit-phase flip in the computational basis and
/// for phase flip in the x basis.
pub fn threshold_q(kind: ChannelKind, basis: Basis, n: &BlochVector) -> Result<Threshold> {
    let (na, nb) = match (kind, basis) {
        (ChannelKind::BitFlip, Basis::Computational) => (n.n2, n.n3),
        (ChannelKind::BitPhaseFlip, Basis::Computational) => (n.n1, n.n3),
        (ChannelKind::PhaseFlip, Basis::X) => (n.n2, n.n1),
        (k, b) => {
            return Err(Error::Unsupported {
                kind: alloc::format!("{} in the {} basis", k.long_name(), b.name()),
                context: "enhancement thresholds",
            })
        }
    };
    if na == 0.0 {
        return Ok(Threshold::NoFinite);
    }
    let na2 = na * na;
    Ok(Threshold::Finite(2.0 * (na2 + nb * nb - nb.abs() * n.norm()) / na2))
}

fn bell_vectors() -> ([C64; 4], [C64; 4]) {
    let s = core::f64::consts::FRAC_1_SQRT_2;
    let z = C64::new(0.0, 0.0);
    let psi_minus = [z, C64::new(s, 0.0), C64::new(-s, 0.0), z];
    let phi_minus = [C64::new(s, 0.0), z, z, C64::new(-s, 0.0)];
    (psi_minus, phi_minus)
}

/// `2 |⟨ψ⁻|ρ|φ⁻⟩|` with `ψ⁻ = (|ge⟩ − |eg⟩)/√2`, `φ⁻ = (|gg⟩ − |ee⟩)/√2`.
pub fn coherence_degenerate(rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, found: rho.dim() });
    }
    let (psi, phi) = bell_vectors();
    let m = rho.matrix();
    let mut amp = C64::new(0.0, 0.0);
    for i in 0..4 {
        for j in 0..4 {
            amp += psi[i].conj() * m[(i, j)] * phi[j];
        }
    }
    Ok(2.0 * amp.norm())
}

/// Wootters concurrence of a two-qubit state.
///
/// The spin-flip spectrum is taken as the singular values of
/// `τ = Ψ† (σy⊗σy) Ψ*` with `ρ = ΨΨ†`, read off the Hermitian dilation
/// `[[0, τ], [τ†, 0]]`. This avoids square roots of near-zero eigenvalues of
/// `√ρ ρ̃ √ρ`, which would amplify rounding to about 1e-8.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, found: rho.dim() });
    }
    let sd = matcore::herm_eig(rho.matrix())?;
    let cutoff = 1e-14 * sd.eigenvalues.iter().copied().fold(0.0, f64::max);
    let mut psi = ComplexMatrix::zeros(4);
    for k in 0..4 {
        let l = sd.eigenvalues[k];
        let w = if l > cutoff { math::sqrt(l) } else { 0.0 };
        for r in 0..4 {
            psi[(r, k)] = sd.eigenvectors[(r, k)] * w;
        }
    }
    let yy = matcore::kron(&matcore::pauli_y(), &matcore::pauli_y());
    let tau = &(&psi.adjoint() * &yy) * &psi.conj();

    let mut dilation = ComplexMatrix::zeros(8);
    for i in 0..4 {
        for j in 0..4 {
            dilation[(i, 4 + j)] = tau[(i, j)];
            dilation[(4 + j, i)] = tau[(i, j)].conj();
        }
    }
    let eig = matcore::eigvalsh(&dilation)?;
    let lam = &eig[4..];
    Ok((lam[3] - lam[2] - lam[1] - lam[0]).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::apply_local;
    use crate::qstate::{apply_hadamard_pair, entangled_theta, make_bds, BdsParams, HamiltonianKind};

    fn bloch(n1: f64, n2: f64, n3: f64) -> BlochVector {
        BlochVector::new(n1, n2, n3).unwrap()
    }

    fn h0() -> Hamiltonian {
        Basis::Computational.hamiltonian()
    }

    #[test]
    fn passive_examples() {
        let thermal = DensityMatrix::new(ComplexMatrix::from_diag(&[0.8, 0.2])).unwrap();
        assert!(passive_state(&thermal, &h0()).unwrap().matrix().max_abs_diff(thermal.matrix()) < 1e-15);
        let excited = DensityMatrix::new(ComplexMatrix::from_diag(&[0.0, 1.0])).unwrap();
        let pi = passive_state(&excited, &h0()).unwrap();
        assert!(pi.matrix().max_abs_diff(&ComplexMatrix::from_diag(&[1.0, 0.0])) < 1e-15);

        let hz = Hamiltonian::build(HamiltonianKind::ZField, 2).unwrap();
        let bds = make_bds(&BdsParams::new(0.5, 0.3, 0.1).unwrap()).unwrap();
        assert!((passive_energy(&bds, &hz).unwrap() + 0.4).abs() < 1e-12);
        let pi = passive_state(&bds, &hz).unwrap();
        let comm = &(pi.matrix() * hz.matrix()) - &(hz.matrix() * pi.matrix());
        assert!(comm.frobenius_norm() < 1e-12);
    }

    #[test]
    fn ergotropy_examples() {
        let w = ergotropy(&bloch(0.6, 0.5, 0.4).to_density(), &h0()).unwrap();
        assert!((w - (0.77f64.sqrt() - 0.4) / 2.0).abs() < 1e-12);
        assert!((w - 0.238_748_219_369_606_1).abs() < 1e-12);

        let hz = Hamiltonian::build(HamiltonianKind::ZField, 2).unwrap();
        let bds = make_bds(&BdsParams::new(0.5, 0.3, 0.1).unwrap()).unwrap();
        assert!((ergotropy(&bds, &hz).unwrap() - 0.4).abs() < 1e-12);
        let hx = Hamiltonian::build(HamiltonianKind::XField { strength: 0.5 }, 3).unwrap();
        assert!(ergotropy(&DensityMatrix::maximally_mixed(3), &hx).unwrap().abs() < 1e-15);
    }

    #[test]
    fn dephasing_examples() {
        let rho = bloch(0.6, 0.5, 0.4).to_density();
        let z = dephase(&rho, &h0()).unwrap();
        assert!(z.matrix().max_abs_diff(&ComplexMatrix::from_diag(&[0.7, 0.3])) < 1e-15);
        let x = dephase(&rho, &Basis::X.hamiltonian()).unwrap();
        let back = BlochVector::from_density(&x).unwrap();
        assert!((back.n1 - 0.6).abs() < 1e-15 && back.n2.abs() < 1e-15 && back.n3.abs() < 1e-15);
    }

    #[test]
    fn decompose_examples() {
        let r = decompose(&bloch(0.6, 0.5, -0.4).to_density(), &h0()).unwrap();
        assert!((r.incoherent - 0.4).abs() < 1e-12);
        assert!((r.coherent - (0.77f64.sqrt() - 0.4) / 2.0).abs() < 1e-12);
        let r = decompose(&bloch(0.6, 0.5, 0.4).to_density(), &h0()).unwrap();
        assert_eq!(r.incoherent, 0.0);
        assert!((r.coherent - r.total).abs() < 1e-15);
        assert!((r.l1_coherence - 2.0 * 0.61f64.sqrt() / 2.0).abs() < 1e-12);
        let diag = DensityMatrix::new(ComplexMatrix::from_diag(&[0.1, 0.2, 0.3, 0.4])).unwrap();
        let hz = Hamiltonian::build(HamiltonianKind::ZField, 2).unwrap();
        let r = decompose(&diag, &hz).unwrap();
        assert!(r.coherent.abs() < 1e-15);
        assert!(decompose(&diag, &h0()).is_err());
    }

    #[test]
    fn closed_forms_match_numerics() {
        let ns = [bloch(0.6, 0.5, 0.4), bloch(0.1, 0.3, -0.4), bloch(-0.3, 0.2, -0.9), bloch(0.0, 0.0, 0.5)];
        for n in &ns {
            for kind in ChannelKind::ALL {
                for basis in [Basis::Computational, Basis::X] {
                    for q in [0.0, 0.1, 0.2857, 0.5, 0.9, 1.0] {
                        let Ok(cf) = closed_form_single(kind, q, n, basis) else {
                            assert!(kind == ChannelKind::CorrelatedBitFlip || basis == Basis::X);
                            continue;
                        };
                        let spec = ChannelSpec::new(kind, q).unwrap();
                        let rho = apply_local(&n.to_density(), &spec, &[0]).unwrap();
                        let num = decompose(&rho, &basis.hamiltonian()).unwrap();
                        let pairs = [
                            (cf.total, num.total),
                            (cf.incoherent, num.incoherent),
                            (cf.coherent, num.coherent),
                            (cf.passive_energy, num.passive_energy),
                            (cf.dephased_passive_energy, num.dephased_passive_energy),
                            (cf.l1_coherence, num.l1_coherence),
                            (cf.energy, num.energy),
                        ];
                        for (a, b) in pairs {
                            assert!((a - b).abs() < 1e-10, "{kind} {basis:?} q={q} n={n:?}: {a} vs {b}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn residual_coherence_bound_is_tight_at_full_bit_flip() {
        let r = closed_form_single(ChannelKind::BitFlip, 1.0, &bloch(0.6, 0.5, 0.4), Basis::Computational).unwrap();
        assert!((r.coherent - 0.3).abs() < 1e-15);
        assert!((r.coherent - r.l1_coherence / 2.0).abs() < 1e-15);
    }

    #[test]
    fn phase_flip_keeps_incoherent_part() {
        let n = bloch(0.2, -0.4, -0.5);
        let w0 = closed_form_single(ChannelKind::PhaseFlip, 0.0, &n, Basis::Computational).unwrap().incoherent;
        for q in [0.1, 0.5, 1.0] {
            let w = closed_form_single(ChannelKind::PhaseFlip, q, &n, Basis::Computational).unwrap();
            assert_eq!(w.incoherent, w0);
        }
    }

    #[test]
    fn thresholds() {
        let t = |n: BlochVector| threshold_q(ChannelKind::BitFlip, Basis::Computational, &n).unwrap().value().unwrap();
        assert!((t(bloch(0.6, 0.5, 0.4)) - 0.472_011_396_034_520_9).abs() < 1e-12);
        assert!((t(bloch(0.4, 0.3, 0.6)) + 0.413_666_234_542_205_64).abs() < 1e-12);
        assert!((t(bloch(0.1, 0.5, 0.2)) - 1.443_643_907_991_734_5).abs() < 1e-12);
        assert_eq!(
            threshold_q(ChannelKind::BitFlip, Basis::Computational, &bloch(0.6, 0.0, 0.4)).unwrap(),
            Threshold::NoFinite
        );
        assert!(threshold_q(ChannelKind::PhaseFlip, Basis::Computational, &bloch(0.6, 0.5, 0.4)).is_err());
        let pfx = threshold_q(ChannelKind::PhaseFlip, Basis::X, &bloch(0.4, 0.5, 0.6)).unwrap().value().unwrap();
        let bf_swapped = t(bloch(0.6, 0.5, 0.4));
        assert!((pfx - bf_swapped).abs() < 1e-15);
    }

    #[test]
    fn damping_branch_point() {
        assert!((damping_critical_point(&bloch(0.1, 0.3, -0.4)) - 0.4 / 1.4).abs() < 1e-15);
    }

    #[test]
    fn degenerate_coherence_examples() {
        assert_eq!(coherence_degenerate(&DensityMatrix::maximally_mixed(2)).unwrap(), 0.0);
        let (psi, _) = bell_vectors();
        let singlet = DensityMatrix::new(ComplexMatrix::outer(&psi, &psi)).unwrap();
        assert!(coherence_degenerate(&singlet).unwrap() < 1e-15);
        let s = core::f64::consts::FRAC_1_SQRT_2;
        let (psi, phi) = bell_vectors();
        let sup: Vec<C64> = psi.iter().zip(&phi).map(|(a, b)| (a + b) * s).collect();
        let coh = DensityMatrix::new(ComplexMatrix::outer(&sup, &sup)).unwrap();
        assert!((coherence_degenerate(&coh).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn concurrence_examples() {
        let prod = bloch(0.3, 0.1, 0.5).to_density().tensor(&bloch(0.0, 0.6, -0.2).to_density());
        assert!(concurrence(&prod).unwrap() < 1e-12);
        let bell = entangled_theta(core::f64::consts::FRAC_PI_4);
        assert!((concurrence(&bell).unwrap() - 1.0).abs() < 1e-12);
        let rho = entangled_theta(2.0);
        let c = concurrence(&rho).unwrap();
        assert!((c - libm::sin(4.0).abs()).abs() < 1e-12);
        let c_h = concurrence(&apply_hadamard_pair(&rho).unwrap()).unwrap();
        assert!((c - c_h).abs() < 1e-9);
        let bds = make_bds(&BdsParams::new(0.5, 0.3, 0.1).unwrap()).unwrap();
        assert_eq!(concurrence(&bds).unwrap(), 0.0);
    }
}
