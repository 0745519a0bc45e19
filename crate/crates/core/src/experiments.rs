//! Parameter sweeps producing tabular results.
//!
//! Each driver returns a [`SweepResult`]: named columns, one row per grid
//! point in row-major grid order, the grids themselves, and string metadata
//! describing the run.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64 as C64;

use crate::channels::{self, apply_all, bloch_map, q_of_t, ChannelKind, ChannelSpec, LindbladSpec};
use crate::correlations::{correlation_diagonal, gcc_bds, gqc_bds};
use crate::error::{Error, Result};
use crate::qstate::{
    self, apply_hadamard_pair, entangled_theta, make_bds, random_separable_with, sample_rng, symmetric_pair,
    symmetrized_multipartite, BdsParams, BlochVector, DensityMatrix, Hamiltonian, HamiltonianKind,
};
use crate::workx::{self, closed_form_single, decompose, threshold_q, Basis, ErgotropyReport};

/// Points per noise grid in sweeps.
pub const DEFAULT_Q_POINTS: usize = 101;
/// Points per noise grid when integrating enhancement areas.
pub const AREA_Q_POINTS: usize = 501;
/// Enhancement areas above this count as enhancing.
pub const ENHANCING_AREA: f64 = 1e-12;
/// Step of the central differences for passive-energy slopes.
pub const FD_STEP: f64 = 1e-4;
const CROSSING_TOL: f64 = 1e-9;

/// Strictly increasing sample points.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid(Vec<f64>);

impl Grid {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::GridTooShort(values.len()));
        }
        if let Some(i) = values.windows(2).position(|w| !(w[1] > w[0])) {
            return Err(Error::GridNotIncreasing(i + 1));
        }
        Ok(Self(values))
    }

    /// `count` evenly spaced points from `min` to `max` inclusive.
    pub fn linspace(min: f64, max: f64, count: usize) -> Result<Self> {
        if count < 2 {
            return Err(Error::GridTooShort(count));
        }
        let step = (max - min) / (count - 1) as f64;
        let mut v: Vec<f64> = (0..count).map(|i| min + step * i as f64).collect();
        v[count - 1] = max;
        Self::new(v)
    }

    /// Evenly spaced grid on `[0, 1]`.
    pub fn unit(count: usize) -> Result<Self> {
        Self::linspace(0.0, 1.0, count)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Same range with `factor` times the number of intervals.
    pub fn refined(&self, factor: usize) -> Result<Self> {
        let mut v = Vec::with_capacity((self.0.len() - 1) * factor + 1);
        for w in self.0.windows(2) {
            for k in 0..factor {
                v.push(w[0] + (w[1] - w[0]) * k as f64 / factor as f64);
            }
        }
        v.push(*self.0.last().expect("non-empty"));
        Self::new(v)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepResult {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    /// Grids in nesting order, outermost first.
    pub axes: Vec<(String, Vec<f64>)>,
    pub metadata: BTreeMap<String, String>,
}

impl SweepResult {
    fn new(columns: &[&str]) -> Self {
        Self { columns: columns.iter().map(|c| c.to_string()).collect(), ..Self::default() }
    }

    fn axis(&mut self, name: &str, grid: &[f64]) {
        self.axes.push((name.to_string(), grid.to_vec()));
    }

    fn meta(&mut self, key: &str, value: impl ToString) {
        self.metadata.insert(key.to_string(), value.to_string());
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// All values of one column.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    /// Product of the axis lengths.
    pub fn expected_rows(&self) -> usize {
        self.axes.iter().map(|(_, g)| g.len()).product()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnhancementSummary {
    pub delta_wc_max: f64,
    pub argmax_q: f64,
    pub area_ap: f64,
    pub fraction_enhancing: f64,
}

/// Largest `ΔW^C` (first maximizer) and the trapezoidal area of its positive
/// part. `fraction_enhancing` is 1 when the area exceeds
/// [`ENHANCING_AREA`], else 0.
pub fn enhancement_summary(q_grid: &[f64], delta_wc: &[f64]) -> Result<EnhancementSummary> {
    if q_grid.len() < 2 {
        return Err(Error::GridTooShort(q_grid.len()));
    }
    if q_grid.len() != delta_wc.len() {
        return Err(Error::DimensionMismatch { expected: q_grid.len(), found: delta_wc.len() });
    }
    let mut best = 0;
    for (i, &d) in delta_wc.iter().enumerate() {
        if d > delta_wc[best] {
            best = i;
        }
    }
    let mut area = 0.0;
    for i in 1..q_grid.len() {
        let (a, b) = (delta_wc[i - 1].max(0.0), delta_wc[i].max(0.0));
        area += 0.5 * (a + b) * (q_grid[i] - q_grid[i - 1]);
    }
    Ok(EnhancementSummary {
        delta_wc_max: delta_wc[best],
        argmax_q: q_grid[best],
        area_ap: area,
        fraction_enhancing: if area > ENHANCING_AREA { 1.0 } else { 0.0 },
    })
}

/// Coherent ergotropy after the channel acts on every qubit, per grid point.
pub fn coherent_curve(rho0: &DensityMatrix, kind: ChannelKind, h: &Hamiltonian, q_grid: &[f64]) -> Result<Vec<f64>> {
    q_grid
        .iter()
        .map(|&q| {
            let rho = apply_all(rho0, &ChannelSpec::new(kind, q)?)?;
            Ok(decompose(&rho, h)?.coherent)
        })
        .collect()
}

/// `W^C(q) − W^C(0)` with the reference taken at `q = 0`, not at the first
/// grid point.
pub fn delta_wc_curve(rho0: &DensityMatrix, kind: ChannelKind, h: &Hamiltonian, q_grid: &[f64]) -> Result<Vec<f64>> {
    let w0 = decompose(rho0, h)?.coherent;
    Ok(coherent_curve(rho0, kind, h, q_grid)?.into_iter().map(|w| w - w0).collect())
}

fn report_row(prefix: &[f64], r: &ErgotropyReport) -> Vec<f64> {
    let mut row = prefix.to_vec();
    row.extend_from_slice(&[r.total, r.incoherent, r.coherent, r.l1_coherence]);
    row
}

/// Single-qubit sweep. Uses the closed forms where they exist and the
/// Kraus-plus-eigendecomposition pipeline otherwise. The `threshold` column
/// holds the enhancement threshold when defined, the damping branch point
/// for amplitude damping, and NaN otherwise.
pub fn sweep_single(kind: ChannelKind, n: &BlochVector, basis: Basis, q_grid: &Grid) -> Result<SweepResult> {
    let mut out = SweepResult::new(&["q", "W", "WI", "WC", "C", "threshold"]);
    out.axis("q", q_grid.values());
    let threshold = match kind {
        ChannelKind::AmplitudeDamping => Some(workx::damping_critical_point(n)),
        _ => threshold_q(kind, basis, n).ok().and_then(|t| t.value()),
    };
    let h = basis.hamiltonian();
    for &q in q_grid.values() {
        let r = match closed_form_single(kind, q, n, basis) {
            Ok(r) => r,
            Err(Error::Unsupported { .. }) => {
                let spec = ChannelSpec::new(kind, q)?;
                decompose(&channels::apply_local(&n.to_density(), &spec, &[0])?, &h)?
            }
            Err(e) => return Err(e),
        };
        let mut row = report_row(&[q], &r);
        row.push(threshold.unwrap_or(f64::NAN));
        out.rows.push(row);
    }
    out.meta("channel", kind.short_name());
    out.meta("basis", basis.name());
    out.meta("hamiltonian", h.kind().name());
    out.meta("bloch", format!("{:?},{:?},{:?}", n.n1, n.n2, n.n3));
    out.meta("threshold", threshold.map_or("none".into(), |t| format!("{t:?}")));
    Ok(out)
}

fn bds_state_after(c: &BdsParams, kind: ChannelKind, q: f64) -> Result<(DensityMatrix, BdsParams, bool)> {
    let spec = ChannelSpec::new(kind, q)?;
    let rho = apply_all(&make_bds(c)?, &spec)?;
    match channels::bds_param_map(&spec, c, true) {
        Ok(m) => Ok((rho, m, true)),
        Err(Error::NonUnitalBds) => {
            let m = correlation_diagonal(&rho)?;
            Ok((rho, m, false))
        }
        Err(e) => Err(e),
    }
}

fn argmax4(v: &[f64; 4]) -> usize {
    let mut best = 0;
    for i in 1..4 {
        if v[i] > v[best] {
            best = i;
        }
    }
    best
}

/// Bell-diagonal sweep with noise on both qubits against
/// `H = −½(σz⊗I + I⊗σz)`.
///
/// The label (1 to 4) of the largest spectrum value is recorded per point;
/// where it changes between neighbours the crossing is refined by bisection
/// on the gap between the two labels and listed under `crossings`.
pub fn sweep_bds(c: &BdsParams, kind: ChannelKind, q_grid: &Grid) -> Result<SweepResult> {
    let c = BdsParams::new(c.c1, c.c2, c.c3)?;
    let h = Hamiltonian::build(HamiltonianKind::ZField, 2)?;
    let mut out = SweepResult::new(&[
        "q", "c1", "c2", "c3", "W", "WI", "WC", "gqc", "gcc", "average", "residual", "lambda_max_label",
    ]);
    out.axis("q", q_grid.values());
    let mut labels = Vec::with_capacity(q_grid.len());
    let mut preserved_all = true;
    for &q in q_grid.values() {
        let (rho, m, preserved) = bds_state_after(&c, kind, q)?;
        preserved_all &= preserved;
        let r = decompose(&rho, &h)?;
        let (gqc, gcc) = match (gqc_bds(&m), gcc_bds(&m)) {
            (Ok(a), Ok(b)) => (a, b),
            _ => (f64::NAN, f64::NAN),
        };
        let avg = (gqc + gcc) / 2.0;
        let label = argmax4(&m.eigenvalues());
        labels.push(label);
        out.rows.push(vec![
            q,
            m.c1,
            m.c2,
            m.c3,
            r.total,
            r.incoherent,
            r.coherent,
            gqc,
            gcc,
            avg,
            r.total - avg,
            (label + 1) as f64,
        ]);
    }

    let mut crossings = Vec::new();
    let qs = q_grid.values();
    for i in 1..qs.len() {
        let (a, b) = (labels[i - 1], labels[i]);
        if a == b {
            continue;
        }
        let gap = |q: f64| -> Result<f64> {
            let (_, m, _) = bds_state_after(&c, kind, q)?;
            let e = m.eigenvalues();
            Ok(e[a] - e[b])
        };
        let (mut lo, mut hi) = (qs[i - 1], qs[i]);
        let glo = gap(lo)?;
        while hi - lo > CROSSING_TOL {
            let mid = 0.5 * (lo + hi);
            let g = gap(mid)?;
            if (g > 0.0) == (glo > 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        crossings.push(0.5 * (lo + hi));
    }
    out.meta("channel", kind.short_name());
    out.meta("hamiltonian", h.kind().name());
    out.meta("bds", format!("{:?},{:?},{:?}", c.c1, c.c2, c.c3));
    out.meta("bds_form_preserved", preserved_all);
    out.meta("crossings", crossings.iter().map(|q| format!("{q:?}")).collect::<Vec<_>>().join(","));
    Ok(out)
}

/// `ΔW^C` over (parameter × noise strength) for a one-parameter state
/// family. Parameter values the builder rejects yield NaN rows so the
/// table keeps its rectangular shape.
pub fn grid_delta_wc(
    builder: &dyn Fn(f64) -> Result<DensityMatrix>,
    kind: ChannelKind,
    h: &Hamiltonian,
    axis_name: &str,
    axis: &Grid,
    q_grid: &Grid,
) -> Result<SweepResult> {
    let mut out = SweepResult::new(&[axis_name, "q", "WC", "dWC"]);
    out.axis(axis_name, axis.values());
    out.axis("q", q_grid.values());
    let mut invalid = 0usize;
    for &x in axis.values() {
        match builder(x) {
            Ok(rho0) => {
                let w0 = decompose(&rho0, h)?.coherent;
                let curve = coherent_curve(&rho0, kind, h, q_grid.values())?;
                for (&q, w) in q_grid.values().iter().zip(curve) {
                    out.rows.push(vec![x, q, w, w - w0]);
                }
            }
            Err(_) => {
                invalid += 1;
                for &q in q_grid.values() {
                    out.rows.push(vec![x, q, f64::NAN, f64::NAN]);
                }
            }
        }
    }
    out.meta("channel", kind.short_name());
    out.meta("hamiltonian", h.kind().name());
    out.meta("invalid_points", invalid);
    Ok(out)
}

/// Largest finite `dWC` entry of a grid result with its row.
pub fn grid_max(result: &SweepResult) -> Option<(f64, Vec<f64>)> {
    let i = result.column_index("dWC")?;
    result
        .rows
        .iter()
        .filter(|r| r[i].is_finite())
        .max_by(|a, b| a[i].total_cmp(&b[i]))
        .map(|r| (r[i], r.clone()))
}

/// Hamiltonian used for each channel in the multipartite runs: the
/// excitation-number Hamiltonian, except the dephasing channels, which use
/// a transverse field `½ Σ σx` so that they can act on energy coherences.
pub fn scaling_hamiltonian(kind: ChannelKind) -> Result<HamiltonianKind> {
    match kind {
        ChannelKind::PhaseFlip | ChannelKind::PhaseDamping => Ok(HamiltonianKind::XField { strength: 0.5 }),
        ChannelKind::CorrelatedBitFlip => Err(Error::Unsupported {
            kind: kind.long_name().into(),
            context: "multipartite scaling runs",
        }),
        _ => Ok(HamiltonianKind::Excitation),
    }
}

/// Enhancement statistics of the symmetrized `N`-qubit state with
/// coherences `c_i = c0 + i·δ`, noise on every qubit.
pub fn scaling_run(kind: ChannelKind, sizes: &[usize], a: f64, c0: f64, delta: f64, q_grid: &Grid) -> Result<SweepResult> {
    let hk = scaling_hamiltonian(kind)?;
    if let Some(&n) = sizes.iter().find(|&&n| n > qstate::MAX_QUBITS || n == 0) {
        return Err(Error::TooManyQubits { n, max: qstate::MAX_QUBITS });
    }
    let mut out = SweepResult::new(&["N", "dWC_max", "argmax_q", "A_p"]);
    out.axis("N", &sizes.iter().map(|&n| n as f64).collect::<Vec<_>>());
    for &n in sizes {
        let rho0 = symmetrized_multipartite(a, &qstate::linear_coherences(n, c0, delta))?;
        let h = Hamiltonian::build(hk, n)?;
        let s = enhancement_summary(q_grid.values(), &delta_wc_curve(&rho0, kind, &h, q_grid.values())?)?;
        out.rows.push(vec![n as f64, s.delta_wc_max, s.argmax_q, s.area_ap]);
    }
    out.meta("channel", kind.short_name());
    out.meta("hamiltonian", hk.name());
    out.meta("a", format!("{a:?}"));
    out.meta("c0", format!("{c0:?}"));
    out.meta("delta", format!("{delta:?}"));
    out.meta("q_points", q_grid.len());
    Ok(out)
}

/// Hamiltonian used per channel in the random census: the two-qubit field
/// `−½(σz⊗I + I⊗σz)` for flips and damping, the transverse field for the
/// dephasing channels, and the interacting `h = 0.5, J = 0.4` Hamiltonian
/// for depolarizing noise.
pub fn census_hamiltonian(kind: ChannelKind) -> HamiltonianKind {
    match kind {
        ChannelKind::PhaseFlip | ChannelKind::PhaseDamping => HamiltonianKind::XField { strength: 0.5 },
        ChannelKind::Depolarizing => HamiltonianKind::XxInteracting { h: 0.5, j: 0.4 },
        _ => HamiltonianKind::ZField,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CensusResult {
    /// Largest `ΔW^C_max` over samples (with its `argmax_q`), mean `A_p`,
    /// and the share of enhancing samples.
    pub summary: EnhancementSummary,
    /// One row per sample: index, `ΔW^C_max`, `argmax_q`, `A_p`.
    pub records: SweepResult,
}

/// Random separable two-qubit states with noise on both qubits. Sample `i`
/// draws from its own stream `(seed, i)`.
pub fn census_random(kind: ChannelKind, count: usize, seed: u64, terms: usize, q_grid: &Grid) -> Result<CensusResult> {
    if count == 0 {
        return Err(Error::OutOfRange { name: "count", value: 0.0, range: "[1, inf)" });
    }
    let hk = census_hamiltonian(kind);
    let h = Hamiltonian::build(hk, 2)?;
    let mut records = SweepResult::new(&["sample", "dWC_max", "argmax_q", "A_p"]);
    records.axis("sample", &(0..count).map(|i| i as f64).collect::<Vec<_>>());
    let mut enhancing = 0usize;
    let mut area_sum = 0.0;
    let mut best: Option<EnhancementSummary> = None;
    for i in 0..count {
        let rho0 = random_separable_with(&mut sample_rng(seed, i as u64), terms)?;
        let s = enhancement_summary(q_grid.values(), &delta_wc_curve(&rho0, kind, &h, q_grid.values())?)?;
        if s.area_ap > ENHANCING_AREA {
            enhancing += 1;
        }
        area_sum += s.area_ap;
        if best.is_none_or(|b| s.delta_wc_max > b.delta_wc_max) {
            best = Some(s);
        }
        records.rows.push(vec![i as f64, s.delta_wc_max, s.argmax_q, s.area_ap]);
    }
    let best = best.expect("count >= 1");
    let fraction = enhancing as f64 / count as f64;
    records.meta("channel", kind.short_name());
    records.meta("hamiltonian", hk.name());
    records.meta("seed", seed);
    records.meta("terms", terms);
    records.meta("weights", "flat-dirichlet");
    records.meta("rng", "chacha8");
    records.meta("fraction_enhancing", format!("{fraction:?}"));
    Ok(CensusResult {
        summary: EnhancementSummary {
            delta_wc_max: best.delta_wc_max,
            argmax_q: best.argmax_q,
            area_ap: area_sum / count as f64,
            fraction_enhancing: fraction,
        },
        records,
    })
}

/// Single-qubit Lindblad evolution compared with the Kraus closed forms at
/// the matching noise strength. Records Bloch components and `W^C` from
/// both routes and the running maximum deviation.
pub fn lindblad_consistency(kind: ChannelKind, gamma: f64, t_grid: &Grid, n0: &BlochVector) -> Result<SweepResult> {
    let ls = LindbladSpec::for_channel(kind, gamma, 0.0, 1)?;
    if t_grid.values()[0] < 0.0 {
        return Err(Error::OutOfRange { name: "t", value: t_grid.values()[0], range: "[0, inf)" });
    }
    let mut out = SweepResult::new(&[
        "t", "q", "n1_lindblad", "n2_lindblad", "n3_lindblad", "n1_kraus", "n2_kraus", "n3_kraus", "WC_lindblad",
        "WC_kraus", "deviation",
    ]);
    out.axis("t", t_grid.values());
    let h = Basis::Computational.hamiltonian();
    let mut rho = n0.to_density();
    let mut t_prev = 0.0;
    let mut worst: f64 = 0.0;
    for &t in t_grid.values() {
        rho = channels::lindblad_evolve(&rho, &ls.with_duration(t - t_prev)?)?;
        t_prev = t;
        let q = q_of_t(kind, gamma, t)?;
        let nl = BlochVector::from_density(&rho).unwrap_or(BlochVector::raw(f64::NAN, f64::NAN, f64::NAN));
        let nk = bloch_map(&ChannelSpec::new(kind, q)?, n0)?;
        let wl = decompose(&rho, &h)?.coherent;
        let wk = closed_form_single(kind, q, n0, Basis::Computational)?.coherent;
        let dev = [nl.n1 - nk.n1, nl.n2 - nk.n2, nl.n3 - nk.n3, wl - wk].iter().fold(0.0f64, |m, d| m.max(d.abs()));
        worst = worst.max(dev);
        out.rows.push(vec![t, q, nl.n1, nl.n2, nl.n3, nk.n1, nk.n2, nk.n3, wl, wk, dev]);
    }
    out.meta("channel", kind.short_name());
    out.meta("gamma", format!("{gamma:?}"));
    out.meta("bloch", format!("{:?},{:?},{:?}", n0.n1, n0.n2, n0.n3));
    out.meta("max_deviation", format!("{worst:?}"));
    Ok(out)
}

/// Hadamard-rotated `cos θ|gg⟩ + sin θ|ee⟩` under noise on both qubits,
/// measured against `h(σz⊗I + I⊗σz) + J σx⊗σx`.
pub fn entangled_example(theta_grid: &Grid, q_grid: &Grid, h: f64, j: f64, kind: ChannelKind) -> Result<SweepResult> {
    let ham = Hamiltonian::build(HamiltonianKind::ZFieldXx { h, j }, 2)?;
    let mut out = SweepResult::new(&["theta", "q", "W", "WI", "WC", "dWC", "concurrence"]);
    out.axis("theta", theta_grid.values());
    out.axis("q", q_grid.values());
    for &theta in theta_grid.values() {
        let rho0 = apply_hadamard_pair(&entangled_theta(theta))?;
        let w0 = decompose(&rho0, &ham)?.coherent;
        for &q in q_grid.values() {
            let rho = apply_all(&rho0, &ChannelSpec::new(kind, q)?)?;
            let r = decompose(&rho, &ham)?;
            out.rows.push(vec![theta, q, r.total, r.incoherent, r.coherent, r.coherent - w0, workx::concurrence(&rho)?]);
        }
    }
    out.meta("channel", kind.short_name());
    out.meta("hamiltonian", ham.kind().name());
    out.meta("h", format!("{h:?}"));
    out.meta("j", format!("{j:?}"));
    Ok(out)
}

/// Parameters of the interacting-Hamiltonian depolarizing study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InteractingSetup {
    pub h: f64,
    pub j: f64,
    pub p: f64,
    pub c: f64,
    pub d: f64,
}

impl Default for InteractingSetup {
    fn default() -> Self {
        Self { h: 0.5, j: 0.4, p: 0.5, c: 0.3, d: 0.2 }
    }
}

/// Depolarizing noise on both qubits of `symmetric_pair(p, a, c, d)` against
/// `h(σx⊗I + I⊗σx) + J σx⊗σx`. Passive-energy slopes use central
/// differences of step [`FD_STEP`], one-sided at the ends of `[0, 1]`.
pub fn appendix_d(a_values: &[f64], q_grid: &Grid, setup: &InteractingSetup) -> Result<SweepResult> {
    let ham = Hamiltonian::build(HamiltonianKind::XxInteracting { h: setup.h, j: setup.j }, 2)?;
    let mut out = SweepResult::new(&[
        "a",
        "q",
        "W",
        "WI",
        "WC",
        "dWC",
        "passive",
        "dephased_passive",
        "d_passive_dq",
        "d_dephased_passive_dq",
        "coherence_degenerate",
    ]);
    out.axis("a", a_values);
    out.axis("q", q_grid.values());
    let kind = ChannelKind::Depolarizing;
    for &a in a_values {
        let rho0 = symmetric_pair(setup.p, a, C64::new(setup.c, 0.0), C64::new(setup.d, 0.0))?;
        let w0 = decompose(&rho0, &ham)?.coherent;
        let at = |q: f64| -> Result<(DensityMatrix, ErgotropyReport)> {
            let rho = apply_all(&rho0, &ChannelSpec::new(kind, q)?)?;
            let r = decompose(&rho, &ham)?;
            Ok((rho, r))
        };
        for &q in q_grid.values() {
            let (rho, r) = at(q)?;
            let lo = (q - FD_STEP).max(0.0);
            let hi = (q + FD_STEP).min(1.0);
            let (_, rl) = at(lo)?;
            let (_, rh) = at(hi)?;
            let dp = (rh.passive_energy - rl.passive_energy) / (hi - lo);
            let dd = (rh.dephased_passive_energy - rl.dephased_passive_energy) / (hi - lo);
            out.rows.push(vec![
                a,
                q,
                r.total,
                r.incoherent,
                r.coherent,
                r.coherent - w0,
                r.passive_energy,
                r.dephased_passive_energy,
                dp,
                dd,
                workx::coherence_degenerate(&rho)?,
            ]);
        }
    }
    out.meta("channel", kind.short_name());
    out.meta("hamiltonian", ham.kind().name());
    out.meta("h", format!("{:?}", setup.h));
    out.meta("j", format!("{:?}", setup.j));
    out.meta("p", format!("{:?}", setup.p));
    out.meta("c", format!("{:?}", setup.c));
    out.meta("d", format!("{:?}", setup.d));
    Ok(out)
}
