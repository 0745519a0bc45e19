//! Command-line front end: parses a run configuration, runs one sweep and
//! writes a CSV table plus a JSON sidecar describing the run.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C64;
use serde::{Serialize, Serializer};

use qwork_core::experiments::{self, Grid, InteractingSetup, SweepResult};
use qwork_core::qstate::{classical_quantum, symmetric_pair, BdsParams, BlochVector, Hamiltonian, HamiltonianKind};
use qwork_core::workx::Basis;
use qwork_core::ChannelKind;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "QWORK_OUT_DIR";

/// Inclusive `min,max,count` grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl GridSpec {
    fn grid(&self) -> qwork_core::Result<Grid> {
        Grid::linspace(self.min, self.max, self.count)
    }
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [min, max, count] = parts[..] else {
            return Err(format!("expected min,max,count, got `{s}`"));
        };
        let num = |v: &str| v.parse::<f64>().map_err(|e| format!("`{v}`: {e}"));
        Ok(Self {
            min: num(min)?,
            max: num(max)?,
            count: count.parse().map_err(|e| format!("`{count}`: {e}"))?,
        })
    }
}

/// Comma-separated triple such as a Bloch vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Triple(pub [f64; 3]);

impl FromStr for Triple {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let v = parse_list(s)?;
        let [a, b, c] = v[..] else {
            return Err(format!("expected three comma-separated numbers, got `{s}`"));
        };
        Ok(Self([a, b, c]))
    }
}

/// Comma-separated list of numbers.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct List(pub Vec<f64>);

impl FromStr for List {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        parse_list(s).map(Self)
    }
}

fn parse_list(s: &str) -> Result<Vec<f64>, String> {
    s.split(',').map(|v| v.trim().parse::<f64>().map_err(|e| format!("`{v}`: {e}"))).collect()
}

/// Inclusive qubit-count range `lo..hi` (or `lo..=hi`, or a single count).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SizeRange {
    pub min: usize,
    pub max: usize,
}

impl FromStr for SizeRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |v: &str| v.trim().parse::<usize>().map_err(|e| format!("`{v}`: {e}"));
        let (min, max) = match s.split_once("..") {
            Some((lo, hi)) => (num(lo)?, num(hi.strip_prefix('=').unwrap_or(hi))?),
            None => (num(s)?, num(s)?),
        };
        if min > max {
            return Err(format!("empty range `{s}`"));
        }
        Ok(Self { min, max })
    }
}

/// Channel argument, accepted by short or long name.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Channel(pub ChannelKind);

impl FromStr for Channel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.parse().map(Self).map_err(|e: qwork_core::Error| e.to_string())
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for Channel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.0.short_name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BasisArg {
    Computational,
    X,
}

impl From<BasisArg> for Basis {
    fn from(b: BasisArg) -> Self {
        match b {
            BasisArg::Computational => Basis::Computational,
            BasisArg::X => Basis::X,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `p |g⟩⟨g| ⊗ ρ(a, c) + (1 − p) |e⟩⟨e| ⊗ ρ(a, 0)`, swept over c.
    ClassicalQuantum,
    /// Symmetrized pair `ρ(a, c) ⊗ ρ(a, d)`, swept over a.
    SymmetricPair,
}

/// Non-interacting two-qubit Hamiltonians for grid sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairHamiltonian {
    /// `Σ |e⟩⟨e|`.
    Excitation,
    /// `−½ Σ σz`.
    ZField,
    /// `½ Σ σx`.
    XField,
}

impl PairHamiltonian {
    fn kind(self) -> HamiltonianKind {
        match self {
            Self::Excitation => HamiltonianKind::Excitation,
            Self::ZField => HamiltonianKind::ZField,
            Self::XField => HamiltonianKind::XField { strength: 0.5 },
        }
    }

    /// Transverse field for the dephasing channels, excitation number
    /// otherwise.
    fn default_for(kind: ChannelKind) -> Self {
        match kind {
            ChannelKind::PhaseFlip | ChannelKind::PhaseDamping => Self::XField,
            _ => Self::Excitation,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "qwork", version, about = "Noise sweeps of coherent and incoherent ergotropy")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Single qubit under one channel.
    Single(SingleArgs),
    /// Bell-diagonal state with noise on both qubits.
    Bds(BdsArgs),
    /// Two-qubit state family over (parameter × noise strength).
    Grid(GridArgs),
    /// Symmetrized N-qubit states for bit flip, phase flip and amplitude damping.
    Scaling(ScalingArgs),
    /// Random separable two-qubit states.
    Census(CensusArgs),
    /// Lindblad evolution against the Kraus closed forms.
    LindbladCheck(LindbladArgs),
    /// Entangled two-qubit family under an interacting Hamiltonian.
    Entangled(EntangledArgs),
    /// Symmetric pair under depolarizing noise with an interacting Hamiltonian.
    AppendixD(AppendixDArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct OutputArgs {
    /// CSV path; the JSON sidecar is written next to it. Defaults to a
    /// per-command file in $QWORK_OUT_DIR (or the current directory).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct SingleArgs {
    #[arg(long)]
    pub channel: Channel,
    #[arg(long, allow_hyphen_values = true)]
    pub bloch: Triple,
    #[arg(long, default_value = "0,1,101", allow_hyphen_values = true)]
    pub q: GridSpec,
    #[arg(long, value_enum, default_value_t = BasisArg::Computational)]
    pub basis: BasisArg,
    #[command(flatten)]
    #[serde(skip)]
    pub output: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct BdsArgs {
    #[arg(long)]
    pub channel: Channel,
    /// Correlation components c1,c2,c3.
    #[arg(long, allow_hyphen_values = true)]
    pub bds: Triple,
    #[arg(long, default_value = "0,1,101", allow_hyphen_values = true)]
    pub q: GridSpec,
    #[command(flatten)]
    #[serde(skip)]
    pub output: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct GridArgs {
    #[arg(long)]
    pub channel: Channel,
    #[arg(long, value_enum, default_value_t = Family::SymmetricPair)]
    pub family: Family,
    /// Swept parameter: c for the classical-quantum family, a for the pair.
    /// Defaults to 0,0.3,101 and 0.1,0.9,101 respectively.
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip)]
    pub axis: Option<GridSpec>,
    #[arg(long, default_value = "0,1,101", allow_hyphen_values = true)]
    pub q: GridSpec,
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    /// Population of the classical-quantum family.
    #[arg(long, default_value_t = 0.1)]
    pub a: f64,
    /// Coherences of the pair family.
    #[arg(long, default_value_t = 0.3, allow_hyphen_values = true)]
    pub c: f64,
    #[arg(long, default_value_t = 0.2, allow_hyphen_values = true)]
    pub d: f64,
    /// Defaults to the transverse field for phase flip and phase damping and
    /// to the excitation number otherwise.
    #[arg(long, value_enum)]
    #[serde(skip)]
    pub hamiltonian: Option<PairHamiltonian>,
    #[command(flatten)]
    #[serde(skip)]
    pub output: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct ScalingArgs {
    #[arg(long, default_value = "2..8")]
    pub n: SizeRange,
    #[arg(long, default_value_t = 0.2)]
    pub a: f64,
    #[arg(long, default_value_t = 0.1, allow_hyphen_values = true)]
    pub c0: f64,
    #[arg(long, default_value_t = 0.02, allow_hyphen_values = true)]
    pub delta: f64,
    #[arg(long, value_delimiter = ',', default_value = "bf,pf,ad")]
    pub channels: Vec<Channel>,
    #[arg(long, default_value = "0,1,501", allow_hyphen_values = true)]
    pub q: GridSpec,
    #[command(flatten)]
    #[serde(skip)]
    pub output: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct CensusArgs {
    #[arg(long)]
    pub channel: Channel,
    #[arg(long, default_value_t = 1000)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Product terms per random state.
    #[arg(long, default_value_t = 2)]
    pub terms: usize,
    #[arg(long, default_value = "0,1,101", allow_hyphen_values = true)]
    pub q: GridSpec,
    #[command(flatten)]
    #[serde(skip)]
    pub output: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct LindbladArgs {
    #[arg(long)]
    pub channel: Channel,
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
    #[arg(long, default_value = "0,5,51", allow_hyphen_values = true)]
    pub t: GridSpec,
    #[arg(long, default_value = "0.5,0.3,-0.4", allow_hyphen_values = true)]
    pub bloch: Triple,
    #[command(flatten)]
    #[serde(skip)]
    pub output: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct EntangledArgs {
    #[arg(long, default_value = "0,3.141592653589793,101", allow_hyphen_values = true)]
    pub theta: GridSpec,
    #[arg(long, default_value = "0,1,101", allow_hyphen_values = true)]
    pub q: GridSpec,
    #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
    pub h: f64,
    #[arg(long, default_value_t = 0.4, allow_hyphen_values = true)]
    pub j: f64,
    #[arg(long, default_value = "bf")]
    pub channel: Channel,
    #[command(flatten)]
    #[serde(skip)]
    pub output: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct AppendixDArgs {
    /// Population values, comma separated.
    #[arg(long, default_value = "0.1,0.4")]
    pub a: List,
    #[arg(long, default_value = "0,1,101", allow_hyphen_values = true)]
    pub q: GridSpec,
    #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
    pub h: f64,
    #[arg(long, default_value_t = 0.4, allow_hyphen_values = true)]
    pub j: f64,
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, default_value_t = 0.3, allow_hyphen_values = true)]
    pub c: f64,
    #[arg(long, default_value_t = 0.2, allow_hyphen_values = true)]
    pub d: f64,
    #[command(flatten)]
    #[serde(skip)]
    pub output: OutputArgs,
}

/// Table ready for writing: optional leading text column plus numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub label: Option<(String, Vec<String>)>,
    pub result: SweepResult,
}

impl From<SweepResult> for Table {
    fn from(result: SweepResult) -> Self {
        Self { label: None, result }
    }
}

#[derive(Serialize)]
struct Sidecar<'a, C: Serialize> {
    command: &'a str,
    version: &'a str,
    config: &'a C,
    csv: String,
    columns: Vec<&'a str>,
    rows: usize,
    axes: BTreeMap<&'a str, usize>,
    metadata: &'a BTreeMap<String, String>,
}

/// Shortest round-trip text of a float.
pub fn format_float(x: f64) -> String {
    format!("{x:?}")
}

pub fn write_csv(path: &Path, table: &Table) -> anyhow::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(path)
        .with_context(|| format!("creating {}", path.display()))?;
    let mut header: Vec<&str> = Vec::new();
    if let Some((name, _)) = &table.label {
        header.push(name);
    }
    header.extend(table.result.columns.iter().map(String::as_str));
    w.write_record(&header)?;
    for (i, row) in table.result.rows.iter().enumerate() {
        let mut rec: Vec<String> = Vec::with_capacity(row.len() + 1);
        if let Some((_, labels)) = &table.label {
            rec.push(labels[i].clone());
        }
        rec.extend(row.iter().map(|&x| format_float(x)));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

fn output_path(out: &Option<PathBuf>, stem: &str) -> PathBuf {
    match out {
        Some(p) => p.clone(),
        None => {
            let dir = std::env::var_os(OUT_DIR_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("."));
            dir.join(format!("{stem}.csv"))
        }
    }
}

fn emit<C: Serialize>(command: &str, config: &C, out: &Option<PathBuf>, stem: &str, table: &Table) -> anyhow::Result<PathBuf> {
    let path = output_path(out, stem);
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    write_csv(&path, table)?;
    let mut columns: Vec<&str> = table.label.iter().map(|(n, _)| n.as_str()).collect();
    columns.extend(table.result.columns.iter().map(String::as_str));
    let sidecar = Sidecar {
        command,
        version: env!("CARGO_PKG_VERSION"),
        config,
        csv: path.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default(),
        columns,
        rows: table.result.rows.len(),
        axes: table.result.axes.iter().map(|(n, g)| (n.as_str(), g.len())).collect(),
        metadata: &table.result.metadata,
    };
    let json_path = path.with_extension("json");
    let mut text = serde_json::to_string_pretty(&sidecar)?;
    text.push('\n');
    fs::write(&json_path, text).with_context(|| format!("writing {}", json_path.display()))?;
    Ok(path)
}

/// Outcome of a validated run.
#[derive(Debug)]
pub enum Failure {
    /// A parameter violates a model constraint.
    Invalid(qwork_core::Error),
    Io(anyhow::Error),
}

impl From<qwork_core::Error> for Failure {
    fn from(e: qwork_core::Error) -> Self {
        Self::Invalid(e)
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Self::Io(e)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Invalid(e) => write!(f, "invalid configuration: {e}"),
            Self::Io(e) => write!(f, "{e:#}"),
        }
    }
}

fn bloch(t: &Triple) -> qwork_core::Result<BlochVector> {
    BlochVector::new(t.0[0], t.0[1], t.0[2])
}

/// Runs one parsed command and returns the CSV path written.
pub fn execute(command: &Command) -> Result<PathBuf, Failure> {
    let path = match command {
        Command::Single(a) => {
            let r = experiments::sweep_single(a.channel.0, &bloch(&a.bloch)?, a.basis.into(), &a.q.grid()?)?;
            emit("single", a, &a.output.out, &format!("single_{}", a.channel), &r.into())?
        }
        Command::Bds(a) => {
            let c = BdsParams::new(a.bds.0[0], a.bds.0[1], a.bds.0[2])?;
            let r = experiments::sweep_bds(&c, a.channel.0, &a.q.grid()?)?;
            emit("bds", a, &a.output.out, &format!("bds_{}", a.channel), &r.into())?
        }
        Command::Grid(a) => {
            #[derive(Serialize)]
            struct Resolved<'a> {
                #[serde(flatten)]
                args: &'a GridArgs,
                axis: GridSpec,
                hamiltonian: PairHamiltonian,
            }
            let (default_axis, axis_name) = match a.family {
                Family::ClassicalQuantum => (GridSpec { min: 0.0, max: 0.3, count: 101 }, "c"),
                Family::SymmetricPair => (GridSpec { min: 0.1, max: 0.9, count: 101 }, "a"),
            };
            let resolved = Resolved {
                args: a,
                axis: a.axis.unwrap_or(default_axis),
                hamiltonian: a.hamiltonian.unwrap_or(PairHamiltonian::default_for(a.channel.0)),
            };
            let h = Hamiltonian::build(resolved.hamiltonian.kind(), 2)?;
            let (p, pop, c, d) = (a.p, a.a, a.c, a.d);
            let builder: Box<dyn Fn(f64) -> qwork_core::Result<qwork_core::DensityMatrix>> = match a.family {
                Family::ClassicalQuantum => Box::new(move |x| classical_quantum(p, pop, C64::new(x, 0.0))),
                Family::SymmetricPair => Box::new(move |x| symmetric_pair(p, x, C64::new(c, 0.0), C64::new(d, 0.0))),
            };
            let r = experiments::grid_delta_wc(&*builder, a.channel.0, &h, axis_name, &resolved.axis.grid()?, &a.q.grid()?)?;
            let stem = format!("grid_{}_{}", a.family.to_possible_value().expect("no skipped variants").get_name(), a.channel);
            emit("grid", &resolved, &a.output.out, &stem, &r.into())?
        }
        Command::Scaling(a) => {
            let sizes: Vec<usize> = (a.n.min..=a.n.max).collect();
            let q = a.q.grid()?;
            let mut combined: Option<SweepResult> = None;
            let mut labels = Vec::new();
            for ch in &a.channels {
                let r = experiments::scaling_run(ch.0, &sizes, a.a, a.c0, a.delta, &q)?;
                labels.extend(std::iter::repeat_n(ch.to_string(), r.rows.len()));
                combined = Some(match combined {
                    None => {
                        let mut first = r.clone();
                        first.metadata = prefixed(ch, &r.metadata);
                        first.axes.insert(0, ("channel".into(), (0..a.channels.len()).map(|i| i as f64).collect()));
                        first
                    }
                    Some(mut acc) => {
                        acc.rows.extend(r.rows);
                        acc.metadata.extend(prefixed(ch, &r.metadata));
                        acc
                    }
                });
            }
            let table = Table {
                label: Some(("channel".into(), labels)),
                result: combined.ok_or(qwork_core::Error::OutOfRange {
                    name: "channels",
                    value: 0.0,
                    range: "at least one channel",
                })?,
            };
            emit("scaling", a, &a.output.out, "scaling", &table)?
        }
        Command::Census(a) => {
            let r = experiments::census_random(a.channel.0, a.count, a.seed, a.terms, &a.q.grid()?)?;
            let s = r.summary;
            println!(
                "{}: fraction_enhancing = {:?}, max dWC = {:?} at q = {:?}, mean A_p = {:?}",
                a.channel, s.fraction_enhancing, s.delta_wc_max, s.argmax_q, s.area_ap
            );
            let mut records = r.records;
            records.metadata.insert("max_dWC".into(), format_float(s.delta_wc_max));
            records.metadata.insert("max_dWC_q".into(), format_float(s.argmax_q));
            records.metadata.insert("mean_A_p".into(), format_float(s.area_ap));
            emit("census", a, &a.output.out, &format!("census_{}_seed{}", a.channel, a.seed), &records.into())?
        }
        Command::LindbladCheck(a) => {
            let r = experiments::lindblad_consistency(a.channel.0, a.gamma, &a.t.grid()?, &bloch(&a.bloch)?)?;
            emit("lindblad-check", a, &a.output.out, &format!("lindblad_{}", a.channel), &r.into())?
        }
        Command::Entangled(a) => {
            let r = experiments::entangled_example(&a.theta.grid()?, &a.q.grid()?, a.h, a.j, a.channel.0)?;
            emit("entangled", a, &a.output.out, &format!("entangled_{}", a.channel), &r.into())?
        }
        Command::AppendixD(a) => {
            let setup = InteractingSetup { h: a.h, j: a.j, p: a.p, c: a.c, d: a.d };
            let r = experiments::appendix_d(&a.a.0, &a.q.grid()?, &setup)?;
            emit("appendix-d", a, &a.output.out, "appendix_d", &r.into())?
        }
    };
    Ok(path)
}

fn prefixed(ch: &Channel, meta: &BTreeMap<String, String>) -> BTreeMap<String, String> {
    meta.iter().map(|(k, v)| (format!("{ch}.{k}"), v.clone())).collect()
}

/// Parses `argv` (program name first), runs, and returns the exit status:
/// 0 on success, 1 when a parameter violates a model constraint or output
/// fails, 2 on argument errors.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli.command) {
        Ok(path) => {
            println!("wrote {}", path.display());
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_spec_parsing() {
        assert_eq!("0,1,101".parse::<GridSpec>(), Ok(GridSpec { min: 0.0, max: 1.0, count: 101 }));
        assert_eq!("-1, 2 ,3".parse::<GridSpec>().unwrap().min, -1.0);
        assert!("0,1".parse::<GridSpec>().is_err());
        assert!("0,1,x".parse::<GridSpec>().is_err());
        assert!("0,1,2.5".parse::<GridSpec>().is_err());
    }

    #[test]
    fn size_range_parsing() {
        assert_eq!("2..8".parse::<SizeRange>(), Ok(SizeRange { min: 2, max: 8 }));
        assert_eq!("2..=8".parse::<SizeRange>(), Ok(SizeRange { min: 2, max: 8 }));
        assert_eq!("3".parse::<SizeRange>(), Ok(SizeRange { min: 3, max: 3 }));
        assert!("8..2".parse::<SizeRange>().is_err());
    }

    #[test]
    fn triples_and_channels() {
        assert_eq!("0.6,0.5,-0.4".parse::<Triple>(), Ok(Triple([0.6, 0.5, -0.4])));
        assert!("0.6,0.5".parse::<Triple>().is_err());
        assert_eq!("amplitude-damping".parse::<Channel>().unwrap().0, ChannelKind::AmplitudeDamping);
        assert!("flip".parse::<Channel>().is_err());
    }

    #[test]
    fn floats_round_trip() {
        for x in [0.1, 1.0, -0.41366623454220564, 1e-300, f64::NAN] {
            let s = format_float(x);
            let back: f64 = s.parse().unwrap();
            assert!(back == x || (x.is_nan() && back.is_nan()));
        }
        assert_eq!(format_float(1.0), "1.0");
    }
}
