use alloc::string::String;

/// Errors raised by state construction, channel application and the
/// numerical kernels.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix is not square: {rows} rows, row {row} has {cols} entries")]
    NotSquare { rows: usize, row: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension {dim} is not a power of two")]
    NotQubitRegister { dim: usize },

    #[error("matrix is not Hermitian: entry ({row},{col}) deviates from conj of ({col},{row}) by {deviation:e}")]
    NotHermitian { row: usize, col: usize, deviation: f64 },

    #[error("Jacobi eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("qubit index {index} out of range for a {num_qubits}-qubit register")]
    QubitOutOfRange { index: usize, num_qubits: usize },

    #[error("qubit index {0} listed more than once")]
    DuplicateQubit(usize),

    #[error("partial trace needs at least one qubit to keep")]
    EmptyKeepSet,

    #[error("trace is {0}, expected 1")]
    InvalidTrace(f64),

    #[error("matrix is not positive semidefinite: minimum eigenvalue {0:e}")]
    NotPositive(f64),

    #[error("Bloch vector norm {norm} exceeds 1")]
    BlochOutOfBall { norm: f64 },

    #[error("Bell-diagonal parameters give negative eigenvalue lambda_{label} = {value}")]
    BdsNotPositive { label: usize, value: f64 },

    #[error("local qubit matrix not positive: |y|^2 = {coherence_sq} > x(1-x) = {bound}")]
    LocalNotPositive { coherence_sq: f64, bound: f64 },

    #[error("parameter `{name}` = {value} outside {range}")]
    OutOfRange { name: &'static str, value: f64, range: &'static str },

    #[error("amplitude damping does not preserve the Bell-diagonal form")]
    NonUnitalBds,

    #[error("{kind} is not supported for {context}")]
    Unsupported { kind: String, context: &'static str },

    #[error("correlation component c{index} = {value} is negative; the closed forms assume non-negative components")]
    NegativeCorrelation { index: usize, value: f64 },

    #[error("{n} qubits requested, at most {max} supported")]
    TooManyQubits { n: usize, max: usize },

    #[error("integration would need {steps} steps (limit 1e8)")]
    StepUnderflow { steps: f64 },

    #[error("grid needs at least 2 points, got {0}")]
    GridTooShort(usize),

    #[error("grid is not strictly increasing at index {0}")]
    GridNotIncreasing(usize),

    #[error("unknown {what} `{name}`")]
    UnknownKind { what: &'static str, name: String },
}

pub type Result<T> = core::result::Result<T, Error>;
