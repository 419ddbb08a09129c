use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("register width mismatch: expected {expected} qubits, found {found}")]
    RegisterWidth { expected: usize, found: usize },

    #[error("state has {found} amplitudes, expected 2^{n_qubits}")]
    BadLength { n_qubits: usize, found: usize },

    #[error("qubit count {0} is outside the supported range 1..={max}", max = crate::linalg::MAX_QUBITS)]
    QubitCount(usize),

    #[error("non-finite amplitude at index {index}")]
    NonFinite { index: usize },

    #[error("state is not normalized: squared norm {norm_sqr}")]
    NotNormalized { norm_sqr: f64 },

    #[error("matrix is not unitary: max |U^dagger U - I| entry {deviation:e}")]
    NotUnitary { deviation: f64 },

    #[error("dense matrix dimension {dim} exceeds the limit {max}")]
    DenseTooLarge { dim: usize, max: usize },

    #[error("basis is not orthonormal: worst overlap {overlap:e} between vectors {first} and {second}")]
    NonOrthonormalBasis {
        first: usize,
        second: usize,
        overlap: f64,
    },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("output register changed by the oracle (deviation {deviation:e})")]
    OutputRegisterChanged { deviation: f64 },

    #[error("rotation angle is zero: start state is orthogonal to the marked state")]
    ZeroAngle,

    #[error("angle {0} is outside [0, pi/2]")]
    AngleOutOfRange(f64),

    #[error("plane is degenerate: start state is parallel to the marked state")]
    DegeneratePlane,

    #[error("{0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
