use thiserror::Error;

/// Errors raised by state construction, validation, and the measure pipeline.
///
/// Variants that report a violated numerical invariant carry the measured
/// defect magnitude alongside the tolerance it was checked against, so callers
/// can surface a precise diagnostic.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("subsystem dimension list is empty")]
    EmptyDims,
    #[error("subsystem dimension {dim} at position {index} is below 2")]
    DimTooSmall { index: usize, dim: usize },
    #[error("total dimension overflows usize")]
    DimOverflow,
    #[error("amplitude vector has length {got}, expected {expected}")]
    AmplitudeLength { expected: usize, got: usize },
    #[error("state norm deviates from 1 by {defect:.3e} (tolerance {tol:.1e})")]
    NormViolation { defect: f64, tol: f64 },
    #[error("matrix is {rows}x{cols}, expected {expected}x{expected}")]
    MatrixShape {
        rows: usize,
        cols: usize,
        expected: usize,
    },
    #[error("matrix deviates from Hermitian symmetry by {defect:.3e} (tolerance {tol:.1e})")]
    NotHermitian { defect: f64, tol: f64 },
    #[error("matrix has eigenvalue {min_eigenvalue:.3e} below the positivity floor {floor:.1e}")]
    NotPositive { min_eigenvalue: f64, floor: f64 },
    #[error("trace deviates from 1 by {defect:.3e} (tolerance {tol:.1e})")]
    TraceViolation { defect: f64, tol: f64 },
    #[error("subsystem index {index} out of range for {count} subsystems")]
    SubsystemOutOfRange { index: usize, count: usize },
    #[error("subsystem index {index} selected more than once")]
    DuplicateSubsystem { index: usize },
    #[error("subsystem selection is empty")]
    EmptySubsystemSet,
    #[error("permutation {perm:?} is not a bijection on 0..{count}")]
    NotAPermutation { perm: Vec<usize>, count: usize },
    #[error("need at least {expected} subsystems, got {got}")]
    TooFewSubsystems { expected: usize, got: usize },
    #[error("expected {expected} subsystems, got {got}")]
    WrongSubsystemCount { expected: usize, got: usize },
    #[error("expected subsystem dimensions {expected:?}, got {got:?}")]
    WrongDims {
        expected: Vec<usize>,
        got: Vec<usize>,
    },
    #[error("bipartition does not match the state's subsystem dimensions")]
    PartitionMismatch,
    #[error("coefficient vector has length {got}, expected {expected}")]
    CoefficientLength { expected: usize, got: usize },
    #[error("density matrix has no eigenvalue above the rank tolerance {tol:.1e}")]
    RankDeficient { tol: f64 },
    #[error("requested rank {rank} out of range 1..={max}")]
    RankOutOfRange { rank: usize, max: usize },
    #[error("matrix deviates from unitarity by {defect:.3e} (tolerance {tol:.1e})")]
    NotUnitary { defect: f64, tol: f64 },
    #[error("projector set is not orthogonal and complete: defect {defect:.3e} (tolerance {tol:.1e})")]
    BadProjectors { defect: f64, tol: f64 },
    #[error("Kraus operators do not preserve trace: defect {defect:.3e} (tolerance {tol:.1e})")]
    NotTracePreserving { defect: f64, tol: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown state family: {0}")]
    UnknownFamily(String),
}

pub type Result<T> = std::result::Result<T, Error>;
