//! Entanglement measures for multipartite quantum states.
//!
//! The central quantity is the root-sum-square of bipartite concurrences over
//! all distinct bipartitions of a state. For pure states it is computed
//! exactly by two independent routes (a generator-based concurrence-vector
//! formula and a reduced-purity formula); for mixed states an optimized
//! singular-value objective yields a lower bound on the convex-roof value.
//! Supporting modules provide dense multipartite linear algebra, bipartition
//! enumeration, tangle (residual entanglement) decompositions, benchmark
//! bound-entangled states, and local-operation machinery for monotonicity
//! checks.

pub mod bound;
pub mod channels;
pub mod error;
pub mod generators;
pub mod linalg;
pub mod partitions;
pub mod pure;
pub mod tangles;
pub mod zoo;

pub use bound::{
    build_a_matrices, global_lower_bound, maximize_lower_bound, objective, partition_lower_bound,
    wootters_concurrence, AMatrixIndex, AMatrixSet, BoundOptions, BoundResult, CoefficientVector,
};
pub use channels::{
    apply_local_unitary, apply_operation, conjugate_local_unitary, measure_local, monotone_margin,
    monotone_margin_grouped, GroupedLocalOperation, LocalOperation, MonotoneMargin,
    OutcomeEnsemble,
};
pub use error::{Error, Result};
pub use linalg::{
    hermitian_eigenvalues, partial_transpose, singular_values, C64, CMatrix, CVector,
    DensityMatrix, Dims, PureState, RMatrix, SpectralDecomp,
};
pub use partitions::{enumerate_bipartitions, num_bipartitions, Bipartition};
pub use pure::{
    bipartite_concurrence, concurrence_vector, global_entanglement, is_fully_separable,
    ConcurrenceVector, GlobalEntanglementReport, DEFAULT_SEPARABILITY_TOL,
};
pub use tangles::{four_partite_audit, tangle_mixed_focus, three_tangle, Exactness, TangleReport};
pub use zoo::{StateSpec, ZooState};
