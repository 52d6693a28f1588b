//! Local operations for the monotonicity property suite: single-site
//! unitaries, projective measurements, and Kraus channels applied to pure
//! states.
//!
//! The margin of interest is the measure of the input minus the
//! probability-weighted measure of the outcome ensemble. With one Kraus
//! operator per outcome every outcome of a pure input is pure and the margin
//! is exact; outcomes assembled from several Kraus operators are mixed, so
//! their measure is replaced by the optimized lower bound and the margin is
//! flagged as not exact (an over-estimate that cannot certify a violation).

use crate::bound::{global_lower_bound, BoundOptions};
use crate::error::{Error, Result};
use crate::linalg::{apply_one_site, embed_one_site, C64, CMatrix, DensityMatrix, Dims, PureState};
use crate::pure::global_entanglement;

/// Probability floor below which a measurement outcome is dropped.
pub const OUTCOME_PROBABILITY_FLOOR: f64 = 1e-14;
const OPERATOR_TOL: f64 = 1e-10;

/// A single-site operation with one Kraus operator per outcome.
#[derive(Debug, Clone)]
pub struct LocalOperation {
    site: usize,
    kraus: Vec<CMatrix>,
}

impl LocalOperation {
    /// Validates square shapes and trace preservation
    /// (`sum K_i^dagger K_i = I` within 1e-10).
    pub fn new(dims: &Dims, site: usize, kraus: Vec<CMatrix>) -> Result<Self> {
        let n = dims.n_subsystems();
        if site >= n {
            return Err(Error::SubsystemOutOfRange {
                index: site,
                count: n,
            });
        }
        let d = dims.dim(site);
        if kraus.is_empty() {
            return Err(Error::InvalidParameter(
                "at least one Kraus operator is required".into(),
            ));
        }
        let mut sum = CMatrix::zeros(d, d);
        for k in &kraus {
            if k.nrows() != d || k.ncols() != d {
                return Err(Error::MatrixShape {
                    rows: k.nrows(),
                    cols: k.ncols(),
                    expected: d,
                });
            }
            sum += k.adjoint() * k;
        }
        let defect = (&sum - CMatrix::identity(d, d)).norm();
        if defect > OPERATOR_TOL {
            return Err(Error::NotTracePreserving {
                defect,
                tol: OPERATOR_TOL,
            });
        }
        Ok(Self { site, kraus })
    }

    /// Builds the operation whose Kraus operators are a complete orthogonal
    /// projector set.
    pub fn from_projectors(dims: &Dims, site: usize, projectors: &[CMatrix]) -> Result<Self> {
        validate_projectors(dims.dim(site), projectors)?;
        Self::new(dims, site, projectors.to_vec())
    }

    pub fn site(&self) -> usize {
        self.site
    }

    pub fn kraus(&self) -> &[CMatrix] {
        &self.kraus
    }
}

fn validate_projectors(d: usize, projectors: &[CMatrix]) -> Result<()> {
    if projectors.is_empty() {
        return Err(Error::BadProjectors {
            defect: 1.0,
            tol: OPERATOR_TOL,
        });
    }
    let mut defect = 0.0f64;
    let mut sum = CMatrix::zeros(d, d);
    for (i, p) in projectors.iter().enumerate() {
        if p.nrows() != d || p.ncols() != d {
            return Err(Error::MatrixShape {
                rows: p.nrows(),
                cols: p.ncols(),
                expected: d,
            });
        }
        defect = defect.max((p.adjoint() - p).norm());
        for (j, q) in projectors.iter().enumerate() {
            let prod = p * q;
            let expected = if i == j { p.clone() } else { CMatrix::zeros(d, d) };
            defect = defect.max((prod - expected).norm());
        }
        sum += p;
    }
    defect = defect.max((sum - CMatrix::identity(d, d)).norm());
    if defect > OPERATOR_TOL {
        return Err(Error::BadProjectors {
            defect,
            tol: OPERATOR_TOL,
        });
    }
    Ok(())
}

/// A single-site operation whose outcomes may each carry several Kraus
/// operators; such outcomes are mixed states on pure input.
#[derive(Debug, Clone)]
pub struct GroupedLocalOperation {
    site: usize,
    outcomes: Vec<Vec<CMatrix>>,
}

impl GroupedLocalOperation {
    pub fn new(dims: &Dims, site: usize, outcomes: Vec<Vec<CMatrix>>) -> Result<Self> {
        let flat: Vec<CMatrix> = outcomes.iter().flatten().cloned().collect();
        // validates shape and trace preservation over the flattened list
        LocalOperation::new(dims, site, flat)?;
        if outcomes.iter().any(|g| g.is_empty()) {
            return Err(Error::InvalidParameter(
                "grouped outcomes must be nonempty".into(),
            ));
        }
        Ok(Self { site, outcomes })
    }

    pub fn site(&self) -> usize {
        self.site
    }

    pub fn outcomes(&self) -> &[Vec<CMatrix>] {
        &self.outcomes
    }
}

/// Probability-weighted pure outcomes of an operation on a pure state.
#[derive(Debug, Clone)]
pub struct OutcomeEnsemble {
    outcomes: Vec<(f64, PureState)>,
}

impl OutcomeEnsemble {
    fn new(outcomes: Vec<(f64, PureState)>) -> Result<Self> {
        let total: f64 = outcomes.iter().map(|(p, _)| p).sum();
        if (total - 1.0).abs() > OPERATOR_TOL {
            return Err(Error::TraceViolation {
                defect: (total - 1.0).abs(),
                tol: OPERATOR_TOL,
            });
        }
        Ok(Self { outcomes })
    }

    pub fn outcomes(&self) -> &[(f64, PureState)] {
        &self.outcomes
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }
}

/// `(I ⊗ .. ⊗ U ⊗ .. ⊗ I) |psi>` for a unitary U on one site.
pub fn apply_local_unitary(psi: &PureState, site: usize, u: &CMatrix) -> Result<PureState> {
    let dims = psi.dims();
    let n = dims.n_subsystems();
    if site >= n {
        return Err(Error::SubsystemOutOfRange {
            index: site,
            count: n,
        });
    }
    let d = dims.dim(site);
    if u.nrows() != d || u.ncols() != d {
        return Err(Error::MatrixShape {
            rows: u.nrows(),
            cols: u.ncols(),
            expected: d,
        });
    }
    let defect = crate::linalg::unitarity_defect(u);
    if defect > OPERATOR_TOL {
        return Err(Error::NotUnitary {
            defect,
            tol: OPERATOR_TOL,
        });
    }
    let amps = apply_one_site(dims, site, u, psi.amplitudes());
    PureState::new(dims.clone(), amps)
}

/// `(I ⊗ .. ⊗ U ⊗ .. ⊗ I) rho (..)^dagger` for a unitary U on one site.
pub fn conjugate_local_unitary(
    rho: &DensityMatrix,
    site: usize,
    u: &CMatrix,
) -> Result<DensityMatrix> {
    let dims = rho.dims();
    let n = dims.n_subsystems();
    if site >= n {
        return Err(Error::SubsystemOutOfRange {
            index: site,
            count: n,
        });
    }
    let d = dims.dim(site);
    if u.nrows() != d || u.ncols() != d {
        return Err(Error::MatrixShape {
            rows: u.nrows(),
            cols: u.ncols(),
            expected: d,
        });
    }
    let defect = crate::linalg::unitarity_defect(u);
    if defect > OPERATOR_TOL {
        return Err(Error::NotUnitary {
            defect,
            tol: OPERATOR_TOL,
        });
    }
    let full = embed_one_site(dims, site, u);
    let entries = &full * rho.entries() * full.adjoint();
    DensityMatrix::new(dims.clone(), entries)
}

/// Applies a validated operation outcome-by-outcome; zero-probability
/// outcomes (below [`OUTCOME_PROBABILITY_FLOOR`]) are omitted.
pub fn apply_operation(psi: &PureState, op: &LocalOperation) -> Result<OutcomeEnsemble> {
    let dims = psi.dims();
    let mut outcomes = Vec::with_capacity(op.kraus.len());
    for k in &op.kraus {
        let v = apply_one_site(dims, op.site, k, psi.amplitudes());
        let p = v.norm_squared();
        if p < OUTCOME_PROBABILITY_FLOOR {
            continue;
        }
        let state = PureState::new(dims.clone(), v / C64::new(p.sqrt(), 0.0))?;
        outcomes.push((p, state));
    }
    OutcomeEnsemble::new(outcomes)
}

/// Projective measurement of one site. The projector set must be orthogonal
/// and complete.
pub fn measure_local(
    psi: &PureState,
    site: usize,
    projectors: &[CMatrix],
) -> Result<OutcomeEnsemble> {
    let op = LocalOperation::from_projectors(psi.dims(), site, projectors)?;
    apply_operation(psi, &op)
}

/// Measure drop across an operation, with an exactness flag.
#[derive(Debug, Clone, Copy)]
pub struct MonotoneMargin {
    /// `C(input) - sum_k p_k C(outcome_k)`.
    pub margin: f64,
    /// True when every outcome measure is exact; false when mixed outcomes
    /// forced lower-bound substitutes (the margin then over-estimates and a
    /// negative value is inconclusive rather than a violation).
    pub exact: bool,
}

/// Exact margin for an operation with pure outcomes.
pub fn monotone_margin(psi: &PureState, op: &LocalOperation) -> Result<MonotoneMargin> {
    let before = global_entanglement(psi)?.value();
    let ensemble = apply_operation(psi, op)?;
    let mut after = 0.0;
    for (p, state) in ensemble.outcomes() {
        after += p * global_entanglement(state)?.value();
    }
    Ok(MonotoneMargin {
        margin: before - after,
        exact: true,
    })
}

/// Margin for a grouped operation. Outcomes with a single Kraus operator stay
/// exact; mixed outcomes use the optimized lower bound and clear the `exact`
/// flag.
pub fn monotone_margin_grouped(
    psi: &PureState,
    op: &GroupedLocalOperation,
    opts: &BoundOptions,
) -> Result<MonotoneMargin> {
    let dims = psi.dims();
    let before = global_entanglement(psi)?.value();
    let mut after = 0.0;
    let mut exact = true;
    for group in op.outcomes() {
        let vectors: Vec<_> = group
            .iter()
            .map(|k| apply_one_site(dims, op.site, k, psi.amplitudes()))
            .collect();
        let p: f64 = vectors.iter().map(|v| v.norm_squared()).sum();
        if p < OUTCOME_PROBABILITY_FLOOR {
            continue;
        }
        if group.len() == 1 {
            let state = PureState::new(dims.clone(), &vectors[0] / C64::new(p.sqrt(), 0.0))?;
            after += p * global_entanglement(&state)?.value();
        } else {
            let d = dims.total();
            let mut entries = CMatrix::zeros(d, d);
            for v in &vectors {
                for i in 0..d {
                    for j in 0..d {
                        entries[(i, j)] += v[i] * v[j].conj();
                    }
                }
            }
            let rho = DensityMatrix::new_renormalized(dims.clone(), entries)?;
            after += p * global_lower_bound(&rho, opts)?.value;
            exact = false;
        }
    }
    Ok(MonotoneMargin {
        margin: before - after,
        exact,
    })
}

/// Computational-basis projectors for one site dimension.
pub fn computational_projectors(d: usize) -> Vec<CMatrix> {
    (0..d)
        .map(|k| {
            CMatrix::from_fn(d, d, |i, j| {
                if i == k && j == k {
                    C64::new(1.0, 0.0)
                } else {
                    C64::new(0.0, 0.0)
                }
            })
        })
        .collect()
}

/// Rank-one projectors onto the columns of a unitary.
pub fn projectors_from_unitary(u: &CMatrix) -> Vec<CMatrix> {
    let d = u.nrows();
    (0..d)
        .map(|k| {
            let col = u.column(k);
            CMatrix::from_fn(d, d, |i, j| col[i] * col[j].conj())
        })
        .collect()
}
