//! Mixed-state lower bound on the global entanglement.
//!
//! The convex-roof value of the pure measure is bounded from below by
//! `max_z lambda_1(z) - sum_{i>1} lambda_i(z)`, where the `lambda_i(z)` are
//! the descending singular values of `sum z_i A_i` over a unit complex
//! coefficient vector z, and each `A^p_{ab} = M^{1/2} Phi^T S^p_{ab} Phi
//! M^{1/2}` is assembled from the truncated eigendecomposition
//! `rho = Phi M Phi^dagger` (plain, unconjugated transpose) and the generator
//! product operators of partition p.
//!
//! The maximization is a multi-start local search: each restart draws z
//! uniformly on the complex unit sphere from its own seed-derived stream,
//! then climbs with a projected numerical-gradient ascent in the real
//! parametrization, renormalizing after every step. Restarts are independent,
//! may run in parallel, and the result is a deterministic function of
//! (inputs, seed, restarts); ties between equal restart values go to the
//! lowest restart index.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::generators::cached_partition_operators;
use crate::linalg::{
    permute_amplitudes, real_times_cmat, singular_values_unchecked, C64, CMatrix, DensityMatrix,
    Dims, RMatrix, DEFAULT_RANK_TOL,
};
use crate::partitions::{enumerate_bipartitions, Bipartition};

/// One flat entry of an [`AMatrixSet`]: which partition and generator pair it
/// came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AMatrixIndex {
    pub partition: usize,
    pub alpha: usize,
    pub beta: usize,
}

/// The K x K coefficient matrices of the singular-value objective, flattened
/// partition-major, then alpha-major, then beta.
#[derive(Debug, Clone)]
pub struct AMatrixSet {
    dims: Dims,
    rank: usize,
    eigenvalues: Vec<f64>,
    partitions: Vec<Bipartition>,
    index: Vec<AMatrixIndex>,
    matrices: Vec<CMatrix>,
}

impl AMatrixSet {
    /// Builds the matrices for every distinct bipartition of `rho`.
    pub fn build(rho: &DensityMatrix) -> Result<Self> {
        let partitions = enumerate_bipartitions(rho.dims())?;
        Self::build_for(rho, partitions)
    }

    /// Builds the matrices for an explicit partition list (a single partition
    /// restricts the bound to one bipartite split).
    pub fn build_for(rho: &DensityMatrix, partitions: Vec<Bipartition>) -> Result<Self> {
        if partitions.is_empty() {
            return Err(Error::InvalidParameter(
                "at least one bipartition is required".into(),
            ));
        }
        for p in &partitions {
            if !p.matches(rho.dims()) {
                return Err(Error::PartitionMismatch);
            }
        }
        let decomp = rho.spectral_decomposition(DEFAULT_RANK_TOL)?;
        let k = decomp.rank();
        let sqrt_w: Vec<f64> = decomp.eigenvalues().iter().map(|l| l.sqrt()).collect();

        let mut index = Vec::new();
        let mut matrices = Vec::new();
        for (pi, part) in partitions.iter().enumerate() {
            // Move the eigenvector columns into (left, right) block order so
            // the kron-structured operators apply directly.
            let perm = part.permutation();
            let d = rho.dims().total();
            let mut phi = CMatrix::zeros(d, k);
            for c in 0..k {
                let col = decomp.eigenvectors().column(c).clone_owned();
                let (_, permuted) = permute_amplitudes(rho.dims(), &perm, &col)?;
                phi.set_column(c, &permuted);
            }
            let ops = cached_partition_operators(rho.dims(), part)?;
            for op in ops.iter() {
                let a = weighted_bilinear(op.matrix(), &phi, &sqrt_w);
                index.push(AMatrixIndex {
                    partition: pi,
                    alpha: op.alpha(),
                    beta: op.beta(),
                });
                matrices.push(a);
            }
        }
        Ok(Self {
            dims: rho.dims().clone(),
            rank: k,
            eigenvalues: decomp.eigenvalues().to_vec(),
            partitions,
            index,
            matrices,
        })
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    /// Rank K of the truncated eigendecomposition; every matrix is K x K.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dims(&self) -> &Dims {
        &self.dims
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn partitions(&self) -> &[Bipartition] {
        &self.partitions
    }

    pub fn index(&self) -> &[AMatrixIndex] {
        &self.index
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.matrices
    }

    /// Flat position of the matrix for (partition, alpha, beta), if present.
    pub fn position(&self, partition: usize, alpha: usize, beta: usize) -> Option<usize> {
        self.index.iter().position(|ix| {
            ix.partition == partition && ix.alpha == alpha && ix.beta == beta
        })
    }
}

/// `M^{1/2} Phi^T S Phi M^{1/2}` for one real symmetric operator S.
fn weighted_bilinear(s: &RMatrix, phi: &CMatrix, sqrt_w: &[f64]) -> CMatrix {
    let sp = real_times_cmat(s, phi);
    let mut a = phi.transpose() * sp;
    let k = sqrt_w.len();
    for i in 0..k {
        for j in 0..k {
            a[(i, j)] *= sqrt_w[i] * sqrt_w[j];
        }
    }
    a
}

/// Unit complex coefficient vector over the flat A-matrix index.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientVector {
    z: Vec<C64>,
}

impl CoefficientVector {
    /// Validates unit norm within 1e-12.
    pub fn new(z: Vec<C64>) -> Result<Self> {
        let norm_sqr: f64 = z.iter().map(|c| c.norm_sqr()).sum();
        let defect = (norm_sqr.sqrt() - 1.0).abs();
        if defect > 1e-12 {
            return Err(Error::NormViolation {
                defect,
                tol: 1e-12,
            });
        }
        Ok(Self { z })
    }

    /// Normalizes before validating; zero vectors are rejected.
    pub fn from_unnormalized(z: Vec<C64>) -> Result<Self> {
        let norm: f64 = z.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm <= 0.0 {
            return Err(Error::NormViolation {
                defect: 1.0,
                tol: 1e-12,
            });
        }
        Self::new(z.into_iter().map(|c| c / norm).collect())
    }

    pub fn components(&self) -> &[C64] {
        &self.z
    }

    pub fn len(&self) -> usize {
        self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }
}

/// `lambda_1 - sum_{i>1} lambda_i` of `sum_i z_i A_i`.
pub fn objective(aset: &AMatrixSet, z: &CoefficientVector) -> Result<f64> {
    if z.len() != aset.len() {
        return Err(Error::CoefficientLength {
            expected: aset.len(),
            got: z.len(),
        });
    }
    Ok(objective_raw(aset, z.components()))
}

fn objective_raw(aset: &AMatrixSet, z: &[C64]) -> f64 {
    let k = aset.rank();
    let mut acc = vec![C64::new(0.0, 0.0); k * k];
    for (m, &zi) in aset.matrices().iter().zip(z) {
        for (a, &v) in acc.iter_mut().zip(m.as_slice()) {
            *a += v * zi;
        }
    }
    let combined = CMatrix::from_vec(k, k, acc);
    let sv = singular_values_unchecked(&combined);
    let tail: f64 = sv.iter().skip(1).sum();
    sv[0] - tail
}

/// Options for the multi-start maximization.
#[derive(Debug, Clone, Copy)]
pub struct BoundOptions {
    /// Independent random starts; the result keeps the best.
    pub restarts: usize,
    /// Base seed; restart r draws from stream r of this seed.
    pub seed: u64,
    /// Ascent iteration cap per restart.
    pub max_iters: usize,
    /// Stop a restart once an accepted step improves by less than this.
    pub tol: f64,
}

impl Default for BoundOptions {
    fn default() -> Self {
        Self {
            restarts: 32,
            seed: 0,
            max_iters: 2000,
            tol: 1e-7,
        }
    }
}

/// Outcome of the lower-bound maximization.
#[derive(Debug, Clone)]
pub struct BoundResult {
    /// The reported bound: the best objective, clamped at zero.
    pub value: f64,
    /// Best objective before clamping (may be negative; carries no
    /// entanglement information below zero).
    pub raw_objective: f64,
    pub best_z: CoefficientVector,
    pub restarts_used: usize,
    /// True when the winning restart stopped on the improvement criterion
    /// rather than the iteration cap.
    pub converged: bool,
    /// Best value found by each restart, in restart order.
    pub objective_trace: Vec<f64>,
}

struct RestartOutcome {
    value: f64,
    x: Vec<f64>,
    converged: bool,
}

fn normalize(x: &mut [f64]) -> f64 {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        for v in x.iter_mut() {
            *v /= norm;
        }
    }
    norm
}

fn sample_sphere(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    loop {
        let mut x: Vec<f64> = (0..dim).map(|_| StandardNormal.sample(rng)).collect();
        if normalize(&mut x) > 1e-12 {
            return x;
        }
    }
}

const GRADIENT_STEP: f64 = 1e-6;

/// Projected numerical-gradient ascent on the unit sphere. The objective is
/// scale-invariant (z is normalized inside the evaluation), so raw central
/// differences already give a tangent direction; each accepted iterate is
/// renormalized to keep coordinates well-scaled.
fn refine(aset: &AMatrixSet, mut x: Vec<f64>, opts: &BoundOptions) -> RestartOutcome {
    let dim = x.len();
    let eval = |x: &[f64]| {
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let z: Vec<C64> = (0..dim / 2)
            .map(|i| C64::new(x[2 * i] / norm, x[2 * i + 1] / norm))
            .collect();
        objective_raw(aset, &z)
    };

    let mut fx = eval(&x);
    let mut step = 0.25;
    let mut converged = false;
    let mut grad = vec![0.0; dim];
    let mut probe = x.clone();

    'outer: for _ in 0..opts.max_iters {
        for i in 0..dim {
            let saved = x[i];
            probe.copy_from_slice(&x);
            probe[i] = saved + GRADIENT_STEP;
            let fp = eval(&probe);
            probe[i] = saved - GRADIENT_STEP;
            let fm = eval(&probe);
            grad[i] = (fp - fm) / (2.0 * GRADIENT_STEP);
        }
        let gnorm = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
        if gnorm < 1e-13 {
            converged = true;
            break;
        }

        let mut accepted = false;
        while step >= 1e-12 {
            let mut cand: Vec<f64> = x
                .iter()
                .zip(&grad)
                .map(|(xi, gi)| xi + step * gi)
                .collect();
            normalize(&mut cand);
            let fc = eval(&cand);
            if fc > fx {
                let gain = fc - fx;
                x = cand;
                fx = fc;
                accepted = true;
                step = (step * 2.0).min(1.0);
                if gain < opts.tol {
                    converged = true;
                    break 'outer;
                }
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            // no ascent direction at line-search resolution
            converged = true;
            break;
        }
    }
    RestartOutcome {
        value: fx,
        x,
        converged,
    }
}

/// Maximizes the singular-value objective over the unit sphere with
/// `opts.restarts` independent starts. Restarts run in parallel; the result
/// is deterministic for fixed (seed, restarts).
pub fn maximize_lower_bound(aset: &AMatrixSet, opts: &BoundOptions) -> Result<BoundResult> {
    if opts.restarts < 1 {
        return Err(Error::InvalidParameter(
            "restarts must be at least 1".into(),
        ));
    }
    if !(opts.tol > 0.0) {
        return Err(Error::InvalidParameter(
            "optimizer tolerance must be positive".into(),
        ));
    }
    let dim = 2 * aset.len();
    let outcomes: Vec<RestartOutcome> = (0..opts.restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            rng.set_stream(r as u64);
            let start = sample_sphere(&mut rng, dim);
            refine(aset, start, opts)
        })
        .collect();

    let mut best = 0usize;
    for (i, o) in outcomes.iter().enumerate() {
        if o.value > outcomes[best].value {
            best = i;
        }
    }
    let winner = &outcomes[best];
    let mut x = winner.x.clone();
    normalize(&mut x);
    let z: Vec<C64> = (0..aset.len())
        .map(|i| C64::new(x[2 * i], x[2 * i + 1]))
        .collect();
    Ok(BoundResult {
        value: winner.value.max(0.0),
        raw_objective: winner.value,
        best_z: CoefficientVector::new(z)?,
        restarts_used: opts.restarts,
        converged: winner.converged,
        objective_trace: outcomes.iter().map(|o| o.value).collect(),
    })
}

fn bound_from_aset(aset: &AMatrixSet, opts: &BoundOptions) -> Result<BoundResult> {
    if aset.rank() == 1 {
        // Rank one: every A is 1 x 1 and the optimum over the sphere is the
        // Euclidean norm of the A values, attained at z = conj(a)/|a| —
        // exactly the pure-state measure.
        let a: Vec<C64> = aset.matrices().iter().map(|m| m[(0, 0)]).collect();
        let norm: f64 = a.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        let z = if norm > 0.0 {
            CoefficientVector::from_unnormalized(a.iter().map(|v| v.conj()).collect())?
        } else {
            let mut unit = vec![C64::new(0.0, 0.0); aset.len()];
            unit[0] = C64::new(1.0, 0.0);
            CoefficientVector::new(unit)?
        };
        return Ok(BoundResult {
            value: norm,
            raw_objective: norm,
            best_z: z,
            restarts_used: 0,
            converged: true,
            objective_trace: vec![norm],
        });
    }
    maximize_lower_bound(aset, opts)
}

/// Builds the A-matrices of `rho` over every distinct bipartition.
pub fn build_a_matrices(rho: &DensityMatrix) -> Result<AMatrixSet> {
    AMatrixSet::build(rho)
}

/// Lower bound on the global entanglement of `rho` over all bipartitions.
/// Rank-1 inputs shortcut to the exact pure value.
pub fn global_lower_bound(rho: &DensityMatrix, opts: &BoundOptions) -> Result<BoundResult> {
    let aset = AMatrixSet::build(rho)?;
    bound_from_aset(&aset, opts)
}

/// Lower bound restricted to a single bipartition: a mixed-state bipartite
/// concurrence bound.
pub fn partition_lower_bound(
    rho: &DensityMatrix,
    partition: &Bipartition,
    opts: &BoundOptions,
) -> Result<BoundResult> {
    let aset = AMatrixSet::build_for(rho, vec![partition.clone()])?;
    bound_from_aset(&aset, opts)
}

/// Exact two-qubit concurrence: `max(0, mu_1 - mu_2 - mu_3 - mu_4)` with the
/// `mu_i` the descending singular values of
/// `sqrt(rho) (sigma_y ⊗ sigma_y) sqrt(rho)^T`, which equal the square roots
/// of the eigenvalues of `rho (sigma_y⊗sigma_y) rho* (sigma_y⊗sigma_y)`.
/// Kept independent of the A-matrix pipeline so it can serve as an oracle
/// for it.
pub fn wootters_concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.dims().dims() != [2, 2] {
        return Err(Error::WrongDims {
            expected: vec![2, 2],
            got: rho.dims().dims().to_vec(),
        });
    }
    let eig = rho.entries().clone().symmetric_eigen();
    let d = 4usize;
    let mut sqrt_rho = CMatrix::zeros(d, d);
    for c in 0..d {
        let w = eig.eigenvalues[c].max(0.0).sqrt();
        if w == 0.0 {
            continue;
        }
        let v = eig.eigenvectors.column(c);
        for i in 0..d {
            for j in 0..d {
                sqrt_rho[(i, j)] += v[i] * v[j].conj() * w;
            }
        }
    }
    let syy = CMatrix::from_fn(d, d, |i, j| match (i, j) {
        (0, 3) | (3, 0) => C64::new(-1.0, 0.0),
        (1, 2) | (2, 1) => C64::new(1.0, 0.0),
        _ => C64::new(0.0, 0.0),
    });
    let b = &sqrt_rho * syy * sqrt_rho.transpose();
    let mu = singular_values_unchecked(&b);
    Ok((mu[0] - mu[1] - mu[2] - mu[3]).max(0.0))
}
