//! Dense complex linear algebra for multipartite states.
//!
//! States live in the tensor product of a list of finite-dimensional
//! subsystems. Amplitudes and matrix entries are flattened row-major over the
//! dimension list: the leftmost subsystem varies slowest. Every operation here
//! is a pure function of its inputs; values are immutable after construction.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;
pub type RMatrix = DMatrix<f64>;

/// Norm defect allowed when validating pure-state amplitudes.
pub const NORM_TOL: f64 = 1e-12;
/// Max entrywise deviation from Hermitian symmetry allowed in density matrices.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Eigenvalues below this floor fail the positivity check.
pub const EIGENVALUE_FLOOR: f64 = -1e-10;
/// Trace defect allowed in density matrices.
pub const TRACE_TOL: f64 = 1e-10;
/// Default spectral truncation threshold: eigenvalues at or below it are
/// treated as zero rank. Eigenvalues in `[EIGENVALUE_FLOOR, DEFAULT_RANK_TOL]`
/// are clamped to zero rather than rejected.
pub const DEFAULT_RANK_TOL: f64 = 1e-12;
/// Eigenvalues at or below this cutoff contribute nothing to the entropy.
pub const ENTROPY_CUTOFF: f64 = 1e-14;

fn czero() -> C64 {
    C64::new(0.0, 0.0)
}

/// Ordered list of subsystem dimensions with its cached total dimension.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dims {
    dims: Vec<usize>,
    total: usize,
}

impl Dims {
    /// Builds a dimension list. Every entry must be at least 2 and the list
    /// nonempty; the product must fit in `usize`.
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::EmptyDims);
        }
        for (index, &dim) in dims.iter().enumerate() {
            if dim < 2 {
                return Err(Error::DimTooSmall { index, dim });
            }
        }
        let mut total: usize = 1;
        for &d in &dims {
            total = total.checked_mul(d).ok_or(Error::DimOverflow)?;
        }
        Ok(Self { dims, total })
    }

    /// `n` qubits.
    pub fn qubits(n: usize) -> Result<Self> {
        Self::new(vec![2; n])
    }

    pub fn n_subsystems(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, subsystem: usize) -> usize {
        self.dims[subsystem]
    }

    pub fn total(&self) -> usize {
        self.total
    }

    /// Row-major strides: the flat index of multi-index `(i_0, .., i_{N-1})`
    /// is `sum_k i_k * strides[k]`.
    pub fn strides(&self) -> Vec<usize> {
        let n = self.dims.len();
        let mut s = vec![1usize; n];
        for k in (0..n.saturating_sub(1)).rev() {
            s[k] = s[k + 1] * self.dims[k + 1];
        }
        s
    }

    /// Product of dimensions over a subsystem subset.
    pub fn block_dim(&self, subset: &[usize]) -> usize {
        subset.iter().map(|&i| self.dims[i]).product()
    }

    /// Validates a subsystem selection: nonempty, in range, no duplicates.
    /// Returns the selection sorted ascending.
    pub(crate) fn checked_subset(&self, subset: &[usize]) -> Result<Vec<usize>> {
        if subset.is_empty() {
            return Err(Error::EmptySubsystemSet);
        }
        let n = self.n_subsystems();
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        for (k, &i) in sorted.iter().enumerate() {
            if i >= n {
                return Err(Error::SubsystemOutOfRange { index: i, count: n });
            }
            if k > 0 && sorted[k - 1] == i {
                return Err(Error::DuplicateSubsystem { index: i });
            }
        }
        Ok(sorted)
    }

    pub(crate) fn complement(&self, sorted_subset: &[usize]) -> Vec<usize> {
        (0..self.n_subsystems())
            .filter(|i| !sorted_subset.contains(i))
            .collect()
    }
}

/// Flat offsets contributed by a subsystem block.
///
/// Entry `s` is the full-space flat offset of the block multi-index `s`
/// (row-major over `subset` in the given order, all other digits zero).
/// Offsets of disjoint blocks add: `flat = block_a[s] + block_b[e]`.
pub(crate) fn block_offsets(dims: &Dims, subset: &[usize]) -> Vec<usize> {
    let strides = dims.strides();
    let sub_dims: Vec<usize> = subset.iter().map(|&i| dims.dim(i)).collect();
    let total: usize = sub_dims.iter().product::<usize>().max(1);
    let mut out = Vec::with_capacity(total);
    for flat in 0..total {
        let mut rem = flat;
        let mut off = 0usize;
        for k in (0..subset.len()).rev() {
            off += (rem % sub_dims[k]) * strides[subset[k]];
            rem /= sub_dims[k];
        }
        out.push(off);
    }
    out
}

fn validate_permutation(perm: &[usize], count: usize) -> Result<()> {
    if perm.len() != count {
        return Err(Error::NotAPermutation {
            perm: perm.to_vec(),
            count,
        });
    }
    let mut seen = vec![false; count];
    for &p in perm {
        if p >= count || seen[p] {
            return Err(Error::NotAPermutation {
                perm: perm.to_vec(),
                count,
            });
        }
        seen[p] = true;
    }
    Ok(())
}

/// Reorders amplitudes so that output position `k` holds the input subsystem
/// `perm[k]`. The copy is bit-exact; no arithmetic is performed.
pub(crate) fn permute_amplitudes(
    dims: &Dims,
    perm: &[usize],
    amps: &CVector,
) -> Result<(Dims, CVector)> {
    let n = dims.n_subsystems();
    validate_permutation(perm, n)?;
    let out_dims = Dims::new(perm.iter().map(|&p| dims.dim(p)).collect())?;
    let in_strides = dims.strides();
    let out_strides = out_dims.strides();
    let total = dims.total();
    let mut out = CVector::zeros(total);
    let mut digits = vec![0usize; n];
    for flat in 0..total {
        let mut rem = flat;
        for k in (0..n).rev() {
            digits[k] = rem % dims.dim(k);
            rem /= dims.dim(k);
        }
        let mut out_flat = 0usize;
        for k in 0..n {
            out_flat += digits[perm[k]] * out_strides[k];
        }
        out[out_flat] = amps[flat];
    }
    debug_assert_eq!(in_strides.len(), n);
    Ok((out_dims, out))
}

/// A normalized pure state over a list of subsystems.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    dims: Dims,
    amplitudes: CVector,
}

impl PureState {
    /// Validates length and unit norm (within [`NORM_TOL`]).
    pub fn new(dims: Dims, amplitudes: CVector) -> Result<Self> {
        if amplitudes.len() != dims.total() {
            return Err(Error::AmplitudeLength {
                expected: dims.total(),
                got: amplitudes.len(),
            });
        }
        let defect = (amplitudes.norm() - 1.0).abs();
        if defect > NORM_TOL {
            return Err(Error::NormViolation {
                defect,
                tol: NORM_TOL,
            });
        }
        Ok(Self { dims, amplitudes })
    }

    /// Rescales to unit norm before validating. Zero vectors are rejected.
    pub fn new_renormalized(dims: Dims, amplitudes: CVector) -> Result<Self> {
        let norm = amplitudes.norm();
        if norm <= 0.0 {
            return Err(Error::NormViolation {
                defect: 1.0,
                tol: NORM_TOL,
            });
        }
        Self::new(dims, amplitudes / C64::new(norm, 0.0))
    }

    pub fn dims(&self) -> &Dims {
        &self.dims
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    /// Tensor product with `other`: `self` occupies the leading subsystems.
    pub fn tensor(&self, other: &PureState) -> PureState {
        let mut dims = self.dims.dims().to_vec();
        dims.extend_from_slice(other.dims.dims());
        let amplitudes = self.amplitudes.kronecker(&other.amplitudes);
        PureState {
            dims: Dims::new(dims).expect("tensor of valid dims"),
            amplitudes,
        }
    }

    pub fn to_density(&self) -> DensityMatrix {
        let d = self.dims.total();
        let entries = CMatrix::from_fn(d, d, |i, j| self.amplitudes[i] * self.amplitudes[j].conj());
        DensityMatrix {
            dims: self.dims.clone(),
            entries,
        }
    }

    /// Coefficient matrix across the cut (`block`, complement): rows indexed
    /// by the block multi-index, columns by the complement. The reduced
    /// density matrix over `block` is `A A^dagger` and the Schmidt spectrum
    /// of the cut is the singular values of `A`.
    pub(crate) fn coefficient_matrix(&self, block_sorted: &[usize]) -> CMatrix {
        let env = self.dims.complement(block_sorted);
        let koff = block_offsets(&self.dims, block_sorted);
        let eoff = block_offsets(&self.dims, &env);
        CMatrix::from_fn(koff.len(), eoff.len(), |s, e| {
            self.amplitudes[koff[s] + eoff[e]]
        })
    }

    /// Traces out the complement of `keep`, returning the reduced density
    /// matrix over `keep` (original subsystem order preserved).
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let keep = self.dims.checked_subset(keep)?;
        if keep.len() == self.dims.n_subsystems() {
            return Ok(self.to_density());
        }
        let a = self.coefficient_matrix(&keep);
        let entries = &a * a.adjoint();
        let dims = Dims::new(keep.iter().map(|&i| self.dims.dim(i)).collect())?;
        Ok(DensityMatrix { dims, entries })
    }

    /// Relabels subsystems: output position `k` holds input subsystem
    /// `perm[k]`. Norm is preserved exactly (pure data movement).
    pub fn permute_subsystems(&self, perm: &[usize]) -> Result<PureState> {
        let (dims, amplitudes) = permute_amplitudes(&self.dims, perm, &self.amplitudes)?;
        Ok(PureState { dims, amplitudes })
    }
}

/// A Hermitian, positive-semidefinite, unit-trace matrix over a dimension
/// list. Validation happens at construction; operations may then assume the
/// invariants.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dims: Dims,
    entries: CMatrix,
}

impl DensityMatrix {
    /// Validates shape, Hermitian symmetry, positivity, and unit trace.
    pub fn new(dims: Dims, entries: CMatrix) -> Result<Self> {
        let d = dims.total();
        if entries.nrows() != d || entries.ncols() != d {
            return Err(Error::MatrixShape {
                rows: entries.nrows(),
                cols: entries.ncols(),
                expected: d,
            });
        }
        let mut herm_defect = 0.0f64;
        for i in 0..d {
            for j in i..d {
                let delta = (entries[(i, j)] - entries[(j, i)].conj()).norm();
                herm_defect = herm_defect.max(delta);
            }
        }
        if herm_defect > HERMITIAN_TOL {
            return Err(Error::NotHermitian {
                defect: herm_defect,
                tol: HERMITIAN_TOL,
            });
        }
        let trace_defect = (entries.trace().re - 1.0).abs();
        if trace_defect > TRACE_TOL {
            return Err(Error::TraceViolation {
                defect: trace_defect,
                tol: TRACE_TOL,
            });
        }
        let eigs = hermitian_eigenvalues(&entries);
        let min_eig = eigs.iter().copied().fold(f64::INFINITY, f64::min);
        if min_eig < EIGENVALUE_FLOOR {
            return Err(Error::NotPositive {
                min_eigenvalue: min_eig,
                floor: EIGENVALUE_FLOOR,
            });
        }
        Ok(Self { dims, entries })
    }

    /// Rescales by the trace before validating. Non-positive traces are
    /// rejected.
    pub fn new_renormalized(dims: Dims, entries: CMatrix) -> Result<Self> {
        let tr = entries.trace().re;
        if tr <= 0.0 {
            return Err(Error::TraceViolation {
                defect: (tr - 1.0).abs(),
                tol: TRACE_TOL,
            });
        }
        Self::new(dims, entries / C64::new(tr, 0.0))
    }

    pub fn from_pure(psi: &PureState) -> Self {
        psi.to_density()
    }

    pub fn dims(&self) -> &Dims {
        &self.dims
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        self.entries.trace().re
    }

    /// Traces out the complement of `keep` (original subsystem order
    /// preserved). Passing the full set returns a copy.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let keep = self.dims.checked_subset(keep)?;
        if keep.len() == self.dims.n_subsystems() {
            return Ok(self.clone());
        }
        let env = self.dims.complement(&keep);
        let koff = block_offsets(&self.dims, &keep);
        let eoff = block_offsets(&self.dims, &env);
        let dk = koff.len();
        let mut entries = CMatrix::zeros(dk, dk);
        for i in 0..dk {
            for j in 0..dk {
                let mut acc = czero();
                for &e in &eoff {
                    acc += self.entries[(koff[i] + e, koff[j] + e)];
                }
                entries[(i, j)] = acc;
            }
        }
        let dims = Dims::new(keep.iter().map(|&i| self.dims.dim(i)).collect())?;
        Ok(DensityMatrix { dims, entries })
    }

    /// `Tr(rho^2)`. Equals the squared Frobenius norm for Hermitian input,
    /// so the result is exactly real.
    pub fn purity(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `-sum_i lambda_i log2 lambda_i` over eigenvalues above
    /// [`ENTROPY_CUTOFF`]; zero eigenvalues contribute nothing.
    pub fn von_neumann_entropy(&self) -> f64 {
        hermitian_eigenvalues(&self.entries)
            .into_iter()
            .filter(|&l| l > ENTROPY_CUTOFF)
            .map(|l| -l * l.log2())
            .sum()
    }

    /// Eigenvalue decomposition truncated at `rank_tolerance`: retains the
    /// eigenpairs with eigenvalue strictly above the tolerance, descending.
    pub fn spectral_decomposition(&self, rank_tolerance: f64) -> Result<SpectralDecomp> {
        if rank_tolerance < 0.0 {
            return Err(Error::InvalidParameter(
                "rank tolerance must be nonnegative".into(),
            ));
        }
        let eig = self.entries.clone().symmetric_eigen();
        let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
        order.sort_by(|&a, &b| {
            eig.eigenvalues[b]
                .partial_cmp(&eig.eigenvalues[a])
                .expect("finite eigenvalues")
        });
        let kept: Vec<usize> = order
            .into_iter()
            .filter(|&i| eig.eigenvalues[i] > rank_tolerance)
            .collect();
        if kept.is_empty() {
            return Err(Error::RankDeficient {
                tol: rank_tolerance,
            });
        }
        let d = self.dims.total();
        let eigenvectors = CMatrix::from_fn(d, kept.len(), |i, k| eig.eigenvectors[(i, kept[k])]);
        let eigenvalues: Vec<f64> = kept.iter().map(|&i| eig.eigenvalues[i]).collect();
        Ok(SpectralDecomp {
            eigenvectors,
            eigenvalues,
            rank_tolerance,
        })
    }
}

/// Truncated eigendecomposition of a density matrix: `D x K` orthonormal
/// eigenvector columns and the matching positive eigenvalues, descending.
#[derive(Debug, Clone)]
pub struct SpectralDecomp {
    eigenvectors: CMatrix,
    eigenvalues: Vec<f64>,
    rank_tolerance: f64,
}

impl SpectralDecomp {
    pub fn rank(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvectors(&self) -> &CMatrix {
        &self.eigenvectors
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn rank_tolerance(&self) -> f64 {
        self.rank_tolerance
    }

    /// `Phi diag(M) Phi^dagger`, for checking reconstruction quality.
    pub fn reconstruct(&self) -> CMatrix {
        let d = self.eigenvectors.nrows();
        let k = self.rank();
        let mut out = CMatrix::zeros(d, d);
        for c in 0..k {
            let v = self.eigenvectors.column(c);
            let w = self.eigenvalues[c];
            for i in 0..d {
                for j in 0..d {
                    out[(i, j)] += v[i] * v[j].conj() * w;
                }
            }
        }
        out
    }
}

/// Eigenvalues of a Hermitian complex matrix (unsorted).
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    m.clone().symmetric_eigen().eigenvalues.as_slice().to_vec()
}

/// Singular values of a square complex matrix, descending.
pub fn singular_values(m: &CMatrix) -> Result<Vec<f64>> {
    if m.nrows() != m.ncols() {
        return Err(Error::MatrixShape {
            rows: m.nrows(),
            cols: m.ncols(),
            expected: m.nrows().max(m.ncols()),
        });
    }
    Ok(singular_values_unchecked(m))
}

/// Singular values for internal hot paths; falls back to the eigenvalues of
/// `A^dagger A` if the iterative SVD fails to converge.
pub(crate) fn singular_values_unchecked(m: &CMatrix) -> Vec<f64> {
    let mut s: Vec<f64> = match m.clone().try_svd(false, false, f64::EPSILON, 10_000) {
        Some(svd) => svd.singular_values.iter().copied().collect(),
        None => {
            let gram = m.adjoint() * m;
            hermitian_eigenvalues(&gram)
                .into_iter()
                .map(|l| l.max(0.0).sqrt())
                .collect()
        }
    };
    s.sort_by(|a, b| b.partial_cmp(a).expect("finite singular values"));
    s
}

/// Partial transpose over the given subsystem set. Diagnostic utility: the
/// result is generally not a valid density matrix, so the raw matrix is
/// returned.
pub fn partial_transpose(rho: &DensityMatrix, sites: &[usize]) -> Result<CMatrix> {
    let dims = rho.dims();
    let sites = dims.checked_subset(sites)?;
    let env = dims.complement(&sites);
    let soff = block_offsets(dims, &sites);
    let eoff = block_offsets(dims, &env);
    let d = dims.total();
    let mut out = CMatrix::zeros(d, d);
    for rs in 0..soff.len() {
        for cs in 0..soff.len() {
            for &re in &eoff {
                for &ce in &eoff {
                    out[(soff[rs] + re, soff[cs] + ce)] =
                        rho.entries()[(soff[cs] + re, soff[rs] + ce)];
                }
            }
        }
    }
    Ok(out)
}

/// Applies a single-subsystem operator to a flat amplitude vector.
pub(crate) fn apply_one_site(dims: &Dims, site: usize, op: &CMatrix, amps: &CVector) -> CVector {
    let d = dims.dim(site);
    let stride = dims.strides()[site];
    let total = dims.total();
    let mut out = CVector::zeros(total);
    for f in 0..total {
        let a = (f / stride) % d;
        let base = f - a * stride;
        let mut acc = czero();
        for b in 0..d {
            acc += op[(a, b)] * amps[base + b * stride];
        }
        out[f] = acc;
    }
    out
}

/// Dense embedding `I ⊗ .. ⊗ op ⊗ .. ⊗ I` of a single-subsystem operator.
pub(crate) fn embed_one_site(dims: &Dims, site: usize, op: &CMatrix) -> CMatrix {
    let mut out = CMatrix::identity(1, 1);
    for k in 0..dims.n_subsystems() {
        if k == site {
            out = out.kronecker(op);
        } else {
            out = out.kronecker(&CMatrix::identity(dims.dim(k), dims.dim(k)));
        }
    }
    out
}

/// Max entrywise deviation of `U` from unitarity, `max |U^dagger U - I|`.
pub(crate) fn unitarity_defect(u: &CMatrix) -> f64 {
    let d = u.ncols();
    let gram = u.adjoint() * u;
    let mut defect = 0.0f64;
    for i in 0..d {
        for j in 0..d {
            let expected = if i == j { C64::new(1.0, 0.0) } else { czero() };
            defect = defect.max((gram[(i, j)] - expected).norm());
        }
    }
    defect
}

/// Multiplies a real matrix into a complex matrix without materializing a
/// complex copy of the real factor.
pub(crate) fn real_times_cmat(r: &RMatrix, m: &CMatrix) -> CMatrix {
    let rows = r.nrows();
    let cols = m.ncols();
    let inner = r.ncols();
    let mut out = CMatrix::zeros(rows, cols);
    for i in 0..rows {
        for k in 0..inner {
            let v = r[(i, k)];
            if v == 0.0 {
                continue;
            }
            for j in 0..cols {
                out[(i, j)] += m[(k, j)] * v;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;
    use approx::assert_relative_eq;

    fn ghz3() -> PureState {
        zoo::ghz(3, 2).unwrap()
    }

    fn w3() -> PureState {
        zoo::w(3).unwrap()
    }

    fn basis_state(dims: Dims, index: usize) -> PureState {
        let mut amps = CVector::zeros(dims.total());
        amps[index] = C64::new(1.0, 0.0);
        PureState::new(dims, amps).unwrap()
    }

    #[test]
    fn dims_validation() {
        assert!(Dims::new(vec![]).is_err());
        assert!(Dims::new(vec![2, 1]).is_err());
        let d = Dims::new(vec![2, 3, 4]).unwrap();
        assert_eq!(d.total(), 24);
        assert_eq!(d.strides(), vec![12, 4, 1]);
    }

    #[test]
    fn pure_state_norm_validation() {
        let dims = Dims::qubits(1).unwrap();
        let amps = CVector::from_vec(vec![C64::new(0.5, 0.0), C64::new(0.5, 0.0)]);
        assert!(matches!(
            PureState::new(dims.clone(), amps.clone()),
            Err(Error::NormViolation { .. })
        ));
        let fixed = PureState::new_renormalized(dims, amps).unwrap();
        assert_relative_eq!(fixed.amplitudes().norm(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn partial_trace_ghz_single_qubit() {
        // GHZ symmetry: every single-qubit reduction is maximally mixed.
        let rho = ghz3().partial_trace(&[0]).unwrap();
        assert_relative_eq!(rho.entries()[(0, 0)].re, 0.5, epsilon = 1e-12);
        assert_relative_eq!(rho.entries()[(1, 1)].re, 0.5, epsilon = 1e-12);
        assert_relative_eq!(rho.entries()[(0, 1)].norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn partial_trace_product_factorizes() {
        // |0> ⊗ |1>, keep subsystem 1 -> |1><1|
        let psi = basis_state(Dims::qubits(2).unwrap(), 1);
        let rho = psi.partial_trace(&[1]).unwrap();
        assert_relative_eq!(rho.entries()[(1, 1)].re, 1.0, epsilon = 1e-14);
        assert_relative_eq!(rho.entries()[(0, 0)].norm(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn partial_trace_w_state() {
        // Direct expansion of the W amplitudes gives diag(2/3, 1/3).
        let rho = w3().partial_trace(&[0]).unwrap();
        assert_relative_eq!(rho.entries()[(0, 0)].re, 2.0 / 3.0, epsilon = 1e-12);
        assert_relative_eq!(rho.entries()[(1, 1)].re, 1.0 / 3.0, epsilon = 1e-12);
    }

    #[test]
    fn partial_trace_errors() {
        let psi = ghz3();
        assert!(matches!(
            psi.partial_trace(&[]),
            Err(Error::EmptySubsystemSet)
        ));
        assert!(matches!(
            psi.partial_trace(&[3]),
            Err(Error::SubsystemOutOfRange { .. })
        ));
        assert!(matches!(
            psi.partial_trace(&[0, 0]),
            Err(Error::DuplicateSubsystem { .. })
        ));
    }

    #[test]
    fn permute_identity_and_swap() {
        let psi = basis_state(Dims::qubits(2).unwrap(), 0b01);
        let same = psi.permute_subsystems(&[0, 1]).unwrap();
        assert_eq!(same.amplitudes(), psi.amplitudes());
        let swapped = psi.permute_subsystems(&[1, 0]).unwrap();
        // |01> -> |10>
        assert_relative_eq!(swapped.amplitudes()[0b10].re, 1.0, epsilon = 0.0);
    }

    #[test]
    fn permute_roundtrip_bit_exact() {
        let psi = zoo::haar_random_pure(&Dims::new(vec![2, 3, 2]).unwrap(), 11);
        let perm = [2usize, 0, 1];
        // inverse permutation q: q[perm[k]] = k
        let mut inv = [0usize; 3];
        for (k, &p) in perm.iter().enumerate() {
            inv[p] = k;
        }
        let back = psi
            .permute_subsystems(&perm)
            .unwrap()
            .permute_subsystems(&inv)
            .unwrap();
        assert_eq!(back.amplitudes(), psi.amplitudes());
    }

    #[test]
    fn permute_rejects_non_bijection() {
        let psi = ghz3();
        assert!(matches!(
            psi.permute_subsystems(&[0, 0, 1]),
            Err(Error::NotAPermutation { .. })
        ));
        assert!(matches!(
            psi.permute_subsystems(&[0, 1]),
            Err(Error::NotAPermutation { .. })
        ));
    }

    #[test]
    fn purity_values() {
        let proj = ghz3().to_density();
        assert_relative_eq!(proj.purity(), 1.0, epsilon = 1e-12);
        let mixed = ghz3().partial_trace(&[0]).unwrap();
        assert_relative_eq!(mixed.purity(), 0.5, epsilon = 1e-12);
        let unbalanced = w3().partial_trace(&[0]).unwrap();
        // sum of squared eigenvalues of diag(2/3, 1/3)
        let expected = (2.0f64 / 3.0).powi(2) + (1.0f64 / 3.0).powi(2);
        assert_relative_eq!(unbalanced.purity(), expected, epsilon = 1e-12);
    }

    #[test]
    fn entropy_values() {
        let proj = ghz3().to_density();
        assert_relative_eq!(proj.von_neumann_entropy(), 0.0, epsilon = 1e-10);
        let mixed = ghz3().partial_trace(&[0]).unwrap();
        assert_relative_eq!(mixed.von_neumann_entropy(), 1.0, epsilon = 1e-12);
        let unbalanced = w3().partial_trace(&[0]).unwrap();
        let expected = -(2.0f64 / 3.0) * (2.0f64 / 3.0).log2() - (1.0f64 / 3.0) * (1.0f64 / 3.0).log2();
        assert_relative_eq!(unbalanced.von_neumann_entropy(), expected, epsilon = 1e-12);
        assert_relative_eq!(expected, 0.9183, epsilon = 5e-5);
    }

    #[test]
    fn entropy_invariant_under_unitary_conjugation() {
        let rho = zoo::random_density(&Dims::qubits(2).unwrap(), 3, 5).unwrap();
        let u = zoo::haar_unitary(4, 7);
        let conj = &u * rho.entries() * u.adjoint();
        let rotated = DensityMatrix::new(rho.dims().clone(), conj).unwrap();
        assert_relative_eq!(
            rho.von_neumann_entropy(),
            rotated.von_neumann_entropy(),
            epsilon = 1e-10
        );
    }

    #[test]
    fn spectral_decomposition_rank_and_reconstruction() {
        let proj = ghz3().to_density();
        let sd = proj.spectral_decomposition(DEFAULT_RANK_TOL).unwrap();
        assert_eq!(sd.rank(), 1);
        assert_relative_eq!(sd.eigenvalues()[0], 1.0, epsilon = 1e-10);

        let mixed = ghz3().partial_trace(&[0]).unwrap();
        let sd = mixed.spectral_decomposition(DEFAULT_RANK_TOL).unwrap();
        assert_eq!(sd.rank(), 2);
        assert_relative_eq!(sd.eigenvalues()[0], 0.5, epsilon = 1e-12);
        assert_relative_eq!(sd.eigenvalues()[1], 0.5, epsilon = 1e-12);

        let rho = zoo::random_density(&Dims::qubits(2).unwrap(), 4, 9).unwrap();
        let sd = rho.spectral_decomposition(DEFAULT_RANK_TOL).unwrap();
        let err = (sd.reconstruct() - rho.entries()).norm();
        assert!(err < 1e-10, "reconstruction error {err}");
        // orthonormal columns
        let gram = sd.eigenvectors().adjoint() * sd.eigenvectors();
        for i in 0..sd.rank() {
            for j in 0..sd.rank() {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((gram[(i, j)].norm() - expected).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn spectral_decomposition_upb_complement() {
        // Complement of four orthonormal vectors in an 8-dim space, uniform
        // weight: rank 4, all eigenvalues 1/4.
        let rho = zoo::upb_shifts();
        let sd = rho.spectral_decomposition(DEFAULT_RANK_TOL).unwrap();
        assert_eq!(sd.rank(), 4);
        for &l in sd.eigenvalues() {
            assert_relative_eq!(l, 0.25, epsilon = 1e-10);
        }
    }

    #[test]
    fn singular_value_basics() {
        let id = CMatrix::identity(2, 2);
        assert_eq!(singular_values(&id).unwrap(), vec![1.0, 1.0]);
        let zero = CMatrix::zeros(3, 3);
        assert!(singular_values(&zero).unwrap().iter().all(|&s| s == 0.0));
        let diag = CMatrix::from_fn(2, 2, |i, j| {
            if i == 0 && j == 0 {
                C64::new(3.0, 0.0)
            } else if i == 1 && j == 1 {
                C64::new(-4.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        let s = singular_values(&diag).unwrap();
        assert_relative_eq!(s[0], 4.0, epsilon = 1e-12);
        assert_relative_eq!(s[1], 3.0, epsilon = 1e-12);
        let rect = CMatrix::zeros(2, 3);
        assert!(singular_values(&rect).is_err());
    }

    #[test]
    fn density_matrix_validation_errors() {
        let dims = Dims::qubits(1).unwrap();
        let skew = CMatrix::from_fn(2, 2, |i, j| {
            if i == 0 && j == 1 {
                C64::new(0.3, 0.0)
            } else if i == j {
                C64::new(0.5, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        assert!(matches!(
            DensityMatrix::new(dims.clone(), skew),
            Err(Error::NotHermitian { .. })
        ));

        let offtrace = CMatrix::identity(2, 2);
        assert!(matches!(
            DensityMatrix::new(dims.clone(), offtrace.clone()),
            Err(Error::TraceViolation { .. })
        ));
        let fixed = DensityMatrix::new_renormalized(dims.clone(), offtrace).unwrap();
        assert_relative_eq!(fixed.trace(), 1.0, epsilon = 1e-14);

        let indefinite = CMatrix::from_fn(2, 2, |i, j| {
            if i == j {
                C64::new(if i == 0 { 1.5 } else { -0.5 }, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        assert!(matches!(
            DensityMatrix::new(dims, indefinite),
            Err(Error::NotPositive { .. })
        ));
    }

    #[test]
    fn schmidt_symmetry_of_reductions() {
        // Nonzero spectra of the two reduced blocks of a pure state agree.
        for seed in 0..10u64 {
            let dims = Dims::new(vec![2, 3, 2]).unwrap();
            let psi = zoo::haar_random_pure(&dims, seed);
            let left = psi.partial_trace(&[0]).unwrap();
            let right = psi.partial_trace(&[1, 2]).unwrap();
            let mut ls: Vec<f64> = hermitian_eigenvalues(left.entries())
                .into_iter()
                .filter(|&l| l > 1e-10)
                .collect();
            let mut rs: Vec<f64> = hermitian_eigenvalues(right.entries())
                .into_iter()
                .filter(|&l| l > 1e-10)
                .collect();
            ls.sort_by(|a, b| b.partial_cmp(a).unwrap());
            rs.sort_by(|a, b| b.partial_cmp(a).unwrap());
            assert_eq!(ls.len(), rs.len());
            for (a, b) in ls.iter().zip(&rs) {
                assert_relative_eq!(a, b, epsilon = 1e-10);
            }
            assert_relative_eq!(left.purity(), right.purity(), epsilon = 1e-10);
        }
    }

    #[test]
    fn partial_transpose_involution_and_trace() {
        let rho = zoo::random_density(&Dims::qubits(2).unwrap(), 4, 3).unwrap();
        let pt = partial_transpose(&rho, &[1]).unwrap();
        let back = {
            let tmp = DensityMatrix {
                dims: rho.dims().clone(),
                entries: pt.clone(),
            };
            partial_transpose(&tmp, &[1]).unwrap()
        };
        assert!((back - rho.entries()).norm() < 1e-14);
        assert_relative_eq!(pt.trace().re, 1.0, epsilon = 1e-12);
    }
}
