//! Antisymmetric generator bases and the per-partition product operators.
//!
//! The generator basis of the rotation group on an n-dimensional block is the
//! set of n(n-1)/2 matrices with +1 at (j,k) and -1 at (k,j) for j < k. The
//! unnormalized +-1 convention is what makes the squared component sum of the
//! concurrence vector equal 2(1 - Tr rho_red^2) on every bipartite pure state
//! with no extra constants, and reduces to the two-qubit concurrence for
//! 2 x 2 blocks; both facts are covered by tests rather than assumed.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::linalg::{Dims, RMatrix};
use crate::partitions::Bipartition;

/// Ordered basis of real antisymmetric generators for one block dimension.
#[derive(Debug, Clone)]
pub struct GeneratorBasis {
    n: usize,
    pairs: Vec<(usize, usize)>,
    matrices: Vec<RMatrix>,
}

impl GeneratorBasis {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    /// The (j, k) index pair of generator `alpha`, lexicographic order.
    pub fn pair(&self, alpha: usize) -> (usize, usize) {
        self.pairs[alpha]
    }

    pub fn matrices(&self) -> &[RMatrix] {
        &self.matrices
    }
}

/// Generator basis for dimension `n`, ordered lexicographically over the
/// (j, k) pairs with j < k.
pub fn so_basis(n: usize) -> Result<GeneratorBasis> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "generator basis needs dimension >= 2, got {n}"
        )));
    }
    let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
    let mut matrices = Vec::with_capacity(n * (n - 1) / 2);
    for j in 0..n {
        for k in (j + 1)..n {
            let mut m = RMatrix::zeros(n, n);
            m[(j, k)] = 1.0;
            m[(k, j)] = -1.0;
            pairs.push((j, k));
            matrices.push(m);
        }
    }
    Ok(GeneratorBasis { n, pairs, matrices })
}

/// One product operator `L_alpha ⊗ L_beta` for a fixed bipartition, acting on
/// amplitudes permuted into (left, right) block order.
#[derive(Debug, Clone)]
pub struct PartitionOperator {
    partition: Bipartition,
    alpha: usize,
    beta: usize,
    matrix: RMatrix,
}

impl PartitionOperator {
    pub fn partition(&self) -> &Bipartition {
        &self.partition
    }

    /// Zero-based index into the left-block generator basis. Reports label
    /// generators one-based.
    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn beta(&self) -> usize {
        self.beta
    }

    /// Real symmetric `n1*n2 x n1*n2` matrix in the permuted basis.
    pub fn matrix(&self) -> &RMatrix {
        &self.matrix
    }
}

/// All P*Q product operators for one bipartition, alpha-major then beta.
pub fn partition_operators(dims: &Dims, partition: &Bipartition) -> Result<Vec<PartitionOperator>> {
    if !partition.matches(dims) {
        return Err(Error::PartitionMismatch);
    }
    let left_basis = so_basis(partition.n1())?;
    let right_basis = so_basis(partition.n2())?;
    let mut ops = Vec::with_capacity(left_basis.len() * right_basis.len());
    for (alpha, la) in left_basis.matrices().iter().enumerate() {
        for (beta, lb) in right_basis.matrices().iter().enumerate() {
            ops.push(PartitionOperator {
                partition: partition.clone(),
                alpha,
                beta,
                matrix: la.kronecker(lb),
            });
        }
    }
    Ok(ops)
}

type CacheKey = (Vec<usize>, Vec<usize>);
type OperatorCache = RwLock<HashMap<CacheKey, Arc<Vec<PartitionOperator>>>>;

static CACHE: OnceLock<OperatorCache> = OnceLock::new();

/// Cached variant of [`partition_operators`]. Operators are materialized on
/// first use per (dims, partition) and shared read-only afterwards.
pub fn cached_partition_operators(
    dims: &Dims,
    partition: &Bipartition,
) -> Result<Arc<Vec<PartitionOperator>>> {
    let key: CacheKey = (dims.dims().to_vec(), partition.left().to_vec());
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(hit) = cache.read().expect("operator cache poisoned").get(&key) {
        return Ok(hit.clone());
    }
    let ops = Arc::new(partition_operators(dims, partition)?);
    let mut write = cache.write().expect("operator cache poisoned");
    Ok(write.entry(key).or_insert(ops).clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::enumerate_bipartitions;

    #[test]
    fn so2_single_generator() {
        let basis = so_basis(2).unwrap();
        assert_eq!(basis.len(), 1);
        let m = &basis.matrices()[0];
        assert_eq!(m[(0, 1)], 1.0);
        assert_eq!(m[(1, 0)], -1.0);
        assert_eq!(m[(0, 0)], 0.0);
        assert_eq!(m[(1, 1)], 0.0);
    }

    #[test]
    fn so4_has_six_generators() {
        assert_eq!(so_basis(4).unwrap().len(), 6);
    }

    #[test]
    fn so3_pairwise_hilbert_schmidt_orthogonal() {
        let basis = so_basis(3).unwrap();
        assert_eq!(basis.len(), 3);
        for (a, ma) in basis.matrices().iter().enumerate() {
            for (b, mb) in basis.matrices().iter().enumerate() {
                let hs: f64 = (ma.transpose() * mb).trace();
                if a == b {
                    assert_eq!(hs, 2.0);
                } else {
                    assert_eq!(hs, 0.0);
                }
            }
        }
    }

    #[test]
    fn basis_invariants() {
        for n in 2..=5usize {
            let basis = so_basis(n).unwrap();
            assert_eq!(basis.len(), n * (n - 1) / 2);
            for m in basis.matrices() {
                // antisymmetric, exactly two nonzero entries
                assert_eq!((m.transpose() + m).abs().max(), 0.0);
                let nonzero = m.iter().filter(|&&v| v != 0.0).count();
                assert_eq!(nonzero, 2);
            }
        }
        assert!(so_basis(1).is_err());
    }

    #[test]
    fn two_qubit_operator_matches_pauli_product() {
        // L ⊗ L multiplies out to -(sigma_y ⊗ sigma_y) as a real matrix.
        let dims = Dims::qubits(2).unwrap();
        let part = Bipartition::new(&dims, &[0]).unwrap();
        let ops = partition_operators(&dims, &part).unwrap();
        assert_eq!(ops.len(), 1);
        let expected = RMatrix::from_row_slice(
            4,
            4,
            &[
                0.0, 0.0, 0.0, 1.0, //
                0.0, 0.0, -1.0, 0.0, //
                0.0, -1.0, 0.0, 0.0, //
                1.0, 0.0, 0.0, 0.0,
            ],
        );
        assert_eq!(ops[0].matrix(), &expected);
    }

    #[test]
    fn three_qubit_operator_counts() {
        let dims = Dims::qubits(3).unwrap();
        let parts = enumerate_bipartitions(&dims).unwrap();
        let single = Bipartition::new(&dims, &[0]).unwrap();
        assert_eq!(partition_operators(&dims, &single).unwrap().len(), 6);
        let total: usize = parts
            .iter()
            .map(|p| partition_operators(&dims, p).unwrap().len())
            .sum();
        assert_eq!(total, 18);
    }

    #[test]
    fn operator_matrices_symmetric_with_unit_entries() {
        let dims = Dims::new(vec![2, 3]).unwrap();
        let part = Bipartition::new(&dims, &[0]).unwrap();
        for op in partition_operators(&dims, &part).unwrap() {
            let m = op.matrix();
            assert_eq!((m.transpose() - m).abs().max(), 0.0);
            assert!(m.iter().all(|&v| v == 0.0 || v == 1.0 || v == -1.0));
            // square is the positive projector onto a coordinate plane pair
            let sq = m * m;
            assert!(sq.iter().all(|&v| v == 0.0 || v == 1.0));
            assert_eq!(sq.trace(), 4.0);
        }
    }

    #[test]
    fn cache_returns_shared_instances() {
        let dims = Dims::qubits(3).unwrap();
        let part = Bipartition::new(&dims, &[0, 1]).unwrap();
        let a = cached_partition_operators(&dims, &part).unwrap();
        let b = cached_partition_operators(&dims, &part).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        assert_eq!(a.len(), 6);
    }
}
