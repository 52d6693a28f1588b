//! Enumeration of the distinct unordered bipartitions of N subsystems.
//!
//! A split and its complement describe the same bipartite arrangement, so each
//! unordered split is represented once, canonically: the block containing
//! subsystem 0 is the left block. For N subsystems there are `2^(N-1) - 1`
//! distinct splits.

use crate::error::{Error, Result};
use crate::linalg::Dims;

/// Canonical unordered two-block split of the subsystem indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bipartition {
    left: Vec<usize>,
    right: Vec<usize>,
    n1: usize,
    n2: usize,
}

impl Bipartition {
    /// Builds the canonical bipartition whose one block is `block`. The block
    /// containing subsystem 0 becomes the left block, so `block` and its
    /// complement produce the same value.
    pub fn new(dims: &Dims, block: &[usize]) -> Result<Self> {
        let n = dims.n_subsystems();
        if n < 2 {
            return Err(Error::TooFewSubsystems { expected: 2, got: n });
        }
        let block = dims.checked_subset(block)?;
        let complement = dims.complement(&block);
        if complement.is_empty() {
            return Err(Error::InvalidParameter(
                "bipartition block must be a proper subset".into(),
            ));
        }
        let (left, right) = if block.contains(&0) {
            (block, complement)
        } else {
            (complement, block)
        };
        let n1 = dims.block_dim(&left);
        let n2 = dims.block_dim(&right);
        Ok(Self { left, right, n1, n2 })
    }

    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self) -> &[usize] {
        &self.right
    }

    /// Dimension of the left block.
    pub fn n1(&self) -> usize {
        self.n1
    }

    /// Dimension of the right block.
    pub fn n2(&self) -> usize {
        self.n2
    }

    pub fn n_subsystems(&self) -> usize {
        self.left.len() + self.right.len()
    }

    /// Subsystem permutation that moves the left block to the leading
    /// positions: position `k` of the permuted state holds subsystem
    /// `permutation()[k]` of the original.
    pub fn permutation(&self) -> Vec<usize> {
        let mut p = self.left.clone();
        p.extend_from_slice(&self.right);
        p
    }

    /// True when this bipartition indexes the same subsystem layout as `dims`.
    pub fn matches(&self, dims: &Dims) -> bool {
        self.n_subsystems() == dims.n_subsystems()
            && self.n1 == dims.block_dim(&self.left)
            && self.n2 == dims.block_dim(&self.right)
    }

    /// Display form like `{0,2}|{1}`.
    pub fn label(&self) -> String {
        let fmt = |s: &[usize]| {
            s.iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        format!("{{{}}}|{{{}}}", fmt(&self.left), fmt(&self.right))
    }
}

fn binomial(n: u64, k: u64) -> Option<u128> {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)?;
        acc /= (i + 1) as u128;
    }
    Some(acc)
}

/// Number of distinct unordered bipartitions of `n` subsystems, evaluated as
/// the sum of binomial block counts with the complementary even-split pairs
/// counted once: `sum_{i=1}^{(n-2)/2} C(n,i) + C(n,n/2)/2` for even `n`,
/// `sum_{i=1}^{(n-1)/2} C(n,i)` for odd `n`. Equals `2^(n-1) - 1`.
pub fn num_bipartitions(n: usize) -> Result<u64> {
    if n < 2 {
        return Err(Error::TooFewSubsystems { expected: 2, got: n });
    }
    let nn = n as u64;
    let overflow = || Error::InvalidParameter(format!("bipartition count overflows for n = {n}"));
    let mut total: u128 = 0;
    if n % 2 == 0 {
        for i in 1..=(nn - 2) / 2 {
            total = total
                .checked_add(binomial(nn, i).ok_or_else(overflow)?)
                .ok_or_else(overflow)?;
        }
        total = total
            .checked_add(binomial(nn, nn / 2).ok_or_else(overflow)? / 2)
            .ok_or_else(overflow)?;
    } else {
        for i in 1..=(nn - 1) / 2 {
            total = total
                .checked_add(binomial(nn, i).ok_or_else(overflow)?)
                .ok_or_else(overflow)?;
        }
    }
    u64::try_from(total).map_err(|_| overflow())
}

/// All distinct bipartitions in deterministic order: by left-block size
/// ascending, then lexicographic left set. The left block always contains
/// subsystem 0.
pub fn enumerate_bipartitions(dims: &Dims) -> Result<Vec<Bipartition>> {
    let n = dims.n_subsystems();
    if n < 2 {
        return Err(Error::TooFewSubsystems { expected: 2, got: n });
    }
    let rest = n - 1;
    let full: u64 = (1u64 << rest) - 1;
    let mut parts = Vec::with_capacity(full as usize);
    for mask in 0..full {
        let mut left = vec![0usize];
        for bit in 0..rest {
            if mask & (1 << bit) != 0 {
                left.push(bit + 1);
            }
        }
        parts.push(Bipartition::new(dims, &left)?);
    }
    parts.sort_by(|a, b| {
        a.left()
            .len()
            .cmp(&b.left().len())
            .then_with(|| a.left().cmp(b.left()))
    });
    Ok(parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn count_small_cases() {
        // direct evaluation of the two-case formula
        assert_eq!(num_bipartitions(2).unwrap(), 1);
        assert_eq!(num_bipartitions(3).unwrap(), 3); // C(3,1)
        assert_eq!(num_bipartitions(4).unwrap(), 7); // C(4,1) + C(4,2)/2
        assert_eq!(num_bipartitions(6).unwrap(), 31);
        assert!(num_bipartitions(1).is_err());
    }

    #[test]
    fn count_matches_closed_form() {
        for n in 2..=10usize {
            assert_eq!(num_bipartitions(n).unwrap(), (1u64 << (n - 1)) - 1, "n = {n}");
        }
    }

    #[test]
    fn enumeration_two_and_three() {
        let d2 = Dims::qubits(2).unwrap();
        let parts = enumerate_bipartitions(&d2).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].left(), &[0]);
        assert_eq!(parts[0].right(), &[1]);

        let d3 = Dims::qubits(3).unwrap();
        let lefts: Vec<Vec<usize>> = enumerate_bipartitions(&d3)
            .unwrap()
            .iter()
            .map(|p| p.left().to_vec())
            .collect();
        assert_eq!(lefts, vec![vec![0], vec![0, 1], vec![0, 2]]);
    }

    #[test]
    fn enumeration_four_has_seven_canonical_splits() {
        let d4 = Dims::qubits(4).unwrap();
        let parts = enumerate_bipartitions(&d4).unwrap();
        assert_eq!(parts.len(), 7);
        let lefts: Vec<Vec<usize>> = parts.iter().map(|p| p.left().to_vec()).collect();
        assert_eq!(
            lefts,
            vec![
                vec![0],
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![0, 1, 2],
                vec![0, 1, 3],
                vec![0, 2, 3],
            ]
        );
        // each 2-2 split appears exactly once
        let two_two: Vec<&Bipartition> = parts.iter().filter(|p| p.left().len() == 2).collect();
        assert_eq!(two_two.len(), 3);
    }

    #[test]
    fn no_pair_of_entries_are_complements() {
        for n in 2..=8usize {
            let dims = Dims::qubits(n).unwrap();
            let parts = enumerate_bipartitions(&dims).unwrap();
            assert_eq!(parts.len() as u64, num_bipartitions(n).unwrap());
            for (i, a) in parts.iter().enumerate() {
                assert!(a.left().contains(&0));
                for b in parts.iter().skip(i + 1) {
                    assert_ne!(a.left(), b.left(), "duplicate split");
                    assert_ne!(a.left(), b.right(), "complementary pair leaked");
                }
            }
        }
    }

    #[test]
    fn canonicalization_swaps_blocks_without_zero() {
        let dims = Dims::new(vec![2, 3, 4]).unwrap();
        let p = Bipartition::new(&dims, &[1]).unwrap();
        assert_eq!(p.left(), &[0, 2]);
        assert_eq!(p.right(), &[1]);
        assert_eq!(p.n1(), 8);
        assert_eq!(p.n2(), 3);
        assert_eq!(p, Bipartition::new(&dims, &[0, 2]).unwrap());
        assert_eq!(p.permutation(), vec![0, 2, 1]);
    }

    #[test]
    fn rejects_degenerate_blocks() {
        let dims = Dims::qubits(3).unwrap();
        assert!(Bipartition::new(&dims, &[]).is_err());
        assert!(Bipartition::new(&dims, &[0, 1, 2]).is_err());
        assert!(Bipartition::new(&dims, &[5]).is_err());
    }
}
