//! Exact entanglement measures for pure multipartite states.
//!
//! Two independent routes compute the same quantity. The vector route builds,
//! per bipartition, the concurrence vector of bilinear forms against the
//! generator product operators and accumulates its squared length. The purity
//! route evaluates `2 * (Num - sum_p Tr rho_p^2)` from reduced density
//! matrices. The purity route is the default (it is cheaper); the vector route
//! is kept as an independently coded cross-check, and both values are exposed
//! in every report.

use crate::error::{Error, Result};
use crate::generators::cached_partition_operators;
use crate::linalg::{C64, CVector, PureState, RMatrix};
use crate::partitions::{enumerate_bipartitions, num_bipartitions, Bipartition};

/// Default tolerance used by [`is_fully_separable`].
pub const DEFAULT_SEPARABILITY_TOL: f64 = 1e-10;

/// Per-partition complex components indexed by generator pairs, alpha-major.
#[derive(Debug, Clone)]
pub struct ConcurrenceVector {
    partition: Bipartition,
    components: Vec<C64>,
}

impl ConcurrenceVector {
    pub fn partition(&self) -> &Bipartition {
        &self.partition
    }

    pub fn components(&self) -> &[C64] {
        &self.components
    }

    pub fn norm_sqr(&self) -> f64 {
        self.components.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }
}

/// `x^T S x` for real symmetric `S` and complex `x`.
fn bilinear_form(s: &RMatrix, x: &CVector) -> C64 {
    let n = s.nrows();
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            let v = s[(i, j)];
            if v != 0.0 {
                acc += x[i] * x[j] * v;
            }
        }
    }
    acc
}

/// Concurrence vector of `psi` for one bipartition: component (alpha, beta)
/// is the bilinear form of the conjugated permuted amplitudes against
/// `L_alpha ⊗ L_beta`, i.e. `conj(psi'^T S psi')` with `psi'` in (left, right)
/// block order.
pub fn concurrence_vector(psi: &PureState, partition: &Bipartition) -> Result<ConcurrenceVector> {
    if !partition.matches(psi.dims()) {
        return Err(Error::PartitionMismatch);
    }
    let permuted = psi.permute_subsystems(&partition.permutation())?;
    let ops = cached_partition_operators(psi.dims(), partition)?;
    let components = ops
        .iter()
        .map(|op| bilinear_form(op.matrix(), permuted.amplitudes()).conj())
        .collect();
    Ok(ConcurrenceVector {
        partition: partition.clone(),
        components,
    })
}

/// Euclidean length of the concurrence vector for one bipartition.
pub fn bipartite_concurrence(psi: &PureState, partition: &Bipartition) -> Result<f64> {
    Ok(concurrence_vector(psi, partition)?.norm())
}

/// Global entanglement of a pure state computed by both formulas.
#[derive(Debug, Clone)]
pub struct GlobalEntanglementReport {
    pub value_vector_formula: f64,
    pub value_purity_formula: f64,
    /// Squared concurrence per bipartition, in enumeration order.
    pub per_partition: Vec<(Bipartition, f64)>,
    pub num: u64,
}

impl GlobalEntanglementReport {
    /// The default (purity-route) value.
    pub fn value(&self) -> f64 {
        self.value_purity_formula
    }
}

/// `1 - Tr rho_block^2` for one cut, evaluated through the Schmidt spectrum
/// of the coefficient matrix as `2 sum_{i<j} s_i^2 s_j^2`. Forming
/// `Num - sum Tr rho_p^2` directly cancels catastrophically near separable
/// states (the subtraction leaves only rounding noise, and the outer square
/// root amplifies it past any useful tolerance); the cross-term sum is the
/// same quantity with every term nonnegative.
fn purity_deficit(psi: &PureState, partition: &Bipartition) -> f64 {
    // either block gives the same spectrum; take the smaller one
    let block = if partition.n1() <= partition.n2() {
        partition.left()
    } else {
        partition.right()
    };
    let coeff = psi.coefficient_matrix(block);
    let weights: Vec<f64> = crate::linalg::singular_values_unchecked(&coeff)
        .into_iter()
        .map(|s| s * s)
        .collect();
    let mut cross = 0.0;
    for i in 0..weights.len() {
        for j in (i + 1)..weights.len() {
            cross += weights[i] * weights[j];
        }
    }
    2.0 * cross
}

/// Root-sum-square of the bipartite concurrences over all distinct
/// bipartitions, evaluated independently by the vector route and the purity
/// route.
pub fn global_entanglement(psi: &PureState) -> Result<GlobalEntanglementReport> {
    let dims = psi.dims();
    let num = num_bipartitions(dims.n_subsystems())?;
    let parts = enumerate_bipartitions(dims)?;

    let mut per_partition = Vec::with_capacity(parts.len());
    let mut sum_c2 = 0.0;
    for part in &parts {
        let c2 = concurrence_vector(psi, part)?.norm_sqr();
        sum_c2 += c2;
        per_partition.push((part.clone(), c2));
    }
    let value_vector_formula = sum_c2.sqrt();

    let deficit_sum: f64 = parts.iter().map(|part| purity_deficit(psi, part)).sum();
    let value_purity_formula = (2.0 * deficit_sum).sqrt();

    Ok(GlobalEntanglementReport {
        value_vector_formula,
        value_purity_formula,
        per_partition,
        num,
    })
}

/// True when the global entanglement does not exceed `tol`. For pure states
/// this detects exactly the full tensor products.
pub fn is_fully_separable(psi: &PureState, tol: f64) -> Result<bool> {
    if tol <= 0.0 {
        return Err(Error::InvalidParameter(
            "separability tolerance must be positive".into(),
        ));
    }
    Ok(global_entanglement(psi)?.value() <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Dims;
    use crate::zoo;
    use approx::assert_relative_eq;

    fn bell() -> PureState {
        zoo::ghz(2, 2).unwrap()
    }

    fn single_partition(psi: &PureState) -> Bipartition {
        Bipartition::new(psi.dims(), &[0]).unwrap()
    }

    #[test]
    fn bell_state_single_component() {
        let psi = bell();
        let cv = concurrence_vector(&psi, &single_partition(&psi)).unwrap();
        assert_eq!(cv.components().len(), 1);
        assert_relative_eq!(cv.components()[0].norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn product_state_components_vanish() {
        let dims = Dims::qubits(2).unwrap();
        let mut amps = CVector::zeros(4);
        amps[0] = C64::new(1.0, 0.0);
        let psi = PureState::new(dims, amps).unwrap();
        let cv = concurrence_vector(&psi, &single_partition(&psi)).unwrap();
        assert_relative_eq!(cv.norm(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn global_phase_leaves_magnitudes_unchanged() {
        let psi = zoo::haar_random_pure(&Dims::qubits(2).unwrap(), 3);
        let phase = C64::from_polar(1.0, 0.87);
        let shifted = PureState::new(psi.dims().clone(), psi.amplitudes() * phase).unwrap();
        let part = single_partition(&psi);
        let a = concurrence_vector(&psi, &part).unwrap();
        let b = concurrence_vector(&shifted, &part).unwrap();
        for (x, y) in a.components().iter().zip(b.components()) {
            assert_relative_eq!(x.norm(), y.norm(), epsilon = 1e-12);
        }
    }

    #[test]
    fn two_qubit_concurrence_closed_form() {
        // For a|00> + b|01> + c|10> + d|11> the concurrence is 2|ad - bc|.
        for seed in 0..20u64 {
            let psi = zoo::haar_random_pure(&Dims::qubits(2).unwrap(), seed);
            let a = psi.amplitudes();
            let expected = 2.0 * (a[0] * a[3] - a[1] * a[2]).norm();
            let got = bipartite_concurrence(&psi, &single_partition(&psi)).unwrap();
            assert_relative_eq!(got, expected, epsilon = 1e-11);
        }
    }

    #[test]
    fn concurrence_matches_reduced_purity_bridge() {
        // |C|^2 = 2 (1 - Tr rho_red^2) per bipartition, including qutrits.
        for (dims, seed) in [
            (Dims::qubits(2).unwrap(), 1u64),
            (Dims::new(vec![2, 3]).unwrap(), 2),
            (Dims::new(vec![3, 3]).unwrap(), 3),
            (Dims::new(vec![2, 2, 3]).unwrap(), 4),
        ] {
            let psi = zoo::haar_random_pure(&dims, seed);
            for part in enumerate_bipartitions(&dims).unwrap() {
                let c = bipartite_concurrence(&psi, &part).unwrap();
                let purity = psi.partial_trace(part.left()).unwrap().purity();
                assert_relative_eq!(c * c, 2.0 * (1.0 - purity), epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn maximally_entangled_qutrit_pair() {
        let psi = zoo::ghz(2, 3).unwrap();
        let part = single_partition(&psi);
        let c = bipartite_concurrence(&psi, &part).unwrap();
        assert_relative_eq!(c, 2.0 / 3.0f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn reference_global_values() {
        let ghz3 = zoo::ghz(3, 2).unwrap();
        let r = global_entanglement(&ghz3).unwrap();
        assert_relative_eq!(r.value_purity_formula, 3.0f64.sqrt(), epsilon = 1e-10);
        assert_relative_eq!(r.value_vector_formula, 3.0f64.sqrt(), epsilon = 1e-10);
        assert_eq!(r.num, 3);

        let w3 = zoo::w(3).unwrap();
        let r = global_entanglement(&w3).unwrap();
        assert_relative_eq!(r.value(), (8.0f64 / 3.0).sqrt(), epsilon = 1e-10);

        let bell_and_spectator = bell().tensor(&zoo::basis_pure(&Dims::qubits(1).unwrap(), 0).unwrap());
        let r = global_entanglement(&bell_and_spectator).unwrap();
        assert_relative_eq!(r.value(), 2.0f64.sqrt(), epsilon = 1e-10);

        let zero3 = zoo::basis_pure(&Dims::qubits(3).unwrap(), 0).unwrap();
        let r = global_entanglement(&zero3).unwrap();
        assert!(r.value() <= 1e-10);
        assert!(r.value_vector_formula <= 1e-10);

        let ghz4 = zoo::ghz(4, 2).unwrap();
        let r = global_entanglement(&ghz4).unwrap();
        assert_eq!(r.num, 7);
        assert_relative_eq!(r.value(), 7.0f64.sqrt(), epsilon = 1e-10);
    }

    #[test]
    fn report_invariants_hold() {
        let psi = zoo::haar_random_pure(&Dims::new(vec![2, 3, 2]).unwrap(), 17);
        let r = global_entanglement(&psi).unwrap();
        let sum: f64 = r.per_partition.iter().map(|(_, c2)| c2).sum();
        assert_relative_eq!(r.value_vector_formula.powi(2), sum, epsilon = 1e-10);
        assert!((r.value_vector_formula - r.value_purity_formula).abs() <= 1e-9);
        assert!(r.value().powi(2) <= 2.0 * r.num as f64 + 1e-9);
    }

    #[test]
    fn separability_detection() {
        let plus = PureState::new_renormalized(
            Dims::qubits(1).unwrap(),
            CVector::from_vec(vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0)]),
        )
        .unwrap();
        let product = zoo::basis_pure(&Dims::qubits(1).unwrap(), 0)
            .unwrap()
            .tensor(&zoo::basis_pure(&Dims::qubits(1).unwrap(), 1).unwrap())
            .tensor(&plus);
        assert!(is_fully_separable(&product, DEFAULT_SEPARABILITY_TOL).unwrap());

        let ghz3 = zoo::ghz(3, 2).unwrap();
        assert!(!is_fully_separable(&ghz3, DEFAULT_SEPARABILITY_TOL).unwrap());

        // semiseparable across one cut, still detected as entangled
        let bell_spectator = bell().tensor(&zoo::basis_pure(&Dims::qubits(1).unwrap(), 0).unwrap());
        assert!(!is_fully_separable(&bell_spectator, DEFAULT_SEPARABILITY_TOL).unwrap());

        assert!(is_fully_separable(&ghz3, -1.0).is_err());
    }

    #[test]
    fn single_subsystem_is_rejected() {
        let psi = zoo::basis_pure(&Dims::qubits(1).unwrap(), 0).unwrap();
        assert!(matches!(
            global_entanglement(&psi),
            Err(Error::TooFewSubsystems { .. })
        ));
    }

    #[test]
    fn partition_mismatch_is_rejected() {
        let psi = zoo::ghz(3, 2).unwrap();
        let other_dims = Dims::new(vec![2, 4]).unwrap();
        let foreign = Bipartition::new(&other_dims, &[0]).unwrap();
        assert!(matches!(
            concurrence_vector(&psi, &foreign),
            Err(Error::PartitionMismatch)
        ));
    }
}
