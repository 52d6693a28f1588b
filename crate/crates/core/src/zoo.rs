//! Benchmark and reference state constructors.
//!
//! Everything here returns fully validated [`PureState`] / [`DensityMatrix`]
//! values. Seeded constructors draw from isolated ChaCha streams and are
//! bit-deterministic per seed.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::{C64, CMatrix, CVector, DensityMatrix, Dims, PureState};

fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
}

/// Computational basis state `|index>` over `dims`.
pub fn basis_pure(dims: &Dims, index: usize) -> Result<PureState> {
    if index >= dims.total() {
        return Err(Error::InvalidParameter(format!(
            "basis index {index} out of range for total dimension {}",
            dims.total()
        )));
    }
    let mut amps = CVector::zeros(dims.total());
    amps[index] = C64::new(1.0, 0.0);
    PureState::new(dims.clone(), amps)
}

/// `(sum_{k<d} |k..k>) / sqrt(d)` over `n` subsystems of dimension `d`.
pub fn ghz(n: usize, d: usize) -> Result<PureState> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "ghz needs n >= 2 subsystems, got {n}"
        )));
    }
    if d < 2 {
        return Err(Error::InvalidParameter(format!(
            "ghz needs local dimension >= 2, got {d}"
        )));
    }
    let dims = Dims::new(vec![d; n])?;
    let strides = dims.strides();
    let step: usize = strides.iter().sum();
    let mut amps = CVector::zeros(dims.total());
    let w = C64::new(1.0 / (d as f64).sqrt(), 0.0);
    for k in 0..d {
        amps[k * step] = w;
    }
    PureState::new(dims, amps)
}

/// Bell pair `(|00> + |11>) / sqrt(2)`.
pub fn bell() -> PureState {
    ghz(2, 2).expect("bell parameters are valid")
}

/// Uniform superposition of the single-excitation qubit basis states.
pub fn w(n: usize) -> Result<PureState> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "w needs n >= 2 subsystems, got {n}"
        )));
    }
    let dims = Dims::qubits(n)?;
    let mut amps = CVector::zeros(dims.total());
    let weight = C64::new(1.0 / (n as f64).sqrt(), 0.0);
    for i in 0..n {
        amps[1 << (n - 1 - i)] = weight;
    }
    PureState::new(dims, amps)
}

/// Product of independent Haar-random local states.
pub fn random_product(dims: &Dims, seed: u64) -> PureState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state: Option<PureState> = None;
    for &d in dims.dims() {
        let local_dims = Dims::new(vec![d]).expect("local dim >= 2");
        let amps = CVector::from_fn(d, |_, _| complex_normal(&mut rng));
        let local = PureState::new_renormalized(local_dims, amps).expect("nonzero local vector");
        state = Some(match state {
            None => local,
            Some(s) => s.tensor(&local),
        });
    }
    state.expect("dims nonempty")
}

/// Haar-distributed random pure state direction.
pub fn haar_random_pure(dims: &Dims, seed: u64) -> PureState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let amps = CVector::from_fn(dims.total(), |_, _| complex_normal(&mut rng));
        if let Ok(psi) = PureState::new_renormalized(dims.clone(), amps) {
            return psi;
        }
    }
}

/// Haar-distributed random unitary drawn from `rng` (Ginibre + QR with the
/// phase-fixed diagonal).
pub fn haar_unitary_with<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CMatrix {
    let g = CMatrix::from_fn(dim, dim, |_, _| complex_normal(rng));
    let qr = g.qr();
    let r = qr.r();
    let q = qr.q();
    let phases = CVector::from_fn(dim, |i, _| {
        let d = r[(i, i)];
        if d.norm() < 1e-300 {
            C64::new(1.0, 0.0)
        } else {
            d / d.norm()
        }
    });
    q * DMatrix::from_diagonal(&phases)
}

/// Seeded convenience wrapper around [`haar_unitary_with`].
pub fn haar_unitary(dim: usize, seed: u64) -> CMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    haar_unitary_with(&mut rng, dim)
}

/// Random density matrix of the requested rank: a Ginibre block `G` of shape
/// `total x rank` normalized as `G G^dagger / Tr`.
pub fn random_density(dims: &Dims, rank: usize, seed: u64) -> Result<DensityMatrix> {
    let total = dims.total();
    if rank < 1 || rank > total {
        return Err(Error::RankOutOfRange { rank, max: total });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = CMatrix::from_fn(total, rank, |_, _| complex_normal(&mut rng));
    let raw = &g * g.adjoint();
    DensityMatrix::new_renormalized(dims.clone(), raw)
}

fn kron3(a: &CVector, b: &CVector, c: &CVector) -> CVector {
    a.kronecker(b).kronecker(c)
}

/// Three-qubit bound entangled state built from the unextendible product
/// basis {|0,1,+>, |1,+,0>, |+,0,1>, |-,-,->}: the normalized projector onto
/// the orthogonal complement, `(I - sum_i |psi_i><psi_i|) / 4`.
pub fn upb_shifts() -> DensityMatrix {
    let s = 1.0 / 2.0f64.sqrt();
    let zero = CVector::from_vec(vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
    let one = CVector::from_vec(vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)]);
    let plus = CVector::from_vec(vec![C64::new(s, 0.0), C64::new(s, 0.0)]);
    let minus = CVector::from_vec(vec![C64::new(s, 0.0), C64::new(-s, 0.0)]);
    let basis = [
        kron3(&zero, &one, &plus),
        kron3(&one, &plus, &zero),
        kron3(&plus, &zero, &one),
        kron3(&minus, &minus, &minus),
    ];
    let mut entries = CMatrix::identity(8, 8);
    for v in &basis {
        for i in 0..8 {
            for j in 0..8 {
                entries[(i, j)] -= v[i] * v[j].conj();
            }
        }
    }
    entries /= C64::new(4.0, 0.0);
    let dims = Dims::qubits(3).expect("three qubits");
    DensityMatrix::new(dims, entries).expect("UPB complement is a valid state")
}

/// The four UPB product vectors themselves, for tests.
pub fn upb_vectors() -> Vec<CVector> {
    let s = 1.0 / 2.0f64.sqrt();
    let zero = CVector::from_vec(vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
    let one = CVector::from_vec(vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)]);
    let plus = CVector::from_vec(vec![C64::new(s, 0.0), C64::new(s, 0.0)]);
    let minus = CVector::from_vec(vec![C64::new(s, 0.0), C64::new(-s, 0.0)]);
    vec![
        kron3(&zero, &one, &plus),
        kron3(&one, &plus, &zero),
        kron3(&plus, &zero, &one),
        kron3(&minus, &minus, &minus),
    ]
}

/// Weights of the bound entangled Dür-Cirac-Tarrach preset:
/// `lambda_0^+ = 1/3`, `lambda_01 = lambda_11 = 1/6`, the rest zero.
pub const DCT_PRESET: DctWeights = DctWeights {
    lambda0_plus: 1.0 / 3.0,
    lambda0_minus: 0.0,
    lambda01: 1.0 / 6.0,
    lambda10: 0.0,
    lambda11: 1.0 / 6.0,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DctWeights {
    pub lambda0_plus: f64,
    pub lambda0_minus: f64,
    pub lambda01: f64,
    pub lambda10: f64,
    pub lambda11: f64,
}

/// Three-qubit Dür-Cirac-Tarrach mixture, diagonal in the basis
/// `|Psi_k^±> = (|k1 k2 0> ± |k1' k2' 1>) / sqrt(2)` (primes are flipped
/// bits): weight `lambda_0^±` on the two k = 0 states and `lambda_k` on both
/// signs for k in {01, 10, 11}. The weights must satisfy
/// `lambda_0^+ + lambda_0^- + 2 (lambda_01 + lambda_10 + lambda_11) = 1`.
pub fn dct(weights: DctWeights) -> Result<DensityMatrix> {
    let DctWeights {
        lambda0_plus,
        lambda0_minus,
        lambda01,
        lambda10,
        lambda11,
    } = weights;
    for (name, w) in [
        ("lambda0_plus", lambda0_plus),
        ("lambda0_minus", lambda0_minus),
        ("lambda01", lambda01),
        ("lambda10", lambda10),
        ("lambda11", lambda11),
    ] {
        if !(w >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "dct weight {name} must be nonnegative, got {w}"
            )));
        }
    }
    let total = lambda0_plus + lambda0_minus + 2.0 * (lambda01 + lambda10 + lambda11);
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidParameter(format!(
            "dct weights must sum to 1 (lambda0+ + lambda0- + 2(lambda01 + lambda10 + lambda11)); got {total:.17}"
        )));
    }

    let mut entries = CMatrix::zeros(8, 8);
    let mut add_pair = |k1: usize, k2: usize, sign: f64, weight: f64| {
        if weight == 0.0 {
            return;
        }
        let i = (k1 << 2) | (k2 << 1); // |k1 k2 0>
        let j = ((1 - k1) << 2) | ((1 - k2) << 1) | 1; // |k1' k2' 1>
        let h = weight * 0.5;
        entries[(i, i)] += C64::new(h, 0.0);
        entries[(j, j)] += C64::new(h, 0.0);
        entries[(i, j)] += C64::new(sign * h, 0.0);
        entries[(j, i)] += C64::new(sign * h, 0.0);
    };
    add_pair(0, 0, 1.0, lambda0_plus);
    add_pair(0, 0, -1.0, lambda0_minus);
    for (k1, k2, w) in [(0, 1, lambda01), (1, 0, lambda10), (1, 1, lambda11)] {
        add_pair(k1, k2, 1.0, w);
        add_pair(k1, k2, -1.0, w);
    }
    DensityMatrix::new(Dims::qubits(3)?, entries)
}

/// Three-qubit bound entangled family with positive parameters a, b, c:
/// `(2|GHZ><GHZ| + a|001><001| + b|010><010| + c|011><011| + (1/c)|100><100|
///  + (1/b)|101><101| + (1/a)|110><110|) / N` with
/// `N = 2 + a + b + c + 1/a + 1/b + 1/c`.
pub fn bound_abc(a: f64, b: f64, c: f64) -> Result<DensityMatrix> {
    for (name, v) in [("a", a), ("b", b), ("c", c)] {
        if !(v > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "bound_abc parameter {name} must be positive, got {v}"
            )));
        }
    }
    let norm = 2.0 + a + b + c + 1.0 / a + 1.0 / b + 1.0 / c;
    let mut entries = CMatrix::zeros(8, 8);
    // 2 |GHZ><GHZ| spreads over the corners
    for (i, j) in [(0, 0), (0, 7), (7, 0), (7, 7)] {
        entries[(i, j)] = C64::new(1.0 / norm, 0.0);
    }
    for (idx, weight) in [
        (1, a),
        (2, b),
        (3, c),
        (4, 1.0 / c),
        (5, 1.0 / b),
        (6, 1.0 / a),
    ] {
        entries[(idx, idx)] = C64::new(weight / norm, 0.0);
    }
    DensityMatrix::new(Dims::qubits(3)?, entries)
}

/// Human-readable statement of the density matrix [`bound_abc`] constructs.
pub const BOUND_ABC_FORMULA: &str = "rho = (2|GHZ><GHZ| + a|001><001| + b|010><010| + c|011><011| \
+ (1/c)|100><100| + (1/b)|101><101| + (1/a)|110><110|) / N, N = 2 + a + b + c + 1/a + 1/b + 1/c";

/// A parsed request for a zoo state, as accepted by the CLI.
#[derive(Debug, Clone)]
pub struct StateSpec {
    pub family: String,
    pub params: BTreeMap<String, ParamValue>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParamValue {
    Number(f64),
    List(Vec<f64>),
}

/// A constructed zoo state of either kind.
#[derive(Debug, Clone)]
pub enum ZooState {
    Pure(PureState),
    Density(DensityMatrix),
}

impl ZooState {
    pub fn dims(&self) -> &Dims {
        match self {
            ZooState::Pure(p) => p.dims(),
            ZooState::Density(d) => d.dims(),
        }
    }
}

/// Catalog entry describing one family for discovery output.
pub struct FamilyInfo {
    pub name: &'static str,
    pub kind: &'static str,
    pub params: &'static str,
    pub summary: &'static str,
}

pub fn family_catalog() -> Vec<FamilyInfo> {
    vec![
        FamilyInfo {
            name: "ghz",
            kind: "pure",
            params: "n=3 d=2",
            summary: "(|0..0> + .. + |d-1..d-1>)/sqrt(d) over n qudits",
        },
        FamilyInfo {
            name: "w",
            kind: "pure",
            params: "n=3",
            summary: "uniform single-excitation superposition over n qubits",
        },
        FamilyInfo {
            name: "bell",
            kind: "pure",
            params: "",
            summary: "(|00> + |11>)/sqrt(2)",
        },
        FamilyInfo {
            name: "product",
            kind: "pure",
            params: "dims=2,2 [seeded]",
            summary: "tensor product of local states; random locals when a seed is given, |0..0> otherwise",
        },
        FamilyInfo {
            name: "haar_pure",
            kind: "pure",
            params: "dims=2,2 [seeded]",
            summary: "Haar-random pure state",
        },
        FamilyInfo {
            name: "random_density",
            kind: "density",
            params: "dims=2,2 rank=<total> [seeded]",
            summary: "Ginibre-induced random density matrix of the given rank",
        },
        FamilyInfo {
            name: "upb_shifts",
            kind: "density",
            params: "",
            summary: "bound entangled complement of the Shifts unextendible product basis (3 qubits)",
        },
        FamilyInfo {
            name: "dct",
            kind: "density",
            params: "lambda0_plus=1/3 lambda0_minus=0 lambda01=1/6 lambda10=0 lambda11=1/6",
            summary: "Dür-Cirac-Tarrach mixture; defaults are the bound entangled preset",
        },
        FamilyInfo {
            name: "bound_abc",
            kind: "density",
            params: "a=2 b=2 c=0.5",
            summary: "three-qubit bound entangled family over positive (a, b, c)",
        },
    ]
}

struct Params<'a> {
    family: &'a str,
    map: &'a BTreeMap<String, ParamValue>,
}

impl<'a> Params<'a> {
    fn check_known(&self, allowed: &[&str]) -> Result<()> {
        for key in self.map.keys() {
            if !allowed.contains(&key.as_str()) {
                return Err(Error::InvalidParameter(format!(
                    "family {} does not accept parameter {key} (allowed: {})",
                    self.family,
                    if allowed.is_empty() {
                        "none".to_string()
                    } else {
                        allowed.join(", ")
                    }
                )));
            }
        }
        Ok(())
    }

    fn number(&self, key: &str, default: f64) -> Result<f64> {
        match self.map.get(key) {
            None => Ok(default),
            Some(ParamValue::Number(v)) => Ok(*v),
            Some(ParamValue::List(_)) => Err(Error::InvalidParameter(format!(
                "parameter {key} must be a single number"
            ))),
        }
    }

    fn usize(&self, key: &str, default: usize) -> Result<usize> {
        let v = self.number(key, default as f64)?;
        if v.fract() != 0.0 || v < 0.0 || v > usize::MAX as f64 {
            return Err(Error::InvalidParameter(format!(
                "parameter {key} must be a nonnegative integer, got {v}"
            )));
        }
        Ok(v as usize)
    }

    fn dims(&self, key: &str, default: &[usize]) -> Result<Dims> {
        let raw: Vec<f64> = match self.map.get(key) {
            None => default.iter().map(|&d| d as f64).collect(),
            Some(ParamValue::List(v)) => v.clone(),
            Some(ParamValue::Number(v)) => vec![*v],
        };
        let mut dims = Vec::with_capacity(raw.len());
        for v in raw {
            if v.fract() != 0.0 || v < 2.0 {
                return Err(Error::InvalidParameter(format!(
                    "parameter {key} must be a list of integers >= 2"
                )));
            }
            dims.push(v as usize);
        }
        Dims::new(dims)
    }
}

/// Materializes a [`StateSpec`]. Family names are case-insensitive and accept
/// `-` in place of `_`.
pub fn build_state(spec: &StateSpec) -> Result<ZooState> {
    let family = spec.family.to_ascii_lowercase().replace('-', "_");
    let p = Params {
        family: &family,
        map: &spec.params,
    };
    let seed = spec.seed.unwrap_or(0);
    match family.as_str() {
        "ghz" => {
            p.check_known(&["n", "d"])?;
            Ok(ZooState::Pure(ghz(p.usize("n", 3)?, p.usize("d", 2)?)?))
        }
        "w" => {
            p.check_known(&["n"])?;
            Ok(ZooState::Pure(w(p.usize("n", 3)?)?))
        }
        "bell" => {
            p.check_known(&[])?;
            Ok(ZooState::Pure(bell()))
        }
        "product" => {
            p.check_known(&["dims"])?;
            let dims = p.dims("dims", &[2, 2])?;
            if spec.seed.is_some() {
                Ok(ZooState::Pure(random_product(&dims, seed)))
            } else {
                Ok(ZooState::Pure(basis_pure(&dims, 0)?))
            }
        }
        "haar_pure" => {
            p.check_known(&["dims"])?;
            let dims = p.dims("dims", &[2, 2])?;
            Ok(ZooState::Pure(haar_random_pure(&dims, seed)))
        }
        "random_density" => {
            p.check_known(&["dims", "rank"])?;
            let dims = p.dims("dims", &[2, 2])?;
            let rank = p.usize("rank", dims.total())?;
            Ok(ZooState::Density(random_density(&dims, rank, seed)?))
        }
        "upb_shifts" => {
            p.check_known(&[])?;
            Ok(ZooState::Density(upb_shifts()))
        }
        "dct" => {
            p.check_known(&[
                "lambda0_plus",
                "lambda0_minus",
                "lambda01",
                "lambda10",
                "lambda11",
            ])?;
            let weights = DctWeights {
                lambda0_plus: p.number("lambda0_plus", DCT_PRESET.lambda0_plus)?,
                lambda0_minus: p.number("lambda0_minus", DCT_PRESET.lambda0_minus)?,
                lambda01: p.number("lambda01", DCT_PRESET.lambda01)?,
                lambda10: p.number("lambda10", DCT_PRESET.lambda10)?,
                lambda11: p.number("lambda11", DCT_PRESET.lambda11)?,
            };
            Ok(ZooState::Density(dct(weights)?))
        }
        "bound_abc" => {
            p.check_known(&["a", "b", "c"])?;
            Ok(ZooState::Density(bound_abc(
                p.number("a", 2.0)?,
                p.number("b", 2.0)?,
                p.number("c", 0.5)?,
            )?))
        }
        other => Err(Error::UnknownFamily(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hermitian_eigenvalues, unitarity_defect};
    use approx::assert_relative_eq;

    #[test]
    fn ghz_amplitudes() {
        let g = ghz(3, 2).unwrap();
        let s = 1.0 / 2.0f64.sqrt();
        assert_relative_eq!(g.amplitudes()[0].re, s, epsilon = 1e-15);
        assert_relative_eq!(g.amplitudes()[7].re, s, epsilon = 1e-15);
        assert!(ghz(1, 2).is_err());
        assert!(ghz(2, 1).is_err());
    }

    #[test]
    fn w_amplitudes() {
        let s = 1.0 / 3.0f64.sqrt();
        let psi = w(3).unwrap();
        for idx in [1usize, 2, 4] {
            assert_relative_eq!(psi.amplitudes()[idx].re, s, epsilon = 1e-15);
        }
        assert_relative_eq!(psi.amplitudes()[0].norm(), 0.0, epsilon = 0.0);
        assert!(w(1).is_err());
    }

    #[test]
    fn upb_vectors_orthonormal_and_annihilated() {
        let vs = upb_vectors();
        for (i, a) in vs.iter().enumerate() {
            for (j, b) in vs.iter().enumerate() {
                let ip: C64 = a.dotc(b);
                let expected = if i == j { 1.0 } else { 0.0 };
                assert_relative_eq!(ip.norm(), expected, epsilon = 1e-12);
            }
        }
        let rho = upb_shifts();
        assert_relative_eq!(rho.trace(), 1.0, epsilon = 1e-12);
        for v in &vs {
            // <psi_i| rho |psi_i> = 0 on the complement projector
            let rv = rho.entries() * v;
            let overlap: C64 = v.dotc(&rv);
            assert_relative_eq!(overlap.norm(), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn dct_preset_shape() {
        let rho = dct(DCT_PRESET).unwrap();
        assert_relative_eq!(rho.trace(), 1.0, epsilon = 1e-12);
        let rank = rho
            .spectral_decomposition(crate::linalg::DEFAULT_RANK_TOL)
            .unwrap()
            .rank();
        assert_eq!(rank, 5);
    }

    #[test]
    fn dct_single_weight_is_ghz_projector() {
        let rho = dct(DctWeights {
            lambda0_plus: 1.0,
            lambda0_minus: 0.0,
            lambda01: 0.0,
            lambda10: 0.0,
            lambda11: 0.0,
        })
        .unwrap();
        let ghz3 = ghz(3, 2).unwrap().to_density();
        assert!((rho.entries() - ghz3.entries()).norm() < 1e-14);
    }

    #[test]
    fn dct_preset_is_permutation_asymmetric() {
        // Expanding the preset: tracing out qubit 2 or qubit 1 both leave
        // diag(1/3, 1/6, 1/6, 1/3), while tracing out qubit 0 leaves
        // diag(1/6, 1/3, 1/3, 1/6) — the reductions differ across pairs.
        let rho = dct(DCT_PRESET).unwrap();
        let r01 = rho.partial_trace(&[0, 1]).unwrap();
        let r02 = rho.partial_trace(&[0, 2]).unwrap();
        let r12 = rho.partial_trace(&[1, 2]).unwrap();
        assert!((r01.entries() - r02.entries()).norm() < 1e-12);
        assert!((r01.entries() - r12.entries()).norm() > 1e-3);
        assert_relative_eq!(r01.entries()[(0, 0)].re, 1.0 / 3.0, epsilon = 1e-12);
        assert_relative_eq!(r12.entries()[(0, 0)].re, 1.0 / 6.0, epsilon = 1e-12);
    }

    #[test]
    fn dct_rejects_bad_weights() {
        let mut wts = DCT_PRESET;
        wts.lambda10 = -0.1;
        assert!(dct(wts).is_err());
        let mut wts = DCT_PRESET;
        wts.lambda0_plus = 0.5;
        assert!(dct(wts).is_err());
    }

    #[test]
    fn bound_abc_balanced_weights() {
        let rho = bound_abc(1.0, 1.0, 1.0).unwrap();
        assert_relative_eq!(rho.trace(), 1.0, epsilon = 1e-14);
        // N = 8: 1/8 on each flip state, 1/4 total on the GHZ projector
        for idx in 1..=6usize {
            assert_relative_eq!(rho.entries()[(idx, idx)].re, 0.125, epsilon = 1e-14);
        }
        assert_relative_eq!(rho.entries()[(0, 0)].re, 0.125, epsilon = 1e-14);
        assert_relative_eq!(rho.entries()[(0, 7)].re, 0.125, epsilon = 1e-14);
        assert!(bound_abc(0.0, 1.0, 1.0).is_err());
        assert!(bound_abc(1.0, -2.0, 1.0).is_err());
    }

    #[test]
    fn bound_abc_unit_trace_for_arbitrary_parameters() {
        for (a, b, c) in [(2.0, 2.0, 0.5), (3.0, 0.7, 1.9), (0.1, 10.0, 0.3)] {
            let rho = bound_abc(a, b, c).unwrap();
            assert_relative_eq!(rho.trace(), 1.0, epsilon = 1e-12);
            let min = hermitian_eigenvalues(rho.entries())
                .into_iter()
                .fold(f64::INFINITY, f64::min);
            assert!(min >= -1e-12);
        }
    }

    #[test]
    fn seeded_constructors_are_deterministic() {
        let dims = Dims::new(vec![2, 3]).unwrap();
        let a = haar_random_pure(&dims, 42);
        let b = haar_random_pure(&dims, 42);
        assert_eq!(a.amplitudes(), b.amplitudes());
        let c = haar_random_pure(&dims, 43);
        assert!((a.amplitudes() - c.amplitudes()).norm() > 1e-6);

        let r1 = random_density(&dims, 3, 7).unwrap();
        let r2 = random_density(&dims, 3, 7).unwrap();
        assert_eq!(r1.entries(), r2.entries());
    }

    #[test]
    fn rank_one_random_density_is_pure() {
        let rho = random_density(&Dims::qubits(2).unwrap(), 1, 5).unwrap();
        assert_relative_eq!(rho.purity(), 1.0, epsilon = 1e-12);
        assert!(random_density(&Dims::qubits(2).unwrap(), 5, 0).is_err());
        assert!(random_density(&Dims::qubits(2).unwrap(), 0, 0).is_err());
    }

    #[test]
    fn haar_unitary_is_unitary() {
        for dim in [2usize, 3, 4] {
            let u = haar_unitary(dim, 11 + dim as u64);
            assert!(unitarity_defect(&u) < 1e-12);
        }
    }

    #[test]
    fn haar_two_qubit_mean_squared_concurrence() {
        // Monte Carlo against the known mean reduced purity 3/5 of a 2x2
        // Haar marginal: E[C^2] = 2 (1 - 3/5) = 0.4.
        let dims = Dims::qubits(2).unwrap();
        let trials = 1000;
        let mut acc = 0.0;
        for seed in 0..trials {
            let psi = haar_random_pure(&dims, 10_000 + seed);
            let purity = psi.partial_trace(&[0]).unwrap().purity();
            acc += 2.0 * (1.0 - purity);
        }
        let mean = acc / trials as f64;
        assert!((mean - 0.4).abs() < 0.05, "mean C^2 = {mean}");
    }

    #[test]
    fn build_state_dispatch() {
        let spec = StateSpec {
            family: "upb-shifts".into(),
            params: BTreeMap::new(),
            seed: None,
        };
        assert!(matches!(build_state(&spec).unwrap(), ZooState::Density(_)));

        let spec = StateSpec {
            family: "GHZ".into(),
            params: BTreeMap::from([
                ("n".to_string(), ParamValue::Number(4.0)),
                ("d".to_string(), ParamValue::Number(2.0)),
            ]),
            seed: None,
        };
        match build_state(&spec).unwrap() {
            ZooState::Pure(p) => assert_eq!(p.dims().n_subsystems(), 4),
            _ => panic!("ghz should be pure"),
        }

        let spec = StateSpec {
            family: "nosuch".into(),
            params: BTreeMap::new(),
            seed: None,
        };
        assert!(matches!(build_state(&spec), Err(Error::UnknownFamily(_))));

        let spec = StateSpec {
            family: "bell".into(),
            params: BTreeMap::from([("n".to_string(), ParamValue::Number(3.0))]),
            seed: None,
        };
        assert!(build_state(&spec).is_err());
    }
}
