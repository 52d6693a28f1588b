//! Residual-entanglement (tangle) decompositions.
//!
//! A tangle report subtracts squared pairwise concurrences and lower-order
//! tangles from a squared focus concurrence; the remainder is the residual.
//! Pure-state focus terms and two-qubit pairwise terms are exact; everything
//! else is evaluated through the mixed-state lower bound and flagged, so
//! residuals built from flagged components are estimates, not identities.

use crate::bound::{partition_lower_bound, wootters_concurrence, BoundOptions};
use crate::error::{Error, Result};
use crate::linalg::{DensityMatrix, PureState, DEFAULT_RANK_TOL};
use crate::partitions::Bipartition;
use crate::pure::bipartite_concurrence;

/// Whether a reported term is computed exactly or as a lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exactness {
    Exact,
    LowerBound,
}

impl Exactness {
    pub fn is_exact(self) -> bool {
        matches!(self, Exactness::Exact)
    }
}

/// One named squared-concurrence or tangle term.
#[derive(Debug, Clone)]
pub struct TangleComponent {
    pub name: String,
    pub value: f64,
    pub exactness: Exactness,
}

/// Decomposition of one focus grouping: `residual = lhs - sum(components)`
/// holds arithmetically by construction.
#[derive(Debug, Clone)]
pub struct TangleReport {
    pub focus: String,
    pub lhs: f64,
    pub lhs_exactness: Exactness,
    pub components: Vec<TangleComponent>,
    pub residual: f64,
}

impl TangleReport {
    fn close(focus: String, lhs: f64, lhs_exactness: Exactness, components: Vec<TangleComponent>) -> Self {
        let residual = lhs - components.iter().map(|c| c.value).sum::<f64>();
        Self {
            focus,
            lhs,
            lhs_exactness,
            components,
            residual,
        }
    }

    /// True when every term (lhs and components) is exact.
    pub fn all_exact(&self) -> bool {
        self.lhs_exactness.is_exact() && self.components.iter().all(|c| c.exactness.is_exact())
    }
}

fn letter(i: usize) -> char {
    (b'A' + i as u8) as char
}

fn pair_name(a: usize, b: usize) -> String {
    format!("C2({}{})", letter(a.min(b)), letter(a.max(b)))
}

/// Exact three-qubit tangle: squared focus-vs-rest concurrence minus the two
/// squared pairwise two-qubit concurrences, all evaluated exactly.
pub fn three_tangle(psi: &PureState, focus: usize) -> Result<TangleReport> {
    if psi.dims().dims() != [2, 2, 2] {
        return Err(Error::WrongDims {
            expected: vec![2, 2, 2],
            got: psi.dims().dims().to_vec(),
        });
    }
    if focus > 2 {
        return Err(Error::SubsystemOutOfRange {
            index: focus,
            count: 3,
        });
    }
    let others: Vec<usize> = (0..3).filter(|&i| i != focus).collect();
    let part = Bipartition::new(psi.dims(), &[focus])?;
    let lhs = bipartite_concurrence(psi, &part)?.powi(2);
    let mut components = Vec::with_capacity(2);
    for &o in &others {
        let keep = if focus < o { [focus, o] } else { [o, focus] };
        let reduced = psi.partial_trace(&keep)?;
        let c = wootters_concurrence(&reduced)?;
        components.push(TangleComponent {
            name: pair_name(focus, o),
            value: c * c,
            exactness: Exactness::Exact,
        });
    }
    let focus_label = format!(
        "{}({}{})",
        letter(focus),
        letter(others[0]),
        letter(others[1])
    );
    Ok(TangleReport::close(
        focus_label,
        lhs,
        Exactness::Exact,
        components,
    ))
}

/// Squared bipartite concurrence of `rho` across `partition`, with the
/// exactness of the route taken: rank-1 states use the exact pure measure,
/// two-qubit layouts the exact closed form, everything else the optimized
/// lower bound.
fn squared_concurrence_mixed(
    rho: &DensityMatrix,
    partition: &Bipartition,
    opts: &BoundOptions,
) -> Result<(f64, Exactness)> {
    if rho.dims().dims() == [2, 2] {
        let c = wootters_concurrence(rho)?;
        return Ok((c * c, Exactness::Exact));
    }
    let rank = rho.spectral_decomposition(DEFAULT_RANK_TOL)?.rank();
    let bound = partition_lower_bound(rho, partition, opts)?;
    let exactness = if rank == 1 {
        Exactness::Exact
    } else {
        Exactness::LowerBound
    };
    Ok((bound.value * bound.value, exactness))
}

/// Tripartite tangle for a mixed state: the focus term and any non-two-qubit
/// pairwise term come from the lower bound (flagged), two-qubit reductions
/// from the closed form. The residual carries no sign guarantee.
pub fn tangle_mixed_focus(
    rho: &DensityMatrix,
    focus: usize,
    opts: &BoundOptions,
) -> Result<TangleReport> {
    let n = rho.dims().n_subsystems();
    if n != 3 {
        return Err(Error::WrongSubsystemCount { expected: 3, got: n });
    }
    if focus > 2 {
        return Err(Error::SubsystemOutOfRange {
            index: focus,
            count: 3,
        });
    }
    let others: Vec<usize> = (0..3).filter(|&i| i != focus).collect();

    let part = Bipartition::new(rho.dims(), &[focus])?;
    let (lhs, lhs_exactness) = squared_concurrence_mixed(rho, &part, opts)?;

    let mut components = Vec::with_capacity(2);
    for &o in &others {
        let keep = if focus < o { [focus, o] } else { [o, focus] };
        let reduced = rho.partial_trace(&keep)?;
        let focus_pos = keep.iter().position(|&i| i == focus).expect("focus kept");
        let sub_part = Bipartition::new(reduced.dims(), &[focus_pos])?;
        let (value, exactness) = squared_concurrence_mixed(&reduced, &sub_part, opts)?;
        components.push(TangleComponent {
            name: pair_name(focus, o),
            value,
            exactness,
        });
    }
    let focus_label = format!(
        "{}({}{})",
        letter(focus),
        letter(others[0]),
        letter(others[1])
    );
    Ok(TangleReport::close(
        focus_label,
        lhs,
        lhs_exactness,
        components,
    ))
}

/// The ten focus groupings of a 4-partite pure state, in a fixed order: the
/// four single foci (bracketing the two lowest-labeled others, with the last
/// remaining subsystem as the leftover), then the six ordered pair foci.
fn four_partite_groupings() -> (Vec<(usize, [usize; 2], usize)>, Vec<([usize; 2], [usize; 2])>) {
    // focus m, bracket (n, p), leftover q
    let single = vec![
        (0usize, [1usize, 2usize], 3usize),
        (1, [0, 2], 3),
        (2, [0, 1], 3),
        (3, [1, 2], 0),
    ];
    let pairs = vec![
        ([0usize, 1usize], [2usize, 3usize]),
        ([0, 2], [1, 3]),
        ([0, 3], [1, 2]),
        ([1, 2], [0, 3]),
        ([1, 3], [0, 2]),
        ([2, 3], [0, 1]),
    ];
    (single, pairs)
}

/// Tangle audit of a 4-partite pure state.
///
/// Every grouping's left-hand side is the exact squared pure concurrence of
/// its bipartition. Single-focus groupings expand into the two pairwise terms
/// and the tripartite tangle of the bracketed reduction plus the pairwise
/// term against the leftover subsystem; pair-focus groupings expand into the
/// two block-vs-single terms on the three-party reductions. Residuals are the
/// corresponding 4-tangle terms. Complementary pair foci must produce equal
/// left-hand sides.
pub fn four_partite_audit(psi: &PureState, opts: &BoundOptions) -> Result<Vec<TangleReport>> {
    let n = psi.dims().n_subsystems();
    if n != 4 {
        return Err(Error::WrongSubsystemCount { expected: 4, got: n });
    }
    let (single, pairs) = four_partite_groupings();
    let mut reports = Vec::with_capacity(10);

    for (m, [b0, b1], q) in single {
        let part = Bipartition::new(psi.dims(), &[m])?;
        let lhs = bipartite_concurrence(psi, &part)?.powi(2);

        // expand C^2_{m(b0 b1)} on the reduced three-party state
        let mut keep = vec![m, b0, b1];
        keep.sort_unstable();
        let reduced = psi.partial_trace(&keep)?;
        let focus_pos = keep.iter().position(|&i| i == m).expect("focus kept");
        let sub = tangle_mixed_focus(&reduced, focus_pos, opts)?;

        let mut components = Vec::with_capacity(4);
        for (&o, comp) in [b0, b1].iter().zip(&sub.components) {
            components.push(TangleComponent {
                name: pair_name(m, o),
                value: comp.value,
                exactness: comp.exactness,
            });
        }
        components.push(TangleComponent {
            name: format!("tau3({})", sub.focus),
            value: sub.residual,
            exactness: if sub.all_exact() {
                Exactness::Exact
            } else {
                Exactness::LowerBound
            },
        });
        let pair_q = psi.partial_trace(&if m < q { [m, q] } else { [q, m] })?;
        let cq = wootters_or_bound(&pair_q, opts)?;
        components.push(TangleComponent {
            name: pair_name(m, q),
            value: cq.0,
            exactness: cq.1,
        });

        let focus_label = format!(
            "{}({}{}{})",
            letter(m),
            letter(keep_others(m)[0]),
            letter(keep_others(m)[1]),
            letter(keep_others(m)[2]),
        );
        reports.push(TangleReport::close(
            focus_label,
            lhs,
            Exactness::Exact,
            components,
        ));
    }

    for ([m, nn], [p, q]) in pairs {
        let part = Bipartition::new(psi.dims(), &[m, nn])?;
        let lhs = bipartite_concurrence(psi, &part)?.powi(2);
        let mut components = Vec::with_capacity(2);
        for single_site in [p, q] {
            let mut keep = vec![m, nn, single_site];
            keep.sort_unstable();
            let reduced = psi.partial_trace(&keep)?;
            let block: Vec<usize> = keep
                .iter()
                .enumerate()
                .filter(|(_, &orig)| orig == m || orig == nn)
                .map(|(pos, _)| pos)
                .collect();
            let sub_part = Bipartition::new(reduced.dims(), &block)?;
            let (value, exactness) = squared_concurrence_mixed(&reduced, &sub_part, opts)?;
            components.push(TangleComponent {
                name: format!("C2(({}{}){})", letter(m), letter(nn), letter(single_site)),
                value,
                exactness,
            });
        }
        let focus_label = format!(
            "({}{})({}{})",
            letter(m),
            letter(nn),
            letter(p),
            letter(q)
        );
        reports.push(TangleReport::close(
            focus_label,
            lhs,
            Exactness::Exact,
            components,
        ));
    }

    // complementary pair foci describe the same cut; their lhs must agree
    let by_focus = |f: &str| -> f64 {
        reports
            .iter()
            .find(|r| r.focus == f)
            .map(|r| r.lhs)
            .expect("grouping present")
    };
    for (a, b) in [
        ("(AB)(CD)", "(CD)(AB)"),
        ("(AC)(BD)", "(BD)(AC)"),
        ("(AD)(BC)", "(BC)(AD)"),
    ] {
        let (la, lb) = (by_focus(a), by_focus(b));
        if (la - lb).abs() > 1e-10 {
            return Err(Error::InvalidParameter(format!(
                "complementary groupings {a} and {b} disagree: {la} vs {lb}"
            )));
        }
    }
    Ok(reports)
}

fn keep_others(m: usize) -> [usize; 3] {
    let mut out = [0usize; 3];
    let mut pos = 0;
    for i in 0..4 {
        if i != m {
            out[pos] = i;
            pos += 1;
        }
    }
    out
}

fn wootters_or_bound(rho: &DensityMatrix, opts: &BoundOptions) -> Result<(f64, Exactness)> {
    if rho.dims().dims() == [2, 2] {
        let c = wootters_concurrence(rho)?;
        Ok((c * c, Exactness::Exact))
    } else {
        let part = Bipartition::new(rho.dims(), &[0])?;
        squared_concurrence_mixed(rho, &part, opts)
    }
}
