//! Truncated model of the branching operators on the direct sum of the
//! Grothendieck groups: basis states (lambda, 1^k), box operators e_i / f_i
//! acting on lambda by removing / adding the unique box of content i, and
//! column operators e_inf / f_inf shifting k. Commutator identities are
//! checked exactly on the interior of the truncation, where compositions
//! cannot leave range.

use crate::combinatorics::Partition;
use crate::report::Assertion;
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FockError {
    #[error("operator {0} leaves the truncation bound {1}")]
    OutOfRange(String, usize),
}

/// Basis state: a partition plus a column multiplicity, with n = |lambda| + k.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FockState {
    pub lambda: Partition,
    pub k: usize,
}

impl FockState {
    pub fn new(lambda: Partition, k: usize) -> Self {
        FockState { lambda, k }
    }

    pub fn degree(&self) -> usize {
        self.lambda.size() + self.k
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FockOp {
    /// Remove the box of content i (zero if none is removable).
    E(i64),
    /// Add the box of content i (zero if none is addable).
    F(i64),
    /// Decrease the column: k -> k-1 (zero at k = 0).
    EInf,
    /// Increase the column: k -> k+1.
    FInf,
}

impl std::fmt::Display for FockOp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FockOp::E(i) => write!(f, "e_{}", i),
            FockOp::F(i) => write!(f, "f_{}", i),
            FockOp::EInf => write!(f, "e_inf"),
            FockOp::FInf => write!(f, "f_inf"),
        }
    }
}

/// Apply one operator to a basis state. Ok(None) means the state is killed;
/// an out-of-truncation raising application is an explicit error, never a
/// silent truncation.
pub fn apply(
    op: FockOp,
    state: &FockState,
    truncation: usize,
) -> Result<Option<FockState>, FockError> {
    match op {
        FockOp::E(i) => Ok(state
            .lambda
            .remove_box_of_content(i)
            .map(|l| FockState::new(l, state.k))),
        FockOp::F(i) => match state.lambda.add_box_of_content(i) {
            None => Ok(None),
            Some(l) => {
                if state.degree() + 1 > truncation {
                    return Err(FockError::OutOfRange(op.to_string(), truncation));
                }
                Ok(Some(FockState::new(l, state.k)))
            }
        },
        FockOp::EInf => Ok(if state.k == 0 {
            None
        } else {
            Some(FockState::new(state.lambda.clone(), state.k - 1))
        }),
        FockOp::FInf => {
            if state.degree() + 1 > truncation {
                return Err(FockError::OutOfRange(op.to_string(), truncation));
            }
            Ok(Some(FockState::new(state.lambda.clone(), state.k + 1)))
        }
    }
}

/// Formal integer combination of states; operators send basis states to at
/// most one state, so compositions stay sparse.
type Combo = BTreeMap<FockState, i64>;

fn apply_combo(op: FockOp, combo: &Combo, truncation: usize) -> Result<Combo, FockError> {
    let mut out = Combo::new();
    for (state, &c) in combo {
        if let Some(next) = apply(op, state, truncation)? {
            *out.entry(next).or_insert(0) += c;
        }
    }
    out.retain(|_, c| *c != 0);
    Ok(out)
}

fn single(state: &FockState) -> Combo {
    let mut c = Combo::new();
    c.insert(state.clone(), 1);
    c
}

/// Commutator [a, b] applied to a basis state.
fn commutator(
    a: FockOp,
    b: FockOp,
    state: &FockState,
    truncation: usize,
) -> Result<Combo, FockError> {
    let ab = apply_combo(a, &apply_combo(b, &single(state), truncation)?, truncation)?;
    let ba = apply_combo(b, &apply_combo(a, &single(state), truncation)?, truncation)?;
    let mut out = ab;
    for (s, c) in ba {
        *out.entry(s).or_insert(0) -= c;
    }
    out.retain(|_, c| *c != 0);
    Ok(out)
}

/// All states with degree <= bound, deterministically ordered.
pub fn states_up_to(bound: usize) -> Vec<FockState> {
    let mut out = Vec::new();
    for n in 0..=bound {
        for k in 0..=n {
            for lambda in Partition::enumerate(n - k) {
                out.push(FockState::new(lambda, k));
            }
        }
    }
    out
}

/// Exact verification of the commutation structure on the truncation interior.
pub fn verify_categorification(truncation: usize) -> Vec<Assertion> {
    assert!(truncation >= 2);
    let mut out = Vec::new();
    let interior: Vec<FockState> = states_up_to(truncation - 2);
    let index_range: Vec<i64> = (-(truncation as i64)..=truncation as i64).collect();

    // column operators commute with every box operator
    let mut inf_comms_ok = true;
    let mut checked = 0usize;
    for &i in &index_range {
        for pair in [
            (FockOp::E(i), FockOp::EInf),
            (FockOp::E(i), FockOp::FInf),
            (FockOp::F(i), FockOp::EInf),
            (FockOp::F(i), FockOp::FInf),
        ] {
            for state in &interior {
                let c = commutator(pair.0, pair.1, state, truncation)
                    .expect("interior states stay in range");
                if !c.is_empty() {
                    inf_comms_ok = false;
                }
                checked += 1;
            }
        }
    }
    out.push(Assertion::new(
        "fock/column-commutators",
        "[e_i, e_inf] = [e_i, f_inf] = [f_i, e_inf] = [f_i, f_inf] = 0",
        inf_comms_ok,
        format!("{} commutator evaluations", checked),
    ));

    // box operators preserve each column slice F_k
    let mut slices_ok = true;
    for state in &interior {
        for &i in &index_range {
            for op in [FockOp::E(i), FockOp::F(i)] {
                if let Some(next) = apply(op, state, truncation).expect("in range") {
                    if next.k != state.k {
                        slices_ok = false;
                    }
                }
            }
        }
    }
    out.push(Assertion::new(
        "fock/slice-preservation",
        "e_i and f_i preserve each column slice",
        slices_ok,
        format!("{} states", interior.len()),
    ));

    // f_inf and e_inf are mutually inverse where defined
    let mut inverse_ok = true;
    for state in &interior {
        let up = apply(FockOp::FInf, state, truncation).expect("in range");
        let back =
            apply_combo(FockOp::EInf, &single(up.as_ref().unwrap()), truncation).expect("in range");
        if back != single(state) {
            inverse_ok = false;
        }
        if state.k >= 1 {
            let down = apply(FockOp::EInf, state, truncation).expect("in range");
            let restored =
                apply(FockOp::FInf, down.as_ref().unwrap(), truncation).expect("in range");
            if restored.as_ref() != Some(state) {
                inverse_ok = false;
            }
        }
    }
    out.push(Assertion::new(
        "fock/column-inverse",
        "e_inf inverts f_inf on every slice",
        inverse_ok,
        format!("{} states", interior.len()),
    ));

    // off-diagonal box commutators vanish
    let mut offdiag_ok = true;
    for &i in &index_range {
        for &j in &index_range {
            if i == j {
                continue;
            }
            for state in &interior {
                let c =
                    commutator(FockOp::E(i), FockOp::F(j), state, truncation).expect("in range");
                if !c.is_empty() {
                    offdiag_ok = false;
                }
            }
        }
    }
    out.push(Assertion::new(
        "fock/offdiagonal-commutators",
        "[e_i, f_j] = 0 for i != j",
        offdiag_ok,
        format!("indices |i|,|j| <= {}", truncation),
    ));

    // Diagonal pairs: e_i f_i and f_i e_i are each 0/1-diagonal (never both 1),
    // so [e_i, f_i] is diagonal with entries in {-1, 0, 1}.
    let mut diag_ok = true;
    let mut seen_eigenvalues: std::collections::BTreeSet<i64> = Default::default();
    for &i in &index_range {
        for state in &interior {
            let ef = apply_combo(
                FockOp::E(i),
                &apply_combo(FockOp::F(i), &single(state), truncation).expect("in range"),
                truncation,
            )
            .expect("in range");
            let fe = apply_combo(
                FockOp::F(i),
                &apply_combo(FockOp::E(i), &single(state), truncation).expect("in range"),
                truncation,
            )
            .expect("in range");
            let proj_value = |c: &Combo| -> Option<i64> {
                if c.is_empty() {
                    Some(0)
                } else if c.len() == 1 {
                    let (s, &v) = c.iter().next().unwrap();
                    if s == state && v == 1 {
                        Some(1)
                    } else {
                        None
                    }
                } else {
                    None
                }
            };
            match (proj_value(&ef), proj_value(&fe)) {
                (Some(a), Some(b)) => {
                    if a == 1 && b == 1 {
                        diag_ok = false;
                    }
                    seen_eigenvalues.insert(a - b);
                }
                _ => diag_ok = false,
            }
        }
    }
    out.push(Assertion::new(
        "fock/diagonal-pairs",
        "e_i f_i and f_i e_i are 0/1-diagonal projections, never both 1",
        diag_ok,
        format!(
            "[e_i, f_i] eigenvalues observed: {:?}",
            seen_eigenvalues.iter().collect::<Vec<_>>()
        ),
    ));
    out
}

/// dim of (slice k) intersect (degree n) is the number of partitions of n - k.
pub fn slice_dimension(n: usize, k: usize) -> usize {
    if k > n {
        0
    } else {
        Partition::enumerate(n - k).len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn basic_moves() {
        let empty = FockState::new(Partition::empty(), 0);
        // f_inf on the vacuum
        let up = apply(FockOp::FInf, &empty, 6).unwrap().unwrap();
        assert_eq!(up, FockState::new(Partition::empty(), 1));
        // adding boxes of contents 0, 1, -1
        let one = apply(FockOp::F(0), &empty, 6).unwrap().unwrap();
        assert_eq!(one.lambda, part(&[1]));
        let two = apply(FockOp::F(1), &one, 6).unwrap().unwrap();
        assert_eq!(two.lambda, part(&[2]));
        let col = apply(FockOp::F(-1), &one, 6).unwrap().unwrap();
        assert_eq!(col.lambda, part(&[1, 1]));
        // no removable box of content 1 in a single box
        assert!(apply(FockOp::E(1), &one, 6).unwrap().is_none());
    }

    #[test]
    fn truncation_is_loud() {
        let state = FockState::new(part(&[2]), 0);
        match apply(FockOp::F(2), &state, 2) {
            Err(FockError::OutOfRange(_, 2)) => {}
            other => panic!("expected out-of-range, got {:?}", other),
        }
    }

    #[test]
    fn diagonal_commutator_values() {
        // [e_0, f_0] on the vacuum: one addable content-0 box, no removable
        let empty = FockState::new(Partition::empty(), 0);
        let c = commutator(FockOp::E(0), FockOp::F(0), &empty, 6).unwrap();
        assert_eq!(c, single(&empty));
        // [e_1, f_1] on (1): 1; on vacuum: 0
        let one = FockState::new(part(&[1]), 0);
        assert_eq!(
            commutator(FockOp::E(1), FockOp::F(1), &one, 6).unwrap(),
            single(&one)
        );
        assert!(commutator(FockOp::E(1), FockOp::F(1), &empty, 6)
            .unwrap()
            .is_empty());
        // the lowest-weight case: [e_0, f_0] on (1) is -1
        let c = commutator(FockOp::E(0), FockOp::F(0), &one, 6).unwrap();
        let mut expect = Combo::new();
        expect.insert(one.clone(), -1);
        assert_eq!(c, expect);
    }

    #[test]
    fn categorification_suite() {
        for a in verify_categorification(6) {
            assert!(a.passed(), "{}: {}", a.id, a.detail);
        }
    }

    #[test]
    fn slice_dimensions() {
        for n in 0..=6usize {
            for k in 0..=n {
                let count = states_up_to(n)
                    .into_iter()
                    .filter(|s| s.degree() == n && s.k == k)
                    .count();
                assert_eq!(count, slice_dimension(n, k));
            }
        }
    }

    #[test]
    fn matches_branching_on_small_rank() {
        // chevalley moves agree with the eigenspace restriction of the
        // seminormal modules for n <= 4
        use crate::context::AlgebraContext;
        use crate::seminormal::{build_irrep, restrict_eigenspace, EigenKind};
        for n in 1..=4usize {
            let ctx = AlgebraContext::mirabolic(n);
            for label in ctx.labels() {
                let rep = build_irrep(ctx, &label).unwrap();
                let k = label.second.size();
                let state = FockState::new(label.first.clone(), k);
                for i in -(n as i64)..=(n as i64) {
                    let fock_result = apply(FockOp::E(i), &state, 10).unwrap();
                    let branch = restrict_eigenspace(&rep, EigenKind::Content(i)).unwrap();
                    match fock_result {
                        Some(next) => {
                            assert_eq!(branch.len(), 1, "label {} content {}", label, i);
                            assert_eq!(branch[0].label.first, next.lambda);
                            assert_eq!(branch[0].label.second.size(), next.k);
                        }
                        None => assert!(branch.is_empty(), "label {} content {}", label, i),
                    }
                }
                let fock_inf = apply(FockOp::EInf, &state, 10).unwrap();
                let branch = restrict_eigenspace(&rep, EigenKind::Zero).unwrap();
                match fock_inf {
                    Some(next) => {
                        assert_eq!(branch.len(), 1);
                        assert_eq!(branch[0].label.first, next.lambda);
                        assert_eq!(branch[0].label.second.size(), next.k);
                    }
                    None => assert!(branch.is_empty()),
                }
            }
        }
    }
}
