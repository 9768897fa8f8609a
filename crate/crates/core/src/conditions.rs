//! First-order side conditions and lattice-theoretic profiles.

use crate::representation::{decide_representable, DecisionMethod, SeparationReport};
use crate::{Budget, ElementSet, Poset, Result, Side, Signature};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    Lmd,
    D2Bar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TripleFailure {
    /// `x ∧ (y ∨ z)` exists, `(x ∧ y) ∨ (x ∧ z)` does not.
    Undefined,
    /// Both sides exist and differ.
    Unequal,
}

/// A triple violating a distributivity condition, with the evaluated sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TripleWitness {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    /// `y ∨ z`
    pub join_yz: Option<usize>,
    /// `x ∧ (y ∨ z)`
    pub lhs: Option<usize>,
    pub meet_xy: Option<usize>,
    pub meet_xz: Option<usize>,
    /// `(x ∧ y) ∨ (x ∧ z)`
    pub rhs: Option<usize>,
    pub failure: TripleFailure,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConditionReport {
    pub condition: Condition,
    pub holds: bool,
    pub counterexample: Option<TripleWitness>,
}

fn evaluate(p: &Poset, x: usize, y: usize, z: usize) -> TripleWitness {
    let join_yz = p.join(y, z);
    let lhs = join_yz.and_then(|j| p.meet(x, j));
    let meet_xy = p.meet(x, y);
    let meet_xz = p.meet(x, z);
    let rhs = match (meet_xy, meet_xz) {
        (Some(a), Some(b)) => p.join(a, b),
        _ => None,
    };
    TripleWitness {
        x,
        y,
        z,
        join_yz,
        lhs,
        meet_xy,
        meet_xz,
        rhs,
        failure: TripleFailure::Unequal,
    }
}

fn scan(p: &Poset, condition: Condition) -> ConditionReport {
    let n = p.len();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let mut w = evaluate(p, x, y, z);
                let failure = match (condition, w.lhs, w.rhs) {
                    (_, Some(l), Some(r)) if l != r => Some(TripleFailure::Unequal),
                    (Condition::Lmd, Some(_), None) => Some(TripleFailure::Undefined),
                    _ => None,
                };
                if let Some(failure) = failure {
                    w.failure = failure;
                    return ConditionReport {
                        condition,
                        holds: false,
                        counterexample: Some(w),
                    };
                }
            }
        }
    }
    ConditionReport {
        condition,
        holds: true,
        counterexample: None,
    }
}

/// Whenever `x ∧ (y ∨ z)` exists, `(x ∧ y) ∨ (x ∧ z)` exists and equals it.
pub fn check_lmd(p: &Poset) -> ConditionReport {
    scan(p, Condition::Lmd)
}

/// Whenever both `x ∧ (y ∨ z)` and `(x ∧ y) ∨ (x ∧ z)` exist, they are equal.
pub fn check_d2bar(p: &Poset) -> ConditionReport {
    scan(p, Condition::D2Bar)
}

/// Re-evaluates a witness; true when it is still a violation.
pub fn witness_reproduces(p: &Poset, condition: Condition, w: &TripleWitness) -> bool {
    let fresh = evaluate(p, w.x, w.y, w.z);
    match (fresh.lhs, fresh.rhs) {
        (Some(l), Some(r)) => l != r,
        (Some(_), None) => condition == Condition::Lmd,
        _ => false,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeProfile {
    pub is_lattice: bool,
    /// Everything below is only computed for lattices.
    pub lattice: Option<LatticeFacts>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeFacts {
    /// Binary distributive identity over all triples.
    pub distributive_identity: bool,
    /// No five-element sublattice isomorphic to `M3` or `N5`.
    pub no_m3_n5: bool,
    pub is_distributive: bool,
    /// Elements contained in every subset that joins to them.
    pub join_irreducibles: ElementSet,
    pub meet_irreducibles: ElementSet,
    /// The irreducibles computed as "exactly one lower (upper) cover" agree.
    pub irreducibles_by_covers_agree: bool,
    pub join_dense: bool,
    pub meet_dense: bool,
    /// `p ∧ ⋁X = ⋁{p ∧ x}` for all `p` and nonempty `X`.
    pub frame_law: bool,
    /// `p ∨ ⋀X = ⋀{p ∨ x}` for all `p` and nonempty `X`.
    pub coframe_law: bool,
}

pub fn is_lattice(p: &Poset) -> bool {
    let n = p.len();
    n > 0 && (0..n).all(|a| (a + 1..n).all(|b| p.meet(a, b).is_some() && p.join(a, b).is_some()))
}

/// Lattice facts; `None` details when `p` is not a lattice.
pub fn lattice_profile(p: &Poset) -> LatticeProfile {
    if !is_lattice(p) {
        return LatticeProfile {
            is_lattice: false,
            lattice: None,
        };
    }
    let distributive_identity = distributive_identity(p);
    let no_m3_n5 = !has_m3_or_n5(p);
    let join_irreducibles = irreducibles(p, Side::Join);
    let meet_irreducibles = irreducibles(p, Side::Meet);
    let by_covers_join: ElementSet = (0..p.len()).filter(|&i| p.lower_covers(i).len() == 1).collect();
    let by_covers_meet: ElementSet = (0..p.len()).filter(|&i| p.upper_covers(i).len() == 1).collect();
    let dense = |side: Side, irr: ElementSet| {
        (0..p.len()).all(|e| {
            let below = irr & p.principal(e, side.flip());
            ext_of(p, below, side) == Some(e)
        })
    };
    LatticeProfile {
        is_lattice: true,
        lattice: Some(LatticeFacts {
            distributive_identity,
            no_m3_n5,
            is_distributive: distributive_identity,
            join_irreducibles,
            meet_irreducibles,
            irreducibles_by_covers_agree: by_covers_join == join_irreducibles
                && by_covers_meet == meet_irreducibles,
            join_dense: dense(Side::Join, join_irreducibles),
            meet_dense: dense(Side::Meet, meet_irreducibles),
            frame_law: infinite_distributivity(p, Side::Meet),
            coframe_law: infinite_distributivity(p, Side::Join),
        }),
    }
}

/// Extremum in a lattice with the empty-set convention: `⋁∅` is the bottom,
/// `⋀∅` the top.
fn ext_of(p: &Poset, s: ElementSet, side: Side) -> Option<usize> {
    if s.is_empty() {
        match side {
            Side::Join => p.bottom(),
            Side::Meet => p.top(),
        }
    } else {
        p.extremum(s, side).ok().flatten()
    }
}

/// `j` is join-irreducible iff no subset avoiding `j` joins to `j`; such a
/// subset lies strictly below `j`, and the join of everything strictly below
/// `j` is the largest candidate, so one test per element suffices.
fn irreducibles(p: &Poset, side: Side) -> ElementSet {
    (0..p.len())
        .filter(|&j| {
            let strictly_below = p.principal(j, side.flip()).without(j);
            ext_of(p, strictly_below, side) != Some(j)
        })
        .collect()
}

fn distributive_identity(p: &Poset) -> bool {
    let n = p.len();
    (0..n).all(|x| {
        (0..n).all(|y| {
            (0..n).all(|z| {
                let l = p.join(y, z).and_then(|j| p.meet(x, j));
                let r = match (p.meet(x, y), p.meet(x, z)) {
                    (Some(a), Some(b)) => p.join(a, b),
                    _ => None,
                };
                l == r
            })
        })
    })
}

fn has_m3_or_n5(p: &Poset) -> bool {
    let n = p.len();
    for a in 0..n {
        for b in 0..n {
            if a == b || p.comparable(a, b) {
                continue;
            }
            let (Some(o), Some(i)) = (p.meet(a, b), p.join(a, b)) else {
                continue;
            };
            for c in 0..n {
                if c == a || c == b || c == o || c == i {
                    continue;
                }
                let m = |u: usize, v: usize| p.meet(u, v);
                let j = |u: usize, v: usize| p.join(u, v);
                // M3: three pairwise incomparable elements with common meet and join.
                let m3 = !p.comparable(a, c)
                    && !p.comparable(b, c)
                    && m(a, c) == Some(o)
                    && m(b, c) == Some(o)
                    && j(a, c) == Some(i)
                    && j(b, c) == Some(i);
                // N5: a < c with b beside both.
                let n5 = p.lt(a, c)
                    && !p.comparable(b, c)
                    && m(c, b) == Some(o)
                    && j(c, b) == Some(i);
                if m3 || n5 {
                    return true;
                }
            }
        }
    }
    false
}

/// Meet over arbitrary nonempty joins (`Side::Meet`, the frame law) or the
/// dual. Subsets are enumerated outright on small lattices; on larger ones
/// the law reduces to the binary identity since every join is a finite
/// iterated binary join.
fn infinite_distributivity(p: &Poset, side: Side) -> bool {
    let n = p.len();
    let (inner, outer) = match side {
        Side::Meet => (Side::Join, Side::Meet),
        Side::Join => (Side::Meet, Side::Join),
    };
    let op = |s: Side, a: usize, b: usize| match s {
        Side::Meet => p.meet(a, b),
        Side::Join => p.join(a, b),
    };
    if n > 16 {
        return (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    let l = op(inner, y, z).and_then(|j| op(outer, x, j));
                    let r = match (op(outer, x, y), op(outer, x, z)) {
                        (Some(a), Some(b)) => op(inner, a, b),
                        _ => None,
                    };
                    l == r
                })
            })
        });
    }
    let subsets = 1usize << n;
    for x in 0..n {
        // joined[s] = ⋁s, distributed[s] = ⋁{x ∧ e : e ∈ s}, built by adding
        // the lowest member.
        let mut joined = alloc::vec![0usize; subsets];
        let mut distributed = alloc::vec![0usize; subsets];
        for s in 1..subsets {
            let low = s.trailing_zeros() as usize;
            let rest = s & (s - 1);
            let x_low = op(outer, x, low).expect("lattice");
            if rest == 0 {
                joined[s] = low;
                distributed[s] = x_low;
            } else {
                joined[s] = op(inner, joined[rest], low).expect("lattice");
                distributed[s] = op(inner, distributed[rest], x_low).expect("lattice");
            }
            if op(outer, x, joined[s]) != Some(distributed[s]) {
                return false;
            }
        }
    }
    true
}

/// Outcome of the complete-representability check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompleteEvidence {
    pub verdict: bool,
    pub separation: SeparationReport,
    /// For lattices: whether (join-irreducibles join-dense and frame law)
    /// and its dual both match the verdict.
    pub lattice_check: Option<LatticeCrossCheck>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeCrossCheck {
    pub join_side: bool,
    pub meet_side: bool,
    pub agrees: bool,
}

/// Representability preserving all existing meets and joins. On a lattice
/// the verdict is also recomputed from irreducibles and the frame laws.
pub fn completely_representable(p: &Poset, budget: Budget) -> Result<CompleteEvidence> {
    let separation = decide_representable(p, Signature::complete(), DecisionMethod::PerPair, budget)?;
    let verdict = separation.verdict;
    let lattice_check = lattice_profile(p).lattice.map(|facts| {
        let join_side = facts.join_dense && facts.frame_law;
        let meet_side = facts.meet_dense && facts.coframe_law;
        LatticeCrossCheck {
            join_side,
            meet_side,
            agrees: join_side == verdict && meet_side == verdict,
        }
    });
    Ok(CompleteEvidence {
        verdict,
        separation,
        lattice_check,
    })
}
