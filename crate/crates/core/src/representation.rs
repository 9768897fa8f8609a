//! Deciding, constructing and checking field-of-sets representations.
//!
//! A poset is `(alpha, beta)`-representable exactly when its
//! `(alpha, beta)`-filters separate it: for every `p ≰ q` some filter contains
//! `p` and misses `q`. [`decide_representable`] looks for one such filter
//! per pair; [`canonical_representation`] then maps each element to the set
//! of filters containing it.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::filters::{self, enumerate_filters, extend_to_filter, Filter, FilterPolicy};
use crate::{Arity, Budget, ElementSet, Error, Poset, Result, Side, Signature};

/// Points of the ground set, by index into [`Representation::ground`].
pub type PointSet = BTreeSet<usize>;

/// A map `h` from elements to subsets of a ground set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub ground: Vec<String>,
    /// `map[p]` is the image of element `p`.
    pub map: Vec<PointSet>,
    pub signature: Signature,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepViolation {
    /// `p ≤ q` in the poset disagrees with `h(p) ⊆ h(q)`.
    OrderEmbedding { p: usize, q: usize, le: bool, subset: bool },
    MeetNotIntersection { antichain: ElementSet, meet: usize },
    JoinNotUnion { antichain: ElementSet, join: usize },
    TopNotGround { top: usize },
    BottomNotEmpty { bottom: usize },
}

/// How [`decide_representable`] looks for separating filters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DecisionMethod {
    /// One backtracking extension search per pair.
    #[default]
    PerPair,
    /// Enumerate every filter, then scan for separators.
    Enumerate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairOutcome {
    pub p: usize,
    pub q: usize,
    /// A filter containing `p` but not `q`, if one exists.
    pub witness: Option<Filter>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationReport {
    pub signature: Signature,
    pub verdict: bool,
    /// One entry per ordered pair with `p ≰ q`, ordered by `(p, q)`.
    pub pairs: Vec<PairOutcome>,
}

impl SeparationReport {
    pub fn failing_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs
            .iter()
            .filter(|o| o.witness.is_none())
            .map(|o| (o.p, o.q))
    }
}

fn unordered_pairs(p: &Poset) -> impl Iterator<Item = (usize, usize)> + '_ {
    (0..p.len()).flat_map(move |a| (0..p.len()).filter(move |&b| !p.le(a, b)).map(move |b| (a, b)))
}

/// Decides `(alpha, beta)`-representability by searching, for every `p ≰ q`,
/// for a filter with `p` in and `q` out.
///
/// Bound-2 signatures have no constraints on one side; they are settled by
/// the matching trivial representation instead of a search.
pub fn decide_representable(
    p: &Poset,
    sig: Signature,
    method: DecisionMethod,
    budget: Budget,
) -> Result<SeparationReport> {
    let sig = sig.canonical(p.len());
    if let Some(side) = trivial_side(sig) {
        return decide_by_trivial(p, sig, side);
    }
    let pairs = match method {
        DecisionMethod::PerPair => {
            let mut out = Vec::new();
            for (a, b) in unordered_pairs(p) {
                let witness = extend_to_filter(p, p.up(a), Some(b), sig, budget)?;
                out.push(PairOutcome { p: a, q: b, witness });
            }
            out
        }
        DecisionMethod::Enumerate => {
            let all = enumerate_filters(p, sig, FilterPolicy::All, budget)?;
            unordered_pairs(p)
                .map(|(a, b)| PairOutcome {
                    p: a,
                    q: b,
                    witness: all
                        .iter()
                        .find(|f| f.members.contains(a) && !f.members.contains(b))
                        .copied(),
                })
                .collect()
        }
    };
    let verdict = pairs.iter().all(|o| o.witness.is_some());
    Ok(SeparationReport {
        signature: sig,
        verdict,
        pairs,
    })
}

fn trivial_side(sig: Signature) -> Option<Side> {
    if sig.beta == Arity::Finite(2) {
        Some(Side::Meet)
    } else if sig.alpha == Arity::Finite(2) {
        Some(Side::Join)
    } else {
        None
    }
}

fn decide_by_trivial(p: &Poset, sig: Signature, side: Side) -> Result<SeparationReport> {
    let mut rep = trivial_representation(p, side);
    rep.signature = sig;
    let violations = verify_representation(p, &rep)?;
    if !violations.is_empty() {
        return Err(Error::InvalidRepresentation(violations.len()));
    }
    let point_filters = point_filters(p, &rep)?;
    let pairs = unordered_pairs(p)
        .map(|(a, b)| PairOutcome {
            p: a,
            q: b,
            witness: point_filters
                .iter()
                .map(|(_, f)| *f)
                .find(|f| f.members.contains(a) && !f.members.contains(b)),
        })
        .collect::<Vec<_>>();
    let verdict = pairs.iter().all(|o| o.witness.is_some());
    Ok(SeparationReport {
        signature: sig,
        verdict,
        pairs,
    })
}

/// The representation over all nonempty, bottom-free filters, with
/// `h(p) = {filters containing p}`. `None` when the filters do not separate.
/// Points are named `f0, f1, ..` in enumeration order.
pub fn canonical_representation(p: &Poset, sig: Signature, budget: Budget) -> Result<Option<Representation>> {
    let sig = sig.canonical(p.len());
    if !decide_representable(p, sig, DecisionMethod::PerPair, budget)?.verdict {
        return Ok(None);
    }
    let ground_filters = enumerate_filters(p, sig, FilterPolicy::Canonical, budget)?;
    let ground = (0..ground_filters.len()).map(|i| format!("f{i}")).collect();
    let map = (0..p.len())
        .map(|e| {
            ground_filters
                .iter()
                .enumerate()
                .filter(|(_, f)| f.members.contains(e))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    Ok(Some(Representation {
        ground,
        map,
        signature: sig,
    }))
}

/// Checks order-embedding, meet and join preservation below the signature's
/// bounds, and the top/bottom convention. Returns every violation.
pub fn verify_representation(p: &Poset, h: &Representation) -> Result<Vec<RepViolation>> {
    if h.map.len() != p.len() {
        return Err(Error::UnknownElement(h.map.len().min(p.len())));
    }
    for pts in &h.map {
        if let Some(&x) = pts.iter().find(|&&x| x >= h.ground.len()) {
            return Err(Error::UnknownPoint(x));
        }
    }
    let sig = h.signature.canonical(p.len());
    let mut out = Vec::new();
    for a in 0..p.len() {
        for b in 0..p.len() {
            let le = p.le(a, b);
            let subset = h.map[a].is_subset(&h.map[b]);
            if le != subset {
                out.push(RepViolation::OrderEmbedding { p: a, q: b, le, subset });
            }
        }
    }
    for c in p.antichain_constraints(sig.alpha, Side::Meet) {
        let mut members = c.antichain.iter();
        let first = members.next().expect("antichains have two or more members");
        let mut inter = h.map[first].clone();
        for m in members {
            inter.retain(|x| h.map[m].contains(x));
        }
        if inter != h.map[c.extremum] {
            out.push(RepViolation::MeetNotIntersection {
                antichain: c.antichain,
                meet: c.extremum,
            });
        }
    }
    for c in p.antichain_constraints(sig.beta, Side::Join) {
        let union: PointSet = c.antichain.iter().flat_map(|m| h.map[m].iter().copied()).collect();
        if union != h.map[c.extremum] {
            out.push(RepViolation::JoinNotUnion {
                antichain: c.antichain,
                join: c.extremum,
            });
        }
    }
    if let Some(top) = p.top() {
        if h.map[top].len() != h.ground.len() {
            out.push(RepViolation::TopNotGround { top });
        }
    }
    if let Some(bottom) = p.bottom() {
        if !h.map[bottom].is_empty() {
            out.push(RepViolation::BottomNotEmpty { bottom });
        }
    }
    Ok(out)
}

/// For each ground point `x`, the elements whose image contains `x`. Each of
/// these must be a filter at the representation's signature; a point whose
/// preimage is not is reported as an error.
pub fn point_filters(p: &Poset, h: &Representation) -> Result<Vec<(String, Filter)>> {
    let violations = verify_representation(p, h)?;
    if !violations.is_empty() {
        return Err(Error::InvalidRepresentation(violations.len()));
    }
    let sig = h.signature.canonical(p.len());
    let mut out = Vec::with_capacity(h.ground.len());
    for (x, name) in h.ground.iter().enumerate() {
        let members: ElementSet = (0..p.len()).filter(|&e| h.map[e].contains(&x)).collect();
        if let Err(v) = filters::is_filter(p, members, sig) {
            return Err(Error::PointFilterInvalid {
                point: name.clone(),
                detail: format!("{:?} at {:?}", v.kind, p.labels_of(v.witness.0)),
            });
        }
        out.push((name.clone(), Filter { members, signature: sig }));
    }
    Ok(out)
}

/// The two embeddings every poset has.
///
/// `Side::Meet`: `p ↦ ↓p` over ground `P`, preserving all meets, signature
/// `(ALL, 2)`. `Side::Join`: `p ↦ {q : q ≱ p}`, preserving all joins,
/// signature `(2, ALL)`. The point for the bottom (meet side) or the top (join
/// side) is dropped so that top maps to the ground and bottom to `∅`; no
/// separation ever relies on it. Points are named after elements.
pub fn trivial_representation(p: &Poset, side: Side) -> Representation {
    let (dropped, signature) = match side {
        Side::Meet => (p.bottom(), Signature::new(Arity::All, Arity::Finite(2))),
        Side::Join => (p.top(), Signature::new(Arity::Finite(2), Arity::All)),
    };
    let kept: Vec<usize> = (0..p.len()).filter(|&x| Some(x) != dropped).collect();
    let slot: BTreeMap<usize, usize> = kept.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let ground = kept.iter().map(|&x| p.label(x).to_string()).collect();
    let map = (0..p.len())
        .map(|e| {
            let members = match side {
                Side::Meet => p.down(e),
                Side::Join => p.all() - p.up(e),
            };
            members.iter().filter_map(|x| slot.get(&x).copied()).collect()
        })
        .collect();
    Representation {
        ground,
        map,
        signature,
    }
}

/// Closure of a representation's image under binary union and intersection.
#[derive(Debug, Clone)]
pub struct Envelope {
    /// The closed family ordered by inclusion; labels spell out the sets.
    pub lattice: Poset,
    pub sets: Vec<PointSet>,
    /// `embedding[p]` is the lattice element holding `h(p)`.
    pub embedding: Vec<usize>,
}

/// Closes the image of `h` under `∪` and `∩`. The result is a sublattice of
/// a powerset, hence distributive, and `h` factors through it.
pub fn distributive_envelope(p: &Poset, h: &Representation, max_sets: usize) -> Result<Envelope> {
    let violations = verify_representation(p, h)?;
    if !violations.is_empty() {
        return Err(Error::InvalidRepresentation(violations.len()));
    }
    let limit = max_sets.min(crate::MAX_ELEMENTS);
    let mut family: BTreeSet<PointSet> = h.map.iter().cloned().collect();
    let mut frontier: Vec<PointSet> = family.iter().cloned().collect();
    while let Some(s) = frontier.pop() {
        let current: Vec<PointSet> = family.iter().cloned().collect();
        for t in current {
            for u in [s.union(&t).copied().collect(), s.intersection(&t).copied().collect()] {
                if !family.contains(&u) {
                    if family.len() == limit {
                        return Err(Error::SizeExceeded(limit));
                    }
                    family.insert(u.clone());
                    frontier.push(u);
                }
            }
        }
    }
    let mut sets: Vec<PointSet> = family.into_iter().collect();
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let labels = sets
        .iter()
        .map(|s| {
            let names: Vec<&str> = s.iter().map(|&x| h.ground[x].as_str()).collect();
            format!("{{{}}}", names.join(","))
        })
        .collect();
    let mut pairs = Vec::new();
    for (i, a) in sets.iter().enumerate() {
        for (j, b) in sets.iter().enumerate() {
            if i != j && a.is_subset(b) {
                pairs.push((i, j));
            }
        }
    }
    let lattice = Poset::from_index_pairs(labels, &pairs)?;
    let embedding = h
        .map
        .iter()
        .map(|img| sets.iter().position(|s| s == img).expect("image is in its closure"))
        .collect();
    Ok(Envelope {
        lattice,
        sets,
        embedding,
    })
}
