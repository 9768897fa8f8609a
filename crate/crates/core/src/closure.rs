//! Constraint-free filter search.
//!
//! Rather than listing every antichain with an existing meet or join, the
//! extension search asks directly whether an element is forced: `e` must join
//! an up-set `F` when some `X` of fewer than `alpha` members of `F` has meet
//! `e`, and `X` can always be taken among the minimal elements of `F` strictly
//! above `e`. Dually for the join side with maximal elements of the
//! complement strictly below `e`. Each question is a small bounded set-cover
//! over bit rows.

use crate::{ElementSet, Meter, Poset, Result, Signature};

/// Finds `X ⊆ cands` with `1 <= |X| <= max_size` and `⋂ rows[x] = rows[target]`.
///
/// Every candidate must satisfy `rows[target] ⊆ rows[x]`. With `rows` the
/// down-sets this asks whether `target` is the meet of some small `X`; with
/// up-sets, whether it is the join.
pub(crate) fn bounded_witness(
    rows: &[ElementSet],
    target: usize,
    cands: ElementSet,
    max_size: usize,
) -> Option<ElementSet> {
    if cands.is_empty() || max_size == 0 {
        return None;
    }
    let goal = rows[target];
    let mut common = !ElementSet::EMPTY;
    for x in cands {
        common &= rows[x];
    }
    if common != goal {
        return None;
    }
    if cands.len() <= max_size {
        return Some(cands);
    }
    let universe = ElementSet::full(rows.len()) - goal;
    cover(rows, cands, ElementSet::EMPTY, universe, max_size)
}

fn cover(
    rows: &[ElementSet],
    cands: ElementSet,
    chosen: ElementSet,
    remaining: ElementSet,
    max_size: usize,
) -> Option<ElementSet> {
    if remaining.is_empty() {
        return if chosen.is_empty() { None } else { Some(chosen) };
    }
    if chosen.len() == max_size {
        return None;
    }
    // Most constrained uncovered element first.
    let mut best: Option<ElementSet> = None;
    for z in remaining {
        let killers: ElementSet = (cands - chosen).iter().filter(|&x| !rows[x].contains(z)).collect();
        if killers.is_empty() {
            return None;
        }
        if best.is_none_or(|b| killers.len() < b.len()) {
            best = Some(killers);
            if killers.len() == 1 {
                break;
            }
        }
    }
    for x in best? {
        if let Some(found) = cover(rows, cands, chosen.with(x), remaining & rows[x], max_size) {
            return Some(found);
        }
    }
    None
}

/// A nonempty meet of fewer than `alpha` members of `f` that falls outside `f`.
pub(crate) fn meet_escape(p: &Poset, f: ElementSet, max_meet: usize) -> Option<(ElementSet, usize)> {
    if max_meet < 2 {
        return None;
    }
    for e in p.all() - f {
        let above = f & p.strict_up(e);
        if above.len() < 2 {
            continue;
        }
        if let Some(x) = bounded_witness(p.down_rows(), e, p.minimal(above), max_meet) {
            return Some((x, e));
        }
    }
    None
}

/// A join of fewer than `beta` elements of `outside` landing on a member of `f`.
pub(crate) fn prime_failure(
    p: &Poset,
    f: ElementSet,
    outside: ElementSet,
    max_join: usize,
) -> Option<(ElementSet, usize)> {
    if max_join < 2 {
        return None;
    }
    for e in f {
        let below = outside & p.strict_down(e);
        if below.len() < 2 {
            continue;
        }
        if let Some(y) = bounded_witness(p.up_rows(), e, p.maximal(below), max_join) {
            return Some((y, e));
        }
    }
    None
}

/// Filter test straight from the definition, without constraint tables.
pub(crate) fn is_filter_direct(p: &Poset, s: ElementSet, max_meet: usize, max_join: usize) -> bool {
    p.is_up_set(s) && meet_escape(p, s, max_meet).is_none() && prime_failure(p, s, p.all() - s, max_join).is_none()
}

enum Branch {
    Done,
    Conflict,
    Split(ElementSet),
}

/// Backtracking search for a filter containing `seed` and avoiding
/// `excluded`. Meet constraints propagate; violated join constraints branch
/// on their undecided joinands in ascending order, excluding the ones
/// already tried.
pub(crate) struct Extender<'a> {
    poset: &'a Poset,
    max_meet: usize,
    max_join: usize,
    meter: Meter,
}

impl<'a> Extender<'a> {
    pub(crate) fn new(poset: &'a Poset, sig: Signature, meter: Meter) -> Self {
        let n = poset.len();
        Extender {
            poset,
            max_meet: sig.alpha.max_subset_size(n),
            max_join: sig.beta.max_subset_size(n),
            meter,
        }
    }

    pub(crate) fn run(&mut self, seed: ElementSet, excluded: ElementSet) -> Result<Option<ElementSet>> {
        let p = self.poset;
        let found = self.search(p.up_closure(seed), p.down_closure(excluded))?;
        debug_assert!(found.is_none_or(|f| is_filter_direct(p, f, self.max_meet, self.max_join)));
        Ok(found)
    }

    fn search(&mut self, f: ElementSet, excluded: ElementSet) -> Result<Option<ElementSet>> {
        self.meter.tick()?;
        let Some(f) = self.meet_close(f, excluded) else {
            return Ok(None);
        };
        match self.branch(f, excluded) {
            Branch::Done => Ok(Some(f)),
            Branch::Conflict => Ok(None),
            Branch::Split(options) => {
                let p = self.poset;
                let mut excl = excluded;
                for y in options {
                    if let Some(found) = self.search(f | p.up(y), excl)? {
                        return Ok(Some(found));
                    }
                    excl |= p.down(y);
                }
                Ok(None)
            }
        }
    }

    fn meet_close(&self, mut f: ElementSet, excluded: ElementSet) -> Option<ElementSet> {
        let p = self.poset;
        if f.intersects(excluded) {
            return None;
        }
        while let Some((_, e)) = meet_escape(p, f, self.max_meet) {
            if excluded.contains(e) {
                return None;
            }
            f |= p.up(e);
            if f.intersects(excluded) {
                return None;
            }
        }
        Some(f)
    }

    fn branch(&self, f: ElementSet, excluded: ElementSet) -> Branch {
        if self.max_join < 2 {
            return Branch::Done;
        }
        let p = self.poset;
        let mut best: Option<ElementSet> = None;
        for e in f {
            let below = p.strict_down(e) - f;
            if below.len() < 2 {
                continue;
            }
            let dead = below & excluded;
            if dead.len() >= 2
                && bounded_witness(p.up_rows(), e, p.maximal(dead), self.max_join).is_some()
            {
                return Branch::Conflict;
            }
            if let Some(y) = bounded_witness(p.up_rows(), e, p.maximal(below), self.max_join) {
                let open = y - excluded;
                if open.is_empty() {
                    return Branch::Conflict;
                }
                if best.is_none_or(|b| open.len() < b.len()) {
                    best = Some(open);
                }
            }
        }
        match best {
            Some(open) => Branch::Split(open),
            None => Branch::Done,
        }
    }
}
