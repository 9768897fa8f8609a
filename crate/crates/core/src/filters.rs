//! `(alpha, beta)`-filters: up-sets closed under existing meets of fewer than
//! `alpha` members and prime for existing joins of fewer than `beta`
//! elements.

use alloc::vec::Vec;

use crate::closure::Extender;
use crate::poset::Constraint;
use crate::{Budget, ElementSet, Meter, Poset, Result, Side, Signature};

/// An element set that passed the filter test at `signature`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Filter {
    pub members: ElementSet,
    pub signature: Signature,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    /// `witness.0 = {s}` is in the set, `witness.1 >= s` is not.
    NotUpClosed,
    /// The antichain lies inside the set, its meet does not.
    MeetEscape,
    /// The join lies inside the set, no joinand does.
    JoinNotPrime,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FilterViolation {
    pub kind: ViolationKind,
    pub witness: (ElementSet, usize),
}

/// Which filters [`enumerate_filters`] reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilterPolicy {
    /// Every up-set that passes the filter test, `∅` and `P` included.
    All,
    /// Ground-set policy for representations: no `∅`, and nothing containing
    /// the bottom element when there is one.
    Canonical,
}

/// Checks the filter conditions via the antichain constraint tables and
/// reports the first violation found (up-closure first, then meets, then
/// joins, each in lexicographic constraint order).
pub fn is_filter(p: &Poset, s: ElementSet, sig: Signature) -> core::result::Result<(), FilterViolation> {
    let sig = sig.canonical(p.len());
    for a in s {
        if let Some(b) = (p.up(a) - s).first() {
            return Err(FilterViolation {
                kind: ViolationKind::NotUpClosed,
                witness: (ElementSet::singleton(a), b),
            });
        }
    }
    for c in p.antichain_constraints(sig.alpha, Side::Meet) {
        if c.antichain.is_subset(s) && !s.contains(c.extremum) {
            return Err(FilterViolation {
                kind: ViolationKind::MeetEscape,
                witness: (c.antichain, c.extremum),
            });
        }
    }
    for c in p.antichain_constraints(sig.beta, Side::Join) {
        if s.contains(c.extremum) && !c.antichain.intersects(s) {
            return Err(FilterViolation {
                kind: ViolationKind::JoinNotPrime,
                witness: (c.antichain, c.extremum),
            });
        }
    }
    Ok(())
}

/// Lists filters by depth-first search over membership decisions, taking
/// elements from the top of a linear extension downwards so that each
/// decision only has to respect already-decided elements.
pub fn enumerate_filters(
    p: &Poset,
    sig: Signature,
    policy: FilterPolicy,
    budget: Budget,
) -> Result<Vec<Filter>> {
    let sig = sig.canonical(p.len());
    let n = p.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (core::cmp::Reverse(p.down(i).len()), i));
    let mut position = alloc::vec![0usize; n];
    for (k, &e) in order.iter().enumerate() {
        position[e] = k;
    }

    let mut meets_at: Vec<Vec<ElementSet>> = alloc::vec![Vec::new(); n];
    for Constraint { antichain, extremum } in p.antichain_constraints(sig.alpha, Side::Meet) {
        meets_at[extremum].push(antichain);
    }
    let mut joins_at: Vec<Vec<Constraint>> = alloc::vec![Vec::new(); n];
    for c in p.antichain_constraints(sig.beta, Side::Join) {
        let last = c.antichain.iter().max_by_key(|&a| position[a]).unwrap_or(0);
        joins_at[last].push(c);
    }

    let mut walk = Walk {
        poset: p,
        order: &order,
        meets_at: &meets_at,
        joins_at: &joins_at,
        meter: Meter::new(budget),
        found: Vec::new(),
    };
    walk.descend(0, ElementSet::EMPTY)?;

    let bottom = p.bottom();
    Ok(walk
        .found
        .into_iter()
        .filter(|f| match policy {
            FilterPolicy::All => true,
            FilterPolicy::Canonical => !f.is_empty() && bottom.is_none_or(|b| !f.contains(b)),
        })
        .map(|members| Filter { members, signature: sig })
        .collect())
}

struct Walk<'a> {
    poset: &'a Poset,
    order: &'a [usize],
    meets_at: &'a [Vec<ElementSet>],
    joins_at: &'a [Vec<Constraint>],
    meter: Meter,
    found: Vec<ElementSet>,
}

impl Walk<'_> {
    fn descend(&mut self, k: usize, f: ElementSet) -> Result<()> {
        self.meter.tick()?;
        if k == self.order.len() {
            self.found.push(f);
            return Ok(());
        }
        let e = self.order[k];
        // Leave e out.
        let meet_ok = self.meets_at[e].iter().all(|a| !a.is_subset(f));
        if meet_ok && self.joins_ok(e, f) {
            self.descend(k + 1, f)?;
        }
        // Put e in: its strict up-set is already decided.
        if self.poset.strict_up(e).is_subset(f) {
            let g = f.with(e);
            if self.joins_ok(e, g) {
                self.descend(k + 1, g)?;
            }
        }
        Ok(())
    }

    fn joins_ok(&self, e: usize, f: ElementSet) -> bool {
        self.joins_at[e]
            .iter()
            .all(|c| !f.contains(c.extremum) || c.antichain.intersects(f))
    }
}

/// The complement of a filter must be a filter of the order dual with the
/// bounds swapped. Always true for valid filters; kept as a runtime check.
pub fn complement_is_ideal(p: &Poset, f: &Filter) -> bool {
    is_filter(&p.dual(), p.all() - f.members, f.signature.swapped()).is_ok()
}

/// Searches for a filter containing `seed` (after up-closing it) and not
/// containing `forbidden`.
pub fn extend_to_filter(
    p: &Poset,
    seed: ElementSet,
    forbidden: Option<usize>,
    sig: Signature,
    budget: Budget,
) -> Result<Option<Filter>> {
    let sig = sig.canonical(p.len());
    let excluded = forbidden.map_or(ElementSet::EMPTY, ElementSet::singleton);
    let mut ext = Extender::new(p, sig, Meter::new(budget));
    Ok(ext.run(seed, excluded)?.map(|members| Filter {
        members,
        signature: sig,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::Arity;

    fn sig33() -> Signature {
        Signature::finite(3, 3).unwrap()
    }

    #[test]
    fn antichain_filters_are_all_up_sets() {
        let p = families::antichain(3);
        let fs = enumerate_filters(&p, sig33(), FilterPolicy::All, Budget::default()).unwrap();
        assert_eq!(fs.len(), 8);
    }

    #[test]
    fn chain_filters() {
        let p = families::chain(3);
        let fs = enumerate_filters(&p, sig33(), FilterPolicy::All, Budget::default()).unwrap();
        assert_eq!(fs.len(), 4);
        let canon = enumerate_filters(&p, sig33(), FilterPolicy::Canonical, Budget::default()).unwrap();
        assert_eq!(canon.len(), 2);
    }

    #[test]
    fn not_up_closed_witness() {
        let p = families::chain(3);
        let v = is_filter(&p, ElementSet::singleton(0), sig33()).unwrap_err();
        assert_eq!(v.kind, ViolationKind::NotUpClosed);
        assert_eq!(v.witness, (ElementSet::singleton(0), 1));
    }

    #[test]
    fn empty_and_everything_pass() {
        let p = families::m3();
        for sig in [sig33(), Signature::complete()] {
            assert!(is_filter(&p, ElementSet::EMPTY, sig).is_ok());
            assert!(is_filter(&p, p.all(), sig).is_ok());
        }
    }

    #[test]
    fn budget_is_enforced() {
        let p = families::antichain(12);
        let err = enumerate_filters(&p, Signature::complete(), FilterPolicy::All, Budget::new(100)).unwrap_err();
        assert!(matches!(err, crate::Error::BudgetExceeded { .. }));
    }

    #[test]
    fn extension_in_vacuous_poset_is_seed() {
        let p = families::antichain(3);
        let f = extend_to_filter(&p, p.up(0), Some(1), sig33(), Budget::default())
            .unwrap()
            .unwrap();
        assert_eq!(f.members, p.up(0));
    }

    #[test]
    fn bound_two_is_vacuous() {
        let p = families::m3();
        let sig = Signature::new(Arity::Finite(2), Arity::Finite(2));
        let fs = enumerate_filters(&p, sig, FilterPolicy::All, Budget::default()).unwrap();
        // every up-set of M3
        assert_eq!(fs.len(), 10);
    }
}
