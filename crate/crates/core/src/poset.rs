//! Finite posets over dense element indices.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::{Arity, ElementSet, Error, Result, MAX_ELEMENTS};

/// How the pairs handed to [`Poset::build`] are read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuildMode {
    /// Pairs are covering (Hasse) edges `a < b`.
    Covers,
    /// Pairs are order facts `a <= b`; missing reflexive/transitive pairs are
    /// filled in.
    Order,
}

/// Direction for bounds and extrema. `Meet` means lower bounds / greatest
/// lower bound, `Join` means upper bounds / least upper bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Meet,
    Join,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Meet => Side::Join,
            Side::Join => Side::Meet,
        }
    }
}

/// An antichain together with its existing meet or join.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Constraint {
    pub antichain: ElementSet,
    pub extremum: usize,
}

/// A finite partial order. Immutable once built.
///
/// `up[i]` and `down[i]` are the principal up-set and down-set of `i`
/// (both contain `i`), which together are the full order matrix.
#[derive(Debug, Clone)]
pub struct Poset {
    labels: Vec<String>,
    index: BTreeMap<String, usize>,
    up: Vec<ElementSet>,
    down: Vec<ElementSet>,
    upper_covers: Vec<ElementSet>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Poset) -> bool {
        self.labels == other.labels && self.up == other.up
    }
}

impl Eq for Poset {}

impl Poset {
    /// Builds a poset from labels and label pairs.
    pub fn build<L, A, B>(labels: &[L], pairs: &[(A, B)], mode: BuildMode) -> Result<Poset>
    where
        L: AsRef<str>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let labels: Vec<String> = labels.iter().map(|l| l.as_ref().to_string()).collect();
        let index = index_labels(&labels)?;
        let mut edges = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            let ia = *index
                .get(a.as_ref())
                .ok_or_else(|| Error::UnknownLabel(a.as_ref().to_string()))?;
            let ib = *index
                .get(b.as_ref())
                .ok_or_else(|| Error::UnknownLabel(b.as_ref().to_string()))?;
            edges.push((ia, ib));
        }
        // Both modes close reflexively and transitively; they differ only in
        // how callers describe their input.
        let _ = mode;
        Poset::close(labels, index, &edges)
    }

    /// Builds a poset from labels and index pairs `a <= b`, closing the
    /// relation.
    pub fn from_index_pairs(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Poset> {
        let index = index_labels(&labels)?;
        for &(a, b) in pairs {
            if a >= labels.len() {
                return Err(Error::UnknownElement(a));
            }
            if b >= labels.len() {
                return Err(Error::UnknownElement(b));
            }
        }
        Poset::close(labels, index, pairs)
    }

    fn close(
        labels: Vec<String>,
        index: BTreeMap<String, usize>,
        pairs: &[(usize, usize)],
    ) -> Result<Poset> {
        let n = labels.len();
        let mut up: Vec<ElementSet> = (0..n).map(ElementSet::singleton).collect();
        for &(a, b) in pairs {
            up[a].insert(b);
        }
        // Warshall on bit rows.
        for k in 0..n {
            let row_k = up[k];
            for row in up.iter_mut() {
                if row.contains(k) {
                    *row |= row_k;
                }
            }
        }
        for i in 0..n {
            for j in up[i].without(i) {
                if up[j].contains(i) {
                    let (a, b) = if i < j { (i, j) } else { (j, i) };
                    return Err(Error::CycleDetected(labels[a].clone(), labels[b].clone()));
                }
            }
        }
        Ok(Poset::from_parts(labels, index, up))
    }

    fn from_parts(labels: Vec<String>, index: BTreeMap<String, usize>, up: Vec<ElementSet>) -> Poset {
        let n = labels.len();
        let mut down = alloc::vec![ElementSet::EMPTY; n];
        for (i, row) in up.iter().enumerate() {
            for j in row.iter() {
                down[j].insert(i);
            }
        }
        let upper_covers = (0..n)
            .map(|i| {
                let strict = up[i].without(i);
                let mut reach_twice = ElementSet::EMPTY;
                for j in strict {
                    reach_twice |= up[j].without(j);
                }
                strict - reach_twice
            })
            .collect();
        Poset {
            labels,
            index,
            up,
            down,
            upper_covers,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Resolves labels to an element set.
    pub fn set_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<ElementSet> {
        labels
            .iter()
            .map(|l| {
                self.index_of(l.as_ref())
                    .ok_or_else(|| Error::UnknownLabel(l.as_ref().to_string()))
            })
            .collect()
    }

    pub fn labels_of(&self, set: ElementSet) -> Vec<&str> {
        set.iter().map(|i| self.label(i)).collect()
    }

    pub fn all(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.le(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.le(a, b) || self.le(b, a)
    }

    pub fn up(&self, i: usize) -> ElementSet {
        self.up[i]
    }

    pub fn down(&self, i: usize) -> ElementSet {
        self.down[i]
    }

    pub fn strict_up(&self, i: usize) -> ElementSet {
        self.up[i].without(i)
    }

    pub fn strict_down(&self, i: usize) -> ElementSet {
        self.down[i].without(i)
    }

    pub(crate) fn up_rows(&self) -> &[ElementSet] {
        &self.up
    }

    pub(crate) fn down_rows(&self) -> &[ElementSet] {
        &self.down
    }

    /// Principal bound set of `i` on the given side: down-set for `Meet`,
    /// up-set for `Join`.
    pub fn principal(&self, i: usize, side: Side) -> ElementSet {
        match side {
            Side::Meet => self.down[i],
            Side::Join => self.up[i],
        }
    }

    pub fn upper_covers(&self, i: usize) -> ElementSet {
        self.upper_covers[i]
    }

    pub fn lower_covers(&self, i: usize) -> ElementSet {
        (0..self.len())
            .filter(|&j| self.upper_covers[j].contains(i))
            .collect()
    }

    /// Covering pairs `(a, b)` with `a` covered by `b`, ordered by `a` then `b`.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|a| self.upper_covers[a].iter().map(move |b| (a, b)))
            .collect()
    }

    /// All pairs `(a, b)` with `a <= b`, reflexive ones included.
    pub fn order_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|a| self.up[a].iter().map(move |b| (a, b)))
            .collect()
    }

    /// The order dual: same elements, order reversed.
    pub fn dual(&self) -> Poset {
        Poset::from_parts(self.labels.clone(), self.index.clone(), self.down.clone())
    }

    /// Same order, different labels.
    pub fn relabel(&self, labels: Vec<String>) -> Result<Poset> {
        if labels.len() != self.len() {
            return Err(Error::InvalidParameter(alloc::format!(
                "expected {} labels, got {}",
                self.len(),
                labels.len()
            )));
        }
        let index = index_labels(&labels)?;
        Ok(Poset::from_parts(labels, index, self.up.clone()))
    }

    pub fn top(&self) -> Option<usize> {
        let all = self.all();
        (0..self.len()).find(|&i| self.down[i] == all)
    }

    pub fn bottom(&self) -> Option<usize> {
        let all = self.all();
        (0..self.len()).find(|&i| self.up[i] == all)
    }

    pub fn minimal(&self, s: ElementSet) -> ElementSet {
        s.iter()
            .filter(|&i| !self.strict_down(i).intersects(s))
            .collect()
    }

    pub fn maximal(&self, s: ElementSet) -> ElementSet {
        s.iter()
            .filter(|&i| !self.strict_up(i).intersects(s))
            .collect()
    }

    pub fn is_antichain(&self, s: ElementSet) -> bool {
        s.iter().all(|i| !self.strict_up(i).intersects(s))
    }

    pub fn is_up_set(&self, s: ElementSet) -> bool {
        s.iter().all(|i| self.up[i].is_subset(s))
    }

    pub fn is_down_set(&self, s: ElementSet) -> bool {
        s.iter().all(|i| self.down[i].is_subset(s))
    }

    pub fn up_closure(&self, s: ElementSet) -> ElementSet {
        s.iter().fold(ElementSet::EMPTY, |acc, i| acc | self.up[i])
    }

    pub fn down_closure(&self, s: ElementSet) -> ElementSet {
        s.iter().fold(ElementSet::EMPTY, |acc, i| acc | self.down[i])
    }

    /// Common lower bounds (`Meet`) or upper bounds (`Join`) of a nonempty set.
    pub fn bound_set(&self, s: ElementSet, side: Side) -> Result<ElementSet> {
        if s.is_empty() {
            return Err(Error::EmptySubset);
        }
        Ok(s.iter()
            .fold(self.all(), |acc, i| acc & self.principal(i, side)))
    }

    /// Greatest lower bound (`Meet`) or least upper bound (`Join`) of a
    /// nonempty set, if it exists.
    pub fn extremum(&self, s: ElementSet, side: Side) -> Result<Option<usize>> {
        let bounds = self.bound_set(s, side)?;
        Ok(self.best_of(bounds, side))
    }

    /// The element of `bounds` that all others lie beyond: maximum for lower
    /// bounds, minimum for upper bounds.
    pub(crate) fn best_of(&self, bounds: ElementSet, side: Side) -> Option<usize> {
        bounds
            .iter()
            .find(|&m| bounds.is_subset(self.principal(m, side)))
    }

    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        self.best_of(self.down[a] & self.down[b], Side::Meet)
    }

    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        self.best_of(self.up[a] & self.up[b], Side::Join)
    }

    /// Every antichain `A` with `2 <= |A| < bound` whose meet (or join)
    /// exists, paired with that extremum, in lexicographic order of `A`.
    ///
    /// Meets of arbitrary subsets reduce to meets of their minimal elements
    /// (and joins to maximal elements), so these constraints carry the same
    /// information as the ones over all subsets.
    pub fn antichain_constraints(&self, bound: Arity, side: Side) -> Vec<Constraint> {
        let max_size = bound.max_subset_size(self.len());
        let mut out = Vec::new();
        if max_size < 2 {
            return out;
        }
        for first in 0..self.len() {
            let allowed = self.incomparable(first) & above_index(first);
            self.constraint_dfs(
                ElementSet::singleton(first),
                self.principal(first, side),
                allowed,
                max_size,
                side,
                &mut out,
            );
        }
        out
    }

    fn constraint_dfs(
        &self,
        set: ElementSet,
        bounds: ElementSet,
        allowed: ElementSet,
        max_size: usize,
        side: Side,
        out: &mut Vec<Constraint>,
    ) {
        if set.len() >= 2 {
            if let Some(e) = self.best_of(bounds, side) {
                out.push(Constraint {
                    antichain: set,
                    extremum: e,
                });
            }
        }
        if set.len() == max_size {
            return;
        }
        for next in allowed {
            let b = bounds & self.principal(next, side);
            // No common bound now means none for any superset either.
            if b.is_empty() {
                continue;
            }
            self.constraint_dfs(
                set.with(next),
                b,
                allowed & self.incomparable(next) & above_index(next),
                max_size,
                side,
                out,
            );
        }
    }

    pub fn incomparable(&self, i: usize) -> ElementSet {
        self.all() - (self.up[i] | self.down[i])
    }
}

fn above_index(i: usize) -> ElementSet {
    !ElementSet::full(i + 1)
}

fn index_labels(labels: &[String]) -> Result<BTreeMap<String, usize>> {
    if labels.len() > MAX_ELEMENTS {
        return Err(Error::TooLarge(labels.len()));
    }
    let mut index = BTreeMap::new();
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.clone(), i).is_some() {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(index)
}
