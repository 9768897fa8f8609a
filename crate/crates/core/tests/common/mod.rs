//! Brute-force reference implementations used to cross-check the library.
#![allow(dead_code)]

use posetrep_core::{ElementSet, Poset, Signature};

pub fn subsets(s: ElementSet) -> impl Iterator<Item = ElementSet> {
    let items: Vec<usize> = s.iter().collect();
    (0u32..1 << items.len()).map(move |mask| {
        items
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &i)| i)
            .collect()
    })
}

/// Greatest lower bound of a nonempty subset, from `le` alone.
pub fn glb(p: &Poset, s: ElementSet) -> Option<usize> {
    let lower: Vec<usize> = (0..p.len()).filter(|&x| s.iter().all(|y| p.le(x, y))).collect();
    lower.iter().copied().find(|&g| lower.iter().all(|&x| p.le(x, g)))
}

pub fn lub(p: &Poset, s: ElementSet) -> Option<usize> {
    let upper: Vec<usize> = (0..p.len()).filter(|&x| s.iter().all(|y| p.le(y, x))).collect();
    upper.iter().copied().find(|&g| upper.iter().all(|&x| p.le(g, x)))
}

/// The definition checked over every nonempty subset.
pub fn is_filter_brute(p: &Poset, f: ElementSet, sig: Signature) -> bool {
    let n = p.len();
    let max_meet = sig.alpha.max_subset_size(n);
    let max_join = sig.beta.max_subset_size(n);
    for a in 0..n {
        for b in 0..n {
            if f.contains(a) && p.le(a, b) && !f.contains(b) {
                return false;
            }
        }
    }
    for x in subsets(ElementSet::full(n)) {
        if x.is_empty() {
            continue;
        }
        if x.len() <= max_meet && x.is_subset(f) {
            if let Some(m) = glb(p, x) {
                if !f.contains(m) {
                    return false;
                }
            }
        }
        if x.len() <= max_join && !x.intersects(f) {
            if let Some(j) = lub(p, x) {
                if f.contains(j) {
                    return false;
                }
            }
        }
    }
    true
}

pub fn all_filters_brute(p: &Poset, sig: Signature) -> Vec<ElementSet> {
    subsets(ElementSet::full(p.len()))
        .filter(|&f| is_filter_brute(p, f, sig))
        .collect()
}

/// Every `p` not below `q` is split by some filter containing `p` and not `q`.
pub fn representable_brute(p: &Poset, sig: Signature) -> bool {
    let filters = all_filters_brute(p, sig);
    (0..p.len()).all(|a| {
        (0..p.len()).all(|b| p.le(a, b) || filters.iter().any(|f| f.contains(a) && !f.contains(b)))
    })
}

/// Partial orders on `n` labelled points, from all relations.
pub fn labelled_posets(n: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let rel: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let has = |a: usize, b: usize| rel.contains(&(a, b));
        let antisymmetric = rel.iter().all(|&(a, b)| !has(b, a));
        let transitive = rel
            .iter()
            .all(|&(a, b)| rel.iter().all(|&(c, d)| c != b || a == d || has(a, d)));
        if antisymmetric && transitive {
            out.push(rel);
        }
    }
    out
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for perm in permutations(n - 1) {
        for pos in 0..n {
            let mut p = perm.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}

/// Isomorphism classes counted by minimising the relation over all
/// relabellings.
pub fn count_classes_brute(n: usize) -> usize {
    let perms = permutations(n);
    let mut seen = std::collections::BTreeSet::new();
    for rel in labelled_posets(n) {
        let key = perms
            .iter()
            .map(|perm| {
                let mut r: Vec<(usize, usize)> = rel.iter().map(|&(a, b)| (perm[a], perm[b])).collect();
                r.sort();
                r
            })
            .min()
            .unwrap();
        seen.insert(key);
    }
    seen.len()
}

pub fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("e{i}")).collect()
}

pub fn d2bar_brute(p: &Poset) -> bool {
    let pair = |a: usize, b: usize| ElementSet::singleton(a).with(b);
    let n = p.len();
    (0..n).all(|x| {
        (0..n).all(|y| {
            (0..n).all(|z| {
                let lhs = lub(p, pair(y, z)).and_then(|j| glb(p, pair(x, j)));
                let rhs = match (glb(p, pair(x, y)), glb(p, pair(x, z))) {
                    (Some(a), Some(b)) => lub(p, pair(a, b)),
                    _ => None,
                };
                lhs.is_none() || rhs.is_none() || lhs == rhs
            })
        })
    })
}
