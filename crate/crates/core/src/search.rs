//! Exhaustive enumeration of small posets up to isomorphism, and
//! counterexample search over predicates.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::conditions::{
    check_d2bar, check_lmd, completely_representable, is_lattice, lattice_profile, ConditionReport,
};
use crate::representation::{decide_representable, DecisionMethod};
use crate::{Arity, Budget, ElementSet, Error, Poset, Result, Signature};

/// Default largest `n` for exhaustive enumeration.
pub const DEFAULT_CAP: usize = 7;
/// Canonical codes are `n * n` bits of one `u128`.
pub const HARD_CAP: usize = 11;

/// Isomorphism invariant code: the strict order matrix, row-major, under the
/// vertex order that minimises it among orders compatible with the refined
/// degree partition.
pub type CanonicalCode = u128;

fn strict_rows(p: &Poset) -> Vec<ElementSet> {
    (0..p.len()).map(|i| p.strict_up(i)).collect()
}

fn code_for(rows: &[ElementSet], order: &[usize]) -> CanonicalCode {
    let n = order.len();
    let mut code = 0u128;
    for (pi, &a) in order.iter().enumerate() {
        for (pj, &b) in order.iter().enumerate() {
            if rows[a].contains(b) {
                code |= 1u128 << (pi * n + pj);
            }
        }
    }
    code
}

/// Iterated colour refinement on (down-degree, up-degree), then on the
/// multisets of neighbour colours below and above.
fn refine(rows: &[ElementSet]) -> Vec<usize> {
    let n = rows.len();
    let below: Vec<ElementSet> = (0..n)
        .map(|i| (0..n).filter(|&j| rows[j].contains(i)).collect())
        .collect();
    let mut colour: Vec<usize>;
    let mut keys: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..n)
        .map(|i| (0, alloc::vec![below[i].len()], alloc::vec![rows[i].len()]))
        .collect();
    let mut classes = 0;
    loop {
        let mut distinct: Vec<&(usize, Vec<usize>, Vec<usize>)> = keys.iter().collect();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = keys
            .iter()
            .map(|k| distinct.binary_search(&k).expect("present"))
            .collect();
        let count = distinct.len();
        colour = next;
        if count == classes || count == n {
            break;
        }
        classes = count;
        keys = (0..n)
            .map(|i| {
                let mut d: Vec<usize> = below[i].iter().map(|j| colour[j]).collect();
                let mut u: Vec<usize> = rows[i].iter().map(|j| colour[j]).collect();
                d.sort_unstable();
                u.sort_unstable();
                (colour[i], d, u)
            })
            .collect();
    }
    colour
}

/// Minimal code over all orders that list colour classes in colour order.
fn canonical_order(rows: &[ElementSet]) -> (CanonicalCode, Vec<usize>) {
    let colour = refine(rows);
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut by_colour: Vec<(usize, usize)> = colour.iter().copied().zip(0..).collect();
    by_colour.sort();
    for (c, i) in by_colour {
        match cells.last_mut() {
            Some(cell) if colour[cell[0]] == c => cell.push(i),
            _ => cells.push(alloc::vec![i]),
        }
    }
    let mut best: Option<(CanonicalCode, Vec<usize>)> = None;
    let mut order = Vec::with_capacity(rows.len());
    permute_cells(rows, &mut cells, 0, &mut order, &mut best);
    best.unwrap_or((0, Vec::new()))
}

fn permute_cells(
    rows: &[ElementSet],
    cells: &mut [Vec<usize>],
    k: usize,
    order: &mut Vec<usize>,
    best: &mut Option<(CanonicalCode, Vec<usize>)>,
) {
    if k == cells.len() {
        let code = code_for(rows, order);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            *best = Some((code, order.clone()));
        }
        return;
    }
    let len = cells[k].len();
    permute_within(rows, cells, k, len, order, best);
}

// Heap-style recursion over the arrangements of cell k.
fn permute_within(
    rows: &[ElementSet],
    cells: &mut [Vec<usize>],
    k: usize,
    remaining: usize,
    order: &mut Vec<usize>,
    best: &mut Option<(CanonicalCode, Vec<usize>)>,
) {
    if remaining == 0 {
        let mark = order.len();
        order.extend(cells[k].iter().copied());
        permute_cells(rows, cells, k + 1, order, best);
        order.truncate(mark);
        return;
    }
    for i in 0..remaining {
        cells[k].swap(i, remaining - 1);
        permute_within(rows, cells, k, remaining - 1, order, best);
        cells[k].swap(i, remaining - 1);
    }
}

/// Canonical code of a poset with at most [`HARD_CAP`] elements.
pub fn canonical_code(p: &Poset) -> Result<CanonicalCode> {
    if p.len() > HARD_CAP {
        return Err(Error::CapExceeded { n: p.len(), cap: HARD_CAP });
    }
    Ok(canonical_order(&strict_rows(p)).0)
}

fn poset_from_code(n: usize, code: CanonicalCode) -> Poset {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if code >> (i * n + j) & 1 == 1 {
                pairs.push((i, j));
            }
        }
    }
    Poset::from_index_pairs((0..n).map(|i| format!("v{i}")).collect(), &pairs).expect("code of a poset")
}

/// One poset per isomorphism class on `n` elements, ordered by canonical
/// code, labelled `v0..` in canonical order.
pub fn enumerate_small_posets(n: usize, cap: usize) -> Result<Vec<Poset>> {
    let cap = cap.min(HARD_CAP);
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let mut seen = BTreeSet::new();
    // Naturally labelled posets: element k picks a down-closed set of
    // earlier elements as its strict down-set.
    let mut strict_down: Vec<ElementSet> = Vec::with_capacity(n);
    grow(n, &mut strict_down, &mut seen);
    Ok(seen.into_iter().map(|code| poset_from_code(n, code)).collect())
}

fn grow(n: usize, strict_down: &mut Vec<ElementSet>, seen: &mut BTreeSet<CanonicalCode>) {
    let k = strict_down.len();
    if k == n {
        let mut rows = alloc::vec![ElementSet::EMPTY; n];
        for (j, d) in strict_down.iter().enumerate() {
            for i in d.iter() {
                rows[i].insert(j);
            }
        }
        seen.insert(canonical_order(&rows).0);
        return;
    }
    for mask in 0u128..(1u128 << k) {
        let d = ElementSet::from_bits(mask);
        if d.iter().all(|i| strict_down[i].is_subset(d)) {
            strict_down.push(d);
            grow(n, strict_down, seen);
            strict_down.pop();
        }
    }
}

/// A named test over posets, combinable with `not`, `and`, `or`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Predicate {
    Representable(Signature),
    Lmd,
    D2Bar,
    IsLattice,
    IsDistributive,
    CompletelyRepresentable,
    Not(Box<Predicate>),
    And(Vec<Predicate>),
    Or(Vec<Predicate>),
}

/// What was computed while evaluating a predicate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evidence {
    Condition(ConditionReport),
    Separation {
        signature: Signature,
        verdict: bool,
        failing_pairs: Vec<(usize, usize)>,
    },
    Lattice {
        is_lattice: bool,
        distributive: Option<bool>,
    },
    Complete {
        verdict: bool,
    },
}

impl Predicate {
    pub fn evaluate(&self, p: &Poset, budget: Budget) -> Result<bool> {
        let mut sink = Vec::new();
        self.eval(p, budget, &mut sink)
    }

    /// Evaluates and records the reports behind each atom.
    pub fn evaluate_with_evidence(&self, p: &Poset, budget: Budget) -> Result<(bool, Vec<Evidence>)> {
        let mut ev = Vec::new();
        let v = self.eval(p, budget, &mut ev)?;
        Ok((v, ev))
    }

    fn eval(&self, p: &Poset, budget: Budget, ev: &mut Vec<Evidence>) -> Result<bool> {
        Ok(match self {
            Predicate::Representable(sig) => {
                let r = decide_representable(p, *sig, DecisionMethod::PerPair, budget)?;
                ev.push(Evidence::Separation {
                    signature: r.signature,
                    verdict: r.verdict,
                    failing_pairs: r.failing_pairs().collect(),
                });
                r.verdict
            }
            Predicate::Lmd => {
                let r = check_lmd(p);
                ev.push(Evidence::Condition(r));
                r.holds
            }
            Predicate::D2Bar => {
                let r = check_d2bar(p);
                ev.push(Evidence::Condition(r));
                r.holds
            }
            Predicate::IsLattice => {
                let v = is_lattice(p);
                ev.push(Evidence::Lattice {
                    is_lattice: v,
                    distributive: None,
                });
                v
            }
            Predicate::IsDistributive => {
                let prof = lattice_profile(p);
                let d = prof.lattice.as_ref().map(|f| f.is_distributive);
                ev.push(Evidence::Lattice {
                    is_lattice: prof.is_lattice,
                    distributive: d,
                });
                d.unwrap_or(false)
            }
            Predicate::CompletelyRepresentable => {
                let v = completely_representable(p, budget)?.verdict;
                ev.push(Evidence::Complete { verdict: v });
                v
            }
            Predicate::Not(inner) => !inner.eval(p, budget, ev)?,
            Predicate::And(ps) => {
                for q in ps {
                    if !q.eval(p, budget, ev)? {
                        return Ok(false);
                    }
                }
                true
            }
            Predicate::Or(ps) => {
                for q in ps {
                    if q.eval(p, budget, ev)? {
                        return Ok(true);
                    }
                }
                false
            }
        })
    }

    /// Parses `lmd`, `d2bar`, `lattice`, `distributive`, `complete`,
    /// `representable(a,b)` (also `rep(a,b)`), `not(..)` / `!..`,
    /// `and(..,..)`, `or(..,..)`.
    pub fn parse(text: &str) -> Result<Predicate> {
        let mut parser = Parser { src: text, pos: 0 };
        let p = parser.expr()?;
        parser.skip_ws();
        if parser.pos != text.len() {
            return Err(Error::PredicateSyntax(text.to_string()));
        }
        Ok(p)
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, name: &str, ps: &[Predicate]| {
            write!(f, "{name}(")?;
            for (i, p) in ps.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")
        };
        match self {
            Predicate::Representable(s) => write!(f, "representable({},{})", s.alpha, s.beta),
            Predicate::Lmd => f.write_str("lmd"),
            Predicate::D2Bar => f.write_str("d2bar"),
            Predicate::IsLattice => f.write_str("lattice"),
            Predicate::IsDistributive => f.write_str("distributive"),
            Predicate::CompletelyRepresentable => f.write_str("complete"),
            Predicate::Not(p) => write!(f, "not({p})"),
            Predicate::And(ps) => list(f, "and", ps),
            Predicate::Or(ps) => list(f, "or", ps),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn err(&self) -> Error {
        Error::PredicateSyntax(self.src.to_string())
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn word(&mut self) -> String {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .find(|c: char| !(c.is_alphanumeric() || c == '_' || c == 'ω'))
            .unwrap_or(rest.len());
        self.pos += len;
        rest[..len].to_ascii_lowercase()
    }

    fn args(&mut self) -> Result<Vec<Predicate>> {
        if !self.eat("(") {
            return Err(self.err());
        }
        let mut out = alloc::vec![self.expr()?];
        while self.eat(",") {
            out.push(self.expr()?);
        }
        if !self.eat(")") {
            return Err(self.err());
        }
        Ok(out)
    }

    fn expr(&mut self) -> Result<Predicate> {
        if self.eat("!") {
            return Ok(Predicate::Not(Box::new(self.expr()?)));
        }
        let w = self.word();
        Ok(match w.as_str() {
            "lmd" => Predicate::Lmd,
            "d2bar" => Predicate::D2Bar,
            "lattice" | "is_lattice" => Predicate::IsLattice,
            "distributive" | "is_distributive" => Predicate::IsDistributive,
            "complete" | "completely_representable" => Predicate::CompletelyRepresentable,
            "not" => {
                let mut a = self.args()?;
                if a.len() != 1 {
                    return Err(self.err());
                }
                Predicate::Not(Box::new(a.remove(0)))
            }
            "and" => Predicate::And(self.args()?),
            "or" => Predicate::Or(self.args()?),
            "representable" | "rep" => {
                if !self.eat("(") {
                    return Err(self.err());
                }
                let a: Arity = self.word().parse()?;
                if !self.eat(",") {
                    return Err(self.err());
                }
                let b: Arity = self.word().parse()?;
                if !self.eat(")") {
                    return Err(self.err());
                }
                Predicate::Representable(Signature::new(a, b))
            }
            _ => return Err(self.err()),
        })
    }
}

/// A poset on which `holds` is true and `fails` is false.
#[derive(Debug, Clone)]
pub struct Finding {
    pub poset: Poset,
    /// Posets evaluated up to and including this one.
    pub evaluated: u64,
    pub holds_evidence: Vec<Evidence>,
    pub fails_evidence: Vec<Evidence>,
}

/// Scans posets by size, then canonical code, for the first one satisfying
/// `holds` and not `fails`. `None` means no such poset with at most `max_n`
/// elements. `budget` caps the number of posets evaluated.
pub fn find_counterexample(
    holds: &Predicate,
    fails: &Predicate,
    max_n: usize,
    cap: usize,
    budget: u64,
) -> Result<Option<Finding>> {
    let mut evaluated = 0u64;
    let inner = Budget::default();
    for n in 1..=max_n {
        for poset in enumerate_small_posets(n, cap)? {
            if evaluated == budget {
                return Err(Error::SearchBudgetExceeded { n, evaluated });
            }
            evaluated += 1;
            let (h, holds_evidence) = holds.evaluate_with_evidence(&poset, inner)?;
            if !h {
                continue;
            }
            let (f, fails_evidence) = fails.evaluate_with_evidence(&poset, inner)?;
            if !f {
                return Ok(Some(Finding {
                    poset,
                    evaluated,
                    holds_evidence,
                    fails_evidence,
                }));
            }
        }
    }
    Ok(None)
}

/// Shipped probes: `(holds, fails, max_n)`.
pub fn preset(name: &str) -> Option<(Predicate, Predicate, usize)> {
    let rep = |a, b| Predicate::Representable(Signature::new(a, b));
    match name {
        "d2bar-not-rep3" => Some((Predicate::D2Bar, rep(Arity::Finite(3), Arity::Finite(3)), 7)),
        "lmd-sufficiency" => Some((Predicate::Lmd, rep(Arity::All, Arity::Finite(3)), 6)),
        "rep3-not-rep4" => Some((
            rep(Arity::Finite(3), Arity::Finite(3)),
            rep(Arity::Finite(4), Arity::Finite(4)),
            6,
        )),
        _ => None,
    }
}

pub const PRESETS: [&str; 3] = ["d2bar-not-rep3", "lmd-sufficiency", "rep3-not-rep4"];
