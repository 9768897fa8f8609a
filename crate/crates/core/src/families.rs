//! Deterministic generators for reference posets.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conditions::{check_d2bar, check_lmd, completely_representable};
use crate::filters::extend_to_filter;
use crate::representation::{decide_representable, DecisionMethod, PointSet, Representation};
use crate::{Arity, Budget, BuildMode, Error, Poset, Result, Signature};

/// A named family with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    /// `(n-1)`- but not `n`-representable; `n >= 4`.
    Pn(usize),
    /// Five elements, representable, not LMD.
    Express,
    /// Seven elements, satisfies D̄2, not `(3,3)`-representable.
    D2Poset,
    /// Ten subsets of `{y, x1, .., x4}` ordered by inclusion.
    PrimeIdeal,
    Boolean(usize),
    Chain(usize),
    Antichain(usize),
    M3,
    N5,
    /// `n` elements; each pair `i < j` of a fixed linear extension becomes an
    /// order edge with probability `prob`.
    Random { n: usize, prob: f64, seed: u64 },
}

impl Family {
    pub const NAMES: [&'static str; 10] = [
        "pn",
        "express",
        "d2poset",
        "prime_ideal",
        "boolean",
        "chain",
        "antichain",
        "m3",
        "n5",
        "random",
    ];

    /// Resolves a family from its name and optional parameters.
    pub fn from_parts(name: &str, n: Option<usize>, prob: Option<f64>, seed: Option<u64>) -> Result<Family> {
        let need_n = || n.ok_or_else(|| Error::InvalidParameter(format!("family `{name}` needs n")));
        Ok(match name {
            "pn" => Family::Pn(need_n()?),
            "express" => Family::Express,
            "d2poset" => Family::D2Poset,
            "prime_ideal" => Family::PrimeIdeal,
            "boolean" => Family::Boolean(need_n()?),
            "chain" => Family::Chain(need_n()?),
            "antichain" => Family::Antichain(need_n()?),
            "m3" => Family::M3,
            "n5" => Family::N5,
            "random" => Family::Random {
                n: need_n()?,
                prob: prob.unwrap_or(0.5),
                seed: seed.unwrap_or(0),
            },
            other => return Err(Error::UnknownFamily(other.to_string())),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Pn(_) => "pn",
            Family::Express => "express",
            Family::D2Poset => "d2poset",
            Family::PrimeIdeal => "prime_ideal",
            Family::Boolean(_) => "boolean",
            Family::Chain(_) => "chain",
            Family::Antichain(_) => "antichain",
            Family::M3 => "m3",
            Family::N5 => "n5",
            Family::Random { .. } => "random",
        }
    }
}

pub fn generate(family: Family) -> Result<Poset> {
    match family {
        Family::Pn(n) => pn(n),
        Family::Express => Ok(express()),
        Family::D2Poset => Ok(d2poset()),
        Family::PrimeIdeal => Ok(prime_ideal()),
        Family::Boolean(n) => {
            if n > 7 {
                return Err(Error::InvalidParameter(format!("boolean({n}) exceeds 128 elements")));
            }
            Ok(boolean(n))
        }
        Family::Chain(n) | Family::Antichain(n) if n > crate::MAX_ELEMENTS => Err(Error::TooLarge(n)),
        Family::Chain(n) => Ok(chain(n)),
        Family::Antichain(n) => Ok(antichain(n)),
        Family::M3 => Ok(m3()),
        Family::N5 => Ok(n5()),
        Family::Random { n, prob, seed } => random(n, prob, seed),
    }
}

/// `X = {x1..xn}`, one `y_s` per `(n-2)`-subset `s` of `X`, and `p`, `q`,
/// with `q < x < p` for all `x` and `x < y_s` iff `x ∈ s`.
pub fn pn(n: usize) -> Result<Poset> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!("pn needs n >= 4, got {n}")));
    }
    let subsets: Vec<Vec<usize>> = combinations(n, n - 2);
    let total = n + subsets.len() + 2;
    if total > crate::MAX_ELEMENTS {
        return Err(Error::TooLarge(total));
    }
    let mut labels: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    for s in &subsets {
        let members: Vec<String> = s.iter().map(|i| (i + 1).to_string()).collect();
        labels.push(format!("y{{{}}}", members.join(",")));
    }
    let p = labels.len();
    labels.push("p".into());
    let q = labels.len();
    labels.push("q".into());
    let mut pairs = Vec::new();
    for x in 0..n {
        pairs.push((q, x));
        pairs.push((x, p));
    }
    for (k, s) in subsets.iter().enumerate() {
        for &x in s {
            pairs.push((x, n + k));
        }
    }
    Poset::from_index_pairs(labels, &pairs)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// `p`, `q`, `r`, `join_qr = q ∨ r`, `meet_p_qr = p ∧ join_qr`.
pub fn express() -> Poset {
    Poset::build(
        &["p", "q", "r", "join_qr", "meet_p_qr"],
        &[
            ("meet_p_qr", "p"),
            ("meet_p_qr", "join_qr"),
            ("q", "join_qr"),
            ("r", "join_qr"),
        ],
        BuildMode::Covers,
    )
    .expect("fixture")
}

/// The four-point representation generated by `{a,c,d}`, `{b,d}`, `{b,c}`.
pub fn express_representation() -> Representation {
    let img = |pts: &[usize]| -> PointSet { pts.iter().copied().collect() };
    Representation {
        ground: ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect(),
        map: alloc::vec![img(&[0, 2, 3]), img(&[1, 3]), img(&[1, 2]), img(&[1, 2, 3]), img(&[2, 3])],
        signature: Signature::complete(),
    }
}

pub fn d2poset() -> Poset {
    Poset::build(
        &["top", "a", "p", "b", "q", "bot1", "bot2"],
        &[
            ("bot1", "a"),
            ("bot1", "p"),
            ("bot1", "q"),
            ("bot2", "b"),
            ("bot2", "p"),
            ("bot2", "q"),
            ("a", "top"),
            ("p", "top"),
            ("b", "top"),
        ],
        BuildMode::Covers,
    )
    .expect("fixture")
}

const PRIME_IDEAL_GROUND: [&str; 5] = ["y", "x1", "x2", "x3", "x4"];

/// Members of each set, as indices into `PRIME_IDEAL_GROUND`.
const PRIME_IDEAL_SETS: [&[usize]; 10] = [
    &[1],
    &[2],
    &[3],
    &[4],
    &[1, 4],
    &[0, 1],
    &[1, 2],
    &[2, 3],
    &[3, 4],
    &[4, 0],
];

fn prime_ideal_label(members: &[usize]) -> String {
    let names: Vec<&str> = members.iter().map(|&i| PRIME_IDEAL_GROUND[i]).collect();
    format!("{{{}}}", names.join(","))
}

pub fn prime_ideal() -> Poset {
    let labels: Vec<String> = PRIME_IDEAL_SETS.iter().map(|s| prime_ideal_label(s)).collect();
    let mut pairs = Vec::new();
    for (i, a) in PRIME_IDEAL_SETS.iter().enumerate() {
        for (j, b) in PRIME_IDEAL_SETS.iter().enumerate() {
            if i != j && a.iter().all(|x| b.contains(x)) {
                pairs.push((i, j));
            }
        }
    }
    Poset::from_index_pairs(labels, &pairs).expect("fixture")
}

/// Each set mapped to itself over `{y, x1, .., x4}`.
pub fn prime_ideal_identity() -> Representation {
    Representation {
        ground: PRIME_IDEAL_GROUND.iter().map(|s| s.to_string()).collect(),
        map: PRIME_IDEAL_SETS.iter().map(|s| s.iter().copied().collect()).collect(),
        signature: Signature::complete(),
    }
}

/// The up-closed, binary-meet-closed set `{{y,x1}, {x2,x3}, {x4,y}}` and the
/// element every filter extending it is forced to contain.
pub fn prime_ideal_gamma() -> ([&'static str; 3], &'static str) {
    (["{y,x1}", "{x2,x3}", "{x4,y}"], "{x1,x4}")
}

/// Subsets of `{1..n}` by inclusion, labelled `{}`, `{1}`, `{1,2}`, ..,
/// in order of their bitmask.
pub fn boolean(n: usize) -> Poset {
    let size = 1usize << n;
    let labels: Vec<String> = (0..size)
        .map(|m| {
            let members: Vec<String> = (0..n).filter(|b| m >> b & 1 == 1).map(|b| (b + 1).to_string()).collect();
            format!("{{{}}}", members.join(","))
        })
        .collect();
    let mut pairs = Vec::new();
    for m in 0..size {
        for b in 0..n {
            if m >> b & 1 == 0 {
                pairs.push((m, m | 1 << b));
            }
        }
    }
    Poset::from_index_pairs(labels, &pairs).expect("boolean lattice")
}

/// `c0 < c1 < .. < c(n-1)`.
pub fn chain(n: usize) -> Poset {
    let labels = (0..n).map(|i| format!("c{i}")).collect();
    let pairs: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    Poset::from_index_pairs(labels, &pairs).expect("chain")
}

/// `a0, .., a(n-1)`, pairwise incomparable.
pub fn antichain(n: usize) -> Poset {
    Poset::from_index_pairs((0..n).map(|i| format!("a{i}")).collect(), &[]).expect("antichain")
}

/// The diamond: `bot < a, b, c < top`.
pub fn m3() -> Poset {
    Poset::build(
        &["bot", "a", "b", "c", "top"],
        &[("bot", "a"), ("bot", "b"), ("bot", "c"), ("a", "top"), ("b", "top"), ("c", "top")],
        BuildMode::Covers,
    )
    .expect("fixture")
}

/// The pentagon: `bot < a < b < top`, `bot < c < top`.
pub fn n5() -> Poset {
    Poset::build(
        &["bot", "a", "b", "c", "top"],
        &[("bot", "a"), ("a", "b"), ("b", "top"), ("bot", "c"), ("c", "top")],
        BuildMode::Covers,
    )
    .expect("fixture")
}

/// Random poset labelled `v0..`; `vi < vj` can only hold for `i < j`.
pub fn random(n: usize, prob: f64, seed: u64) -> Result<Poset> {
    if !(0.0..=1.0).contains(&prob) {
        return Err(Error::InvalidParameter(format!("probability {prob} not in [0, 1]")));
    }
    if n > crate::MAX_ELEMENTS {
        return Err(Error::TooLarge(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(prob) {
                pairs.push((i, j));
            }
        }
    }
    Poset::from_index_pairs((0..n).map(|i| format!("v{i}")).collect(), &pairs)
}

/// A checkable statement about a fixture.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Claim {
    Lmd(bool),
    D2Bar(bool),
    Representable { signature: Signature, expected: bool },
    CompletelyRepresentable(bool),
    /// No filter at `(3,3)` contains `seed` and avoids `forbidden`.
    ExtensionFails { seed: Vec<String>, forbidden: String },
}

/// The facts each named fixture is known to satisfy.
pub fn fixture_expectations(family: Family) -> Result<Vec<Claim>> {
    let rep = |a: Arity, b: Arity, expected: bool| Claim::Representable {
        signature: Signature::new(a, b),
        expected,
    };
    Ok(match family {
        Family::Express => alloc::vec![Claim::Lmd(false), rep(Arity::All, Arity::All, true)],
        Family::Pn(n) => {
            let size = pn(n)?.len();
            let mut claims: Vec<Claim> = (3..n)
                .map(|m| rep(Arity::Finite(m), Arity::Finite(m), true))
                .collect();
            claims.push(rep(Arity::Finite(n), Arity::Finite(n), false));
            for a in Arity::ladder(size).skip(1) {
                claims.push(rep(a, Arity::Finite(n), false));
            }
            claims.push(rep(Arity::All, Arity::Finite(n - 1), true));
            claims
        }
        Family::D2Poset => alloc::vec![
            Claim::D2Bar(true),
            rep(Arity::Finite(3), Arity::Finite(3), false)
        ],
        Family::PrimeIdeal => {
            let (gamma, forbidden) = prime_ideal_gamma();
            alloc::vec![
                Claim::CompletelyRepresentable(true),
                Claim::ExtensionFails {
                    seed: gamma.iter().map(|s| s.to_string()).collect(),
                    forbidden: forbidden.to_string(),
                }
            ]
        }
        other => return Err(Error::UnknownFamily(other.name().to_string())),
    })
}

/// Whether `p` satisfies the claim.
pub fn check_claim(p: &Poset, claim: &Claim, budget: Budget) -> Result<bool> {
    Ok(match claim {
        Claim::Lmd(v) => check_lmd(p).holds == *v,
        Claim::D2Bar(v) => check_d2bar(p).holds == *v,
        Claim::Representable { signature, expected } => {
            decide_representable(p, *signature, DecisionMethod::PerPair, budget)?.verdict == *expected
        }
        Claim::CompletelyRepresentable(v) => completely_representable(p, budget)?.verdict == *v,
        Claim::ExtensionFails { seed, forbidden } => {
            let seed = p.set_of(seed)?;
            let forbidden = p
                .index_of(forbidden)
                .ok_or_else(|| Error::UnknownLabel(forbidden.clone()))?;
            extend_to_filter(p, seed, Some(forbidden), Signature::finite(3, 3)?, budget)?.is_none()
        }
    })
}
