use core::fmt;
use core::str::FromStr;

use crate::{Error, Result};

/// Arity bound: subsets of size strictly below the bound are considered.
///
/// `All` stands for every cardinal at least `|P| + 1`; on a finite poset the
/// countable and complete cases coincide with it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Arity {
    Finite(usize),
    All,
}

impl Arity {
    pub fn finite(k: usize) -> Result<Arity> {
        if k < 2 {
            Err(Error::InvalidArity(k))
        } else {
            Ok(Arity::Finite(k))
        }
    }

    /// Collapses bounds that exceed every subset size of an `n`-element poset.
    pub fn canonical(self, n: usize) -> Arity {
        match self {
            Arity::Finite(k) if k > n => Arity::All,
            a => a,
        }
    }

    /// Largest subset size the bound admits on an `n`-element poset.
    pub fn max_subset_size(self, n: usize) -> usize {
        match self {
            Arity::Finite(k) => (k - 1).min(n),
            Arity::All => n,
        }
    }

    /// Numeric stand-in for ordering: `All` becomes `n + 1`.
    pub fn rank(self, n: usize) -> usize {
        match self.canonical(n) {
            Arity::Finite(k) => k,
            Arity::All => n + 1,
        }
    }

    /// Canonical bounds of an `n`-element poset from 2 upwards, ending in `All`.
    pub fn ladder(n: usize) -> impl Iterator<Item = Arity> {
        (2..=n).map(Arity::Finite).chain(core::iter::once(Arity::All))
    }
}

impl fmt::Display for Arity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arity::Finite(k) => write!(f, "{k}"),
            Arity::All => f.write_str("ALL"),
        }
    }
}

impl FromStr for Arity {
    type Err = Error;

    /// Accepts integers `>= 2`, `ALL`, and the aliases `omega`, `ω`, `C`.
    fn from_str(s: &str) -> Result<Arity> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("all")
            || t.eq_ignore_ascii_case("omega")
            || t == "ω"
            || t.eq_ignore_ascii_case("c")
        {
            return Ok(Arity::All);
        }
        let k: usize = t
            .parse()
            .map_err(|_| Error::InvalidParameter(alloc::format!("bad arity `{s}`")))?;
        Arity::finite(k)
    }
}

/// Meet bound `alpha` and join bound `beta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Signature {
    pub alpha: Arity,
    pub beta: Arity,
}

impl Signature {
    pub const fn new(alpha: Arity, beta: Arity) -> Self {
        Signature { alpha, beta }
    }

    pub fn finite(alpha: usize, beta: usize) -> Result<Self> {
        Ok(Signature::new(Arity::finite(alpha)?, Arity::finite(beta)?))
    }

    pub const fn complete() -> Self {
        Signature::new(Arity::All, Arity::All)
    }

    pub fn canonical(self, n: usize) -> Self {
        Signature::new(self.alpha.canonical(n), self.beta.canonical(n))
    }

    /// Swaps the bounds, as needed when passing to the order dual.
    pub fn swapped(self) -> Self {
        Signature::new(self.beta, self.alpha)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.alpha, self.beta)
    }
}
