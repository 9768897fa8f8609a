//! Finite posets as fields of sets.
//!
//! This crate decides whether a finite poset embeds into a powerset so that
//! existing meets of fewer than `alpha` elements become intersections and
//! existing joins of fewer than `beta` elements become unions. The decision is
//! made by searching for separating `(alpha, beta)`-filters; when they exist
//! the filters themselves form the ground set of a canonical representation.
//!
//! Around that core sit the supporting pieces: filter recognition and
//! enumeration, verification of arbitrary candidate representations, the
//! representability spectrum over all signatures, first-order side conditions
//! (LMD, D̄2, distributivity, irreducibles), generators for reference posets,
//! and exhaustive small-poset search.
//!
//! The crate is `no_std` and only needs `alloc`. File formats and the command
//! line live in the `posetrep` crate.

#![no_std]
extern crate alloc;

mod closure;
pub mod conditions;
mod error;
pub mod families;
pub mod filters;
pub mod poset;
pub mod representation;
pub mod search;
mod set;
mod signature;
pub mod spectrum;

pub use error::{Error, Result};
pub use poset::{BuildMode, Poset, Side};
pub use set::{ElementSet, MAX_ELEMENTS};
pub use signature::{Arity, Signature};

/// Work limit for the searches that can blow up combinatorially.
///
/// `max_steps` counts search nodes (up-sets explored, backtracking nodes or
/// posets evaluated, depending on the operation).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_steps: u64,
}

impl Budget {
    pub const DEFAULT_STEPS: u64 = 1_000_000;

    pub const fn new(max_steps: u64) -> Self {
        Budget { max_steps }
    }

    pub const fn unlimited() -> Self {
        Budget {
            max_steps: u64::MAX,
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(Self::DEFAULT_STEPS)
    }
}

pub(crate) struct Meter {
    used: u64,
    limit: u64,
}

impl Meter {
    pub(crate) fn new(budget: Budget) -> Self {
        Meter {
            used: 0,
            limit: budget.max_steps,
        }
    }

    pub(crate) fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::BudgetExceeded { steps: self.used - 1 })
        } else {
            Ok(())
        }
    }
}
