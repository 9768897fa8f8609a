//! Representability over every signature of a poset.

use alloc::vec::Vec;

use crate::representation::{decide_representable, DecisionMethod};
use crate::{Arity, Budget, Poset, Result, Signature};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumReport {
    /// Canonical bounds `2, 3, .., |P|, ALL`, indexing both matrix axes.
    pub arities: Vec<Arity>,
    /// `matrix[i][j]`: representable at `(arities[i], arities[j])`.
    pub matrix: Vec<Vec<bool>>,
    /// Maximal representable signatures with both bounds at least 3, by
    /// increasing `alpha`. Bound 2 is always representable and left out.
    pub frontier: Vec<Signature>,
    /// Signatures that were actually searched; the rest follow by monotonicity.
    pub decided: usize,
}

impl SpectrumReport {
    pub fn get(&self, sig: Signature, n: usize) -> bool {
        let sig = sig.canonical(n);
        let i = self.arities.iter().position(|&a| a == sig.alpha).expect("canonical alpha");
        let j = self.arities.iter().position(|&a| a == sig.beta).expect("canonical beta");
        self.matrix[i][j]
    }

    /// Representable at `(a', b')` implies representable at every `(a, b)`
    /// below it.
    pub fn is_downward_closed(&self) -> bool {
        let k = self.arities.len();
        (0..k).all(|i| {
            (0..k).all(|j| {
                !self.matrix[i][j] || (i == 0 || self.matrix[i - 1][j]) && (j == 0 || self.matrix[i][j - 1])
            })
        })
    }
}

/// Decides representability at every canonical signature.
///
/// Bound 2 on either side is always representable. For the rest the yes
/// region is a staircase, so it is traced with one pass: for `alpha` from
/// `ALL` downwards the largest good `beta` can only grow.
pub fn spectrum(p: &Poset, budget: Budget) -> Result<SpectrumReport> {
    let n = p.len();
    let arities: Vec<Arity> = Arity::ladder(n).collect();
    let k = arities.len();
    let mut matrix = alloc::vec![alloc::vec![false; k]; k];
    matrix[0].fill(true);
    for row in matrix.iter_mut() {
        row[0] = true;
    }
    let mut decided = 0;
    // best = largest j with matrix[i][j] known true for the current row
    let mut best = 0;
    for i in (1..k).rev() {
        while best + 1 < k {
            let sig = Signature::new(arities[i], arities[best + 1]);
            decided += 1;
            if decide_representable(p, sig, DecisionMethod::PerPair, budget)?.verdict {
                best += 1;
            } else {
                break;
            }
        }
        for cell in matrix[i].iter_mut().take(best + 1) {
            *cell = true;
        }
    }
    let mut frontier = Vec::new();
    for i in 1..k {
        for j in 1..k {
            let up_a = i + 1 < k && matrix[i + 1][j];
            let up_b = j + 1 < k && matrix[i][j + 1];
            if matrix[i][j] && !up_a && !up_b {
                frontier.push(Signature::new(arities[i], arities[j]));
            }
        }
    }
    Ok(SpectrumReport {
        arities,
        matrix,
        frontier,
        decided,
    })
}
