//! Ground truth independent of the constructive pipeline: closed-walk
//! existence from boolean matrix powers, and brute-force cycle enumeration.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::OrientedGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("walk length must be at least 1")]
    ZeroLength,
    #[error("cycle enumeration exceeded its budget of {budget} search nodes")]
    Timeout { budget: u64 },
}

/// Square bit matrix over the boolean semiring, rows stored as `u64` words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoolMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BoolMatrix {
    pub fn zeros(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Self {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn adjacency(g: &OrientedGraph) -> Self {
        let mut m = Self::zeros(g.vertex_count());
        for (u, v) in g.edges() {
            m.set(u, v);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    /// Boolean product: row `i` of the result is the OR of the rows of
    /// `other` selected by the set bits of row `i` of `self`.
    pub fn multiply(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "matrix sizes differ");
        let mut out = Self::zeros(self.n);
        if self.n == 0 {
            return out;
        }
        out.bits
            .par_chunks_mut(self.words)
            .enumerate()
            .for_each(|(i, dst)| {
                for (w, &word) in self.row(i).iter().enumerate() {
                    let mut word = word;
                    while word != 0 {
                        let j = w * 64 + word.trailing_zeros() as usize;
                        word &= word - 1;
                        for (d, s) in dst.iter_mut().zip(other.row(j)) {
                            *d |= s;
                        }
                    }
                }
            });
        out
    }

    /// Smallest `i` with entry `(i, i)` set.
    pub fn first_diagonal(&self) -> Option<usize> {
        (0..self.n).find(|&i| self.get(i, i))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedWalkVerdict {
    pub exists: bool,
    /// Smallest vertex lying on a closed walk of the requested length.
    pub witness: Option<usize>,
    /// Matrix products performed, at most `2·⌊log2 ell⌋`.
    #[serde(skip)]
    pub multiplications: u32,
}

/// Whether `g` has a closed directed walk with exactly `ell` edges, by binary
/// exponentiation of the adjacency matrix.
pub fn has_closed_walk(g: &OrientedGraph, ell: &BigUint) -> Result<ClosedWalkVerdict, OracleError> {
    if ell.is_zero() {
        return Err(OracleError::ZeroLength);
    }
    let (power, multiplications) = matrix_power(&BoolMatrix::adjacency(g), ell);
    let witness = power.first_diagonal();
    Ok(ClosedWalkVerdict {
        exists: witness.is_some(),
        witness,
        multiplications,
    })
}

/// `a^e` for `e >= 1` together with the number of products used.
pub fn matrix_power(a: &BoolMatrix, e: &BigUint) -> (BoolMatrix, u32) {
    assert!(!e.is_zero(), "exponent must be positive");
    let bits = e.bits();
    let mut count = 0;
    let mut acc: Option<BoolMatrix> = None;
    let mut base = a.clone();
    for i in 0..bits {
        if e.bit(i) {
            acc = Some(match acc {
                None => base.clone(),
                Some(m) => {
                    count += 1;
                    m.multiply(&base)
                }
            });
        }
        if i + 1 < bits {
            base = base.multiply(&base);
            count += 1;
        }
    }
    (acc.expect("nonzero exponent has a set bit"), count)
}

/// Lengths `<= cap` of simple directed cycles, by depth-first enumeration
/// rooted at each cycle's smallest vertex. Fails once more than `budget`
/// search nodes have been expanded.
pub fn cycle_length_spectrum(
    g: &OrientedGraph,
    cap: usize,
    budget: u64,
) -> Result<BTreeSet<usize>, OracleError> {
    let n = g.vertex_count();
    let mut found = BTreeSet::new();
    let mut on_path = vec![false; n];
    let mut nodes = 0u64;
    for root in 0..n {
        on_path[root] = true;
        extend(g, root, root, 1, cap, &mut on_path, &mut found, &mut nodes, budget)?;
        on_path[root] = false;
    }
    Ok(found)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &OrientedGraph,
    root: usize,
    at: usize,
    len: usize,
    cap: usize,
    on_path: &mut [bool],
    found: &mut BTreeSet<usize>,
    nodes: &mut u64,
    budget: u64,
) -> Result<(), OracleError> {
    *nodes += 1;
    if *nodes > budget {
        return Err(OracleError::Timeout { budget });
    }
    for &w in g.out_neighbors(at) {
        if w == root {
            found.insert(len);
        } else if w > root && !on_path[w] && len < cap {
            on_path[w] = true;
            extend(g, root, w, len + 1, cap, on_path, found, nodes, budget)?;
            on_path[w] = false;
        }
    }
    Ok(())
}
