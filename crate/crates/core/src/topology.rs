//! Hardware connectivity graphs.
//!
//! Four architectures, from most to least constrained: a linear
//! nearest-neighbor chain, a ladder (an (n/2)×2 grid), a square grid, and a
//! fully connected device. Nodes are physical qubits; an edge marks a pair
//! on which two-qubit gates may be applied.
//!
//! Ladder indexing interleaves the two columns: odd physical indices form
//! column 1 and even indices column 2, so (2k−1, 2k) pairs are rungs and
//! (i, i+2) pairs are rails. Grids are indexed row-major.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TopologyKind {
    Linear,
    Ladder,
    Grid,
    AllToAll,
}

impl TopologyKind {
    pub fn name(&self) -> &'static str {
        match self {
            TopologyKind::Linear => "linear",
            TopologyKind::Ladder => "ladder",
            TopologyKind::Grid => "grid",
            TopologyKind::AllToAll => "all",
        }
    }
}

/// An immutable connectivity graph. Indices are 1-based; edges are stored
/// undirected with i < j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Topology {
    kind: TopologyKind,
    n_phys: u32,
    edges: BTreeSet<(u32, u32)>,
}

/// Smallest m >= n for which (kind, m) is a valid shape.
pub fn pad_size(kind: TopologyKind, n: u32) -> u32 {
    match kind {
        TopologyKind::Linear | TopologyKind::AllToAll => n,
        TopologyKind::Ladder => n + n % 2,
        TopologyKind::Grid => {
            let mut r = (n as f64).sqrt() as u32;
            while r * r < n {
                r += 1;
            }
            r * r
        }
    }
}

/// Integer square root of a perfect square (shape-checked by the caller).
pub(crate) fn isqrt(n: u32) -> u32 {
    let mut r = (n as f64).sqrt() as u32;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

pub fn build_topology(kind: TopologyKind, n: u32) -> Result<Topology> {
    if n < 1 {
        return Err(Error::InvalidShape {
            kind,
            n,
            constraint: "qubit count must be positive",
        });
    }
    let mut edges = BTreeSet::new();
    match kind {
        TopologyKind::Linear => {
            for i in 1..n {
                edges.insert((i, i + 1));
            }
        }
        TopologyKind::Ladder => {
            if n % 2 != 0 {
                return Err(Error::InvalidShape {
                    kind,
                    n,
                    constraint: "ladder requires an even qubit count",
                });
            }
            // rungs (2k-1, 2k), rails (i, i+2)
            for k in 1..=n / 2 {
                edges.insert((2 * k - 1, 2 * k));
            }
            for i in 1..=n.saturating_sub(2) {
                edges.insert((i, i + 2));
            }
        }
        TopologyKind::Grid => {
            let s = isqrt(n);
            if s * s != n {
                return Err(Error::InvalidShape {
                    kind,
                    n,
                    constraint: "grid requires a perfect-square qubit count",
                });
            }
            for r in 0..s {
                for c in 0..s {
                    let q = r * s + c + 1;
                    if c + 1 < s {
                        edges.insert((q, q + 1));
                    }
                    if r + 1 < s {
                        edges.insert((q, q + s));
                    }
                }
            }
        }
        TopologyKind::AllToAll => {
            for i in 1..=n {
                for j in i + 1..=n {
                    edges.insert((i, j));
                }
            }
        }
    }
    Ok(Topology {
        kind,
        n_phys: n,
        edges,
    })
}

impl Topology {
    pub fn kind(&self) -> TopologyKind {
        self.kind
    }

    pub fn n_phys(&self) -> u32 {
        self.n_phys
    }

    pub fn are_adjacent(&self, i: u32, j: u32) -> Result<bool> {
        for q in [i, j] {
            if q < 1 || q > self.n_phys {
                return Err(Error::IndexOutOfRange {
                    index: q,
                    n_phys: self.n_phys,
                });
            }
        }
        if i == j {
            return Ok(false);
        }
        let key = (i.min(j), i.max(j));
        Ok(self.edges.contains(&key))
    }

    /// Undirected edge count.
    pub fn undirected_edges(&self) -> u64 {
        self.edges.len() as u64
    }

    /// Ordered-pair count (twice the undirected count); the all-to-all
    /// description counts edges this way.
    pub fn ordered_edges(&self) -> u64 {
        2 * self.edges.len() as u64
    }

    /// Edges as sorted (i, j) pairs with i < j.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.edges.iter().copied()
    }

    pub fn degree(&self, q: u32) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == q || b == q)
            .count()
    }
}
