//! Optimized schedules for the three benchmark primitives on each
//! connectivity graph, with full mapping bookkeeping.
//!
//! Each schedule is assembled from barrier-delimited regions that realize
//! the pseudocode's sequential "parallel" blocks; gates pack greedily within
//! a region, which reproduces the published depth accounting after lowering.

mod grover;
mod jw;
mod parity;
mod qft;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate, MappingState};
use crate::error::{Error, Result};
use crate::simulator::{
    oracle_grover_diffusion, oracle_parity_rotation, oracle_qft, EquivalenceSetup, UnitaryMatrix,
};
use crate::topology::{Topology, TopologyKind};

pub use grover::and_subroutine;
pub use jw::schedule_jw_with_mapping;
pub use parity::parity_subroutine;
pub use qft::restore_output_order;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgorithmKind {
    Qft,
    #[serde(rename = "jw")]
    JordanWigner,
    #[serde(rename = "grover")]
    GroverDiffusion,
}

impl AlgorithmKind {
    pub fn name(&self) -> &'static str {
        match self {
            AlgorithmKind::Qft => "qft",
            AlgorithmKind::JordanWigner => "jw",
            AlgorithmKind::GroverDiffusion => "grover",
        }
    }
}

/// Parity-rotation instance: which logical qubits participate and by what
/// angle the parity rotates.
#[derive(Debug, Clone)]
pub struct ParitySpec {
    n: u32,
    theta: f64,
    members: Vec<u32>,
}

impl ParitySpec {
    pub fn new(n: u32, theta: f64, members: Vec<u32>) -> Result<ParitySpec> {
        if n == 0 {
            return Err(Error::Unsupported("parity rotation needs n >= 1".into()));
        }
        let mut members = members;
        members.sort_unstable();
        members.dedup();
        if members.is_empty() {
            return Err(Error::Unsupported(
                "parity subset must contain at least one qubit".into(),
            ));
        }
        if members.iter().any(|&j| j < 1 || j > n) {
            return Err(Error::Unsupported(format!(
                "parity subset indices must lie in 1..={n}"
            )));
        }
        Ok(ParitySpec { n, theta, members })
    }

    /// Global parity over all n qubits.
    pub fn full(n: u32, theta: f64) -> Result<ParitySpec> {
        ParitySpec::new(n, theta, (1..=n).collect())
    }

    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn theta(&self) -> f64 {
        self.theta
    }
    pub fn members(&self) -> &[u32] {
        &self.members
    }
    pub fn is_member(&self, logical: u32) -> bool {
        self.members.binary_search(&logical).is_ok()
    }
}

/// Grover diffusion instance; n data qubits, padded to 2^k with ancilla
/// leaves initialized |1⟩ when n is not a power of two (a power of four on
/// the grid).
#[derive(Debug, Clone, Copy)]
pub struct GroverSpec {
    n: u32,
}

impl GroverSpec {
    pub fn new(n: u32) -> Result<GroverSpec> {
        if n < 2 {
            return Err(Error::Unsupported("grover diffusion needs n >= 2".into()));
        }
        Ok(GroverSpec { n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Tree depth k = ceil(log2 n).
    pub fn tree_depth(&self) -> u32 {
        let mut k = 0;
        while (1u32 << k) < self.n {
            k += 1;
        }
        k
    }

    pub fn padded_n(&self) -> u32 {
        1 << self.tree_depth()
    }

    /// Grid schedules need a square number of data columns: pad to 4^j.
    pub fn padded_n_grid(&self) -> u32 {
        let k = self.tree_depth() + self.tree_depth() % 2;
        1 << k
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScheduleParams {
    pub n: u32,
    pub padded_n: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subset: Option<Vec<u32>>,
}

/// A scheduled circuit plus the bookkeeping needed to verify and report it.
#[derive(Debug, Clone)]
pub struct ScheduleResult {
    pub algorithm: AlgorithmKind,
    pub topology: Topology,
    /// Pre-lowering circuit; may contain CP/SWAP/TOFF.
    pub circuit: Circuit,
    pub initial_mapping: MappingState,
    pub final_mapping: MappingState,
    /// Physical home of logical data bit j at circuit start (index j−1).
    pub data_positions: Vec<u32>,
    /// Ancillas entering |0⟩.
    pub ancilla_zero: Vec<u32>,
    /// Padding leaves entering |1⟩.
    pub ancilla_one: Vec<u32>,
    pub params: ScheduleParams,
}

impl ScheduleResult {
    /// Qubits the schedule actually touches (the containing topology may be
    /// larger, e.g. the grid embedding of the Grover rectangle).
    pub fn active_qubits(&self) -> u32 {
        (self.data_positions.len() + self.ancilla_zero.len() + self.ancilla_one.len()) as u32
    }

    /// The oracle this schedule must implement plus the data/ancilla layout
    /// for the equivalence check.
    pub fn verification_oracle(&self, tolerance: f64) -> Result<(UnitaryMatrix, EquivalenceSetup)> {
        let mut ancilla_in = BTreeMap::new();
        for &q in &self.ancilla_zero {
            ancilla_in.insert(q, false);
        }
        for &q in &self.ancilla_one {
            ancilla_in.insert(q, true);
        }
        match self.algorithm {
            AlgorithmKind::Qft => {
                let n = self.params.n;
                // Output bit m emerges on the physical qubit holding input
                // wire x_{n+1−m}: the schedules omit the final mirror SWAP
                // network, and the no-swap QFT reverses the output order.
                let output = (1..=n)
                    .map(|m| {
                        self.final_mapping
                            .position_of(n + 1 - m)
                            .ok_or_else(|| Error::Malformed("mapping lost a data qubit".into()))
                    })
                    .collect::<Result<Vec<u32>>>()?;
                Ok((
                    oracle_qft(n)?,
                    EquivalenceSetup {
                        input_positions: self.data_positions.clone(),
                        output_positions: output,
                        ancilla_in,
                        tolerance,
                    },
                ))
            }
            AlgorithmKind::JordanWigner => {
                // Padding slots are carried as extra non-member logicals so
                // the oracle covers every machine qubit.
                let n_all = self.initial_mapping.n_phys();
                let members = self.params.subset.clone().unwrap_or_default();
                let positions = (1..=n_all)
                    .map(|j| {
                        self.initial_mapping
                            .position_of(j)
                            .ok_or_else(|| Error::Malformed("mapping lost a data qubit".into()))
                    })
                    .collect::<Result<Vec<u32>>>()?;
                Ok((
                    oracle_parity_rotation(n_all, &members, self.params.theta.unwrap_or_default())?,
                    EquivalenceSetup {
                        input_positions: positions.clone(),
                        output_positions: positions,
                        ancilla_in,
                        tolerance,
                    },
                ))
            }
            AlgorithmKind::GroverDiffusion => Ok((
                oracle_grover_diffusion(self.params.n)?,
                EquivalenceSetup {
                    input_positions: self.data_positions.clone(),
                    output_positions: self.data_positions.clone(),
                    ancilla_in,
                    tolerance,
                },
            )),
        }
    }
}

pub(crate) type Region = Vec<Gate>;

pub(crate) fn invert_regions(regions: &[Region]) -> Vec<Region> {
    regions
        .iter()
        .rev()
        .map(|r| r.iter().rev().map(Gate::adjoint).collect())
        .collect()
}

pub(crate) fn circuit_from_regions(n_phys: u32, regions: &[Region]) -> Result<Circuit> {
    let mut c = Circuit::new(n_phys);
    for region in regions {
        if region.is_empty() {
            continue;
        }
        c.append_barrier();
        for g in region {
            c.append_asap(g.clone())?;
        }
    }
    Ok(c)
}

/// Schedule the quantum Fourier transform on n data qubits.
pub fn schedule_qft(topo: TopologyKind, n: u32) -> Result<ScheduleResult> {
    qft::schedule(topo, n)
}

/// Schedule a parity-based rotation (Jordan-Wigner string).
pub fn schedule_jw(topo: TopologyKind, spec: &ParitySpec) -> Result<ScheduleResult> {
    jw::schedule(topo, spec, None)
}

/// Schedule the Grover diffusion operator.
pub fn schedule_grover(topo: TopologyKind, spec: &GroverSpec) -> Result<ScheduleResult> {
    grover::schedule(topo, spec)
}
