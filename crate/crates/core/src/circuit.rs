//! Gate sequences as moments of simultaneously executable gates.
//!
//! A circuit is an ordered list of moments; gates within one moment act on
//! pairwise-disjoint qubits and run in parallel. Gates are appended ASAP:
//! each lands in the earliest moment after the last use of any of its
//! operands. Barriers delimit the sequential parallel blocks of a schedule;
//! no gate packs into a moment at or before the most recent barrier.
//!
//! `MappingState` tracks which logical qubit each physical qubit currently
//! holds; SWAP gates permute the association and ancilla slots carry a
//! non-data marker.

use crate::error::{Error, Result};
use crate::topology::Topology;

#[derive(Debug, Clone, PartialEq)]
pub enum GateKind {
    H,
    X,
    Z,
    /// exp(-i θ Z / 2)
    Rz(f64),
    /// exp(-i θ Y / 2); the Margolus Toffoli decomposition uses these.
    Ry(f64),
    /// Diagonal phase P_k = diag(1, e^{2πi/2^k}); `conjugated` is the adjoint.
    Phase {
        k: u32,
        conjugated: bool,
    },
    Cnot,
    /// Controlled phase diag(1,1,1, e^{±2πi/2^k}).
    Cp {
        k: u32,
        conjugated: bool,
    },
    Swap,
    Toff,
}

impl GateKind {
    pub fn arity(&self) -> usize {
        match self {
            GateKind::H
            | GateKind::X
            | GateKind::Z
            | GateKind::Rz(_)
            | GateKind::Ry(_)
            | GateKind::Phase { .. } => 1,
            GateKind::Cnot | GateKind::Cp { .. } | GateKind::Swap => 2,
            GateKind::Toff => 3,
        }
    }

    pub fn adjoint(&self) -> GateKind {
        match self {
            GateKind::Rz(t) => GateKind::Rz(-t),
            GateKind::Ry(t) => GateKind::Ry(-t),
            GateKind::Phase { k, conjugated } => GateKind::Phase {
                k: *k,
                conjugated: !conjugated,
            },
            GateKind::Cp { k, conjugated } => GateKind::Cp {
                k: *k,
                conjugated: !conjugated,
            },
            other => other.clone(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GateKind::H => "H",
            GateKind::X => "X",
            GateKind::Z => "Z",
            GateKind::Rz(_) => "RZ",
            GateKind::Ry(_) => "RY",
            GateKind::Phase { .. } => "P",
            GateKind::Cnot => "CNOT",
            GateKind::Cp { .. } => "CP",
            GateKind::Swap => "SWAP",
            GateKind::Toff => "TOFF",
        }
    }
}

/// A gate instance on physical qubits. Operand order: control first for
/// CNOT, both controls first for TOFF.
#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    pub operands: Vec<u32>,
}

impl Gate {
    pub fn new(kind: GateKind, operands: Vec<u32>) -> Result<Gate> {
        if operands.len() != kind.arity() {
            return Err(Error::InvalidGate(format!(
                "{} expects {} operands, got {}",
                kind.name(),
                kind.arity(),
                operands.len()
            )));
        }
        for (i, a) in operands.iter().enumerate() {
            if operands[..i].contains(a) {
                return Err(Error::InvalidGate(format!(
                    "{} operands must be distinct: {:?}",
                    kind.name(),
                    operands
                )));
            }
        }
        Ok(Gate { kind, operands })
    }

    pub fn h(q: u32) -> Gate {
        Gate::new(GateKind::H, vec![q]).unwrap()
    }
    pub fn x(q: u32) -> Gate {
        Gate::new(GateKind::X, vec![q]).unwrap()
    }
    pub fn z(q: u32) -> Gate {
        Gate::new(GateKind::Z, vec![q]).unwrap()
    }
    pub fn rz(q: u32, theta: f64) -> Gate {
        Gate::new(GateKind::Rz(theta), vec![q]).unwrap()
    }
    pub fn ry(q: u32, theta: f64) -> Gate {
        Gate::new(GateKind::Ry(theta), vec![q]).unwrap()
    }
    pub fn phase(q: u32, k: u32, conjugated: bool) -> Gate {
        Gate::new(GateKind::Phase { k, conjugated }, vec![q]).unwrap()
    }
    pub fn cnot(control: u32, target: u32) -> Gate {
        Gate::new(GateKind::Cnot, vec![control, target]).unwrap()
    }
    pub fn cp(k: u32, a: u32, b: u32) -> Gate {
        Gate::new(
            GateKind::Cp {
                k,
                conjugated: false,
            },
            vec![a, b],
        )
        .unwrap()
    }
    pub fn swap(a: u32, b: u32) -> Gate {
        Gate::new(GateKind::Swap, vec![a, b]).unwrap()
    }
    pub fn toff(c1: u32, c2: u32, target: u32) -> Gate {
        Gate::new(GateKind::Toff, vec![c1, c2, target]).unwrap()
    }

    pub fn adjoint(&self) -> Gate {
        Gate {
            kind: self.kind.adjoint(),
            operands: self.operands.clone(),
        }
    }
}

/// One parallel time step: gates on pairwise-disjoint qubits, kept sorted
/// by primary operand for deterministic output.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Moment {
    pub gates: Vec<Gate>,
}

impl Moment {
    fn insert(&mut self, gate: Gate) {
        let pos = self
            .gates
            .partition_point(|g| g.operands[0] < gate.operands[0]);
        self.gates.insert(pos, gate);
    }
}

/// A connectivity violation: a multi-qubit gate on a non-adjacent pair.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub moment: usize,
    pub gate: Gate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n_phys: u32,
    moments: Vec<Moment>,
    /// Region boundaries: no gate packs into a moment with index < floor.
    barriers: Vec<usize>,
    /// 1 + index of the last moment touching each qubit (0 = untouched).
    busy: Vec<usize>,
    floor: usize,
}

impl Circuit {
    pub fn new(n_phys: u32) -> Circuit {
        Circuit {
            n_phys,
            moments: Vec::new(),
            barriers: Vec::new(),
            busy: vec![0; n_phys as usize + 1],
            floor: 0,
        }
    }

    pub fn n_phys(&self) -> u32 {
        self.n_phys
    }

    pub fn moments(&self) -> &[Moment] {
        &self.moments
    }

    pub fn barriers(&self) -> &[usize] {
        &self.barriers
    }

    pub fn gates(&self) -> impl Iterator<Item = &Gate> {
        self.moments.iter().flat_map(|m| m.gates.iter())
    }

    pub fn gate_count(&self) -> usize {
        self.moments.iter().map(|m| m.gates.len()).sum()
    }

    /// Number of (non-empty) moments.
    pub fn depth(&self) -> usize {
        self.moments.len()
    }

    /// Place `gate` in the earliest moment after the last use of any of its
    /// operands, respecting the barrier floor.
    pub fn append_asap(&mut self, gate: Gate) -> Result<()> {
        for &q in &gate.operands {
            if q < 1 || q > self.n_phys {
                return Err(Error::IndexOutOfRange {
                    index: q,
                    n_phys: self.n_phys,
                });
            }
        }
        let slot = gate
            .operands
            .iter()
            .map(|&q| self.busy[q as usize])
            .max()
            .unwrap_or(0)
            .max(self.floor);
        if slot == self.moments.len() {
            self.moments.push(Moment::default());
        }
        for &q in &gate.operands {
            self.busy[q as usize] = slot + 1;
        }
        self.moments[slot].insert(gate);
        Ok(())
    }

    /// Subsequent gates never pack into moments at or before this point.
    pub fn append_barrier(&mut self) {
        if self.floor != self.moments.len() {
            self.floor = self.moments.len();
            self.barriers.push(self.floor);
        }
    }

    /// Moments reversed with each gate replaced by its adjoint; barrier
    /// structure mirrored. Moment packing is preserved exactly.
    pub fn invert(&self) -> Circuit {
        let total = self.moments.len();
        let moments: Vec<Vec<Gate>> = self
            .moments
            .iter()
            .rev()
            .map(|m| m.gates.iter().map(Gate::adjoint).collect())
            .collect();
        let barriers: Vec<usize> = self.barriers.iter().rev().map(|b| total - b).collect();
        Circuit::from_moments(self.n_phys, moments, barriers).expect("inverse is well-formed")
    }

    /// Every (moment, gate) whose operands include a pair the topology does
    /// not couple. A Toffoli requires both controls adjacent to its target.
    pub fn validate_connectivity(&self, topo: &Topology) -> Result<Vec<Violation>> {
        if self.n_phys != topo.n_phys() {
            return Err(Error::SizeMismatch {
                circuit: self.n_phys,
                topology: topo.n_phys(),
            });
        }
        let mut out = Vec::new();
        for (mi, moment) in self.moments.iter().enumerate() {
            for gate in &moment.gates {
                let ok = match gate.kind {
                    GateKind::Cnot | GateKind::Cp { .. } | GateKind::Swap => {
                        topo.are_adjacent(gate.operands[0], gate.operands[1])?
                    }
                    GateKind::Toff => {
                        topo.are_adjacent(gate.operands[0], gate.operands[2])?
                            && topo.are_adjacent(gate.operands[1], gate.operands[2])?
                    }
                    _ => true,
                };
                if !ok {
                    out.push(Violation {
                        moment: mi,
                        gate: gate.clone(),
                    });
                }
            }
        }
        Ok(out)
    }

    /// Rebuild from explicit moments (used by deserialization). Moment
    /// boundaries listed in `barriers` become region floors; packing is
    /// preserved exactly.
    pub(crate) fn from_moments(
        n_phys: u32,
        moments: Vec<Vec<Gate>>,
        barriers: Vec<usize>,
    ) -> Result<Circuit> {
        let mut c = Circuit::new(n_phys);
        for (mi, gates) in moments.into_iter().enumerate() {
            let mut seen: Vec<u32> = Vec::new();
            for gate in gates {
                for &q in &gate.operands {
                    if q < 1 || q > n_phys {
                        return Err(Error::IndexOutOfRange { index: q, n_phys });
                    }
                    if seen.contains(&q) {
                        return Err(Error::Malformed(format!(
                            "moment {mi} uses qubit {q} twice"
                        )));
                    }
                    seen.push(q);
                    c.busy[q as usize] = mi + 1;
                }
                if c.moments.len() <= mi {
                    c.moments.push(Moment::default());
                }
                c.moments[mi].insert(gate);
            }
            if c.moments.len() <= mi {
                return Err(Error::Malformed(format!("moment {mi} is empty")));
            }
        }
        for b in barriers {
            if b > c.moments.len() {
                return Err(Error::Malformed(format!("barrier {b} out of range")));
            }
            if !c.barriers.contains(&b) && b != 0 {
                c.barriers.push(b);
            }
        }
        c.barriers.sort_unstable();
        c.floor = c.moments.len();
        Ok(c)
    }

    /// Moment index ranges of the barrier-delimited regions, in order.
    pub fn regions(&self) -> Vec<std::ops::Range<usize>> {
        let mut cuts = vec![0];
        for &b in &self.barriers {
            if b != 0 && b != self.moments.len() && Some(&b) != cuts.last() {
                cuts.push(b);
            }
        }
        cuts.push(self.moments.len());
        cuts.windows(2)
            .filter(|w| w[0] < w[1])
            .map(|w| w[0]..w[1])
            .collect()
    }
}

/// Which logical qubit (if any) a physical slot holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    Logical(u32),
    Ancilla,
}

/// The evolving physical-to-logical association f: f(i) = j means physical
/// qubit q_i holds logical qubit x_j. SWAPs exchange slots; every other
/// gate leaves the map unchanged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MappingState {
    slots: Vec<Slot>,
}

impl MappingState {
    /// Identity map over n data qubits.
    pub fn identity(n: u32) -> MappingState {
        MappingState {
            slots: (1..=n).map(Slot::Logical).collect(),
        }
    }

    /// All-ancilla map of the given size; assign data slots afterwards.
    pub fn ancillas(n: u32) -> MappingState {
        MappingState {
            slots: vec![Slot::Ancilla; n as usize],
        }
    }

    pub fn set(&mut self, phys: u32, slot: Slot) {
        self.slots[phys as usize - 1] = slot;
    }

    pub fn n_phys(&self) -> u32 {
        self.slots.len() as u32
    }

    pub fn slot(&self, phys: u32) -> Slot {
        self.slots[phys as usize - 1]
    }

    /// Logical index at a physical position, if it holds data.
    pub fn logical_at(&self, phys: u32) -> Option<u32> {
        match self.slot(phys) {
            Slot::Logical(j) => Some(j),
            Slot::Ancilla => None,
        }
    }

    /// Physical position currently holding logical qubit x_j.
    pub fn position_of(&self, logical: u32) -> Option<u32> {
        self.slots
            .iter()
            .position(|s| *s == Slot::Logical(logical))
            .map(|i| i as u32 + 1)
    }

    pub fn apply_swap(&mut self, a: u32, b: u32) {
        self.slots.swap(a as usize - 1, b as usize - 1);
    }

    pub fn ancilla_positions(&self) -> Vec<u32> {
        (1..=self.n_phys())
            .filter(|&q| self.slot(q) == Slot::Ancilla)
            .collect()
    }

    /// The map after every SWAP in the circuit, in temporal order.
    pub fn track(&self, circuit: &Circuit) -> MappingState {
        let mut m = self.clone();
        for gate in circuit.gates() {
            if gate.kind == GateKind::Swap {
                m.apply_swap(gate.operands[0], gate.operands[1]);
            }
        }
        m
    }
}

/// Free-function form of [`MappingState::track`].
pub fn track_mapping(m: &MappingState, c: &Circuit) -> MappingState {
    m.track(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{build_topology, TopologyKind};

    #[test]
    fn append_packs_greedily() {
        let mut c = Circuit::new(2);
        c.append_asap(Gate::h(1)).unwrap();
        assert_eq!(c.depth(), 1);
        c.append_asap(Gate::h(2)).unwrap();
        assert_eq!(c.depth(), 1);
        c.append_asap(Gate::cnot(1, 2)).unwrap();
        assert_eq!(c.depth(), 2);
    }

    #[test]
    fn barrier_blocks_packing() {
        let mut c = Circuit::new(2);
        c.append_asap(Gate::h(1)).unwrap();
        c.append_barrier();
        c.append_asap(Gate::h(2)).unwrap();
        assert_eq!(c.depth(), 2);

        let mut empty = Circuit::new(2);
        empty.append_barrier();
        assert_eq!(empty.depth(), 0);

        let mut c2 = Circuit::new(2);
        c2.append_asap(Gate::h(1)).unwrap();
        c2.append_barrier();
        c2.append_barrier();
        c2.append_asap(Gate::h(2)).unwrap();
        assert_eq!(c2.depth(), 2);
        assert_eq!(c2.barriers(), &[1]);
    }

    #[test]
    fn depth_counts_non_empty_moments() {
        assert_eq!(Circuit::new(3).depth(), 0);
        // the four-qubit CNOT staircase with a central rotation: serial chain
        let mut c = Circuit::new(4);
        for g in [
            Gate::cnot(1, 2),
            Gate::cnot(2, 3),
            Gate::cnot(3, 4),
            Gate::rz(4, 0.3),
            Gate::cnot(3, 4),
            Gate::cnot(2, 3),
            Gate::cnot(1, 2),
        ] {
            c.append_asap(g).unwrap();
        }
        assert_eq!(c.depth(), 7);

        let mut m = Circuit::new(4);
        m.append_asap(Gate::cnot(1, 2)).unwrap();
        m.append_asap(Gate::cnot(3, 4)).unwrap();
        assert_eq!(m.depth(), 1);
    }

    #[test]
    fn connectivity_validation() {
        let lin4 = build_topology(TopologyKind::Linear, 4).unwrap();
        let mut c = Circuit::new(4);
        c.append_asap(Gate::cnot(1, 3)).unwrap();
        assert_eq!(c.validate_connectivity(&lin4).unwrap().len(), 1);

        let mut ok = Circuit::new(4);
        ok.append_asap(Gate::cnot(1, 2)).unwrap();
        assert!(ok.validate_connectivity(&lin4).unwrap().is_empty());

        // both controls adjacent to the target is the legal Toffoli pattern
        let lin3 = build_topology(TopologyKind::Linear, 3).unwrap();
        let mut t = Circuit::new(3);
        t.append_asap(Gate::toff(1, 3, 2)).unwrap();
        assert!(t.validate_connectivity(&lin3).unwrap().is_empty());
        let mut bad = Circuit::new(3);
        bad.append_asap(Gate::toff(1, 2, 3)).unwrap();
        assert_eq!(bad.validate_connectivity(&lin3).unwrap().len(), 1);
    }

    #[test]
    fn size_mismatch_is_an_error() {
        let lin4 = build_topology(TopologyKind::Linear, 4).unwrap();
        let c = Circuit::new(3);
        assert!(matches!(
            c.validate_connectivity(&lin4),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn invert_adjoints_gates() {
        let mut c = Circuit::new(2);
        c.append_asap(Gate::cnot(1, 2)).unwrap();
        let inv = c.invert();
        assert_eq!(inv.moments()[0].gates[0], Gate::cnot(1, 2));

        let mut r = Circuit::new(1);
        r.append_asap(Gate::rz(1, 0.7)).unwrap();
        assert_eq!(r.invert().moments()[0].gates[0], Gate::rz(1, -0.7));
    }

    #[test]
    fn invert_is_an_involution() {
        let mut c = Circuit::new(3);
        c.append_asap(Gate::h(1)).unwrap();
        c.append_asap(Gate::cp(2, 1, 2)).unwrap();
        c.append_barrier();
        c.append_asap(Gate::swap(2, 3)).unwrap();
        c.append_asap(Gate::phase(1, 3, true)).unwrap();
        let back = c.invert().invert();
        assert_eq!(back.moments(), c.moments());
        assert_eq!(back.barriers(), c.barriers());
    }

    #[test]
    fn mapping_tracks_swaps_only() {
        let mut c = Circuit::new(2);
        c.append_asap(Gate::swap(1, 2)).unwrap();
        let m = MappingState::identity(2).track(&c);
        assert_eq!(m.logical_at(1), Some(2));
        assert_eq!(m.logical_at(2), Some(1));

        let mut nc = Circuit::new(2);
        nc.append_asap(Gate::cnot(1, 2)).unwrap();
        assert_eq!(
            MappingState::identity(2).track(&nc),
            MappingState::identity(2)
        );
    }

    #[test]
    fn mapping_composition_matches_permutation_oracle() {
        // brute-force oracle: compose transpositions on an array
        let swaps = [(1u32, 2u32), (2, 3), (1, 3), (2, 3)];
        let mut oracle: Vec<u32> = (1..=3).collect();
        for &(a, b) in &swaps {
            oracle.swap(a as usize - 1, b as usize - 1);
        }
        let mut c = Circuit::new(3);
        for &(a, b) in &swaps {
            c.append_asap(Gate::swap(a, b)).unwrap();
            c.append_barrier();
        }
        let m = MappingState::identity(3).track(&c);
        for q in 1..=3 {
            assert_eq!(m.logical_at(q), Some(oracle[q as usize - 1]));
        }
    }

    #[test]
    fn regions_reflect_barriers() {
        let mut c = Circuit::new(2);
        c.append_asap(Gate::h(1)).unwrap();
        c.append_barrier();
        c.append_asap(Gate::h(1)).unwrap();
        c.append_asap(Gate::h(2)).unwrap();
        assert_eq!(c.regions(), vec![0..1, 1..2]);
    }
}
