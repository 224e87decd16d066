//! Connectivity-aware quantum circuit scheduling.
//!
//! This crate builds depth-optimized schedules for three algorithmic
//! primitives — the quantum Fourier transform, parity-based rotations
//! (Jordan-Wigner strings), and the Grover diffusion operator — on four
//! hardware connectivity graphs (linear chain, ladder, square grid,
//! all-to-all). Schedules are expressed as moment-packed circuits, lowered
//! to a native gate set {H, single-qubit rotations/phases, CNOT}, depth
//! checked against closed-form predictions, and verified against dense
//! brute-force unitary oracles at desk scale.
//!
//! Physical qubit indices are 1-based throughout, and qubit 1 is the most
//! significant bit of a basis-state index.
//!
//! ```
//! use qsched::{schedule_qft, TopologyKind};
//! use qsched::decompose::lower_circuit;
//! use qsched::simulator::check_equivalence;
//!
//! let schedule = schedule_qft(TopologyKind::Linear, 4)?;
//! let lowered = lower_circuit(&schedule.circuit, true);
//! assert_eq!(lowered.depth(), 10 * 4 - 13);
//!
//! let (oracle, setup) = schedule.verification_oracle(1e-9)?;
//! assert!(check_equivalence(&lowered, &oracle, &setup)?.passed);
//! # Ok::<(), qsched::Error>(())
//! ```

pub mod analyzer;
pub mod circuit;
pub mod decompose;
pub mod error;
pub mod schedulers;
pub mod serialize;
pub mod simulator;
pub mod topology;

pub use circuit::{Circuit, Gate, GateKind, MappingState, Moment, Slot, Violation};
pub use error::{Error, Result};
pub use schedulers::{
    schedule_grover, schedule_jw, schedule_qft, AlgorithmKind, GroverSpec, ParitySpec,
    ScheduleResult,
};
pub use simulator::{check_equivalence, EquivalenceReport, StateVector, UnitaryMatrix};
pub use topology::{Topology, TopologyKind};
