use crate::topology::TopologyKind;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid shape for {kind:?} topology with n={n}: {constraint}")]
    InvalidShape {
        kind: TopologyKind,
        n: u32,
        constraint: &'static str,
    },
    #[error("qubit index {index} out of range 1..={n_phys}")]
    IndexOutOfRange { index: u32, n_phys: u32 },
    #[error("size mismatch: circuit acts on {circuit} qubits, topology has {topology}")]
    SizeMismatch { circuit: u32, topology: u32 },
    #[error("invalid gate: {0}")]
    InvalidGate(String),
    #[error("unsupported instance: {0}")]
    Unsupported(String),
    #[error("simulator cap exceeded: {0}")]
    SimulatorCap(String),
    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
