//! The two-ended PARITY staircase.
//!
//! CNOT sweeps run inward from both ends of a segment in parallel and merge
//! at the center, leaving the subset parity on the central qubit. For subset
//! parity, a CNOT whose target position holds a non-member is replaced by a
//! SWAP (the accumulator moves inward, the non-member is ejected outward),
//! and gates before the first member from either end are elided entirely.

use crate::circuit::{Gate, MappingState};
use crate::error::{Error, Result};
use crate::schedulers::ParitySpec;

pub(crate) struct SweepOutcome {
    pub gates: Vec<Gate>,
    /// Physical index of the central accumulator position.
    pub accumulator: u32,
    /// Whether the accumulator actually holds member parity.
    pub live: bool,
}

/// Run the inward sweep on `segment` (consecutive entries must be coupled).
/// `live[i]` enters as "position i holds something that belongs in the
/// parity" and is propagated by the gates; `mapping` tracks SWAPs.
pub(crate) fn sweep(
    segment: &[u32],
    live: &mut [bool],
    mapping: &mut MappingState,
) -> SweepOutcome {
    let len = segment.len();
    debug_assert_eq!(live.len(), len);
    if len == 1 {
        return SweepOutcome {
            gates: Vec::new(),
            accumulator: segment[0],
            live: live[0],
        };
    }
    let m = len / 2;
    let k = len % 2;
    let mut gates = Vec::new();

    // one inward step from position a to position b (1-based within segment)
    macro_rules! step {
        ($a:expr, $b:expr) => {{
            let (a, b) = ($a - 1, $b - 1);
            if live[a] {
                if live[b] {
                    gates.push(Gate::cnot(segment[a], segment[b]));
                } else {
                    gates.push(Gate::swap(segment[a], segment[b]));
                    mapping.apply_swap(segment[a], segment[b]);
                    live[a] = false;
                    live[b] = true;
                }
            }
        }};
    }

    for i in 1..m {
        step!(i, i + 1);
        step!(len - i + 1, len - i);
    }
    step!(m + 1 + k, m + k);
    if k == 1 {
        step!(m, m + 1);
    }
    SweepOutcome {
        gates,
        accumulator: segment[m + k - 1],
        live: live[m + k - 1],
    }
}

/// The PARITY subroutine on a path segment: emits the staircase for the
/// given subset and returns the gates together with the accumulator's
/// physical index.
pub fn parity_subroutine(
    segment: &[u32],
    spec: &ParitySpec,
    mapping: &MappingState,
) -> Result<(Vec<Gate>, u32)> {
    if segment.is_empty() {
        return Err(Error::Unsupported(
            "parity segment must be non-empty".into(),
        ));
    }
    let mut live: Vec<bool> = segment
        .iter()
        .map(|&q| mapping.logical_at(q).is_some_and(|j| spec.is_member(j)))
        .collect();
    let mut work = mapping.clone();
    let outcome = sweep(segment, &mut live, &mut work);
    Ok((outcome.gates, outcome.accumulator))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_parity_n4_staircase() {
        let spec = ParitySpec::full(4, 0.5).unwrap();
        let mapping = MappingState::identity(4);
        let (gates, acc) = parity_subroutine(&[1, 2, 3, 4], &spec, &mapping).unwrap();
        assert_eq!(
            gates,
            vec![Gate::cnot(1, 2), Gate::cnot(4, 3), Gate::cnot(3, 2)]
        );
        assert_eq!(acc, 2);
        // packs to depth 2: the sweep pair in parallel, then the merge
        let c = crate::schedulers::circuit_from_regions(4, &[gates]).unwrap();
        assert_eq!(c.depth(), 2);
    }

    #[test]
    fn single_qubit_segment_is_empty() {
        let spec = ParitySpec::full(1, 0.1).unwrap();
        let (gates, acc) = parity_subroutine(&[1], &spec, &MappingState::identity(1)).unwrap();
        assert!(gates.is_empty());
        assert_eq!(acc, 1);
    }

    #[test]
    fn subset_structure_swaps_where_membership_is_zero() {
        // parity over logical {x1,x2,x5,x6,x8} on eight qubits
        let spec = ParitySpec::new(8, 0.5, vec![1, 2, 5, 6, 8]).unwrap();
        let mapping = MappingState::identity(8);
        let (gates, acc) =
            parity_subroutine(&(1..=8).collect::<Vec<_>>(), &spec, &mapping).unwrap();
        assert_eq!(
            gates,
            vec![
                Gate::cnot(1, 2),
                Gate::swap(8, 7),
                Gate::swap(2, 3),
                Gate::cnot(7, 6),
                Gate::swap(3, 4),
                Gate::cnot(6, 5),
                Gate::cnot(5, 4),
            ]
        );
        assert_eq!(acc, 4);
    }

    #[test]
    fn leading_edge_gates_between_uninvolved_qubits_are_elided() {
        // members sit in the middle: nothing happens at the chain ends
        let spec = ParitySpec::new(8, 0.5, vec![4, 5]).unwrap();
        let mapping = MappingState::identity(8);
        let (gates, _) = parity_subroutine(&(1..=8).collect::<Vec<_>>(), &spec, &mapping).unwrap();
        assert_eq!(gates, vec![Gate::cnot(5, 4)]);
    }
}
