//! Parity-rotation (Jordan-Wigner string) schedules.
//!
//! Linear: the two-ended PARITY staircase, RZ on the central accumulator,
//! mirror. Ladder: PARITY on both columns in parallel, a rung CNOT merging
//! the column accumulators, RZ, mirror. Grid: PARITY down every column into
//! the central row, PARITY along that row, RZ, mirrors. All-to-all: a
//! balanced CNOT fan-in tree over the members, RZ at the root, fan-out.
//!
//! Non-member qubits (including padding slots on the ladder and grid) are
//! only ever moved by SWAPs that the mirror undoes.

use crate::circuit::{Gate, MappingState, Slot};
use crate::error::{Error, Result};
use crate::schedulers::parity::{sweep, SweepOutcome};
use crate::schedulers::{
    circuit_from_regions, invert_regions, AlgorithmKind, ParitySpec, Region, ScheduleParams,
    ScheduleResult,
};
use crate::topology::{build_topology, isqrt, pad_size, TopologyKind};

pub(crate) fn schedule(
    topo: TopologyKind,
    spec: &ParitySpec,
    initial: Option<MappingState>,
) -> Result<ScheduleResult> {
    let n = spec.n();
    let n_phys = match topo {
        TopologyKind::Linear | TopologyKind::AllToAll => n,
        TopologyKind::Ladder => pad_size(TopologyKind::Ladder, n.max(2)),
        TopologyKind::Grid => pad_size(TopologyKind::Grid, n),
    };
    // padding slots ride along as extra non-member logicals
    let mapping = match initial {
        Some(m) => {
            if m.n_phys() != n_phys {
                return Err(Error::SizeMismatch {
                    circuit: m.n_phys(),
                    topology: n_phys,
                });
            }
            m
        }
        None => MappingState::identity(n_phys),
    };
    let mut f = mapping.clone();
    let live_of = |f: &MappingState, q: u32| f.logical_at(q).is_some_and(|j| spec.is_member(j));

    let half: Vec<Region>;
    let rotation: Gate;
    match topo {
        TopologyKind::Linear | TopologyKind::AllToAll if n == 1 => {
            let q = f.position_of(1).expect("data present");
            half = Vec::new();
            rotation = Gate::rz(q, spec.theta());
        }
        TopologyKind::Linear => {
            let segment: Vec<u32> = (1..=n_phys).collect();
            let mut live: Vec<bool> = segment.iter().map(|&q| live_of(&f, q)).collect();
            let out = sweep(&segment, &mut live, &mut f);
            debug_assert!(out.live);
            half = vec![out.gates];
            rotation = Gate::rz(out.accumulator, spec.theta());
        }
        TopologyKind::Ladder => {
            let col1: Vec<u32> = (1..=n_phys).step_by(2).collect();
            let col2: Vec<u32> = (2..=n_phys).step_by(2).collect();
            let mut run_col = |col: &[u32]| -> SweepOutcome {
                let mut live: Vec<bool> = col.iter().map(|&q| live_of(&f, q)).collect();
                sweep(col, &mut live, &mut f)
            };
            let o1 = run_col(&col1);
            let o2 = run_col(&col2);
            let mut regions = Vec::new();
            let mut sweep_gates = o1.gates;
            sweep_gates.extend(o2.gates);
            regions.push(sweep_gates);
            // merge the column accumulators across their shared rung
            let rot_at = match (o1.live, o2.live) {
                (true, true) => {
                    debug_assert_eq!(o1.accumulator + 1, o2.accumulator);
                    regions.push(vec![Gate::cnot(o1.accumulator, o2.accumulator)]);
                    o2.accumulator
                }
                (true, false) => o1.accumulator,
                (false, true) => o2.accumulator,
                (false, false) => return Err(Error::Unsupported("parity subset is empty".into())),
            };
            half = regions;
            rotation = Gate::rz(rot_at, spec.theta());
        }
        TopologyKind::Grid => {
            let s = isqrt(n_phys);
            let mut col_gates = Vec::new();
            let mut row_live = Vec::with_capacity(s as usize);
            let center_row_base = s * (s.div_ceil(2) - 1);
            for c in 1..=s {
                let col: Vec<u32> = (0..s).map(|r| r * s + c).collect();
                let mut live: Vec<bool> = col.iter().map(|&q| live_of(&f, q)).collect();
                let out = sweep(&col, &mut live, &mut f);
                debug_assert_eq!(out.accumulator, center_row_base + c);
                col_gates.extend(out.gates);
                row_live.push(out.live);
            }
            let row: Vec<u32> = (1..=s).map(|c| center_row_base + c).collect();
            let out = sweep(&row, &mut row_live, &mut f);
            if !out.live {
                return Err(Error::Unsupported("parity subset is empty".into()));
            }
            let mut regions = Vec::new();
            if !col_gates.is_empty() {
                regions.push(col_gates);
            }
            if !out.gates.is_empty() {
                regions.push(out.gates);
            }
            half = regions;
            rotation = Gate::rz(out.accumulator, spec.theta());
        }
        TopologyKind::AllToAll => {
            let mut active: Vec<u32> = spec
                .members()
                .iter()
                .map(|&j| f.position_of(j).expect("member present"))
                .collect();
            active.sort_unstable();
            let mut layers: Vec<Region> = Vec::new();
            while active.len() > 1 {
                let mut layer = Vec::new();
                let mut next = Vec::new();
                let mut it = active.chunks_exact(2);
                for pair in &mut it {
                    layer.push(Gate::cnot(pair[1], pair[0]));
                    next.push(pair[0]);
                }
                next.extend(it.remainder());
                layers.push(layer);
                active = next;
            }
            rotation = Gate::rz(active[0], spec.theta());
            half = layers;
        }
    }

    let mut regions = half.clone();
    regions.push(vec![rotation]);
    regions.extend(invert_regions(&half));

    let topology = build_topology(topo, n_phys)?;
    let circuit = circuit_from_regions(n_phys, &regions)?;
    debug_assert!(circuit.validate_connectivity(&topology)?.is_empty());
    let final_mapping = mapping.track(&circuit);
    debug_assert_eq!(final_mapping, mapping);
    let data_positions = (1..=n)
        .map(|j| mapping.position_of(j).expect("data present"))
        .collect();
    Ok(ScheduleResult {
        algorithm: AlgorithmKind::JordanWigner,
        topology,
        circuit,
        initial_mapping: mapping.clone(),
        final_mapping,
        data_positions,
        ancilla_zero: Vec::new(),
        ancilla_one: Vec::new(),
        params: ScheduleParams {
            n,
            padded_n: n_phys,
            theta: Some(spec.theta()),
            subset: Some(spec.members().to_vec()),
        },
    })
}

/// Schedule with a caller-chosen initial physical-to-logical mapping; the
/// mapping must be a bijection over 1..=n_phys (padding slots included).
pub fn schedule_jw_with_mapping(
    topo: TopologyKind,
    spec: &ParitySpec,
    initial: &MappingState,
) -> Result<ScheduleResult> {
    for q in 1..=initial.n_phys() {
        if initial.slot(q) == Slot::Ancilla {
            return Err(Error::Malformed(
                "JW mappings must assign a logical label to every slot".into(),
            ));
        }
    }
    schedule(topo, spec, Some(initial.clone()))
}
