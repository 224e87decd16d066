//! QFT schedules.
//!
//! Linear: a pipelined zig-zag — each outer iteration runs a parallel block
//! of controlled phases on alternating neighbor pairs, then SWAPs the same
//! pairs, so logical qubits stream past one another and every pair meets
//! exactly once. The descending half of the iteration sequence performs the
//! output bit reversal in flight. Ladder: the same dance on both columns at
//! once, interleaved with rung ("horizontal") phases. All-to-all: the linear
//! gate stream with SWAPs deleted and operands kept in logical position.
//!
//! Phase subscripts are taken from the live mapping (CP between logical
//! x_a and x_b carries k = |a−b|+1), and the Hadamard on each wire fires
//! exactly when its incoming phases are done.

use crate::circuit::MappingState;
use crate::circuit::{Gate, GateKind};
use crate::error::{Error, Result};
use crate::schedulers::{
    circuit_from_regions, AlgorithmKind, Region, ScheduleParams, ScheduleResult,
};
use crate::topology::{build_topology, TopologyKind};

pub(crate) fn schedule(topo: TopologyKind, n: u32) -> Result<ScheduleResult> {
    if n < 2 {
        return Err(Error::Unsupported("QFT schedules need n >= 2".into()));
    }
    match topo {
        TopologyKind::Linear => linear(n),
        TopologyKind::Ladder => ladder(n),
        TopologyKind::AllToAll => all_to_all(n),
        TopologyKind::Grid => Err(Error::Unsupported(
            "no grid QFT schedule: the ladder schedule is already near the all-to-all bound".into(),
        )),
    }
}

fn cp_between(f: &MappingState, a: u32, b: u32) -> Gate {
    let (la, lb) = (f.logical_at(a).unwrap(), f.logical_at(b).unwrap());
    let k = la.abs_diff(lb) + 1;
    Gate::cp(k, a, b)
}

/// Outer iteration sequence {2,…,n,…,2} shared by the linear and
/// all-to-all schedules.
fn linear_iterations(n: u32) -> impl Iterator<Item = u32> {
    (2..=n).chain((2..n).rev())
}

fn finish(
    topo: TopologyKind,
    n_phys: u32,
    n: u32,
    regions: Vec<Region>,
    initial: MappingState,
) -> Result<ScheduleResult> {
    let topology = build_topology(topo, n_phys)?;
    let circuit = circuit_from_regions(n_phys, &regions)?;
    debug_assert!(circuit.validate_connectivity(&topology)?.is_empty());
    let final_mapping = initial.track(&circuit);
    let data_positions = (1..=n)
        .map(|j| initial.position_of(j).expect("data present"))
        .collect();
    Ok(ScheduleResult {
        algorithm: AlgorithmKind::Qft,
        topology,
        circuit,
        initial_mapping: initial.clone(),
        final_mapping,
        data_positions,
        ancilla_zero: Vec::new(),
        ancilla_one: Vec::new(),
        params: ScheduleParams {
            n,
            padded_n: n,
            theta: None,
            subset: None,
        },
    })
}

fn linear(n: u32) -> Result<ScheduleResult> {
    let mut f = MappingState::identity(n);
    let mut regions: Vec<Region> = vec![vec![Gate::h(1)]];
    for i in linear_iterations(n) {
        let mut cps = Vec::new();
        let mut j = i;
        while j >= 2 {
            cps.push(cp_between(&f, j, j - 1));
            j -= 2;
            if j == 1 {
                cps.push(Gate::h(1));
            }
        }
        let mut swaps = Vec::new();
        let mut j = i;
        while j >= 2 {
            swaps.push(Gate::swap(j, j - 1));
            f.apply_swap(j, j - 1);
            j -= 2;
        }
        regions.push(cps);
        regions.push(swaps);
    }
    regions.push(vec![Gate::h(1)]);
    finish(
        TopologyKind::Linear,
        n,
        n,
        regions,
        MappingState::identity(n),
    )
}

fn all_to_all(n: u32) -> Result<ScheduleResult> {
    // trace the linear schedule's mapping, but emit gates at the (static)
    // logical positions and drop every SWAP
    let mut f = MappingState::identity(n);
    let mut regions: Vec<Region> = vec![vec![Gate::h(1)]];
    for i in linear_iterations(n) {
        let mut cps = Vec::new();
        let mut j = i;
        while j >= 2 {
            let (la, lb) = (f.logical_at(j).unwrap(), f.logical_at(j - 1).unwrap());
            cps.push(Gate::cp(la.abs_diff(lb) + 1, la, lb));
            j -= 2;
            if j == 1 {
                cps.push(Gate::h(f.logical_at(1).unwrap()));
            }
        }
        let mut j = i;
        while j >= 2 {
            f.apply_swap(j, j - 1);
            j -= 2;
        }
        regions.push(cps);
    }
    regions.push(vec![Gate::h(f.logical_at(1).unwrap())]);
    finish(
        TopologyKind::AllToAll,
        n,
        n,
        regions,
        MappingState::identity(n),
    )
}

#[allow(clippy::while_let_loop)]
fn ladder(n: u32) -> Result<ScheduleResult> {
    if n % 2 != 0 {
        return Err(Error::Unsupported("ladder QFT needs an even n".into()));
    }
    let mut f = MappingState::identity(n);
    let mut regions: Vec<Region> = vec![vec![Gate::h(1)]];
    // ascending odd iterations, then descending even ones: n−1 total
    let iterations: Vec<u32> = (1..=n.saturating_sub(3))
        .step_by(2)
        .chain((2..=n).rev().step_by(2))
        .collect();
    for &i in &iterations {
        let desc = i % 2 == 0;
        let rung = |j: u32| if desc { j - 1 } else { j + 1 };
        let rail = |j: u32| if desc { j.checked_sub(2) } else { Some(j + 2) };

        let mut horiz = Vec::new();
        let mut j = i;
        loop {
            horiz.push(cp_between(&f, j, rung(j)));
            if j < 3 {
                break;
            }
            j -= 2;
        }

        let mut vert = Vec::new();
        let mut j = i as i64;
        loop {
            let Some(b) = rail(j as u32).filter(|&b| (1..=n).contains(&b) && j >= 1) else {
                break;
            };
            let k = (j + 1) % 2;
            vert.push(cp_between(&f, j as u32, b));
            j -= 1 + 2 * k;
            if j < 1 {
                break;
            }
        }
        // Hadamard on the top qubit of the other column
        let h_target = ((j + 1).rem_euclid(2) + 1) as u32;
        vert.push(Gate::h(h_target));

        let mut swaps = Vec::new();
        for g in &vert {
            if let GateKind::Cp { .. } = g.kind {
                let (a, b) = (g.operands[0], g.operands[1]);
                swaps.push(Gate::swap(a, b));
                f.apply_swap(a, b);
            }
        }
        regions.push(horiz);
        regions.push(vert);
        regions.push(swaps);
    }
    finish(
        TopologyKind::Ladder,
        n,
        n,
        regions,
        MappingState::identity(n),
    )
}

/// Append a SWAP network that restores the QFT output to natural order
/// (output bit m on physical qubit m): an odd-even transposition sort along
/// a Hamiltonian path of the topology. The schedules themselves only report
/// the output permutation.
pub fn restore_output_order(s: &mut ScheduleResult) -> Result<()> {
    if s.algorithm != AlgorithmKind::Qft {
        return Err(Error::Unsupported(
            "output-order restoration applies to QFT schedules".into(),
        ));
    }
    let n = s.params.n;
    let path: Vec<u32> = match s.topology.kind() {
        TopologyKind::Linear | TopologyKind::AllToAll => (1..=n).collect(),
        TopologyKind::Ladder => ladder_snake(n),
        TopologyKind::Grid => unreachable!("no grid QFT schedule"),
    };
    let mut slot_of = vec![0usize; n as usize + 1];
    for (i, &q) in path.iter().enumerate() {
        slot_of[q as usize] = i;
    }
    // the value at physical q is output bit n+1−f(q); it belongs at slot_of
    // of its own index
    let mut key: Vec<usize> = path
        .iter()
        .map(|&q| {
            let wire = s.final_mapping.logical_at(q).expect("data qubit");
            slot_of[(n + 1 - wire) as usize]
        })
        .collect();
    let mut parity = 0;
    let mut idle_passes = 0;
    while idle_passes < 2 {
        let mut layer = Vec::new();
        let mut i = parity;
        while i + 1 < key.len() {
            if key[i] > key[i + 1] {
                key.swap(i, i + 1);
                layer.push(Gate::swap(path[i], path[i + 1]));
            }
            i += 2;
        }
        if layer.is_empty() {
            idle_passes += 1;
        } else {
            idle_passes = 0;
            s.circuit.append_barrier();
            for g in layer {
                s.circuit.append_asap(g)?;
            }
        }
        parity = 1 - parity;
    }
    s.final_mapping = s.initial_mapping.track(&s.circuit);
    Ok(())
}

/// Hamiltonian path through the interleaved ladder: rung, rail, rung, …
fn ladder_snake(n: u32) -> Vec<u32> {
    let mut path = Vec::with_capacity(n as usize);
    for k in 1..=n / 2 {
        if k % 2 == 1 {
            path.push(2 * k - 1);
            path.push(2 * k);
        } else {
            path.push(2 * k);
            path.push(2 * k - 1);
        }
    }
    path
}
