//! Grover diffusion schedules.
//!
//! The n-way AND is computed up a binary tree of Toffolis; on constrained
//! topologies the tree is linearized in order, SWAP chains bring the two
//! subtree results next to the fixed target before each Toffoli layer, a Z
//! fires on the root, and the whole ascent is mirrored so ancillas return
//! to |0⟩ and the Margolus phases cancel pairwise.
//!
//! Linear: the in-order tree on 2n−1 qubits (data at odd positions).
//! Ladder: a rung Toffoli layer folds the data column pairwise into the
//! ancilla column, which then runs the linear schedule. Grid: every column
//! runs the AND with its result delivered onto an inserted center-ancilla
//! row, and the ladder schedule runs on the center two rows. All-to-all: a
//! balanced Toffoli tree. Non-power-of-two n is padded with |1⟩ leaves.

use crate::circuit::{Gate, MappingState, Slot};
use crate::error::{Error, Result};
use crate::schedulers::{
    circuit_from_regions, invert_regions, AlgorithmKind, GroverSpec, Region, ScheduleParams,
    ScheduleResult,
};
use crate::topology::{build_topology, TopologyKind};

/// Ascending half of the in-order tree AND on a path of 2P−1 cells,
/// P = 2^k leaves at odd positions. One region per parallel block.
fn and_ascent(cells: &[u32]) -> Vec<Region> {
    let p = (cells.len() + 1) as u32 / 2;
    let k = p.trailing_zeros();
    let mut regions = Vec::new();
    for i in 1..=k {
        for m in (2..=1u32 << (i - 1)).rev() {
            let mut layer = Vec::new();
            for j in 0..1u32 << (k - i) {
                let c = (1 + 2 * j) << i;
                layer.push(Gate::swap(
                    cells[(c - m) as usize - 1],
                    cells[(c - m + 1) as usize - 1],
                ));
                layer.push(Gate::swap(
                    cells[(c + m) as usize - 1],
                    cells[(c + m - 1) as usize - 1],
                ));
            }
            regions.push(layer);
        }
        let mut toffs = Vec::new();
        for j in 0..1u32 << (k - i) {
            let c = (1 + 2 * j) << i;
            toffs.push(Gate::toff(
                cells[(c - 1) as usize - 1],
                cells[(c + 1) as usize - 1],
                cells[c as usize - 1],
            ));
        }
        regions.push(toffs);
    }
    regions
}

/// The AND subroutine on a 2P-cell segment (data at odd positions): the
/// tree ascent over the first 2P−1 cells. Returns the regions and the cell
/// holding the P-way AND.
pub fn and_subroutine(segment: &[u32]) -> Result<(Vec<Region>, u32)> {
    let len = segment.len() as u32;
    if len < 4 || len % 2 != 0 || !(len / 2).is_power_of_two() {
        return Err(Error::Unsupported(format!(
            "AND segment length must be 2·2^k with k >= 1, got {len}"
        )));
    }
    let p = len / 2;
    Ok((
        and_ascent(&segment[..len as usize - 1]),
        segment[p as usize - 1],
    ))
}

/// Full diffusion on a path of 2P−1 cells: ascent, Z on the root, descent.
fn linear_core(cells: &[u32]) -> Vec<Region> {
    if cells.len() == 1 {
        return vec![vec![Gate::z(cells[0])]];
    }
    let p = cells.len().div_ceil(2);
    let asc = and_ascent(cells);
    let mut regions = asc.clone();
    regions.push(vec![Gate::z(cells[p - 1])]);
    regions.extend(invert_regions(&asc));
    regions
}

/// Full diffusion on a ladder: rung t pairs data_cells[t] with anc_cells[t];
/// consecutive cells within each slice must be coupled (the rails).
fn ladder_core(data_cells: &[u32], anc_cells: &[u32]) -> Vec<Region> {
    let p = data_cells.len();
    debug_assert!(p >= 2 && p.is_power_of_two());
    // ferry every second data qubit into the ancilla column so both
    // controls of each rung Toffoli sit next to its target
    let ferry: Region = (1..p)
        .step_by(2)
        .map(|t| Gate::swap(data_cells[t], anc_cells[t]))
        .collect();
    let toffs: Region = (0..p)
        .step_by(2)
        .map(|t| Gate::toff(data_cells[t], anc_cells[t + 1], anc_cells[t]))
        .collect();
    let pre = vec![ferry.clone(), toffs, ferry];
    let inner = linear_core(&anc_cells[..(p - 1).max(1)]);
    let mut regions = pre.clone();
    regions.extend(inner);
    regions.extend(invert_regions(&pre));
    regions
}

pub(crate) fn schedule(topo: TopologyKind, spec: &GroverSpec) -> Result<ScheduleResult> {
    match topo {
        TopologyKind::Linear => linear(spec),
        TopologyKind::Ladder => ladder(spec),
        TopologyKind::Grid => grid(spec),
        TopologyKind::AllToAll => all_to_all(spec),
    }
}

struct Layout {
    data: Vec<u32>,
    pads: Vec<u32>,
    zeros: Vec<u32>,
}

fn finish(
    topo: TopologyKind,
    n_phys: u32,
    spec: &GroverSpec,
    padded: u32,
    regions: Vec<Region>,
    layout: Layout,
) -> Result<ScheduleResult> {
    let topology = build_topology(topo, n_phys)?;
    let circuit = circuit_from_regions(n_phys, &regions)?;
    debug_assert!(circuit.validate_connectivity(&topology)?.is_empty());
    let mut initial = MappingState::ancillas(n_phys);
    for (idx, &q) in layout.data.iter().enumerate() {
        initial.set(q, Slot::Logical(idx as u32 + 1));
    }
    let final_mapping = initial.track(&circuit);
    debug_assert_eq!(final_mapping, initial);
    Ok(ScheduleResult {
        algorithm: AlgorithmKind::GroverDiffusion,
        topology,
        circuit,
        initial_mapping: initial.clone(),
        final_mapping,
        data_positions: layout.data,
        ancilla_zero: layout.zeros,
        ancilla_one: layout.pads,
        params: ScheduleParams {
            n: spec.n(),
            padded_n: padded,
            theta: None,
            subset: None,
        },
    })
}

fn linear(spec: &GroverSpec) -> Result<ScheduleResult> {
    let p = spec.padded_n();
    let n_phys = 2 * p - 1;
    let cells: Vec<u32> = (1..=n_phys).collect();
    let regions = linear_core(&cells);
    let leaves: Vec<u32> = (1..=p).map(|i| 2 * i - 1).collect();
    let layout = Layout {
        data: leaves[..spec.n() as usize].to_vec(),
        pads: leaves[spec.n() as usize..].to_vec(),
        zeros: (1..=p - 1).map(|i| 2 * i).collect(),
    };
    finish(TopologyKind::Linear, n_phys, spec, p, regions, layout)
}

fn ladder(spec: &GroverSpec) -> Result<ScheduleResult> {
    let p = spec.padded_n();
    let n_phys = 2 * p;
    let data_cells: Vec<u32> = (1..=p).map(|t| 2 * t - 1).collect();
    let anc_cells: Vec<u32> = (1..=p).map(|t| 2 * t).collect();
    let regions = ladder_core(&data_cells, &anc_cells);
    let layout = Layout {
        data: data_cells[..spec.n() as usize].to_vec(),
        pads: data_cells[spec.n() as usize..].to_vec(),
        zeros: anc_cells,
    };
    finish(TopologyKind::Ladder, n_phys, spec, p, regions, layout)
}

fn all_to_all(spec: &GroverSpec) -> Result<ScheduleResult> {
    let p = spec.padded_n();
    let n_phys = 2 * p - 1;
    let mut active: Vec<u32> = (1..=p).collect();
    let mut next_anc = p + 1;
    let mut asc: Vec<Region> = Vec::new();
    while active.len() > 1 {
        let mut layer = Vec::new();
        let mut next = Vec::new();
        for pair in active.chunks_exact(2) {
            layer.push(Gate::toff(pair[0], pair[1], next_anc));
            next.push(next_anc);
            next_anc += 1;
        }
        asc.push(layer);
        active = next;
    }
    let mut regions = asc.clone();
    regions.push(vec![Gate::z(active[0])]);
    regions.extend(invert_regions(&asc));
    let layout = Layout {
        data: (1..=spec.n()).collect(),
        pads: (spec.n() + 1..=p).collect(),
        zeros: (p + 1..=n_phys).collect(),
    };
    finish(TopologyKind::AllToAll, n_phys, spec, p, regions, layout)
}

/// Grid schedule. The algorithm lives on a 2s×s rectangle (s = √padded_n):
/// each grid column holds one in-order AND tree with an ancilla row
/// inserted below the tree root (rows 1..s are tree positions 1..s, row
/// s+1 is the inserted |0⟩ row, rows s+2..2s are tree positions s+1..2s−1).
/// The rectangle is embedded in the first s columns of the smallest square
/// grid topology that contains it (side 2s).
fn grid(spec: &GroverSpec) -> Result<ScheduleResult> {
    let p = spec.padded_n_grid();
    let s = crate::topology::isqrt(p);
    let k = s.trailing_zeros();
    let side = 2 * s;
    let n_phys = side * side;
    let cell = |r: u32, c: u32| (r - 1) * side + c;
    let rowof = |pos: u32| if pos <= s { pos } else { pos + 1 };

    let mut asc: Vec<Region> = Vec::new();
    for i in 1..=k {
        for m in (2..=1u32 << (i - 1)).rev() {
            let mut layer = Vec::new();
            for col in 1..=s {
                for j in 0..1u32 << (k - i) {
                    let c0 = (1 + 2 * j) << i;
                    layer.push(Gate::swap(
                        cell(rowof(c0 - m), col),
                        cell(rowof(c0 - m + 1), col),
                    ));
                    layer.push(Gate::swap(
                        cell(rowof(c0 + m), col),
                        cell(rowof(c0 + m - 1), col),
                    ));
                }
            }
            asc.push(layer);
        }
        if i == k {
            // ferry the left subtree result into the (never-targeted) root
            // ancilla cell, freeing row s−1 for the displaced |0⟩
            asc.push(
                (1..=s)
                    .map(|col| Gate::swap(cell(s - 1, col), cell(s, col)))
                    .collect(),
            );
            let mut top = Vec::new();
            for col in 1..=s {
                top.push(Gate::toff(cell(s, col), cell(s + 2, col), cell(s + 1, col)));
            }
            // cleanup returns the displaced |0⟩ to row s; its lowered CNOTs
            // pack into the tail of the Margolus sequence, so the block
            // still lowers to depth 7
            for col in 1..=s {
                top.push(Gate::swap(cell(s - 1, col), cell(s, col)));
            }
            asc.push(top);
        } else {
            let mut toffs = Vec::new();
            for col in 1..=s {
                for j in 0..1u32 << (k - i) {
                    let c0 = (1 + 2 * j) << i;
                    toffs.push(Gate::toff(
                        cell(rowof(c0 - 1), col),
                        cell(rowof(c0 + 1), col),
                        cell(rowof(c0), col),
                    ));
                }
            }
            asc.push(toffs);
        }
    }

    // diffusion over the column results (row s+1) with the fresh |0⟩ row s
    let data_cells: Vec<u32> = (1..=s).map(|col| cell(s + 1, col)).collect();
    let anc_cells: Vec<u32> = (1..=s).map(|col| cell(s, col)).collect();
    let mut regions = asc.clone();
    regions.extend(ladder_core(&data_cells, &anc_cells));
    regions.extend(invert_regions(&asc));

    // column-major data assignment: logical (c−1)s+i at leaf i of column c
    let mut leaves = Vec::new();
    let mut zeros = Vec::new();
    for col in 1..=s {
        for i in 1..=s {
            leaves.push(cell(rowof(2 * i - 1), col));
        }
        for pos in 1..=s - 1 {
            zeros.push(cell(rowof(2 * pos), col));
        }
        zeros.push(cell(s + 1, col));
    }
    let layout = Layout {
        data: leaves[..spec.n() as usize].to_vec(),
        pads: leaves[spec.n() as usize..].to_vec(),
        zeros,
    };
    finish(TopologyKind::Grid, n_phys, spec, p, regions, layout)
}
