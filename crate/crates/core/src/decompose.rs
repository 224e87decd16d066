//! Lowering to the native gate set {H, single-qubit rotations/phases, CNOT}.
//!
//! The controlled phase becomes 2 CNOTs and 3 single-qubit phases (depth 4),
//! a SWAP becomes 3 CNOTs, and a Toffoli becomes the Margolus construction
//! of 4 Y-rotations and 3 CNOTs (depth 7), which equals the canonical gate
//! up to a −1 phase on |101⟩. When a CP is immediately followed by a SWAP on
//! the same operand pair, the adjacent inner CNOTs cancel and the pair
//! lowers jointly to depth 5 instead of 7.

use std::f64::consts::FRAC_PI_4;

use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};

/// Whether a gate kind is in the native set.
pub fn is_native(kind: &GateKind) -> bool {
    !matches!(kind, GateKind::Cp { .. } | GateKind::Swap | GateKind::Toff)
}

/// CP_k(a,b) as CNOT(a,b); P†_{k+1}(b); CNOT(a,b); P_{k+1}(a) ∥ P_{k+1}(b).
pub fn lower_cp(k: u32, conjugated: bool, a: u32, b: u32) -> Result<Vec<Gate>> {
    if a == b {
        return Err(Error::InvalidGate("CP operands must differ".into()));
    }
    Ok(vec![
        Gate::cnot(a, b),
        Gate::phase(b, k + 1, !conjugated),
        Gate::cnot(a, b),
        Gate::phase(a, k + 1, conjugated),
        Gate::phase(b, k + 1, conjugated),
    ])
}

/// SWAP(a,b) as three alternating CNOTs.
pub fn lower_swap(a: u32, b: u32) -> Result<Vec<Gate>> {
    if a == b {
        return Err(Error::InvalidGate("SWAP operands must differ".into()));
    }
    Ok(vec![Gate::cnot(a, b), Gate::cnot(b, a), Gate::cnot(a, b)])
}

/// Margolus Toffoli: R(t); CNOT(b,t); R(t); CNOT(a,t); R†(t); CNOT(b,t);
/// R†(t), with R = exp(−iπ/8·Y). Equals TOFF(a,b,t) times a −1 phase on
/// the |a=1,b=0,t=1⟩ basis state.
pub fn lower_toffoli(a: u32, b: u32, t: u32) -> Result<Vec<Gate>> {
    if a == b || a == t || b == t {
        return Err(Error::InvalidGate("TOFF operands must be distinct".into()));
    }
    Ok(vec![
        Gate::ry(t, FRAC_PI_4),
        Gate::cnot(b, t),
        Gate::ry(t, FRAC_PI_4),
        Gate::cnot(a, t),
        Gate::ry(t, -FRAC_PI_4),
        Gate::cnot(b, t),
        Gate::ry(t, -FRAC_PI_4),
    ])
}

/// CP_k(a,b)·SWAP(a,b) with the inner CNOT pair cancelled: the phase layer
/// commutes to the front, leaving depth 5.
fn lower_fused_cp_swap(k: u32, conjugated: bool, a: u32, b: u32) -> Vec<Gate> {
    vec![
        Gate::phase(a, k + 1, conjugated),
        Gate::phase(b, k + 1, conjugated),
        Gate::cnot(a, b),
        Gate::phase(b, k + 1, !conjugated),
        Gate::cnot(b, a),
        Gate::cnot(a, b),
    ]
}

/// Replace every CP/SWAP/TOFF by its native sequence, re-packed ASAP within
/// the original barrier structure. With `fuse`, a CP immediately followed by
/// a SWAP on the same unordered pair (no intervening gate on either qubit)
/// is lowered jointly.
pub fn lower_circuit(c: &Circuit, fuse: bool) -> Circuit {
    let regions = c.regions();
    let mut flat: Vec<(usize, Gate)> = Vec::new();
    for (ri, range) in regions.iter().enumerate() {
        for moment in &c.moments()[range.clone()] {
            for gate in &moment.gates {
                flat.push((ri, gate.clone()));
            }
        }
    }

    let mut fused = vec![false; flat.len()];
    let mut consumed = vec![false; flat.len()];
    if fuse {
        for i in 0..flat.len() {
            let (_, ref g) = flat[i];
            if !matches!(g.kind, GateKind::Cp { .. }) {
                continue;
            }
            let (a, b) = (g.operands[0], g.operands[1]);
            for (j, (_, g2)) in flat.iter().enumerate().skip(i + 1) {
                if !g2.operands.contains(&a) && !g2.operands.contains(&b) {
                    continue;
                }
                let same_pair =
                    g2.operands.len() == 2 && g2.operands.contains(&a) && g2.operands.contains(&b);
                if g2.kind == GateKind::Swap && same_pair && !consumed[j] {
                    fused[i] = true;
                    consumed[j] = true;
                }
                break;
            }
        }
    }

    let mut out = Circuit::new(c.n_phys());
    let mut current_region = usize::MAX;
    for (i, (ri, gate)) in flat.iter().enumerate() {
        if consumed[i] {
            continue;
        }
        if *ri != current_region {
            out.append_barrier();
            current_region = *ri;
        }
        let seq: Vec<Gate> = match &gate.kind {
            GateKind::Cp { k, conjugated } if fused[i] => {
                lower_fused_cp_swap(*k, *conjugated, gate.operands[0], gate.operands[1])
            }
            GateKind::Cp { k, conjugated } => {
                lower_cp(*k, *conjugated, gate.operands[0], gate.operands[1]).expect("valid CP")
            }
            GateKind::Swap => lower_swap(gate.operands[0], gate.operands[1]).expect("valid SWAP"),
            GateKind::Toff => lower_toffoli(gate.operands[0], gate.operands[1], gate.operands[2])
                .expect("valid TOFF"),
            _ => vec![gate.clone()],
        };
        for g in seq {
            out.append_asap(g).expect("lowered gate in range");
        }
    }
    out
}
