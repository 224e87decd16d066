//! JSON interchange formats.
//!
//! Circuit: `{"n_phys": N, "moments": [[gate, ...], ...], "barriers": [...]}`
//! with gates `{"kind": "H"|"X"|"Z"|"RZ"|"RY"|"P"|"CNOT"|"CP"|"SWAP"|"TOFF",
//! "operands": [q, ...], "angle"?: rad, "k"?: int, "conjugated"?: bool}`.
//! Angles serialize with full round-trip precision. The `barriers` array
//! records the parallel-block boundaries so a reloaded circuit lowers to
//! the same depths.
//!
//! Schedules add the topology, the physical-to-logical mappings (null =
//! ancilla slot), ancilla lists (`ancilla` enters |0⟩, `ancilla_ones`
//! enters |1⟩ for padded Grover trees) and the parameter record.

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate, GateKind, MappingState, Slot};
use crate::error::{Error, Result};
use crate::schedulers::{AlgorithmKind, ScheduleParams, ScheduleResult};
use crate::topology::{build_topology, TopologyKind};

#[derive(Debug, Serialize, Deserialize)]
struct GateDto {
    kind: String,
    operands: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    angle: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    conjugated: Option<bool>,
}

impl From<&Gate> for GateDto {
    fn from(g: &Gate) -> GateDto {
        let (angle, k, conjugated) = match g.kind {
            GateKind::Rz(t) | GateKind::Ry(t) => (Some(t), None, None),
            GateKind::Phase { k, conjugated } | GateKind::Cp { k, conjugated } => {
                (None, Some(k), Some(conjugated))
            }
            _ => (None, None, None),
        };
        GateDto {
            kind: g.kind.name().to_string(),
            operands: g.operands.clone(),
            angle,
            k,
            conjugated,
        }
    }
}

impl GateDto {
    fn into_gate(self) -> Result<Gate> {
        let angle = || {
            self.angle
                .ok_or_else(|| Error::Malformed(format!("{} needs an angle", self.kind)))
        };
        let phase_args = || -> Result<(u32, bool)> {
            Ok((
                self.k
                    .ok_or_else(|| Error::Malformed(format!("{} needs k", self.kind)))?,
                self.conjugated.unwrap_or(false),
            ))
        };
        let kind = match self.kind.as_str() {
            "H" => GateKind::H,
            "X" => GateKind::X,
            "Z" => GateKind::Z,
            "RZ" => GateKind::Rz(angle()?),
            "RY" => GateKind::Ry(angle()?),
            "P" => {
                let (k, conjugated) = phase_args()?;
                GateKind::Phase { k, conjugated }
            }
            "CNOT" => GateKind::Cnot,
            "CP" => {
                let (k, conjugated) = phase_args()?;
                GateKind::Cp { k, conjugated }
            }
            "SWAP" => GateKind::Swap,
            "TOFF" => GateKind::Toff,
            other => return Err(Error::Malformed(format!("unknown gate kind {other:?}"))),
        };
        Gate::new(kind, self.operands)
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct CircuitDto {
    n_phys: u32,
    moments: Vec<Vec<GateDto>>,
    #[serde(default)]
    barriers: Vec<usize>,
}

impl From<&Circuit> for CircuitDto {
    fn from(c: &Circuit) -> CircuitDto {
        CircuitDto {
            n_phys: c.n_phys(),
            moments: c
                .moments()
                .iter()
                .map(|m| m.gates.iter().map(GateDto::from).collect())
                .collect(),
            barriers: c.barriers().to_vec(),
        }
    }
}

impl CircuitDto {
    fn into_circuit(self) -> Result<Circuit> {
        let moments = self
            .moments
            .into_iter()
            .map(|gates| gates.into_iter().map(GateDto::into_gate).collect())
            .collect::<Result<Vec<Vec<Gate>>>>()?;
        Circuit::from_moments(self.n_phys, moments, self.barriers)
    }
}

pub fn circuit_to_json(c: &Circuit) -> String {
    serde_json::to_string_pretty(&CircuitDto::from(c)).expect("circuit serializes")
}

pub fn circuit_from_json(text: &str) -> Result<Circuit> {
    let dto: CircuitDto =
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    dto.into_circuit()
}

#[derive(Debug, Serialize, Deserialize)]
struct TopologyDto {
    kind: TopologyKind,
    n_phys: u32,
    edges: Vec<(u32, u32)>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ScheduleDto {
    algorithm: AlgorithmKind,
    topology: TopologyDto,
    params: ScheduleParams,
    initial_mapping: Vec<Option<u32>>,
    final_mapping: Vec<Option<u32>>,
    data_positions: Vec<u32>,
    ancilla: Vec<u32>,
    #[serde(default)]
    ancilla_ones: Vec<u32>,
    circuit: CircuitDto,
}

fn mapping_to_dto(m: &MappingState) -> Vec<Option<u32>> {
    (1..=m.n_phys()).map(|q| m.logical_at(q)).collect()
}

fn mapping_from_dto(slots: &[Option<u32>]) -> MappingState {
    let mut m = MappingState::ancillas(slots.len() as u32);
    for (i, slot) in slots.iter().enumerate() {
        if let Some(j) = slot {
            m.set(i as u32 + 1, Slot::Logical(*j));
        }
    }
    m
}

pub fn schedule_to_json(s: &ScheduleResult) -> String {
    let dto = ScheduleDto {
        algorithm: s.algorithm,
        topology: TopologyDto {
            kind: s.topology.kind(),
            n_phys: s.topology.n_phys(),
            edges: s.topology.edges().collect(),
        },
        params: s.params.clone(),
        initial_mapping: mapping_to_dto(&s.initial_mapping),
        final_mapping: mapping_to_dto(&s.final_mapping),
        data_positions: s.data_positions.clone(),
        ancilla: s.ancilla_zero.clone(),
        ancilla_ones: s.ancilla_one.clone(),
        circuit: CircuitDto::from(&s.circuit),
    };
    serde_json::to_string_pretty(&dto).expect("schedule serializes")
}

pub fn schedule_from_json(text: &str) -> Result<ScheduleResult> {
    let dto: ScheduleDto =
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    let topology = build_topology(dto.topology.kind, dto.topology.n_phys)?;
    let stored: Vec<(u32, u32)> = dto.topology.edges;
    let rebuilt: Vec<(u32, u32)> = topology.edges().collect();
    if stored != rebuilt {
        return Err(Error::Malformed(
            "topology edge list does not match its kind".into(),
        ));
    }
    Ok(ScheduleResult {
        algorithm: dto.algorithm,
        topology,
        circuit: dto.circuit.into_circuit()?,
        initial_mapping: mapping_from_dto(&dto.initial_mapping),
        final_mapping: mapping_from_dto(&dto.final_mapping),
        data_positions: dto.data_positions,
        ancilla_zero: dto.ancilla,
        ancilla_one: dto.ancilla_ones,
        params: dto.params,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::lower_circuit;
    use crate::schedulers::{schedule_grover, schedule_qft, GroverSpec};

    #[test]
    fn circuit_roundtrip_preserves_structure() {
        let s = schedule_qft(TopologyKind::Linear, 4).unwrap();
        let json = circuit_to_json(&s.circuit);
        let back = circuit_from_json(&json).unwrap();
        assert_eq!(back.moments(), s.circuit.moments());
        assert_eq!(back.barriers(), s.circuit.barriers());
        // a reloaded circuit lowers to the same depth
        assert_eq!(
            lower_circuit(&back, true).depth(),
            lower_circuit(&s.circuit, true).depth()
        );
    }

    #[test]
    fn serialization_is_deterministic() {
        let a = schedule_to_json(&schedule_qft(TopologyKind::Ladder, 6).unwrap());
        let b = schedule_to_json(&schedule_qft(TopologyKind::Ladder, 6).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn roundtrip_preserves_barrier_dependent_lowering() {
        // the grid diffusion's depth relies on block boundaries (the cleanup
        // SWAP packs into the Margolus tail); a reloaded schedule must lower
        // to the same depth
        let s = schedule_grover(TopologyKind::Grid, &GroverSpec::new(4).unwrap()).unwrap();
        let back = schedule_from_json(&schedule_to_json(&s)).unwrap();
        assert_eq!(lower_circuit(&back.circuit, false).depth(), 47);
    }

    #[test]
    fn schedule_roundtrip() {
        let s = schedule_grover(TopologyKind::Linear, &GroverSpec::new(3).unwrap()).unwrap();
        let json = schedule_to_json(&s);
        let back = schedule_from_json(&json).unwrap();
        assert_eq!(back.circuit.moments(), s.circuit.moments());
        assert_eq!(back.initial_mapping, s.initial_mapping);
        assert_eq!(back.final_mapping, s.final_mapping);
        assert_eq!(back.ancilla_zero, s.ancilla_zero);
        assert_eq!(back.ancilla_one, s.ancilla_one);
        assert_eq!(back.data_positions, s.data_positions);
    }

    #[test]
    fn angles_roundtrip_exactly() {
        let mut c = Circuit::new(1);
        c.append_asap(Gate::rz(1, crate::analyzer::DEFAULT_THETA))
            .unwrap();
        c.append_asap(Gate::ry(1, -1.0e-17)).unwrap();
        let back = circuit_from_json(&circuit_to_json(&c)).unwrap();
        assert_eq!(back.moments(), c.moments());
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        assert!(circuit_from_json("{").is_err());
        assert!(
            circuit_from_json(r#"{"n_phys":2,"moments":[[{"kind":"XX","operands":[1]}]]}"#)
                .is_err()
        );
        // overlapping operands within one moment
        assert!(circuit_from_json(
            r#"{"n_phys":2,"moments":[[{"kind":"H","operands":[1]},{"kind":"H","operands":[1]}]]}"#
        )
        .is_err());
    }
}
