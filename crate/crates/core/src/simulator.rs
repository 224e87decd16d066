//! Dense statevector simulation and unitary oracles.
//!
//! Basis convention: physical qubit 1 is the most significant bit of the
//! basis-state index, so |q1 q2 … qn⟩ has index Σ q_i·2^(n−i). Oracles are
//! closed-form constructions independent of the schedulers and are the
//! reference side of every equivalence check.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};

/// Dense-matrix cap for [`unitary_of`]; statevector runs go further.
pub const DENSE_QUBIT_CAP: u32 = 12;
/// Statevector cap for [`run`] and column-streamed equivalence checks.
pub const STATEVECTOR_QUBIT_CAP: u32 = 20;

#[derive(Debug, Clone)]
pub struct StateVector {
    n_qubits: u32,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Computational basis state |index⟩.
    pub fn basis(n_qubits: u32, index: usize) -> StateVector {
        let mut amplitudes = vec![Complex64::ZERO; 1 << n_qubits];
        amplitudes[index] = Complex64::ONE;
        StateVector {
            n_qubits,
            amplitudes,
        }
    }

    pub fn zero(n_qubits: u32) -> StateVector {
        StateVector::basis(n_qubits, 0)
    }

    pub fn n_qubits(&self) -> u32 {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    fn shift(&self, q: u32) -> u32 {
        self.n_qubits - q
    }

    /// Apply one gate in place per its defining action on basis states.
    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        for &q in &gate.operands {
            if q < 1 || q > self.n_qubits {
                return Err(Error::IndexOutOfRange {
                    index: q,
                    n_phys: self.n_qubits,
                });
            }
        }
        let n = self.amplitudes.len();
        match &gate.kind {
            GateKind::H => {
                let m = 1usize << self.shift(gate.operands[0]);
                for i in 0..n {
                    if i & m == 0 {
                        let (a, b) = (self.amplitudes[i], self.amplitudes[i | m]);
                        let s = std::f64::consts::FRAC_1_SQRT_2;
                        self.amplitudes[i] = (a + b) * s;
                        self.amplitudes[i | m] = (a - b) * s;
                    }
                }
            }
            GateKind::X => {
                let m = 1usize << self.shift(gate.operands[0]);
                for i in 0..n {
                    if i & m == 0 {
                        self.amplitudes.swap(i, i | m);
                    }
                }
            }
            GateKind::Z => {
                let m = 1usize << self.shift(gate.operands[0]);
                for i in 0..n {
                    if i & m != 0 {
                        self.amplitudes[i] = -self.amplitudes[i];
                    }
                }
            }
            GateKind::Rz(theta) => {
                let m = 1usize << self.shift(gate.operands[0]);
                let plus = Complex64::from_polar(1.0, theta / 2.0);
                let minus = Complex64::from_polar(1.0, -theta / 2.0);
                for i in 0..n {
                    self.amplitudes[i] *= if i & m != 0 { plus } else { minus };
                }
            }
            GateKind::Ry(theta) => {
                let m = 1usize << self.shift(gate.operands[0]);
                let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
                for i in 0..n {
                    if i & m == 0 {
                        let (a, b) = (self.amplitudes[i], self.amplitudes[i | m]);
                        self.amplitudes[i] = c * a - s * b;
                        self.amplitudes[i | m] = s * a + c * b;
                    }
                }
            }
            GateKind::Phase { k, conjugated } => {
                let m = 1usize << self.shift(gate.operands[0]);
                let sign = if *conjugated { -1.0 } else { 1.0 };
                let ph = Complex64::from_polar(1.0, sign * 2.0 * PI / (1u64 << k) as f64);
                for i in 0..n {
                    if i & m != 0 {
                        self.amplitudes[i] *= ph;
                    }
                }
            }
            GateKind::Cnot => {
                let mc = 1usize << self.shift(gate.operands[0]);
                let mt = 1usize << self.shift(gate.operands[1]);
                for i in 0..n {
                    if i & mc != 0 && i & mt == 0 {
                        self.amplitudes.swap(i, i | mt);
                    }
                }
            }
            GateKind::Cp { k, conjugated } => {
                let ma = 1usize << self.shift(gate.operands[0]);
                let mb = 1usize << self.shift(gate.operands[1]);
                let sign = if *conjugated { -1.0 } else { 1.0 };
                let ph = Complex64::from_polar(1.0, sign * 2.0 * PI / (1u64 << k) as f64);
                for i in 0..n {
                    if i & ma != 0 && i & mb != 0 {
                        self.amplitudes[i] *= ph;
                    }
                }
            }
            GateKind::Swap => {
                let ma = 1usize << self.shift(gate.operands[0]);
                let mb = 1usize << self.shift(gate.operands[1]);
                for i in 0..n {
                    if i & ma != 0 && i & mb == 0 {
                        self.amplitudes.swap(i, (i ^ ma) | mb);
                    }
                }
            }
            GateKind::Toff => {
                let ma = 1usize << self.shift(gate.operands[0]);
                let mb = 1usize << self.shift(gate.operands[1]);
                let mt = 1usize << self.shift(gate.operands[2]);
                for i in 0..n {
                    if i & ma != 0 && i & mb != 0 && i & mt == 0 {
                        self.amplitudes.swap(i, i | mt);
                    }
                }
            }
        }
        Ok(())
    }
}

/// Run a circuit moment by moment on an initial state.
pub fn run(circuit: &Circuit, initial: StateVector) -> Result<StateVector> {
    if circuit.n_phys() != initial.n_qubits() {
        return Err(Error::SizeMismatch {
            circuit: circuit.n_phys(),
            topology: initial.n_qubits(),
        });
    }
    let mut state = initial;
    for gate in circuit.gates() {
        state.apply_gate(gate)?;
    }
    Ok(state)
}

/// Dense or structured unitary, compared column by column.
#[derive(Debug, Clone)]
pub enum UnitaryMatrix {
    /// Row-major dense matrix.
    Dense {
        dim: usize,
        data: Vec<Complex64>,
    },
    Diagonal {
        diag: Vec<Complex64>,
    },
    /// DFT_N with entry (j,k) = e^{2πi jk/N}/√N, N = 2^n.
    Dft {
        n: u32,
    },
}

impl UnitaryMatrix {
    pub fn identity(dim: usize) -> UnitaryMatrix {
        UnitaryMatrix::Diagonal {
            diag: vec![Complex64::ONE; dim],
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            UnitaryMatrix::Dense { dim, .. } => *dim,
            UnitaryMatrix::Diagonal { diag } => diag.len(),
            UnitaryMatrix::Dft { n } => 1 << n,
        }
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        match self {
            UnitaryMatrix::Dense { dim, data } => data[row * dim + col],
            UnitaryMatrix::Diagonal { diag } => {
                if row == col {
                    diag[row]
                } else {
                    Complex64::ZERO
                }
            }
            UnitaryMatrix::Dft { .. } => {
                let dim = self.dim();
                let phase = 2.0 * PI * ((row * col) % dim) as f64 / dim as f64;
                Complex64::from_polar(1.0 / (dim as f64).sqrt(), phase)
            }
        }
    }

    pub fn column(&self, col: usize) -> Vec<Complex64> {
        (0..self.dim()).map(|r| self.entry(r, col)).collect()
    }

    /// Position of a guaranteed-large entry, used to anchor global-phase
    /// alignment away from near-zeros.
    pub fn max_entry_position(&self) -> (usize, usize) {
        match self {
            UnitaryMatrix::Diagonal { .. } | UnitaryMatrix::Dft { .. } => (0, 0),
            UnitaryMatrix::Dense { dim, data } => {
                let mut best = (0usize, 0usize);
                let mut best_norm = -1.0;
                for r in 0..*dim {
                    for c in 0..*dim {
                        let v = data[r * dim + c].norm();
                        if v > best_norm {
                            best_norm = v;
                            best = (r, c);
                        }
                    }
                }
                best
            }
        }
    }
}

/// Dense unitary of a circuit (columns are runs on basis states).
pub fn unitary_of(circuit: &Circuit) -> Result<UnitaryMatrix> {
    let n = circuit.n_phys();
    if n > DENSE_QUBIT_CAP {
        return Err(Error::SimulatorCap(format!(
            "unitary_of supports at most {DENSE_QUBIT_CAP} qubits, got {n}"
        )));
    }
    let dim = 1usize << n;
    let cols: Vec<Vec<Complex64>> = (0..dim)
        .into_par_iter()
        .map(|k| {
            run(circuit, StateVector::basis(n, k))
                .map(|s| s.amplitudes)
                .expect("validated circuit")
        })
        .collect();
    let mut data = vec![Complex64::ZERO; dim * dim];
    for (k, col) in cols.iter().enumerate() {
        for r in 0..dim {
            data[r * dim + k] = col[r];
        }
    }
    Ok(UnitaryMatrix::Dense { dim, data })
}

/// Max elementwise |U − e^{iφ}V| after aligning V's global phase on U's
/// largest entry.
pub fn compare_up_to_phase(u: &UnitaryMatrix, v: &UnitaryMatrix) -> f64 {
    let (r, c) = u.max_entry_position();
    let anchor = u.entry(r, c);
    let ph = anchor / v.entry(r, c);
    let ph = ph / ph.norm();
    let dim = u.dim();
    let mut worst: f64 = 0.0;
    for col in 0..dim {
        let uc = u.column(col);
        let vc = v.column(col);
        for row in 0..dim {
            worst = worst.max((uc[row] - ph * vc[row]).norm());
        }
    }
    worst
}

/// DFT oracle with entries e^{2πi jk/N}/√N; qubit 1 is the most
/// significant output bit.
pub fn oracle_qft(n: u32) -> Result<UnitaryMatrix> {
    if !(1..=DENSE_QUBIT_CAP).contains(&n) {
        return Err(Error::SimulatorCap(format!(
            "oracle_qft supports 1..={DENSE_QUBIT_CAP} qubits, got {n}"
        )));
    }
    Ok(UnitaryMatrix::Dft { n })
}

/// Diagonal parity rotation: e^{−iθ/2} on even subset parity, e^{+iθ/2} on
/// odd. Members are logical indices (1-based, bit 1 most significant).
pub fn oracle_parity_rotation(n: u32, members: &[u32], theta: f64) -> Result<UnitaryMatrix> {
    if n > STATEVECTOR_QUBIT_CAP {
        return Err(Error::SimulatorCap(format!(
            "oracle_parity_rotation supports at most {STATEVECTOR_QUBIT_CAP} qubits, got {n}"
        )));
    }
    let plus = Complex64::from_polar(1.0, theta / 2.0);
    let minus = Complex64::from_polar(1.0, -theta / 2.0);
    let dim = 1usize << n;
    let diag = (0..dim)
        .map(|b| {
            let parity = members
                .iter()
                .fold(0usize, |acc, &j| acc ^ ((b >> (n - j)) & 1));
            if parity == 1 {
                plus
            } else {
                minus
            }
        })
        .collect();
    Ok(UnitaryMatrix::Diagonal { diag })
}

/// Grover diffusion reflection: identity with −1 at |N−1⟩.
pub fn oracle_grover_diffusion(n: u32) -> Result<UnitaryMatrix> {
    if n > STATEVECTOR_QUBIT_CAP {
        return Err(Error::SimulatorCap(format!(
            "oracle_grover_diffusion supports at most {STATEVECTOR_QUBIT_CAP} qubits, got {n}"
        )));
    }
    let dim = 1usize << n;
    let mut diag = vec![Complex64::ONE; dim];
    diag[dim - 1] = -Complex64::ONE;
    Ok(UnitaryMatrix::Diagonal { diag })
}

/// How an equivalence check failed.
#[derive(Debug, Clone, PartialEq)]
pub enum FailureClass {
    /// Amplitude found with ancilla bits differing from their input values.
    AncillaNotRestored {
        input: usize,
        output: usize,
    },
    UnitaryMismatch,
}

#[derive(Debug, Clone)]
pub struct EquivalenceReport {
    pub max_error: f64,
    pub global_phase: Complex64,
    /// Physical position carrying each logical output bit (1-based, bit 1 first).
    pub permutation: Vec<u32>,
    pub tolerance: f64,
    pub passed: bool,
    pub failure: Option<FailureClass>,
}

/// Data/ancilla layout for an equivalence check.
#[derive(Debug, Clone)]
pub struct EquivalenceSetup {
    /// Physical position of logical input bit j (index j−1).
    pub input_positions: Vec<u32>,
    /// Physical position carrying logical output bit j (index j−1).
    pub output_positions: Vec<u32>,
    /// Ancilla initial bits by physical index; ancillas must exit unchanged.
    pub ancilla_in: BTreeMap<u32, bool>,
    pub tolerance: f64,
}

/// Verify that `circuit`, restricted to the subspace where ancillas enter
/// in `ancilla_in`, acts on the data qubits as `target` up to a global
/// phase, with every ancilla restored on exit.
pub fn check_equivalence(
    circuit: &Circuit,
    target: &UnitaryMatrix,
    setup: &EquivalenceSetup,
) -> Result<EquivalenceReport> {
    let n = circuit.n_phys();
    if n > STATEVECTOR_QUBIT_CAP {
        return Err(Error::SimulatorCap(format!(
            "check_equivalence supports at most {STATEVECTOR_QUBIT_CAP} physical qubits, got {n}"
        )));
    }
    let nd = setup.input_positions.len();
    // 2^nd columns, each a 2^n statevector run: keep the check desk-scale
    if nd as u32 + n > 30 {
        return Err(Error::SimulatorCap(format!(
            "equivalence check needs 2^{} amplitude updates ({} data bits over {n} qubits); \
             the cap is 2^30",
            nd as u32 + n,
            nd
        )));
    }
    if target.dim() != 1usize << nd || setup.output_positions.len() != nd {
        return Err(Error::SizeMismatch {
            circuit: nd as u32,
            topology: target.dim().trailing_zeros(),
        });
    }
    for &q in setup
        .input_positions
        .iter()
        .chain(setup.output_positions.iter())
        .chain(setup.ancilla_in.keys())
    {
        if q < 1 || q > n {
            return Err(Error::IndexOutOfRange {
                index: q,
                n_phys: n,
            });
        }
    }
    let shift = |q: u32| n - q;
    let anc_bits: Vec<(u32, bool)> = setup.ancilla_in.iter().map(|(&q, &b)| (q, b)).collect();

    let input_index = |x: usize| -> usize {
        let mut idx = 0usize;
        for (j, &q) in setup.input_positions.iter().enumerate() {
            if (x >> (nd - 1 - j)) & 1 == 1 {
                idx |= 1 << shift(q);
            }
        }
        for &(q, b) in &anc_bits {
            if b {
                idx |= 1 << shift(q);
            }
        }
        idx
    };

    // run the anchor column first to fix the global phase
    let (anchor_row, anchor_col) = target.max_entry_position();
    let run_column = |x: usize| -> Result<(Vec<Complex64>, Option<FailureClass>)> {
        let out = run(circuit, StateVector::basis(n, input_index(x)))?;
        let mut col = vec![Complex64::ZERO; 1 << nd];
        let mut failure = None;
        for (idx, amp) in out.amplitudes().iter().enumerate() {
            if amp.norm() == 0.0 {
                continue;
            }
            let anc_ok = anc_bits
                .iter()
                .all(|&(q, b)| ((idx >> shift(q)) & 1 == 1) == b);
            if !anc_ok {
                if amp.norm() > setup.tolerance {
                    failure = Some(FailureClass::AncillaNotRestored {
                        input: x,
                        output: idx,
                    });
                }
                continue;
            }
            let mut y = 0usize;
            for (j, &q) in setup.output_positions.iter().enumerate() {
                if (idx >> shift(q)) & 1 == 1 {
                    y |= 1 << (nd - 1 - j);
                }
            }
            col[y] += amp;
        }
        Ok((col, failure))
    };

    let (anchor, anchor_fail) = run_column(anchor_col)?;
    if let Some(f) = anchor_fail {
        return Ok(EquivalenceReport {
            max_error: f64::INFINITY,
            global_phase: Complex64::ONE,
            permutation: setup.output_positions.clone(),
            tolerance: setup.tolerance,
            passed: false,
            failure: Some(f),
        });
    }
    let target_anchor = target.entry(anchor_row, anchor_col);
    let raw = anchor[anchor_row] / target_anchor;
    if raw.norm() < 1e-6 {
        return Ok(EquivalenceReport {
            max_error: f64::INFINITY,
            global_phase: Complex64::ONE,
            permutation: setup.output_positions.clone(),
            tolerance: setup.tolerance,
            passed: false,
            failure: Some(FailureClass::UnitaryMismatch),
        });
    }
    let phase = raw / raw.norm();

    let results: Vec<Result<(f64, Option<FailureClass>)>> = (0..1usize << nd)
        .into_par_iter()
        .map(|x| {
            let (col, failure) = run_column(x)?;
            let mut worst: f64 = 0.0;
            for row in 0..1usize << nd {
                let want = phase * target.entry(row, x);
                worst = worst.max((col[row] - want).norm());
            }
            Ok((worst, failure))
        })
        .collect();

    let mut max_error: f64 = 0.0;
    let mut failure = None;
    for r in results {
        let (err, f) = r?;
        max_error = max_error.max(err);
        if failure.is_none() {
            failure = f;
        }
    }
    let passed = failure.is_none() && max_error <= setup.tolerance;
    if failure.is_none() && !passed {
        failure = Some(FailureClass::UnitaryMismatch);
    }
    Ok(EquivalenceReport {
        max_error,
        global_phase: phase,
        permutation: setup.output_positions.clone(),
        tolerance: setup.tolerance,
        passed,
        failure: if passed { None } else { failure },
    })
}
