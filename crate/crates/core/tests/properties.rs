//! Property tests for the structural invariants.

use proptest::prelude::*;

use qsched::analyzer::DEFAULT_THETA;
use qsched::circuit::{track_mapping, Circuit, Gate, MappingState};
use qsched::decompose::lower_circuit;
use qsched::schedulers::{schedule_jw_with_mapping, ParitySpec};
use qsched::simulator::{check_equivalence, compare_up_to_phase, run, unitary_of, StateVector};
use qsched::topology::TopologyKind;
use qsched::{GateKind, Slot};

const N: u32 = 5;

/// Random gate stream over a small register, mixing every kind.
fn gate_strategy() -> impl Strategy<Value = Gate> {
    let q = 1..=N;
    prop_oneof![
        q.clone().prop_map(Gate::h),
        q.clone().prop_map(Gate::x),
        q.clone().prop_map(Gate::z),
        (q.clone(), -3.0..3.0f64).prop_map(|(a, t)| Gate::rz(a, t)),
        (q.clone(), -3.0..3.0f64).prop_map(|(a, t)| Gate::ry(a, t)),
        (q.clone(), 1..=5u32, any::<bool>()).prop_map(|(a, k, c)| Gate::phase(a, k, c)),
        distinct_pair().prop_map(|(a, b)| Gate::cnot(a, b)),
        (distinct_pair(), 1..=5u32).prop_map(|((a, b), k)| Gate::cp(k, a, b)),
        distinct_pair().prop_map(|(a, b)| Gate::swap(a, b)),
        distinct_triple().prop_map(|(a, b, c)| Gate::toff(a, b, c)),
    ]
}

fn distinct_pair() -> impl Strategy<Value = (u32, u32)> {
    (1..=N, 1..=N).prop_filter("distinct", |(a, b)| a != b)
}

fn distinct_triple() -> impl Strategy<Value = (u32, u32, u32)> {
    (1..=N, 1..=N, 1..=N).prop_filter("distinct", |(a, b, c)| a != b && a != c && b != c)
}

fn build(gates: &[Gate], barriers_every: usize) -> Circuit {
    let mut c = Circuit::new(N);
    for (i, g) in gates.iter().enumerate() {
        if barriers_every > 0 && i > 0 && i % barriers_every == 0 {
            c.append_barrier();
        }
        c.append_asap(g.clone()).unwrap();
    }
    c
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Moment disjointness holds after every append.
    #[test]
    fn moments_stay_disjoint(gates in prop::collection::vec(gate_strategy(), 1..40)) {
        let c = build(&gates, 7);
        for moment in c.moments() {
            let mut seen = std::collections::BTreeSet::new();
            for g in &moment.gates {
                for &q in &g.operands {
                    prop_assert!(seen.insert(q), "qubit {q} reused in a moment");
                }
            }
        }
    }

    /// Appending a gate grows the depth by at most one.
    #[test]
    fn append_grows_depth_by_at_most_one(
        gates in prop::collection::vec(gate_strategy(), 1..30),
        extra in gate_strategy(),
    ) {
        let mut c = build(&gates, 0);
        let before = c.depth();
        c.append_asap(extra).unwrap();
        prop_assert!(c.depth() == before || c.depth() == before + 1);
    }

    /// Tracking c1 then c2 equals tracking their concatenation.
    #[test]
    fn mapping_tracking_is_a_group_action(
        g1 in prop::collection::vec(gate_strategy(), 0..20),
        g2 in prop::collection::vec(gate_strategy(), 0..20),
    ) {
        let c1 = build(&g1, 0);
        let c2 = build(&g2, 0);
        let mut concat_gates = g1.clone();
        concat_gates.extend(g2.clone());
        let c12 = build(&concat_gates, 0);
        let m0 = MappingState::identity(N);
        let stepwise = track_mapping(&track_mapping(&m0, &c1), &c2);
        prop_assert_eq!(stepwise, track_mapping(&m0, &c12));
    }

    /// invert is an involution on moments and barriers.
    #[test]
    fn invert_involution(gates in prop::collection::vec(gate_strategy(), 1..30)) {
        let c = build(&gates, 5);
        let back = c.invert().invert();
        prop_assert_eq!(back.moments(), c.moments());
        prop_assert_eq!(back.barriers(), c.barriers());
    }

    /// Lowering preserves the unitary up to global phase on circuits
    /// without Toffolis (which carry a documented per-instance phase).
    #[test]
    fn lowering_preserves_unitary(gates in prop::collection::vec(gate_strategy(), 1..14)) {
        let gates: Vec<Gate> = gates
            .into_iter()
            .filter(|g| g.kind != GateKind::Toff)
            .collect();
        prop_assume!(!gates.is_empty());
        let c = build(&gates, 4);
        let u = unitary_of(&c).unwrap();
        for fuse in [false, true] {
            let v = unitary_of(&lower_circuit(&c, fuse)).unwrap();
            prop_assert!(compare_up_to_phase(&u, &v) < 1e-9);
        }
    }

    /// Norms survive arbitrary gate streams.
    #[test]
    fn norm_preservation(gates in prop::collection::vec(gate_strategy(), 1..30), basis in 0usize..32) {
        let c = build(&gates, 0);
        let s = run(&c, StateVector::basis(N, basis)).unwrap();
        prop_assert!((s.norm() - 1.0).abs() < 1e-12);
    }

    /// Full-parity linear JW works for any initial logical permutation.
    #[test]
    fn jw_initial_mapping_freedom(perm in Just(()).prop_perturb(|_, mut rng| {
        let mut p: Vec<u32> = (1..=6).collect();
        for i in (1..p.len()).rev() {
            let j = rng.random_range(0..=i);
            p.swap(i, j);
        }
        p
    })) {
        let spec = ParitySpec::full(6, DEFAULT_THETA).unwrap();
        let mut mapping = MappingState::ancillas(6);
        for (phys, &logical) in perm.iter().enumerate() {
            mapping.set(phys as u32 + 1, Slot::Logical(logical));
        }
        let s = schedule_jw_with_mapping(TopologyKind::Linear, &spec, &mapping).unwrap();
        let (oracle, setup) = s.verification_oracle(1e-9).unwrap();
        let report = check_equivalence(&lower_circuit(&s.circuit, false), &oracle, &setup).unwrap();
        prop_assert!(report.passed, "err {:e}", report.max_error);
    }
}
