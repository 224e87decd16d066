//! End-to-end CLI tests driving the built binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn qsched(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsched"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("qsched-cli-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn schedule_jw_linear_has_five_moments() {
    let out = tmp("jw4.json");
    let r = qsched(&[
        "schedule",
        "--alg",
        "jw",
        "--topo",
        "linear",
        "--n",
        "4",
        "--theta",
        "0.5",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    let schedule = qsched::serialize::schedule_from_json(&text).unwrap();
    assert_eq!(schedule.circuit.depth(), 5);
    assert_eq!(schedule.params.theta, Some(0.5));
}

#[test]
fn grid_qft_is_a_usage_error() {
    let r = qsched(&[
        "schedule",
        "--alg",
        "qft",
        "--topo",
        "grid",
        "--n",
        "9",
        "--out",
        "/dev/null",
    ]);
    assert_eq!(r.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&r.stderr).contains("error"));
}

#[test]
fn grover_linear_n2_uses_three_qubits() {
    let out = tmp("grover2.json");
    let r = qsched(&[
        "schedule",
        "--alg",
        "grover",
        "--topo",
        "linear",
        "--n",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(r.status.success());
    let schedule =
        qsched::serialize::schedule_from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(schedule.topology.n_phys(), 3);
}

#[test]
fn verify_round_trip_passes_and_detects_corruption() {
    let out = tmp("jw6.json");
    let r = qsched(&[
        "schedule",
        "--alg",
        "jw",
        "--topo",
        "linear",
        "--n",
        "6",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(r.status.success());
    let r = qsched(&["verify", "--in", out.to_str().unwrap()]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stdout));
    assert!(String::from_utf8_lossy(&r.stdout).contains("PASS"));

    // drop one gate: exit code 1
    let text = std::fs::read_to_string(&out).unwrap();
    let mut schedule = qsched::serialize::schedule_from_json(&text).unwrap();
    let mut moments: Vec<Vec<qsched::Gate>> = schedule
        .circuit
        .moments()
        .iter()
        .map(|m| m.gates.clone())
        .collect();
    moments[0].remove(0);
    let mut rebuilt = qsched::Circuit::new(schedule.circuit.n_phys());
    for m in &moments {
        rebuilt.append_barrier();
        for g in m {
            rebuilt.append_asap(g.clone()).unwrap();
        }
    }
    schedule.circuit = rebuilt;
    let corrupted = tmp("jw6-bad.json");
    std::fs::write(&corrupted, qsched::serialize::schedule_to_json(&schedule)).unwrap();
    let r = qsched(&["verify", "--in", corrupted.to_str().unwrap()]);
    assert_eq!(r.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&r.stdout).contains("FAIL"));
}

#[test]
fn verify_oversized_instance_names_the_cap() {
    let out = tmp("jw18.json");
    let r = qsched(&[
        "schedule",
        "--alg",
        "jw",
        "--topo",
        "linear",
        "--n",
        "18",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(r.status.success());
    let r = qsched(&["verify", "--in", out.to_str().unwrap()]);
    assert_eq!(r.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&r.stderr).contains("cap"));
}

#[test]
fn lower_emits_native_gates_and_verifies() {
    let out = tmp("qft5.json");
    assert!(qsched(&[
        "schedule",
        "--alg",
        "qft",
        "--topo",
        "linear",
        "--n",
        "5",
        "--out",
        out.to_str().unwrap(),
    ])
    .status
    .success());
    let lowered = tmp("qft5-lowered.json");
    let r = qsched(&[
        "lower",
        "--in",
        out.to_str().unwrap(),
        "--out",
        lowered.to_str().unwrap(),
    ]);
    assert!(r.status.success());
    assert!(String::from_utf8_lossy(&r.stdout).contains("depth 37"));
    let schedule =
        qsched::serialize::schedule_from_json(&std::fs::read_to_string(&lowered).unwrap()).unwrap();
    for g in schedule.circuit.gates() {
        assert!(qsched::decompose::is_native(&g.kind));
    }
    // the lowered file still verifies against the DFT oracle
    let r = qsched(&["verify", "--in", lowered.to_str().unwrap()]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stdout));
}

#[test]
fn restore_order_schedule_verifies() {
    let out = tmp("qft6-restored.json");
    assert!(qsched(&[
        "schedule",
        "--alg",
        "qft",
        "--topo",
        "ladder",
        "--n",
        "6",
        "--restore-order",
        "--out",
        out.to_str().unwrap(),
    ])
    .status
    .success());
    let schedule =
        qsched::serialize::schedule_from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    for m in 1..=6 {
        assert_eq!(schedule.final_mapping.position_of(7 - m), Some(m));
    }
    let r = qsched(&["verify", "--in", out.to_str().unwrap()]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stdout));
}

#[test]
fn subset_flag_is_respected() {
    let out = tmp("jw-subset.json");
    let r = qsched(&[
        "schedule",
        "--alg",
        "jw",
        "--topo",
        "linear",
        "--n",
        "8",
        "--subset",
        "1,2,5,6,8",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(r.status.success());
    let schedule =
        qsched::serialize::schedule_from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(schedule.params.subset, Some(vec![1, 2, 5, 6, 8]));
    let r = qsched(&["verify", "--in", out.to_str().unwrap()]);
    assert!(r.status.success());

    // out-of-range subset index is a usage error
    let r = qsched(&[
        "schedule",
        "--alg",
        "jw",
        "--topo",
        "linear",
        "--n",
        "4",
        "--subset",
        "5",
        "--out",
        "/dev/null",
    ]);
    assert_eq!(r.status.code(), Some(2));
}

#[test]
fn sweep_writes_the_fixed_csv_schema() {
    let csv = tmp("sweep.csv");
    let r = qsched(&[
        "sweep",
        "--alg",
        "qft",
        "--topo",
        "linear,ladder,all",
        "--n-max",
        "16",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert!(r.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "algorithm,topology,n,n_phys,predicted_depth,measured_depth,discrepancy,undirected_edges,ordered_edges"
    );
    // 15 linear + 8 ladder + 15 all-to-all rows
    assert_eq!(text.lines().count() - 1, 15 + 8 + 15);
    assert!(text.contains("qft,ladder,8,8,61,,,10,20"));

    // byte-identical on a second run
    let csv2 = tmp("sweep2.csv");
    assert!(qsched(&[
        "sweep",
        "--alg",
        "qft",
        "--topo",
        "linear,ladder,all",
        "--n-max",
        "16",
        "--csv",
        csv2.to_str().unwrap(),
    ])
    .status
    .success());
    assert_eq!(text, std::fs::read_to_string(&csv2).unwrap());
}

#[test]
fn schedule_then_verify_round_trips_for_every_supported_family() {
    let cases: &[(&str, &str, &str)] = &[
        ("qft", "linear", "5"),
        ("qft", "ladder", "4"),
        ("qft", "all", "5"),
        ("jw", "linear", "5"),
        ("jw", "ladder", "5"),
        ("jw", "grid", "9"),
        ("jw", "all", "5"),
        ("grover", "linear", "4"),
        ("grover", "ladder", "4"),
        ("grover", "grid", "4"),
        ("grover", "all", "4"),
    ];
    for &(alg, topo, n) in cases {
        let out = tmp(&format!("rt-{alg}-{topo}-{n}.json"));
        let r = qsched(&[
            "schedule",
            "--alg",
            alg,
            "--topo",
            topo,
            "--n",
            n,
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(
            r.status.success(),
            "{alg} {topo}: {}",
            String::from_utf8_lossy(&r.stderr)
        );
        let r = qsched(&["verify", "--in", out.to_str().unwrap()]);
        assert!(
            r.status.success(),
            "{alg} {topo} n={n}: {}",
            String::from_utf8_lossy(&r.stdout)
        );
    }
}

#[test]
fn irrelevant_flags_are_usage_errors() {
    for args in [
        vec![
            "schedule",
            "--alg",
            "qft",
            "--topo",
            "linear",
            "--n",
            "4",
            "--theta",
            "0.5",
            "--out",
            "/dev/null",
        ],
        vec![
            "schedule",
            "--alg",
            "grover",
            "--topo",
            "linear",
            "--n",
            "4",
            "--subset",
            "1,2",
            "--out",
            "/dev/null",
        ],
        vec![
            "schedule",
            "--alg",
            "jw",
            "--topo",
            "linear",
            "--n",
            "4",
            "--restore-order",
            "--out",
            "/dev/null",
        ],
    ] {
        let r = qsched(&args);
        assert_eq!(r.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn depth_reports_scheduled_lowered_and_predicted() {
    let out = tmp("grover4.json");
    assert!(qsched(&[
        "schedule",
        "--alg",
        "grover",
        "--topo",
        "all",
        "--n",
        "4",
        "--out",
        out.to_str().unwrap(),
    ])
    .status
    .success());
    let r = qsched(&["depth", "--in", out.to_str().unwrap()]);
    assert!(r.status.success());
    let text = String::from_utf8_lossy(&r.stdout).to_string();
    assert!(text.contains("5 as scheduled"), "{text}");
    assert!(text.contains("29 lowered"), "{text}");
    assert!(text.contains("predicted 29"), "{text}");
}

#[test]
fn schedule_output_is_deterministic() {
    let a = tmp("det-a.json");
    let b = tmp("det-b.json");
    for out in [&a, &b] {
        assert!(qsched(&[
            "schedule",
            "--alg",
            "grover",
            "--topo",
            "ladder",
            "--n",
            "4",
            "--out",
            out.to_str().unwrap(),
        ])
        .status
        .success());
    }
    assert_eq!(
        std::fs::read_to_string(&a).unwrap(),
        std::fs::read_to_string(&b).unwrap()
    );
}
