use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_recollement"))
        .args(args)
        .env_remove("RECOLLEMENT_DATA")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = run(&all);
    (
        o.status.code().unwrap(),
        serde_json::from_slice(&o.stdout).expect("valid JSON"),
    )
}

#[test]
fn non_pair_exits_one_with_identity_witness() {
    let o = run(&["check-pair", "--x", "S(2)", "--y", "S(2)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("identity"), "{}", stdout(&o));
}

#[test]
fn pair_exits_zero() {
    let o = run(&["check-pair", "--x", "add(P(1) ⊕ S(1))", "--y", "S(2)"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn enumerate_lists_five_pairs_in_json() {
    let (code, v) = json(&["enumerate"]);
    assert_eq!(code, 0);
    let pairs = v["pairs"].as_array().unwrap();
    assert_eq!(pairs.len(), 5);
    for p in pairs {
        let spec: recollement::io::PairSpec = serde_json::from_value(p.clone()).unwrap();
        let x = spec.x.join(",");
        let y = if spec.y.is_empty() {
            "0".into()
        } else {
            spec.y.join(",")
        };
        let x = if x.is_empty() { "0".into() } else { x };
        let o = run(&["check-pair", "--x", &x, "--y", &y]);
        assert_eq!(o.status.code(), Some(0), "{x} / {y}");
    }
}

#[test]
fn lambda_enumeration_is_the_same_sequentially() {
    let (_, par) = json(&["--instance", "t2_kA2", "enumerate"]);
    let (_, seq) = json(&["--instance", "t2_kA2", "--sequential", "enumerate"]);
    assert_eq!(par, seq);
    assert!(par["pairs"].as_array().unwrap().len() > 25);
}

#[test]
fn input_errors_exit_three() {
    assert_eq!(
        run(&["check-pair", "--x", "Q", "--y", "S(1)"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(run(&["--no-such-flag"]).status.code(), Some(3));
    assert_eq!(
        run(&["--algebra", "missing", "atoms"]).status.code(),
        Some(3)
    );
    assert_eq!(run(&["--prime", "4", "atoms"]).status.code(), Some(3));
}

#[test]
fn budget_exhaustion_exits_two() {
    let o = run(&[
        "--budget-subobjects",
        "1",
        "predicates",
        "--x",
        "S(2)",
        "--y",
        "S(1)",
    ]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
    assert!(stdout(&o).contains("undetermined"));
}

#[test]
fn data_dir_comes_from_the_environment() {
    let tmp = std::env::temp_dir().join(format!("recollement-data-{}", std::process::id()));
    std::fs::create_dir_all(&tmp).unwrap();
    for f in ["kA2.json", "kA2.atoms.json"] {
        std::fs::copy(data_dir().join(f), tmp.join(f)).unwrap();
    }
    let o = Command::new(env!("CARGO_BIN_EXE_recollement"))
        .args(["atoms"])
        .env("RECOLLEMENT_DATA", &tmp)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let o = Command::new(env!("CARGO_BIN_EXE_recollement"))
        .args(["atoms"])
        .env("RECOLLEMENT_DATA", tmp.join("empty"))
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    std::fs::remove_dir_all(&tmp).unwrap();
}

#[test]
fn atoms_json_reloads_as_an_atom_file() {
    let (_, v) = json(&["atoms"]);
    let file: recollement::io::AtomFile = serde_json::from_value(v.clone()).unwrap();
    let shipped: recollement::io::AtomFile =
        recollement::io::read_json(&data_dir().join("kA2.atoms.json")).unwrap();
    let names: Vec<_> = file.atoms.iter().map(|a| a.name.clone()).collect();
    let expected: Vec<_> = shipped.atoms.iter().map(|a| a.name.clone()).collect();
    assert_eq!(names, expected);
    assert_eq!(v["certified"], Value::Bool(true));
}

#[test]
fn glue_and_restrict_scenarios_pass() {
    for sc in ["pairs/glue-first.json", "pairs/glue-second.json"] {
        let o = run(&["glue", "--scenario", sc]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    }
    let (code, v) = json(&["restrict", "--scenario", "pairs/restrict.json"]);
    assert_eq!(code, 0);
    assert_eq!(v["matches_expected"], Value::Bool(true));
    assert_eq!(v["condition"], Value::Bool(false));
    assert_eq!(v["c_result"]["verdict"], "fails");
}

#[test]
fn probe_finds_the_non_exact_functor_only() {
    let o = run(&["--trials", "300", "probe", "--functor", "i_upper"]);
    assert_eq!(o.status.code(), Some(1));
    for f in ["i_star", "i_shriek", "j_lower", "j_upper", "j_rstar"] {
        let o = run(&["--trials", "100", "probe", "--functor", f]);
        assert_eq!(o.status.code(), Some(0), "{f}");
    }
    let o = run(&[
        "--instance",
        "product_kA2",
        "--trials",
        "100",
        "probe",
        "--functor",
        "i_upper",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn probes_are_reproducible_across_exec_modes() {
    let a = json(&[
        "--seed",
        "7",
        "--trials",
        "200",
        "probe",
        "--functor",
        "i_upper",
    ]);
    let b = json(&[
        "--seed",
        "7",
        "--trials",
        "200",
        "--sequential",
        "probe",
        "--functor",
        "i_upper",
    ]);
    assert_eq!(a, b);
}

#[test]
fn verify_and_roundtrip_pass_on_both_instances() {
    for inst in ["t2_kA2", "product_kA2"] {
        assert_eq!(
            run(&["--instance", inst, "verify-recollement"])
                .status
                .code(),
            Some(0)
        );
        assert_eq!(
            run(&["--instance", inst, "roundtrip"]).status.code(),
            Some(0)
        );
    }
}

#[test]
fn containment_biconditionals() {
    let o = run(&[
        "lemma34",
        "--x",
        "(0|S(2)),(P(1)|P(1)),(S(1)|0),(S(1)|P(1)),(S(1)|S(1)),(0|P(1)),(0|S(1))",
        "--y",
        "(S(2)|0),(S(2)|S(2)),(P(1)|0),(P(1)|S(2))",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("j_*j^*(Y) ⊆ Y: false"));
}

#[test]
fn decompose_after_functor() {
    let (code, v) = json(&["decompose", "--apply", "j_lower", "--sum", "P(1)"]);
    assert_eq!(code, 0);
    assert_eq!(v["decomposition"], serde_json::json!(["(P(1)|P(1))"]));
}

#[test]
fn worked_example_matches_golden_output() {
    let o = run(&["example-3-6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).trim_end().ends_with("ALL GOLDEN CHECKS PASS"));
}

#[test]
fn worked_example_is_independent_of_the_prime() {
    for p in ["3", "5"] {
        let o = run(&["--prime", p, "example-3-6"]);
        assert_eq!(o.status.code(), Some(0), "p = {p}: {}", stdout(&o));
        assert_eq!(
            run(&["--prime", p, "--instance", "t2_kA2", "verify-recollement"])
                .status
                .code(),
            Some(0)
        );
    }
}
