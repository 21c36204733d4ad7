//! End-to-end tests of the command-line surface.

use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_mutalab"))
        .args(args)
        .output()
        .expect("spawning the CLI");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn mutate_output_reparses_and_is_byte_stable() {
    let (code, first, _) = run(&["mutate", "markov4", "-k", "1"]);
    assert_eq!(code, 0);
    let parsed = mutalab::json::quiver_from_json(&first).unwrap();
    assert_eq!(
        parsed,
        mutalab::catalog::build(&mutalab::catalog::CatalogName::Markov4)
            .unwrap()
            .mutate(1)
            .unwrap()
    );
    // writing the file back in and mutating again returns the seed
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q.json");
    std::fs::write(&path, &first).unwrap();
    let (code, second, _) = run(&["mutate", path.to_str().unwrap(), "-k", "1"]);
    assert_eq!(code, 0);
    let (_, seed, _) = run(&["catalog", "show", "markov4"]);
    assert_eq!(second, seed);
}

#[test]
fn apply_equals_iterated_mutate() {
    let (code, via_word, _) = run(&["apply", "q_d", "-w", "1,4,1,4"]);
    assert_eq!(code, 0);
    let q = mutalab::catalog::build(&mutalab::catalog::CatalogName::QD).unwrap();
    let direct = q
        .mutate(1)
        .unwrap()
        .mutate(4)
        .unwrap()
        .mutate(1)
        .unwrap()
        .mutate(4)
        .unwrap();
    assert_eq!(mutalab::json::quiver_from_json(&via_word).unwrap(), direct);
}

#[test]
fn enumerate_report_and_decide() {
    let (code, stdout, _) = run(&["enumerate", "markov4"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc["nodes"].as_array().unwrap().len(), 2);

    let (code, dot, _) = run(&["enumerate", "markov4", "--format", "dot"]);
    assert_eq!(code, 0);
    assert!(dot.starts_with("graph exchange"));

    let (code, stdout, _) = run(&["report", "kite4a"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc["size"], 6);
    assert_eq!(doc["distinct_up_to_permutation"], 4);

    let (code, stdout, _) = run(&["decide", "a_n(4)"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc["kind"], "no_global_loops");

    let (code, stdout, _) = run(&["decide", "q_d", "--cross-validate", "--max-len", "4"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc["kind"], "has_nontrivial_global_loops");
    assert_eq!(doc["agree"], true);
}

#[test]
fn node_budget_env_var_caps_enumeration() {
    let out = Command::new(env!("CARGO_BIN_EXE_mutalab"))
        .args(["enumerate", "a_n(4)"])
        .env("MUTALAB_MAX_NODES", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value =
        serde_json::from_str(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert_eq!(doc["verdict"]["type"], "inconclusive");
}

#[test]
fn catalog_list_show_match() {
    let (code, listing, _) = run(&["catalog", "list"]);
    assert_eq!(code, 0);
    assert!(listing.contains("markov4"));
    assert!(listing.contains("q_a_x(3)"));

    let (code, dot, _) = run(&["catalog", "show", "q_d", "--format", "dot"]);
    assert_eq!(code, 0);
    assert!(dot.contains("(3,1)"));

    let (code, matches, _) = run(&["catalog", "match", "w4_rank3(1)"]);
    assert_eq!(code, 0);
    assert!(matches.contains("markov4"));

    let (code, _, stderr) = run(&["catalog", "show", "no_such_thing"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown catalog name"));
}

#[test]
fn repro_matches_committed_goldens() {
    for table in ["table-1.2", "table-1.4", "example-2.8", "example-3.2"] {
        let (code, stdout, stderr) = run(&["repro", table]);
        assert_eq!(code, 0, "repro {table}: {stderr}");
        assert!(stdout.contains("matches"), "repro {table}: {stdout}");
    }
    let (code, _, stderr) = run(&["repro", "table-9.9"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown reference output"));
}

#[test]
fn domain_and_usage_errors_use_distinct_exit_codes() {
    // usage error: clap rejects the flag
    let (code, _, _) = run(&["mutate", "markov4", "--bogus"]);
    assert_eq!(code, 2);
    // input error: mutation out of range
    let (code, _, stderr) = run(&["mutate", "markov4", "-k", "9"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("out of range"));
    // domain negative: tampered certificate
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    std::fs::write(
        &path,
        // three witnesses for a two-member class: always invalid
        r#"{"witnesses": [{"epsilon": 1, "node": 0, "sigma": [1,2,3]},
                          {"epsilon": 1, "node": 1, "sigma": [1,2,3]},
                          {"epsilon": 1, "node": 2, "sigma": [1,2,3]}],
            "word": [1,2]}"#,
    )
    .unwrap();
    let (code, _, stderr) = run(&["loops", "check", "markov4", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(stderr.contains("invalid certificate"), "{stderr}");
}
