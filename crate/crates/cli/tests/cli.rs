use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use homocert::certificate::content_hash;
use serde_json::Value;

fn homocert(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_homocert"));
    cmd.args(args).env_remove("HOMOCERT_THREADS");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    homocert(args, &[]).status.code().expect("exit code")
}

fn json(args: &[&str]) -> Value {
    let out = homocert(args, &[]);
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn write_z3(dir: &Path) -> String {
    let path = dir.join("z3.json");
    fs::write(
        &path,
        r#"{"name": "Z/3 rank 3", "permutations": [[1,2,0],[0,1,2],[0,1,2]],
            "psi": {"p": 3, "values": [["a", 1], ["aa", 2]]}}"#,
    )
    .unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn exit_status_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let z3 = write_z3(dir.path());
    let z2 = dir.path().join("z2.json");
    fs::write(
        &z2,
        r#"{"name": "Z/2", "permutations": [[1,0],[0,1]], "psi": {"p": 2, "values": [["a", 1]]}}"#,
    )
    .unwrap();
    let z2 = z2.to_str().unwrap().to_string();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"name\": \"x\"}").unwrap();
    let bad = bad.to_str().unwrap().to_string();
    let zero = dir.path().join("zero.json");
    fs::write(
        &zero,
        r#"{"name": "Z/2", "permutations": [[1,0],[1,0]], "psi": {"p": 0, "values": [["a", 1]]}}"#,
    )
    .unwrap();
    let zero = zero.to_str().unwrap().to_string();
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["phi", "--n", "3", "--p", "2", "--k", "2"], 0),
        (vec!["phi", "--n", "2", "--p", "3", "--k", "1"], 0),
        (vec!["phi", "--n", "3", "--p", "2", "--k", "1"], 2),
        (vec!["phi", "--n", "2", "--p", "4", "--k", "1"], 2),
        (vec!["phi", "--n", "5", "--p", "2", "--k", "3", "--cap", "16"], 3),
        (vec!["group"], 0),
        (vec!["group", "--cap", "10"], 3),
        (vec!["group", "--n", "3", "--p", "2", "--k", "1"], 2),
        (
            vec![
                "witness",
                "--preset",
                "q8",
                "--orbit",
                "p-primitives",
                "--p",
                "2",
                "--radius",
                "6",
            ],
            0,
        ),
        (vec!["witness", "--preset", "zassenhaus"], 0),
        (vec!["witness", "--orbit", "p-primitives", "--p", "6"], 2),
        (vec!["witness", "--orbit", "sideways"], 2),
        (vec!["witness", "--cap", "5"], 3),
        (vec!["witness", "--orbit", "primitives", "--radius", "3"], 0),
        // x2 maps to the identity, so its powers never reach C.
        (vec!["witness", "--preset", z2.as_str()], 1),
        (vec!["witness", "--preset", "/nonexistent/file.json"], 2),
        (vec!["witness", "--preset", bad.as_str()], 2),
        (vec!["witness", "--preset", zero.as_str()], 2),
        (vec!["chainrep"], 0),
        (vec!["chainrep", "--budget", "5"], 3),
        (vec!["chainrep", "--preset", z3.as_str()], 0),
        (vec!["intrep", "--radius", "3"], 0),
        (vec!["intrep", "--radius", "3", "--budget", "1"], 3),
        (vec!["hall", "abAB"], 0),
        (vec!["hall", "aabbb", "--format", "dot"], 0),
        (vec!["hall", "axb"], 2),
        (vec!["hall", ""], 2),
        (vec!["phi", "--format", "dot"], 2),
        (vec!["phi", "--cap", "0"], 2),
        (vec!["phi", "--unknown"], 2),
        (vec!["nonsense"], 2),
    ];
    for (args, expected) in cases {
        assert_eq!(code(&args), expected, "{args:?}");
    }
}

#[test]
fn bad_thread_count_is_a_usage_error() {
    let out = homocert(&["phi"], &[("HOMOCERT_THREADS", "zero")]);
    assert_eq!(out.status.code(), Some(2));
    let out = homocert(&["phi"], &[("HOMOCERT_THREADS", "0")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn certificates_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["witness", "--preset", "q8"],
        vec!["witness", "--preset", "zassenhaus"],
        vec!["chainrep", "--seed", "7"],
        vec!["intrep", "--radius", "4"],
        vec!["group"],
        vec!["phi", "--n", "3", "--p", "3", "--k", "2"],
    ] {
        let mut outputs = Vec::new();
        for (i, threads) in ["1", "4"].iter().enumerate() {
            let path = dir.path().join(format!("{}-{i}.json", args[0]));
            let mut full = args.clone();
            let p = path.to_str().unwrap().to_string();
            full.extend(["--out", p.as_str()]);
            let out = homocert(&full, &[("HOMOCERT_THREADS", threads)]);
            assert_eq!(out.status.code(), Some(0), "{args:?}");
            assert!(out.stdout.is_empty());
            outputs.push(fs::read(&path).unwrap());
        }
        assert_eq!(outputs[0], outputs[1], "{args:?}");
    }
}

#[test]
fn hash_covers_the_document() {
    let mut doc = json(&["witness", "--preset", "q8"]);
    let hash = doc.as_object_mut().unwrap().remove("hash").unwrap();
    assert_eq!(hash.as_str().unwrap(), content_hash(&doc));
    doc["result"]["dims"]["span"] = Value::from(6);
    assert_ne!(hash.as_str().unwrap(), content_hash(&doc));
}

#[test]
fn seeds_change_random_bases() {
    let a = json(&["chainrep", "--seed", "1"]);
    let b = json(&["chainrep", "--seed", "2"]);
    assert_ne!(a["result"]["bases"], b["result"]["bases"]);
    assert_eq!(a["verdict"], b["verdict"]);
}

#[test]
fn witness_certificate_fields() {
    let doc = json(&[
        "witness",
        "--preset",
        "q8",
        "--orbit",
        "p-primitives",
        "--p",
        "2",
        "--radius",
        "6",
    ]);
    let r = &doc["result"];
    assert_eq!(doc["verdict"], "proper");
    assert_eq!(r["dims"]["h1"], 9);
    assert_eq!(r["dims"]["projRank"], 4);
    assert_eq!(r["dims"]["projSpanRank"], 0);
    assert!(r["dims"]["span"].as_u64().unwrap() <= 5);
    assert_eq!(r["orbit"]["mode"], "p-primitives(2)");
    assert_eq!(r["group"]["order"], 8);
}

#[test]
fn phi_reports_every_nonzero_vector() {
    let doc = json(&["phi", "--n", "3", "--p", "2", "--k", "2"]);
    assert_eq!(doc["result"]["verification"]["checked"], 7);
    assert_eq!(doc["result"]["verification"]["passed"], true);
    assert_eq!(doc["result"]["phi"]["degree"], 4);
}

#[test]
fn custom_surjection_finds_infinite_order() {
    let dir = tempfile::tempdir().unwrap();
    let z3 = write_z3(dir.path());
    let doc = json(&["chainrep", "--preset", z3.as_str()]);
    let found = &doc["result"]["search"]["found"];
    assert_eq!(doc["verdict"], "infinite-order");
    assert_eq!(found["kind"], "non-cyclotomic");
    assert_eq!(found["innCheck"]["passed"], true);
}

#[test]
fn intrep_export_has_integer_generators() {
    let doc = json(&["intrep", "--radius", "3"]);
    let rep = &doc["result"]["representation"];
    let degree = rep["degree"].as_u64().unwrap() as usize;
    let gens = rep["generators"].as_array().unwrap();
    assert_eq!(gens.len(), 2);
    for g in gens {
        let rows = g.as_array().unwrap();
        assert_eq!(rows.len(), degree);
        assert!(rows.iter().all(|r| r.as_array().unwrap().len() == degree));
    }
    assert_eq!(doc["result"]["cocycleIdentity"], true);
    assert!(doc["result"]["homomorphismFailures"].as_array().unwrap().is_empty());
}

#[test]
fn hall_dot_and_json_agree() {
    let dot = homocert(&["hall", "abAB", "--format", "dot"], &[]);
    let text = String::from_utf8(dot.stdout).unwrap();
    let doc = json(&["hall", "abAB"]);
    let index = doc["result"]["index"].as_u64().unwrap() as usize;
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches("->").count(), 2 * index);
    assert_eq!(doc["result"]["certificate"]["crossings"], 1);
    assert_eq!(doc["result"]["verified"], true);
}
