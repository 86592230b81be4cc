use std::process::Command;

use jacobi::space::{build_space, SpaceSpec};

fn jacobi(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_jacobi")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let (code, out, err) = jacobi(&all);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn rank_matches_library() {
    let v = json(&["rank", "--space", "Ac", "--degree", "2"]);
    assert_eq!(v["schema"], 1);
    let space = build_space(&SpaceSpec::connected_closed(2)).unwrap();
    assert_eq!(v["rank"], space.rank());
    assert_eq!(v["classes"], 2);
}

#[test]
fn verify_spanning_passes() {
    let (code, out, _) = jacobi(&["verify-spanning", "--n", "3"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("result: PASS"));
    assert!(out.contains("span_rank: 1") && out.contains("space_rank: 1"));
}

#[test]
fn bound_table_line() {
    let (_, out, _) = jacobi(&["bound", "table", "--n", "3", "--l", "3"]);
    assert!(out.starts_with("guarantee: Y_5 (special-leaf table, l=n)"));
    let v = json(&["bound", "one-special", "--n", "2", "--m", "0"]);
    assert_eq!(v["level"], 3);
    assert!(v["notes"][0].as_str().unwrap().contains("diffeomorphic"));
    let v = json(&["bound", "linear-special", "--n", "2", "--refined"]);
    assert_eq!(v["level"], 6);
    let v = json(&["bound", "crossing", "--k1", "1", "--k2", "1", "--site1", "edge:0", "--site2", "leaf:1"]);
    assert_eq!((v["edges_involved"].as_u64(), v["residual_degree"].as_u64()), (Some(1), Some(3)));
}

#[test]
fn exit_codes() {
    assert_eq!(jacobi(&["bound", "table", "--n", "1", "--l", "0"]).0, 2);
    assert_eq!(jacobi(&["tsigma", "--n", "3", "--sigma", "1,1"]).0, 2);
    assert_eq!(jacobi(&["rank", "--degree", "3", "--max-classes", "2"]).0, 3);
    assert_eq!(jacobi(&["no-such-command"]).0, 2);
    assert_eq!(jacobi(&["reduce", "--input", "/nonexistent/file"]).0, 2);
}

#[test]
fn bad_diagram_file_is_a_validation_error() {
    let dir = std::env::temp_dir().join(format!("jacobi-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("bad.txt");
    std::fs::write(&p, "deg 1 circles 0\nt0: e0 e1\n").unwrap();
    let (code, _, err) = jacobi(&["reduce", "--input", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("error"));
}

#[test]
fn generators_round_trip_through_reduce() {
    let dir = std::env::temp_dir().join(format!("jacobi-cli-rt-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let v = json(&["gamma", "--n", "4", "--sigma", "3,1,2"]);
    let p = dir.join("gamma.txt");
    std::fs::write(&p, v["diagram"].as_str().unwrap()).unwrap();
    let r = json(&["reduce", "--input", p.to_str().unwrap(), "--space", "Ac"]);
    assert_eq!(r["rank"], 1);
    assert_eq!(r["coordinates"].as_array().unwrap().len(), 1);
    assert_ne!(r["coordinates"][0], "0");
}

#[test]
fn threads_do_not_change_output() {
    let args = ["rank", "--degree", "3", "--self-loops", "--integral"];
    let outs: Vec<String> =
        ["1", "2", "8"].iter().map(|t| jacobi(&[&args[..], &["--threads", t]].concat()).1).collect();
    assert!(outs.windows(2).all(|w| w[0] == w[1]));
    let outs: Vec<String> = ["1", "3"]
        .iter()
        .map(|t| jacobi(&["check-insertion", "--spec", "0:0,1:0,2:0", "--spec", "2:0,2:1,2:2", "--threads", t]).1)
        .collect();
    assert_eq!(outs[0], outs[1]);
    assert!(outs[0].starts_with("result: PASS"));
}

#[test]
fn every_subcommand_runs() {
    let dir = std::env::temp_dir().join(format!("jacobi-cli-all-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let tree = json(&["tsigma", "--n", "4", "--sigma", "2,1,3"]);
    let tp = dir.join("tree.txt");
    std::fs::write(&tp, tree["diagram"].as_str().unwrap()).unwrap();
    let tp = tp.to_str().unwrap();
    let m = dir.join("m.txt");
    let cases: Vec<Vec<&str>> = vec![
        vec!["enumerate", "--degree", "2", "--diagrams"],
        vec!["enumerate", "--degree", "2", "--circles", "1", "--legs", "2"],
        vec!["rank", "--degree", "1", "--circles", "1", "--export-matrix", m.to_str().unwrap()],
        vec!["glue", "--n", "3", "--sigma", "1,2", "--tau", "2,1"],
        vec!["glue", "--left", tp, "--right", tp],
        vec!["insert", "--place", "0:0,0:1,2:0"],
        vec!["check-insertion", "--spec", "0:0,1:0,2:0"],
        vec!["theta", "--n", "2", "--reduce"],
        vec!["linearize", "--input", tp, "--end1", "0", "--end2", "1", "--verify"],
        vec!["bound", "brunnian", "--n", "3", "--framings", "1,-1,0,2"],
        vec!["bound", "link-homotopy", "--n", "3", "--homology-sphere"],
        vec!["oracle-compare", "--degree", "1"],
    ];
    for c in cases {
        let (code, out, err) = jacobi(&c);
        assert_eq!(code, 0, "{c:?}: {err}");
        assert!(!out.is_empty());
    }
    assert!(std::fs::read_to_string(&m).unwrap().contains("# rows"));
}
