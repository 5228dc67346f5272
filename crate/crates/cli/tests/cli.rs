use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use nilpair::{BlockLabel, FieldSpec, MatrixPair, PairDocument, SqMatrix};
use serde_json::Value;

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_nilpair"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn doc(p: &MatrixPair) -> String {
    PairDocument::from_pair(p).to_json()
}

#[test]
fn canon_matches_golden() {
    for (input, expected) in [
        ("j4_input.json", "j4_canon.json"),
        ("irreducible_gf2_input.json", "irreducible_gf2_canon.json"),
    ] {
        let path = golden(input);
        let out = run(&["canon", path.to_str().unwrap()], "");
        assert_eq!(
            String::from_utf8(out.stdout).unwrap(),
            std::fs::read_to_string(golden(expected)).unwrap()
        );
    }
    let path = golden("irreducible_gf2_input.json");
    let out = run(&["canon", "--allow-extension", path.to_str().unwrap()], "");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        std::fs::read_to_string(golden("irreducible_gf2_extension.json")).unwrap()
    );
}

#[test]
fn jordan_square_is_family_one() {
    let text = std::fs::read_to_string(golden("j4_input.json")).unwrap();
    let out = run(&["canon"], &text);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["canon_form"][0]["label"], "1.1");
    assert_eq!(v["canon_form"][0]["params"], serde_json::json!(["0", "1", "0"]));
    assert_eq!(v["indecomposable_blocks"], 1);
}

#[test]
fn not_commuting_is_a_validation_error() {
    let out = run(&["canon"], r#"{"A":[[0,1],[0,0]],"B":[[0,0],[1,0]]}"#);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["error"]["message"], "not commuting");
}

#[test]
fn irreducible_corner_exits_two() {
    let path = golden("irreducible_gf2_input.json");
    let out = run(&["canon", path.to_str().unwrap()], "");
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_of(&out)["error"]["charpoly"], "t^2+t+1");
}

#[test]
fn similar_outcomes() {
    let q = FieldSpec::Rationals;
    let s = |v: i64| q.from_i64(v);
    let p21 = BlockLabel::F21.build(q, &[s(0), s(1)]).unwrap();
    let p22 = BlockLabel::F22.build(q, &[s(0)]).unwrap();
    let out = run(&["similar"], &format!("[{},{}]", doc(&p21), doc(&p22)));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["similar"], false);

    let x = SqMatrix::from_array(q, [[1, 2, 0, 1], [0, 1, 0, 0], [3, 0, 1, 0], [0, 0, 1, 1]]).unwrap();
    let moved = p21.conjugate_by(&x).unwrap();
    let out = run(&["similar"], &format!("[{},{}]", doc(&p21), doc(&moved)));
    let v = json_of(&out);
    assert_eq!(v["similar"], true);
    let rows: Vec<Vec<_>> = v["witness"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            r.as_array()
                .unwrap()
                .iter()
                .map(|x| q.parse_scalar(x.as_str().unwrap()).unwrap())
                .collect()
        })
        .collect();
    let w = SqMatrix::from_rows(q, rows).unwrap();
    assert_eq!(p21.conjugate_by(&w).unwrap(), moved);

    let small = BlockLabel::J2.build(q, &[s(1)]).unwrap();
    let out = run(&["similar"], &format!("[{},{}]", doc(&p21), doc(&small)));
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn output_is_byte_deterministic() {
    let text = std::fs::read_to_string(golden("j4_input.json")).unwrap();
    for args in [&["canon"][..], &["commutant"], &["indecomposable"], &["check"]] {
        let a = run(args, &text);
        let b = run(args, &text);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.status.code(), Some(0));
    }
    let a = run(&["enumerate", "--p", "2", "--n", "2"], "");
    assert_eq!(
        String::from_utf8(a.stdout).unwrap(),
        std::fs::read_to_string(golden("enumerate_gf2_n2.json")).unwrap()
    );
}

#[test]
fn canonical_pair_round_trips() {
    let f3 = FieldSpec::prime(3).unwrap();
    let p = BlockLabel::F31
        .build(f3, &[f3.from_i64(2), f3.from_i64(1)])
        .unwrap();
    let x = SqMatrix::from_array(f3, [[1, 1, 0, 0], [0, 1, 0, 2], [1, 0, 1, 0], [0, 0, 0, 1]]).unwrap();
    let out = run(&["canon"], &doc(&p.conjugate_by(&x).unwrap()));
    let v = json_of(&out);
    let again = run(&["canon"], &v["canonical_pair"].to_string());
    let w = json_of(&again);
    assert_eq!(v["canon_form"], w["canon_form"]);
    let parsed = PairDocument::from_json(&v["canonical_pair"].to_string())
        .unwrap()
        .parse(None)
        .unwrap();
    assert_eq!(parsed, p);
    assert_eq!(
        PairDocument::from_pair(&parsed),
        PairDocument::from_json(&v["canonical_pair"].to_string()).unwrap()
    );
}

#[test]
fn field_flag() {
    let out = run(&["check", "--field", "GF(3)"], r#"{"A":[[0,2],[0,0]],"B":[[0,1],[0,0]]}"#);
    assert_eq!(json_of(&out)["field"], "GF(3)");
    let out = run(&["check", "--field", "GF(4)"], r#"{"A":[[0]],"B":[[0]]}"#);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["check", "--field", "GF(2)"], r#"{"field":"GF(3)","A":[[0]],"B":[[0]]}"#);
    assert_eq!(json_of(&out)["error"]["kind"], "field_mismatch");
}

#[test]
fn indecomposable_and_commutant() {
    let out = run(&["indecomposable"], r#"{"A":[[0,1,0],[0,0,0],[0,0,0]],"B":[[0,0,0],[0,0,0],[0,0,0]]}"#);
    let v = json_of(&out);
    assert_eq!(v["indecomposable"], false);
    assert_eq!(v["method"], "idempotent_found");
    let text = std::fs::read_to_string(golden("j4_input.json")).unwrap();
    let v = json_of(&run(&["commutant"], &text));
    assert_eq!(v["dimension"], 4);
    assert_eq!(v["expected_dimension"], 4);
}

#[test]
fn enumerate_and_fields() {
    let v = json_of(&run(&["enumerate", "--p", "2", "--n", "3", "--crosscheck"], ""));
    assert_eq!(v["mismatches"], serde_json::json!([]));
    assert_eq!(v["orbit_size_checksum"], v["total_pairs"]);
    let out = run(&["enumerate", "--p", "3", "--n", "4", "--crosscheck"], "");
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&run(&["fields", "--show"], ""));
    assert_eq!(v["minimal_polynomials"][0]["minimal_polynomial"], "t^2+t+1");
    assert_eq!(v["minimal_polynomials"].as_array().unwrap().len(), 25);
}

#[test]
fn usage_errors_exit_one() {
    let out = run(&["frobnicate"], "");
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["enumerate", "--p", "2"], "");
    assert_eq!(out.status.code(), Some(1));
}
