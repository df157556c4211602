use qwalk::poly::{divides, parse_int_poly, IntPoly};
use std::process::Command;

fn qwalk(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qwalk"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
    )
}

const EX: &str = "(-1,0),(0,1),(1,0),(1,-1),(0,-1)";

#[test]
fn classify_json_and_exit_codes() {
    let (code, out) = qwalk(&["classify", "--steps", EX, "--fit-n", "0"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], "1");
    assert_eq!(v["verdict"], "not_d_finite");
    assert_eq!(v["matched_tag"], "23");
    assert_eq!(v["rho"]["decimal"], "4.729031538");

    let (code, _) = qwalk(&["classify", "--steps", "(-1,1),(1,1),(1,-1)", "--fit-n", "0"]);
    assert_eq!(code, 2);
    let (code, _) = qwalk(&["classify", "--steps", "(1,2"]);
    assert_eq!(code, 4);
    let (code, _) = qwalk(&["classify", "--steps", EX, "--max-n", "100000"]);
    assert_eq!(code, 4);
}

#[test]
fn enumerate_and_eliminants() {
    let (code, out) = qwalk(&["enumerate", "--steps", EX, "--max-n", "8"]);
    assert_eq!(code, 0);
    assert_eq!(
        out.lines().collect::<Vec<_>>(),
        ["1", "0", "2", "1", "10", "14", "75", "178", "738"]
    );
    let (_, out) = qwalk(&["enumerate", "--steps", EX, "--max-n", "3", "--json"]);
    assert_eq!(out.trim(), r#"["1","0","2","1"]"#);
    let (code, out) = qwalk(&[
        "eliminants",
        "--steps",
        "(-1,0),(0,-1),(1,1)",
        "--target",
        "rho",
    ]);
    assert_eq!(code, 0);
    let e = parse_int_poly(out.trim(), "t").unwrap();
    assert!(divides(&IntPoly::from_i64s(&[-3, 1]), &e).unwrap(), "{out}");
}

#[test]
fn check_tables_filtered() {
    let (code, out) = qwalk(&["check-tables", "--table", "2", "--tags", "(40,42)"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("1/1 rows pass"));
}
