use std::process::{Command, Output};

use qdyb_core::cartan::root_system;
use qdyb_core::context::Context;
use qdyb_core::exact::{parse_ratfun, Rat, Symbolic};
use qdyb_core::exchange::exchange_matrix;
use qdyb_core::repmod::irrep;
use serde_json::Value;

fn qdyb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdyb")).args(args).output().unwrap()
}

fn index(label: &str, dims: &[usize]) -> usize {
    label
        .split(',')
        .zip(dims)
        .fold(0, |acc, (p, d)| acc * d + p.parse::<usize>().unwrap())
}

#[test]
fn exchange_golden_output() {
    let out = qdyb(&["compute", "exchange", "--modules", "L(1),L(1)"]);
    assert_eq!(out.status.code(), Some(0));
    let want = concat!(
        r#"{"codomain":["L(1)","L(1)"],"domain":["L(1)","L(1)"],"entries":["#,
        r#"["0,0","0,0","1"],["0,1","0,1","1"],["0,1","1,0","-1/(x1+1)"],"#,
        r#"["1,0","0,1","1/(x1+1)"],["1,0","1,0","(x1^2+2*x1)/(x1^2+2*x1+1)"],"#,
        r#"["1,1","1,1","1"]]}"#,
        "\n"
    );
    assert_eq!(String::from_utf8(out.stdout).unwrap(), want);
}

#[test]
fn exit_codes() {
    assert_eq!(qdyb(&["verify", "nope"]).status.code(), Some(2));
    assert_eq!(
        qdyb(&["compute", "exchange", "--modules", "L(1"]).status.code(),
        Some(2)
    );
    assert_eq!(qdyb(&["compute", "fusion", "--algebra", "B2"]).status.code(), Some(2));
    assert_eq!(qdyb(&["verify", "qdybe", "--mode", "numeric"]).status.code(), Some(2));
    assert_eq!(
        qdyb(&["verify", "mr", "--mode", "numeric", "--seed", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        qdyb(&["verify", "diffop-commute", "--modules", "L(1)"]).status.code(),
        Some(2)
    );
    assert_eq!(qdyb(&["--help"]).status.code(), Some(0));
    let ok = qdyb(&["verify", "qdybe", "--modules", "L(1),L(2)"]);
    assert_eq!(ok.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(doc["status"], "pass");
    assert_eq!(doc["reports"][0]["operands"], "L(1), L(2), L(1)");
}

#[test]
fn json_round_trip_symbolic_and_numeric() {
    let ctx = Context::new(root_system(1).unwrap(), Symbolic::new(1, "x"));
    let l1 = irrep(&ctx.rs, &[1]).unwrap();
    let l2 = irrep(&ctx.rs, &[2]).unwrap();
    let r = exchange_matrix(&ctx, &l1, &l2, &ctx.origin()).unwrap();
    let dims = [2, 3];

    let out = qdyb(&["compute", "exchange", "--modules", "L(1),L(2)"]);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    let entries = doc["entries"].as_array().unwrap();
    let nonzero = r.entries().filter(|(_, _, e)| !e.is_zero()).count();
    assert_eq!(entries.len(), nonzero);
    for e in entries {
        let (row, col) = (
            index(e[0].as_str().unwrap(), &dims),
            index(e[1].as_str().unwrap(), &dims),
        );
        let val = parse_ratfun(e[2].as_str().unwrap(), "x", 1).unwrap();
        assert_eq!(&val, r.get(row, col));
    }

    let out = qdyb(&[
        "compute",
        "exchange",
        "--modules",
        "L(1),L(2)",
        "--mode",
        "numeric",
        "--seed",
        "9",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    let point: Vec<Rat> = doc["sample"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap().parse().unwrap())
        .collect();
    let entries = doc["entries"].as_array().unwrap();
    assert_eq!(entries.len(), nonzero);
    for e in entries {
        let (row, col) = (
            index(e[0].as_str().unwrap(), &dims),
            index(e[1].as_str().unwrap(), &dims),
        );
        let val: Rat = e[2].as_str().unwrap().parse().unwrap();
        assert_eq!(val, r.get(row, col).eval(&point).unwrap());
    }
}

#[test]
fn verify_writes_file_matching_stdout() {
    let dir = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join("cli-verify-eta.json");
    let a = qdyb(&[
        "verify",
        "eta",
        "--modules",
        "L(1),L(2)",
        "--out",
        path.to_str().unwrap(),
    ]);
    let b = qdyb(&["verify", "eta", "--modules", "L(1),L(2)"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(std::fs::read(&path).unwrap(), b.stdout);
}
