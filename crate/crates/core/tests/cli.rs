mod common;

use std::path::Path;
use std::process::Command;

use uniform_reducts::cli::{parse_bits, run};
use uniform_reducts::frege::parse_fplus;
use uniform_reducts::prop::parse_prop;

use common::fixture;

fn reduct(args: &[&str]) -> uniform_reducts::cli::Outcome {
    let mut all = vec!["reduct"];
    all.extend_from_slice(args);
    run(all)
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn translate_examples() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("(in X 0)", "X=1", "T"),
        ("(in X 5)", "X=3", "F"),
        ("(= (len X) 0)", "X=0", "T"),
    ];
    for (src, prof, want) in cases {
        let f = write(dir.path(), "f", src);
        let o = reduct(&["translate", &f, "--profile", prof]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert_eq!(o.stdout.trim(), want);
    }
    let f = write(dir.path(), "f", "(ex x (len X) (in X x))");
    let o = reduct(&["translate", &f, "--profile", "X=3", "--no-fold"]);
    assert_eq!(o.code, 0);
    let t = parse_prop(o.stdout.trim()).unwrap();
    assert_eq!(t.atoms().len(), 2);
    let o = reduct(&["translate", &f, "--profile", "X=three"]);
    assert_eq!(o.code, 2);
}

#[test]
fn check_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = fixture("excluded_middle.proof");
    let o = reduct(&["check", good.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.stdout);
    assert!(o.stdout.starts_with("accepted (| q1 (~ q1))"));

    let text = std::fs::read_to_string(&good).unwrap();
    let bad = text.replace("MP 21 22", "MP 22 21");
    let o = reduct(&["check", &write(dir.path(), "bad", &bad)]);
    assert_eq!(o.code, 1);
    assert!(o.stdout.contains("line 23"));

    let garbage = dir.path().join("garbage");
    std::fs::write(&garbage, [0xff, 0x00, 0x13, 0x37]).unwrap();
    assert_eq!(reduct(&["check", garbage.to_str().unwrap()]).code, 2);
    let o = reduct(&["check", &write(dir.path(), "junk", "LINE one two\n")]);
    assert_eq!(o.code, 2);
}

#[test]
fn simulate_examples() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();

    // truth-table proof of q1 ∨ ¬q1
    let a = write(d, "a", "(| q1 (~ q1))");
    let u = d.join("u").to_str().unwrap().to_string();
    assert_eq!(reduct(&["prove", &a, "-o", &u]).code, 0);
    for mode in ["premise", "oracle-import", "reduct-import"] {
        let out = d.join(format!("{mode}.fp"));
        let rep = d.join(format!("{mode}.simrun"));
        let o = reduct(&[
            "simulate",
            &u,
            "--mode",
            mode,
            "-o",
            out.to_str().unwrap(),
            "--report",
            rep.to_str().unwrap(),
        ]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        let report = std::fs::read_to_string(&rep).unwrap();
        let last: serde_json::Value = serde_json::from_str(report.lines().last().unwrap()).unwrap();
        assert_eq!(last["verdict"], "accepted");
        assert_eq!(last["conclusion"], "(| q1 (~ q1))");
        let stages: Vec<serde_json::Value> = report
            .lines()
            .take(6)
            .map(|l| serde_json::from_str(l).unwrap())
            .collect();
        assert!(stages
            .windows(2)
            .all(|w| w[0]["cumulative_size"].as_u64() <= w[1]["cumulative_size"].as_u64()));
        let fp = parse_fplus(&std::fs::read_to_string(&out).unwrap()).unwrap();
        assert_eq!(fp.conclusion().unwrap().to_string(), "(| q1 (~ q1))");
        if mode != "premise" {
            let o = reduct(&["check", out.to_str().unwrap()]);
            assert_eq!(o.code, 0, "{}", o.stdout);
        }
    }

    // formula system at n = 3
    let desc = write(
        d,
        "sys.json",
        r#"{"system":"formula","formula":"(all x (len X) (imp (in X x) (in X x)))","vars":["X"]}"#,
    );
    let u3 = write(d, "u3", "001");
    let out = d.join("fs.fp");
    let o = reduct(&[
        "simulate",
        "--system",
        &desc,
        &u3,
        "--mode",
        "reduct-import",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.contains("\"verdict\":\"accepted\""));
    let fp = parse_fplus(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let want = "(& (> pX.0 pX.0) (> pX.1 pX.1))";
    assert_eq!(fp.conclusion().unwrap().to_string(), want);

    // malformed proof string: compute gives ⊤
    let junk = write(d, "junk", "1011");
    let o = reduct(&["simulate", &junk, "--mode", "oracle-import"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.contains("\"conclusion\":\"T\""));

    assert_eq!(reduct(&["simulate", &write(d, "x", "01x")]).code, 2);
    assert_eq!(reduct(&["simulate", "--system", "nope", &junk]).code, 2);
}

#[test]
fn oracle_examples() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let cases = [
        ("(ex x (len X) (in X x))", "X=3", true, 0),
        ("(in X 0)", "X=3", false, 1),
        ("(= 0 0)", "", true, 0),
    ];
    for (src, prof, taut, code) in cases {
        let f = write(d, "f", src);
        let o = reduct(&["oracle", &f, "--profile", prof]);
        assert_eq!(o.code, code, "{src}: {}", o.stderr);
        let v: serde_json::Value = serde_json::from_str(o.stdout.trim()).unwrap();
        assert_eq!(v["tautology"], taut);
        assert_eq!(v["semantic"], taut);
        assert_eq!(v["agree"], true);
    }
}

#[test]
fn evalgen_and_bench() {
    let o = reduct(&["evalgen"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.starts_with("(ex n (len Z)"));

    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f", "(| q1 (~ q1))");
    let o = reduct(&["evalgen", "--encode", &f]);
    assert_eq!(o.code, 0);
    let bits = o.stdout.lines().nth(1).unwrap();
    assert_eq!(parse_bits(bits).unwrap().length(), 4 * 3 + 3 * 9 + 1);

    let o = reduct(&["bench", "--family", "excluded-middle:1..4"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let rows: Vec<&str> = o.stdout.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 5);
    assert!(o.stdout.contains("# slope"));
    assert!(o.stderr.contains("only 4") || o.stderr.is_empty());

    let o = reduct(&["bench", "--family", "excluded-middle:2..2"]);
    assert_eq!(o.code, 0);
    assert!(!o.stdout.contains("# slope"));
    assert!(o.stderr.contains("warning"));

    assert_eq!(reduct(&["bench", "--system", "nope"]).code, 2);
    assert_eq!(reduct(&["frobnicate"]).code, 2);
}

#[test]
fn binary_is_deterministic() {
    let f = fixture("excluded_middle.proof");
    let outs: Vec<_> = (0..2)
        .map(|_| {
            Command::new(env!("CARGO_BIN_EXE_reduct"))
                .args(["check", f.to_str().unwrap()])
                .output()
                .unwrap()
        })
        .collect();
    assert_eq!(outs[0].status.code(), Some(0));
    assert_eq!(outs[0].stdout, outs[1].stdout);
}
