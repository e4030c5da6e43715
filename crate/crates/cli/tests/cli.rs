use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn qip(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qip"))
        .args(args)
        .output()
        .expect("qip runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn json(p: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

const GSA_SMALL: &str =
    r#"{"kind":"gsa","alpha":[{"num":"1","den":"3"}],"n":"3","eps":{"num":"1","den":"3"}}"#;

#[test]
fn generation_is_deterministic() {
    let a = qip(&["gen", "gsa", "--d", "2", "--N", "10", "--den", "8", "--seed", "7"]);
    let b = qip(&["gen", "gsa", "--d", "2", "--N", "10", "--den", "8", "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["kind"], "gsa");
    assert_eq!(v["n"], "10");
    assert_eq!(v["alpha"].as_array().unwrap().len(), 2);
    let c = qip(&["gen", "gsa", "--d", "2", "--N", "10", "--den", "8", "--seed", "8"]);
    assert_ne!(a.stdout, c.stdout);

    let q = qip(&["gen", "q3sat", "--k", "1", "--ell", "2", "--clauses", "3", "--seed", "1"]);
    let v: Value = serde_json::from_slice(&q.stdout).unwrap();
    assert_eq!(v["kind"], "q3sat");
    assert_eq!(v["clauses"].as_array().unwrap().len(), 3);
}

#[test]
fn three_quantifier_shape() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "g.json", GSA_SMALL);
    let out = dir.path().join("s.json");
    let o = qip(&["reduce", inst.to_str().unwrap(), "--target", "eae", "-o", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let s = json(&out);
    let blocks = s["blocks"].as_array().unwrap();
    assert_eq!(blocks[0]["q"], "exists");
    assert_eq!(blocks[0]["box"]["lo"], serde_json::json!(["1"]));
    assert_eq!(blocks[0]["box"]["hi"], serde_json::json!(["3"]));
    assert_eq!(blocks[1]["q"], "forall");
    assert_eq!(blocks[1]["box"]["lo"], serde_json::json!(["1", "0"]));
    assert_eq!(blocks[1]["box"]["hi"], serde_json::json!(["2", "1"]));
    assert_eq!(blocks[2]["unbounded"], 3);
    assert_eq!(s["constraint"]["dim"], 6);
    assert_eq!(s["provenance"]["d"], 2);
    assert_eq!(s["provenance"]["ell"], 2);
    assert_eq!(s["provenance"]["source"]["kind"], "gsa");
    let d = qip(&["decide", out.to_str().unwrap()]);
    assert_eq!(stdout(&d).trim(), "true");
}

#[test]
fn reduce_is_reproducible_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let gen = qip(&["gen", "gsa", "--d", "2", "--N", "6", "--den", "6", "--seed", "3"]);
    let inst = write(dir.path(), "g.json", &stdout(&gen));
    for target in ["eae", "proj", "simplices", "two-quant"] {
        let a = qip(&["reduce", inst.to_str().unwrap(), "--target", target]);
        let b = qip(&["reduce", inst.to_str().unwrap(), "--target", target]);
        assert!(a.status.success(), "{target}");
        assert_eq!(a.stdout, b.stdout, "{target}");
        // The provenance header alone re-derives the output.
        let v: Value = serde_json::from_slice(&a.stdout).unwrap();
        let src = write(dir.path(), "src.json", &v["provenance"]["source"].to_string());
        let c = qip(&["reduce", src.to_str().unwrap(), "--target", target]);
        assert_eq!(a.stdout, c.stdout, "{target}");
    }
    let s = write(dir.path(), "s.json", &stdout(&qip(&["reduce", inst.to_str().unwrap(), "--target", "eae"])));
    let e = qip(&["export", s.to_str().unwrap(), "--format", "native-json"]);
    assert_eq!(e.stdout, fs::read(&s).unwrap());
}

#[test]
fn projection_header_and_count() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(
        dir.path(),
        "g.json",
        r#"{"kind":"gsa","alpha":[{"num":"1","den":"2"},{"num":"2","den":"3"}],"n":"4","eps":{"num":"1","den":"4"}}"#,
    );
    let p = write(dir.path(), "p.json", &stdout(&qip(&["reduce", inst.to_str().unwrap(), "--target", "proj"])));
    let v = json(&p);
    assert_eq!(v["kind"], "projection");
    assert_eq!(v["provenance"]["T"], v["t"]);
    assert_eq!(v["provenance"]["m"], v["m"]);
    let projected: u64 = stdout(&qip(&["count", p.to_str().unwrap()])).trim().parse().unwrap();
    let direct: u64 = stdout(&qip(&["count", inst.to_str().unwrap()])).trim().parse().unwrap();
    assert_eq!(projected + direct, 4);
    let s = write(dir.path(), "t.json", &stdout(&qip(&["reduce", inst.to_str().unwrap(), "--target", "simplices"])));
    let via_simplices: u64 = stdout(&qip(&["count", s.to_str().unwrap()])).trim().parse().unwrap();
    assert_eq!(via_simplices, projected);
}

#[test]
fn q3sat_sentence_dimension() {
    let dir = tempfile::tempdir().unwrap();
    let gen = qip(&["gen", "q3sat", "--k", "1", "--ell", "2", "--clauses", "3", "--seed", "1"]);
    let inst = write(dir.path(), "q.json", &stdout(&gen));
    let s = write(dir.path(), "s.json", &stdout(&qip(&["reduce", inst.to_str().unwrap(), "--target", "qsat"])));
    assert_eq!(json(&s)["constraint"]["dim"], 8);
    let o = qip(&["verify", inst.to_str().unwrap(), "--target", "qsat"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("PASS qsat"));
}

#[test]
fn verify_reports_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "g.json", GSA_SMALL);
    let p = inst.to_str().unwrap();
    for target in ["eae", "proj", "simplices", "two-quant"] {
        let o = qip(&["verify", p, "--target", target]);
        assert_eq!(o.status.code(), Some(0), "{target}");
        assert!(stdout(&o).starts_with(&format!("PASS {target} gsa alpha=[1/3] N=3 eps=1/3")));
    }
    let o = qip(&["verify", p, "--target", "proj"]);
    assert!(stdout(&o).contains("count=3 N-projcount=3"));
    // Over budget is a skip, not a failure.
    let o = qip(&["verify", p, "--target", "eae", "--budget", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("SKIP"));
    // Usage errors.
    assert_eq!(qip(&["verify", p, "--target", "qsat"]).status.code(), Some(3));
    assert_eq!(qip(&["verify", p]).status.code(), Some(3));
    assert_eq!(qip(&["nonsense"]).status.code(), Some(3));
    assert_eq!(qip(&["decide", "/nonexistent.json"]).status.code(), Some(3));
    let bad = write(dir.path(), "bad.json", r#"{"kind":"gsa","alpha":[],"n":"3","eps":{"num":"1","den":"3"}}"#);
    assert_eq!(qip(&["decide", bad.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn sweep_small_passes_every_trial() {
    let o = qip(&["verify", "sweep", "--grid", "small"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let last = out.lines().last().unwrap();
    let trials = out.lines().filter(|l| l.starts_with("PASS ") || l.starts_with("FAIL ") || l.starts_with("SKIP ")).count();
    assert_eq!(last, format!("sweep small: {trials}/{trials} PASS, 0 FAIL, 0 SKIP"));
}

#[test]
fn smtlib_export() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "g.json", GSA_SMALL);
    let s = write(dir.path(), "s.json", &stdout(&qip(&["reduce", inst.to_str().unwrap(), "--target", "eae"])));
    let o = qip(&["export", s.to_str().unwrap(), "--format", "smtlib2-lia"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("(set-logic LIA)"));
    assert!(text.contains("(assert (exists ((x0 Int)) (and (<= 1 x0) (<= x0 3) (forall ((x1 Int) (x2 Int))"));
    assert!(text.contains("(exists ((x3 Int) (x4 Int) (x5 Int))"));
    assert!(text.trim_end().ends_with("(check-sat)\n(exit)".trim_end()));
    // Only sentences can be exported.
    assert_eq!(
        qip(&["export", inst.to_str().unwrap(), "--format", "smtlib2-lia"]).status.code(),
        Some(3)
    );
}

#[test]
fn vertex_form_for_two_blocks() {
    let dir = tempfile::tempdir().unwrap();
    let gen = qip(&["gen", "q3sat", "--k", "2", "--ell", "1", "--clauses", "2", "--seed", "3"]);
    let inst = write(dir.path(), "q.json", &stdout(&gen));
    let s = write(dir.path(), "s.json", &stdout(&qip(&["reduce", inst.to_str().unwrap(), "--target", "qsat"])));
    let v = json(&s);
    assert!(v["constraint"]["vertices"].is_array());
    assert_eq!(v["constraint"]["dim"], 9);
    let e = qip(&["export", s.to_str().unwrap(), "--format", "native-json"]);
    assert_eq!(e.stdout, fs::read(&s).unwrap());
    let smt = stdout(&qip(&["export", s.to_str().unwrap(), "--format", "smtlib2-lia"]));
    assert!(smt.contains("(set-logic LIRA)"));
    let formula = stdout(&qip(&["decide", inst.to_str().unwrap()]));
    let sentence = stdout(&qip(&["decide", s.to_str().unwrap()]));
    assert_eq!(formula, sentence);
}
