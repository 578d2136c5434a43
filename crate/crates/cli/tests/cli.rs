use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use skein_core::coeff::{ReesElement, Variant};

fn corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn file(rel: &str) -> String {
    corpus().join(rel).display().to_string()
}

fn skeinx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skeinx"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(o: &Output) -> Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("stdout is json")
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("skeinx-{}-{}", name, std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn copy_dir(from: &PathBuf, to: &PathBuf) {
    std::fs::create_dir_all(to).unwrap();
    for e in std::fs::read_dir(from).unwrap() {
        let e = e.unwrap();
        let target = to.join(e.file_name());
        if e.file_type().unwrap().is_dir() {
            copy_dir(&e.path(), &target);
        } else {
            std::fs::copy(e.path(), target).unwrap();
        }
    }
}

#[test]
fn trefoil_value_in_the_ball() {
    let v = json(&skeinx(&[
        "expand",
        "--ambient",
        "disk",
        &file("diagrams/trefoil_right.json"),
    ]));
    let got = ReesElement::parse(Variant::Oriented, v["[]"].as_str().unwrap()).unwrap();
    let want = ReesElement::parse(Variant::Oriented, "q^2*u + q^3*h*u^2 + q^2*h*z*u").unwrap();
    assert_eq!(got, want);
    assert_eq!(v.as_object().unwrap().len(), 1);
}

#[test]
fn inline_braid_in_the_annulus() {
    let v = json(&skeinx(&["expand", "--ambient", "annulus", "B2: -s1"]));
    assert_eq!(v, serde_json::json!({"[2]": "q^-2", "[1,1]": "-q^-1*h"}));
}

#[test]
fn missing_and_malformed_inputs_exit_2() {
    let o = skeinx(&["expand", "no/such/file.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no/such/file.json"));
    let d = scratch("malformed");
    let bad = d.join("bad.json");
    std::fs::write(&bad, r#"{"crossings":[{"id":0,"ends":[1,2,3],"sign":1}]}"#).unwrap();
    let o = skeinx(&["expand", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.json"));
    let o = skeinx(&[
        "expand",
        "--ambient",
        "annulus",
        &file("diagrams/unknot.json"),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = skeinx(&["expand", "--mode", "sideways", "B1: "]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_is_byte_deterministic() {
    for args in [
        vec!["expand".to_string(), file("diagrams/borromean.json")],
        vec![
            "vassiliev".to_string(),
            "--order".to_string(),
            "3".to_string(),
            file("diagrams/figure_eight.json"),
        ],
        vec![
            "deform".to_string(),
            file("groupoids/kinked.json"),
            "--seed".to_string(),
            "4".to_string(),
        ],
    ] {
        let a: Vec<&str> = args.iter().map(|s| s.as_str()).collect();
        let x = skeinx(&a);
        let y = skeinx(&a);
        assert!(x.status.success());
        assert_eq!(x.stdout, y.stdout);
    }
}

#[test]
fn output_flag_writes_the_file() {
    let d = scratch("output");
    let out = d.join("hopf.json");
    let o = skeinx(&[
        "expand",
        &file("diagrams/hopf_plus.json"),
        "--output",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    let got = ReesElement::parse(Variant::Oriented, v["[]"].as_str().unwrap()).unwrap();
    assert_eq!(
        got,
        ReesElement::parse(Variant::Oriented, "q^2*u^2 + q*z*u").unwrap()
    );
}

#[test]
fn loop_files_are_consistent() {
    for f in ["loops/trefoil_kink.json", "loops/annulus_kink.json"] {
        let v = json(&skeinx(&["loop-eval", &file(f)]));
        assert_eq!(v["consistency"]["zero"], Value::Bool(true), "{}", f);
        assert_eq!(v["lin"]["agree"], Value::Bool(true));
        assert_eq!(v["delta_prime"].as_i64().unwrap().abs(), 1);
        assert_eq!(v["mu"].as_array().unwrap().len(), 1);
    }
}

#[test]
fn deform_reports_round_trips() {
    let v = json(&skeinx(&[
        "deform",
        &file("groupoids/three.json"),
        "--words",
        "30",
    ]));
    let s = &v["summary"];
    assert_eq!(s["count"], 30);
    assert_eq!(s["p_q_i_q_identity"], 30);
    assert_eq!(s["running_formula_functorial"], 30);
}

#[test]
fn formal_and_torus_commands() {
    let v = json(&skeinx(&[
        "formal",
        &file("groupoids/diamond.json"),
        "--level",
        "2",
        "--bound",
        "3",
    ]));
    for e in v.as_array().unwrap() {
        assert_eq!(e["well_defined"], Value::Bool(true), "{}", e["object"]);
    }
    let v = json(&skeinx(&["torus-decomp", &file("torus.json")]));
    assert!(v
        .as_array()
        .unwrap()
        .iter()
        .any(|s| s["summand"] == "R/(q^4-1)"));
}

#[test]
fn framed_plus_scales_by_q_over_v() {
    let v = json(&skeinx(&["framed", &file("diagrams/trefoil_right.json")]));
    let e = ReesElement::parse(Variant::Framed, v["expansion"]["[]"].as_str().unwrap()).unwrap();
    let p = ReesElement::parse(Variant::Framed, v["plus"]["[]"].as_str().unwrap()).unwrap();
    let f = ReesElement::parse(Variant::Framed, "q*v^-1").unwrap();
    assert_eq!(&e * &f, p);
    assert_eq!(v["total_framing"], 3);
}

#[test]
fn selftest_scopes_and_exit_codes() {
    let o = skeinx(&["selftest", "--scope", "loops"]);
    let v = json(&o);
    let ids: Vec<i64> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["criterion"].as_i64().unwrap())
        .collect();
    assert_eq!(ids, [6, 7]);
    let o = skeinx(&["selftest", "--scope", "jones"]);
    assert_eq!(o.status.code(), Some(1));
    let o = skeinx(&["selftest", "--scope", "jones", "--allow-known"]);
    assert_eq!(o.status.code(), Some(0));
    let o = skeinx(&["selftest", "--scope", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn corrupted_corpus_names_the_file() {
    let d = scratch("corpus");
    let c = d.join("corpus");
    copy_dir(&corpus(), &c);
    std::fs::write(c.join("groupoids/chain.json"), "{ not json").unwrap();
    let o = skeinx(&["selftest", "--corpus", c.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("chain.json"));
}
