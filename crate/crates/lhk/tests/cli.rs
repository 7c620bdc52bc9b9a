use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join(format!("{name}.json"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lhk-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

/// Exit code and parsed report (null when nothing was printed).
fn lhk(args: &[&str]) -> (i32, Value) {
    let o = Command::new(env!("CARGO_BIN_EXE_lhk")).args(args).env("LHK_THREADS", "2").output().unwrap();
    let report = if o.stdout.is_empty() { Value::Null } else { serde_json::from_slice(&o.stdout).unwrap() };
    (o.status.code().unwrap(), report)
}

fn p(name: &str) -> String {
    corpus(name).display().to_string()
}

fn named<'a>(r: &'a Value, name: &'a str) -> impl Iterator<Item = &'a Value> + 'a {
    r["records"].as_array().unwrap().iter().filter(move |x| x["name"] == name)
}

#[test]
fn validate_interval() {
    let (code, r) = lhk(&["validate", &p("interval")]);
    assert_eq!(code, 0);
    assert_eq!(r["overall"], "PASS");
    assert_eq!(r["summary"]["cells"], 3);
    assert_eq!(r["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn validate_reports_every_defect() {
    let f = scratch("broken.json");
    std::fs::write(&f, r#"{"cells":[{"id":"a","dim":0},{"id":"e","dim":1,"boundary":[["b",1]]},{"id":"f","dim":2,"boundary":[["a",1]]}]}"#).unwrap();
    let (code, r) = lhk(&["validate", f.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(r["overall"], "FAIL");
    let codes: Vec<&str> = named(&r, "cell_complex").map(|x| x["certificate"]["code"].as_str().unwrap()).collect();
    assert!(codes.contains(&"DIM_MISMATCH") && codes.contains(&"DANGLING_FACE"), "{codes:?}");
}

#[test]
fn mobius_is_a_manifold_but_not_orientable() {
    let (code, r) = lhk(&["validate", &p("mobius")]);
    assert_eq!(code, 0);
    let o = named(&r, "orientable").next().unwrap();
    assert_eq!((o["verdict"].as_str(), o["required"].as_bool()), (Some("FAIL"), Some(false)));
    assert_eq!(lhk(&["signature", &p("mobius"), "--relative"]).0, 1);
}

#[test]
fn malformed_and_missing_files() {
    let f = scratch("malformed.json");
    std::fs::write(&f, "{\"cells\": [").unwrap();
    assert_eq!(lhk(&["validate", f.to_str().unwrap()]), (3, Value::Null));
    assert_eq!(lhk(&["homology", "/nonexistent/x.json"]).0, 3);
}

#[test]
fn torus_homology() {
    let (code, r) = lhk(&["homology", &p("torus")]);
    assert_eq!(code, 0);
    assert_eq!(r["summary"]["profile"], "H0=Z H1=Z^2 H2=Z");
}

#[test]
fn relative_homology_of_the_interval() {
    let (code, r) = lhk(&["homology", &p("interval"), "--pair", "v0,v1"]);
    assert_eq!(code, 0);
    assert_eq!(r["summary"]["profile"], "H1=Z");
    assert_eq!(lhk(&["homology", &p("interval"), "--pair", "e"]).0, 1);
    assert_eq!(lhk(&["homology", &p("interval"), "--pair", "w"]).0, 2);
}

#[test]
fn subdivide_square() {
    let out = scratch("square_sd.json");
    let (code, r) = lhk(&["subdivide", &p("square"), "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["summary"]["counts"], serde_json::json!([9, 16, 8]));
    let (code, v) = lhk(&["validate", out.to_str().unwrap()]);
    assert_eq!((code, &v["summary"]["cells"]), (0, &serde_json::json!(33)));
}

#[test]
fn dual_cells() {
    let (code, r) = lhk(&["dual", &p("square"), "--cell", "f"]);
    assert_eq!(code, 0);
    assert_eq!(r["summary"]["counts"], serde_json::json!([1]));
    let out = scratch("dual_v0.json");
    let (code, r) = lhk(&["dual", &p("square"), "--cell", "v0", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["summary"]["counts"], serde_json::json!([4, 5, 2]));
    let f: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(f["cells"].as_array().unwrap().len(), 11);
    assert_eq!(f["boundary_cells"].as_array().unwrap().len(), 5);
    assert_eq!(lhk(&["dual", &p("square"), "--cell", "nope"]).0, 2);
}

#[test]
fn product_of_circles() {
    let out = scratch("torus.json");
    let (code, r) = lhk(&["product", &p("circle"), &p("circle"), "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["summary"]["cells"], 36);
    let (_, h) = lhk(&["homology", out.to_str().unwrap()]);
    assert_eq!(h["summary"]["profile"], "H0=Z H1=Z^2 H2=Z");
}

#[test]
fn duality_check_small_members() {
    for name in ["point", "interval", "circle"] {
        let (code, r) = lhk(&["duality-check", &p(name), "--samples", "3"]);
        assert_eq!((code, r["overall"].as_str()), (0, Some("PASS")), "{name}");
    }
}

#[test]
fn seeded_random_complexes_over_the_square() {
    let (code, r) = lhk(&["duality-check", &p("square"), "--seed", "7", "--samples", "4"]);
    assert_eq!(code, 0);
    let counits: Vec<&Value> = named(&r, "sample_counit").collect();
    assert_eq!(counits.len(), 8);
    assert!(counits.iter().all(|x| x["verdict"] == "PASS" && x["certificate"]["assembled"] == true));
}

#[test]
fn injected_corruption_is_located() {
    let (code, r) = lhk(&["duality-check", &p("corrupt_square"), "--samples", "1"]);
    assert_eq!(code, 2);
    assert_eq!(r["overall"], "FAIL");
    assert_eq!(r["summary"]["failing_balls"], serde_json::json!(["e2"]));
}

#[test]
fn signatures() {
    let (code, r) = lhk(&["signature", &p("circle")]);
    assert_eq!(code, 0);
    assert_eq!(named(&r, "local_poincare").count(), 6);
    let (code, r) = lhk(&["signature", &p("torus")]);
    assert_eq!(code, 0);
    assert_eq!(named(&r, "local_poincare").count(), 36);
    let (code, r) = lhk(&["signature", &p("interval"), "--relative"]);
    assert_eq!(code, 0);
    assert_eq!(r["summary"]["exempt"], serde_json::json!(["v0", "v1"]));
    assert_eq!(lhk(&["signature", &p("interval")]).0, 1);
}

#[test]
fn signature_artifact() {
    let out = scratch("circle_sig.json");
    assert_eq!(lhk(&["signature", &p("circle"), "--out", out.to_str().unwrap()]).0, 0);
    let s: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(s["structure"]["balls"].as_array().unwrap().len(), 6);
    assert_eq!(s["fundamental_class"].as_array().unwrap().len(), 3);
    let term = &s["structure"]["balls"][0]["chains"][0]["terms"][0];
    assert!(term[0].is_string() && term[2].is_i64());
}

#[test]
fn product_formula() {
    let (code, r) = lhk(&["check-products", &p("circle"), &p("circle")]);
    assert_eq!(code, 0);
    assert_eq!(named(&r, "product_formula").count(), 36);
    let (code, r) = lhk(&["check-products", &p("point"), &p("circle")]);
    assert_eq!(code, 0);
    let exact = named(&r, "matrix_exact").next().unwrap();
    assert_eq!((exact["verdict"].as_str(), exact["required"].as_bool()), (Some("PASS"), Some(true)));
    assert_eq!(lhk(&["check-products", &p("interval"), &p("circle")]).0, 1);
}

#[test]
fn suspend_circle() {
    let (code, r) = lhk(&["suspend", &p("circle"), "--k", "1"]);
    assert_eq!(code, 0);
    assert_eq!(r["summary"]["boundary_locus"].as_array().unwrap().len(), 12);
    assert_eq!(named(&r, "interior_assembly").next().unwrap()["verdict"], "PASS");
    assert_eq!(lhk(&["suspend", &p("circle"), "--k", "0"]).0, 1);
}

#[test]
fn usage_and_environment_errors() {
    assert_eq!(lhk(&["frobnicate"]).0, 1);
    assert_eq!(lhk(&["dual", &p("square")]).0, 1);
    let o = Command::new(env!("CARGO_BIN_EXE_lhk")).args(["validate", &p("point")]).env("LHK_THREADS", "zero").output().unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn repeated_runs_are_identical() {
    let a = Command::new(env!("CARGO_BIN_EXE_lhk")).args(["signature", &p("octahedron")]).env("LHK_THREADS", "1").output().unwrap();
    let b = Command::new(env!("CARGO_BIN_EXE_lhk")).args(["signature", &p("octahedron")]).env("LHK_THREADS", "3").output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    assert!(!has_float(&serde_json::from_slice(&a.stdout).unwrap()));
}

fn has_float(v: &Value) -> bool {
    match v {
        Value::Number(n) => n.is_f64(),
        Value::Array(a) => a.iter().any(has_float),
        Value::Object(m) => m.values().any(has_float),
        _ => false,
    }
}
