use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperbetti"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_on(file: &str, args: &[&str]) -> Output {
    let path = data(file);
    let mut all = vec![args[0], path.to_str().unwrap()];
    all.extend(&args[1..]);
    run(&all)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn betti_methods_agree_on_a_path() {
    let tables: Vec<String> = ["hochster", "taylor", "recursive"]
        .iter()
        .map(|m| {
            let o = run_on("p3.txt", &["betti", "--method", m]);
            assert_eq!(o.status.code(), Some(0));
            stdout(&o)
        })
        .collect();
    assert!(tables.windows(2).all(|w| w[0] == w[1]));
    assert!(tables[0].contains("pd = 2, reg = 1"));
}

#[test]
fn betti_of_a_star_hypergraph() {
    for method in ["hochster", "taylor", "recursive"] {
        let o = run_on("star34.json", &["betti", "--method", method, "--field", "gf2", "--json"]);
        let v = json(&o);
        assert_eq!((v["pd"].as_u64(), v["reg"].as_u64()), (Some(4), Some(2)), "{method}");
    }
}

#[test]
fn recursion_on_a_cycle_is_a_usage_error() {
    let o = run_on("c4.txt", &["betti", "--method", "recursive"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not triangulated"));
}

#[test]
fn invalid_input_exits_with_two() {
    assert_eq!(run_on("bad.txt", &["betti"]).status.code(), Some(2));
    assert_eq!(run_on("missing.txt", &["check"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run_on("p3.txt", &["betti", "--field", "gf:4"]).status.code(), Some(2));
    assert_eq!(run_on("p3.txt", &["classify", "--family", "0 x"]).status.code(), Some(2));
}

#[test]
fn vertex_cap_from_environment() {
    let path = data("p6.json");
    let o = Command::new(env!("CARGO_BIN_EXE_hyperbetti"))
        .args(["betti", path.to_str().unwrap()])
        .env("BETTI_CAP_N", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
}

#[test]
fn invariants_of_a_path() {
    let v = json(&run_on("p6.json", &["invariants", "--json"]));
    assert_eq!(v["b"], 3);
    assert_eq!(v["graph"]["d_g"], 4);
    let v = json(&run_on("c4.txt", &["invariants", "--json"]));
    assert_eq!((v["e"].as_u64(), v["c"].as_u64()), (Some(2), Some(1)));
}

#[test]
fn classify_with_order_search() {
    let v = json(&run_on("six.json", &["classify", "--family", "0 1 2", "--ordered", "--json"]));
    assert_eq!(v["self_semi_disjoint"], true);
    assert_eq!(v["self_disjoint"], false);
    assert_eq!(v["self_order"], serde_json::json!([0, 1, 2]));
}

#[test]
fn check_certifies_the_six_vertex_example() {
    let o = run_on("six.json", &["check"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("certified SelfSemiDisjoint beta_(3, 6) = 1"));
    let v = json(&run_on("six.json", &["check", "--json"]));
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["failures"], serde_json::json!([]));
}

#[test]
fn check_on_chordal_graph_compares_bouquet_invariants() {
    let v = json(&run_on("p6.json", &["check", "--json"]));
    assert_eq!(v["checks"]["chordal_graph_invariants"]["pass"], 1);
    assert_eq!(v["checks"]["nonvanishing_characterization"]["pass"], 1);
}

#[test]
fn fuzz_reports_are_byte_identical() {
    let args = [
        "fuzz", "--class", "general", "--vertices", "6", "--edges", "5", "--count", "30", "--seed", "7", "--json",
    ];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["instances"], 30);
    assert_eq!(v["params"]["seed"], 7);
    assert!(v.get("runtime_ms").is_none());
}

#[test]
fn fuzz_special_class_verifies_the_characterization() {
    let o = run(&[
        "fuzz", "--class", "special:3", "--vertices", "9", "--count", "20", "--seed", "3", "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let t = &v["checks"]["nonvanishing_characterization"];
    assert_eq!(t["fail"], 0);
    assert_eq!(t["pass"].as_u64().unwrap() + t["not_applicable"].as_u64().unwrap(), 20);
}

#[test]
fn timing_is_opt_in() {
    let o = run(&["fuzz", "--class", "chordal", "--vertices", "5", "--count", "3", "--timing", "--json"]);
    assert!(json(&o)["runtime_ms"].is_u64());
}
