use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn example(name: &str) -> String {
    root().join("docs/examples").join(name).to_string_lossy().into_owned()
}

fn conway(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conway"))
        .args(args)
        .env_remove("CONWAY_SUBGRAPH_CAP")
        .env_remove("CONWAY_SEARCH_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

fn schema(name: &str) -> jsonschema::Validator {
    let text = std::fs::read_to_string(root().join("docs").join(name)).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn assert_valid(v: &jsonschema::Validator, instance: &Value, what: &str) {
    let errors: Vec<String> = v.iter_errors(instance).map(|e| format!("{e} at {}", e.instance_path())).collect();
    assert!(errors.is_empty(), "{what}: {errors:?}");
}

#[test]
fn topology_of_the_path() {
    let o = conway(&["topology", &example("p3.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("6 connected subgraphs"), "{}", stdout(&o));
}

#[test]
fn path_against_a_point() {
    let (p3, point) = (example("p3.json"), example("point.json"));
    let o = conway(&["--json", "analyze", &p3, &point]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["doublet"]["hom"]["verdict"], "proven-absent");
    assert_eq!(report["doublet"]["w_hom"]["verdict"], "exists");
    assert_eq!(report["fallback"]["kept_vertices"].as_array().unwrap().len(), 1);

    assert_eq!(conway(&["analyze", &p3, &point, "--require"]).status.code(), Some(1));
    assert_eq!(conway(&["analyze", &p3, &point, "--require", "--level", "w-hom"]).status.code(), Some(0));
}

#[test]
fn decompose_rejects_a_graph_as_map() {
    let o = conway(&["decompose", &example("p3.json"), &example("edge.json"), "--map", &example("p3.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("p3.json"), "{}", stderr(&o));
}

#[test]
fn decompose_rejects_a_non_morphism() {
    let map = scratch("not-a-hom.json", r#"{"kind": "vertex-map", "assignment": {"v1": "a", "v2": "a", "v3": "b"}}"#);
    let o = conway(&["decompose", &example("p3.json"), &example("edge.json"), "--map", &map, "--level", "hom"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn malformed_documents_exit_2_with_position() {
    let broken = scratch("broken.json", "{\n  \"format_version\": 1,\n  \"role\": \"system\",\n  \"vertices\": [\n}");
    let o = conway(&["topology", &broken]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 5"), "{}", stderr(&o));

    let unknown = scratch(
        "unknown-endpoint.json",
        r#"{"format_version": 1, "role": "system", "vertices": [{"id": "a"}],
            "edges": [{"id": "x", "endpoints": ["a", "b"]}]}"#,
    );
    let o = conway(&["topology", &unknown]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("schema error"), "{}", stderr(&o));

    assert_eq!(conway(&["topology", "/nonexistent/graph.json"]).status.code(), Some(2));
    assert_eq!(conway(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn budgets_exit_3() {
    let o = conway(&["--subgraph-cap", "3", "topology", &example("p3.json")]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("budget"), "{}", stderr(&o));

    let o = Command::new(env!("CARGO_BIN_EXE_conway"))
        .args(["topology", &example("p3.json")])
        .env("CONWAY_SUBGRAPH_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));

    let o = conway(&["--search-budget", "1", "analyze", &example("cube-system.json"), &example("c4.json")]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn output_is_deterministic() {
    let runs = [
        vec!["tasks".to_string(), example("p3.json"), example("c4.json")],
        vec!["--json".into(), "analyze".into(), example("cube-system.json"), example("square-org.json")],
        vec!["export".into(), example("cube-system.json")],
    ];
    for args in runs {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (a, b) = (conway(&args), conway(&args));
        assert_eq!(a.status.code(), Some(0), "{args:?}: {}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn reports_validate_against_the_schema() {
    let v = schema("report.schema.json");
    let (p3, c4, edge) = (example("p3.json"), example("c4.json"), example("edge.json"));
    let (cube, square) = (example("cube-system.json"), example("square-org.json"));
    let (vertex_map, collection_map) = (example("p3-to-edge.json"), example("f.json"));
    let (point, cube_map) = (example("point.json"), example("cube-to-square.json"));
    let runs: Vec<Vec<&str>> = vec![
        vec!["analyze", &p3, &c4],
        vec!["analyze", &p3, &point],
        vec!["analyze", &cube, &square],
        vec!["decompose", &p3, &edge, "--map", &vertex_map],
        vec!["tasks", &p3, &c4],
        vec!["tasks", &cube, &square, "--level", "w-hom", "--limit", "3"],
        vec!["topology", &c4],
        vec!["induced", &p3, &c4, "--map", &collection_map],
        vec!["induced", &p3, &edge, "--map", &vertex_map],
        vec!["hierarchy", &cube, &square],
        vec!["hierarchy", &cube, &square, "--map", &cube_map],
    ];
    for args in runs {
        let mut full = vec!["--json"];
        full.extend(&args);
        let o = conway(&full);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
        let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_valid(&v, &report, &format!("{args:?}"));
    }
}

#[test]
fn example_documents_validate() {
    let graphs = schema("graph-document.schema.json");
    let maps = schema("map-document.schema.json");
    for entry in std::fs::read_dir(root().join("docs/examples")).unwrap() {
        let path = entry.unwrap().path();
        let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let v = if doc.get("kind").is_some() { &maps } else { &graphs };
        assert_valid(v, &doc, &path.display().to_string());
    }
}

#[test]
fn induced_table_for_the_inclusion() {
    let o = conway(&["--json", "induced", &example("p3.json"), &example("c4.json"), "--map", &example("f.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows: Vec<(String, String)> = report["induced"]["induced"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["from"].as_str().unwrap().into(), r["to"].as_str().unwrap().into()))
        .collect();
    let expected = [
        ("v1'", "v1"),
        ("v2'", "v2"),
        ("v3'", "v3"),
        ("v4'", "*"),
        ("e1'", "e1"),
        ("e2'", "e2"),
        ("e3'", "*"),
        ("e4'", "*"),
        ("*", "*"),
    ];
    let expected: Vec<(String, String)> = expected.iter().map(|&(a, b)| (a.into(), b.into())).collect();
    assert_eq!(rows, expected);
}

#[test]
fn ladder_commutes_and_catches_a_bad_rung() {
    let (cube, square) = (example("cube-system.json"), example("square-org.json"));
    let o = conway(&["--json", "hierarchy", &cube, &square, "--map", &example("cube-to-square.json")]);
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["ladder"]["commutes"], true);
    assert_eq!(report["ladder"]["levels"], 3);

    // s1 is paired with s0 in the system plan but sent to a different organization block.
    let bad = scratch(
        "cube-bad.json",
        r#"{"kind": "vertex-map", "assignment": {
            "s0": "t0", "s1": "t2", "s2": "t1", "s3": "t1",
            "s4": "t2", "s5": "t2", "s6": "t3", "s7": "t3"}}"#,
    );
    let o = conway(&["--json", "hierarchy", &cube, &square, "--map", &bad]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["ladder"]["commutes"], false);
    assert!(report["ladder"]["error"].as_str().unwrap().contains("s1"), "{report}");
}

#[test]
fn export_colors_fibers() {
    let o = conway(&[
        "export",
        &example("p3.json"),
        "--organization",
        &example("edge.json"),
        "--map",
        &example("p3-to-edge.json"),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let dot = stdout(&o);
    assert!(dot.starts_with("graph \"p3\" {"), "{dot}");
    let colors: std::collections::BTreeSet<&str> =
        dot.lines().filter_map(|l| l.split("fillcolor=\"").nth(1)).map(|r| &r[..7]).collect();
    assert_eq!(colors.len(), 2, "{dot}");

    let plain = stdout(&conway(&["export", &example("point.json")]));
    assert_eq!(plain.lines().filter(|l| l.contains("[label=")).count(), 1, "{plain}");
}
