use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

use serde_json::Value;
use tropgeom::cli::scene::{Item, Scene};
use tropgeom::cli::{render::render_svg, run_subcommand, Options};

pub const GOLDEN: [&str; 6] = ["tropical_line", "coaxial_pair", "stable_line", "reduced_pencil", "perspectivity", "projectivity"];

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn run(args: &[&str], stdin: &str) -> (i32, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tropgeom"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn golden_scenes_render_identically() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for name in GOLDEN {
        let json = fs::read_to_string(golden_dir().join(format!("{name}.json"))).unwrap();
        let svg = run_subcommand("render", &json, &Options::default()).unwrap();
        assert_eq!(svg, run_subcommand("render", &json, &Options::default()).unwrap(), "{name} is not deterministic");
        let path = golden_dir().join(format!("{name}.svg"));
        if update {
            fs::write(&path, &svg).unwrap();
        }
        assert_eq!(fs::read_to_string(&path).unwrap(), svg, "{name} differs from its golden file");
    }
}

#[test]
fn binary_render_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.svg");
    let input = golden_dir().join("perspectivity.json");
    let (code, _) = run(&["render", "--input", input.to_str().unwrap(), "--output", out.to_str().unwrap()], "");
    assert_eq!(code, 0);
    let expected = fs::read_to_string(golden_dir().join("perspectivity.svg")).unwrap();
    assert_eq!(fs::read_to_string(out).unwrap(), expected);
}

#[test]
fn single_line_has_three_rays() {
    let json = r#"{"schema": 1, "view": {"xmin": "-2", "xmax": "2", "ymin": "-2", "ymax": "2"},
        "objects": [{"kind": "line", "id": "L", "vertex": ["0", "0"]}]}"#;
    let svg = run_subcommand("render", json, &Options::default()).unwrap();
    // vertex at pixel (88, 88); one unit is 32 px
    assert!(svg.contains(r#"x1="88" y1="88" x2="24" y2="88""#));
    assert!(svg.contains(r#"x1="88" y1="88" x2="88" y2="152""#));
    assert!(svg.contains(r#"x1="88" y1="88" x2="152" y2="24""#));
}

#[test]
fn empty_scene_and_view_errors() {
    let empty = r#"{"schema": 1, "view": {"xmin": "0", "xmax": "1", "ymin": "0", "ymax": "1"}}"#;
    let svg = run_subcommand("render", empty, &Options::default()).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches("<line").count(), 2, "axes only");

    let flat = r#"{"schema": 1, "view": {"xmin": "1", "xmax": "1", "ymin": "0", "ymax": "1"}}"#;
    let e = run_subcommand("render", flat, &Options::default()).unwrap_err();
    assert_eq!(e.exit_code(), 1);
    assert!(e.to_json().contains("empty_view"));

    let wrong_schema = r#"{"schema": 2, "view": {"xmin": "0", "xmax": "1", "ymin": "0", "ymax": "1"}}"#;
    assert_eq!(run_subcommand("render", wrong_schema, &Options::default()).unwrap_err().exit_code(), 2);

    let dangling = r#"{"schema": 1, "view": {"xmin": "0", "xmax": "1", "ymin": "0", "ymax": "1"},
        "objects": [{"kind": "line", "id": "L", "through": ["p", "q"]}]}"#;
    assert_eq!(run_subcommand("render", dangling, &Options::default()).unwrap_err().exit_code(), 2);
}

#[test]
fn subcommand_examples() {
    let (code, out) = run(&["stable-line"], r#"{"p": ["0", "0"], "q": ["2", "1"]}"#);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["line"], serde_json::json!({"a": "1", "b": "2", "c": "2"}));
    assert_eq!(v["vertex"], serde_json::json!(["1", "0"]));

    let (code, out) = run(&["tdet"], "[[1, 2], [3, 4]]");
    assert_eq!(code, 0);
    assert_eq!(serde_json::from_str::<Value>(&out).unwrap(), serde_json::json!({"tdet": "5", "singular": true}));

    let (code, out) = run(&["crossratio"], r#"{"a": [0, 3], "b": [2, 1], "c": [-1, 4], "d": [5, 5], "scalings": [1, 2, 3, 4]}"#);
    assert_eq!(code, 0, "{out}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["invariant"], Value::Bool(true));
}

#[test]
fn exit_codes() {
    let (code, out) = run(&["tdet"], "{not json");
    assert_eq!(code, 2);
    assert_eq!(serde_json::from_str::<Value>(&out).unwrap()["error"], "malformed_input");

    let (code, out) = run(&["stable-line"], r#"{"p": ["0", "0"], "q": ["0", "0"]}"#);
    assert_eq!(code, 1);
    assert!(serde_json::from_str::<Value>(&out).unwrap()["error"].is_string());

    let (code, _) = run(&["line", "--convention", "min"], r#"{"vertex": ["0", "0"]}"#);
    assert_eq!(code, 1);

    let (code, out) = run(&["witness", "--seed", "1", "--budget", "100000"], "");
    assert_eq!(code, 0);
    assert_eq!(serde_json::from_str::<Value>(&out).unwrap()["verified"], Value::Bool(true));

    let (code, out) = run(&["witness", "--budget", "0"], "");
    assert_eq!(code, 1, "{out}");
}

/// Subcommand outputs feed back into scene documents.
#[test]
fn outputs_round_trip_through_scenes() {
    let o = Options::default();
    let sl: Value = serde_json::from_str(&run_subcommand("stable-line", r#"{"p": ["0", "0"], "q": ["2", "1"]}"#, &o).unwrap()).unwrap();
    let line = &sl["line"];
    let scene = serde_json::json!({
        "schema": 1,
        "view": {"xmin": "-3", "xmax": "3", "ymin": "-3", "ymax": "3"},
        "objects": [
            {"kind": "line", "id": "by_vertex", "vertex": sl["vertex"]},
            {"kind": "line", "id": "by_coeffs", "a": line["a"], "b": line["b"], "c": line["c"], "style": "dotted"},
            {"kind": "line", "id": "other", "vertex": ["0", "-2"]},
            {"kind": "point", "id": "v", "intersect": ["other", "by_coeffs"]}
        ]
    });
    let scene: Scene = serde_json::from_value(scene).unwrap();
    let text = serde_json::to_string(&scene).unwrap();
    let again: Scene = serde_json::from_str(&text).unwrap();
    let resolved = again.resolve().unwrap();
    assert!(render_svg(&resolved).is_ok());
    assert_eq!(resolved, scene.resolve().unwrap());
    let lines: Vec<_> = resolved.items.iter().filter_map(|i| match i {
        Item::Line { line, .. } => Some(line.clone()),
        _ => None,
    }).collect();
    assert_eq!(lines[0], lines[1]);
}
