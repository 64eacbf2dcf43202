use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_overhang")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn lines(out: &Output) -> Vec<String> {
    stdout(out).lines().map(str::to_owned).collect()
}

/// Every object of degree `n` as text, without the trailing count line.
fn objects(kind: &str, n: usize) -> Vec<String> {
    let out = run(&["enumerate", kind, "--n", &n.to_string()]);
    assert_eq!(out.status.code(), Some(0));
    let mut v = lines(&out);
    assert!(v.pop().unwrap().starts_with("count "));
    v
}

fn map_all(direction: &str, inputs: &[String]) -> Vec<String> {
    if inputs.is_empty() {
        return Vec::new();
    }
    let mut args = vec!["map", direction];
    args.extend(inputs.iter().map(String::as_str));
    let out = run(&args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    lines(&out)
}

#[test]
fn documented_examples() {
    assert_eq!(lines(&run(&["map", "psi", "12'1222"])), ["1-3,2-4"]);
    assert_eq!(lines(&run(&["map", "phi", "1-3,2-4"])), ["12'1222"]);
    assert_eq!(lines(&run(&["map", "simple", "1-3,2-4"])), ["1122"]);
    assert_eq!(lines(&run(&["map", "psi", "1212'2'2'122222"])), ["1-5,2-3,4-6"]);
    assert_eq!(lines(&run(&["map", "tl", "1-3,2-4"])), ["1-4,2-3", "1122"]);
    let counts = run(&["enumerate", "diagrams", "--n", "3"]);
    assert_eq!(lines(&counts).last().unwrap(), "count 15");
}

#[test]
fn maps_invert_through_text_interface() {
    for n in 0..=4 {
        let paths = objects("paths", n);
        let diagrams = objects("diagrams", n);
        assert_eq!(map_all("phi", &map_all("psi", &paths)), paths, "n={n}");
        assert_eq!(map_all("psi", &map_all("phi", &diagrams)), diagrams, "n={n}");
        assert_eq!(map_all("simple-inverse", &map_all("simple", &diagrams)), diagrams, "n={n}");
    }
}

#[test]
fn records_round_trip() {
    let out = run(&["--format", "records", "map", "psi", "12'1222"]);
    let rec: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let back = run(&["map", "phi", &rec.to_string()]);
    assert_eq!(lines(&back), ["12'1222"]);
    let listed = run(&["--format", "records", "enumerate", "paths", "--n", "2"]);
    let last: serde_json::Value = serde_json::from_str(lines(&listed).last().unwrap()).unwrap();
    assert_eq!(last["count"], 3);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["map", "psi", "21"]).status.code(), Some(2));
    assert_eq!(run(&["map", "phi", "1-2,1-3"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "paths", "--n", "99"]).status.code(), Some(2));
    assert_eq!(run(&["render", "path", "12", "--labels"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "roundtrip", "--n", "1..4"]).status.code(), Some(0));
    let strict = ["hecke", "--shape", "((2),(2))", "--subset", "nonneg", "--require-invariant"];
    assert_eq!(run(&[&strict[..], &["--e", "1"]].concat()).status.code(), Some(0));
    assert_eq!(run(&[&strict[..], &["--e", "2"]].concat()).status.code(), Some(1));
}

#[test]
fn verify_reports_pass_lines() {
    let out = run(&["--jobs", "2", "verify", "all", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.lines().any(|l| l.starts_with("PASS")));
    assert!(!text.lines().any(|l| l.starts_with("FAIL")));
}

#[test]
fn renders_parse_as_svg() {
    for args in [
        &["render", "path", "12'1222"][..],
        &["render", "tiling", "1212'2'2'122222"],
        &["render", "diagram", "1-5,2-3,4-6", "--labels"],
        &["render", "side-by-side", "1-3,2-4", "--scale", "20"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        let text = stdout(&out);
        let doc = roxmltree::Document::parse(&text).unwrap();
        assert_eq!(doc.root_element().tag_name().name(), "svg");
    }
}

#[test]
fn writes_to_file() {
    let path = std::env::temp_dir().join(format!("overhang-cli-{}.txt", std::process::id()));
    let out = run(&["--out", path.to_str().unwrap(), "enumerate", "tl", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(text.lines().last(), Some("count 5"));
}
