use std::path::Path;
use std::process::{Command, Output};

fn lconvex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lconvex")).args(args).output().expect("run lconvex")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn classify_descriptors() {
    for (d, class) in [("nu c=1", "MinusConvex"), ("nu c=2", "Plus"), ("nu c=3", "MinusNonConvex"), ("flower petals=3", "Plus")] {
        let o = lconvex(&["classify", d]);
        assert!(o.status.success(), "{d}: {}", stderr(&o));
        assert!(stdout(&o).contains(&format!("class     {class}")), "{d}: {}", stdout(&o));
    }
}

#[test]
fn classify_accepts_split_words_and_sample_files() {
    let o = lconvex(&["classify", "g_plus_2", "s1=0.3", "s2=0.4"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("Plus"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nu1.txt");
    let c = lconvex::families::nu(1.0).unwrap();
    std::fs::write(&path, lconvex::sphere::sampled::format_samples(&c.sample_points(2048))).unwrap();
    let o = lconvex(&["classify", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("MinusConvex"));
}

#[test]
fn great_circle_is_rejected_with_a_diagnostic() {
    let o = lconvex(&["classify", "great_circle"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not locally convex"));
    assert!(stderr(&o).contains("diagnostic: first failing sample index"));
}

#[test]
fn bad_input_exits_with_two() {
    for args in [
        &["classify", "nosuch"][..],
        &["classify", "nu", "c=abc"],
        &["--grid", "0x3", "invariant", "f2", "g_plus_2"],
        &["verify", "--only", "11"],
        &["render", "nu", "c=1", "--view", "0,0,0"],
        &["render", "nu", "c=1", "--view", "1,2"],
    ] {
        let o = lconvex(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn bad_config_file_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.toml");
    std::fs::write(&path, "samples = 4096\nbogus = 1\n").unwrap();
    let o = lconvex(&["--config", path.to_str().unwrap(), "classify", "nu", "c=1"]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::write(&path, "samples = 8192\n[tolerances]\ndegree_residual = 0.05\n").unwrap();
    let o = lconvex(&["--config", path.to_str().unwrap(), "classify", "nu", "c=1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("N = 8192"));
}

#[test]
fn invariants_of_families() {
    let o = lconvex(&["--grid", "64x64", "invariant", "f2", "g_plus_2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("f2        1\n"), "{}", stdout(&o));

    let o = lconvex(&["invariant", "flowers", "g_plus_2", "s1=0.75", "s2=0.75"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("petal_count 3"));

    let o = lconvex(&["invariant", "flowers", "nu", "c=2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("petal_count none"));
}

#[test]
fn coarse_degree_fails_with_a_hint() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = lconvex(&["--out", out, "verify", "--only", "4", "--degree-grid", "8"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL c4.degree_g_plus_2"), "{}", stdout(&o));
    assert!(stdout(&o).contains("not within 0.1 of an integer"));

    let cfg = dir.path().join("coarse.toml");
    std::fs::write(&cfg, "degree_grid = 8\n").unwrap();
    let o = lconvex(&["--config", cfg.to_str().unwrap(), "invariant", "degree", "g_plus_2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("hint: raise the resolution"), "{}", stderr(&o));
}

#[test]
fn verify_writes_a_deterministic_report() {
    let read = |dir: &Path| {
        let o = lconvex(&["--out", dir.to_str().unwrap(), "verify", "--only", "1,2,3,7,9,10"]);
        assert!(o.status.success(), "{}{}", stdout(&o), stderr(&o));
        std::fs::read_to_string(dir.join("report.jsonl")).unwrap()
    };
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let (ra, rb) = (read(a.path()), read(b.path()));
    assert_eq!(ra, rb);
    let lines: Vec<serde_json::Value> = ra.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(lines.len() >= 10);
    for v in &lines {
        assert_eq!(v["status"], "pass", "{v}");
        assert!(v["criterion"].as_str().unwrap().starts_with('c'));
    }
}

#[test]
fn render_curve_svg() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("flower.svg");
    let o = lconvex(&["render", "flower", "petals=3", "--file", file.to_str().unwrap(), "--view", "1,0,0.3", "--projection", "stereographic"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let svg = std::fs::read_to_string(&file).unwrap();
    assert!(svg.starts_with("<?xml"));
    assert!(svg.trim_end().ends_with("</svg>"));
    let points: usize = svg
        .lines()
        .filter(|l| l.starts_with("<polyline"))
        .map(|l| l.split("points=\"").nth(1).unwrap().split_whitespace().count())
        .sum();
    assert!(points >= 512, "{points} points");
    assert!(svg.contains("#c0392b"), "e1 marker");
    assert!(svg.contains("<polygon"), "basepoint arrow");
}

#[test]
fn render_family_sheet() {
    let dir = tempfile::tempdir().unwrap();
    let o = lconvex(&["--out", dir.path().to_str().unwrap(), "--samples", "512", "render", "g_plus_2", "grid=6x8"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let svg = std::fs::read_to_string(dir.path().join("g_plus_2.svg")).unwrap();
    assert_eq!(svg.matches("<g>").count(), 48);
    assert_eq!(svg.matches("</g>").count(), 48);
    assert_eq!(svg.matches("<text").count(), 48);
    assert!(svg.contains(r#"width="720""#));
}
