use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn fibretool(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fibretool")).args(args).current_dir(dir).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn ok(args: &[&str], dir: &Path) -> String {
    let o = fibretool(args, dir);
    assert_eq!(o.status.code(), Some(0), "{args:?}\n{}\n{}", stdout(&o), stderr(&o));
    stdout(&o)
}

#[test]
fn seed_verifies_with_area_two_pi() {
    let dir = TempDir::new().unwrap();
    ok(&["gen", "--n", "6", "--kind", "H", "-o", "s.json"], dir.path());
    let out = ok(&["verify", "s.json"], dir.path());
    assert!(out.contains("area 6.283185"), "{out}");
    assert!(out.contains("relation r_6...r_1"), "{out}");
}

#[test]
fn deformed_rep_round_trips() {
    let dir = TempDir::new().unwrap();
    ok(&["gen", "--n", "8", "--seed", "3", "--magnitude", "1", "-o", "g.json"], dir.path());
    ok(&["verify", "g.json"], dir.path());
    let out = ok(&["roundtrip", "g.json"], dir.path());
    let dev: f64 = out.trim().strip_prefix("max deviation ").unwrap().parse().unwrap();
    assert!(dev < 1e-6);
}

#[test]
fn fiber_recon_deform_pipeline() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    ok(&["gen", "--n", "8", "--seed", "5", "--magnitude", "1", "-o", "g.json"], d);
    ok(&["fiber", "g.json", "--which", "1", "-o", "a.json"], d);
    ok(&["fiber", "g.json", "--which", "2", "-o", "c.json"], d);
    ok(&["verify", "a.json"], d);
    ok(&["verify", "c.json"], d);
    ok(&["recon", "a.json", "c.json", "-o", "back.json"], d);
    let g: serde_json::Value = serde_json::from_str(&fs::read_to_string(d.join("g.json")).unwrap()).unwrap();
    let back: serde_json::Value = serde_json::from_str(&fs::read_to_string(d.join("back.json")).unwrap()).unwrap();
    for (x, y) in g["generators"].as_array().unwrap().iter().zip(back["generators"].as_array().unwrap()) {
        for (p, q) in x.as_array().unwrap().iter().zip(y.as_array().unwrap()) {
            assert!((p.as_f64().unwrap() - q.as_f64().unwrap()).abs() < 1e-8);
        }
    }
    let lambda = g["meta"]["lambda"].as_array().unwrap();
    let text: Vec<String> = lambda.iter().map(|v| v.as_f64().unwrap().to_string()).collect();
    ok(&["deform", "a.json", "--lambda", &text.join(","), "-o", "again.json"], d);
    let again: serde_json::Value = serde_json::from_str(&fs::read_to_string(d.join("again.json")).unwrap()).unwrap();
    assert_eq!(again["meta"]["lambda"], g["meta"]["lambda"]);
    let o = fibretool(&["deform", "a.json", "--lambda", "0.1", "-o", "bad.json"], d);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn recon_rejects_an_unrelated_pair() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    ok(&["gen", "--n", "8", "--kind", "H", "-o", "h.json"], d);
    ok(&["gen", "--n", "8", "--seed", "1", "--magnitude", "1", "-o", "g.json"], d);
    ok(&["fiber", "g.json", "--which", "2", "-o", "c.json"], d);
    ok(&["deform", "h.json", "--lambda=-0.5,0.7", "-o", "g2.json"], d);
    ok(&["fiber", "g2.json", "--which", "2", "-o", "c2.json"], d);
    ok(&["recon", "h.json", "c2.json", "-o", "fine.json"], d);
    // move one half-turn of the partner: the pair no longer lies over one surface rep
    let mut v: serde_json::Value = serde_json::from_str(&fs::read_to_string(d.join("c.json")).unwrap()).unwrap();
    let m: Vec<f64> = v["generators"][2].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    let (s, t) = (0.05f64.exp(), (-0.05f64).exp());
    v["generators"][2] = serde_json::json!([m[0], m[1] * s * s, m[2] * t * t, m[3]]);
    fs::write(d.join("moved.json"), v.to_string()).unwrap();
    let o = fibretool(&["recon", "h.json", "moved.json", "-o", "x.json"], d);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    assert!(!d.join("x.json").exists());
    let o = fibretool(&["recon", "h.json", "g.json", "-o", "x.json"], d);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn corrupted_relation_is_named() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    ok(&["gen", "--n", "6", "-o", "g.json"], d);
    let mut v: serde_json::Value = serde_json::from_str(&fs::read_to_string(d.join("g.json")).unwrap()).unwrap();
    // right-multiply g_1 by a translation: still unimodular, relations broken
    let row: Vec<f64> = v["generators"][0].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    let (s, t) = (0.01f64.exp(), (-0.01f64).exp());
    v["generators"][0] = serde_json::json!([row[0] * s, row[1] * t, row[2] * s, row[3] * t]);
    fs::write(d.join("bad.json"), v.to_string()).unwrap();
    let o = fibretool(&["verify", "bad.json"], d);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("FAILED"), "{out}");
    assert!(stderr(&o).contains("relation g_5 g_4^-1 g_3 g_2^-1 g_1"), "{}", stderr(&o));
}

#[test]
fn malformed_inputs_exit_two() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    fs::write(d.join("half.json"), r#"{"format":"fibretool-rep","version":1,"kind":"G","n":6,"generators":[[1,0,0,0.5],[1,0,0,1],[1,0,0,1],[1,0,0,1],[1,0,0,1]]}"#).unwrap();
    let o = fibretool(&["verify", "half.json"], d);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("generators[0]"));
    let o = fibretool(&["verify", "missing.json"], d);
    assert_eq!(o.status.code(), Some(2));
    let o = fibretool(&["frobnicate"], d);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("Usage"));
    let o = fibretool(&["gen", "--n", "7", "-o", "x.json"], d);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn embedded_toledo_value() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    ok(&["gen", "--n", "8", "--seed", "2", "--magnitude", "0.5", "-o", "g.json"], d);
    ok(&["embed", "g.json", "-o", "e.json"], d);
    let out = ok(&["toledo", "e.json"], d);
    assert!(out.contains("(2.000000000 pi)"), "{out}");
    let o = fibretool(&["verify", "e.json"], d);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sweep_is_thread_independent() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    ok(&["gen", "--n", "8", "--kind", "H", "-o", "h.json"], d);
    let run = |threads: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_fibretool"))
            .args(["verify", "h.json", "--sweep", "6", "--seed", "20"])
            .env("FIBRETOOL_THREADS", threads)
            .current_dir(d)
            .output()
            .unwrap();
        (o.status.code(), stdout(&o))
    };
    let (c1, one) = run("1");
    let (c3, three) = run("3");
    assert_eq!((c1, c3), (Some(0), Some(0)), "{one}");
    let strip = |s: &str| s.lines().filter(|l| l.starts_with("seed")).map(String::from).collect::<Vec<_>>();
    assert_eq!(strip(&one), strip(&three));
    assert_eq!(strip(&one).len(), 6);
    let (bad, _) = run("zero");
    assert_eq!(bad, Some(2));
}

#[test]
fn plot_is_well_formed_svg() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    ok(&["gen", "--n", "10", "--seed", "1", "--magnitude", "1", "-o", "g.json"], d);
    ok(&["fiber", "g.json", "--which", "1", "-o", "h.json"], d);
    // G_10: nine generator axes plus the reference; H_10: half-turns only
    for (input, name, want) in [("g.json", "g.svg", 10), ("h.json", "h.svg", 1)] {
        ok(&["plot", input, "-o", name], d);
        let text = fs::read_to_string(d.join(name)).unwrap();
        let doc = roxmltree::Document::parse(&text).unwrap();
        let root = doc.root_element();
        assert_eq!(root.tag_name().name(), "svg");
        assert!(!text.contains("href"));
        let paths = root.children().filter(|n| n.has_tag_name("path")).count();
        assert_eq!(paths, want);
        assert!(root.children().any(|n| n.attribute("class") == Some("reference")));
    }
}

#[test]
fn tolerance_flag_tightens_checks() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    ok(&["gen", "--n", "8", "--seed", "3", "--magnitude", "1", "-o", "g.json"], d);
    let o = fibretool(&["roundtrip", "g.json", "--tolerance", "1e-30"], d);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("max deviation"));
}
