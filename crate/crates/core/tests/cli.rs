//! End-to-end runs of the command line front end.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::Value;
use wirenet::cli::main_with_args;

struct TempDir(PathBuf);

impl TempDir {
    fn new(tag: &str) -> TempDir {
        let p = std::env::temp_dir().join(format!("wirenet-cli-{tag}-{}", std::process::id()));
        let _ = fs::remove_dir_all(&p);
        TempDir(p)
    }
    fn s(&self) -> String {
        self.0.to_string_lossy().into_owned()
    }
}

impl Drop for TempDir {
    fn drop(&mut self) {
        let _ = fs::remove_dir_all(&self.0);
    }
}

fn run(args: &[&str]) -> i32 {
    main_with_args(std::iter::once("wirenet").chain(args.iter().copied()))
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn reruns_are_byte_identical() {
    let a = TempDir::new("rerun");
    let out = a.s();
    let args = ["bloch", "scan", "--lattice", "G", "--grid", "12", "--out", &out, "--no-timestamp"];
    let files = ["scan.csv", "scan.json"];
    assert_eq!(run(&args), 0);
    let first: Vec<Vec<u8>> = files.iter().map(|f| fs::read(a.0.join(f)).unwrap()).collect();
    assert_eq!(run(&args), 0);
    for (f, bytes) in files.iter().zip(&first) {
        assert_eq!(&fs::read(a.0.join(f)).unwrap(), bytes, "{f}");
    }
    let csv = fs::read_to_string(a.0.join("scan.csv")).unwrap();
    let hash = json(&a.0.join("scan.json"))["config_hash"].as_str().unwrap().to_string();
    assert_eq!(csv.lines().next().unwrap(), format!("# config_hash={hash}"));
}

#[test]
fn timestamp_is_optional() {
    let d = TempDir::new("stamp");
    let out = d.s();
    assert_eq!(run(&["lattice", "show", "--lattice", "P", "--out", &out]), 0);
    assert!(json(&d.0.join("lattice.json")).get("generated_at").is_some());
    assert_eq!(run(&["lattice", "show", "--lattice", "P", "--out", &out, "--no-timestamp"]), 0);
    assert!(json(&d.0.join("lattice.json")).get("generated_at").is_none());
}

#[test]
fn config_errors_exit_2() {
    let d = TempDir::new("cfg");
    let out = d.s();
    assert_eq!(run(&["bloch", "scan", "--lattice", "Q", "--out", &out]), 2);
    assert_eq!(run(&["bloch", "scan", "--lattice", "D", "--tol=-1", "--out", &out]), 2);
    assert_eq!(run(&["classify", "--point", "chi=(1/8,0,0),q=(1,1,1)", "--out", &out]), 2);
    assert_eq!(run(&["classify", "--out", &out]), 2);
}

#[test]
fn missing_config_file_is_io_error() {
    assert_eq!(run(&["verify", "--config", "/nonexistent/wirenet.json"]), 1);
}

#[test]
fn classify_zero_field_and_mismatch() {
    let d = TempDir::new("classify");
    let out = d.s();
    assert_eq!(run(&["classify", "--point", "chi=(0,0,0)", "--out", &out, "--no-timestamp"]), 0);
    let doc = json(&d.0.join("classify.json"));
    let v = &doc["result"]["verdicts"][0];
    assert_eq!(v["observed"], "Commutative");
    assert_eq!(doc["result"]["all_agree"], true);

    // A square-root family point: observed Full against a Proper prediction.
    assert_eq!(run(&["classify", "--point", "chi=(0,1/8,1/8)", "--out", &out, "--no-timestamp"]), 4);
    let doc = json(&d.0.join("classify.json"));
    assert_eq!(doc["result"]["verdicts"][0]["observed"], "Full");
    assert_eq!(doc["result"]["all_agree"], false);
}

#[test]
fn d_scan_flags_stay_near_locus() {
    let d = TempDir::new("dscan");
    let out = d.s();
    assert_eq!(run(&["bloch", "scan", "--lattice", "D", "--grid", "32", "--out", &out, "--no-timestamp"]), 0);
    let s = &json(&d.0.join("scan.json"))["result"]["summary"];
    assert!(s["flagged"].as_u64().unwrap() > 0);
    assert_eq!(s["within_two_spacings"], true);
}

#[test]
fn config_file_round_trip() {
    let d = TempDir::new("roundtrip");
    fs::create_dir_all(&d.0).unwrap();
    let out = d.0.join("out").to_string_lossy().into_owned();
    assert_eq!(run(&["bloch", "bands", "--lattice", "D", "--steps", "5", "--out", &out, "--no-timestamp"]), 0);
    let first = json(&Path::new(&out).join("bands.json"));
    let cfg = d.0.join("config.json");
    fs::write(&cfg, serde_json::to_string_pretty(&first["config"]).unwrap()).unwrap();
    let cfg_s = cfg.to_string_lossy().into_owned();
    assert_eq!(run(&["bloch", "bands", "--config", &cfg_s, "--no-timestamp"]), 0);
    let second = json(&Path::new(&out).join("bands.json"));
    assert_eq!(first, second);

    fs::write(&cfg, r#"{"grid": 8, "bogus": 1}"#).unwrap();
    assert_eq!(run(&["bloch", "bands", "--config", &cfg_s]), 2);
}

#[test]
fn butterfly_and_verify_run() {
    let d = TempDir::new("misc");
    let out = d.s();
    assert_eq!(run(&["butterfly", "--lattice", "P", "--max-den", "4", "--twists", "2", "--out", &out]), 0);
    let csv = fs::read_to_string(d.0.join("butterfly.csv")).unwrap();
    assert_eq!(csv.lines().nth(1).unwrap(), "flux_num,flux_den,twist_index,eigen_index,eigenvalue");
    assert_eq!(run(&["verify", "--out", &out]), 0);
    assert_eq!(json(&d.0.join("verify.json"))["command"], "verify");
}
