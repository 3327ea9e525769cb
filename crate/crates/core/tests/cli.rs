use std::process::Command;

use serde_json::Value;

fn discgeom(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_discgeom")).args(args).output().expect("spawn discgeom")
}

fn json(out: &std::process::Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

#[test]
fn list_domains_annotations() {
    let out = discgeom(&["list-domains"]);
    assert!(out.status.success());
    let v = json(&out);
    let fams = v["results"].as_array().unwrap();
    let get = |name: &str| fams.iter().find(|f| f["name"] == name).unwrap_or_else(|| panic!("{name} listed"));
    assert!(get("ball")["references"].as_array().unwrap().len() >= 2);
    let worm = get("worm");
    assert!(worm["params"][0]["constraint"].as_str().unwrap().contains("beta > pi/2"));
    assert!(get("dangelo")["note"].as_str().unwrap().contains("origin: infinite type, finite regular type"));
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["seed"], 1);
}

#[test]
fn disc_reports_are_byte_identical() {
    let args = [
        "disc", "--domain", "dangelo", "--point", "0;0;0", "--direction", "0;0;1", "--k", "6",
        "--delta-min", "1e-6", "--delta-max", "1e-4", "--delta-steps", "6", "--seed", "9", "--jobs", "2",
    ];
    let a = discgeom(&args);
    let b = discgeom(&args);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["seed"], 9);
    let k = v["results"]["index"]["k_hat"].as_f64().unwrap();
    assert!((k - 6.0).abs() < 0.2, "{k}");
}

#[test]
fn frame_on_worm_annulus_is_levi_flat() {
    let out = discgeom(&["frame", "--domain", "worm", "--point", "ref:A:(0,1)"]);
    assert!(out.status.success());
    let v = json(&out);
    let m = v["results"]["levi"]["min_eigenvalue"].as_f64().unwrap();
    assert!(m.abs() < 1e-8);
}

#[test]
fn gain_on_ball_writes_csv() {
    let dir = std::env::temp_dir().join(format!("discgeom-gain-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("gain.csv");
    let out = discgeom(&[
        "gain", "--domain", "ball", "--point", "1;0", "--direction", "0;1", "--alpha", "0.3", "--k", "2",
        "--csv", csv.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    let r = v["results"]["gain"]["ratio"].as_f64().unwrap();
    assert!((r - 2.0).abs() < 0.2);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("h_cap,envelope\n"));
    assert_eq!(text.lines().count(), 10);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn worm_gain_reports_support_failure() {
    let out = discgeom(&["gain", "--domain", "worm", "--point", "ref:A:(0,1)", "--alpha", "0.1", "--k", "8"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("half-space"));
}

#[test]
fn config_errors_exit_two() {
    assert_eq!(discgeom(&["disc", "--domain", "nosuch"]).status.code(), Some(2));
    assert_eq!(discgeom(&["disc", "--domain", "worm", "--params", "beta=1"]).status.code(), Some(2));
    assert_eq!(discgeom(&["disc", "--domain", "ball", "--point", "1;0;0"]).status.code(), Some(2));
    assert_eq!(discgeom(&["verify", "--suite", "huge"]).status.code(), Some(2));
    assert_eq!(discgeom(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn sweep_with_lattice() {
    let out = discgeom(&[
        "sweep", "--domain", "ball", "--points", "1;0|0;1", "--k", "2", "--c1", "0.01", "--c2", "0.01",
        "--lattice-c1", "0.01,0.5", "--lattice-c2", "0.01,2", "--delta-min", "1e-5", "--delta-max", "1e-3",
        "--delta-steps", "3",
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["results"]["all_pass"], true);
    assert_eq!(v["results"]["uniform"]["c1"].as_f64(), Some(0.5));
}

#[test]
fn domain_file_round_trip() {
    let dir = std::env::temp_dir().join(format!("discgeom-dom-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("egg3.toml");
    std::fs::write(&path, "name = \"egg3\"\nn = 2\nexpr = \"abs2(z1)^3 + abs2(z2) - 1\"\n").unwrap();
    let out = discgeom(&[
        "disc", "--domain-file", path.to_str().unwrap(), "--point", "0;1", "--direction", "1;0",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let k = json(&out)["results"]["index"]["k_hat"].as_f64().unwrap();
    assert!((k - 6.0).abs() < 0.3, "{k}");
    std::fs::remove_dir_all(&dir).ok();
}
