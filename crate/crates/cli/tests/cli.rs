use std::path::Path;
use std::process::{Command, Output};

use horotile::tiling::AnyApprox;
use serde_json::Value;

fn horotile(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_horotile")).args(args).output().expect("spawn horotile")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn read(p: &Path) -> String {
    std::fs::read_to_string(p).unwrap()
}

fn approx(p: &Path) -> AnyApprox {
    AnyApprox::from_json(&serde_json::from_str(&read(p)).unwrap()).unwrap()
}

#[test]
fn verify_small_suites_pass() {
    for args in [
        vec!["verify", "--suite", "tri", "--precision", "4"],
        vec!["verify", "--suite", "pent", "--precision", "2", "--k", "1"],
        vec!["verify", "--suite", "det"],
        vec!["verify", "--suite", "index6"],
        vec!["verify", "--suite", "cf-properties"],
    ] {
        let out = horotile(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        let v = json(&out);
        assert_eq!(v["pass"], true);
        assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
    }
}

#[test]
fn verify_orbit_sizes() {
    let v = json(&horotile(&["verify", "--suite", "tri", "--precision", "4"]));
    assert_eq!(v["checks"][0]["actual"], 256);
    let v = json(&horotile(&["verify", "--suite", "pent", "--precision", "2", "--k", "3"]));
    assert_eq!(v["checks"][0]["actual"], 256);
    let v = json(&horotile(&["verify", "--suite", "index6"]));
    assert!(v["checks"].as_array().unwrap().iter().any(|c| c["actual"] == 6));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["verify", "--suite", "tri", "--precision", "0"],
        vec!["verify", "--suite", "nope"],
        vec!["build", "--qmax", "0"],
        vec!["build", "--model", "triangular", "--k", "1"],
        vec!["density", "--oracle", "bogus"],
        vec!["density", "--oracle", "packing"],
        vec!["frobnicate"],
    ] {
        assert_eq!(horotile(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn build_is_deterministic_and_valid() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&a, &b] {
        let out = horotile(&["build", "--precision", "8", "--w", "3", "--out", p.to_str().unwrap()]);
        assert!(out.status.success());
    }
    assert_eq!(read(&a), read(&b));
    let t = approx(&a);
    assert_eq!(t.precision(), 8);
    assert_eq!(t.w().value(), 3);
}

#[test]
fn pentagonal_build_revalidates() {
    let dir = tempfile::tempdir().unwrap();
    for k in 0..4 {
        let p = dir.path().join(format!("p{k}.json"));
        let k = k.to_string();
        let out = horotile(&["build", "--model", "pentagonal", "--precision", "4", "--k", &k, "--out", p.to_str().unwrap()]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        let v: Value = serde_json::from_str(&read(&p)).unwrap();
        assert_eq!(v["k"].to_string(), k);
        approx(&p);
    }
}

#[test]
fn tampered_file_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("t.json");
    horotile(&["build", "--precision", "6", "--out", p.to_str().unwrap()]);
    let mut v: Value = serde_json::from_str(&read(&p)).unwrap();
    v["horoballs"][1]["index"]["bits"] = Value::from("111111");
    std::fs::write(&p, v.to_string()).unwrap();
    assert_eq!(horotile(&["conjugate", "--in", p.to_str().unwrap(), "--e", "1"]).status.code(), Some(2));
}

#[test]
fn conjugate_shifts_w_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let [a, b, c, z] = ["a", "b", "c", "z"].map(|n| dir.path().join(format!("{n}.json")));
    horotile(&["build", "--precision", "8", "--out", a.to_str().unwrap()]);
    assert!(horotile(&["conjugate", "--in", a.to_str().unwrap(), "--e", "1", "--out", b.to_str().unwrap()]).status.success());
    assert_eq!(approx(&b).w().value(), 3);
    horotile(&["conjugate", "--in", b.to_str().unwrap(), "--e", "-1", "--out", c.to_str().unwrap()]);
    assert_eq!(read(&a), read(&c));
    horotile(&["conjugate", "--in", a.to_str().unwrap(), "--e", "0", "--out", z.to_str().unwrap()]);
    assert_eq!(read(&a), read(&z));
    let wrong = horotile(&["conjugate", "--in", a.to_str().unwrap(), "--e", "1", "--precision", "9"]);
    assert_eq!(wrong.status.code(), Some(2));
}

#[test]
fn render_ford_has_one_circle_per_finite_horoball() {
    let out = horotile(&["render", "--figure", "ford", "--qmax", "5"]);
    assert!(out.status.success());
    let svg = String::from_utf8(out.stdout).unwrap();
    assert!(svg.starts_with("<svg"));
    // 0/1 and 1/1 plus fractions with denominators 2..5 in (0,1)
    assert_eq!(svg.matches("<circle").count(), 11);
    assert_eq!(svg, String::from_utf8(horotile(&["render", "--figure", "ford", "--qmax", "5"]).stdout).unwrap());
}

#[test]
fn render_disk_stays_in_unit_disk() {
    let out = horotile(&["render", "--figure", "hecke", "--model", "disk"]);
    assert!(out.status.success());
    let svg = String::from_utf8(out.stdout).unwrap();
    let attr = |s: &str, k: &str| -> f64 {
        let i = s.find(&format!(" {k}=\"")).unwrap() + k.len() + 3;
        s[i..].split('"').next().unwrap().parse().unwrap()
    };
    let mut n = 0;
    for c in svg.split("<circle").skip(1) {
        let (x, y, r) = (attr(c, "cx"), attr(c, "cy"), attr(c, "r"));
        assert!(x.hypot(y) + r <= 1.0 + 1e-6, "circle ({x},{y},{r}) leaves the disk");
        n += 1;
    }
    assert!(n > 10);
}

#[test]
fn every_figure_renders() {
    for fig in ["ford", "hecke", "binary", "hexagonal", "tile", "tile-pentagonal", "tile3prong", "layers"] {
        for model in ["half-plane", "disk"] {
            let out = horotile(&["render", "--figure", fig, "--model", model, "--qmax", "8", "--depth", "4"]);
            assert!(out.status.success(), "{fig} {model}: {}", String::from_utf8_lossy(&out.stderr));
            assert!(out.stdout.ends_with(b"</svg>\n"));
        }
    }
}

#[test]
fn density_estimates() {
    let v = json(&horotile(&["density", "--oracle", "full", "--radii", "1,2", "--samples", "1000"]));
    assert!(v["estimates"].as_array().unwrap().iter().all(|e| e["value"] == 1.0));
    let v = json(&horotile(&["density", "--oracle", "empty", "--radii", "1", "--samples", "1000"]));
    assert_eq!(v["estimates"][0]["value"], 0.0);

    let v = json(&horotile(&["density", "--oracle", "hexagonal", "--radii", "20", "--samples", "200000"]));
    let d = v["estimates"][0]["value"].as_f64().unwrap();
    assert!((d - std::f64::consts::PI / 12f64.sqrt()).abs() < 0.02, "{d}");

    let v = json(&horotile(&["density", "--oracle", "gap", "--samples", "200000"]));
    let e = &v["estimates"][0];
    let (val, se) = (e["value"].as_f64().unwrap(), e["stderr"].as_f64().unwrap());
    assert!((val - (std::f64::consts::PI - 3.0)).abs() < 4.0 * se, "{val} ± {se}");
}

#[test]
fn density_csv_and_packing_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("a.json");
    horotile(&["build", "--precision", "6", "--qmax", "12", "--window", "-2,3", "--out", p.to_str().unwrap()]);
    let out = horotile(&[
        "density", "--oracle", "packing", "--in", p.to_str().unwrap(), "--radii", "0.5,1", "--samples", "5000", "--format", "csv",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 3);
    for l in &lines[1..] {
        let v: f64 = l.split(',').nth(1).unwrap().parse().unwrap();
        assert!((0.0..=1.0).contains(&v));
    }
}
