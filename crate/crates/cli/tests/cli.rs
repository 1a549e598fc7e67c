use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_circext"));
    c.env_remove("CIRCEXT_SEED").env("RUST_LOG", "off");
    c
}

fn write(dir: &TempDir, name: &str, v: &Value) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, v.to_string()).unwrap();
    p
}

fn series(order: usize, coeffs: &[(i64, f64, f64)]) -> Value {
    let mut c = vec![[0.0, 0.0]; 2 * order + 1];
    for &(k, re, im) in coeffs {
        c[(k + order as i64) as usize] = [re, im];
    }
    json!({ "order": order, "coeffs": c })
}

fn run(args: &[&str], files: &[&Path]) -> Output {
    let mut c = bin();
    c.args(args);
    for f in files {
        c.arg(f);
    }
    c.output().unwrap()
}

fn doc(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn value(d: &Value) -> (f64, f64) {
    (d["value"][0].as_f64().unwrap(), d["value"][1].as_f64().unwrap())
}

#[test]
fn pairing_of_z_and_constants() {
    let dir = TempDir::new().unwrap();
    let z = write(&dir, "z.json", &series(1, &[(1, 1.0, 0.0)]));
    let a = write(&dir, "a.json", &series(0, &[(0, 2.0, 0.5)]));
    let b = write(&dir, "b.json", &series(0, &[(0, -3.0, 0.0)]));

    let out = run(&["pairing"], &[&z, &z]);
    assert_eq!(out.status.code(), Some(0));
    let (re, im) = value(&doc(&out));
    assert!((re + 1.0).abs() < 1e-12 && im.abs() < 1e-12);

    let (re, im) = value(&doc(&run(&["pairing"], &[&a, &b])));
    assert!((re - 1.0).abs() < 1e-12 && im.abs() < 1e-12);
}

#[test]
fn pairing_of_exponentials() {
    let dir = TempDir::new().unwrap();
    let order = 24;
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    let mut fact = 1.0;
    for k in 0..=order as i64 {
        if k > 0 {
            fact *= k as f64;
        }
        plus.push((k, 0.2f64.powi(k as i32) / fact, 0.0));
        minus.push((-k, 0.3f64.powi(k as i32) / fact, 0.0));
    }
    let f = write(&dir, "f.json", &series(order, &plus));
    let g = write(&dir, "g.json", &series(order, &minus));
    let (re, im) = value(&doc(&run(&["pairing"], &[&f, &g])));
    let want = (-0.06f64).exp();
    assert!((re - want).abs() < 1e-12, "{re} vs {want}");
    assert!(im.abs() < 1e-12);
}

#[test]
fn malformed_and_missing_inputs() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{ not json").unwrap();
    let out = run(&["pairing"], &[&bad, &bad]);
    assert_eq!(out.status.code(), Some(64));
    assert_eq!(doc(&out)["error"]["exit_code"], 64);

    let missing = dir.path().join("nope.json");
    let out = run(&["pairing"], &[&missing, &missing]);
    assert_eq!(out.status.code(), Some(66));
    assert!(doc(&out)["error"]["kind"].as_str().is_some());
}

#[test]
fn winding_element_is_rejected() {
    let dir = TempDir::new().unwrap();
    let wound = json!({ "d": series(1, &[(1, 1.0, 0.0)]), "f": { "displacement": series(0, &[]) } });
    let id = json!({ "d": series(0, &[(0, 1.0, 0.0)]), "f": { "displacement": series(0, &[]) } });
    let g1 = write(&dir, "g1.json", &wound);
    let g2 = write(&dir, "g2.json", &id);
    let out = run(&["cocycle-d"], &[&g1, &g2]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn cocycle_d_with_identity_converges() {
    let dir = TempDir::new().unwrap();
    let g = json!({
        "d": series(2, &[(0, 2.0, 0.0), (1, 0.3, 0.1), (-2, 0.2, 0.0)]),
        "f": { "displacement": series(2, &[(1, 0.0, 0.02), (-1, 0.0, 0.02)]) }
    });
    let id = json!({ "d": series(0, &[(0, 1.0, 0.0)]), "f": { "displacement": series(0, &[]) } });
    let g = write(&dir, "g.json", &g);
    let id = write(&dir, "id.json", &id);
    let out = run(&["--convergence", "--truncation", "32", "cocycle-d"], &[&g, &id]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let d = doc(&out);
    assert_eq!(d["status"], "converged");
    let (re, im) = value(&d);
    assert!((re - 1.0).abs() < 1e-10 && im.abs() < 1e-10);
}

#[test]
fn weld_identity_and_rotation() {
    let dir = TempDir::new().unwrap();
    let id = write(&dir, "id.json", &json!({ "displacement": series(0, &[]) }));
    let d = doc(&run(&["--truncation", "16", "weld"], &[&id]));
    for side in ["v_plus", "v_minus"] {
        let coeffs = d[side]["coeffs"].as_array().unwrap();
        assert!(coeffs.iter().flat_map(|c| c.as_array().unwrap()).all(|x| x.as_f64().unwrap().abs() < 1e-12));
    }

    let theta = 0.7;
    let rot = write(&dir, "rot.json", &json!({ "displacement": series(0, &[(0, theta, 0.0)]) }));
    let out = run(&["--truncation", "16", "--convergence", "weld"], &[&rot]);
    assert_eq!(out.status.code(), Some(0));
    let d = doc(&out);
    assert!(d["doubling_drift"].as_f64().unwrap() < 1e-10);
    let plus = d["v_plus"]["coeffs"].as_array().unwrap();
    assert!(plus.iter().flat_map(|c| c.as_array().unwrap()).all(|x| x.as_f64().unwrap().abs() < 1e-12));
    // only the constant mode of v₋ survives
    let minus = d["v_minus"]["coeffs"].as_array().unwrap();
    let order = d["v_minus"]["order"].as_u64().unwrap() as usize;
    for (i, c) in minus.iter().enumerate() {
        let c = c.as_array().unwrap();
        if i != order {
            assert!(c[0].as_f64().unwrap().abs() < 1e-12 && c[1].as_f64().unwrap().abs() < 1e-12);
        }
    }
}

#[test]
fn verify_determinant_suite() {
    let out = run(&["--samples", "5", "verify", "determinant"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let d = doc(&out);
    assert_eq!(d["passed"], true);
}

#[test]
fn same_seed_same_output() {
    let args = ["--samples", "4", "--seed", "7", "verify", "pairing"];
    let a = run(&args, &[]);
    let b = run(&["--jobs", "1", "--samples", "4", "--seed", "7", "verify", "pairing"], &[]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn output_flag_writes_file() {
    let dir = TempDir::new().unwrap();
    let z = write(&dir, "z.json", &series(1, &[(1, 1.0, 0.0)]));
    let target = dir.path().join("out.json");
    let out = run(&["--output", target.to_str().unwrap(), "pairing"], &[&z, &z]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written: Value = serde_json::from_str(&fs::read_to_string(&target).unwrap()).unwrap();
    assert!((written["value"][0].as_f64().unwrap() + 1.0).abs() < 1e-12);
}
