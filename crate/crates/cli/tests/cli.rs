use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn fano(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fano"))
        .args(args)
        .env_remove("FANO_SEED")
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> (i32, Value) {
    let out = fano(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v)
}

fn check<'a>(v: &'a Value, name: &str) -> &'a Value {
    v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check {name}"))
}

#[test]
fn nodal_cubic_surface_has_six_lines() {
    let (code, v) = report(&["lines-through", "--random", "3", "3", "2", "--seed", "1", "--quiet"]);
    assert_eq!(code, 0);
    assert_eq!(v["dimension"], "0");
    assert_eq!(check(&v, "count")["computed"], "6");
    assert_eq!(v["solutions"].as_array().unwrap().len(), 6);
}

#[test]
fn cubic_threefold_and_quadric_surface() {
    let (code, v) = report(&["lines-through", "--random", "4", "3", "1", "--seed", "1", "--quiet"]);
    assert_eq!(code, 0);
    assert_eq!(check(&v, "count")["computed"], "6");
    let (code, v) = report(&["lines-through", "--random", "3", "2", "1", "--seed", "1", "--quiet"]);
    assert_eq!(code, 0);
    assert_eq!(check(&v, "count")["computed"], "2");
}

#[test]
fn numbers_are_strings() {
    let (_, v) = report(&["lines-through", "--random", "3", "3", "2", "--quiet"]);
    assert!(v["ambient_dimension"].is_string());
    assert!(v["degree"].is_string());
    for p in v["solutions"].as_array().unwrap() {
        assert!(p["degree"].is_string());
    }
}

#[test]
fn polynomial_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.txt");
    // cubic surface with a node at [1:0:0:0]
    std::fs::write(&path, "# nodal cubic\nx0*x1*x2 + x0*x2*x3 + x0*x1*x3\n + x1^3 + x2^3 + x3^3\n").unwrap();
    let p = path.to_str().unwrap();
    let (code, v) = report(&["lines-through", "--poly", p, "--point", "1,0,0,0", "--mult", "2", "--quiet"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["degree"], "6");
    let out = fano(&["lines-through", "--poly", p, "--point", "1,0,0,0", "--mult", "3", "--quiet"]);
    assert_eq!(out.status.code(), Some(3));
    let out = fano(&["lines-through", "--poly", p, "--point", "1,0,0,0", "--mult", "1", "--quiet"]);
    assert_eq!(out.status.code(), Some(2));
    let out = fano(&["lines-through", "--poly", p, "--point", "0,1,0,0", "--mult", "2", "--quiet"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["lines-through", "--random", "3", "5", "2"],
        vec!["lines-through"],
        vec!["groebner", "--polys", "x^2+", "--vars", "x"],
        vec!["groebner", "--polys", "y", "--vars", "x"],
        vec!["voisin-demo", "--r", "0"],
        vec!["voisin-demo", "--r", "1", "--prime", "3"],
        vec!["lines-through", "--random", "3", "3", "2", "--prime", "12"],
        vec!["frobnicate"],
    ] {
        assert_eq!(fano(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn budget_exit_4() {
    let out = fano(&["sing-locus", "--polys", "x0^2*x2 + x1^2*x3", "--quiet"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn seed_from_environment() {
    let run = |env: Option<&str>, args: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_fano"));
        c.args(args).env_remove("FANO_SEED");
        if let Some(s) = env {
            c.env("FANO_SEED", s);
        }
        c.output().unwrap().stdout
    };
    let base = ["lines-through", "--random", "3", "3", "2", "--quiet"];
    let from_env = run(Some("9"), &base);
    let mut flag = base.to_vec();
    flag.extend(["--seed", "9"]);
    assert_eq!(from_env, run(None, &flag));
    assert_ne!(from_env, run(None, &base));
}

#[test]
fn json_file_is_written_and_stable() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = fano(&["voisin-demo", "--r", "2", "--seed", "4", "--json", p.to_str().unwrap(), "--quiet"]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
    }
    let bytes = std::fs::read(&a).unwrap();
    assert_eq!(bytes, std::fs::read(&b).unwrap());
    let v: Value = serde_json::from_slice(&bytes).unwrap();
    assert_eq!(v["certificates"].as_array().unwrap().len(), 4);
    let leftovers = std::fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(leftovers, 2);
    assert!(!Path::new(&dir.path().join("missing/c.json")).exists());
    let out = fano(&[
        "groebner",
        "--polys",
        "x0",
        "--json",
        dir.path().join("missing/c.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn groebner_fixture() {
    let (code, v) = report(&[
        "groebner", "--polys", "x^2+y^2-z^2; x*y-z^2", "--vars", "x,y,z", "--prime", "7", "--quiet",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["dimension"], "0");
    assert_eq!(v["degree"], "4");
    let degrees: Vec<&str> = v["solutions"].as_array().unwrap().iter().map(|p| p["degree"].as_str().unwrap()).collect();
    assert_eq!(degrees, ["2"; 4]);
    let (code, v) = report(&["groebner", "--polys", "x^2+y^2-z^2; x*y-z^2", "--vars", "x,y,z", "--prime", "0", "--quiet"]);
    assert_eq!(code, 0);
    assert_eq!(v["field"], "QQ");
    assert_eq!(v["degree"], "4");
}

#[test]
fn sing_locus_of_nodal_cubic() {
    let (code, v) = report(&[
        "sing-locus", "--polys", "x0*x1*x2 + x0*x2*x3 + x0*x1*x3 + x1^3 + x2^3 + x3^3", "--prime", "7", "--quiet",
    ]);
    assert_eq!(code, 0);
    let pts = v["singular_points"].as_array().unwrap();
    assert_eq!(pts.len(), 1);
    assert_eq!(pts[0]["coords"], serde_json::json!(["1", "0", "0", "0"]));
}

#[test]
fn bezout_check_default() {
    let (code, v) = report(&["bezout-check", "--instances", "2", "--quiet"]);
    assert_eq!(code, 0, "{v}");
    let degrees: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["name"].as_str().unwrap().ends_with(": degree"))
        .map(|c| c["computed"].as_str().unwrap())
        .collect();
    assert_eq!(degrees, ["4", "4", "6", "6"]);
}
