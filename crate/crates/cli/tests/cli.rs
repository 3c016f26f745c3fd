use std::f64::consts::PI;
use std::fs;

use serde_json::Value;

use ellipsoid_cli::record::RunRecord;
use ellipsoid_cli::{run, EXIT_OK, EXIT_USAGE, EXIT_VALIDATION};

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn call(args: &[&str]) -> Run {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("ellipsoid").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn json(args: &[&str]) -> Value {
    let r = call(args);
    assert_eq!(r.code, EXIT_OK, "{args:?}: {}", r.err);
    serde_json::from_str(&r.out).unwrap()
}

fn num(v: &Value, key: &str) -> f64 {
    v[key].as_f64().unwrap_or_else(|| panic!("no number at {key}: {v}"))
}

#[test]
fn unit_sphere_area() {
    let v = json(&["surface", "--axes", "1,1,1"]);
    assert!((num(&v, "value") - 4.0 * PI).abs() < 1e-12);
    assert_eq!(v["command"], "surface");
    assert_eq!(v["method"], "moment_integral");
    assert!(v["wall_time_ms"].is_u64());
    assert!(v["version"].is_string());
    assert!(v.get("seed").is_none() && v.get("std_error").is_none());
}

#[test]
fn planar_ratio_bounds() {
    let v = json(&["ratio-bounds", "--dim", "2"]);
    assert!((num(&v, "c_n") - 2.0 / PI).abs() < 1e-15);
    assert!((num(&v, "C_n") - 0.5f64.sqrt()).abs() < 1e-15);
}

#[test]
fn coordinate_plane_projection() {
    let v = json(&["project", "--axes", "3,2,1", "--basis", "e1,e2", "--form", "1"]);
    assert!((num(&v, "value") - 6.0 * PI).abs() < 1e-12);
    for form in ["2", "3", "4", "singular", "auto"] {
        let w = json(&["project", "--axes", "3,2,1", "--basis", "1,0,0;0,1,0", "--form", form, "--validate"]);
        assert!((num(&w, "value") - 6.0 * PI).abs() < 1e-12, "form {form}");
    }
}

#[test]
fn seeded_output_is_reproducible_across_workers() {
    for args in [
        vec!["ratio", "--axes", "2,1,0.5", "--method", "mc", "--samples", "50000", "--seed", "11", "--validate"],
        vec!["meancurv", "--axes", "1,2,3,1.5,0.7", "--k", "2", "--samples", "20000", "--seed", "4"],
        vec!["surface", "--axes", "1,2", "--seed", "4", "--format", "csv"],
    ] {
        let base = call(&args);
        assert_eq!(base.code, EXIT_OK, "{}", base.err);
        for workers in ["1", "3"] {
            let mut a = args.clone();
            a.extend(["--workers", workers]);
            assert_eq!(call(&a).out, base.out);
        }
        assert!(!base.out.contains("wall_time_ms\":"));
        assert!(base.err.contains("wall_time_ms"));
    }
}

#[test]
fn csv_has_header_and_one_row() {
    let r = call(&["ratio", "--axes", "2,1", "--format", "csv"]);
    assert_eq!(r.code, EXIT_OK);
    let mut rd = csv::Reader::from_reader(r.out.as_bytes());
    let header = rd.headers().unwrap().clone();
    let rows: Vec<_> = rd.records().map(|x| x.unwrap()).collect();
    assert_eq!(rows.len(), 1);
    let col = header.iter().position(|h| h == "value").unwrap();
    let cell = &rows[0][col];
    let mantissa = cell.split('e').next().unwrap().replace(['.', '-'], "");
    assert_eq!(mantissa.len(), 17, "{cell}");
    assert!((cell.parse::<f64>().unwrap() - 1.541_964_425_190_04).abs() < 1e-12);
}

#[test]
fn records_round_trip() {
    let r = call(&["bounds", "--axes", "1,2,3,4", "--k", "1", "--seed", "9", "--samples", "5000", "--validate"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    let rec: RunRecord = serde_json::from_str(&r.out).unwrap();
    assert_eq!(serde_json::to_string(&rec).unwrap() + "\n", r.out);
    assert!(rec.extra.contains_key("lower") && rec.extra.contains_key("upper"));
    assert_eq!(rec.seed, Some(9));
}

#[test]
fn usage_errors_name_the_flag() {
    let r = call(&["surface", "--axes", "1,oops"]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(r.err.contains("--axes"), "{}", r.err);
    let r = call(&["surface", "--axes", "1,2", "--bogus"]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(r.err.contains("--bogus"), "{}", r.err);
    assert_eq!(call(&["surface"]).code, EXIT_USAGE);
    assert_eq!(call(&["surface", "--axes", "1,-2"]).code, EXIT_USAGE);
    assert_eq!(call(&["meancurv", "--axes", "1,2,3", "--k", "2"]).code, EXIT_USAGE);
    assert_eq!(call(&["project", "--axes", "1,2,3", "--basis", "e4"]).code, EXIT_USAGE);
    assert_eq!(call(&["surface", "--axes", "1", "--workers", "0"]).code, EXIT_USAGE);
    let help = call(&["--help"]);
    assert_eq!(help.code, EXIT_OK);
    assert!(help.out.contains("ratio-constants"));
}

#[test]
fn validation_failures_exit_with_three() {
    let r = call(&["ratio-constants", "--dim", "4", "--k", "2", "--mode", "published", "--validate"]);
    assert_eq!(r.code, EXIT_VALIDATION);
    let v: Value = serde_json::from_str(&r.out).unwrap();
    assert!((num(&v, "deviation_factor") - 2.0 * PI).abs() < 1e-12);
    assert!(num(&v, "oracle_deviation") > 1.0);

    let v = json(&["ratio-constants", "--dim", "4", "--k", "2", "--validate"]);
    assert!(num(&v, "oracle_deviation") < 1e-12);
}

#[test]
fn hypergeometric_commands() {
    let v = json(&["fd", "--a", "1", "--b", "1", "--c", "2", "--x", "0.5", "--tol", "1e-14", "--validate"]);
    assert!((num(&v, "value") - 2.0 * 2f64.ln()).abs() < 1e-12);
    let v = json(&["fd", "--a", "0.5", "--b", "0.5,1.5", "--c", "2", "--x", "0.99,-0.98", "--validate"]);
    assert_eq!(v["method"], "integral");
    let v = json(&["ratio-fd", "--axes", "1,1", "--validate"]);
    assert!((num(&v, "value") - 2.0).abs() < 1e-12);
    assert!((num(&v, "printed_deviation_factor") - 4.0 / PI).abs() < 1e-9);
}

#[test]
fn mean_curvature_of_a_ball() {
    let v = json(&["meancurv", "--axes", "1,1,1,1", "--k", "1", "--samples", "1000", "--seed", "1", "--validate"]);
    assert!((num(&v, "value") - 2.0 * PI * PI).abs() < 1e-12);
    assert_eq!(v["oracle_method"], "closed_form");
    let v = json(&["meancurv", "--axes", "1.5,1,2", "--k", "0", "--samples", "40000", "--seed", "3", "--validate"]);
    assert_eq!(v["oracle_method"], "surface_area");
}

#[test]
fn ledger_lists_misprints() {
    let v = json(&["ledger", "--validate"]);
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(num(&v, "value") as usize, entries.len());
    let find = |id: &str| entries.iter().find(|e| e["id"] == id).unwrap_or_else(|| panic!("{id}"));
    assert!((num(find("fd_ratio_printed"), "deviation_factor") - 4.0 / PI).abs() < 1e-9);
    assert!((num(find("mean_curvature_ratio_published"), "deviation_factor") - 2.0 * PI).abs() < 1e-9);
    let r = call(&["ledger", "--format", "csv"]);
    assert_eq!(r.out.lines().filter(|l| l.contains("fd_ratio")).count(), 4);
}

#[test]
fn file_inputs() {
    let dir = std::env::temp_dir().join(format!("ellipsoid-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let axes = dir.join("axes.txt");
    fs::write(&axes, "# semi-axes\n3\n2\n\n1\n").unwrap();
    let basis = dir.join("basis.txt");
    fs::write(&basis, "1 0 0\n0, 1, 0\n").unwrap();
    let a = axes.to_str().unwrap();
    let v = json(&["project", "--axes-file", a, "--basis-file", basis.to_str().unwrap()]);
    assert!((num(&v, "value") - 6.0 * PI).abs() < 1e-12);
    let s = json(&["surface", "--axes-file", a]);
    assert!((num(&s, "value") - 48.88214630258206).abs() < 1e-8);
    assert_eq!(call(&["surface", "--axes-file", a, "--axes", "1"]).code, EXIT_USAGE);
    fs::remove_dir_all(&dir).unwrap();
}
