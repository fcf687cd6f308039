//! End-to-end runs of the `concur` binary. Golden files live in
//! `tests/golden`; set `CONCUR_UPDATE_GOLDEN=1` to rewrite them.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn config(name: &str) -> PathBuf {
    manifest_dir().join("tests/configs").join(name)
}

fn concur(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_concur"))
        .args(args)
        .env_remove("CONCUR_DATASET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn assert_golden(name: &str, actual: &str) {
    let path = manifest_dir().join("tests/golden").join(name);
    if std::env::var_os("CONCUR_UPDATE_GOLDEN").is_some() || !path.exists() {
        std::fs::write(&path, actual).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap();
    assert_eq!(actual, expected, "output differs from {}", path.display());
}

/// Rows of a CSV stream with comments dropped, split into cells.
fn rows(text: &str) -> Vec<Vec<String>> {
    text.lines().filter(|l| !l.starts_with('#')).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

fn column(text: &str, name: &str) -> Vec<f64> {
    let r = rows(text);
    let idx = r[0].iter().position(|c| c == name).unwrap_or_else(|| panic!("no column {name}"));
    r[1..].iter().map(|row| row[idx].parse().unwrap()).collect()
}

#[test]
fn every_scenario_kind_evolves_to_golden() {
    for name in [
        "h1",
        "h2_chain",
        "h3",
        "hN2",
        "hN5",
        "h3_experimental",
        "h4_experimental",
        "vlb_transformed",
        "singly_pumped",
        "custom_tables",
    ] {
        let o = concur(&["evolve", "--config", config(&format!("{name}.toml")).to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{name}: {}", String::from_utf8_lossy(&o.stderr));
        let text = stdout(&o);
        assert!(text.lines().any(|l| l.starts_with("kappa_t,var_Psum")), "{name}");
        assert_golden(&format!("evolve_{name}.csv"), &text);
    }
}

#[test]
fn h3_psum_row() {
    let o = concur(&["evolve", "--config", config("h3.toml").to_str().unwrap()]);
    let psum = column(&stdout(&o), "var_Psum");
    assert_eq!(psum[0], 1.5);
    assert!((psum[1] - 1.5 * (-2.0f64).exp()).abs() < 1e-11);
    assert!((psum[1] - 0.2030).abs() < 5e-5);
}

#[test]
fn hn_with_two_modes_matches_h1() {
    let a = stdout(&concur(&["evolve", "--config", config("h1.toml").to_str().unwrap()]));
    let b = stdout(&concur(&["evolve", "--config", config("hN2.toml").to_str().unwrap()]));
    assert_eq!(rows(&a), rows(&b));
}

#[test]
fn chain_zero_mode_is_constant() {
    let text = stdout(&concur(&["evolve", "--config", config("h2_chain.toml").to_str().unwrap()]));
    assert!(text.contains("# E2: constant eigenmode"));
    for name in ["var_E2", "var_P1mP3"] {
        for v in column(&text, name) {
            assert!((v - 0.5).abs() < 1e-12, "{name}: {v}");
        }
    }
}

#[test]
fn output_is_byte_stable_and_can_go_to_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("h3.csv");
    let script = dir.path().join("h3.py");
    let cfg = config("hN5.toml");
    let args = ["evolve", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap(), "--plot-script", script.to_str().unwrap()];
    let o = concur(&args);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let first = std::fs::read(&out).unwrap();
    assert_eq!(first, concur(&["evolve", "--config", cfg.to_str().unwrap()]).stdout);
    let o = concur(&args);
    assert_eq!(code(&o), 0);
    assert_eq!(first, std::fs::read(&out).unwrap());
    let py = std::fs::read_to_string(&script).unwrap();
    assert!(py.contains("import matplotlib") && py.contains("\"var_Psum\""));
}

#[test]
fn eigenmodes_listing() {
    let o = concur(&["eigenmodes", "--config", config("h4_experimental.toml").to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_golden("eigenmodes_h4_experimental.csv", &stdout(&o));
    let o = concur(&["eigenmodes", "--config", config("h2_chain.toml").to_str().unwrap()]);
    assert_golden("eigenmodes_h2_chain.csv", &stdout(&o));
}

#[test]
fn check_exit_codes() {
    let o = concur(&["check", "--config", config("hN5.toml").to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("verdict: realizable"));

    let o = concur(&["check", "--config", config("vlb_transformed.toml").to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let text = stdout(&o);
    assert_eq!(text.matches("CONFLICT").count(), 1);
    assert!(text.contains("  2: 1,3=-0.666666666667 2,2=0.333333333333  CONFLICT"));
    assert_golden("check_vlb_transformed.txt", &text);

    let o = concur(&["check", "--config", config("custom_zero.toml").to_str().unwrap()]);
    assert_eq!(code(&o), 0);

    let o = concur(&["check", "--config", config("h4_experimental.toml").to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_golden("check_h4_experimental.txt", &stdout(&o));

    let o = concur(&["check", "--config", config("custom_tables.toml").to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("  2: 1,3=-1 2,2=-1\n"));
}

#[test]
fn config_and_numeric_errors() {
    let o = concur(&["evolve", "--config", config("incomplete.toml").to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("needs n"));
    let o = concur(&["evolve", "--config", config("missing.toml").to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let o = concur(&["evolve", "--config", config("runaway.toml").to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
    let o = concur(&["evolve"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn qpm_period() {
    let o = concur(&["qpm", "period", "zzz", "--order", "1", "--temp", "25"]);
    assert_eq!(code(&o), 0);
    let p: f64 = stdout(&o).trim().parse().unwrap();
    assert!((p / 8.37 - 1.0).abs() < 0.05, "{p}");
    let o = concur(&["qpm", "period", "zzz", "--order", "5"]);
    let p5: f64 = stdout(&o).trim().parse().unwrap();
    assert!((p5 / p - 5.0).abs() < 1e-10);
    let o = concur(&["qpm", "period", "yzy"]);
    let py: f64 = stdout(&o).trim().parse().unwrap();
    assert!((py / 43.0 - 1.0).abs() < 0.05, "{py}");
    let o = concur(&["qpm", "period", "zzz", "--temp", "900"]);
    assert_eq!(code(&o), 3);
    let o = concur(&["qpm", "period", "zzz", "--order", "2"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn qpm_curve_peaks_at_one() {
    let o = concur(&["qpm", "curve", "zzz", "--temp", "40", "--t-range", "30:50", "--steps", "401"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let power = column(&text, "power_normalized");
    let temps = column(&text, "temperature_C");
    let (k, max) = power.iter().enumerate().fold((0, 0.0), |a, (k, &v)| if v > a.1 { (k, v) } else { a });
    assert!((max - 1.0).abs() < 1e-9, "{max}");
    assert!((temps[k] - 40.0).abs() < 1e-9);
    assert!(text.lines().any(|l| l.starts_with("#peak,40,0,1,")));
    assert_golden("qpm_curve_zzz.csv", &text);
}

#[test]
fn qpm_concur_lists_main_sidelobe_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let script = dir.path().join("fig.py");
    let o = concur(&["qpm", "concur", "--period-range", "41.5:42.5", "--lobes", "2", "--plot-script", script.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let r = rows(&text);
    assert!(r.len() > 1);
    assert!(r[1..].iter().any(|row| (row[2] == "0") != (row[3] == "0")), "{text}");
    assert_golden("qpm_concur_shipped.csv", &text);
    let py = std::fs::read_to_string(&script).unwrap();
    assert!(py.contains("yzy m=1") && py.contains("zzz m=5") && py.contains("axvline"));

    // Main lobes only: the main peaks stay apart over this range.
    let o = concur(&["qpm", "concur", "--period-range", "41.8:42.0", "--lobes", "0"]);
    assert_eq!(code(&o), 1);
    assert_eq!(rows(&stdout(&o)).len(), 1);
}

#[test]
fn dataset_selection() {
    let dir = tempfile::tempdir().unwrap();
    let shipped = std::fs::read_to_string(manifest_dir().join("../core/data/rta.toml")).unwrap();
    let shifted = dir.path().join("shifted.toml");
    std::fs::write(&shifted, shipped.replace("3.55638", "3.56")).unwrap();
    let base = stdout(&concur(&["qpm", "period", "zzz"]));
    let via_flag = concur(&["qpm", "--dataset", shifted.to_str().unwrap(), "period", "zzz"]);
    assert_eq!(code(&via_flag), 0);
    assert_ne!(stdout(&via_flag), base);
    let via_env = Command::new(env!("CARGO_BIN_EXE_concur"))
        .args(["qpm", "period", "zzz"])
        .env("CONCUR_DATASET", &shifted)
        .output()
        .unwrap();
    assert_eq!(stdout(&via_env), stdout(&via_flag));

    let broken = dir.path().join("broken.toml");
    std::fs::write(&broken, shipped.replace("[axis.y]", "[axis.y]\nmystery = 2")).unwrap();
    let o = concur(&["qpm", "--dataset", broken.to_str().unwrap(), "period", "zzz"]);
    assert_eq!(code(&o), 2);
    let o = concur(&["qpm", "--dataset", Path::new("/definitely/not/here.toml").to_str().unwrap(), "period", "zzz"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn verify_quick_passes() {
    let o = concur(&["verify", "--quick"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.starts_with("case,quadrature,kappa_t,gaussian,oracle,abs_error,converged,status"));
    assert!(!text.contains("FAIL"));
}
