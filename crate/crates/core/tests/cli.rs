use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn csh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_csh"))
        .args(args)
        .output()
        .expect("spawn csh")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

const RANDOM: &str = "[grid]\nn = 16\n[scheme]\ndt = 0.01\nt_end = 0.1\n\
                      [initial]\nkind = \"random-band\"\nk_max = 3\n";

#[test]
fn run_then_check() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.toml", RANDOM);
    let out = dir.path().join("out");
    let o = csh(&["run", &cfg, "--out", out.to_str().unwrap(), "--seed", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let stdout = String::from_utf8(o.stdout).unwrap();
    assert!(stdout.contains("energy_drift"));
    let echo = fs::read_to_string(out.join("config.toml")).unwrap();
    assert!(echo.contains("seed = 4"));

    let snap = out.join("snapshot_final.bin");
    let o = csh(&["check", snap.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8(o.stdout).unwrap().contains("constraint_l2"));
}

#[test]
fn seed_flag_changes_data_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.toml", RANDOM);
    let run = |seed: &str, sub: &str| {
        let out = dir.path().join(sub);
        let o = csh(&["run", &cfg, "--out", out.to_str().unwrap(), "--seed", seed, "--quiet"]);
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
        fs::read(out.join("diagnostics.csv")).unwrap()
    };
    let (a, b, c) = (run("1", "a"), run("1", "b"), run("2", "c"));
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn config_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "bad.toml", "[grid]\nn = 16\n[scheme]\ndt = -1.0\nt_end = 0.1\n");
    let o = csh(&["run", &cfg, "--out", dir.path().join("o").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 4") && err.contains("scheme.dt must be positive"), "{err}");

    let o = csh(&["run", dir.path().join("missing.toml").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn obstruction_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "pw.toml",
        "[grid]\nn = 16\n[scheme]\ndt = 0.01\nt_end = 0.1\n[potential]\ncoefficients = [1.0]\n\
         [initial]\nkind = \"plane-wave\"\n",
    );
    let o = csh(&["run", &cfg, "--out", dir.path().join("o").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stderr).unwrap().contains("obstruction"));
}

#[test]
fn blow_up_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "boom.toml",
        "[grid]\nn = 8\n[scheme]\ndt = 0.05\nt_end = 5.0\n\
         [initial]\nkind = \"gaussian-bump\"\namplitude = 1000.0\n",
    );
    let out = dir.path().join("o");
    let o = csh(&["run", &cfg, "--out", out.to_str().unwrap(), "--quiet"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(out.join("diagnostics.csv").exists());
    assert!(out.join("snapshot_last_good.bin").exists());
}

#[test]
fn corrupt_snapshot_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("x.bin");
    fs::write(&p, b"XXXX0000").unwrap();
    let o = csh(&["check", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stderr).unwrap().contains("format"));
}

#[test]
fn estimates_and_gauge_demo() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "e.toml",
        "[grid]\nn = 16\n[scheme]\ndt = 0.01\nt_end = 0.05\n\
         [initial]\nkind = \"random-band\"\nk_max = 2\n\
         [estimates]\nbatches = 3\nk_max = 4.0\n",
    );
    let out = dir.path().join("o");
    let o = csh(&["estimates", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(out.join("estimates.csv")).unwrap();
    assert_eq!(text.lines().next(), Some("inequality,n,seed,ratio"));
    assert_eq!(text.lines().count(), 1 + 2 * 3);

    // the e^{i chi} products need the finer grid to stay dealiased exactly
    let cfg = write(
        dir.path(),
        "g.toml",
        "[grid]\nn = 64\n[scheme]\ndt = 0.001\nt_end = 0.005\n\
         [initial]\nkind = \"random-band\"\nk_max = 3\n",
    );
    let o = csh(&["gauge-demo", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let report = fs::read_to_string(out.join("gauge_demo.txt")).unwrap();
    let commutation: f64 = report
        .lines()
        .find_map(|l| l.strip_prefix("commutation_sup: "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(commutation < 1e-8, "{report}");
}
