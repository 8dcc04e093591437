use std::path::Path;
use std::process::{Command, Output};

fn bosescat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bosescat"))
        .args(args)
        .env("NO_COLOR", "1")
        .output()
        .unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn body(out: &Output) -> Vec<String> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(str::to_string)
        .collect()
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let ok = write(
        dir.path(),
        "ok.txt",
        "schema_version=1\nkappa=0.5\nsweep=t\nrange=1.1,2\npoints=3\n",
    );
    assert_eq!(bosescat(&["sweep", &ok]).status.code(), Some(0));

    let bad = write(
        dir.path(),
        "bad.txt",
        "schema_version=1\nkappa=0.5\nsweep=t\nrange=2,1\npoints=3\n",
    );
    let out = bosescat(&["sweep", &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("range"));

    let dead = write(
        dir.path(),
        "dead.txt",
        "schema_version=1\nkappa=0\nsweep=t\nrange=0.5,0.9\npoints=3\n",
    );
    assert_eq!(bosescat(&["sweep", &dead]).status.code(), Some(2));

    assert_eq!(bosescat(&["sweep", "/nonexistent/scenario.txt"]).status.code(), Some(3));
    assert_eq!(bosescat(&["classify", "--power", "-1"]).status.code(), Some(1));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let sc = write(
        dir.path(),
        "s.txt",
        "schema_version=1\nkappa=0.5\nsweep=t\nrange=0.5,2\npoints=4\n",
    );
    let path = dir.path().join("o.csv");
    let out = bosescat(&["sweep", &sc, "--out", path.to_str().unwrap(), "--threads", "2"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# bosescat sweep"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 5);
}

#[test]
fn classify_reports_regimes() {
    let out = bosescat(&["classify", "--dimension", "3", "--power", "box"]);
    assert_eq!(
        body(&out)[1],
        "5.0000000000000000e-1,true,diverges-at-tc,-1.0000000000000000e0"
    );
    let out = bosescat(&["classify", "--dimension", "3", "--power", "2"]);
    assert!(body(&out)[1].contains("bounded-above-tc-by-zeta-ratio"));
    let out = bosescat(&["classify", "--dimension", "1", "--power", "2"]);
    assert!(body(&out)[1].contains(",false,bounded,"));
}

#[test]
fn polarization_fixed_third_is_four_plus_eta_over_five() {
    let dir = tempfile::tempdir().unwrap();
    let sc = write(
        dir.path(),
        "s.txt",
        "schema_version=1\nkappa=0.3\nsweep=t\nrange=0.6,1.6\npoints=6\n",
    );
    let curve = dir.path().join("c.csv");
    assert!(bosescat(&["sweep", &sc, "--out", curve.to_str().unwrap()])
        .status
        .success());
    let out = bosescat(&[
        "polarization",
        "--curve",
        curve.to_str().unwrap(),
        "--gamma",
        "0.3333333333333333",
    ]);
    assert!(out.status.success());
    let rows = body(&out);
    assert_eq!(rows[0], "x,eta_sigma_plus,eta_sigma_minus");
    for r in &rows[1..] {
        let v: Vec<f64> = r.split(',').map(|s| s.parse().unwrap()).collect();
        assert!((v[2] - (4.0 + v[1]) / 5.0).abs() < 1e-12);
    }
}

#[test]
fn polarization_fit_recovers_gamma() {
    let dir = tempfile::tempdir().unwrap();
    let sc = write(
        dir.path(),
        "s.txt",
        "schema_version=1\nkappa=0.3\nsweep=t\nrange=0.6,1.6\npoints=6\n",
    );
    let curve = dir.path().join("c.csv");
    assert!(bosescat(&["sweep", &sc, "--out", curve.to_str().unwrap()])
        .status
        .success());
    let mut data = String::from("eta,observed,sigma\n");
    for eta in [1.2, 1.6, 2.0, 2.5, 3.0, 4.0] {
        data.push_str(&format!("{eta},{},0.05\n", (4.0 + eta) / 5.0));
    }
    let d = write(dir.path(), "d.csv", &data);
    let out = bosescat(&[
        "polarization",
        "--curve",
        curve.to_str().unwrap(),
        "--gamma",
        "fit",
        "--data",
        &d,
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    let g: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("# gamma = "))
        .unwrap()
        .parse()
        .unwrap();
    assert!((g - 1.0 / 3.0).abs() < 1e-12, "gamma {g}");
}

#[test]
fn selftest_passes() {
    let out = bosescat(&["selftest"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.lines().all(|l| l.starts_with("PASS ")));
    assert!(text.lines().count() >= 8);
}

#[test]
fn profile_doubling_atoms_doubles_integral() {
    let dir = tempfile::tempdir().unwrap();
    let base = "schema_version=1\nscattering_length_bohr=85\ntrap_frequency_hz=2700\nprofile_models=ideal, semi-ideal, hartree-fock\nprofile_t=0.8\n";
    for n in [4e5, 8e5] {
        let sc = write(dir.path(), "p.txt", &format!("{base}n_atoms={n}\n"));
        let out = bosescat(&["profile", &sc]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        let text = String::from_utf8_lossy(&out.stdout);
        let blocks: Vec<f64> = text
            .lines()
            .filter(|l| l.starts_with("# block "))
            .map(|l| l.rsplit("integrated_atoms = ").next().unwrap().parse().unwrap())
            .collect();
        assert_eq!(blocks.len(), 3);
        for atoms in blocks {
            assert!((atoms / n - 1.0).abs() < 5e-3, "integrated {atoms} for N = {n}");
        }
    }
}

#[test]
fn profile_models_coincide_without_interactions() {
    let dir = tempfile::tempdir().unwrap();
    let sc = write(
        dir.path(),
        "p.txt",
        "schema_version=1\nscattering_length_bohr=0\ntrap_frequency_hz=2700\nprofile_models=ideal, semi-ideal, hartree-fock\nprofile_t=1.2\n",
    );
    let out = bosescat(&["profile", &sc]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = body(&out);
    let mut by_model: std::collections::BTreeMap<String, Vec<f64>> = Default::default();
    for r in &rows[1..] {
        let mut it = r.split(',');
        let m = it.next().unwrap().to_string();
        let _r: f64 = it.next().unwrap().parse().unwrap();
        by_model.entry(m).or_default().push(it.next().unwrap().parse().unwrap());
    }
    let ideal = &by_model["ideal"];
    for (m, v) in &by_model {
        for (a, b) in v.iter().zip(ideal) {
            assert!((a - b).abs() <= 2e-3 * ideal[0], "{m}: {a} vs {b}");
        }
    }
}
