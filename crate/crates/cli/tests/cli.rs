use dualwave_cli::manifest::{sha256_hex, Manifest};
use std::path::Path;
use std::process::{Command, Output};

fn dualwave(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dualwave"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn read_manifest(path: &Path) -> Manifest {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn config_errors_exit_with_two_and_name_the_field() {
    let tmp = tempfile::tempdir().unwrap();
    let cases: &[(&[&str], &str)] = &[
        (
            &["solve1d", "--energy", "1.0"],
            "dualwave: config error: orbital.energy: must exceed 1, the band edge in plasmon units (got 1)\n",
        ),
        (
            &["solve1d", "--energy", "0.5"],
            "dualwave: config error: orbital.energy: must exceed 1, the band edge in plasmon units (got 0.5)\n",
        ),
        (
            &["scales", "--set", "scales.n0_min=-1e10"],
            "dualwave: config error: scales.n0_min: must be a positive density [cm^-3] (got -10000000000)\n",
        ),
        (
            &["dipole", "--energy", "20", "--spacing", "3", "--nx", "4"],
            "dualwave: config error: grid.nx: must be at least 16 (got 4)\n",
        ),
        (
            &["dipole", "--energy", "20"],
            "dualwave: config error: dipole.a: missing (pole half-separation in plasmon lengths)\n",
        ),
    ];
    for (args, want) in cases {
        let o = dualwave(args, tmp.path());
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert_eq!(stderr(&o), *want, "{args:?}");
    }
    assert_eq!(std::fs::read_dir(tmp.path()).map(|d| d.count()).unwrap_or(0), 0, "nothing written on config errors");
}

#[test]
fn unknown_keys_and_figures_are_rejected() {
    let tmp = tempfile::tempdir().unwrap();
    let o = dualwave(&["dipole", "--energy", "20", "--set", "grid.bogus=1"], tmp.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown field `bogus`"), "{}", stderr(&o));

    let cfg = tmp.path().join("bad.toml");
    std::fs::write(&cfg, "command = \"dispersion\"\n[dispersion]\nk_mim = 0.2\n").unwrap();
    let o = dualwave(&["dispersion", "--config", cfg.to_str().unwrap()], tmp.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown field `k_mim`"), "{}", stderr(&o));

    let o = dualwave(&["figures", "fig9"], tmp.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown figure id `fig9`"));
}

#[test]
fn numerical_failures_exit_with_three() {
    let tmp = tempfile::tempdir().unwrap();
    let o = dualwave(
        &["eos", "--set", "eos.n0_min=1e59", "--set", "eos.n0_max=1e60", "--set", "eos.points=2"],
        tmp.path(),
    );
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    assert!(stderr(&o).starts_with("dualwave: numerical error:"));
}

#[test]
fn empty_seed_streamlines_give_a_header_only_file() {
    let tmp = tempfile::tempdir().unwrap();
    let o = dualwave(&["streamlines", "--energy", "20", "--spacing", "3"], tmp.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let text = std::fs::read_to_string(tmp.path().join("streamlines.csv")).unwrap();
    let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(body, ["id,s [l_p],x [l_p],y [l_p]"]);
    assert!(tmp.path().join("streamlines.manifest.json").exists());
}

#[test]
fn rerun_from_manifest_is_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let first = tmp.path().join("first");
    let o = dualwave(
        &[
            "currents", "--energy", "20", "--spacing", "3", "--nx", "121", "--ny", "101",
            "--set", "grid.x_min=-6.0", "--set", "grid.x_max=6.0", "--set", "grid.y_min=-5.0", "--set", "grid.y_max=5.0",
            "--set", "currents.divergence=true", "--probe", "--raster",
        ],
        &first,
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let m1 = read_manifest(&first.join("currents.manifest.json"));
    assert!(m1.outputs.iter().any(|r| r.file == "currents_spectrum.csv"));
    assert!(m1.outputs.iter().any(|r| r.file.ends_with(".png")));
    for r in &m1.outputs {
        let bytes = std::fs::read(first.join(&r.file)).unwrap();
        assert_eq!(sha256_hex(&bytes), r.sha256, "{}", r.file);
        assert_eq!(bytes.len() as u64, r.bytes);
    }

    let second = tmp.path().join("second");
    let manifest = first.join("currents.manifest.json");
    let o = dualwave(&["currents", "--config", manifest.to_str().unwrap()], &second);
    assert!(o.status.success(), "{}", stderr(&o));
    let m2 = read_manifest(&second.join("currents.manifest.json"));
    assert_eq!(m1.outputs, m2.outputs);
    assert_eq!(m1.derived, m2.derived);
}

#[test]
fn figure_one_emits_four_tables() {
    let tmp = tempfile::tempdir().unwrap();
    let o = dualwave(&["figures", "fig1"], tmp.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let mut csv = Vec::new();
    for id in ["fig1a", "fig1b", "fig1c", "fig1d"] {
        for f in std::fs::read_dir(tmp.path().join(id)).unwrap() {
            let name = f.unwrap().file_name().to_string_lossy().into_owned();
            if name.ends_with(".csv") {
                csv.push(name);
            }
        }
    }
    csv.sort();
    assert_eq!(csv, ["fig1a.csv", "fig1b.csv", "fig1c.csv", "fig1d.csv"]);
}

#[test]
fn dispersion_table_has_the_expected_shape() {
    let tmp = tempfile::tempdir().unwrap();
    let o = dualwave(&["dispersion", "--set", "dispersion.k_min=0.5", "--set", "dispersion.k_max=2.0", "--set", "dispersion.samples=151"], tmp.path());
    assert!(o.status.success());
    let text = std::fs::read_to_string(tmp.path().join("dispersion.csv")).unwrap();
    let rows: Vec<Vec<f64>> = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 151);
    let at_one = rows.iter().find(|r| (r[0] - 1.0).abs() < 1e-12).unwrap();
    assert!((at_one[1] - 1.0).abs() < 1e-12);
    for r in &rows {
        assert!((r[2] - 0.5 * r[0] * r[0]).abs() < 1e-12);
    }
    let e: Vec<f64> = rows.iter().map(|r| r[1]).collect();
    let turn = e.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1)).unwrap().0;
    assert!(e[..=turn].windows(2).all(|w| w[1] < w[0]));
    assert!(e[turn..].windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn json_format_and_overrides() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("line.toml");
    std::fs::write(&cfg, "command = \"solve1d\"\nname = \"line\"\n[orbital]\nenergy = 2.0\n[line]\nsamples = 11\n").unwrap();
    let o = dualwave(
        &["solve1d", "--config", cfg.to_str().unwrap(), "--energy", "4", "--set", "line.x_max=5.0", "--format", "json"],
        tmp.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(tmp.path().join("line.json")).unwrap()).unwrap();
    assert_eq!(v["columns"][0], "x [l_p]");
    assert_eq!(v["metadata"]["E"], "4");
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 11);
    assert_eq!(rows[10][0], 5.0);
    let m = read_manifest(&tmp.path().join("line.manifest.json"));
    assert_eq!(m.config.orbital.unwrap().energy, 4.0);
    assert!((m.derived["orbital"]["k2"].as_f64().unwrap() - (4.0 + 15f64.sqrt()).sqrt()).abs() < 1e-12);
}

#[test]
fn short_trajectories_are_a_config_error() {
    let tmp = tempfile::tempdir().unwrap();
    let o = dualwave(&["trajectory", "--energy", "2", "--set", "trajectory.t_end=20.0"], tmp.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("trajectory.t_end: must be at least ten fast periods"), "{}", stderr(&o));
}

#[test]
fn trajectory_summary_reports_each_run() {
    let tmp = tempfile::tempdir().unwrap();
    let o = dualwave(&["trajectory", "--energy", "2", "--v0", "0.82,1.5", "--set", "trajectory.t_end=40.0"], tmp.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let text = std::fs::read_to_string(tmp.path().join("trajectory_summary.csv")).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).skip(1).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r.ends_with("localized") || r.ends_with("propagating")));
}

#[test]
fn threads_flag_does_not_change_output() {
    let tmp = tempfile::tempdir().unwrap();
    let args = ["dipole", "--energy", "20", "--spacing", "3", "--nx", "64", "--ny", "64"];
    let mut a = args.to_vec();
    a.extend(["--threads", "1"]);
    let mut b = args.to_vec();
    b.extend(["--threads", "3"]);
    assert!(dualwave(&a, &tmp.path().join("a")).status.success());
    assert!(dualwave(&b, &tmp.path().join("b")).status.success());
    let read = |d: &str| std::fs::read(tmp.path().join(d).join("dipole.csv")).unwrap();
    assert_eq!(read("a"), read("b"));
}
