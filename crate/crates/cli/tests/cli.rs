use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_isogear"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("isogear-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str], cwd: &Path) -> Output {
    bin().args(args).current_dir(cwd).output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn build_writes_gears_and_pairs() {
    let dir = scratch("build");
    let out = run(&["build", "--n", "3", "--lengths", "1,2,3", "--dual"], &dir);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("graph dual-gear\nvertices 6\n"));
    assert_eq!(text.lines().filter(|l| l.starts_with("edge")).count(), 6);

    assert!(
        run(&["build", "--fig3", "a", "--lengths", "1,2,3", "--out", "pair"], &dir)
            .status
            .success()
    );
    assert!(dir.join("pair-left.graph").exists() && dir.join("pair-right.graph").exists());

    assert_eq!(
        run(&["build", "--n", "2", "--lengths", "1,2"], &dir).status.code(),
        Some(2)
    );
    assert_eq!(run(&["build", "--lengths", "1,-2,3"], &dir).status.code(), Some(2));
}

#[test]
fn spectrum_of_interval_and_gear() {
    let dir = scratch("spectrum");
    std::fs::write(
        dir.join("interval.graph"),
        "graph interval\nvertices 2\nedge 0 0 1 1 1 plain\n",
    )
    .unwrap();
    let out = run(&["spectrum", "interval.graph", "--k-max", "10"], &dir);
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    let ks: Vec<f64> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(ks.len(), 4);
    for (j, k) in ks.iter().enumerate() {
        assert!((k - j as f64 * std::f64::consts::PI).abs() < 1e-9);
    }

    run(&["build", "--lengths", "1,2,3", "--out", "g.graph"], &dir);
    let out = run(&["spectrum", "g.graph", "--w", "1", "--k-max", "10"], &dir);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().lines().count() > 15);

    assert_eq!(
        run(&["spectrum", "missing.graph", "--k-max", "3"], &dir).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["spectrum", "g.graph", "--k-max", "3", "--params", "delta=-1"], &dir)
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn dual_pair_compares_equal() {
    let dir = scratch("compare");
    run(&["build", "--lengths", "1,2,3", "--out", "g.graph"], &dir);
    run(&["build", "--lengths", "1,2,3", "--dual", "--out", "d.graph"], &dir);
    let out = run(&["compare", "g.graph", "d.graph", "--w", "3/2", "--k-max", "6"], &dir);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["matched"], true);

    // a different gear is not isospectral
    run(&["build", "--lengths", "1,2,4", "--out", "h.graph"], &dir);
    assert_eq!(
        run(&["compare", "g.graph", "h.graph", "--k-max", "6"], &dir)
            .status
            .code(),
        Some(4)
    );
}

#[test]
fn conjugate_is_exact_in_rational_mode() {
    let dir = scratch("conjugate");
    let out = run(
        &["conjugate", "--lengths", "1,2,3", "--w", "3/2", "--mode", "rational"],
        &dir,
    );
    assert!(out.status.success());
    let report = json(&out);
    assert_eq!(report["conj_residual"].as_f64(), Some(0.0));
    assert_eq!(report["charpoly_equal"], true);
    assert!(report["sigma_min_C"].as_f64().unwrap() > 1e-8);
}

#[test]
fn markov_reports_charpoly_and_crosscheck() {
    let dir = scratch("markov");
    run(&["build", "--lengths", "1,2,3", "--out", "g.graph"], &dir);
    let out = run(&["markov", "g.graph", "--crosscheck-k-max", "6.283185307179586"], &dir);
    assert!(out.status.success());
    let report = json(&out);
    assert_eq!(report["size"], 12);
    assert_eq!(report["crosscheck"]["matched"], true);
    assert_eq!(report["charpoly"]["num"].as_array().unwrap().len(), 13);
}

#[test]
fn zeta_runs_are_reproducible() {
    let dir = scratch("zeta");
    assert!(run(&["build", "--fig6", "--out", "pair"], &dir).status.success());
    let args = [
        "zeta",
        "pair-left.digraph",
        "pair-right.digraph",
        "--trials",
        "20",
        "--seed",
        "7",
    ];
    let one = run(&["--jobs", "1"].iter().chain(&args).copied().collect::<Vec<_>>(), &dir);
    let many = run(&["--jobs", "4"].iter().chain(&args).copied().collect::<Vec<_>>(), &dir);
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
    let verdict = json(&one);
    assert_eq!(verdict["verdict"], "equivalent-with-bound");
    assert_eq!(verdict["seed"], 7);

    // the seed is mandatory
    assert_eq!(run(&args[..5], &dir).status.code(), Some(2));

    let iso = run(&["isomorphic", "pair-left.digraph", "pair-right.digraph"], &dir);
    assert_eq!(json(&iso)["isomorphic"], false);
    let same = run(&["isomorphic", "pair-left.digraph", "pair-left.digraph"], &dir);
    assert_eq!(json(&same)["isomorphic"], true);
}

#[test]
fn unbalanced_digraphs_are_distinguished() {
    let dir = scratch("unbalanced");
    let gear = [
        "build",
        "--lengths",
        "1,2,3",
        "--attach",
        "tail,head,tail",
        "--digraph",
        "outward",
    ];
    run(&[&gear[..], &["--out", "a.digraph"]].concat(), &dir);
    run(&[&gear[..], &["--dual", "--out", "b.digraph"]].concat(), &dir);
    let out = run(&["zeta", "a.digraph", "b.digraph", "--seed", "1"], &dir);
    assert_eq!(out.status.code(), Some(4));
    let verdict = json(&out);
    assert_eq!(verdict["verdict"], "distinguished");
    assert!(verdict["distinguishing_point"].is_object());
}

#[test]
fn zeta_conjugator_checks_the_builtin_pair() {
    let out = run(&["zeta-conjugator"], &std::env::temp_dir());
    assert!(out.status.success());
    let report = json(&out);
    assert_eq!(report["eta_residual_entries"], 0);
    assert_eq!(report["det_matches_formula"], true);
}
