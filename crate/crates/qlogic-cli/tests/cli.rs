//! End-to-end command tests against the compiled binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qlogic"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn eval_reproduces_the_three_semantics_on_the_superposition() {
    let scn = fixture("superposition.scn");
    let scn = scn.to_str().unwrap();
    assert_eq!(
        stdout_of(&["eval", scn, "P1 ^ P2", "--semantics", "partial"]),
        "P1 ^ P2 = T\n"
    );
    assert_eq!(
        stdout_of(&["eval", scn, "P1", "--semantics", "partial"]),
        "P1 = GAP\n"
    );
    assert_eq!(
        stdout_of(&["eval", scn, "P1 & P2", "--semantics", "bvn-tf"]),
        "P1 & P2 = T\n"
    );
    assert_eq!(
        stdout_of(&["eval", scn, "P1 & P2", "--semantics", "bvn-lattice"]),
        "P1 & P2 = F\n"
    );
    assert_eq!(
        stdout_of(&["eval", scn, "P1", "--semantics", "three"]),
        "P1 = U\n"
    );
    assert_eq!(
        stdout_of(&[
            "eval",
            scn,
            "P1 & P2",
            "--semantics",
            "three",
            "--variant",
            "bochvar"
        ]),
        "P1 & P2 = U\n"
    );
}

#[test]
fn exit_codes_follow_the_contract() {
    let scn = fixture("superposition.scn");
    let scn = scn.to_str().unwrap();
    // 2: formula parse error.
    let out = run(&["eval", scn, "P1 &&", "--semantics", "partial"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("syntax error"));
    // 3: unreadable scenario.
    let out = run(&["eval", "/nonexistent.scn", "P1"]);
    assert_eq!(out.status.code(), Some(3));
    // 3: invalid config contents.
    let bad = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(bad.path(), "slit.half_width = 5\n").unwrap();
    let out = run(&["eval", bad.path().to_str().unwrap(), "P1"]);
    assert_eq!(out.status.code(), Some(3));
    // 3: atom not bound by the scenario.
    let out = run(&["eval", scn, "NOPE"]);
    assert_eq!(out.status.code(), Some(3));
    // 4: numerical guard (wrap-around at an absurd evolution time).
    let out = run(&[
        "interference",
        scn,
        "500",
        "--out",
        "/tmp/qlogic-wrap-test.csv",
    ]);
    assert_eq!(out.status.code(), Some(4));
    // 0 on success.
    let out = run(&["eval", scn, "P1"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn table_matches_eval_cell_by_cell() {
    let scn = fixture("superposition.scn");
    let scn = scn.to_str().unwrap();
    let formulas = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(formulas.path(), "P1\nP2\nP1 ^ P2\n!Q | (P1 & P2)\n").unwrap();
    let table = stdout_of(&["table", scn, formulas.path().to_str().unwrap()]);
    let mut lines = table.lines();
    assert_eq!(
        lines.next().unwrap(),
        "formula\tthree\tbvn-tf\tbvn-lattice\tpartial"
    );
    for row in lines {
        let cells: Vec<&str> = row.split('\t').collect();
        assert_eq!(cells.len(), 5);
        let formula = cells[0];
        for (flag, cell) in [
            ("three", cells[1]),
            ("bvn-tf", cells[2]),
            ("bvn-lattice", cells[3]),
            ("partial", cells[4]),
        ] {
            let direct = stdout_of(&["eval", scn, formula, "--semantics", flag]);
            let value = direct.trim().rsplit(" = ").next().unwrap().to_string();
            assert_eq!(cell, value, "{formula} under {flag}");
        }
    }
}

#[test]
fn table_on_superposition_matches_expected_rows() {
    let scn = fixture("superposition.scn");
    let formulas = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(formulas.path(), "P1\nP1 ^ P2\n").unwrap();
    let table = stdout_of(&[
        "table",
        scn.to_str().unwrap(),
        formulas.path().to_str().unwrap(),
    ]);
    let lines: Vec<&str> = table.lines().collect();
    assert_eq!(lines[1], "P1\tU\tT\tT\tGAP");
    // Truth-functionally the exclusive disjunction is a contradiction on
    // the superposition (both atoms valuate to 1); the lattice reading
    // and the partial bivaluation keep it true.
    assert_eq!(lines[2], "P1 ^ P2\tU\tF\tT\tT");
}

#[test]
fn empty_formulas_file_prints_header_only_and_bad_lines_abort() {
    let scn = fixture("superposition.scn");
    let scn = scn.to_str().unwrap();
    let empty = tempfile::NamedTempFile::new().unwrap();
    let out = stdout_of(&["table", scn, empty.path().to_str().unwrap()]);
    assert_eq!(out, "formula\tthree\tbvn-tf\tbvn-lattice\tpartial\n");

    let bad = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(bad.path(), "P1\nP1 &&\n").unwrap();
    let res = run(&["table", scn, bad.path().to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&res.stderr).contains(":2:"));
}

#[test]
fn eigenstate_rows_agree_across_all_semantics() {
    let scn = fixture("eigenstate.scn");
    let formulas = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(formulas.path(), "P1\nP2\nP1 ^ P2\nP1 & P2\nP1 | P2\n!P1\n").unwrap();
    let table = stdout_of(&[
        "table",
        scn.to_str().unwrap(),
        formulas.path().to_str().unwrap(),
    ]);
    for row in table.lines().skip(1) {
        let cells: Vec<&str> = row.split('\t').collect();
        assert_eq!(cells[1], cells[2], "row {row}");
        assert_eq!(cells[2], cells[3], "row {row}");
        assert_eq!(cells[3], cells[4], "row {row}");
    }
}

#[test]
fn distributivity_verdicts() {
    let out = stdout_of(&[
        "distributivity",
        fixture("superposition.scn").to_str().unwrap(),
    ]);
    assert!(out.contains("verdict: NOT-EQUAL"), "{out}");
    let out = stdout_of(&[
        "distributivity",
        fixture("eigenstate.scn").to_str().unwrap(),
    ]);
    assert!(out.contains("verdict: EQUAL"), "{out}");
}

#[test]
fn wigner_reports() {
    let out = stdout_of(&["wigner", fixture("superposition.scn").to_str().unwrap()]);
    assert!(out.contains("FRIEND"), "{out}");
    assert!(out.contains("WIGNER"), "{out}");
    assert!(out.trim_end().ends_with("OIT=1 OIP=1"), "{out}");
    let out = stdout_of(&["wigner", fixture("eigenstate.scn").to_str().unwrap()]);
    assert!(out.trim_end().ends_with("OIT=1 OIP=0"), "{out}");
}

#[test]
fn wigner_oit_never_flips_with_the_seed() {
    let scn = fixture("superposition.scn");
    let scn = scn.to_str().unwrap();
    let mut seen_one = false;
    let mut seen_two = false;
    for seed in 0..24u64 {
        let out = stdout_of(&["wigner", scn, "--seed", &seed.to_string()]);
        assert!(
            out.trim_end().ends_with("OIT=1 OIP=1"),
            "seed {seed}: {out}"
        );
        // The friend's reported slit may differ per seed.
        if out.contains("  P1 = T") {
            seen_one = true;
        }
        if out.contains("  P2 = T") {
            seen_two = true;
        }
    }
    assert!(seen_one && seen_two, "both outcomes occur across seeds");
}

#[test]
fn interference_csv_shape_and_column_identity() {
    let scn = fixture("superposition.scn");
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("curve.csv");
    stdout_of(&[
        "interference",
        scn.to_str().unwrap(),
        "2.0",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    let text = std::fs::read_to_string(&out_path).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "x,intensity_no_detector,intensity_with_detector,cross_term"
    );
    let mut n = 0;
    let (mut sum_no, mut sum_with) = (0.0f64, 0.0f64);
    let mut max_identity_defect = 0.0f64;
    let mut prev_x = f64::NEG_INFINITY;
    let mut dx = 0.0;
    for line in lines {
        let vals: Vec<f64> = line.split(',').map(|v| v.parse().unwrap()).collect();
        assert_eq!(vals.len(), 4);
        if n == 1 {
            dx = vals[0] - prev_x;
        }
        assert!(vals[0] > prev_x);
        prev_x = vals[0];
        sum_no += vals[1];
        sum_with += vals[2];
        max_identity_defect = max_identity_defect.max((vals[1] - vals[2] - vals[3]).abs());
        n += 1;
    }
    assert_eq!(n, 1024);
    assert!((sum_no * dx - 1.0).abs() < 1e-9);
    assert!((sum_with * dx - 1.0).abs() < 1e-9);
    assert!(max_identity_defect < 1e-12);
}

#[test]
fn detector_column_is_bit_identical_under_a_phase_flip() {
    let dir = tempfile::tempdir().unwrap();
    let base_scn = dir.path().join("base.scn");
    let flip_scn = dir.path().join("flip.scn");
    std::fs::write(
        &base_scn,
        "grid.n_points = 1024\namp.c2_re = 0.7071067811865476\n",
    )
    .unwrap();
    std::fs::write(
        &flip_scn,
        "grid.n_points = 1024\namp.c2_re = -0.7071067811865476\n",
    )
    .unwrap();
    let base_csv = dir.path().join("base.csv");
    let flip_csv = dir.path().join("flip.csv");
    for (scn, csv) in [(&base_scn, &base_csv), (&flip_scn, &flip_csv)] {
        stdout_of(&[
            "interference",
            scn.to_str().unwrap(),
            "2.0",
            "--out",
            csv.to_str().unwrap(),
        ]);
    }
    let base = std::fs::read_to_string(&base_csv).unwrap();
    let flip = std::fs::read_to_string(&flip_csv).unwrap();
    let col = |text: &str, i: usize| -> Vec<String> {
        text.lines()
            .skip(1)
            .map(|l| l.split(',').nth(i).unwrap().to_string())
            .collect()
    };
    assert_eq!(
        col(&base, 2),
        col(&flip, 2),
        "detector column is phase-blind"
    );
    assert_ne!(col(&base, 1), col(&flip, 1), "bare column sees the phase");
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let scn = fixture("biased.scn");
    let scn = scn.to_str().unwrap();
    let formulas = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(formulas.path(), "P1\nP2\nP1 ^ P2\n").unwrap();
    let fpath = formulas.path().to_str().unwrap().to_string();
    for args in [
        vec!["wigner", scn],
        vec!["table", scn, fpath.as_str()],
        vec!["distributivity", scn],
        vec!["eval", scn, "P1 ^ P2"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.status.code(), b.status.code());
        assert_eq!(a.stdout, b.stdout, "args {args:?}");
    }
    let dir = tempfile::tempdir().unwrap();
    let (c1, c2) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    for path in [&c1, &c2] {
        stdout_of(&["interference", scn, "1.5", "--out", path.to_str().unwrap()]);
    }
    assert_eq!(
        std::fs::read(&c1).unwrap(),
        std::fs::read(&c2).unwrap(),
        "CSV bytes identical"
    );
}
