//! End-to-end tests of the `relgenus` binary: golden output lines, exit
//! codes, format stability, and the cache/bundle flows.

use std::path::Path;
use std::process::Command;

/// A command with the cache environment scrubbed, so tests never pick up a
/// cache file from the developer's shell.
fn relgenus() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_relgenus"));
    cmd.env_remove("RELGENUS_CACHE");
    cmd
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = relgenus().args(args).output().expect("binary runs");
    (
        out.status.code().expect("no signal"),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

fn first_line(s: &str) -> &str {
    s.lines().next().unwrap_or("")
}

#[test]
fn golden_check_obstructed() {
    let (code, stdout, _) = run(&["check", "--knot", "braid(2; 1 1 1)", "--manifold", "K3"]);
    assert_eq!(code, 0, "an OBSTRUCTED verdict is a successful run");
    assert_eq!(first_line(&stdout), "OBSTRUCTED (arf_spin)");
    assert!(stdout.contains("problem: braid(2; 1 1 1) in K3, class 0, genus 0 (smooth category)"));
    assert!(stdout.contains("arf_spin: obstructed — Arf(K) = 1 ≠ 0"));
}

#[test]
fn golden_check_consistent() {
    let (code, stdout, _) = run(&["check", "--knot", "unknot", "--manifold", "S4"]);
    assert_eq!(code, 0);
    assert_eq!(first_line(&stdout), "CONSISTENT");
    assert!(stdout.contains("provenance: curated: unknot"));
}

#[test]
fn golden_dv() {
    let (code, stdout, _) = run(&[
        "dv", "--knot-name", "K_DV", "--b2w", "21", "--sigmaw", "16", "--manifold", "K3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "OBSTRUCTED (donald_vafaee: 43 < 45)\n");

    // A general spin filling loses the 2-handlebody boost but still obstructs.
    let (_, stdout, _) = run(&[
        "dv", "--knot-name", "K", "--b2w", "21", "--sigmaw", "16", "--manifold", "K3",
        "--general-filling",
    ]);
    assert_eq!(stdout, "OBSTRUCTED (donald_vafaee: 43 < 44)\n");

    // A big enough filling satisfies the inequality.
    let (code, stdout, _) = run(&[
        "dv", "--knot-name", "K", "--b2w", "23", "--sigmaw", "16", "--manifold", "K3",
    ]);
    assert_eq!(code, 0, "a consistent run still exits 0");
    assert_eq!(stdout, "CONSISTENT (donald_vafaee: 45 ≥ 45)\n");
}

#[test]
fn golden_bf() {
    let (code, stdout, _) = run(&[
        "bf", "--knot-name", "X", "--manifold", "K3 # mCP2", "--host", "K3 # mCP2",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("OBSTRUCTED (bauer_furuta: mK bounds a disk with square 0 ≥ 0"));

    // Same intersection form, but the standard manifold fails the gauge gate.
    let (code, stdout, _) = run(&[
        "bf", "--knot-name", "X", "--manifold", "3CP2 # 20mCP2", "--host", "K3 # mCP2",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("NOT APPLICABLE (bauer_furuta: target 3CP2 # 20mCP2 fails the gate"));
}

#[test]
fn golden_scan() {
    let (code, stdout, _) =
        run(&["scan", "--knot", "T(2,5)", "--manifold", "CP2", "--box", "1"]);
    assert_eq!(code, 0);
    assert_eq!(
        stdout,
        "scan: T(2,5) in CP2 — box |ξᵢ| ≤ 1, genus ≤ 0, moduli ≤ 16\n\
         classes: 2 (after sign reduction)\n\
         class 0 genus 0: OBSTRUCTED (signature_window, rokhlin_divisible)\n\
         class 1 genus 0: OBSTRUCTED (arf_characteristic_disk)\n\
         extension class 2 genus 0: OBSTRUCTED (rokhlin_divisible)\n\
         extension class 3 genus 0: OBSTRUCTED (rokhlin_divisible)\n\
         completeness: complete proof — every class with |d| > 3 violates the divisibility bound (quadratic growth), and all smaller classes are ruled out above\n\
         summary: no class at all admits an unobstructed surface at genus ≤ 0 (box exhausted, divisibility bound covers |d| > 3)\n"
    );
}

#[test]
fn certified_sliceable_via_whitehead_certificate() {
    let (code, stdout, _) = run(&[
        "check", "--knot", "unknot", "--manifold", "S2xS2", "--genus", "2",
        "--whitehead", "S2xS2,1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(first_line(&stdout), "CERTIFIED SLICEABLE (whitehead_double)");
}

#[test]
fn upper_bound_listing() {
    let (code, stdout, _) = run(&["upper", "--knot", "T(2,3)", "--unknotting", "1"]);
    assert_eq!(code, 0);
    assert_eq!(first_line(&stdout), "upper bounds for T(2,3):");
    assert!(stdout.contains("norman_suzuki: genus ≤ 0 in CP2 # mCP2"));
    assert!(stdout.contains("norman_suzuki: genus ≤ 0 in S2xS2"));
    assert!(stdout.contains("k3_unknotting: genus ≤ 0 in K3 — unknotting number 1 ≤ 2"));
    // Arf(T(2,3)) = 1, so the stabilization certificate must not appear.
    assert!(!stdout.contains("schneiderman"));
}

#[test]
fn records_format_is_stable() {
    let (code, stdout, _) = run(&[
        "check", "--knot", "T(2,5)", "--manifold", "CP2", "--class", "1", "--genus", "1",
        "--format", "records",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[0], "problem\tT(2,5)\tCP2\t1\t1\tsmooth");
    assert_eq!(lines[1], "provenance\tcurated: torus knot closed forms");
    assert_eq!(lines[2], "summary\tconsistent\t");
    assert!(lines[3].starts_with("rule\tarf_spin\tfalse\tnot applicable\tnot applicable: "));
    // one record per rule, in ledger order, plus certificates at the end
    assert_eq!(lines.iter().filter(|l| l.starts_with("rule\t")).count(), 10);
    assert!(lines.iter().any(|l| l.starts_with("cert\tnorman_suzuki\t")));
}

#[test]
fn topological_category_suppresses_smooth_rules() {
    let (code, stdout, _) = run(&[
        "check", "--knot", "braid(2; 1 1 1)", "--manifold", "K3", "--topological",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("(topological category)"));
    assert!(stdout.contains("suppressed: problem posed in the topological category"));
    // The topological rules still run: Arf obstructs either way.
    assert_eq!(first_line(&stdout), "OBSTRUCTED (arf_spin)");
}

#[test]
fn disabling_a_rule_removes_it_from_the_verdict() {
    let (code, stdout, _) = run(&[
        "check", "--knot", "braid(2; 1 1 1)", "--manifold", "K3", "--disable", "arf_spin",
    ]);
    assert_eq!(code, 0);
    assert_eq!(first_line(&stdout), "OBSTRUCTED (arf_characteristic_disk)");

    let (code, _, stderr) = run(&[
        "check", "--knot", "unknot", "--manifold", "S4", "--disable", "no_such_rule",
    ]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown rule \"no_such_rule\""));
}

#[test]
fn input_errors_exit_2() {
    let cases: &[&[&str]] = &[
        &["check", "--knot", "braid(2; 1 x)", "--manifold", "K3"],
        &["check", "--knot", "unknot", "--manifold", "Q5"],
        &["check", "--knot", "unknot", "--manifold", "CP2", "--class", "1,0"],
        &["check", "--knot", "unknot"], // no manifold given
        &["check", "--knot", "T(2,4)", "--manifold", "K3"], // even torus parameter
        &["scan", "--knot", "unknot", "--manifold", "K3", "--box", "1", "--class-cap", "5"],
        &["scan", "--knot", "unknot", "--manifold", "CP2", "--box", "1", "--max-modulus", "1"],
        &["upper", "--knot", "unknot", "--twist", "1,2"], // malformed triple
        &["upper", "--knot", "unknot", "--whitehead", "Q5,1"], // unknown host
    ];
    for args in cases {
        let (code, _, stderr) = run(args);
        assert_eq!(code, 2, "expected exit 2 for {args:?}");
        assert!(stderr.starts_with("error: "), "stderr for {args:?}: {stderr}");
    }

    // clap's own argument errors (conflicting flags) also exit 2
    let (code, _, _) = run(&[
        "check", "--knot", "unknot", "--manifold", "S4", "--manifold-file", "m.txt",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn cache_and_bundle_flows() {
    let dir = tempfile::tempdir().expect("tempdir");
    let bundle = dir.path().join("bundle.tsv");
    let cache = dir.path().join("cache.tsv");
    std::fs::write(
        &bundle,
        "MyKnot\tdeterminant\t9\tlab notebook\n\
         MyKnot\tarf\t0\tlab notebook\n\
         MyKnot\tsignature\t-4\tlab notebook\n\
         MyKnot\tgenus4_lower\t2\tlab notebook\n",
    )
    .unwrap();

    // import via the env-var cache path
    let out = relgenus()
        .args(["invariants", "import", "--file"])
        .arg(&bundle)
        .env("RELGENUS_CACHE", &cache)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(cache.exists());

    // the overlay shows up in list (flag form this time) alongside built-ins
    let (code, stdout, _) = run_with_cache(&["invariants", "list"], &cache);
    assert_eq!(code, 0);
    assert!(stdout.contains("MyKnot\tlab notebook"));
    assert!(stdout.contains("T(2,5)\tcurated: torus knot closed forms"));

    // show round-trips the store line format
    let (code, stdout, _) = run_with_cache(&["invariants", "show", "--knot", "MyKnot"], &cache);
    assert_eq!(code, 0);
    assert_eq!(
        stdout,
        "MyKnot\tdeterminant\t9\tlab notebook\n\
         MyKnot\tarf\t0\tlab notebook\n\
         MyKnot\tsignature\t-4\tlab notebook\n\
         MyKnot\tgenus4_lower\t2\tlab notebook\n"
    );

    // a cached knot resolves by name, with provenance echoed in the report
    let (code, stdout, _) =
        run_with_cache(&["check", "--knot", "MyKnot", "--manifold", "K3"], &cache);
    assert_eq!(code, 0);
    assert!(stdout.contains("provenance: lab notebook"));

    // an unknown name still fails cleanly
    let (code, _, stderr) = run_with_cache(&["check", "--knot", "NoSuch", "--manifold", "K3"], &cache);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown name"));
}

fn run_with_cache(args: &[&str], cache: &Path) -> (i32, String, String) {
    let mut cmd = relgenus();
    cmd.args(args).arg("--cache").arg(cache);
    let out = cmd.output().expect("binary runs");
    (
        out.status.code().expect("no signal"),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

#[test]
fn bundle_overrides_win_and_warn() {
    let dir = tempfile::tempdir().expect("tempdir");
    let bundle = dir.path().join("t25.tsv");
    std::fs::write(
        &bundle,
        "T(2,5)\tdeterminant\t13\tpaper X\n\
         T(2,5)\tarf\t1\tpaper X\n\
         T(2,5)\tsignature\t-4\tpaper X\n\
         T(2,5)\tgenus4_lower\t2\tpaper X\n\
         T(2,5)\tgenus4_upper\t3\tpaper X\n",
    )
    .unwrap();

    let out = relgenus()
        .args(["check", "--knot", "T(2,5)", "--manifold", "K3", "--bundle"])
        .arg(&bundle)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("warning: bundle overrides determinant: computed 5, bundle 13"));
    assert!(stderr.contains("warning: bundle overrides g₄ upper bound: computed 2, bundle 3"));
    // provenance records both sources
    assert!(stdout.contains("provenance: curated: torus knot closed forms; bundle: "));
    assert!(stdout.contains("(paper X)"));

    // an inconsistent bundle is rejected by validation
    let bad = dir.path().join("bad.tsv");
    std::fs::write(
        &bad,
        "T(2,5)\tdeterminant\t9\tpaper X\n\
         T(2,5)\tarf\t1\tpaper X\n\
         T(2,5)\tsignature\t-4\tpaper X\n\
         T(2,5)\tgenus4_lower\t2\tpaper X\n",
    )
    .unwrap();
    let out = relgenus()
        .args(["check", "--knot", "T(2,5)", "--manifold", "K3", "--bundle"])
        .arg(&bad)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("arf"));
}

#[test]
fn manifold_file_input() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("manifold.txt");
    std::fs::write(
        &path,
        "name E8pairing\n\
         b2_plus 1\n\
         b2_minus 1\n\
         spin true\n\
         form 0 1\n\
         form 1 0\n",
    )
    .unwrap();
    let out = relgenus()
        .args(["check", "--knot", "braid(2; 1 1 1)", "--manifold-file"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(first_line(&stdout), "OBSTRUCTED (arf_spin)");
    assert!(stdout.contains("in E8pairing, class 0"));

    // a malformed file reports its line number
    std::fs::write(&path, "name X\nb2_plus 1\nwhatever 3\n").unwrap();
    let out = relgenus()
        .args(["check", "--knot", "unknot", "--manifold-file"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}
