use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use splitpoly::arrangement::{combinatorics, Arrangement};
use splitpoly::fixtures;
use splitpoly::io;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_splitpoly"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_arrangement(dir: &Path, name: &str, a: &Arrangement) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, io::arrangement_to_json(a)).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_paper_then_verify_its_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("published.json");
    let o = run(&["verify-paper", "--format", "json", "-o", s(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let certs = io::certificates_from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(certs.len(), 3);
    let wants = [fixtures::maclane_pair(), fixtures::falk_sturmfels_pair(), fixtures::rational_pair()];
    for (c, want) in certs.iter().zip(&wants) {
        assert!(fixtures::pair_match(c, want).is_some());
    }
    let o = run(&["verify", s(&out)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).matches(": ok").count(), 3);
}

#[test]
fn verify_fails_on_a_tampered_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("published.json");
    assert_eq!(code(&run(&["verify-paper", "--format", "json", "-o", s(&out)])), 0);
    let text = std::fs::read_to_string(&out).unwrap();
    // the rational pair's first published triangle line is 3x + 2y - 3z
    let tampered = text.replacen("\"-3\"", "\"-4\"", 1);
    assert_ne!(tampered, text);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, tampered).unwrap();
    let o = run(&["verify", s(&bad)]);
    assert_eq!(code(&o), 1, "{}", stdout(&o));
    assert!(stdout(&o).contains("FAILED"));
}

#[test]
fn delta_reports_eisenstein_class() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_arrangement(dir.path(), "ml.json", &fixtures::maclane_base());
    let o = run(&["delta", s(&a), "--support", "1,2,4", "--pivots", "3.4,3.5,2.5"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("degree  2"), "{text}");
    assert!(text.contains("irreducible, discriminant class -3"), "{text}");

    let psi = dir.path().join("psi.json");
    std::fs::write(&psi, io::plinth_to_json(&fixtures::maclane_psi1())).unwrap();
    let o = run(&["delta", s(&a), "--plinth", s(&psi), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["degree"], 2);
    assert_eq!(v["factorization"]["kind"], "irreducible");
    assert_eq!(v["factorization"]["discriminant_class"], "-3");
}

/// Ordered plinths by nested loops; the rotation and reflection groups act
/// freely on tuples of distinct lines, so quotient counts divide evenly.
fn ordered_plinths(a: &Arrangement, distinct: bool, skip: bool) -> usize {
    let c = combinatorics(a);
    let pts = c.points();
    let n = a.len();
    let mut count = 0;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if x == y || y == z || x == z {
                    continue;
                }
                let sup = [x, y, z];
                if skip && pts.iter().any(|p| sup.iter().all(|l| p.contains(l))) {
                    continue;
                }
                let off = |k: usize, i: usize| !pts[k].contains(&sup[i]) && !pts[k].contains(&sup[(i + 1) % 3]);
                for p in 0..pts.len() {
                    for q in 0..pts.len() {
                        for r in 0..pts.len() {
                            if !(off(p, 0) && off(q, 1) && off(r, 2)) {
                                continue;
                            }
                            if distinct && (p == q || q == r || p == r) {
                                continue;
                            }
                            count += 1;
                        }
                    }
                }
            }
        }
    }
    count
}

#[test]
fn plinth_counts_match_brute_force() {
    let dir = tempfile::tempdir().unwrap();
    let base = fixtures::maclane_base();
    let a = write_arrangement(dir.path(), "ml.json", &base);
    for (conv, div) in [("ordered", 1), ("cyclic", 3), ("dihedral", 6)] {
        for distinct in ["true", "false"] {
            for skip in ["true", "false"] {
                let o = run(&[
                    "plinths",
                    s(&a),
                    "--format",
                    "json",
                    "--convention",
                    conv,
                    "--pivots-distinct",
                    distinct,
                    "--skip-concurrent-supports",
                    skip,
                ]);
                assert_eq!(code(&o), 0);
                let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
                let want = ordered_plinths(&base, distinct == "true", skip == "true");
                assert_eq!(want % div, 0);
                assert_eq!(v["count"], want / div, "{conv} {distinct} {skip}");
            }
        }
    }
}

#[test]
fn polygons_rigidity_and_iso() {
    let dir = tempfile::tempdir().unwrap();
    let ext = write_arrangement(dir.path(), "fs.json", &fixtures::falk_sturmfels_extended());
    let o = run(&["polygons", s(&ext), "--support", "1,2,5", "--pivots", "5.7,4.10,4.8"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("splitting polygon 2"));
    assert!(text.contains("nonsplitting polygon"));

    let o = run(&["rigidity", s(&ext)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("tangent dimension 0"));

    let [p1, p2] = fixtures::maclane_pair();
    let a1 = write_arrangement(dir.path(), "a1.json", &p1);
    let a2 = write_arrangement(dir.path(), "a2.json", &p2);
    assert_eq!(code(&run(&["iso", s(&a1), s(&a2)])), 0);
    let small = write_arrangement(dir.path(), "small.json", &fixtures::maclane_base());
    assert_eq!(code(&run(&["iso", s(&a1), s(&small)])), 1);
}

#[test]
fn algo2_output_is_independent_of_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_arrangement(dir.path(), "rat.json", &fixtures::rational_base());
    let mut outs = Vec::new();
    for jobs in ["1", "3"] {
        let out = dir.path().join(format!("j{jobs}.json"));
        let o = run(&["--jobs", jobs, "algo2", s(&a), "--format", "json", "-o", s(&out)]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        outs.push(std::fs::read(&out).unwrap());
    }
    assert_eq!(outs[0], outs[1]);
    let certs = io::certificates_from_json(std::str::from_utf8(&outs[0]).unwrap()).unwrap();
    assert!(certs.iter().any(|c| fixtures::pair_match(c, &fixtures::rational_pair()).is_some()));
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"field\": {\"kind\": \"rational\"},\n \"lines\": [[\"1\", \"0\", \"0\"],\n [\"0\", \"0\", \"0\"]]}").unwrap();
    let o = run(&["rigidity", s(&bad)]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("all coefficients zero") && err.contains("line 3"), "{err}");
    assert_eq!(code(&run(&["rigidity", "/nonexistent/file.json"])), 2);
    assert_eq!(code(&run(&["plinths"])), 2);
    assert_eq!(code(&run(&["--jobs", "0", "verify-paper"])), 2);
}
