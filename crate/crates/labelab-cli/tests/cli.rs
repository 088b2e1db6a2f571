//! End-to-end tests of the `labelab` binary: exit codes, witnesses and reports.

use std::fs;
use std::path::Path;
use std::process::Command;

use sha2::{Digest, Sha256};
use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(dir: &Path, args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_labelab"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

fn write(dir: &Path, name: &str, text: &str) {
    fs::write(dir.join(name), text).expect("write input");
}

/// Report lines other than the timing line.
fn stable_report(stderr: &str) -> Vec<&str> {
    stderr.lines().filter(|l| !l.starts_with("time:")).collect()
}

const FIVE_INTERVALS: &str = "intervals 5\n0: 5 20\n1: 27 43\n2: 50 65\n3: 70 80\n4: 12 58\n";
const STAR: &str = "graph undirected 5\n0 4\n1 4\n2 4\n";
const TWO_CYCLE: &str = "graph directed 2\n0 1\n1 0\n";

#[test]
fn interval_encoding_of_the_five_interval_model() {
    let t = TempDir::new().unwrap();
    let d = t.path();
    write(d, "m.intervals", FIVE_INTERVALS);
    write(d, "g.graph", STAR);
    let r = run(
        d,
        &[
            "encode",
            "--scheme",
            "interval",
            "--model",
            "m.intervals",
            "--out",
            "m.labels",
        ],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(
        r.stderr
            .contains("endpoint ranks: (1,3) (4,5) (6,8) (9,10) (2,7)"),
        "{}",
        r.stderr
    );
    let v = run(
        d,
        &[
            "verify", "--scheme", "interval", "--labels", "m.labels", "--graph", "g.graph",
        ],
    );
    assert_eq!(v.code, 0, "{}", v.stderr);
    // The decoded relation is the star plus the self-pairs every interval meets.
    let dec = run(
        d,
        &["decode", "--scheme", "interval", "--labels", "m.labels"],
    );
    assert_eq!(dec.code, 0);
    let edges: Vec<&str> = dec
        .stdout
        .lines()
        .skip(1)
        .filter(|l| {
            let mut it = l.split_whitespace();
            it.next() != it.next()
        })
        .collect();
    assert_eq!(edges, ["0 4", "1 4", "2 4"]);
}

#[test]
fn equality_search_on_the_two_cycle_emits_a_verifying_witness() {
    let t = TempDir::new().unwrap();
    let d = t.path();
    write(d, "c.graph", TWO_CYCLE);
    let r = run(
        d,
        &[
            "search", "--scheme", "equality", "--graph", "c.graph", "--out", "c.labels",
        ],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stderr.contains("witness: c.labels"));
    let v = run(
        d,
        &[
            "verify", "--scheme", "equality", "--labels", "c.labels", "--graph", "c.graph",
            "--scope", "all",
        ],
    );
    assert_eq!(v.code, 0, "{}", v.stderr);
}

#[test]
fn non_members_exit_one() {
    let t = TempDir::new().unwrap();
    let d = t.path();
    // Two vertices with out-neighbourhoods {1} and {0, 1}; the in-neighbourhood
    // {0, 1} of vertex 1 is neither, so the graph is not dichotomic.
    write(d, "g.graph", "graph directed 2 loops\n0 1\n1 0\n1 1\n");
    let r = run(d, &["search", "--scheme", "equality", "--graph", "g.graph"]);
    assert_eq!(r.code, 1, "{}", r.stderr);
    assert!(r.stderr.contains("non-member"));
    let e = run(
        d,
        &["encode", "--scheme", "dichotomic", "--graph", "g.graph"],
    );
    assert_eq!(e.code, 1, "{}", e.stderr);
}

#[test]
fn corrupted_labels_are_rejected() {
    let t = TempDir::new().unwrap();
    let d = t.path();
    write(d, "c.graph", TWO_CYCLE);
    assert_eq!(
        run(
            d,
            &["search", "--scheme", "equality", "--graph", "c.graph", "--out", "c.labels"]
        )
        .code,
        0
    );
    let good = fs::read_to_string(d.join("c.labels")).unwrap();
    // A value outside the universe, and a valid value that breaks an edge.
    for (i, replacement) in ["1: 9 9", "1: 1 1"].iter().enumerate() {
        let bad: String = good
            .lines()
            .map(|l| {
                if l.starts_with("1:") {
                    replacement.to_string()
                } else {
                    l.to_string()
                }
            })
            .map(|l| l + "\n")
            .collect();
        let name = format!("bad{i}.labels");
        write(d, &name, &bad);
        let v = run(
            d,
            &[
                "verify", "--scheme", "equality", "--labels", &name, "--graph", "c.graph",
            ],
        );
        assert_eq!(v.code, 1, "{replacement}: {}", v.stderr);
        assert!(v.stderr.contains("outcome: rejected"));
    }
}

#[test]
fn malformed_inputs_report_line_and_column() {
    let t = TempDir::new().unwrap();
    let d = t.path();
    write(d, "bad.graph", "graph undirected 3\n0 1\n1 x\n");
    let r = run(
        d,
        &["recognize", "--graph", "bad.graph", "--class", "forest"],
    );
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("bad.graph:3:3:"), "{}", r.stderr);
    write(d, "bad.labels", "labels bits 2 2\n0: 01\n1: 0x\n");
    write(d, "g.graph", "graph undirected 2\n");
    let r = run(
        d,
        &[
            "verify",
            "--scheme",
            "interval",
            "--labels",
            "bad.labels",
            "--graph",
            "g.graph",
        ],
    );
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("bad.labels:3:4:"), "{}", r.stderr);
    // Unknown names and missing files are usage errors too.
    assert_eq!(
        run(d, &["recognize", "--graph", "g.graph", "--class", "nope"]).code,
        2
    );
    assert_eq!(
        run(
            d,
            &["recognize", "--graph", "missing.graph", "--class", "all"]
        )
        .code,
        2
    );
    assert_eq!(run(d, &["search", "--graph", "g.graph"]).code, 2);
}

#[test]
fn exhausted_budgets_exit_three() {
    let t = TempDir::new().unwrap();
    let d = t.path();
    write(d, "g.graph", STAR);
    let r = run(
        d,
        &[
            "search",
            "--scheme",
            "lex",
            "--graph",
            "g.graph",
            "--max-nodes",
            "1",
        ],
    );
    assert_eq!(r.code, 3, "{}", r.stderr);
    assert!(r.stderr.contains("outcome: unknown"));
    assert!(r.stderr.contains("budget: max_nodes=1"));
    let r = run(
        d,
        &[
            "search",
            "--scheme",
            "lex",
            "--graph",
            "g.graph",
            "--max-vertices",
            "4",
        ],
    );
    assert_eq!(r.code, 3);
}

#[test]
fn results_do_not_depend_on_worker_count() {
    let t = TempDir::new().unwrap();
    let d = t.path();
    // A transitive tournament, represented by lexicographic order.
    let edges: String = (0..6)
        .flat_map(|u| (u + 1..6).map(move |v| format!("{v} {u}\n")))
        .collect();
    write(d, "g.graph", &format!("graph directed 6\n{edges}"));
    let one = run(
        d,
        &[
            "--workers",
            "1",
            "search",
            "--scheme",
            "lex",
            "--graph",
            "g.graph",
        ],
    );
    let four = run(
        d,
        &[
            "--workers",
            "4",
            "search",
            "--scheme",
            "lex",
            "--graph",
            "g.graph",
        ],
    );
    assert_eq!((one.code, four.code), (0, 0), "{}", one.stderr);
    assert_eq!(one.stdout, four.stdout);
    write(
        d,
        "u.graph",
        "graph undirected 5\n0 1\n1 2\n2 3\n3 4\n4 0\n0 2\n",
    );
    let one = run(
        d,
        &[
            "--workers",
            "1",
            "pointer-number",
            "--graph",
            "u.graph",
            "--mode",
            "and",
        ],
    );
    let four = run(
        d,
        &[
            "--workers",
            "4",
            "pointer-number",
            "--graph",
            "u.graph",
            "--mode",
            "and",
        ],
    );
    assert_eq!((one.code, four.code), (0, 0), "{}", one.stderr);
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn reports_are_deterministic_and_digest_inputs() {
    let t = TempDir::new().unwrap();
    let d = t.path();
    write(d, "c.graph", TWO_CYCLE);
    let a = run(d, &["search", "--scheme", "equality", "--graph", "c.graph"]);
    let b = run(d, &["search", "--scheme", "equality", "--graph", "c.graph"]);
    assert_eq!(stable_report(&a.stderr), stable_report(&b.stderr));
    assert_eq!(a.stdout, b.stdout);
    let digest = format!("{:x}", Sha256::digest(TWO_CYCLE.as_bytes()));
    assert!(
        a.stderr
            .contains(&format!("input: c.graph sha256={digest}")),
        "{}",
        a.stderr
    );
    assert!(a
        .stderr
        .starts_with("command: search --scheme equality --graph c.graph\n"));
    assert!(a.stderr.lines().last().unwrap().starts_with("time: "));
}

#[test]
fn pointer_witnesses_verify() {
    let t = TempDir::new().unwrap();
    let d = t.path();
    write(
        d,
        "p.graph",
        "graph undirected 5\n0 1\n1 2\n2 3\n3 4\n1 3\n",
    );
    // Unicyclic: one or-slot per vertex orients every edge. The and-pointer
    // number of a connected graph is its maximum degree.
    for (mode, slots) in [("or", "1"), ("and", "3")] {
        let out = format!("{mode}.ptr");
        let r = run(
            d,
            &[
                "pointer-number",
                "--graph",
                "p.graph",
                "--mode",
                mode,
                "--bijective",
                "--out",
                &out,
            ],
        );
        assert_eq!(r.code, 0, "{}", r.stderr);
        assert!(
            r.stderr.contains(&format!("detail: slots: {slots}")),
            "{mode}: {}",
            r.stderr
        );
        assert_eq!(
            run(d, &["verify", "--graph", "p.graph", "--pointer", &out]).code,
            0
        );
    }
    let r = run(
        d,
        &[
            "pointer-number",
            "--graph",
            "p.graph",
            "--mode",
            "or",
            "--bijective",
            "--k",
            "0",
        ],
    );
    assert_eq!(r.code, 1, "{}", r.stderr);
    for scheme in ["or-pointer", "twin"] {
        let out = format!("{scheme}.ptr");
        assert_eq!(
            run(
                d,
                &["encode", "--scheme", scheme, "--graph", "p.graph", "--out", &out]
            )
            .code,
            0
        );
        assert_eq!(
            run(d, &["verify", "--graph", "p.graph", "--pointer", &out]).code,
            0
        );
    }
}

#[test]
fn reduction_witnesses_verify() {
    let t = TempDir::new().unwrap();
    let d = t.path();
    write(d, "tp.graph", "graph directed 3\n0 1\n0 2\n1 2\n");
    let r = run(
        d,
        &[
            "reduce",
            "builtin",
            "--name",
            "lng-tcpaths",
            "--graph",
            "tp.graph",
            "--out",
            "r.sgrep",
        ],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(d.join("r.sgrep.host.graph").exists());
    // The host path inside the file resolves relative to the file, not the cwd.
    fs::create_dir(d.join("sub")).unwrap();
    assert_eq!(
        run(
            &d.join("sub"),
            &["verify", "--graph", "../tp.graph", "--rep", "../r.sgrep"]
        )
        .code,
        0
    );

    // P4 is self-complementary, so its complement is a forest witness.
    write(d, "p4.graph", "graph undirected 4\n0 1\n1 2\n2 3\n");
    let r = run(
        d,
        &[
            "reduce", "search", "--graph", "p4.graph", "--bf", "1:8", "--class", "forest", "--out",
            "w",
        ],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = run(
        d,
        &[
            "reduce",
            "verify",
            "--graph",
            "p4.graph",
            "--bf",
            "1:8",
            "--witness",
            "w/witness-1.graph",
        ],
    );
    assert_eq!(v.code, 0, "{}", v.stderr);
    let v = run(
        d,
        &[
            "reduce",
            "verify",
            "--graph",
            "p4.graph",
            "--bf",
            "1:4",
            "--witness",
            "w/witness-1.graph",
        ],
    );
    assert_eq!(v.code, 1);

    let r = run(
        d,
        &[
            "reduce", "search", "--graph", "tp.graph", "--bf", "1:4", "--host", "tp.graph",
            "--out", "s.sgrep",
        ],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(
        run(d, &["verify", "--graph", "tp.graph", "--rep", "s.sgrep"]).code,
        0
    );
}

#[test]
fn formula_and_polynomial_commands() {
    let t = TempDir::new().unwrap();
    let d = t.path();
    let r = run(
        d,
        &[
            "fo",
            "eval",
            "--formula",
            "x1 = y2",
            "--values",
            "1,0,0,1",
            "--n",
            "3",
        ],
    );
    assert_eq!((r.code, r.stdout.as_str()), (0, "true\n"));
    let r = run(
        d,
        &[
            "fo",
            "eval",
            "--formula",
            "x1 < y2",
            "--values",
            "1,0,0,1",
            "--n",
            "3",
        ],
    );
    assert_eq!((r.code, r.stdout.as_str()), (1, "false\n"));
    let r = run(d, &["fo", "qe", "--formula", "E z1 . (x1 < z1 & z1 < y1)"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(!r.stdout.contains("z1"));

    write(d, "n.labels", "labels num 3 2\n0: 0 1\n1: 2 2\n2: 3 0\n");
    write(d, "g.graph", "graph directed 3\n");
    let r = run(
        d,
        &[
            "fo",
            "normalize",
            "--formula",
            "(x1 + x2) < (y1 + c1)",
            "--n",
            "3",
            "--labels",
            "n.labels",
            "--out",
            "two.labels",
        ],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stderr.contains("normal form: x1 < y2"));

    assert_eq!(
        run(
            d,
            &["pbs", "builtin", "--name", "dot", "--k", "2", "--out", "dot.pbs"]
        )
        .code,
        0
    );
    let r = run(
        d,
        &["pbs", "eval", "--pbs", "dot.pbs", "--values", "1,1,1,0"],
    );
    assert_eq!((r.code, r.stdout.as_str()), (0, "true\n"));
    let r = run(
        d,
        &["pbs", "eval", "--pbs", "dot.pbs", "--values", "1/2,-3,2,1"],
    );
    assert_eq!((r.code, r.stdout.as_str()), (1, "false\n"));
    let r = run(
        d,
        &["pbs", "transform", "--pbs", "dot.pbs", "--out", "nat.pbs"],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(fs::read_to_string(d.join("nat.pbs"))
        .unwrap()
        .starts_with("pbs 16 "));
    let r = run(
        d,
        &[
            "pbs", "probe", "--pbs", "dot.pbs", "--n", "3", "--bound", "1",
        ],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
}

#[test]
fn enumeration_diagonal_and_props() {
    let t = TempDir::new().unwrap();
    let d = t.path();
    let r = run(d, &["enumerate", "--n", "4", "--canonical", "--count"]);
    assert_eq!(r.stdout, "11\n");
    let r = run(
        d,
        &["enumerate", "--n", "3", "--class", "forest", "--count"],
    );
    assert_eq!(r.stdout, "7\n");
    let r = run(
        d,
        &["enumerate", "--n", "2", "--directed", "--out-dir", "all"],
    );
    assert_eq!(r.code, 0);
    assert_eq!(fs::read_dir(d.join("all")).unwrap().count(), 4);

    let r = run(d, &["diag", "--prefix", "12", "--out-dir", "diag"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("n=2 decoder=0 c=0: non-member"));
    // Each diagonal graph is a non-member of the decoder it was built against.
    let s = run(
        d,
        &["search", "--scheme", "lex", "--graph", "diag/diag-2.graph"],
    );
    assert_eq!(s.code, 1, "{}", s.stderr);

    let r = run(d, &["props", "--criterion", "1"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert!(r.stdout.starts_with("PASS  1 "));
    assert_eq!(run(d, &["props", "--criterion", "99"]).code, 2);
}
