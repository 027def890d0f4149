use resglue::algebra::catalog::{boolean, godel, lukasiewicz, trivial};
use resglue::algebra::io::{from_text, to_text};
use resglue::algebra::morphism::are_isomorphic;
use resglue::algebra::FiniteRL;
use resglue::gl2::failing_triple;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn resglue(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_resglue"))
        .args(args)
        .env("RESGLUE_THREADS", "1")
        .output()
        .expect("binary runs")
}

fn save(dir: &Path, name: &str, a: &FiniteRL) -> String {
    let p: PathBuf = dir.join(name);
    std::fs::write(&p, to_text(a)).unwrap();
    p.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_trivial_algebra_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let f = save(dir.path(), "t.rl", &trivial());
    let o = resglue(&["verify", &f]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("valid: true"));
}

#[test]
fn verify_reports_a_broken_table() {
    let dir = tempfile::tempdir().unwrap();
    let text =
        to_text(&lukasiewicz(3)).replace("mul\n0 0 0\n0 0 1\n0 1 2", "mul\n0 0 0\n0 1 1\n0 1 2");
    let p = dir.path().join("bad.rl");
    std::fs::write(&p, text).unwrap();
    let o = resglue(&["verify", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("valid: false"));
}

#[test]
fn one_sum_of_two_chains_is_godel_three() {
    let dir = tempfile::tempdir().unwrap();
    let two = save(dir.path(), "two.rl", &boolean());
    let out = dir.path().join("g3.rl");
    let o = resglue(&[
        "--oracle",
        "glue",
        "--mode",
        "one-sum",
        &two,
        &two,
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let g = from_text(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert!(are_isomorphic(&g, &godel(3)).is_some());
}

#[test]
fn glued_algebra_goes_to_stdout_without_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let two = save(dir.path(), "two.rl", &boolean());
    let o = resglue(&["glue", "--mode", "one-sum", &two, &two]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(from_text(&stdout(&o)).unwrap().n(), 3);
}

#[test]
fn filter_gluing_needs_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let b = save(dir.path(), "b.rl", &godel(4));
    let c = save(dir.path(), "c.rl", &godel(3));
    assert_eq!(
        resglue(&["glue", "--mode", "f", &b, &c]).status.code(),
        Some(1)
    );
    let o = resglue(&["glue", "--mode", "f", &b, &c, "--filter", "#2=#1,#3=#2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(from_text(&stdout(&o)).unwrap().n(), 5);
}

#[test]
fn amalgamate_failing_triple_names_the_witness() {
    let dir = tempfile::tempdir().unwrap();
    let v = failing_triple();
    let a = save(dir.path(), "a.rl", &v.a);
    let b = save(dir.path(), "b.rl", &v.b);
    let c = save(dir.path(), "c.rl", &v.c);
    let o = resglue(&[
        "--format",
        "structured",
        "--oracle",
        "amalgamate",
        &a,
        &b,
        &c,
    ]);
    assert_eq!(o.status.code(), Some(1));
    let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(json["witness"], "a");
    assert_eq!(json["oracle_amalgam_found"], false);
}

#[test]
fn rotate_matches_its_gluing() {
    let dir = tempfile::tempdir().unwrap();
    let l3 = save(dir.path(), "l3.rl", &lukasiewicz(3));
    let o = resglue(&[
        "--oracle",
        "rotate",
        &l3,
        "--n",
        "4",
        "--nucleus",
        "identity",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(from_text(&stdout(&o)).unwrap().n(), 8);
    let o = resglue(&["rotate", &l3, "--nucleus", "x * y"]);
    assert_eq!(o.status.code(), Some(2), "two-variable terms are rejected");
}

#[test]
fn check_eq_reads_equation_files() {
    let dir = tempfile::tempdir().unwrap();
    let l3 = save(dir.path(), "l3.rl", &lukasiewicz(3));
    let eqs = dir.path().join("eq.txt");
    std::fs::write(&eqs, "x * y = y * x\nx ^ 2 = x ^ 3\n").unwrap();
    let o = resglue(&["check-eq", &l3, "--equations", eqs.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(
        resglue(&["check-eq", &l3, "--named", "gl2"]).status.code(),
        Some(0)
    );
    let l4 = save(dir.path(), "l4.rl", &lukasiewicz(4));
    let o = resglue(&["check-eq", &l4, "--named", "gl2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("fails"));
}

#[test]
fn filters_print_a_sorted_hasse_diagram() {
    let dir = tempfile::tempdir().unwrap();
    let g = save(dir.path(), "g.rl", &godel(3));
    let o = resglue(&["filters", &g]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lattice: Vec<&str> = text
        .lines()
        .skip_while(|l| *l != "lattice:")
        .skip(1)
        .take(3)
        .collect();
    assert_eq!(lattice[0], "{1}");
    assert!(lattice[1].starts_with("  {"));
    assert!(lattice[2].starts_with("    {0"));
}

#[test]
fn check_pair_and_quadruple_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let g = save(dir.path(), "g.rl", &godel(4));
    let l = save(dir.path(), "l.rl", &lukasiewicz(3));
    assert_eq!(
        resglue(&["check-pair", &g, "--filter", "2,3"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        resglue(&["check-pair", &l, "--filter", "#1,#2"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        resglue(&["check-pair", &l, "--filter", "#7"]).status.code(),
        Some(2)
    );
    assert_eq!(
        resglue(&["check-pair", &g, "--filter", "nine"])
            .status
            .code(),
        Some(2)
    );
    let o = resglue(&[
        "check-quadruple",
        &l,
        &l,
        "--filter",
        "2=2",
        "--ideal",
        "0=0",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn gl2_and_enumerate() {
    let dir = tempfile::tempdir().unwrap();
    let c = save(dir.path(), "c.rl", &failing_triple().c);
    let o = resglue(&["gl2", &c, "--seed", "a"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("closed form agrees: true"));
    let l = save(dir.path(), "l.rl", &lukasiewicz(4));
    assert_eq!(resglue(&["gl2", &l]).status.code(), Some(1));
    let o = resglue(&[
        "enumerate",
        "--max-size",
        "4",
        "--class",
        "gl2-chain",
        "--count-only",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("size 4: 4"));
}

#[test]
fn malformed_input_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("junk.rl");
    std::fs::write(&p, "n three\n").unwrap();
    assert_eq!(
        resglue(&["verify", p.to_str().unwrap()]).status.code(),
        Some(2)
    );
    assert_eq!(
        resglue(&["verify", "/does/not/exist.rl"]).status.code(),
        Some(2)
    );
    assert_eq!(resglue(&["no-such-command"]).status.code(), Some(2));
}
