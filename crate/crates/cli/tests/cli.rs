use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polygraph")).args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_polygraph"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn catalog_prints_the_klein_bottle() {
    let o = run(&["catalog", "klein_bottle"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "gens: a b\nrule alpha: b a b -> a\n");
}

#[test]
fn homotopical_completion_of_the_klein_bottle() {
    let o = run(&["hc", "catalog:klein_bottle"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains(": b a a -> a a b"));
    assert_eq!(out.lines().filter(|l| l.starts_with("cell ")).count(), 2);
    // the output reads back in
    let o = run_stdin(&["check", "-"], &out);
    assert_eq!(stdout(&o), "polygraph: 2 generators, 2 rules, 2 cells\n");
}

#[test]
fn reduce_after_completion() {
    let hc = stdout(&run(&["hc", "catalog:klein_bottle"]));
    let o = run_stdin(&["reduce", "-"], &hc);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "gens: a b\nrule alpha: b a b -> a\n");
}

#[test]
fn branchings_of_the_cube() {
    let o = run(&["branchings", "catalog:free_abelian_presentation:3"]);
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 1);
    assert!(out.contains("on cba") && out.ends_with("joins\n"));
    let dot = stdout(&run(&["--format", "dot", "branchings", "catalog:free_abelian_presentation:3"]));
    assert_eq!(dot.lines().filter(|l| l.contains("->")).count(), 6);
}

#[test]
fn triples_flag() {
    let o = run(&["branchings", "--triples", "catalog:klein_bottle"]);
    assert_eq!(stdout(&o), "bababab {alpha@0, alpha@2, alpha@4}\n");
}

#[test]
fn garside_presentations() {
    let gar3 = stdout(&run(&["gar3", "catalog:braid_simple_datum:3"]));
    assert_eq!(gar3.lines().filter(|l| l.starts_with("rule ")).count(), 6);
    assert_eq!(gar3.lines().filter(|l| l.starts_with("cell[A] ")).count(), 2);
    let ugar2 = stdout(&run(&["ugar2", "catalog:free_abelian_datum:2"]));
    assert!(ugar2.contains("e1 e12 -> e12 e1"));
    let gar2 = stdout(&run(&["gar2", "catalog:atilde2_datum"]));
    assert_eq!(gar2.lines().filter(|l| l.starts_with("rule ")).count(), 27);
    let ugar3 = run(&["ugar3", "catalog:free_abelian_datum:2"]);
    assert!(ugar3.status.success());
}

#[test]
fn reduce_gar3_matches_counts() {
    let out = stdout(&run(&["reduce-gar3", "catalog:free_abelian_datum:3"]));
    assert_eq!(out.lines().filter(|l| l.starts_with("rule ")).count(), 12);
    assert_eq!(out.lines().filter(|l| l.starts_with("cell")).count(), 6);
}

#[test]
fn normalize_words() {
    let out = stdout(&run(&["normalize", "catalog:braid_simple_datum:3", "s1 s2 s1 s1"]));
    assert_eq!(out, "s1s2s1|s1\n");
    let out = stdout(&run(&["normalize", "catalog:klein_bottle", "babab", "--strategy", "rightmost"]));
    assert_eq!(out, "baa\n# babab -> baa\n");
}

#[test]
fn completion_respects_the_order_flag() {
    let out = stdout(&run(&["--order", "deglex:b,a", "complete", "catalog:klein_bottle"]));
    assert!(out.contains("rule kb1: a a b -> b a a"));
    let o = run(&["--order", "frob", "complete", "catalog:klein_bottle"]);
    assert_eq!(o.status.code(), Some(1));
    // the budget also covers normalization steps
    let o = run(&["--budget", "1", "complete", "catalog:free_abelian_datum:2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget of 1"));
    assert!(run(&["--budget", "1000", "complete", "catalog:free_abelian_datum:2"]).status.success());
}

#[test]
fn datum_completion_uses_divlex() {
    let out = stdout(&run(&["complete", "catalog:free_abelian_datum:2"]));
    assert_eq!(out.lines().filter(|l| l.starts_with("rule ")).count(), 4);
}

#[test]
fn render_emits_dot() {
    let hc = stdout(&run(&["hc", "catalog:klein_bottle"]));
    let o = run_stdin(&["render", "-"], &hc);
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph \"polygraph\" {"));
    assert!(dot.contains("label=\"babab\""));
}

#[test]
fn exit_codes() {
    let o = run_stdin(&["check", "-"], "gens: a\nfrob\n");
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2, column 1"));
    let o = run_stdin(&["check", "-"], "gens: a\nrule r: a -> a\n");
    assert_eq!(o.status.code(), Some(1));
    let invertible = "elems: 1 a b\na * a = _\na * b = 1\nb * a = 1\nb * b = _\n";
    let o = run_stdin(&["check", "-"], invertible);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no_invertibles: 2 violation(s)"));
    let o = run_stdin(&["gar2", "-"], invertible);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["catalog", "nothing"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["check", "/no/such/file"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_is_byte_stable() {
    let a = run(&["ugar3", "catalog:braid_simple_datum:3"]);
    let b = run(&["ugar3", "catalog:braid_simple_datum:3"]);
    assert_eq!(a.stdout, b.stdout);
}
