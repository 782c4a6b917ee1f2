use std::path::PathBuf;

use garside_ybe::cli::{run, PurityDoc, QuotientDoc, ReverseDoc, WordEqDoc};
use garside_ybe::format::{parse_presentation, parse_solution, SolutionDoc};
use garside_ybe::{examples, presentation_of, GarsideReport, ValidationReport, Word};

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.extend(["..", "..", "data", name]);
    p.to_string_lossy().into_owned()
}

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("garside-ybe").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn scratch_file(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("garside-ybe-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn data_files_match_reference_solutions() {
    let read = |n: &str| std::fs::read_to_string(data(n)).unwrap();
    assert_eq!(parse_solution(&read("example1.sol")).unwrap().solution(), examples::example1());
    assert_eq!(parse_solution(&read("example2.sol")).unwrap().solution(), examples::example2());
    assert_eq!(
        parse_solution(&read("quotient.sol")).unwrap().as_permutation(),
        Some(examples::quotient_example())
    );
    assert_eq!(
        parse_presentation(&read("example2.pres")).unwrap(),
        presentation_of(&examples::example2())
    );
}

#[test]
fn garside_on_example2() {
    let (code, out, _) = call(&["garside", &data("example2.sol")]);
    assert_eq!(code, 0);
    assert!(out.contains("delta: x1 x1 x1\n"));
    assert!(out.contains("simples: 8\n"));
    assert!(out.contains("exponent: 1\n"));
    assert!(out.contains("delta_pure: true\n"));
    let (code, json, _) = call(&["--format", "machine", "garside", &data("example2.sol")]);
    assert_eq!(code, 0);
    let r: GarsideReport = serde_json::from_str(&json).unwrap();
    assert_eq!(r.exponent, 1);
    assert_eq!(serde_json::to_string_pretty(&r).unwrap() + "\n", json);
}

#[test]
fn reverse_example1() {
    let f = data("example1.sol");
    let (code, out, _) = call(&["reverse", &f, "-u", "x4 x4", "-v", "x1 x1"]);
    assert_eq!(code, 0);
    assert_eq!(out, "u\\v: x3 x3\nv\\u: x2 x2\n");
    let (_, out, _) = call(&["reverse", &f, "-u", "x4 x4", "-v", "x1 x1", "--diagram"]);
    assert!(out.contains("→x1"));
    assert!(out.contains("↓x4"));
    let (_, json, _) = call(&["reverse", &f, "-u", "4 4", "-v", "1 1", "--format", "machine", "--diagram"]);
    let doc: ReverseDoc = serde_json::from_str(&json).unwrap();
    assert_eq!(doc.u_under_v, Word::from_one_based(&[3, 3]));
    assert!(doc.grid.is_some());
}

#[test]
fn word_equality_and_lcm() {
    let f = data("example1.sol");
    assert_eq!(call(&["wordeq", &f, "x2 x5", "x2 x5"]), (0, "true\n".into(), String::new()));
    assert_eq!(call(&["wordeq", &f, "x1 x1 x1 x1", "x4 x4 x4 x4"]).1, "true\n");
    assert_eq!(call(&["wordeq", &f, "x1 x5", "x5 x2"]).1, "false\n");
    let (_, json, _) = call(&["wordeq", &f, "x1", "x2", "--format", "machine"]);
    assert_eq!(serde_json::from_str::<WordEqDoc>(&json).unwrap(), WordEqDoc { equal: false });
    assert_eq!(call(&["lcm", &f, "x1", "x2"]).1, "x1 x1\n");
}

#[test]
fn validate_and_present() {
    let (code, out, _) = call(&["validate", &data("example1.sol"), "--require-involutive"]);
    assert_eq!(code, 0);
    assert!(out.contains("braided: true"));
    let (code, json, _) = call(&["validate", &data("quotient.sol"), "--require-involutive", "--format", "machine"]);
    assert_eq!(code, 1);
    let r: ValidationReport = serde_json::from_str(&json).unwrap();
    assert!(!r.involutive && r.braided);
    assert_eq!(call(&["validate", &data("quotient.sol")]).0, 0);

    let (_, out, _) = call(&["present", &data("example1.sol")]);
    assert_eq!(out.lines().count(), 11);
    assert_eq!(parse_presentation(&out).unwrap(), presentation_of(&examples::example1()));
    let (_, json, _) = call(&["present", &data("example1.sol"), "--format", "machine"]);
    assert_eq!(parse_presentation(&json).unwrap(), presentation_of(&examples::example1()));
}

#[test]
fn converse_output_is_a_solution_file() {
    let (code, out, _) = call(&["converse", &data("example2.pres")]);
    assert_eq!(code, 0);
    assert_eq!(parse_solution(&out).unwrap().solution(), examples::example2());
    let (_, json, _) = call(&["converse", &data("example2.pres"), "--format", "machine"]);
    let doc: SolutionDoc = serde_json::from_str(&json).unwrap();
    assert_eq!(doc.to_spec().unwrap().solution(), examples::example2());
    let dup = scratch_file("dup.pres", "n = 2\nx1 x2 = x2 x1\nx1 x2 = x1 x1\n");
    let (code, _, err) = call(&["converse", &dup]);
    assert_eq!(code, 1);
    assert!(err.contains("condition (4)"));
}

#[test]
fn quotient_and_purity() {
    let (code, out, _) = call(&["quotient", &data("quotient.sol")]);
    assert_eq!(code, 0);
    assert!(out.contains("# relation [x1] [x1] = [x2] [x2]\n"));
    assert!(out.contains("# witness x1 x4 = x3 x4\n"));
    let q = parse_solution(&out).unwrap().as_permutation().unwrap();
    assert!(q.is_involutive() && q.n() == 3);
    let (_, json, _) = call(&["quotient", &data("quotient.sol"), "--format", "machine"]);
    let doc: QuotientDoc = serde_json::from_str(&json).unwrap();
    assert_eq!(doc.classes, vec![vec![1, 3], vec![2, 4], vec![5]]);

    let (_, json, _) = call(&["purity", &data("example1.sol"), "--format", "machine"]);
    let doc: PurityDoc = serde_json::from_str(&json).unwrap();
    assert!(!doc.delta_pure);
    assert_eq!(doc.orbits, vec![vec![1, 2, 3, 4], vec![5]]);
}

#[test]
fn enumerate_is_deterministic() {
    let a = call(&["enumerate", "-n", "3", "--census"]);
    let b = call(&["enumerate", "-n", "3", "--census"]);
    assert_eq!(a, b);
    assert_eq!(a.0, 0);
    assert_eq!(a.1.lines().count(), 6);
    let (_, json, _) = call(&["enumerate", "-n", "2", "--format", "machine"]);
    let docs: Vec<SolutionDoc> = serde_json::from_str(&json).unwrap();
    assert_eq!(docs.len(), 2);
    assert_eq!(call(&["enumerate", "-n", "9"]).0, 2);
}

#[test]
fn input_errors_exit_with_two() {
    let (code, _, err) = call(&["validate", "/nonexistent/file.sol"]);
    assert_eq!(code, 2);
    assert!(err.contains("cannot read"));
    let bad = scratch_file("bad.sol", "n = 2\ng1 = 1 2\ng2 = 2 2\n");
    let (code, _, err) = call(&["validate", &bad]);
    assert_eq!(code, 2);
    assert!(err.contains("bad.sol:3:8: "), "{err}");
    assert_eq!(call(&["reverse", &data("example1.sol"), "-u", "x9", "-v", "x1"]).0, 2);
    assert_eq!(call(&["no-such-command"]).0, 2);
    assert_eq!(call(&["--help"]).0, 0);
}

#[test]
fn non_garside_input_is_rejected() {
    let (code, _, err) = call(&["garside", &data("quotient.sol")]);
    assert_eq!(code, 1);
    assert!(err.contains("precondition"));
}
