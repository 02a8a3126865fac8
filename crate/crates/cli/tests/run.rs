use tropval_cli::{run, EXIT_PASS, EXIT_USAGE};

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn help_and_usage_errors() {
    let help = run(["tropval", "--help"]);
    assert_eq!(help.code, EXIT_PASS);
    assert!(help.stdout.contains("graded-check"));
    assert_eq!(run(["tropval"]).code, EXIT_USAGE);
    assert_eq!(run(["tropval", "val-check"]).code, EXIT_USAGE);
    let bad = run([
        "tropval",
        "trop-check",
        "--ideal",
        &fixture("line.ideal"),
        "--mode",
        "sometimes",
    ]);
    assert_eq!(bad.code, EXIT_USAGE);
    assert!(bad.stdout.is_empty());
}

#[test]
fn result_block_is_fenced() {
    let out = run([
        "tropval",
        "trop-check",
        "--ideal",
        &fixture("line.ideal"),
        "--weight",
        "0 0",
    ]);
    assert_eq!(out.code, EXIT_PASS);
    let inside: Vec<&str> = out
        .stdout
        .lines()
        .skip_while(|l| *l != "BEGIN-RESULT")
        .skip(1)
        .take_while(|l| *l != "END-RESULT")
        .collect();
    assert!(inside.contains(&"verdict: monomial-free"));
    assert!(inside.iter().all(|l| l.contains(": ")));
}

#[test]
fn file_weights_are_the_default() {
    let out = run(["tropval", "trop-check", "--ideal", &fixture("twisted_cubic.ideal")]);
    assert!(out.stdout.contains("weight: (1 2 3)"), "{}", out.stdout);
}
