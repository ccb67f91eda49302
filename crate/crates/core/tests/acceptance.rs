//! The acceptance gate: runs the full criterion list and prints one
//! pass/fail line per criterion (visible with `--nocapture`).

use qident_core::suite::run_acceptance;

#[test]
fn acceptance_criteria() {
    let results = run_acceptance();
    for result in &results {
        println!("{}", result.line());
    }
    assert_eq!(results.len(), 12);
    let failed: Vec<String> = results
        .iter()
        .filter(|r| !r.passed)
        .map(|r| r.line())
        .collect();
    assert!(
        failed.is_empty(),
        "failed acceptance criteria:\n{}",
        failed.join("\n")
    );
}
