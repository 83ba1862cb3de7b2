//! Runs every acceptance criterion and prints one PASS/FAIL line for each.
//! Exits with status 1 if any criterion fails.

use extremal_criteria::criteria;

fn main() {
    let verdicts: Vec<_> = criteria()
        .iter()
        .map(|c| {
            let v = c.evaluate();
            println!("{v}");
            v
        })
        .collect();
    let passed = verdicts.iter().filter(|v| v.passed).count();
    println!("acceptance: {passed}/{} criteria pass", verdicts.len());
    if passed != verdicts.len() {
        std::process::exit(1);
    }
}
