//! One line per acceptance criterion. Criteria listed in
//! `KNOWN_UNATTAINABLE` are reported but do not fail the run.

use std::io::Write;

use skein_core::selftest::{run_one, Corpus, ALL, KNOWN_UNATTAINABLE};

#[test]
fn acceptance() {
    let corpus = Corpus::load(&Corpus::default_dir()).expect("shipped corpus loads");
    let mut unexpected = Vec::new();
    // Written to the stdout handle so the lines show without --nocapture.
    let mut out = std::io::stdout().lock();
    writeln!(out).unwrap();
    for id in ALL {
        let r = run_one(&corpus, id, 0);
        let note = if r.known_unattainable() {
            " (known unattainable)"
        } else {
            ""
        };
        writeln!(out, "{}{}", r, note).unwrap();
        if !r.passed && !r.known_unattainable() {
            unexpected.push(r.id);
        }
        if r.passed && r.known_unattainable() {
            writeln!(
                out,
                "criterion {:>2} now passes; drop it from the known list",
                r.id
            )
            .unwrap();
        }
    }
    assert!(KNOWN_UNATTAINABLE.iter().all(|i| ALL.contains(i)));
    assert!(unexpected.is_empty(), "failing criteria: {:?}", unexpected);
}
