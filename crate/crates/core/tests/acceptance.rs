//! Runs acceptance criteria 1 to 8 in order, each against its time limit, and
//! prints one PASS/FAIL line per criterion.

use std::time::{Duration, Instant};

use hilbtaut::suites::{self, Check};
use hilbtaut::Result;

struct Criterion {
    id: usize,
    name: &'static str,
    limit: Duration,
    run: fn() -> Result<Vec<Check>>,
}

const SEED: u64 = 20_240_601;

fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { id: 1, name: "chi cross-formula consistency", limit: Duration::from_secs(5), run: || {
            let checks = suites::chi_cross_formulas(SEED, 25)?;
            Ok(checks.into_iter().take(1).collect())
        } },
        Criterion { id: 2, name: "symmetric powers of sections on P2", limit: Duration::from_secs(1), run: || {
            Ok(vec![suites::p2_section_equalities()?])
        } },
        Criterion { id: 3, name: "kernel equals graded", limit: Duration::from_secs(60), run: || {
            Ok(suites::kernel_vs_graded(None)?.into_iter().filter(|c| c.required).collect())
        } },
        Criterion { id: 4, name: "Toeplitz nondegeneracy", limit: Duration::from_secs(2), run: suites::toeplitz_battery },
        Criterion { id: 5, name: "representation dimensions", limit: Duration::from_secs(2), run: suites::representation_dims },
        Criterion { id: 6, name: "symbolic identities", limit: Duration::from_secs(5), run: || suites::symbolic_identities(SEED) },
        Criterion { id: 7, name: "symmetrization and wedge maps", limit: Duration::from_secs(10), run: suites::appendix_map },
        Criterion { id: 8, name: "combinatorics oracle", limit: Duration::from_secs(10), run: suites::combinatorics_oracle },
    ]
}

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for c in criteria() {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let (ok, detail) = match &outcome {
            Err(e) => (false, format!("error: {e}")),
            Ok(checks) => {
                let cases: usize = checks.iter().map(|k| k.cases).sum();
                let bad: Vec<String> =
                    checks.iter().filter(|k| !k.passed).map(|k| format!("{}: {}", k.name, k.detail)).collect();
                (bad.is_empty(), if bad.is_empty() { format!("{cases} cases") } else { bad.join("; ") })
            }
        };
        let in_time = elapsed <= c.limit;
        let status = if ok && in_time { "PASS" } else { "FAIL" };
        let time_note = if in_time { String::new() } else { format!(", over the {:?} limit", c.limit) };
        println!("{status} criterion {}: {} ({detail}, {:.2?}{time_note})", c.id, c.name, elapsed);
        if !(ok && in_time) {
            failed.push(c.id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
