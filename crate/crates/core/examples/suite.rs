//! Run the acceptance batteries and print one line per criterion.

use mslab::suite::{run_suite, SuiteConfig};

fn main() -> mslab::Result<()> {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(42);
    let report = run_suite(&SuiteConfig {
        seed,
        timing: true,
        ..SuiteConfig::default()
    })?;
    for (k, r) in report.criteria.iter().enumerate() {
        println!(
            "{:>2} {:<16} {:?} {:>5} ms",
            k + 1,
            r.check,
            r.verdict,
            r.elapsed_ms.unwrap_or(0)
        );
    }
    Ok(())
}
