//! The bound-verification suite. Pass a directory to also write
//! `report.csv`, `summary.txt` and the per-run traces.

use std::path::PathBuf;

use vikit::harness::{default_suite, run_suite, SuiteOptions, DEFAULT_SEED};

fn main() -> vikit::Result<()> {
    let experiments = default_suite(DEFAULT_SEED, SuiteOptions::default())?;
    let report = run_suite(&experiments, DEFAULT_SEED);
    if let Some(dir) = std::env::args().nth(1).map(PathBuf::from) {
        report.write_to(&dir)?;
    }
    print!("{}", report.summary());
    Ok(())
}
