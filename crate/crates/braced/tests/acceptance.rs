//! One line per acceptance criterion; exits non-zero if any fails.

use std::io::Write;
use std::process::ExitCode;
use std::thread;

use braced::verify::{Verifier, BOTH, DEFAULT_SEED};

fn main() -> ExitCode {
    let jobs = thread::available_parallelism().map_or(1, usize::from);
    let v = Verifier::new(DEFAULT_SEED, jobs);
    let mut failed = 0;
    println!("running 10 acceptance criteria (seed {DEFAULT_SEED:#x}, {jobs} thread(s))");
    for c in 1..=10 {
        let r = v.run(c, &BOTH);
        println!("{r}");
        let _ = std::io::stdout().flush();
        failed += usize::from(!r.passed);
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
