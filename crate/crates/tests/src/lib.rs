//! Reporting helpers for the acceptance suite.

use std::io::Write;
use std::time::{Duration, Instant};

/// Writes one result line straight to stdout, bypassing libtest capture.
pub fn report(criterion: u32, pass: bool, detail: &str, elapsed: Duration) {
    let line = format!(
        "criterion {:>2}: {}  {} [{:.2} s]\n",
        criterion,
        if pass { "PASS" } else { "FAIL" },
        detail,
        elapsed.as_secs_f64()
    );
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(line.as_bytes());
    let _ = out.flush();
}

pub fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}
