//! Reporting helpers for the acceptance run in `tests/acceptance.rs`.

use std::time::{Duration, Instant};

/// Outcome of one criterion.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "{} [{:>3}] {} ({:.2} s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

/// Time `f` and wrap its `(passed, detail)` into an [`Outcome`]. Errors count
/// as failures.
pub fn criterion<E: std::fmt::Display>(
    id: &'static str,
    title: &'static str,
    f: impl FnOnce() -> Result<(bool, String), E>,
) -> Outcome {
    let start = Instant::now();
    let (passed, detail) = match f() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    Outcome {
        id,
        title,
        passed,
        detail,
        elapsed: start.elapsed(),
    }
}

/// `a, 2a, 4a, …, b`.
pub fn dyadic(a: usize, b: usize) -> Vec<usize> {
    std::iter::successors(Some(a), |&n| Some(2 * n)).take_while(|&n| n <= b).collect()
}
