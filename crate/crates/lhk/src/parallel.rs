//! The worker pool bounded by `LHK_THREADS`.

use crate::error::{CliError, CliResult};

pub const THREADS_VAR: &str = "LHK_THREADS";

/// Worker count from `LHK_THREADS`, defaulting to the available parallelism.
pub fn threads() -> CliResult<usize> {
    match std::env::var(THREADS_VAR) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(CliError::Invalid(format!("{THREADS_VAR} must be a positive integer, got {v:?}"))),
        },
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

/// Runs `f` on a pool of `n` workers.
pub fn with_threads<T: Send>(n: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(n).build().expect("thread pool").install(f)
}
