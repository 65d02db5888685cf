//! Data-parallel map with a sequential fallback.
//!
//! With the `parallel` feature the map runs on rayon; `NU_DIRAC_THREADS`
//! caps the worker count and `0` forces serial execution. Without the
//! feature every map is serial. Output order always matches input order.

use serde::{Deserialize, Serialize};

pub const THREADS_ENV: &str = "NU_DIRAC_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExecMode {
    Serial,
    /// Parallel with an optional worker cap.
    Parallel {
        threads: Option<usize>,
    },
}

impl ExecMode {
    /// Mode from `NU_DIRAC_THREADS`: unset → parallel, `0` → serial,
    /// `k` → parallel with at most k workers. Unparseable values are ignored.
    pub fn from_env() -> Self {
        match std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()) {
            Some(0) => ExecMode::Serial,
            Some(k) => ExecMode::Parallel { threads: Some(k) },
            None => ExecMode::Parallel { threads: None },
        }
    }

    pub fn is_parallel_available() -> bool {
        cfg!(feature = "parallel")
    }
}

impl Default for ExecMode {
    fn default() -> Self {
        ExecMode::from_env()
    }
}

pub fn map<T, R, F>(mode: ExecMode, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match mode {
        ExecMode::Serial => items.iter().map(f).collect(),
        ExecMode::Parallel { threads } => parallel_map(threads, items, f),
    }
}

#[cfg(feature = "parallel")]
fn parallel_map<T, R, F>(threads: Option<usize>, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    match threads {
        None => items.par_iter().map(f).collect(),
        Some(k) => match rayon::ThreadPoolBuilder::new().num_threads(k).build() {
            Ok(pool) => pool.install(|| items.par_iter().map(f).collect()),
            Err(_) => items.iter().map(f).collect(),
        },
    }
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<T, R, F>(_threads: Option<usize>, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.iter().map(f).collect()
}
