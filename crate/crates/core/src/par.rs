//! Optional data parallelism over independent output indices.
//!
//! The worker count comes from `TROPICALIS_THREADS`; unset or `0` means
//! sequential. Each index is computed by exactly one closure call, so the
//! result never depends on the schedule.

use std::thread;

pub const THREADS_ENV: &str = "TROPICALIS_THREADS";

pub fn thread_cap() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .unwrap_or(0)
}

/// `(0..n).map(f).collect()`, split across at most [`thread_cap`] threads.
pub fn map_indices<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    map_indices_with(thread_cap(), n, f)
}

pub fn map_indices_with<T, F>(threads: usize, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    if threads <= 1 || n < 2 * threads {
        return (0..n).map(f).collect();
    }
    let chunk = n.div_ceil(threads);
    let f = &f;
    thread::scope(|s| {
        let handles: Vec<_> = (0..n)
            .step_by(chunk)
            .map(|lo| {
                let hi = (lo + chunk).min(n);
                s.spawn(move || (lo..hi).map(f).collect::<Vec<T>>())
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}
