//! Worker-thread control.
//!
//! The library runs strictly single-threaded unless [`set_threads`] asks
//! for more. Work is always split into the same fixed chunks regardless
//! of the thread count, and chunk results are combined in chunk order, so
//! the output is bit-identical whether the chunks run serially or on a
//! pool.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Once;

static THREADS: AtomicUsize = AtomicUsize::new(1);
static POOL_INIT: Once = Once::new();

/// Samples per work chunk. Fixed so that chunk boundaries (and therefore
/// summation order) never depend on the thread count.
pub const SAMPLE_CHUNK: usize = 8;

/// Configure the number of worker threads (1 = strict serial, the default).
pub fn set_threads(n: usize) {
    let n = n.max(1);
    THREADS.store(n, Ordering::SeqCst);
    if n > 1 {
        POOL_INIT.call_once(|| {
            if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                log::warn!("thread pool already initialized: {e}");
            }
        });
    }
}

/// Current worker-thread setting.
pub fn threads() -> usize {
    THREADS.load(Ordering::SeqCst)
}

/// Run `op` over `0..n_chunks`, writing each result into its slot.
/// Serial when the thread setting is 1, otherwise on the rayon pool.
/// Either way slot `i` holds the result of chunk `i`.
pub fn run_chunks<T, F>(n_chunks: usize, op: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    if threads() <= 1 || n_chunks <= 1 {
        (0..n_chunks).map(op).collect()
    } else {
        use rayon::prelude::*;
        (0..n_chunks).into_par_iter().map(op).collect()
    }
}
