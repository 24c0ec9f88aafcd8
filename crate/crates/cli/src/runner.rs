use std::num::NonZeroUsize;
use std::thread;

use unruh_pair_core::sweep::Runner;

/// Environment variable capping the worker count; 0 or unset means one
/// worker per available core.
pub const THREADS_ENV: &str = "UNRUH_PAIR_THREADS";

/// Splits the index range into contiguous blocks, one per worker. Each
/// value depends only on its index, so the output is identical for every
/// worker count.
#[derive(Debug, Clone, Copy)]
pub struct ThreadRunner {
    workers: usize,
}

impl ThreadRunner {
    pub fn new(workers: usize) -> Self {
        ThreadRunner {
            workers: workers.max(1),
        }
    }

    pub fn from_env() -> Self {
        let requested = std::env::var(THREADS_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok())
            .unwrap_or(0);
        if requested > 0 {
            return Self::new(requested);
        }
        Self::new(thread::available_parallelism().map_or(1, NonZeroUsize::get))
    }

    pub fn workers(&self) -> usize {
        self.workers
    }
}

impl Runner for ThreadRunner {
    fn map<T, F>(&self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync,
    {
        if self.workers == 1 || n < 2 {
            return (0..n).map(f).collect();
        }
        let block = n.div_ceil(self.workers);
        let f = &f;
        thread::scope(|s| {
            let handles: Vec<_> = (0..n)
                .step_by(block)
                .map(|start| {
                    s.spawn(move || (start..(start + block).min(n)).map(f).collect::<Vec<T>>())
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("sweep worker panicked"))
                .collect()
        })
    }
}
