//! Deterministic fan-out for independent candidate evaluations.
//!
//! Results land in index order, so reductions (argmax with smallest-index
//! ties) are identical however many workers run.

use std::sync::atomic::{AtomicUsize, Ordering};

static THREADS: AtomicUsize = AtomicUsize::new(1);

/// Set the worker count used by candidate scans. One means sequential.
pub fn set_thread_count(threads: usize) {
    THREADS.store(threads.max(1), Ordering::Relaxed);
}

pub fn thread_count() -> usize {
    THREADS.load(Ordering::Relaxed)
}

/// Evaluate `f(0..count)` and collect the values in index order.
pub fn map_indexed<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let threads = thread_count().min(count.max(1));
    if threads <= 1 || count < 2 {
        return (0..count).map(f).collect();
    }
    let next = AtomicUsize::new(0);
    let mut slots: Vec<Option<T>> = (0..count).map(|_| None).collect();
    let slot_ptr = slots.as_mut_ptr() as usize;
    std::thread::scope(|scope| {
        for _ in 0..threads {
            let next = &next;
            let f = &f;
            scope.spawn(move || loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= count {
                    break;
                }
                let value = f(i);
                // Each index is claimed exactly once, so the slot write is
                // exclusive.
                unsafe {
                    let base = slot_ptr as *mut Option<T>;
                    *base.add(i) = Some(value);
                }
            });
        }
    });
    slots.into_iter().map(|s| s.expect("every index evaluated")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_matches_sequential() {
        set_thread_count(4);
        let par = map_indexed(37, |i| i * i);
        set_thread_count(1);
        let seq = map_indexed(37, |i| i * i);
        assert_eq!(par, seq);
    }
}
