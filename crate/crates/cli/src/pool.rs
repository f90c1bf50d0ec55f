//! Static fan-out for parameter sweeps, capped by SIPW_THREADS (0 = serial).

/// Worker count: available parallelism capped by SIPW_THREADS.
pub fn worker_count() -> usize {
    let available = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    match std::env::var("SIPW_THREADS") {
        Err(_) => available,
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(0) | Err(_) => 1,
            Ok(cap) => cap.min(available),
        },
    }
}

/// Map `f` over `0..n`, fanning out across contiguous chunks; results come
/// back in input order regardless of completion order.
pub fn par_map<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let workers = worker_count().min(n.max(1));
    if workers <= 1 {
        return (0..n).map(&f).collect();
    }
    let chunk = n.div_ceil(workers);
    let mut pieces: Vec<Vec<T>> = Vec::with_capacity(workers);
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let f = &f;
                scope.spawn(move || {
                    (w * chunk..((w + 1) * chunk).min(n))
                        .map(f)
                        .collect::<Vec<T>>()
                })
            })
            .collect();
        for handle in handles {
            pieces.push(handle.join().expect("sweep worker panicked"));
        }
    });
    pieces.into_iter().flatten().collect()
}
