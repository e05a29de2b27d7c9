use crate::rng::{Seeds, StreamRng};
use rayon::prelude::*;

const CHUNK: u64 = 1024;

/// Fold `step` over replicates `0..n` in fixed chunks, merging chunk
/// accumulators left to right.
pub fn replicate_fold<A, I, F, M>(seeds: Seeds, n: u64, init: I, step: F, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync,
    F: Fn(&mut A, u64, &mut StreamRng) + Sync,
    M: Fn(A, A) -> A,
{
    let chunks = n.div_ceil(CHUNK);
    let parts: Vec<A> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut acc = init();
            for i in c * CHUNK..((c + 1) * CHUNK).min(n) {
                let mut rng = seeds.stream(i);
                step(&mut acc, i, &mut rng);
            }
            acc
        })
        .collect();
    parts.into_iter().fold(init(), merge)
}

/// One value per replicate, in replicate order.
pub fn replicate_map<T, F>(seeds: Seeds, n: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, &mut StreamRng) -> T + Sync,
{
    (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = seeds.stream(i);
            f(i, &mut rng)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn independent_of_pool_size() {
        let run = |threads| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            pool.install(|| {
                replicate_fold(
                    Seeds::new(9),
                    5000,
                    || 0.0f64,
                    |acc, _, rng| *acc += rng.random::<f64>(),
                    |a, b| a + b,
                )
            })
        };
        let one = run(1);
        assert_eq!(one.to_bits(), run(3).to_bits());
        let v1 = replicate_map(Seeds::new(2), 100, |i, rng| (i, rng.random::<u32>()));
        assert_eq!(v1[7].0, 7);
    }
}
