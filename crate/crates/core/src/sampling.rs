//! Seeded enumeration of index triples for window sweeps.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// All index triples i ≤ j ≤ k when there are at most `samples`, otherwise a seeded sample.
pub fn triples(n: usize, samples: usize, seed: u64) -> Vec<(usize, usize, usize)> {
    let total = n * (n + 1) * (n + 2) / 6;
    if total <= samples {
        let mut out = Vec::with_capacity(total);
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    out.push((i, j, k));
                }
            }
        }
        return out;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<(usize, usize, usize)> = (0..samples)
        .map(|_| {
            let mut t = [rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)];
            t.shuffle(&mut rng);
            t.sort();
            (t[0], t[1], t[2])
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// All ordered triples when there are at most `samples`, otherwise a seeded sample.
pub fn ordered_triples(n: usize, samples: usize, seed: u64) -> Vec<(usize, usize, usize)> {
    if n * n * n <= samples {
        let mut out = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    out.push((i, j, k));
                }
            }
        }
        return out;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<(usize, usize, usize)> =
        (0..samples).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))).collect();
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_when_small() {
        assert_eq!(triples(3, 100, 0).len(), 10);
        assert_eq!(ordered_triples(3, 100, 0).len(), 27);
    }

    #[test]
    fn seeded_samples_repeat() {
        assert_eq!(triples(50, 200, 7), triples(50, 200, 7));
        assert_eq!(ordered_triples(50, 200, 7), ordered_triples(50, 200, 7));
        assert_ne!(triples(50, 200, 7), triples(50, 200, 8));
    }
}
