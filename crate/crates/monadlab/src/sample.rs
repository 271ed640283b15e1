//! Deterministic seeded sampling. Every sampled check records its seed and
//! sample count so reports replay bit-for-bit.

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A seeded random source.
pub struct Rng {
    inner: ChaCha8Rng,
    pub seed: u64,
}

impl Rng {
    pub fn seeded(seed: u64) -> Self {
        Rng { inner: ChaCha8Rng::seed_from_u64(seed), seed }
    }

    /// Uniform index below `n` (requires `n > 0`).
    pub fn below(&mut self, n: usize) -> usize {
        self.inner.gen_range(0..n)
    }

    /// Choose a reference from a nonempty slice.
    pub fn choose<'a, T>(&mut self, xs: &'a [T]) -> &'a T {
        &xs[self.below(xs.len())]
    }

    /// Up to `k` distinct indices below `n`, in increasing order.
    pub fn distinct_indices(&mut self, n: usize, k: usize) -> Vec<usize> {
        let k = k.min(n);
        let mut picked: Vec<usize> = Vec::with_capacity(k);
        while picked.len() < k {
            let i = self.below(n);
            if !picked.contains(&i) {
                picked.push(i);
            }
        }
        picked.sort_unstable();
        picked
    }
}

/// Iterate over all `len`-tuples of indices below `n` when their number does
/// not exceed `cap`; otherwise yield `samples` seeded random tuples.
/// Returns the tuples and whether the enumeration was exhaustive.
pub fn index_tuples(
    n: usize,
    len: usize,
    cap: usize,
    samples: usize,
    rng: &mut Rng,
) -> (Vec<Vec<usize>>, bool) {
    let total = (n as u128).checked_pow(len as u32);
    match total {
        Some(t) if t <= cap as u128 => {
            let mut out = Vec::with_capacity(t as usize);
            let mut tuple = vec![0usize; len];
            if n == 0 && len > 0 {
                return (out, true);
            }
            loop {
                out.push(tuple.clone());
                let mut i = len;
                loop {
                    if i == 0 {
                        return (out, true);
                    }
                    i -= 1;
                    tuple[i] += 1;
                    if tuple[i] < n {
                        break;
                    }
                    tuple[i] = 0;
                }
            }
        }
        _ => {
            let mut out = Vec::with_capacity(samples);
            for _ in 0..samples {
                out.push((0..len).map(|_| rng.below(n)).collect());
            }
            (out, false)
        }
    }
}
