//! Worker pool and seeded cell sampling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Result;

/// Runs independent jobs on `workers` threads, or inline when `workers == 1`.
/// Results always come back in input order.
pub struct Exec {
    pool: Option<rayon::ThreadPool>,
}

impl Exec {
    pub fn new(workers: usize) -> Result<Self> {
        let pool = if workers > 1 { Some(rayon::ThreadPoolBuilder::new().num_threads(workers).build()?) } else { None };
        Ok(Exec { pool })
    }

    pub fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match &self.pool {
            None => items.iter().map(f).collect(),
            Some(pool) => pool.install(|| items.par_iter().map(f).collect()),
        }
    }
}

/// Which indices of a cell `0..space` get visited.
#[derive(Clone, Debug)]
pub enum Selection {
    All(u64),
    Sample(Vec<u64>),
}

impl Selection {
    /// Exhaustive when `budget` is 0 or covers the cell, otherwise `budget`
    /// distinct indices drawn from the cell's own stream, in increasing order.
    pub fn choose(space: u64, budget: u64, seed: u64, key: &[u64]) -> Self {
        if budget == 0 || budget >= space {
            return Selection::All(space);
        }
        let mut rng = cell_rng(seed, key);
        let mut picked: Vec<u64> =
            rand::seq::index::sample(&mut rng, space as usize, budget as usize).into_iter().map(|i| i as u64).collect();
        picked.sort_unstable();
        Selection::Sample(picked)
    }

    pub fn len(&self) -> u64 {
        match self {
            Selection::All(n) => *n,
            Selection::Sample(v) => v.len() as u64,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_exhaustive(&self) -> bool {
        matches!(self, Selection::All(_))
    }

    pub fn get(&self, pos: u64) -> u64 {
        match self {
            Selection::All(_) => pos,
            Selection::Sample(v) => v[pos as usize],
        }
    }

    /// Position ranges of at most `size` entries.
    pub fn chunks(&self, size: u64) -> Vec<(u64, u64)> {
        let n = self.len();
        (0..n.div_ceil(size)).map(|i| (i * size, ((i + 1) * size).min(n))).collect()
    }
}

/// A generator keyed by the campaign seed and the cell coordinates, so each
/// cell's draws are independent of how many other cells exist.
pub fn cell_rng(seed: u64, key: &[u64]) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(key.iter().fold(0xcbf2_9ce4_8422_2325u64, |h, &k| splitmix(h ^ k)));
    rng
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selection_rules() {
        assert!(Selection::choose(10, 0, 1, &[1]).is_exhaustive());
        assert!(Selection::choose(10, 10, 1, &[1]).is_exhaustive());
        let s = Selection::choose(1_000_000, 100, 7, &[1, 2]);
        assert_eq!(s.len(), 100);
        let Selection::Sample(v) = &s else { panic!() };
        assert!(v.windows(2).all(|w| w[0] < w[1]));
        let again = Selection::choose(1_000_000, 100, 7, &[1, 2]);
        assert_eq!(s.get(17), again.get(17));
        let other = Selection::choose(1_000_000, 100, 7, &[1, 3]);
        assert_ne!(s.get(17), other.get(17));
    }

    #[test]
    fn chunks_cover() {
        let s = Selection::All(10);
        assert_eq!(s.chunks(4), vec![(0, 4), (4, 8), (8, 10)]);
        assert!(Selection::All(0).chunks(4).is_empty());
    }

    #[test]
    fn pool_preserves_order() {
        let items: Vec<u64> = (0..1000).collect();
        let serial = Exec::new(1).unwrap().map(&items, |x| x * x);
        let parallel = Exec::new(8).unwrap().map(&items, |x| x * x);
        assert_eq!(serial, parallel);
    }
}
