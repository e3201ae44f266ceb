use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{rat, Rat};

/// Independent deterministic stream per `(seed, stream)`.
pub(crate) fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub(crate) fn int_vec(rng: &mut impl Rng, len: usize, bound: i64) -> Vec<i64> {
    (0..len).map(|_| rng.gen_range(-bound..=bound)).collect()
}

pub(crate) fn nonzero_int_vec(rng: &mut impl Rng, len: usize, bound: i64) -> Vec<i64> {
    loop {
        let v = int_vec(rng, len, bound);
        if v.iter().any(|&x| x != 0) {
            return v;
        }
    }
}

pub(crate) fn to_rat(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| rat(x)).collect()
}
