//! Seeded randomness. Every stochastic routine takes a seed and, where work is
//! split across trials, a stream index, so results do not depend on scheduling.

use num::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::Rational;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream `stream` derived from `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Integer-valued rational in [-height, height].
pub fn small_int<R: Rng>(r: &mut R, height: i64) -> Rational {
    Rational::from_integer(BigInt::from(r.gen_range(-height..=height)))
}

pub fn small_int_vec<R: Rng>(r: &mut R, len: usize, height: i64) -> Vec<Rational> {
    (0..len).map(|_| small_int(r, height)).collect()
}

/// Rational with numerator in [-height, height] and denominator in [1, height].
pub fn small_rational<R: Rng>(r: &mut R, height: i64) -> Rational {
    let n = r.gen_range(-height..=height);
    let d = r.gen_range(1..=height.max(1));
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn small_rational_vec<R: Rng>(r: &mut R, len: usize, height: i64) -> Vec<Rational> {
    (0..len).map(|_| small_rational(r, height)).collect()
}

pub fn fq_vec<R: Rng>(r: &mut R, len: usize, q: u64) -> Vec<u64> {
    (0..len).map(|_| r.gen_range(0..q)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: Vec<u64> = fq_vec(&mut stream_rng(7, 3), 5, 1000);
        let b: Vec<u64> = fq_vec(&mut stream_rng(7, 3), 5, 1000);
        let c: Vec<u64> = fq_vec(&mut stream_rng(7, 4), 5, 1000);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
