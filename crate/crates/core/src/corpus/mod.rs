//! Seeded sample generators. All randomness comes from ChaCha8 seeded with a
//! `u64`, and integers are drawn with `gen_range`, so a seed names the same
//! sample on every platform.

mod components;
mod cone;

pub use components::{
    component_corpus, glue_pair_corpus, random_moebius, ComponentSample, PairSample, Template,
};
pub use cone::{draw_cone_cubics, run_corpus, ConeSample, CorpusConfig, CorpusReport, Rejections};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{rat, Rational};

pub(crate) fn draw_int(rng: &mut ChaCha8Rng, height: u32) -> i64 {
    let h = i64::from(height);
    rng.gen_range(-h..=h)
}

pub(crate) fn draw_rational(rng: &mut ChaCha8Rng, height: u32) -> Rational {
    rat(draw_int(rng, height))
}

/// Exponent vectors of the monomials of degree `d` in `n` variables,
/// descending lexicographically.
pub fn monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![d]];
    }
    (0..=d)
        .rev()
        .flat_map(|first| {
            monomials(n - 1, d - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(4, 3).len(), 20);
        assert_eq!(monomials(3, 3).len(), 10);
        assert_eq!(monomials(3, 1), vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    }
}
