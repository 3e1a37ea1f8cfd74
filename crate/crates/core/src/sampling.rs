// SPDX-License-Identifier: Apache-2.0

//! Seeded random words, combinations and tree samples for property checks
//! and benchmarks.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{reduce, LinearCombination};
use crate::words::{AveragingWord, Bracket, BracketedWord, Factor, Letter};

/// A deterministic generator for `seed`.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random bracketed word of depth at most `max_depth` with at most
/// `max_breadth` factors at every level.
pub fn random_bracketed_word<R: Rng>(rng: &mut R, alphabet: &[Letter], max_depth: usize, max_breadth: usize) -> BracketedWord {
    assert!(!alphabet.is_empty() && max_breadth >= 1);
    let breadth = rng.gen_range(1..=max_breadth);
    let factors = (0..breadth)
        .map(|_| {
            if max_depth > 0 && rng.gen_bool(0.4) {
                let core = random_bracketed_word(rng, alphabet, max_depth - 1, max_breadth);
                Factor::Bracket(Bracket::new(core, 1))
            } else {
                Factor::Letter(alphabet[rng.gen_range(0..alphabet.len())].clone())
            }
        })
        .collect();
    BracketedWord::from_factors(factors).expect("breadth ≥ 1")
}

/// A random averaging word of depth at most `max_depth`: a random bracketed
/// word in normal form, redrawn until the normal form is shallow enough.
pub fn random_averaging_word<R: Rng>(rng: &mut R, alphabet: &[Letter], max_depth: usize, max_breadth: usize) -> AveragingWord {
    loop {
        let w = reduce(&random_bracketed_word(rng, alphabet, max_depth, max_breadth));
        if w.depth() <= max_depth {
            return w;
        }
    }
}

/// A combination of up to `max_terms` random words with nonzero integer
/// coefficients in `-3..=3`.
pub fn random_combination<R: Rng>(
    rng: &mut R,
    alphabet: &[Letter],
    max_depth: usize,
    max_breadth: usize,
    max_terms: usize,
) -> LinearCombination {
    let mut out = LinearCombination::zero();
    for _ in 0..rng.gen_range(1..=max_terms) {
        let c = loop {
            let c: i64 = rng.gen_range(-3..=3);
            if c != 0 {
                break c;
            }
        };
        let w = random_averaging_word(rng, alphabet, max_depth, max_breadth);
        out.add_term(w, BigRational::from_integer(BigInt::from(c)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_bounded() {
        let ab = [Letter::x(), Letter::new("y").unwrap()];
        let draw = |seed| {
            let mut rng = seeded(seed);
            (0..50).map(|_| random_averaging_word(&mut rng, &ab, 4, 3)).collect::<Vec<_>>()
        };
        let a = draw(7);
        assert_eq!(a, draw(7));
        assert!(a.iter().all(|w| w.depth() <= 4));
        assert_ne!(a, draw(8));
    }
}
