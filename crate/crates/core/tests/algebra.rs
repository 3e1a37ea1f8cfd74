// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;

use averaging_core::algebra::{
    apply_p, diamond, reduce, rewrite_reduce, rewrite_reduce_with, universal_map, AveragingAlgebra, LinearCombination,
    Strategy,
};
use averaging_core::instances::{fixtures, Q};
use averaging_core::sampling::{random_averaging_word, random_bracketed_word, random_combination, seeded};
use averaging_core::words::{all_bracketed_words, AveragingWord, Letter};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::Rng;

fn xy() -> Vec<Letter> {
    vec![Letter::x(), Letter::new("y").unwrap()]
}

fn words(seed: u64, n: usize) -> Vec<AveragingWord> {
    let mut rng = seeded(seed);
    (0..n).map(|_| random_averaging_word(&mut rng, &xy(), 4, 3)).collect()
}

// Products keep the head of the left factor and the tail of the right one.
fn checked_diamond(u: &AveragingWord, v: &AveragingWord) -> AveragingWord {
    let w = diamond(u, v);
    assert_eq!((w.head(), w.tail()), (u.head(), v.tail()), "{u} ⋄ {v} = {w}");
    w
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn associative(seed in any::<u64>()) {
        let ws = words(seed, 3);
        let (u, v, w) = (&ws[0], &ws[1], &ws[2]);
        prop_assert_eq!(checked_diamond(&checked_diamond(u, v), w), checked_diamond(u, &checked_diamond(v, w)));
    }

    #[test]
    fn averaging_identities(seed in any::<u64>()) {
        let ws = words(seed, 2);
        let (pu, pv) = (apply_p(&ws[0]), apply_p(&ws[1]));
        let lhs = checked_diamond(&pu, &pv);
        prop_assert_eq!(&lhs, &apply_p(&checked_diamond(&pu, &ws[1])));
        prop_assert_eq!(&lhs, &apply_p(&checked_diamond(&ws[0], &pv)));
    }

    #[test]
    fn operations_are_quotients_of_the_free_ones(seed in any::<u64>()) {
        let ws = words(seed, 2);
        prop_assert_eq!(checked_diamond(&ws[0], &ws[1]), reduce(&ws[0].word().concat(ws[1].word())));
        prop_assert_eq!(apply_p(&ws[0]), reduce(&ws[0].word().clone().bracketed(1)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rewriting_agrees_on_larger_words(seed in any::<u64>()) {
        let w = random_bracketed_word(&mut seeded(seed), &xy(), 5, 4);
        prop_assert_eq!(rewrite_reduce(&w).unwrap(), reduce(&w));
    }
}

#[test]
fn strategies_agree_exhaustively() {
    let x = [Letter::x()];
    for size in 1..=7 {
        for w in all_bracketed_words(&x, size) {
            let budget = 10_000;
            let inner = rewrite_reduce_with(&w, Strategy::LeftmostInnermost, budget).unwrap();
            let outer = rewrite_reduce_with(&w, Strategy::LeftmostOutermost, budget).unwrap();
            assert_eq!(inner.normal_form, outer.normal_form, "{w}");
            assert_eq!(inner.normal_form, reduce(&w), "{w}");
        }
    }
}

#[test]
fn universal_map_is_a_homomorphism() {
    let mut rng = seeded(99);
    let ab = xy();
    for (name, alg) in fixtures() {
        let n = alg.dim();
        let vector = |rng: &mut rand_chacha::ChaCha8Rng| -> Vec<Q> {
            (0..n).map(|_| Q::from_integer(BigInt::from(rng.gen_range(-2i64..=2)))).collect()
        };
        let assignment: BTreeMap<Letter, Vec<Q>> = ab.iter().map(|l| (l.clone(), vector(&mut rng))).collect();
        let f = |v: &LinearCombination| universal_map(&assignment, &alg, v).unwrap();
        for _ in 0..50 {
            let a = random_combination(&mut rng, &ab, 3, 3, 3);
            let b = random_combination(&mut rng, &ab, 3, 3, 3);
            assert_eq!(f(&a.product(&b)), alg.mul(&f(&a), &f(&b)), "{name}: {a} * {b}");
            assert_eq!(f(&a.apply_p()), alg.op(&f(&a)), "{name}: P({a})");
            assert_eq!(f(&(&a + &b)), alg.add(&f(&a), &f(&b)), "{name}: {a} + {b}");
        }
    }
}
