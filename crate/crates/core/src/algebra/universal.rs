// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;

use num_rational::BigRational;
use thiserror::Error;

use super::LinearCombination;
use crate::words::{BracketedWord, Factor, Letter};

/// An associative (nonunital) algebra over the rationals with a linear
/// operator, assumed to satisfy the averaging identities.
pub trait AveragingAlgebra {
    type Elem: Clone + PartialEq;

    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, c: &BigRational, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn op(&self, a: &Self::Elem) -> Self::Elem;
}

/// The free averaging algebra itself, as a target.
#[derive(Debug, Clone, Copy, Default)]
pub struct FreeAveragingAlgebra;

impl AveragingAlgebra for FreeAveragingAlgebra {
    type Elem = LinearCombination;

    fn zero(&self) -> LinearCombination {
        LinearCombination::zero()
    }
    fn add(&self, a: &LinearCombination, b: &LinearCombination) -> LinearCombination {
        a + b
    }
    fn scale(&self, c: &BigRational, a: &LinearCombination) -> LinearCombination {
        a.scale(c)
    }
    fn mul(&self, a: &LinearCombination, b: &LinearCombination) -> LinearCombination {
        a.product(b)
    }
    fn op(&self, a: &LinearCombination) -> LinearCombination {
        a.apply_p()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UniversalMapError {
    #[error("letter {0} has no image")]
    UnmappedLetter(String),
}

/// Evaluates the unique averaging-algebra homomorphism extending
/// `assignment` on a linear combination.
pub fn universal_map<A: AveragingAlgebra>(
    assignment: &BTreeMap<Letter, A::Elem>,
    target: &A,
    v: &LinearCombination,
) -> Result<A::Elem, UniversalMapError> {
    let mut acc = target.zero();
    for (w, c) in v.terms() {
        let e = eval_word(assignment, target, w.word())?;
        acc = target.add(&acc, &target.scale(c, &e));
    }
    Ok(acc)
}

/// Evaluates a single bracketed word: concatenation as the product,
/// brackets as the operator. Works for any bracketed word, not only
/// averaging words.
pub fn eval_word<A: AveragingAlgebra>(
    assignment: &BTreeMap<Letter, A::Elem>,
    target: &A,
    w: &BracketedWord,
) -> Result<A::Elem, UniversalMapError> {
    let mut acc: Option<A::Elem> = None;
    for f in w.factors() {
        let e = match f {
            Factor::Letter(l) => assignment
                .get(l)
                .cloned()
                .ok_or_else(|| UniversalMapError::UnmappedLetter(l.to_string()))?,
            Factor::Bracket(b) => {
                let mut e = eval_word(assignment, target, b.core())?;
                for _ in 0..b.power() {
                    e = target.op(&e);
                }
                e
            }
        };
        acc = Some(match acc {
            None => e,
            Some(a) => target.mul(&a, &e),
        });
    }
    Ok(acc.expect("words are nonempty"))
}
