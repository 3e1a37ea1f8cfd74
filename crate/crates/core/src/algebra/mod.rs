// SPDX-License-Identifier: Apache-2.0

//! The free averaging algebra on a set: the product `⋄`, the operator
//! `P_X`, reduction of arbitrary bracketed words to normal form, linear
//! combinations and the universal map.

mod lincomb;
mod rewrite;
mod universal;

pub use lincomb::{parse_rational, LincombError, LinearCombination};
pub use rewrite::{default_budget, rewrite_reduce, rewrite_reduce_with, RewriteError, RewriteOutcome, Strategy};
pub use universal::{eval_word, universal_map, AveragingAlgebra, FreeAveragingAlgebra, UniversalMapError};

use crate::words::{AveragingWord, Bracket, BracketedWord, Factor};

/// The product of two averaging words.
///
/// Concatenation, except when `u` ends and `v` starts with a bracket; then
/// the junction `⌊u'⌋^(s) ⋄ ⌊v'⌋^(t)` becomes `⌊u' ⋄ ⌊v'⌋⌋^(s+t-1)`.
pub fn diamond(u: &AveragingWord, v: &AveragingWord) -> AveragingWord {
    AveragingWord::new_unchecked(diamond_words(u.word(), v.word()))
}

pub(crate) fn diamond_words(u: &BracketedWord, v: &BracketedWord) -> BracketedWord {
    let mut out = Vec::with_capacity(u.breadth() + v.breadth());
    out.extend_from_slice(u.factors());
    extend_diamond(&mut out, v.factors());
    word_of(out)
}

/// Appends `rest` to `out` as `⋄` does: a bracket meeting a bracket at the
/// seam is merged. Both sides must already be in normal form.
pub(crate) fn extend_diamond(out: &mut Vec<Factor>, rest: &[Factor]) {
    let Some((first, tail)) = rest.split_first() else {
        return;
    };
    match (out.last(), first) {
        (Some(Factor::Bracket(a)), Factor::Bracket(b)) => {
            let merged = merge_brackets(a, b);
            *out.last_mut().expect("nonempty") = Factor::Bracket(merged);
        }
        _ => out.push(first.clone()),
    }
    out.extend_from_slice(tail);
}

// ⌊a⌋^(s) ⋄ ⌊b⌋^(t) = ⌊a ⋄ ⌊b⌋⌋^(s+t-1)
fn merge_brackets(a: &Bracket, b: &Bracket) -> Bracket {
    let single = BracketedWord::from_factors(vec![Factor::Bracket(b.with_power(1))]).expect("nonempty");
    let core = diamond_words(a.core(), &single);
    Bracket::new(core, a.power() + b.power() - 1)
}

fn word_of(factors: Vec<Factor>) -> BracketedWord {
    BracketedWord::from_factors(factors).expect("nonempty factor list")
}

/// The averaging operator `P_X` on basis words.
pub fn apply_p(u: &AveragingWord) -> AveragingWord {
    AveragingWord::new_unchecked(apply_p_word(u.word()))
}

pub(crate) fn apply_p_word(u: &BracketedWord) -> BracketedWord {
    let f = u.factors();
    let n = f.len();
    match (&f[0], &f[n - 1]) {
        // ⌊w⌋^(s) ↦ ⌊w⌋^(s+1)
        (Factor::Bracket(b), _) if n == 1 => word_of(vec![Factor::Bracket(b.with_power(b.power() + 1))]),
        // head 0, tail ⌊w⌋^(s) with s ≥ 2: ⌊u₁⌊w⌋⌋^(s)
        (Factor::Letter(_), Factor::Bracket(t)) if t.power() >= 2 => {
            let mut core = f[..n - 1].to_vec();
            core.push(Factor::Bracket(t.with_power(1)));
            word_of(core).bracketed(t.power())
        }
        // u already lies in the bracket-admissible set
        (Factor::Letter(_), _) => u.clone().bracketed(1),
        // ⌊u₁⌋^(s) u₂ with u₂ ending in a letter: ⌊u₁ ⋄ ⌊u₂⌋⌋^(s)
        (Factor::Bracket(h), Factor::Letter(_)) => {
            let rest = word_of(f[1..].to_vec()).bracketed(1);
            word_of(vec![Factor::Bracket(Bracket::new(diamond_words(h.core(), &rest), h.power()))])
        }
        // ⌊u₁⌋^(s) u₂ ⌊u₃⌋^(t): ⌊u₁ ⋄ ⌊u₂⌊u₃⌋⌋⌋^(s+t-1)
        (Factor::Bracket(h), Factor::Bracket(t)) => {
            let mut middle = f[1..n - 1].to_vec();
            middle.push(Factor::Bracket(t.with_power(1)));
            let inner = word_of(middle).bracketed(1);
            let core = diamond_words(h.core(), &inner);
            word_of(vec![Factor::Bracket(Bracket::new(core, h.power() + t.power() - 1))])
        }
    }
}

/// Normal form of an arbitrary bracketed word, computed by evaluating
/// concatenation as `⋄` and bracketing as `P_X`.
pub fn reduce(w: &BracketedWord) -> AveragingWord {
    AveragingWord::new_unchecked(reduce_word(w))
}

fn reduce_word(w: &BracketedWord) -> BracketedWord {
    let mut acc: Option<BracketedWord> = None;
    for f in w.factors() {
        let r = match f {
            Factor::Letter(_) => word_of(vec![f.clone()]),
            Factor::Bracket(b) => {
                let mut r = reduce_word(b.core());
                for _ in 0..b.power() {
                    r = apply_p_word(&r);
                }
                r
            }
        };
        acc = Some(match acc {
            None => r,
            Some(a) => diamond_words(&a, &r),
        });
    }
    acc.expect("words are nonempty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{parse_word, validate_averaging};

    fn aw(s: &str) -> AveragingWord {
        s.parse().unwrap()
    }

    fn check_product(u: &AveragingWord, v: &AveragingWord) -> AveragingWord {
        let p = diamond(u, v);
        assert!(validate_averaging(p.word().clone()).is_ok());
        assert_eq!(p.head(), u.head());
        assert_eq!(p.tail(), v.tail());
        p
    }

    #[test]
    fn diamond_examples() {
        assert_eq!(check_product(&aw("x"), &aw("[x]")).to_string(), "x[x]");
        assert_eq!(check_product(&aw("[x[x]]^2"), &aw("[x]^3")).to_string(), "[x[x[x]]]^4");
        assert_eq!(check_product(&aw("[x]"), &aw("x")).to_string(), "[x]x");
        assert_eq!(check_product(&aw("[x]"), &aw("[x]")).to_string(), "[x[x]]");
    }

    #[test]
    fn apply_p_examples() {
        assert_eq!(apply_p(&aw("[x[y]]z")).to_string(), "[x[y[z]]]");
        assert_eq!(apply_p(&aw("x[y]^2")).to_string(), "[x[y]]^2");
        assert_eq!(apply_p(&aw("[x[y]]z[x]^2")).to_string(), "[x[y[z[x]]]]^2");
        assert_eq!(apply_p(&aw("x")).to_string(), "[x]");
        assert_eq!(apply_p(&aw("[x]^2")).to_string(), "[x]^3");
        assert_eq!(apply_p(&aw("x[y]")).to_string(), "[x[y]]");
    }

    #[test]
    fn reduce_examples() {
        let r = |s: &str| reduce(&parse_word(s).unwrap()).to_string();
        assert_eq!(r("[x][x]^2"), "[x[x]]^2");
        assert_eq!(r("[[x]x]"), "[x[x]]");
        assert_eq!(r("x[x]x"), "x[x]x");
        assert_eq!(r("[x[x]^2]"), "[x[x]]^2");
    }

    #[test]
    fn apply_p_agrees_with_reducing_the_bracket() {
        for s in ["x", "x y", "[x]", "x[y]^3", "[x]y", "[x]y[z]^2", "[x[y]]z[x]^2", "x[y]x"] {
            let u = aw(s);
            let bracketed = u.word().clone().bracketed(1);
            assert_eq!(apply_p(&u), reduce(&bracketed), "{s}");
        }
    }
}
