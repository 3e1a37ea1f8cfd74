// SPDX-License-Identifier: Apache-2.0

//! Rule-based normalisation, independent of the evaluation in [`super::reduce`].
//!
//! The rules, applicable at any nesting level, are
//!
//! * R1: `⌊u⌋⌊v⌋ → ⌊u⌊v⌋⌋`
//! * R2: `⌊⌊u⌋v⌋ → ⌊u⌊v⌋⌋` for nonempty `v`
//! * R3: `⌊u⌊v⌋^(s)⌋ → ⌊u⌊v⌋⌋^(s)` for nonempty `u` and `s >= 2`
//!
//! Their left-hand sides are exactly the forbidden patterns of averaging
//! words, so the irreducible words are the averaging words.

use thiserror::Error;

use crate::words::{find_violation, AveragingWord, Bracket, BracketedWord, Factor, Pattern};

/// Redex selection order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    LeftmostInnermost,
    LeftmostOutermost,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("rewriting did not terminate within {budget} steps")]
    StepBudgetExceeded { budget: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteOutcome {
    pub normal_form: AveragingWord,
    pub steps: usize,
}

/// Default step bound: `10 · size²`.
pub fn default_budget(w: &BracketedWord) -> usize {
    let s = w.size().max(1);
    10 * s * s
}

/// Rewrites to normal form with the leftmost-innermost strategy and the
/// default step budget.
pub fn rewrite_reduce(w: &BracketedWord) -> Result<AveragingWord, RewriteError> {
    rewrite_reduce_with(w, Strategy::LeftmostInnermost, default_budget(w)).map(|o| o.normal_form)
}

pub fn rewrite_reduce_with(w: &BracketedWord, strategy: Strategy, budget: usize) -> Result<RewriteOutcome, RewriteError> {
    let mut current = w.clone();
    let mut steps = 0;
    loop {
        let redex = match strategy {
            Strategy::LeftmostInnermost => find_violation(&current).map(|v| (v.pattern, v.path)),
            Strategy::LeftmostOutermost => outermost(current.factors(), &mut Vec::new()),
        };
        let Some((pattern, path)) = redex else {
            return Ok(RewriteOutcome {
                normal_form: AveragingWord::new_unchecked(current),
                steps,
            });
        };
        if steps >= budget {
            return Err(RewriteError::StepBudgetExceeded { budget });
        }
        let factors = rewrite_at(current.factors(), &path, pattern);
        current = BracketedWord::from_factors(factors).expect("rewriting keeps words nonempty");
        steps += 1;
    }
}

fn own_pattern(b: &Bracket) -> Option<Pattern> {
    let core = b.core().factors();
    if core.len() < 2 {
        return None;
    }
    if core[0].is_bracket() {
        return Some(Pattern::BracketHeaded);
    }
    match core[core.len() - 1].as_bracket() {
        Some(t) if t.power() >= 2 => Some(Pattern::PowerTail),
        _ => None,
    }
}

// Pre-order scan: a pair of adjacent brackets encloses both brackets, and a
// bracket encloses everything in its core.
fn outermost(factors: &[Factor], path: &mut Vec<usize>) -> Option<(Pattern, Vec<usize>)> {
    for (i, f) in factors.iter().enumerate() {
        let Factor::Bracket(b) = f else { continue };
        if factors.get(i + 1).is_some_and(Factor::is_bracket) {
            let mut p = path.clone();
            p.push(i);
            return Some((Pattern::AdjacentBrackets, p));
        }
        path.push(i);
        if let Some(pattern) = own_pattern(b) {
            return Some((pattern, path.clone()));
        }
        if let Some(found) = outermost(b.core().factors(), path) {
            return Some(found);
        }
        path.pop();
    }
    None
}

fn word(factors: Vec<Factor>) -> BracketedWord {
    BracketedWord::from_factors(factors).expect("nonempty")
}

/// `⌊c⌋^(p)` viewed as `⌊u⌋` with `u = ⌊c⌋^(p-1)`; returns the factors of `u`.
fn strip_one(b: &Bracket) -> Vec<Factor> {
    if b.power() == 1 {
        b.core().factors().to_vec()
    } else {
        vec![Factor::Bracket(b.with_power(b.power() - 1))]
    }
}

fn rewrite_at(factors: &[Factor], path: &[usize], pattern: Pattern) -> Vec<Factor> {
    let i = path[0];
    if path.len() > 1 {
        let Factor::Bracket(b) = &factors[i] else {
            unreachable!("redex path descends through a letter")
        };
        let inner = rewrite_at(b.core().factors(), &path[1..], pattern);
        let mut out = factors.to_vec();
        out[i] = Factor::Bracket(Bracket::new(word(inner), b.power()));
        return out;
    }
    let mut out = factors.to_vec();
    match pattern {
        Pattern::AdjacentBrackets => {
            let (Factor::Bracket(a), Factor::Bracket(b)) = (&factors[i], &factors[i + 1]) else {
                unreachable!("R1 redex without two brackets")
            };
            let mut core = strip_one(a);
            core.push(Factor::Bracket(b.clone()));
            out.splice(i..i + 2, [Factor::Bracket(Bracket::new(word(core), 1))]);
        }
        Pattern::BracketHeaded => {
            let Factor::Bracket(outer) = &factors[i] else { unreachable!() };
            let core = outer.core().factors();
            let Factor::Bracket(head) = &core[0] else { unreachable!() };
            let mut new_core = strip_one(head);
            new_core.push(Factor::Bracket(Bracket::new(word(core[1..].to_vec()), 1)));
            out[i] = Factor::Bracket(Bracket::new(word(new_core), outer.power()));
        }
        Pattern::PowerTail => {
            let Factor::Bracket(outer) = &factors[i] else { unreachable!() };
            let core = outer.core().factors();
            let Factor::Bracket(tail) = &core[core.len() - 1] else { unreachable!() };
            let mut new_core = core[..core.len() - 1].to_vec();
            new_core.push(Factor::Bracket(tail.with_power(1)));
            let power = outer.power() - 1 + tail.power();
            out[i] = Factor::Bracket(Bracket::new(word(new_core), power));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_word;

    fn rr(s: &str, strategy: Strategy) -> RewriteOutcome {
        let w = parse_word(s).unwrap();
        rewrite_reduce_with(&w, strategy, default_budget(&w)).unwrap()
    }

    #[test]
    fn single_rule_examples() {
        let o = rr("[x[x]^2]", Strategy::LeftmostInnermost);
        assert_eq!(o.normal_form.to_string(), "[x[x]]^2");
        assert_eq!(o.steps, 1);
        let o = rr("[x][x]", Strategy::LeftmostInnermost);
        assert_eq!(o.normal_form.to_string(), "[x[x]]");
        assert_eq!(o.steps, 1);
        let o = rr("[[x]x]", Strategy::LeftmostInnermost);
        assert_eq!(o.normal_form.to_string(), "[x[x]]");
        assert_eq!(o.steps, 1);
    }

    #[test]
    fn averaging_words_are_fixed() {
        for s in ["x", "[x]x", "[x[x]]^2", "[x[x]^2 x[x]]"] {
            for strategy in [Strategy::LeftmostInnermost, Strategy::LeftmostOutermost] {
                let o = rr(s, strategy);
                assert_eq!(o.steps, 0);
                assert_eq!(o.normal_form.to_string(), s.replace(' ', ""));
            }
        }
    }

    #[test]
    fn strategies_agree_on_overlaps() {
        for s in ["[[x]y][z]", "[x][y][z]", "[[[x]y]z]", "[x[y]^2][z]^3", "[[x]^2 y[z]^2]"] {
            let a = rr(s, Strategy::LeftmostInnermost).normal_form;
            let b = rr(s, Strategy::LeftmostOutermost).normal_form;
            assert_eq!(a, b, "{s}");
            assert_eq!(a, super::super::reduce(&parse_word(s).unwrap()), "{s}");
        }
    }

    #[test]
    fn budget_is_enforced() {
        let w = parse_word("[x][x][x]").unwrap();
        assert_eq!(
            rewrite_reduce_with(&w, Strategy::LeftmostInnermost, 1),
            Err(RewriteError::StepBudgetExceeded { budget: 1 })
        );
    }
}
