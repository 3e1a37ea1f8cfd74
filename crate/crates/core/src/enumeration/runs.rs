// SPDX-License-Identifier: Apache-2.0

use super::{Composition, RunCap};
use crate::words::{AveragingWord, Bracket, BracketedWord, Factor, Letter};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RunError {
    #[error("word contains a letter other than x")]
    NotSingleGenerator,
    #[error("composition has {parts} parts but the word has {runs} x-runs")]
    PartCount { parts: usize, runs: usize },
}

/// Replaces every maximal x-run by a single `x` and records the run
/// lengths from left to right.
pub fn collapse_runs(w: &AveragingWord, cap: RunCap) -> Result<(AveragingWord, Composition), RunError> {
    if !w.is_single_generator() {
        return Err(RunError::NotSingleGenerator);
    }
    let mut lengths = Vec::new();
    let collapsed = collapse(w.word(), &mut lengths);
    let comp = Composition::new(lengths, cap).expect("every word has a run within its own cap");
    Ok((AveragingWord::new_unchecked(collapsed), comp))
}

fn collapse(w: &BracketedWord, lengths: &mut Vec<usize>) -> BracketedWord {
    let mut out: Vec<Factor> = Vec::new();
    let mut run = 0;
    for f in w.factors() {
        match f {
            Factor::Letter(_) => run += 1,
            Factor::Bracket(b) => {
                if run > 0 {
                    lengths.push(run);
                    out.push(Factor::Letter(Letter::x()));
                    run = 0;
                }
                out.push(Factor::Bracket(Bracket::new(collapse(b.core(), lengths), b.power())));
            }
        }
    }
    if run > 0 {
        lengths.push(run);
        out.push(Factor::Letter(Letter::x()));
    }
    BracketedWord::from_factors(out).expect("nonempty")
}

/// Inverse of [`collapse_runs`]: expands the k-th x of a run-free word into
/// a run of length `comp[k]`.
pub fn expand_runs(w: &AveragingWord, comp: &Composition) -> Result<AveragingWord, RunError> {
    if !w.is_single_generator() {
        return Err(RunError::NotSingleGenerator);
    }
    let runs = w.arity();
    if runs != comp.parts().len() {
        return Err(RunError::PartCount {
            parts: comp.parts().len(),
            runs,
        });
    }
    let mut parts = comp.parts().iter().copied();
    Ok(AveragingWord::new_unchecked(expand(w.word(), &mut parts)))
}

fn expand(w: &BracketedWord, parts: &mut impl Iterator<Item = usize>) -> BracketedWord {
    let mut out = Vec::new();
    for f in w.factors() {
        match f {
            Factor::Letter(l) => {
                let k = parts.next().expect("counted");
                out.extend(std::iter::repeat_n(Factor::Letter(l.clone()), k));
            }
            Factor::Bracket(b) => out.push(Factor::Bracket(Bracket::new(expand(b.core(), parts), b.power()))),
        }
    }
    BracketedWord::from_factors(out).expect("nonempty")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn aw(s: &str) -> AveragingWord {
        s.parse().unwrap()
    }

    #[test]
    fn collapse_examples() {
        let (w, c) = collapse_runs(&aw("x x[x]"), RunCap::Infinite).unwrap();
        assert_eq!((w.to_string(), c.parts().to_vec()), ("x[x]".into(), vec![2, 1]));
        let (w, c) = collapse_runs(&aw("x[x]x"), RunCap::Infinite).unwrap();
        assert_eq!((w.to_string(), c.parts().to_vec()), ("x[x]x".into(), vec![1, 1, 1]));
    }

    #[test]
    fn expand_example() {
        let comp = Composition::new(vec![3, 1], RunCap::Infinite).unwrap();
        assert_eq!(expand_runs(&aw("x[x]"), &comp).unwrap().to_string(), "x x x[x]");
        let bad = Composition::new(vec![3], RunCap::Infinite).unwrap();
        assert_eq!(expand_runs(&aw("x[x]"), &bad), Err(RunError::PartCount { parts: 1, runs: 2 }));
    }

    #[test]
    fn round_trip() {
        for s in ["x x[x x[x]x x x]x", "[x x]^2", "[x[x x]]x"] {
            let w = aw(s);
            let (c, comp) = collapse_runs(&w, RunCap::Infinite).unwrap();
            assert_eq!(expand_runs(&c, &comp).unwrap(), w);
        }
    }
}
