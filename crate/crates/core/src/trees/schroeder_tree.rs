// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::str::FromStr;

use super::term::{parse_term, Term, TermError};
use super::TreeError;
use crate::enumeration::{compositions, RunCap};
use crate::words::{AveragingWord, Bracket, BracketedWord, Factor, Letter};

/// Default bound on the number of trees built by one enumeration.
pub const DEFAULT_TREE_BUDGET: usize = 10_000_000;

/// A planar reduced tree decorated by ω and ι.
///
/// Internal vertices carry ω. At every vertex the branches in odd positions
/// (first, third, ...) are ι-leaves and the others are not.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SchroederTree {
    /// A leaf decorated by ω, written `o`.
    Omega,
    /// A leaf decorated by ι, written `i`.
    Iota,
    /// An ω-vertex with at least two branches, written `w(b1,...,bk)`.
    Node(Vec<SchroederTree>),
}

impl SchroederTree {
    /// Number of ω-decorations (internal vertices plus ω-leaves).
    pub fn omega_count(&self) -> usize {
        match self {
            SchroederTree::Omega => 1,
            SchroederTree::Iota => 0,
            SchroederTree::Node(bs) => 1 + bs.iter().map(SchroederTree::omega_count).sum::<usize>(),
        }
    }

    /// Checks the branch conditions at every vertex; a bare ι-leaf is not a
    /// Schröder tree.
    pub fn validate(&self) -> Result<(), TreeError> {
        if *self == SchroederTree::Iota {
            return Err(TreeError::NotSchroeder {
                reason: "the tree is a single ι-leaf".into(),
            });
        }
        self.check_branches()
    }

    fn check_branches(&self) -> Result<(), TreeError> {
        let SchroederTree::Node(bs) = self else {
            return Ok(());
        };
        if bs.len() < 2 {
            return Err(TreeError::NotSchroeder {
                reason: format!("vertex with {} branch(es)", bs.len()),
            });
        }
        for (k, b) in bs.iter().enumerate() {
            let odd_position = k % 2 == 0;
            if odd_position != (*b == SchroederTree::Iota) {
                return Err(TreeError::NotSchroeder {
                    reason: format!("branch {} of {self} has the wrong decoration", k + 1),
                });
            }
            b.check_branches()?;
        }
        Ok(())
    }

    fn from_term(t: &Term) -> Result<SchroederTree, TermError> {
        let arity_err = |expected| TermError::Arity {
            pos: t.pos,
            head: t.head,
            expected,
            found: t.args.len(),
        };
        match t.head {
            'o' | 'i' if !t.args.is_empty() => Err(arity_err("0")),
            'o' => Ok(SchroederTree::Omega),
            'i' => Ok(SchroederTree::Iota),
            'w' if t.args.len() < 2 => Err(arity_err("at least 2")),
            'w' => Ok(SchroederTree::Node(
                t.args.iter().map(SchroederTree::from_term).collect::<Result<_, _>>()?,
            )),
            c => Err(TermError::UnknownHead { pos: t.pos, found: c }),
        }
    }
}

impl fmt::Display for SchroederTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchroederTree::Omega => f.write_str("o"),
            SchroederTree::Iota => f.write_str("i"),
            SchroederTree::Node(bs) => {
                f.write_str("w(")?;
                for (k, b) in bs.iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{b}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Parses the text form and checks the branch conditions.
impl FromStr for SchroederTree {
    type Err = TreeError;
    fn from_str(s: &str) -> Result<Self, TreeError> {
        let t = SchroederTree::from_term(&parse_term(s)?)?;
        t.validate()?;
        Ok(t)
    }
}

/// All Schröder trees with `n` ω-decorations.
pub fn enumerate_schroeder(n: usize) -> Result<Vec<SchroederTree>, TreeError> {
    enumerate_schroeder_with_budget(n, DEFAULT_TREE_BUDGET)
}

/// Builds the trees by grafting: a root with `k` non-ι branches carrying
/// `p_1 + ... + p_k = n - 1` ω's, interleaved with ι-leaves in the two
/// possible ways (`2k` or `2k + 1` branches).
pub fn enumerate_schroeder_with_budget(n: usize, budget: usize) -> Result<Vec<SchroederTree>, TreeError> {
    if n == 0 {
        return Err(TreeError::InvalidSize(n));
    }
    let mut levels: Vec<Vec<SchroederTree>> = vec![Vec::new(), vec![SchroederTree::Omega]];
    let mut built = 1usize;
    for size in 2..=n {
        let mut out = Vec::new();
        for k in 1..size {
            for comp in compositions(size - 1, k, RunCap::Infinite) {
                let mut partial: Vec<Vec<SchroederTree>> = vec![Vec::new()];
                for &p in comp.parts() {
                    let mut next = Vec::with_capacity(partial.len() * levels[p].len());
                    for prefix in &partial {
                        for t in &levels[p] {
                            let mut v = prefix.clone();
                            v.push(SchroederTree::Iota);
                            v.push(t.clone());
                            next.push(v);
                        }
                    }
                    partial = next;
                }
                built += 2 * partial.len();
                if built > budget {
                    return Err(TreeError::BudgetExceeded { budget });
                }
                for branches in partial {
                    let mut closed = branches.clone();
                    closed.push(SchroederTree::Iota);
                    out.push(SchroederTree::Node(branches));
                    out.push(SchroederTree::Node(closed));
                }
            }
        }
        levels.push(out);
    }
    Ok(levels.swap_remove(n))
}

/// The bijection from indecomposable words (runs of length 1, bracket
/// powers 1) to Schröder trees: `⌊x⌋ ↦ o`, and `⌊w_1 ⋯ w_m⌋ ↦
/// w(ι, Ψ(w_2), ι, Ψ(w_4), ...)`.
pub fn psi(w: &AveragingWord) -> Result<SchroederTree, TreeError> {
    if !w.is_single_generator() {
        return Err(TreeError::NotSingleGenerator);
    }
    let bad = || TreeError::NotIndecomposable { word: w.to_string() };
    match w.factors() {
        [Factor::Bracket(b)] => psi_bracket(b).ok_or_else(bad),
        _ => Err(bad()),
    }
}

fn psi_bracket(b: &Bracket) -> Option<SchroederTree> {
    if b.power() != 1 {
        return None;
    }
    let fs = b.core().factors();
    if fs.len() == 1 {
        return matches!(fs[0], Factor::Letter(_)).then_some(SchroederTree::Omega);
    }
    let mut branches = Vec::with_capacity(fs.len());
    for (k, f) in fs.iter().enumerate() {
        match (k % 2, f) {
            (0, Factor::Letter(_)) => branches.push(SchroederTree::Iota),
            (1, Factor::Bracket(inner)) => branches.push(psi_bracket(inner)?),
            _ => return None,
        }
    }
    Some(SchroederTree::Node(branches))
}

pub fn psi_inverse(t: &SchroederTree) -> Result<AveragingWord, TreeError> {
    t.validate()?;
    Ok(AveragingWord::new_unchecked(BracketedWord::from_factors(vec![bracket_of(t)]).expect("nonempty")))
}

fn bracket_of(t: &SchroederTree) -> Factor {
    let x = || Factor::Letter(Letter::x());
    let core = match t {
        SchroederTree::Omega => vec![x()],
        SchroederTree::Iota => unreachable!("validated"),
        SchroederTree::Node(bs) => bs
            .iter()
            .map(|b| match b {
                SchroederTree::Iota => x(),
                other => bracket_of(other),
            })
            .collect(),
    };
    Factor::Bracket(Bracket::new(BracketedWord::from_factors(core).expect("nonempty"), 1))
}
