// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::str::FromStr;

use super::term::{parse_term, Term, TermError};
use super::TreeError;
use crate::words::{validate_averaging, AveragingWord, Bracket, BracketedWord, Factor, Letter};

/// A planar tree whose vertices have one input (uni-vertices) or two
/// (bi-vertices). Written `L`, `U(t)` and `B(l,r)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UnreducedBinaryTree {
    Leaf,
    Uni(Box<UnreducedBinaryTree>),
    Bi(Box<UnreducedBinaryTree>, Box<UnreducedBinaryTree>),
}

use UnreducedBinaryTree::{Bi, Leaf, Uni};

impl UnreducedBinaryTree {
    pub fn uni(t: UnreducedBinaryTree) -> Self {
        Uni(Box::new(t))
    }

    pub fn bi(l: UnreducedBinaryTree, r: UnreducedBinaryTree) -> Self {
        Bi(Box::new(l), Box::new(r))
    }

    /// `s` uni-vertices grafted on top of each other above `t`.
    pub fn graft_ladder(s: usize, t: UnreducedBinaryTree) -> Self {
        (0..s).fold(t, |acc, _| Self::uni(acc))
    }

    /// The ladder `U^s(L)`; `s = 0` gives the trivial tree.
    pub fn ladder(s: usize) -> Self {
        Self::graft_ladder(s, Leaf)
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Leaf => 1,
            Uni(c) => c.leaf_count(),
            Bi(l, r) => l.leaf_count() + r.leaf_count(),
        }
    }

    pub fn uni_count(&self) -> usize {
        match self {
            Leaf => 0,
            Uni(c) => 1 + c.uni_count(),
            Bi(l, r) => l.uni_count() + r.uni_count(),
        }
    }

    /// Bracketed power: the number of uni-vertices stacked at the root.
    pub fn pb(&self) -> usize {
        self.split_prefix().0
    }

    /// `(pb, the subtree below the uni-vertex prefix)`.
    pub fn split_prefix(&self) -> (usize, &UnreducedBinaryTree) {
        let mut s = 0;
        let mut t = self;
        while let Uni(c) = t {
            s += 1;
            t = c;
        }
        (s, t)
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, Leaf)
    }

    pub fn is_bracketed(&self) -> bool {
        matches!(self, Uni(_))
    }

    pub fn is_ladder(&self) -> bool {
        let (s, below) = self.split_prefix();
        s >= 1 && below.is_trivial()
    }

    /// Every subtree (rooted at any vertex or leaf), pre-order, including
    /// the tree itself.
    pub fn subtrees(&self) -> Vec<&UnreducedBinaryTree> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            out.push(t);
            match t {
                Leaf => {}
                Uni(c) => stack.push(c),
                Bi(l, r) => {
                    stack.push(r);
                    stack.push(l);
                }
            }
        }
        out
    }

    fn from_term(t: &Term) -> Result<Self, TermError> {
        let arity_err = |expected| TermError::Arity {
            pos: t.pos,
            head: t.head,
            expected,
            found: t.args.len(),
        };
        match (t.head, t.args.as_slice()) {
            ('L', []) => Ok(Leaf),
            ('U', [c]) => Ok(Self::uni(Self::from_term(c)?)),
            ('B', [l, r]) => Ok(Self::bi(Self::from_term(l)?, Self::from_term(r)?)),
            ('L', _) => Err(arity_err("0")),
            ('U', _) => Err(arity_err("1")),
            ('B', _) => Err(arity_err("2")),
            (c, _) => Err(TermError::UnknownHead { pos: t.pos, found: c }),
        }
    }
}

impl fmt::Display for UnreducedBinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Leaf => f.write_str("L"),
            Uni(c) => write!(f, "U({c})"),
            Bi(l, r) => write!(f, "B({l},{r})"),
        }
    }
}

impl FromStr for UnreducedBinaryTree {
    type Err = TermError;
    fn from_str(s: &str) -> Result<Self, TermError> {
        Self::from_term(&parse_term(s)?)
    }
}

/// Replaces the right subtree of every bi-vertex by a leaf.
pub fn lf(t: &UnreducedBinaryTree) -> UnreducedBinaryTree {
    match t {
        Leaf => Leaf,
        Uni(c) => UnreducedBinaryTree::uni(lf(c)),
        Bi(l, _) => UnreducedBinaryTree::bi(lf(l), Leaf),
    }
}

/// Left factor tree: every bi-vertex has a leaf on the right, and at most
/// one of the tree and the left subtrees of its bi-vertices is bracketed.
pub fn is_lft(t: &UnreducedBinaryTree) -> bool {
    let mut bracketed = usize::from(t.is_bracketed());
    for s in t.subtrees() {
        if let Bi(l, r) = s {
            if !r.is_trivial() {
                return false;
            }
            bracketed += usize::from(l.is_bracketed());
        }
    }
    bracketed <= 1
}

/// A bracketed tree `U^s(B(l, r))` with `Lf` a left factor tree and
/// `pb(r) ≤ 1`.
pub fn is_fat(t: &UnreducedBinaryTree) -> bool {
    match t.split_prefix() {
        (s, Bi(_, r)) if s >= 1 => r.pb() <= 1 && is_lft(&lf(t)),
        _ => false,
    }
}

/// Bracketed subtrees are ladders or fat trees, and at every bi-vertex the
/// right subtree is trivial, or bracketed with the left subtree trivial or
/// ending in a trivial right subtree.
pub fn is_averaging_tree(t: &UnreducedBinaryTree) -> bool {
    t.subtrees().into_iter().all(|s| match s {
        Leaf => true,
        Uni(_) => s.is_ladder() || is_fat(s),
        Bi(l, r) => {
            r.is_trivial() || (r.is_bracketed() && (l.is_trivial() || matches!(&**l, Bi(_, lr) if lr.is_trivial())))
        }
    })
}

/// An [`UnreducedBinaryTree`] that passed [`is_averaging_tree`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AveragingTree(UnreducedBinaryTree);

impl AveragingTree {
    pub fn new(t: UnreducedBinaryTree) -> Result<Self, TreeError> {
        if is_averaging_tree(&t) {
            Ok(AveragingTree(t))
        } else {
            Err(TreeError::NotAveraging { tree: t.to_string() })
        }
    }

    /// The trivial tree, the operad unit.
    pub fn id() -> Self {
        AveragingTree(Leaf)
    }

    /// `U(L)`.
    pub fn t_p() -> Self {
        AveragingTree(UnreducedBinaryTree::ladder(1))
    }

    /// `B(L,L)`.
    pub fn t_mu() -> Self {
        AveragingTree(UnreducedBinaryTree::bi(Leaf, Leaf))
    }

    pub fn tree(&self) -> &UnreducedBinaryTree {
        &self.0
    }

    pub fn into_tree(self) -> UnreducedBinaryTree {
        self.0
    }

    pub fn leaf_count(&self) -> usize {
        self.0.leaf_count()
    }
}

impl fmt::Display for AveragingTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for AveragingTree {
    type Err = TreeError;
    fn from_str(s: &str) -> Result<Self, TreeError> {
        AveragingTree::new(s.parse()?)
    }
}

/// `x ↦ L`, `⌊V⌋^(s) ↦ U^s(φ(V))`, and `w_1 ⋯ w_m ↦ B(φ(w_1 ⋯ w_{m-1}), φ(w_m))`.
pub fn phi(w: &AveragingWord) -> Result<AveragingTree, TreeError> {
    if !w.is_single_generator() {
        return Err(TreeError::NotSingleGenerator);
    }
    Ok(AveragingTree(tree_of(w.factors())))
}

fn tree_of(factors: &[Factor]) -> UnreducedBinaryTree {
    match factors {
        [] => unreachable!("words are nonempty"),
        [Factor::Letter(_)] => Leaf,
        [Factor::Bracket(b)] => UnreducedBinaryTree::graft_ladder(b.power() as usize, tree_of(b.core().factors())),
        [init @ .., last] => UnreducedBinaryTree::bi(tree_of(init), tree_of(std::slice::from_ref(last))),
    }
}

pub fn phi_inverse(t: &AveragingTree) -> AveragingWord {
    validate_averaging(word_of_tree(&t.0)).expect("averaging trees map to averaging words")
}

/// The bracketed word read off any unreduced binary tree: leaves are `x`,
/// a uni-vertex brackets, a bi-vertex concatenates. Injective only on
/// averaging trees.
pub fn word_of_tree(t: &UnreducedBinaryTree) -> BracketedWord {
    match t {
        Leaf => BracketedWord::letter(Letter::x()),
        Uni(_) => {
            let (s, below) = t.split_prefix();
            let factor = Factor::Bracket(Bracket::new(word_of_tree(below), s as u32));
            BracketedWord::from_factors(vec![factor]).expect("nonempty")
        }
        Bi(l, r) => word_of_tree(l).concat(&word_of_tree(r)),
    }
}

/// Every unreduced binary tree with `1..=max_leaves` leaves and at most
/// `max_uni` uni-vertices, ordered by leaves, then uni-vertices, then
/// construction order.
pub fn all_unreduced_trees(max_leaves: usize, max_uni: usize) -> Vec<UnreducedBinaryTree> {
    // by[l][u]: trees with exactly l leaves and u uni-vertices
    let mut by: Vec<Vec<Vec<UnreducedBinaryTree>>> = vec![vec![Vec::new(); max_uni + 1]; max_leaves + 1];
    for l in 1..=max_leaves {
        for u in 0..=max_uni {
            let mut out = Vec::new();
            if l == 1 {
                out.push(UnreducedBinaryTree::ladder(u));
            } else {
                for s in 0..=u {
                    for l1 in 1..l {
                        for u1 in 0..=u - s {
                            for a in &by[l1][u1] {
                                for b in &by[l - l1][u - s - u1] {
                                    let t = UnreducedBinaryTree::bi(a.clone(), b.clone());
                                    out.push(UnreducedBinaryTree::graft_ladder(s, t));
                                }
                            }
                        }
                    }
                }
            }
            by[l][u] = out;
        }
    }
    by.into_iter().flatten().flatten().collect()
}

/// The averaging trees among [`all_unreduced_trees`].
pub fn averaging_trees(max_leaves: usize, max_uni: usize) -> Vec<AveragingTree> {
    all_unreduced_trees(max_leaves, max_uni)
        .into_iter()
        .filter(is_averaging_tree)
        .map(AveragingTree)
        .collect()
}
