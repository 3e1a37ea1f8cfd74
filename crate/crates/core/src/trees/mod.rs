// SPDX-License-Identifier: Apache-2.0

//! Tree models of averaging words.
//!
//! [`SchroederTree`]s are in bijection with indecomposable idempotent words
//! over `{x}`; averaging trees ([`AveragingTree`]) are in bijection with all
//! averaging words over `{x}`.

mod binary;
mod schroeder_tree;
mod term;

pub use binary::{
    all_unreduced_trees, averaging_trees, is_averaging_tree, is_fat, is_lft, lf, phi, phi_inverse, word_of_tree,
    AveragingTree, UnreducedBinaryTree,
};
pub use schroeder_tree::{
    enumerate_schroeder, enumerate_schroeder_with_budget, psi, psi_inverse, SchroederTree, DEFAULT_TREE_BUDGET,
};
pub use term::TermError;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error(transparent)]
    Term(#[from] TermError),
    #[error("tree size must be at least 1, got {0}")]
    InvalidSize(usize),
    #[error("tree enumeration exceeded the budget of {budget} trees")]
    BudgetExceeded { budget: usize },
    #[error("word uses a letter other than x")]
    NotSingleGenerator,
    #[error("{word} is not an indecomposable word with runs of length 1 and bracket powers 1")]
    NotIndecomposable { word: String },
    #[error("not a Schröder tree: {reason}")]
    NotSchroeder { reason: String },
    #[error("{tree} is not an averaging tree")]
    NotAveraging { tree: String },
}
