// SPDX-License-Identifier: Apache-2.0

//! Free averaging algebras: normal-form words, enumeration, trees and the
//! averaging operad.
//!
//! An averaging operator `P` on an algebra satisfies
//! `P(x)P(y) = P(xP(y)) = P(P(x)y)`. The basis of the free averaging algebra
//! on a set is the set of averaging words ([`AveragingWord`]); the product is
//! [`diamond`] and the operator is [`apply_p`].

pub mod algebra;
pub mod enumeration;
pub mod instances;
pub mod operad;
pub mod sampling;
pub mod trees;
pub mod words;

pub use algebra::{apply_p, diamond, reduce, rewrite_reduce, LinearCombination};
pub use enumeration::{census, CensusOptions, CountTable, RunCap, WordClass};
pub use instances::FiniteAlgebra;
pub use operad::{compose, OperadElement};
pub use trees::{phi, phi_inverse, AveragingTree, SchroederTree, UnreducedBinaryTree};
pub use words::{parse_word, AveragingWord, BracketedWord, Letter};
