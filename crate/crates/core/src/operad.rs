// SPDX-License-Identifier: Apache-2.0

//! The averaging operad on averaging trees.
//!
//! The arity-`n` space is spanned by averaging trees with `n` leaves. The
//! partial composition `τ ∘_i σ` grafts through words: substitute `φ⁻¹(σ)`
//! for the `i`-th `x` of `φ⁻¹(τ)`, reduce, and map back with `φ`.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{apply_p, apply_p_word, diamond, extend_diamond};
use crate::trees::{phi, phi_inverse, AveragingTree};
use crate::words::{AveragingWord, BracketedWord, Factor};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperadError {
    #[error("composition index {index} is out of range for arity {arity}")]
    IndexOutOfRange { index: usize, arity: usize },
    #[error("tree of arity {found} in an element of arity {expected}")]
    ArityMismatch { expected: usize, found: usize },
}

/// `τ ∘_i σ` for `1 ≤ i ≤ arity(τ)`; leaves are numbered from the left.
pub fn compose(tau: &AveragingTree, i: usize, sigma: &AveragingTree) -> Result<AveragingTree, OperadError> {
    let w = compose_words(&phi_inverse(tau), i, &phi_inverse(sigma))?;
    Ok(phi(&w).expect("composition stays over {x}"))
}

/// The same composition on averaging words: the `i`-th letter of `u`
/// replaced by `v`, in normal form.
pub fn compose_words(u: &AveragingWord, i: usize, v: &AveragingWord) -> Result<AveragingWord, OperadError> {
    let arity = u.arity();
    if i == 0 || i > arity {
        return Err(OperadError::IndexOutOfRange { index: i, arity });
    }
    Ok(substitute_reduced(u.word(), i - 1, v))
}

// Only the factors on the path to the substituted letter change, so the
// product is rebuilt there instead of reducing the whole word.
fn substitute_reduced(u: &BracketedWord, idx: usize, v: &AveragingWord) -> AveragingWord {
    AveragingWord::new_unchecked(substitute_in(u, idx, v.word()))
}

fn substitute_in(u: &BracketedWord, mut idx: usize, v: &BracketedWord) -> BracketedWord {
    let fs = u.factors();
    for (p, f) in fs.iter().enumerate() {
        let inner = match f {
            Factor::Letter(_) if idx == 0 => v.clone(),
            Factor::Letter(_) => {
                idx -= 1;
                continue;
            }
            Factor::Bracket(b) if idx < b.core().arity() => {
                // P of anything is a single bracket, so further P's only raise the power
                let r = apply_p_word(&substitute_in(b.core(), idx, v));
                match (r.factors(), b.power()) {
                    (_, 1) => r,
                    ([Factor::Bracket(top)], s) => {
                        BracketedWord::from_factors(vec![Factor::Bracket(top.with_power(top.power() + s - 1))])
                            .expect("nonempty")
                    }
                    _ => unreachable!("P yields one bracket"),
                }
            }
            Factor::Bracket(b) => {
                idx -= b.core().arity();
                continue;
            }
        };
        // runs of consecutive factors of an averaging word are averaging
        let mut out = Vec::with_capacity(fs.len() + inner.breadth());
        out.extend_from_slice(&fs[..p]);
        extend_diamond(&mut out, inner.factors());
        extend_diamond(&mut out, &fs[p + 1..]);
        return BracketedWord::from_factors(out).expect("nonempty");
    }
    unreachable!("index checked against the arity")
}

/// `p ∗ q = φ(φ⁻¹(p) ⋄ φ⁻¹(q))`.
pub fn tree_product(p: &AveragingTree, q: &AveragingTree) -> AveragingTree {
    phi(&diamond(&phi_inverse(p), &phi_inverse(q))).expect("over {x}")
}

/// `Q(t) = φ(P(φ⁻¹(t)))`.
pub fn tree_apply(t: &AveragingTree) -> AveragingTree {
    phi(&apply_p(&phi_inverse(t))).expect("over {x}")
}

/// A rational combination of averaging trees of one arity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperadElement {
    arity: usize,
    terms: BTreeMap<AveragingTree, BigRational>,
}

impl OperadElement {
    pub fn zero(arity: usize) -> Self {
        OperadElement {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(t: AveragingTree) -> Self {
        let mut out = OperadElement::zero(t.leaf_count());
        out.terms.insert(t, BigRational::one());
        out
    }

    /// The unit: the trivial tree in arity 1.
    pub fn unit() -> Self {
        OperadElement::basis(AveragingTree::id())
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AveragingTree, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, t: &AveragingTree) -> BigRational {
        self.terms.get(t).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, t: AveragingTree, c: BigRational) -> Result<(), OperadError> {
        if t.leaf_count() != self.arity {
            return Err(OperadError::ArityMismatch {
                expected: self.arity,
                found: t.leaf_count(),
            });
        }
        let entry = self.terms.entry(t).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
        Ok(())
    }

    pub fn add(&self, other: &OperadElement) -> Result<OperadElement, OperadError> {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> OperadElement {
        let mut out = OperadElement::zero(self.arity);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(t, a)| (t.clone(), a * c)).collect();
        }
        out
    }

    /// Bilinear extension of [`compose`].
    pub fn compose(&self, i: usize, other: &OperadElement) -> Result<OperadElement, OperadError> {
        if i == 0 || i > self.arity {
            return Err(OperadError::IndexOutOfRange { index: i, arity: self.arity });
        }
        let mut out = OperadElement::zero(self.arity + other.arity - 1);
        for (t, a) in &self.terms {
            for (s, b) in &other.terms {
                out.add_term(compose(t, i, s)?, a * b)?;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for OperadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (t, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*{t}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    LeftUnit,
    RightUnit,
    Sequential,
    Parallel,
}

/// One failed instance: the trees involved (`λ, μ, ν`), the indices, and
/// the two sides as words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomFailure {
    pub axiom: Axiom,
    pub trees: Vec<String>,
    pub indices: Vec<usize>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    /// Instances checked per axiom.
    pub checked: BTreeMap<Axiom, u64>,
    /// Distinct `(λ, μ, ν)` triples visited.
    pub triples: u64,
    pub failures: Vec<AxiomFailure>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn merge(mut self, other: AxiomReport) -> AxiomReport {
        for (a, n) in other.checked {
            *self.checked.entry(a).or_default() += n;
        }
        self.triples += other.triples;
        self.failures.extend(other.failures);
        self
    }

    fn count(&mut self, a: Axiom) {
        *self.checked.entry(a).or_default() += 1;
    }
}

/// Checks the unit, sequential and parallel axioms for every triple drawn
/// from `family`. Work is split across threads by the first tree; the
/// report is identical for any thread count.
pub fn check_operad_axioms(family: &[AveragingTree]) -> AxiomReport {
    let words: Vec<AveragingWord> = family.iter().map(phi_inverse).collect();
    let id = AveragingWord::x();
    // first-level compositions are shared by many triples
    let table: Vec<Vec<Vec<AveragingWord>>> = words
        .par_iter()
        .map(|l| (1..=l.arity()).map(|i| words.iter().map(|m| c(l, i, m)).collect()).collect())
        .collect();

    let per_lambda = |li: usize| -> AxiomReport {
        let l = &words[li];
        let mut r = AxiomReport::default();
        for i in 1..=l.arity() {
            r.count(Axiom::RightUnit);
            if c(l, i, &id) != *l {
                r.failures.push(failure(Axiom::RightUnit, vec![l], vec![i], &c(l, i, &id), l));
            }
        }
        r.count(Axiom::LeftUnit);
        if c(&id, 1, l) != *l {
            r.failures.push(failure(Axiom::LeftUnit, vec![l], vec![1], &c(&id, 1, l), l));
        }
        for (mi, m) in words.iter().enumerate() {
            for (ni, n) in words.iter().enumerate() {
                r.triples += 1;
                for i in 1..=l.arity() {
                    let lm = &table[li][i - 1][mi];
                    for j in 1..=m.arity() {
                        r.count(Axiom::Sequential);
                        let lhs = c(lm, i - 1 + j, n);
                        let rhs = c(l, i, &table[mi][j - 1][ni]);
                        if lhs != rhs {
                            r.failures.push(failure(Axiom::Sequential, vec![l, m, n], vec![i, j], &lhs, &rhs));
                        }
                    }
                    for k in i + 1..=l.arity() {
                        r.count(Axiom::Parallel);
                        let lhs = c(lm, k - 1 + m.arity(), n);
                        let rhs = c(&table[li][k - 1][ni], i, m);
                        if lhs != rhs {
                            r.failures.push(failure(Axiom::Parallel, vec![l, m, n], vec![i, k], &lhs, &rhs));
                        }
                    }
                }
            }
        }
        r
    };

    (0..words.len())
        .into_par_iter()
        .map(per_lambda)
        .collect::<Vec<_>>()
        .into_iter()
        .fold(AxiomReport::default(), AxiomReport::merge)
}

fn c(u: &AveragingWord, i: usize, v: &AveragingWord) -> AveragingWord {
    compose_words(u, i, v).expect("index in range")
}

fn failure(axiom: Axiom, ws: Vec<&AveragingWord>, indices: Vec<usize>, lhs: &AveragingWord, rhs: &AveragingWord) -> AxiomFailure {
    let tree = |w: &AveragingWord| phi(w).expect("over {x}").to_string();
    AxiomFailure {
        axiom,
        trees: ws.into_iter().map(tree).collect(),
        indices,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    }
}
