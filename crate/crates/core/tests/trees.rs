// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeSet;

use averaging_core::enumeration::{census, schroeder, CensusOptions, RunCap, WordClass};
use averaging_core::trees::{
    all_unreduced_trees, averaging_trees, enumerate_schroeder, is_averaging_tree, phi, phi_inverse, psi, psi_inverse,
    AveragingTree,
};
use averaging_core::words::{all_averaging_words, Letter};

#[test]
fn schroeder_tree_counts() {
    let c = census(&CensusOptions::new(RunCap::Finite(1), 7, 15)).unwrap();
    let i = c.table(WordClass::Indecomposable).degree_totals();
    for n in 1..=7 {
        let trees = enumerate_schroeder(n).unwrap();
        assert_eq!(trees.len() as u64, i[n], "n={n}");
        assert_eq!(num_bigint::BigUint::from(trees.len()), schroeder(n - 1), "n={n}");
        assert!(trees.iter().all(|t| t.validate().is_ok() && t.omega_count() == n));
    }
}

#[test]
fn psi_is_a_bijection_onto_schroeder_trees() {
    let c = census(&CensusOptions::new(RunCap::Finite(1), 6, 13).keep_words(true)).unwrap();
    let words = &c.words.as_ref().unwrap()[&WordClass::Indecomposable];
    for n in 1..=6 {
        let of_degree: Vec<_> = words.iter().filter(|w| w.degree() == n).collect();
        let image: BTreeSet<_> = of_degree.iter().map(|w| psi(w).unwrap()).collect();
        assert_eq!(image.len(), of_degree.len(), "psi not injective at n={n}");
        let expected: BTreeSet<_> = enumerate_schroeder(n).unwrap().into_iter().collect();
        assert_eq!(image, expected, "n={n}");
        for w in of_degree {
            assert_eq!(&psi_inverse(&psi(w).unwrap()).unwrap(), w);
        }
    }
}

#[test]
fn phi_round_trips() {
    for w in all_averaging_words(&[Letter::x()], 6, 4) {
        assert_eq!(phi_inverse(&phi(&w).unwrap()), w);
    }
    for t in averaging_trees(6, 4) {
        assert_eq!(phi(&phi_inverse(&t)).unwrap(), t);
    }
}

#[test]
fn phi_image_is_the_averaging_filter() {
    let image: BTreeSet<AveragingTree> =
        all_averaging_words(&[Letter::x()], 5, 4).iter().map(|w| phi(w).unwrap()).collect();
    let filtered: BTreeSet<AveragingTree> = all_unreduced_trees(5, 4)
        .into_iter()
        .filter(is_averaging_tree)
        .map(|t| AveragingTree::new(t).unwrap())
        .collect();
    assert_eq!(image, filtered);
}

#[test]
fn subtrees_of_averaging_trees_are_averaging() {
    for t in averaging_trees(5, 4) {
        for s in t.tree().subtrees() {
            assert!(is_averaging_tree(s), "{s} in {t}");
        }
    }
}
