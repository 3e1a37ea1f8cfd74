// SPDX-License-Identifier: Apache-2.0

use averaging_core::algebra::{apply_p, diamond};
use averaging_core::operad::{compose, tree_apply, tree_product};
use averaging_core::sampling::{random_averaging_word, seeded};
use averaging_core::trees::{averaging_trees, phi, phi_inverse, AveragingTree};
use averaging_core::words::Letter;
use proptest::prelude::*;

fn random_tree(seed: u64) -> AveragingTree {
    let w = random_averaging_word(&mut seeded(seed), &[Letter::x()], 3, 3);
    phi(&w).unwrap()
}

#[test]
fn unit_axioms_on_the_small_family() {
    let id = AveragingTree::id();
    for t in averaging_trees(4, 3) {
        assert_eq!(compose(&id, 1, &t).unwrap(), t);
        for i in 1..=t.leaf_count() {
            assert_eq!(compose(&t, i, &id).unwrap(), t, "{t} ∘{i} id");
        }
    }
}

#[test]
fn arity_bookkeeping_on_the_small_family() {
    let family = averaging_trees(3, 2);
    for t in &family {
        for s in &family {
            for i in 1..=t.leaf_count() {
                let c = compose(t, i, s).unwrap();
                assert_eq!(c.leaf_count(), t.leaf_count() + s.leaf_count() - 1);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn sequential_and_parallel_on_larger_trees(a in any::<u64>(), b in any::<u64>(), c in any::<u64>(), pick in any::<usize>()) {
        let (l, m, n) = (random_tree(a), random_tree(b), random_tree(c));
        let i = 1 + pick % l.leaf_count();
        let j = 1 + (pick / 7) % m.leaf_count();
        let lm = compose(&l, i, &m).unwrap();
        prop_assert_eq!(lm.leaf_count(), l.leaf_count() + m.leaf_count() - 1);
        prop_assert_eq!(
            compose(&lm, i - 1 + j, &n).unwrap(),
            compose(&l, i, &compose(&m, j, &n).unwrap()).unwrap()
        );
        for k in i + 1..=l.leaf_count() {
            prop_assert_eq!(
                compose(&lm, k - 1 + m.leaf_count(), &n).unwrap(),
                compose(&compose(&l, k, &n).unwrap(), i, &m).unwrap()
            );
        }
    }

    #[test]
    fn transported_operations(a in any::<u64>(), b in any::<u64>()) {
        let (p, q) = (random_tree(a), random_tree(b));
        prop_assert_eq!(phi_inverse(&tree_product(&p, &q)), diamond(&phi_inverse(&p), &phi_inverse(&q)));
        prop_assert_eq!(phi_inverse(&tree_apply(&p)), apply_p(&phi_inverse(&p)));
    }
}
