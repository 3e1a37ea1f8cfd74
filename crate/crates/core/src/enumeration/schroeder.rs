// SPDX-License-Identifier: Apache-2.0

use num_bigint::BigUint;
use num_traits::{One, Zero};

// comp[m][j] = Σ over compositions (p_1..p_j) of m of Π weight(p_i).
fn composition_sums(m: usize, weight: impl Fn(usize) -> BigUint) -> Vec<Vec<BigUint>> {
    let mut comp = vec![vec![BigUint::zero(); m + 1]; m + 1];
    comp[0][0] = BigUint::one();
    for total in 1..=m {
        for j in 1..=total {
            let mut acc = BigUint::zero();
            for p in 1..=total - (j - 1) {
                let rest = &comp[total - p][j - 1];
                if !rest.is_zero() {
                    acc += weight(p) * rest;
                }
            }
            comp[total][j] = acc;
        }
    }
    comp
}

/// Large Schröder numbers `s_0..=s_n` by
/// `s_n = 2 Σ_j Σ_{(p_1..p_j) ⊨ n} s_{p_1 - 1} ⋯ s_{p_j - 1}`.
pub fn schroeder_sequence(n: usize) -> Vec<BigUint> {
    let mut s = vec![BigUint::one()];
    for k in 1..=n {
        // Only s_0..s_{k-1} are needed for compositions of k.
        let comp = composition_sums(k, |p| s[p - 1].clone());
        let total: BigUint = comp[k].iter().sum();
        s.push(total * 2u32);
    }
    s
}

pub fn schroeder(n: usize) -> BigUint {
    schroeder_sequence(n).pop().expect("nonempty")
}

/// `i_1..=i_n` (index 0 holds `i_0 = 0`) by
/// `i_n = 2 Σ_j Σ_{(p_1..p_j) ⊨ n-1} i_{p_1} ⋯ i_{p_j}` for `n ≥ 2`, `i_1 = 1`.
///
/// The same recursion counts Schröder trees with `n` ω-decorations.
pub fn indecomposable_sequence(n: usize) -> Vec<BigUint> {
    let mut i = vec![BigUint::zero()];
    if n >= 1 {
        i.push(BigUint::one());
    }
    for k in 2..=n {
        let comp = composition_sums(k - 1, |p| i[p].clone());
        let total: BigUint = comp[k - 1].iter().sum();
        i.push(total * 2u32);
    }
    i
}
