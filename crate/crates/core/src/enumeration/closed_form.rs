// SPDX-License-Identifier: Apache-2.0

//! The radical closed forms of the series, in double precision.

use super::WordClass;

fn radical(z: f64, t: f64) -> f64 {
    (z * z * t * t - (2.0 * t + 4.0 * t * t) * z + 1.0).sqrt()
}

/// Closed form of the bivariate series of `class` at `(z, t)`, for
/// `z, t > 0` inside the disc of convergence.
pub fn closed_form(class: WordClass, z: f64, t: f64) -> f64 {
    let r = radical(z, t);
    match class {
        WordClass::Indecomposable => (1.0 - z * t - r) / (2.0 * t),
        WordClass::Bracketed => (1.0 - z * t - 2.0 * z * t * t - r) / (2.0 * z * t * t * (1.0 + t)),
        WordClass::Decomposable => {
            (1.0 - 2.0 * z * t - 3.0 * z * t * t + z * z * t * t + z * z * t * t * t + (z * t + z * t * t - 1.0) * r)
                / (2.0 * z * t * t * (1.0 + t))
        }
        WordClass::Associate => {
            (2.0 + t - 2.0 * z * t - 3.0 * z * t * t - (2.0 + t) * r) / (2.0 * z * t * (1.0 + t))
        }
        WordClass::All => (1.0 + t) * (1.0 - z * t - r) / (2.0 * z * t * t),
    }
}

/// The `t = 1` specialisations.
pub fn closed_form_univariate(class: WordClass, z: f64) -> f64 {
    let r = (z * z - 6.0 * z + 1.0).sqrt();
    match class {
        WordClass::All => (1.0 - z - r) / z,
        WordClass::Bracketed => (1.0 - 3.0 * z - r) / (4.0 * z),
        WordClass::Indecomposable => (1.0 - z - r) / 2.0,
        WordClass::Decomposable => (1.0 - 5.0 * z + 2.0 * z * z + (2.0 * z - 1.0) * r) / (4.0 * z),
        WordClass::Associate => (3.0 - 5.0 * z - 3.0 * r) / (4.0 * z),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bivariate_at_one_matches_univariate() {
        for class in WordClass::ALL {
            for z in [0.01, 0.05, 0.1] {
                let (a, b) = (closed_form(class, z, 1.0), closed_form_univariate(class, z));
                assert!((a - b).abs() < 1e-12, "{class} at {z}: {a} vs {b}");
            }
        }
    }
}
