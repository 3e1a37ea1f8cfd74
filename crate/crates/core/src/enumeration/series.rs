// SPDX-License-Identifier: Apache-2.0

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::{CountTable, RunCap, WordClass};

/// A power series in `z` (degree) and `t` (arity) truncated to
/// `n ≤ max_degree`, `m ≤ max_arity`.
#[derive(Clone, PartialEq, Eq)]
pub struct BivariateSeries {
    max_degree: usize,
    max_arity: usize,
    coeffs: Vec<Vec<BigRational>>,
}

impl BivariateSeries {
    pub fn zero(max_degree: usize, max_arity: usize) -> Self {
        BivariateSeries {
            max_degree,
            max_arity,
            coeffs: vec![vec![BigRational::zero(); max_arity + 1]; max_degree + 1],
        }
    }

    /// The monomial `c z^n t^m` (zero if out of range).
    pub fn monomial(max_degree: usize, max_arity: usize, n: usize, m: usize, c: BigRational) -> Self {
        let mut s = Self::zero(max_degree, max_arity);
        if n <= max_degree && m <= max_arity {
            s.coeffs[n][m] = c;
        }
        s
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn max_arity(&self) -> usize {
        self.max_arity
    }

    pub fn coeff(&self, n: usize, m: usize) -> &BigRational {
        &self.coeffs[n][m]
    }

    pub fn set(&mut self, n: usize, m: usize, c: BigRational) {
        self.coeffs[n][m] = c;
    }

    fn same_shape(&self, other: &Self) {
        assert_eq!(
            (self.max_degree, self.max_arity),
            (other.max_degree, other.max_arity),
            "series truncations differ"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_shape(other);
        let mut out = self.clone();
        for (r, o) in out.coeffs.iter_mut().zip(&other.coeffs) {
            for (a, b) in r.iter_mut().zip(o) {
                *a += b;
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = self.clone();
        for a in out.coeffs.iter_mut().flatten() {
            *a *= c;
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_shape(other);
        let mut out = Self::zero(self.max_degree, self.max_arity);
        for (n1, r1) in self.coeffs.iter().enumerate() {
            for (m1, a) in r1.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for n2 in 0..=self.max_degree - n1 {
                    for m2 in 0..=self.max_arity - m1 {
                        let b = &other.coeffs[n2][m2];
                        if !b.is_zero() {
                            out.coeffs[n1 + n2][m1 + m2] += a * b;
                        }
                    }
                }
            }
        }
        out
    }

    /// Multiplies by `z^dn t^dm`, truncating.
    pub fn shift(&self, dn: usize, dm: usize) -> Self {
        let mut out = Self::zero(self.max_degree, self.max_arity);
        for n in 0..=self.max_degree.saturating_sub(dn) {
            for m in 0..=self.max_arity.saturating_sub(dm) {
                if n + dn <= self.max_degree && m + dm <= self.max_arity {
                    out.coeffs[n + dn][m + dm] = self.coeffs[n][m].clone();
                }
            }
        }
        out
    }

    /// Substitutes `t ↦ g(t)`, where `g[k]` is the coefficient of `t^k` and
    /// `g[0] = 0`.
    pub fn compose_t(&self, g: &[BigRational]) -> Self {
        assert!(g.first().is_none_or(Zero::is_zero), "substituted series must have no constant term");
        let mm = self.max_arity;
        // powers[k] = g(t)^k truncated at t^mm
        let mut powers: Vec<Vec<BigRational>> = Vec::with_capacity(mm + 1);
        let mut p = vec![BigRational::zero(); mm + 1];
        p[0] = BigRational::one();
        for _ in 0..=mm {
            powers.push(p.clone());
            let mut next = vec![BigRational::zero(); mm + 1];
            for (i, a) in p.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in g.iter().enumerate().take(mm + 1 - i) {
                    if !b.is_zero() {
                        next[i + j] += a * b;
                    }
                }
            }
            p = next;
        }
        let mut out = Self::zero(self.max_degree, mm);
        for (n, row) in self.coeffs.iter().enumerate() {
            for (k, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (m, b) in powers[k].iter().enumerate() {
                    if !b.is_zero() {
                        out.coeffs[n][m] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Σ_m of row `n`: the coefficient of `z^n` at `t = 1`, exact when
    /// `max_arity` covers every arity that occurs in degree `n`.
    pub fn row_sum(&self, n: usize) -> BigRational {
        self.coeffs[n].iter().sum()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().flatten().all(BigRational::is_integer)
    }

    /// Evaluates the truncated sum in double precision.
    pub fn eval_f64(&self, z: f64, t: f64) -> f64 {
        let mut total = 0.0;
        for (n, row) in self.coeffs.iter().enumerate() {
            let zn = z.powi(n as i32);
            for (m, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    total += c.to_f64().expect("finite") * zn * t.powi(m as i32);
                }
            }
        }
        total
    }

    /// Integer coefficients as a table. Panics if a coefficient is not a
    /// nonnegative integer that fits in `u64`.
    pub fn to_count_table(&self, class: WordClass, run_cap: RunCap, include_one: bool) -> CountTable {
        let mut t = CountTable::zeros(class, run_cap, include_one, self.max_degree, self.max_arity);
        for (n, row) in self.coeffs.iter().enumerate() {
            for (m, c) in row.iter().enumerate() {
                assert!(c.is_integer(), "non-integral coefficient {c} at ({n},{m})");
                t.set(n, m, c.to_integer().to_u64().expect("nonnegative and small"));
            }
        }
        t
    }

    /// `(n, m, coefficient)` for every cell.
    pub fn rows(&self) -> impl Iterator<Item = (usize, usize, &BigRational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .flat_map(|(n, r)| r.iter().enumerate().map(move |(m, c)| (n, m, c)))
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,m,coefficient\n");
        for (n, m, c) in self.rows() {
            s.push_str(&format!("{n},{m},{c}\n"));
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "max_degree": self.max_degree,
            "max_arity": self.max_arity,
            "rows": self.rows().map(|(n, m, c)| serde_json::json!({"n": n, "m": m, "coefficient": c.to_string()})).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Debug for BivariateSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, row) in self.coeffs.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            writeln!(f, "z^{n}: [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// The five series `I, B, D, C, A` for `v = 1`.
#[derive(Clone, Debug)]
pub struct SeriesFamily {
    pub i: BivariateSeries,
    pub b: BivariateSeries,
    pub d: BivariateSeries,
    pub c: BivariateSeries,
    pub a: BivariateSeries,
}

impl SeriesFamily {
    pub fn get(&self, class: WordClass) -> &BivariateSeries {
        match class {
            WordClass::All => &self.a,
            WordClass::Bracketed => &self.b,
            WordClass::Indecomposable => &self.i,
            WordClass::Decomposable => &self.d,
            WordClass::Associate => &self.c,
        }
    }
}

/// Solves `I = zt + zt(1+t)B`, `B = I + tIB` degree by degree in `z`, then
/// `D = B − I`, `C = t + (2t + t²)B` and `A = 1 + B + C`.
pub fn series_family(max_degree: usize, max_arity: usize) -> SeriesFamily {
    let (nn, mm) = (max_degree, max_arity);
    let mut i = BivariateSeries::zero(nn, mm);
    let mut b = BivariateSeries::zero(nn, mm);
    for n in 1..=nn {
        // I_n(t) = [n = 1] t + (t + t²) B_{n-1}(t)
        if n == 1 && mm >= 1 {
            i.coeffs[1][1] = BigRational::one();
        }
        for m in 0..=mm {
            let mut c = i.coeffs[n][m].clone();
            if m >= 1 {
                c += &b.coeffs[n - 1][m - 1];
            }
            if m >= 2 {
                c += &b.coeffs[n - 1][m - 2];
            }
            i.coeffs[n][m] = c;
        }
        // B_n(t) = I_n(t) + t Σ_{k=1}^{n-1} I_k(t) B_{n-k}(t)
        for m in 0..=mm {
            let mut c = i.coeffs[n][m].clone();
            if m >= 1 {
                for k in 1..n {
                    for m1 in 0..m {
                        let a = &i.coeffs[k][m1];
                        if !a.is_zero() {
                            c += a * &b.coeffs[n - k][m - 1 - m1];
                        }
                    }
                }
            }
            b.coeffs[n][m] = c;
        }
    }
    let d = b.sub(&i);
    let t_part = BivariateSeries::monomial(nn, mm, 0, 1, int(1));
    let c = t_part.add(&b.shift(0, 1).scale(&int(2))).add(&b.shift(0, 2));
    let a = BivariateSeries::monomial(nn, mm, 0, 0, int(1)).add(&b).add(&c);
    SeriesFamily { i, b, d, c, a }
}

pub fn series(class: WordClass, max_degree: usize, max_arity: usize) -> BivariateSeries {
    let f = series_family(max_degree, max_arity);
    match class {
        WordClass::All => f.a,
        WordClass::Bracketed => f.b,
        WordClass::Indecomposable => f.i,
        WordClass::Decomposable => f.d,
        WordClass::Associate => f.c,
    }
}

/// Degree totals `n = 0..=max_degree` of a class, from the series at
/// `t = 1`. Degree-`n` words have arity at most `2n + 1`.
pub fn univariate(class: WordClass, max_degree: usize) -> Vec<BigInt> {
    let s = series(class, max_degree, 2 * max_degree + 1);
    (0..=max_degree).map(|n| s.row_sum(n).to_integer()).collect()
}

/// `G_{1,v}(t) = t + t² + … + t^v`, or `t/(1−t)` for `v = ∞`, to order `max_arity`.
pub fn run_series(v: RunCap, max_arity: usize) -> Vec<BigRational> {
    (0..=max_arity)
        .map(|k| if k >= 1 && v.admits(k) { int(1) } else { int(0) })
        .collect()
}

/// Counts for run cap `v` obtained from the `v = 1` series by substituting
/// `t ↦ G_{1,v}(t)`.
pub fn reduce_to_v1_class(class: WordClass, v: RunCap, max_degree: usize, max_arity: usize, include_one: bool) -> CountTable {
    let mut s = series(class, max_degree, max_arity).compose_t(&run_series(v, max_arity));
    if class == WordClass::All && !include_one {
        s.set(0, 0, int(0));
    }
    s.to_count_table(class, v, include_one && class == WordClass::All)
}

pub fn reduce_to_v1(v: RunCap, max_degree: usize, max_arity: usize) -> CountTable {
    reduce_to_v1_class(WordClass::All, v, max_degree, max_arity, false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: Vec<BigInt>) -> Vec<i64> {
        v.into_iter().map(|b| b.to_i64().unwrap()).collect()
    }

    #[test]
    fn low_coefficients() {
        let i = series(WordClass::Indecomposable, 3, 7);
        assert_eq!(i.coeff(1, 1), &int(1));
        assert_eq!(i.coeff(2, 2), &int(1));
        assert_eq!(i.coeff(2, 3), &int(1));
        let a = series(WordClass::All, 1, 3);
        assert_eq!(a.coeff(0, 0), &int(1));
        assert_eq!(a.coeff(0, 1), &int(1));
        assert_eq!(a.coeff(1, 2), &int(2));
        assert_eq!(a.coeff(1, 3), &int(1));
    }

    #[test]
    fn univariate_sequences() {
        assert_eq!(ints(univariate(WordClass::All, 7)), vec![2, 4, 12, 44, 180, 788, 3612, 17116]);
        assert_eq!(ints(univariate(WordClass::Indecomposable, 7)), vec![0, 1, 2, 6, 22, 90, 394, 1806]);
        assert_eq!(ints(univariate(WordClass::Decomposable, 7)), vec![0, 0, 1, 5, 23, 107, 509, 2473]);
    }

    #[test]
    fn substitution_identity_for_v1() {
        let s = series(WordClass::All, 4, 9);
        assert_eq!(s.compose_t(&run_series(RunCap::Finite(1), 9)), s);
    }

    #[test]
    fn infinite_run_cap_degree_one() {
        let t = reduce_to_v1(RunCap::Infinite, 1, 3);
        // x^a[x^b]x^c with b >= 1: 1, 3 and 6 words of arity 1, 2, 3
        assert_eq!([t.get(1, 1), t.get(1, 2), t.get(1, 3)], [1, 3, 6]);
    }
}
