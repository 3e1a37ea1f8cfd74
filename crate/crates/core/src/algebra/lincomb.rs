// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{apply_p, diamond};
use crate::words::{AveragingWord, WordError};

/// A finite formal sum of averaging words with rational coefficients.
///
/// Zero coefficients are never stored, and terms iterate in canonical word
/// order.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LinearCombination {
    terms: BTreeMap<AveragingWord, BigRational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LincombError {
    #[error("bad coefficient {0:?}")]
    Coefficient(String),
    #[error("bad term {term:?}: {source}")]
    Word { term: String, source: WordError },
    #[error("empty term")]
    EmptyTerm,
    #[error("json: {0}")]
    Json(String),
}

impl LinearCombination {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(word: AveragingWord, coeff: BigRational) -> Self {
        let mut out = Self::zero();
        out.add_term(word, coeff);
        out
    }

    pub fn word(word: AveragingWord) -> Self {
        Self::monomial(word, BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AveragingWord, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &AveragingWord) -> BigRational {
        self.terms.get(w).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, word: AveragingWord, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(word);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect(),
        }
    }

    /// Bilinear extension of `⋄`.
    pub fn product(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(diamond(u, v), a * b);
            }
        }
        out
    }

    /// Linear extension of `P_X`.
    pub fn apply_p(&self) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            out.add_term(apply_p(u), a.clone());
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(JsonLincomb::from(self)).expect("serializable")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, LincombError> {
        let raw: JsonLincomb = serde_json::from_value(value.clone()).map_err(|e| LincombError::Json(e.to_string()))?;
        let mut out = Self::zero();
        for t in raw.terms {
            let c = parse_rational(&t.coeff)?;
            let w: AveragingWord = t.word.parse().map_err(|source| LincombError::Word {
                term: t.word.clone(),
                source,
            })?;
            out.add_term(w, c);
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    coeff: String,
    word: String,
}

#[derive(Serialize, Deserialize)]
struct JsonLincomb {
    terms: Vec<JsonTerm>,
}

impl From<&LinearCombination> for JsonLincomb {
    fn from(l: &LinearCombination) -> Self {
        JsonLincomb {
            terms: l
                .terms()
                .map(|(w, c)| JsonTerm {
                    coeff: c.to_string(),
                    word: w.to_string(),
                })
                .collect(),
        }
    }
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<BigRational, LincombError> {
    let bad = || LincombError::Coefficient(s.to_string());
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

impl From<AveragingWord> for LinearCombination {
    fn from(w: AveragingWord) -> Self {
        Self::word(w)
    }
}

impl Add for &LinearCombination {
    type Output = LinearCombination;
    fn add(self, rhs: &LinearCombination) -> LinearCombination {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LinearCombination {
    type Output = LinearCombination;
    fn sub(self, rhs: &LinearCombination) -> LinearCombination {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &LinearCombination {
    type Output = LinearCombination;
    fn neg(self) -> LinearCombination {
        self.scale(&-BigRational::one())
    }
}

impl Mul for &LinearCombination {
    type Output = LinearCombination;
    fn mul(self, rhs: &LinearCombination) -> LinearCombination {
        self.product(rhs)
    }
}

impl fmt::Display for LinearCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let coeff = if i == 0 {
                c.to_string()
            } else if c.is_negative() {
                f.write_str(" - ")?;
                (-c).to_string()
            } else {
                f.write_str(" + ")?;
                c.to_string()
            };
            write!(f, "{coeff}*{w}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for LinearCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// Splits on top-level '+'/'-' that separate terms; a sign directly after
// '*' or '/' would be a syntax error anyway, and brackets never contain
// signs.
fn split_terms(s: &str) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    let mut negative = false;
    let mut cur = String::new();
    for ch in s.chars() {
        if (ch == '+' || ch == '-') && !cur.trim().is_empty() {
            out.push((negative, std::mem::take(&mut cur)));
            negative = ch == '-';
        } else if ch == '-' && cur.trim().is_empty() {
            negative = !negative;
        } else if ch == '+' && cur.trim().is_empty() {
        } else {
            cur.push(ch);
        }
    }
    out.push((negative, cur));
    out
}

impl FromStr for LinearCombination {
    type Err = LincombError;

    /// Accepts `c1*w1 + c2*w2 - ...`; a missing coefficient means 1 and the
    /// literal `0` is the empty combination.
    fn from_str(s: &str) -> Result<Self, LincombError> {
        if s.trim() == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        for (negative, term) in split_terms(s) {
            let term = term.trim();
            if term.is_empty() {
                return Err(LincombError::EmptyTerm);
            }
            let (c, w) = match term.split_once('*') {
                Some((c, w)) => (parse_rational(c)?, w.trim()),
                None => (BigRational::one(), term),
            };
            let w: AveragingWord = w.parse().map_err(|source| LincombError::Word {
                term: term.to_string(),
                source,
            })?;
            out.add_term(w, if negative { -c } else { c });
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn lc(s: &str) -> LinearCombination {
        s.parse().unwrap()
    }

    #[test]
    fn product_of_monomials() {
        let a = LinearCombination::monomial("x".parse().unwrap(), q(2));
        let b = LinearCombination::monomial("[x]".parse().unwrap(), q(3));
        assert_eq!(a.product(&b).to_string(), "6*x[x]");
    }

    #[test]
    fn operator_is_linear() {
        assert_eq!(lc("x + [x]").apply_p().to_string(), "1*[x] + 1*[x]^2");
    }

    #[test]
    fn cancellation() {
        let x = lc("x");
        assert!((&x - &x).is_zero());
        assert_eq!((&x - &x).to_string(), "0");
    }

    #[test]
    fn text_round_trip() {
        let l = lc("3/2*[x]y - 2*x + y");
        assert_eq!(l.to_string(), "-2*x + 1*y + 3/2*[x]y");
        assert_eq!(lc(&l.to_string()), l);
        assert_eq!(lc("0"), LinearCombination::zero());
    }

    #[test]
    fn json_round_trip() {
        let l = lc("-1/3*[x[y]]^2 + 5*x");
        let j = l.to_json();
        assert_eq!(j["terms"][0]["coeff"], "5");
        assert_eq!(j["terms"][1]["word"], "[x[y]]^2");
        assert_eq!(LinearCombination::from_json(&j).unwrap(), l);
    }

    #[test]
    fn rejects_non_averaging_terms() {
        assert!(matches!("2*[x][x]".parse::<LinearCombination>(), Err(LincombError::Word { .. })));
        assert!(matches!("2/0*x".parse::<LinearCombination>(), Err(LincombError::Coefficient(_))));
    }
}
