// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::RunCap;

/// The word classes counted by the census and the series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum WordClass {
    /// All averaging words (`𝔞`, series `A`).
    All,
    /// Words beginning with a bracket and ending with a bracket (`b`, `B`).
    Bracketed,
    /// Bracketed words whose outer brackets are paired (`i`, `I`).
    Indecomposable,
    /// Bracketed words that are not indecomposable (`d`, `D`).
    Decomposable,
    /// Words beginning or ending with a letter (`c`, `C`).
    Associate,
}

impl WordClass {
    pub const ALL: [WordClass; 5] = [
        WordClass::All,
        WordClass::Bracketed,
        WordClass::Indecomposable,
        WordClass::Decomposable,
        WordClass::Associate,
    ];

    pub fn letter(self) -> &'static str {
        match self {
            WordClass::All => "A",
            WordClass::Bracketed => "B",
            WordClass::Indecomposable => "I",
            WordClass::Decomposable => "D",
            WordClass::Associate => "C",
        }
    }
}

impl fmt::Display for WordClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.letter())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown series kind {0:?}; expected one of I, B, D, C, A")]
pub struct WordClassError(String);

impl FromStr for WordClass {
    type Err = WordClassError;
    fn from_str(s: &str) -> Result<Self, WordClassError> {
        match s.trim() {
            "A" | "a" => Ok(WordClass::All),
            "B" | "b" => Ok(WordClass::Bracketed),
            "I" | "i" => Ok(WordClass::Indecomposable),
            "D" | "d" => Ok(WordClass::Decomposable),
            "C" | "c" => Ok(WordClass::Associate),
            _ => Err(WordClassError(s.to_string())),
        }
    }
}

/// Word counts indexed by (degree, arity) within `0..=max_degree` and
/// `0..=max_arity`. Every cell in range is present, zeros included.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountTable {
    pub class: WordClass,
    pub run_cap: RunCap,
    pub include_one: bool,
    pub max_degree: usize,
    pub max_arity: usize,
    #[serde(skip)]
    counts: Vec<Vec<u64>>,
}

#[derive(Serialize)]
struct Row {
    n: usize,
    m: usize,
    count: u64,
}

impl CountTable {
    pub fn zeros(class: WordClass, run_cap: RunCap, include_one: bool, max_degree: usize, max_arity: usize) -> Self {
        CountTable {
            class,
            run_cap,
            include_one,
            max_degree,
            max_arity,
            counts: vec![vec![0; max_arity + 1]; max_degree + 1],
        }
    }

    /// Zero outside the table's range.
    pub fn get(&self, n: usize, m: usize) -> u64 {
        self.counts.get(n).and_then(|r| r.get(m)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, n: usize, m: usize, count: u64) {
        self.counts[n][m] = count;
    }

    /// Σ over arity of row `n`.
    pub fn degree_total(&self, n: usize) -> u64 {
        self.counts.get(n).map_or(0, |r| r.iter().sum())
    }

    pub fn degree_totals(&self) -> Vec<u64> {
        (0..=self.max_degree).map(|n| self.degree_total(n)).collect()
    }

    /// `(n, m, count)` in row-major order.
    pub fn rows(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .flat_map(|(n, r)| r.iter().enumerate().map(move |(m, &c)| (n, m, c)))
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,m,count\n");
        for (n, m, c) in self.rows() {
            s.push_str(&format!("{n},{m},{c}\n"));
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("serializable");
        let rows: Vec<Row> = self.rows().map(|(n, m, count)| Row { n, m, count }).collect();
        v["rows"] = serde_json::to_value(rows).expect("serializable");
        v["degree_totals"] = serde_json::to_value(self.degree_totals()).expect("serializable");
        v
    }

    /// Cells where the two tables differ, over the common range.
    pub fn differences(&self, other: &CountTable) -> Vec<(usize, usize, u64, u64)> {
        let mut out = Vec::new();
        for n in 0..=self.max_degree.min(other.max_degree) {
            for m in 0..=self.max_arity.min(other.max_arity) {
                let (a, b) = (self.get(n, m), other.get(n, m));
                if a != b {
                    out.push((n, m, a, b));
                }
            }
        }
        out
    }
}

impl fmt::Display for CountTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} counts, run cap {}", self.class, self.run_cap)?;
        for (n, row) in self.counts.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(u64::to_string).collect();
            writeln!(f, "n={n}: {}  (total {})", cells.join(" "), self.degree_total(n))?;
        }
        Ok(())
    }
}

/// Groups cells of several tables by class, for output.
pub fn tables_to_json(tables: &BTreeMap<WordClass, CountTable>) -> serde_json::Value {
    serde_json::Value::Object(tables.iter().map(|(c, t)| (c.letter().to_string(), t.to_json())).collect())
}
