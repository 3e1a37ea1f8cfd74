// SPDX-License-Identifier: Apache-2.0

//! Exhaustive generation of averaging words over `{x}` with an idempotent
//! operator (every bracket power is 1) and x-runs of length at most `v`.
//!
//! The grammar, with `R` an x-run:
//!
//! ```text
//! AW  = 1 | B | C
//! C   = R | R B | B R | R B R
//! B   = I | D
//! I   = [Adm]
//! Adm = R | R B | R B R
//! D   = I R B
//! ```
//!
//! Every production is unambiguous, so each word is generated exactly once.

use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use super::{CountTable, EnumerationError, RunCap, WordClass};
use crate::words::{AveragingWord, Bracket, BracketedWord, Factor, Letter};

/// Default bound on the number of words materialized by one census.
pub const DEFAULT_CENSUS_BUDGET: usize = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusOptions {
    pub run_cap: RunCap,
    pub max_degree: usize,
    pub max_arity: usize,
    pub include_one: bool,
    pub keep_words: bool,
    pub budget: usize,
}

impl CensusOptions {
    pub fn new(run_cap: RunCap, max_degree: usize, max_arity: usize) -> Self {
        CensusOptions {
            run_cap,
            max_degree,
            max_arity,
            include_one: false,
            keep_words: false,
            budget: DEFAULT_CENSUS_BUDGET,
        }
    }

    pub fn include_one(mut self, yes: bool) -> Self {
        self.include_one = yes;
        self
    }

    pub fn keep_words(mut self, yes: bool) -> Self {
        self.keep_words = yes;
        self
    }

    pub fn budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }
}

#[derive(Clone, Debug)]
pub struct Census {
    pub options: CensusOptions,
    pub tables: BTreeMap<WordClass, CountTable>,
    /// Per class, the words in canonical order (the empty word is never
    /// listed). Present only when requested.
    pub words: Option<BTreeMap<WordClass, Vec<AveragingWord>>>,
}

impl Census {
    pub fn table(&self, class: WordClass) -> &CountTable {
        &self.tables[&class]
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Nt {
    B,
    I,
    D,
    C,
    Adm,
}

type Fragments = Rc<Vec<Vec<Factor>>>;

struct Generator {
    cap: RunCap,
    budget: usize,
    produced: usize,
    memo: HashMap<(Nt, usize, usize), Fragments>,
    x: Factor,
}

impl Generator {
    fn run(&self, len: usize) -> Vec<Factor> {
        vec![self.x.clone(); len]
    }

    fn run_lengths(&self, max: usize) -> std::ops::RangeInclusive<usize> {
        1..=self.cap.clamp(max)
    }

    fn charge(&mut self, n: usize) -> Result<(), EnumerationError> {
        self.produced += n;
        if self.produced > self.budget {
            return Err(EnumerationError::BudgetExceeded { budget: self.budget });
        }
        Ok(())
    }

    fn get(&mut self, nt: Nt, n: usize, m: usize) -> Result<Fragments, EnumerationError> {
        if let Some(f) = self.memo.get(&(nt, n, m)) {
            return Ok(f.clone());
        }
        let out = Rc::new(self.build(nt, n, m)?);
        self.charge(out.len())?;
        self.memo.insert((nt, n, m), out.clone());
        Ok(out)
    }

    // B(n, ·) with a leading run when `lead` and a trailing run when `trail`.
    fn runs_around_b(&mut self, n: usize, m: usize, lead: bool, trail: bool, out: &mut Vec<Vec<Factor>>) -> Result<(), EnumerationError> {
        let lead_lengths: Vec<usize> = if lead { self.run_lengths(m).collect() } else { vec![0] };
        for a in lead_lengths {
            let trail_lengths: Vec<usize> = if trail { self.run_lengths(m - a).collect() } else { vec![0] };
            for c in trail_lengths {
                if a + c >= m {
                    continue;
                }
                let bs = self.get(Nt::B, n, m - a - c)?;
                for b in bs.iter() {
                    let mut w = self.run(a);
                    w.extend_from_slice(b);
                    w.extend(self.run(c));
                    out.push(w);
                }
            }
        }
        Ok(())
    }

    fn build(&mut self, nt: Nt, n: usize, m: usize) -> Result<Vec<Vec<Factor>>, EnumerationError> {
        let mut out = Vec::new();
        match nt {
            Nt::B => {
                if n >= 1 {
                    out.extend(self.get(Nt::I, n, m)?.iter().cloned());
                    out.extend(self.get(Nt::D, n, m)?.iter().cloned());
                }
            }
            Nt::I => {
                if n >= 1 {
                    for adm in self.get(Nt::Adm, n - 1, m)?.iter() {
                        let core = BracketedWord::from_factors(adm.clone()).expect("nonempty");
                        out.push(vec![Factor::Bracket(Bracket::new(core, 1))]);
                    }
                }
            }
            Nt::Adm => {
                if n == 0 {
                    if m >= 1 && self.cap.admits(m) {
                        out.push(self.run(m));
                    }
                } else {
                    self.runs_around_b(n, m, true, false, &mut out)?;
                    self.runs_around_b(n, m, true, true, &mut out)?;
                }
            }
            Nt::D => {
                for n1 in 1..n {
                    for m1 in 1..m {
                        let left = self.get(Nt::I, n1, m1)?;
                        if left.is_empty() {
                            continue;
                        }
                        for a in self.run_lengths(m - m1) {
                            if m1 + a >= m {
                                continue;
                            }
                            let right = self.get(Nt::B, n - n1, m - m1 - a)?;
                            for l in left.iter() {
                                for r in right.iter() {
                                    let mut w = l.clone();
                                    w.extend(self.run(a));
                                    w.extend_from_slice(r);
                                    out.push(w);
                                }
                            }
                        }
                    }
                }
            }
            Nt::C => {
                if n == 0 {
                    if m >= 1 && self.cap.admits(m) {
                        out.push(self.run(m));
                    }
                } else {
                    self.runs_around_b(n, m, true, false, &mut out)?;
                    self.runs_around_b(n, m, false, true, &mut out)?;
                    self.runs_around_b(n, m, true, true, &mut out)?;
                }
            }
        }
        Ok(out)
    }
}

/// Generates every word of degree `≤ max_degree` and arity `≤ max_arity`
/// and tabulates the five classes.
pub fn census(options: &CensusOptions) -> Result<Census, EnumerationError> {
    let mut g = Generator {
        cap: options.run_cap,
        budget: options.budget,
        produced: 0,
        memo: HashMap::new(),
        x: Factor::Letter(Letter::x()),
    };
    let (nn, mm) = (options.max_degree, options.max_arity);
    let mut tables: BTreeMap<WordClass, CountTable> = WordClass::ALL
        .iter()
        .map(|&c| (c, CountTable::zeros(c, options.run_cap, options.include_one, nn, mm)))
        .collect();
    let mut words: BTreeMap<WordClass, Vec<AveragingWord>> = BTreeMap::new();
    if options.include_one {
        tables.get_mut(&WordClass::All).expect("present").set(0, 0, 1);
    }
    for n in 0..=nn {
        for m in 0..=mm {
            for (class, nt) in [
                (WordClass::Indecomposable, Nt::I),
                (WordClass::Decomposable, Nt::D),
                (WordClass::Associate, Nt::C),
            ] {
                let fs = g.get(nt, n, m)?;
                let count = fs.len() as u64;
                let derived: &[WordClass] = match class {
                    WordClass::Associate => &[WordClass::Associate, WordClass::All],
                    _ => &[class, WordClass::Bracketed, WordClass::All],
                };
                for &c in derived {
                    let t = tables.get_mut(&c).expect("present");
                    t.set(n, m, t.get(n, m) + count);
                }
                if options.keep_words {
                    for f in fs.iter() {
                        let w = AveragingWord::new_unchecked(BracketedWord::from_factors(f.clone()).expect("nonempty"));
                        for &c in derived {
                            words.entry(c).or_default().push(w.clone());
                        }
                    }
                }
            }
        }
    }
    let words = options.keep_words.then(|| {
        for c in WordClass::ALL {
            words.entry(c).or_default().sort();
        }
        words
    });
    Ok(Census {
        options: options.clone(),
        tables,
        words,
    })
}
