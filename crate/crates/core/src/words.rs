// SPDX-License-Identifier: Apache-2.0

//! Bracketed words over a finite alphabet and the averaging-word normal form.
//!
//! A [`BracketedWord`] is a nonempty sequence of [`Factor`]s, each either a
//! letter or a bracketed subword raised to a positive power. Iterated
//! brackets are always stored in canonical power form: the core of a
//! [`Bracket`] is never itself a single bracket, so `[[x]]` and `[x]^2`
//! are the same value.
//!
//! The text grammar is
//!
//! ```text
//! word   := factor+
//! factor := IDENT | '[' word ']' power?
//! power  := '^' POSINT
//! IDENT  := [A-Za-z][A-Za-z0-9_]*
//! ```
//!
//! with whitespace ignored between factors. Because identifiers may span
//! several characters, the renderer separates two adjacent letters with a
//! single space (`x x[x]`) and emits no other whitespace.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

/// A generator symbol of the alphabet.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(Arc<str>);

impl Letter {
    pub fn new(symbol: &str) -> Result<Letter, ParseError> {
        let mut chars = symbol.chars();
        match chars.next() {
            Some(c) if c.is_ascii_alphabetic() => {}
            Some(c) => return Err(ParseError::Unexpected { pos: 0, found: c }),
            None => return Err(ParseError::EmptyWord),
        }
        for (i, c) in chars.enumerate() {
            if !(c.is_ascii_alphanumeric() || c == '_') {
                return Err(ParseError::Unexpected { pos: i + 1, found: c });
            }
        }
        Ok(Letter(Arc::from(symbol)))
    }

    /// The single generator `x` used by all one-letter constructions.
    pub fn x() -> Letter {
        Letter(Arc::from("x"))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// `⌊core⌋^(power)` with `power >= 1` and `core` not a single bracket.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bracket {
    core: Arc<BracketedWord>,
    power: u32,
}

impl Bracket {
    /// Wraps `core` in `power` brackets, merging with a bracket that already
    /// forms the whole of `core`.
    ///
    /// Panics if `power` is zero.
    pub fn new(core: BracketedWord, power: u32) -> Bracket {
        assert!(power >= 1, "bracket power must be positive");
        if core.factors.len() == 1 {
            if let Factor::Bracket(inner) = &core.factors[0] {
                return Bracket {
                    core: inner.core.clone(),
                    power: inner.power + power,
                };
            }
        }
        Bracket {
            core: Arc::new(core),
            power,
        }
    }

    pub fn core(&self) -> &BracketedWord {
        &self.core
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    /// The same bracket with a different power.
    pub fn with_power(&self, power: u32) -> Bracket {
        assert!(power >= 1, "bracket power must be positive");
        Bracket {
            core: self.core.clone(),
            power,
        }
    }
}

impl fmt::Debug for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", Factor::Bracket(self.clone()))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Factor {
    Letter(Letter),
    Bracket(Bracket),
}

impl Factor {
    pub fn is_bracket(&self) -> bool {
        matches!(self, Factor::Bracket(_))
    }

    pub fn as_bracket(&self) -> Option<&Bracket> {
        match self {
            Factor::Bracket(b) => Some(b),
            Factor::Letter(_) => None,
        }
    }

    fn depth(&self) -> usize {
        match self {
            Factor::Letter(_) => 0,
            Factor::Bracket(b) => b.core.depth() + b.power as usize,
        }
    }

    fn degree(&self) -> usize {
        match self {
            Factor::Letter(_) => 0,
            Factor::Bracket(b) => b.core.degree() + b.power as usize,
        }
    }

    fn arity(&self) -> usize {
        match self {
            Factor::Letter(_) => 1,
            Factor::Bracket(b) => b.core.arity(),
        }
    }

    fn size(&self) -> usize {
        match self {
            Factor::Letter(_) => 1,
            Factor::Bracket(b) => b.core.size() + b.power as usize,
        }
    }
}

impl fmt::Debug for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Letter(l) => write!(f, "{l}"),
            Factor::Bracket(b) => {
                write!(f, "[{}]", b.core)?;
                if b.power > 1 {
                    write!(f, "^{}", b.power)?;
                }
                Ok(())
            }
        }
    }
}

/// An element of the free operated semigroup on an alphabet.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BracketedWord {
    factors: Vec<Factor>,
}

impl BracketedWord {
    /// Builds a word from its standard factors. Returns `None` for an empty
    /// factor list.
    pub fn from_factors(factors: Vec<Factor>) -> Option<BracketedWord> {
        if factors.is_empty() {
            None
        } else {
            Some(BracketedWord { factors })
        }
    }

    pub fn letter(letter: Letter) -> BracketedWord {
        BracketedWord {
            factors: vec![Factor::Letter(letter)],
        }
    }

    /// `x^n` over the single generator.
    pub fn x_run(n: usize) -> BracketedWord {
        assert!(n >= 1);
        BracketedWord {
            factors: vec![Factor::Letter(Letter::x()); n],
        }
    }

    /// `⌊self⌋^(power)` as a one-factor word.
    pub fn bracketed(self, power: u32) -> BracketedWord {
        BracketedWord {
            factors: vec![Factor::Bracket(Bracket::new(self, power))],
        }
    }

    pub fn concat(&self, other: &BracketedWord) -> BracketedWord {
        let mut factors = Vec::with_capacity(self.factors.len() + other.factors.len());
        factors.extend_from_slice(&self.factors);
        factors.extend_from_slice(&other.factors);
        BracketedWord { factors }
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn into_factors(self) -> Vec<Factor> {
        self.factors
    }

    pub fn breadth(&self) -> usize {
        self.factors.len()
    }

    pub fn first(&self) -> &Factor {
        &self.factors[0]
    }

    pub fn last(&self) -> &Factor {
        &self.factors[self.factors.len() - 1]
    }

    /// 0 when the first standard factor is a letter, 1 when it is a bracket.
    pub fn head(&self) -> u8 {
        self.first().is_bracket() as u8
    }

    /// 0 when the last standard factor is a letter, 1 when it is a bracket.
    pub fn tail(&self) -> u8 {
        self.last().is_bracket() as u8
    }

    /// Nesting depth; `⌊u⌋^(s)` has depth `depth(u) + s`.
    pub fn depth(&self) -> usize {
        self.factors.iter().map(Factor::depth).max().unwrap_or(0)
    }

    /// Number of bracket pairs, counting a power `s` as `s` pairs.
    pub fn degree(&self) -> usize {
        self.factors.iter().map(Factor::degree).sum()
    }

    /// Number of letter occurrences.
    pub fn arity(&self) -> usize {
        self.factors.iter().map(Factor::arity).sum()
    }

    /// Letters plus bracket pairs.
    pub fn size(&self) -> usize {
        self.factors.iter().map(Factor::size).sum()
    }

    /// Letter occurrences from left to right.
    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::with_capacity(self.arity());
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters(&self, out: &mut Vec<Letter>) {
        for f in &self.factors {
            match f {
                Factor::Letter(l) => out.push(l.clone()),
                Factor::Bracket(b) => b.core.collect_letters(out),
            }
        }
    }

    /// True when every letter is `x`.
    pub fn is_single_generator(&self) -> bool {
        self.letters().iter().all(|l| l.as_str() == "x")
    }

    /// Replaces the `index`-th letter occurrence (0-based, left to right) by
    /// `replacement`, splicing its factors in place. Returns `None` if there
    /// are not enough letters.
    pub fn substitute_letter(&self, index: usize, replacement: &BracketedWord) -> Option<BracketedWord> {
        let mut remaining = index;
        substitute_in(&self.factors, &mut remaining, replacement).map(|factors| BracketedWord { factors })
    }
}

fn substitute_in(factors: &[Factor], remaining: &mut usize, replacement: &BracketedWord) -> Option<Vec<Factor>> {
    for (i, f) in factors.iter().enumerate() {
        match f {
            Factor::Letter(_) => {
                if *remaining == 0 {
                    let mut out = Vec::with_capacity(factors.len() + replacement.breadth());
                    out.extend_from_slice(&factors[..i]);
                    out.extend_from_slice(&replacement.factors);
                    out.extend_from_slice(&factors[i + 1..]);
                    return Some(out);
                }
                *remaining -= 1;
            }
            Factor::Bracket(b) => {
                let arity = b.core.arity();
                if *remaining < arity {
                    let inner = substitute_in(&b.core.factors, remaining, replacement)?;
                    let core = BracketedWord { factors: inner };
                    let mut out = factors.to_vec();
                    out[i] = Factor::Bracket(Bracket::new(core, b.power));
                    return Some(out);
                }
                *remaining -= arity;
            }
        }
    }
    None
}

impl fmt::Display for BracketedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut prev_letter = false;
        for factor in &self.factors {
            let is_letter = !factor.is_bracket();
            if is_letter && prev_letter {
                f.write_str(" ")?;
            }
            write!(f, "{factor}")?;
            prev_letter = is_letter;
        }
        Ok(())
    }
}

impl fmt::Debug for BracketedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BracketedWord({self})")
    }
}

impl FromStr for BracketedWord {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s)
    }
}

/// Canonical rendering of a word.
pub fn render_word(w: &BracketedWord) -> String {
    w.to_string()
}

/// Canonical word order: degree, then arity, then rendered text.
pub fn canonical_cmp(a: &BracketedWord, b: &BracketedWord) -> Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.arity().cmp(&b.arity()))
        .then_with(|| a.to_string().cmp(&b.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected character {found:?} at position {pos}")]
    Unexpected { pos: usize, found: char },
    #[error("unexpected end of input at position {pos}: expected {expected}")]
    UnexpectedEnd { pos: usize, expected: &'static str },
    #[error("bracket power must be a positive integer at position {pos}")]
    ZeroPower { pos: usize },
    #[error("bracket power out of range at position {pos}")]
    PowerOverflow { pos: usize },
    #[error("empty bracket at position {pos}")]
    EmptyBracket { pos: usize },
    #[error("empty word")]
    EmptyWord,
}

impl ParseError {
    /// Character position of the error, when it has one.
    pub fn position(&self) -> Option<usize> {
        match self {
            ParseError::Unexpected { pos, .. }
            | ParseError::UnexpectedEnd { pos, .. }
            | ParseError::ZeroPower { pos }
            | ParseError::PowerOverflow { pos }
            | ParseError::EmptyBracket { pos } => Some(*pos),
            ParseError::EmptyWord => None,
        }
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    _src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            chars: src.chars().collect(),
            pos: 0,
            _src: src,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    /// Parses `factor*` until `]` or end of input.
    fn factors(&mut self) -> Result<Vec<Factor>, ParseError> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(']') => return Ok(out),
                Some('[') => {
                    let open = self.pos;
                    self.pos += 1;
                    let inner = self.factors()?;
                    match self.peek() {
                        Some(']') => self.pos += 1,
                        _ => {
                            return Err(ParseError::UnexpectedEnd {
                                pos: self.pos,
                                expected: "']'",
                            })
                        }
                    }
                    if inner.is_empty() {
                        return Err(ParseError::EmptyBracket { pos: open });
                    }
                    let power = self.power()?;
                    out.push(Factor::Bracket(Bracket::new(BracketedWord { factors: inner }, power)));
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let start = self.pos;
                    while let Some(c) = self.peek() {
                        if c.is_ascii_alphanumeric() || c == '_' {
                            self.pos += 1;
                        } else {
                            break;
                        }
                    }
                    let ident: String = self.chars[start..self.pos].iter().collect();
                    out.push(Factor::Letter(Letter(Arc::from(ident.as_str()))));
                }
                Some(c) => return Err(ParseError::Unexpected { pos: self.pos, found: c }),
            }
        }
    }

    fn power(&mut self) -> Result<u32, ParseError> {
        if self.peek() != Some('^') {
            return Ok(1);
        }
        self.pos += 1;
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return match self.peek() {
                Some(c) => Err(ParseError::Unexpected { pos: self.pos, found: c }),
                None => Err(ParseError::UnexpectedEnd {
                    pos: self.pos,
                    expected: "a positive power",
                }),
            };
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        let value: u32 = digits.parse().map_err(|_| ParseError::PowerOverflow { pos: start })?;
        if value == 0 {
            return Err(ParseError::ZeroPower { pos: start });
        }
        Ok(value)
    }
}

/// Parses the word grammar into canonical power form.
pub fn parse_word(text: &str) -> Result<BracketedWord, ParseError> {
    let mut p = Parser::new(text);
    let factors = p.factors()?;
    if let Some(c) = p.peek() {
        return Err(ParseError::Unexpected { pos: p.pos, found: c });
    }
    BracketedWord::from_factors(factors).ok_or(ParseError::EmptyWord)
}

/// A block of the block decomposition: a maximal run of letters, or a
/// single bracket factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Block {
    Run(Vec<Letter>),
    Bracket(Bracket),
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Block::Run(letters) => {
                let parts: Vec<&str> = letters.iter().map(Letter::as_str).collect();
                f.write_str(&parts.join(" "))
            }
            Block::Bracket(b) => write!(f, "{}", Factor::Bracket(b.clone())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordAnalysis {
    pub depth: usize,
    pub breadth: usize,
    pub head: u8,
    pub tail: u8,
    pub standard_factors: Vec<Factor>,
    pub block_factors: Vec<Block>,
}

impl WordAnalysis {
    /// Factors are rendered in the word syntax.
    pub fn to_json(&self) -> serde_json::Value {
        let render = |items: Vec<String>| serde_json::Value::from(items);
        serde_json::json!({
            "depth": self.depth,
            "breadth": self.breadth,
            "head": self.head,
            "tail": self.tail,
            "standard_factors": render(self.standard_factors.iter().map(ToString::to_string).collect()),
            "block_factors": render(self.block_factors.iter().map(ToString::to_string).collect()),
        })
    }
}

pub fn analyze(w: &BracketedWord) -> WordAnalysis {
    let mut blocks = Vec::new();
    let mut run: Vec<Letter> = Vec::new();
    for f in w.factors() {
        match f {
            Factor::Letter(l) => run.push(l.clone()),
            Factor::Bracket(b) => {
                if !run.is_empty() {
                    blocks.push(Block::Run(std::mem::take(&mut run)));
                }
                blocks.push(Block::Bracket(b.clone()));
            }
        }
    }
    if !run.is_empty() {
        blocks.push(Block::Run(run));
    }
    WordAnalysis {
        depth: w.depth(),
        breadth: w.breadth(),
        head: w.head(),
        tail: w.tail(),
        standard_factors: w.factors().to_vec(),
        block_factors: blocks,
    }
}

/// The three subword shapes excluded from averaging words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pattern {
    /// `⌊u⌋⌊v⌋`
    AdjacentBrackets,
    /// `⌊⌊u⌋v⌋` with `v` nonempty
    BracketHeaded,
    /// `⌊u⌊v⌋^(s)⌋` with `u` nonempty and `s >= 2`
    PowerTail,
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pattern::AdjacentBrackets => "AdjacentBrackets",
            Pattern::BracketHeaded => "BracketHeaded",
            Pattern::PowerTail => "PowerTail",
        })
    }
}

/// A forbidden subword occurrence.
///
/// `path` lists factor indices descending through bracket cores; its last
/// entry is the offending bracket (for `AdjacentBrackets`, the left one of
/// the pair).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub pattern: Pattern,
    pub path: Vec<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {:?}", self.pattern, self.path)
    }
}

/// Scans in post-order so that an occurrence is reported only after every
/// occurrence nested inside it, left to right.
fn scan(factors: &[Factor], path: &mut Vec<usize>) -> Option<Violation> {
    for (i, f) in factors.iter().enumerate() {
        if let Factor::Bracket(b) = f {
            path.push(i);
            if let Some(v) = scan(&b.core.factors, path) {
                return Some(v);
            }
            let core = &b.core.factors;
            if core.len() >= 2 {
                if core[0].is_bracket() {
                    return Some(Violation {
                        pattern: Pattern::BracketHeaded,
                        path: path.clone(),
                    });
                }
                if let Some(last) = core[core.len() - 1].as_bracket() {
                    if last.power >= 2 {
                        return Some(Violation {
                            pattern: Pattern::PowerTail,
                            path: path.clone(),
                        });
                    }
                }
            }
            path.pop();
            if i >= 1 && factors[i - 1].is_bracket() {
                let mut p = path.clone();
                p.push(i - 1);
                return Some(Violation {
                    pattern: Pattern::AdjacentBrackets,
                    path: p,
                });
            }
        }
    }
    None
}

/// Returns the leftmost-innermost forbidden occurrence, if any.
pub fn find_violation(w: &BracketedWord) -> Option<Violation> {
    scan(&w.factors, &mut Vec::new())
}

/// A bracketed word with no forbidden subword; a basis element of the free
/// averaging algebra.
///
/// Ordered by the canonical word order (degree, arity, rendered text).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AveragingWord(BracketedWord);

impl AveragingWord {
    /// Wraps without checking. Callers inside the crate guarantee validity.
    pub(crate) fn new_unchecked(w: BracketedWord) -> AveragingWord {
        debug_assert!(find_violation(&w).is_none(), "not an averaging word: {w}");
        AveragingWord(w)
    }

    pub fn letter(l: Letter) -> AveragingWord {
        AveragingWord(BracketedWord::letter(l))
    }

    pub fn x() -> AveragingWord {
        AveragingWord::letter(Letter::x())
    }

    pub fn word(&self) -> &BracketedWord {
        &self.0
    }

    pub fn into_word(self) -> BracketedWord {
        self.0
    }

    /// Splits off the standard factors `[..k]` and `[k..]`; both halves are
    /// averaging words.
    pub fn split_at(&self, k: usize) -> Option<(AveragingWord, AveragingWord)> {
        if k == 0 || k >= self.0.breadth() {
            return None;
        }
        let left = BracketedWord::from_factors(self.0.factors[..k].to_vec())?;
        let right = BracketedWord::from_factors(self.0.factors[k..].to_vec())?;
        Some((AveragingWord(left), AveragingWord(right)))
    }
}

impl std::ops::Deref for AveragingWord {
    type Target = BracketedWord;

    fn deref(&self) -> &BracketedWord {
        &self.0
    }
}

impl PartialOrd for AveragingWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AveragingWord {
    fn cmp(&self, other: &Self) -> Ordering {
        canonical_cmp(&self.0, &other.0)
    }
}

impl fmt::Display for AveragingWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for AveragingWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AveragingWord({})", self.0)
    }
}

impl TryFrom<BracketedWord> for AveragingWord {
    type Error = Violation;

    fn try_from(w: BracketedWord) -> Result<Self, Violation> {
        validate_averaging(w)
    }
}

impl FromStr for AveragingWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, WordError> {
        let w = parse_word(s)?;
        Ok(validate_averaging(w)?)
    }
}

pub fn validate_averaging(w: BracketedWord) -> Result<AveragingWord, Violation> {
    match find_violation(&w) {
        Some(v) => Err(v),
        None => Ok(AveragingWord(w)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("not an averaging word: {0}")]
    NotAveraging(#[from] Violation),
    #[error("cannot peel a word of breadth {breadth} and head {head}")]
    NotPeelable { breadth: usize, head: u8 },
}

impl std::error::Error for Violation {}

/// Splits `⌊w'⌋^(s)` into `(w', s)`.
pub fn peel(w: &AveragingWord) -> Result<(AveragingWord, u32), WordError> {
    match w.factors() {
        [Factor::Bracket(b)] => Ok((AveragingWord((*b.core).clone()), b.power)),
        _ => Err(WordError::NotPeelable {
            breadth: w.breadth(),
            head: w.head(),
        }),
    }
}

/// All bracketed words over `alphabet` of size exactly `size`
/// (letters plus bracket pairs), in a deterministic order.
pub fn all_bracketed_words(alphabet: &[Letter], size: usize) -> Vec<BracketedWord> {
    let mut words: Vec<Vec<BracketedWord>> = vec![Vec::new()];
    let mut factors: Vec<Vec<Factor>> = vec![Vec::new()];
    for s in 1..=size {
        // factors of size s: letters when s == 1, otherwise brackets around words of size s-1
        let mut fs = Vec::new();
        if s == 1 {
            fs.extend(alphabet.iter().cloned().map(Factor::Letter));
        }
        for w in &words[s - 1] {
            fs.push(Factor::Bracket(Bracket::new(w.clone(), 1)));
        }
        factors.push(fs);
        // words of size s: first factor of size k, then a word of size s-k (or nothing)
        let mut ws = Vec::new();
        for k in 1..=s {
            for f in &factors[k] {
                if k == s {
                    ws.push(BracketedWord { factors: vec![f.clone()] });
                } else {
                    for rest in &words[s - k] {
                        let mut v = Vec::with_capacity(1 + rest.breadth());
                        v.push(f.clone());
                        v.extend_from_slice(&rest.factors);
                        ws.push(BracketedWord { factors: v });
                    }
                }
            }
        }
        words.push(ws);
    }
    words.swap_remove(size)
}

/// All averaging words over `alphabet` with at most `max_arity` letters and
/// degree at most `max_degree`, in canonical order.
pub fn all_averaging_words(alphabet: &[Letter], max_arity: usize, max_degree: usize) -> Vec<AveragingWord> {
    // size = arity + degree, so sizes beyond the sum cannot qualify
    let mut out: Vec<AveragingWord> = (1..=max_arity + max_degree)
        .flat_map(|size| all_bracketed_words(alphabet, size))
        .filter(|w| w.arity() <= max_arity && w.degree() <= max_degree)
        .filter_map(|w| validate_averaging(w).ok())
        .collect();
    out.sort();
    out
}
