// SPDX-License-Identifier: Apache-2.0

//! Batch front end. [`run`] parses an argument vector, calls the library
//! and returns the JSON payload together with an exit status; `main` only
//! prints.

use std::fmt;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use averaging_core::algebra::{default_budget, reduce, rewrite_reduce_with, LinearCombination, Strategy};
use averaging_core::enumeration::{
    census, schroeder, series, tables_to_json, CensusOptions, RunCap, WordClass, DEFAULT_CENSUS_BUDGET,
};
use averaging_core::instances::{check_averaging, check_reynolds, FiniteAlgebra};
use averaging_core::operad::compose;
use averaging_core::trees::{
    enumerate_schroeder_with_budget, phi, phi_inverse, psi_inverse, AveragingTree, TreeError, DEFAULT_TREE_BUDGET,
};
use averaging_core::words::{analyze, parse_word, AveragingWord, WordError};

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "AVERAGING_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Error,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Usage,
    Parse,
    Budget,
    Invariant,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Usage => 1,
            ErrorKind::Parse => 2,
            ErrorKind::Budget => 3,
            ErrorKind::Invariant => 4,
        }
    }

    fn name(self) -> &'static str {
        match self {
            ErrorKind::Usage => "usage",
            ErrorKind::Parse => "parse",
            ErrorKind::Budget => "budget",
            ErrorKind::Invariant => "invariant",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub diagnostics: String,
    /// Set when `status` is `Error`.
    pub kind: Option<ErrorKind>,
}

impl CommandResult {
    fn ok(payload: Value) -> Self {
        CommandResult {
            status: Status::Ok,
            payload,
            diagnostics: String::new(),
            kind: None,
        }
    }

    fn error(e: CliError) -> Self {
        let mut err = json!({ "kind": e.kind.name(), "message": e.message });
        if let Some(p) = e.position {
            err["position"] = json!(p);
        }
        CommandResult {
            status: Status::Error,
            payload: json!({ "error": err }),
            diagnostics: e.message,
            kind: Some(e.kind),
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.kind.map_or(0, ErrorKind::exit_code)
    }

    /// Text for stdout: raw text for csv/text payloads, JSON otherwise.
    pub fn stdout(&self) -> String {
        match &self.payload {
            Value::String(s) => s.clone(),
            v => format!("{}\n", serde_json::to_string_pretty(v).expect("serializable")),
        }
    }
}

#[derive(Debug)]
struct CliError {
    kind: ErrorKind,
    message: String,
    position: Option<usize>,
}

impl CliError {
    fn new(kind: ErrorKind, message: impl fmt::Display) -> Self {
        CliError {
            kind,
            message: message.to_string(),
            position: None,
        }
    }

    fn at(mut self, position: Option<usize>) -> Self {
        self.position = position;
        self
    }
}

impl From<WordError> for CliError {
    fn from(e: WordError) -> Self {
        let pos = match &e {
            WordError::Parse(p) => p.position(),
            _ => None,
        };
        CliError::new(ErrorKind::Parse, e).at(pos)
    }
}

impl From<TreeError> for CliError {
    fn from(e: TreeError) -> Self {
        match &e {
            TreeError::BudgetExceeded { .. } => CliError::new(ErrorKind::Budget, e),
            TreeError::Term(t) => CliError::new(ErrorKind::Parse, &e).at(Some(t.position())),
            TreeError::InvalidSize(_) => CliError::new(ErrorKind::Usage, e),
            _ => CliError::new(ErrorKind::Parse, e),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "averaging", version, about = "Free averaging algebras, their enumeration and trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduce a bracketed word to its averaging normal form.
    Normalize {
        word: String,
        /// Use the rewriting rules and report the step count.
        #[arg(long)]
        rewrite: bool,
        /// Rewrite step budget (default 10 * size^2).
        #[arg(long)]
        budget: Option<usize>,
    },
    /// The product of two averaging words or linear combinations.
    Product { left: String, right: String },
    /// Apply the averaging operator to a word or linear combination.
    #[command(name = "apply-p")]
    ApplyP { input: String },
    /// Depth, breadth, head, tail and factorizations of a bracketed word.
    Analyze { word: String },
    /// Count averaging words over {x} with an idempotent operator.
    Census {
        #[arg(long, default_value = "1")]
        run_cap: RunCap,
        #[arg(long)]
        max_degree: usize,
        /// Defaults to run_cap * (2 * max_degree + 1), the largest possible arity.
        #[arg(long)]
        max_arity: Option<usize>,
        /// Count the empty word in degree 0.
        #[arg(long)]
        include_one: bool,
        /// Restrict output to one class.
        #[arg(long)]
        class: Option<WordClass>,
        /// List the words as well (json only).
        #[arg(long)]
        words: bool,
        #[arg(long, default_value_t = DEFAULT_CENSUS_BUDGET)]
        budget: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Coefficients of a generating series.
    Series {
        #[arg(long)]
        kind: WordClass,
        #[arg(long = "N")]
        n: usize,
        /// Defaults to 2N + 1.
        #[arg(long = "M")]
        m: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// The large Schröder number s_n.
    Schroeder {
        #[arg(long)]
        n: usize,
    },
    /// The averaging tree of a word over {x}.
    #[command(name = "word2tree")]
    WordToTree { word: String },
    /// The word over {x} of an averaging tree.
    #[command(name = "tree2word")]
    TreeToWord { tree: String },
    /// All Schröder trees with n ω-decorations and their words.
    #[command(name = "schroeder-trees")]
    SchroederTrees {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_TREE_BUDGET)]
        budget: usize,
    },
    /// Partial composition of averaging trees (trees or words over {x}).
    Compose { left: String, index: usize, right: String },
    /// Check the averaging identities on a finite algebra given as JSON.
    #[command(name = "check-instance")]
    CheckInstance { path: String },
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind as K;
            if matches!(e.kind(), K::DisplayHelp | K::DisplayVersion | K::DisplayHelpOnMissingArgumentOrSubcommand) {
                let mut r = CommandResult::ok(Value::String(e.to_string()));
                if e.kind() == K::DisplayHelpOnMissingArgumentOrSubcommand {
                    r = CommandResult::error(CliError::new(ErrorKind::Usage, e.render()));
                }
                return r;
            }
            return CommandResult::error(CliError::new(ErrorKind::Usage, e.render()));
        }
    };
    match execute(cli.command) {
        Ok(payload) => CommandResult::ok(payload),
        Err(e) => CommandResult::error(e),
    }
}

/// Applies the thread count from [`THREADS_ENV`], if set.
pub fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().map_err(|_| format!("{THREADS_ENV} must be a positive integer, got {raw:?}"))?;
    if n == 0 {
        return Err(format!("{THREADS_ENV} must be positive"));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn averaging_word(s: &str) -> Result<AveragingWord, CliError> {
    Ok(s.parse::<AveragingWord>()?)
}

fn combination(s: &str) -> Result<LinearCombination, CliError> {
    s.parse::<LinearCombination>().map_err(|e| CliError::new(ErrorKind::Parse, e))
}

// A single word with coefficient 1 is also reported under "word".
fn combination_payload(input: Value, result: &LinearCombination) -> Value {
    let mut out = json!({ "input": input, "result": result.to_string(), "terms": result.to_json()["terms"] });
    let mut terms = result.terms();
    if let (Some((w, c)), None) = (terms.next(), terms.next()) {
        if *c == num_rational::BigRational::from_integer(1.into()) {
            out["word"] = json!(w.to_string());
        }
    }
    out
}

fn tree_or_word(s: &str) -> Result<AveragingTree, CliError> {
    match s.parse::<AveragingTree>() {
        Ok(t) => Ok(t),
        Err(TreeError::Term(_)) => Ok(phi(&averaging_word(s)?)?),
        Err(e) => Err(e.into()),
    }
}

fn tree_payload(t: &AveragingTree) -> Value {
    json!({ "tree": t.to_string(), "word": phi_inverse(t).to_string(), "arity": t.leaf_count() })
}

fn formatted(format: Format, json: impl FnOnce() -> Value, csv: impl FnOnce() -> String, text: impl FnOnce() -> String) -> Value {
    match format {
        Format::Json => json(),
        Format::Csv => Value::String(csv()),
        Format::Text => Value::String(text()),
    }
}

fn execute(command: Command) -> Result<Value, CliError> {
    match command {
        Command::Normalize { word, rewrite, budget } => {
            let w = parse_word(&word).map_err(|e| {
                let pos = e.position();
                CliError::new(ErrorKind::Parse, e).at(pos)
            })?;
            if rewrite {
                let budget = budget.unwrap_or_else(|| default_budget(&w));
                let out = rewrite_reduce_with(&w, Strategy::default(), budget)
                    .map_err(|e| CliError::new(ErrorKind::Budget, e))?;
                if out.normal_form != reduce(&w) {
                    return Err(CliError::new(ErrorKind::Invariant, "rewriting and reduction disagree"));
                }
                Ok(json!({ "input": word, "normal_form": out.normal_form.to_string(), "steps": out.steps }))
            } else {
                Ok(json!({ "input": word, "normal_form": reduce(&w).to_string() }))
            }
        }
        Command::Product { left, right } => {
            let (a, b) = (combination(&left)?, combination(&right)?);
            Ok(combination_payload(json!([left, right]), &a.product(&b)))
        }
        Command::ApplyP { input } => {
            let a = combination(&input)?;
            Ok(combination_payload(json!(input), &a.apply_p()))
        }
        Command::Analyze { word } => {
            let w = parse_word(&word).map_err(|e| {
                let pos = e.position();
                CliError::new(ErrorKind::Parse, e).at(pos)
            })?;
            let mut out = analyze(&w).to_json();
            out["input"] = json!(word);
            out["averaging"] = json!(averaging_core::words::find_violation(&w).is_none());
            out["normal_form"] = json!(reduce(&w).to_string());
            Ok(out)
        }
        Command::Census {
            run_cap,
            max_degree,
            max_arity,
            include_one,
            class,
            words,
            budget,
            format,
        } => {
            let max_arity = match (max_arity, run_cap) {
                (Some(m), _) => m,
                (None, RunCap::Finite(v)) => v * (2 * max_degree + 1),
                (None, RunCap::Infinite) => {
                    return Err(CliError::new(ErrorKind::Usage, "--max-arity is required with --run-cap inf"))
                }
            };
            let opts = CensusOptions::new(run_cap, max_degree, max_arity)
                .include_one(include_one)
                .keep_words(words)
                .budget(budget);
            let c = census(&opts).map_err(|e| CliError::new(ErrorKind::Budget, e))?;
            let mut tables = c.tables.clone();
            if let Some(k) = class {
                tables.retain(|c, _| *c == k);
            }
            Ok(formatted(
                format,
                || {
                    let totals: serde_json::Map<String, Value> =
                        tables.iter().map(|(k, t)| (k.letter().to_string(), json!(t.degree_totals()))).collect();
                    let mut out = json!({
                        "run_cap": run_cap,
                        "max_degree": max_degree,
                        "max_arity": max_arity,
                        "include_one": include_one,
                        "degree_totals": totals,
                        "tables": tables_to_json(&tables),
                    });
                    if let Some(ws) = &c.words {
                        let listed: serde_json::Map<String, Value> = ws
                            .iter()
                            .filter(|(k, _)| tables.contains_key(k))
                            .map(|(k, v)| (k.letter().to_string(), json!(v.iter().map(ToString::to_string).collect::<Vec<_>>())))
                            .collect();
                        out["words"] = Value::Object(listed);
                    }
                    out
                },
                || {
                    let mut s = String::from("class,n,m,count\n");
                    for (k, t) in &tables {
                        for (n, m, count) in t.rows() {
                            s.push_str(&format!("{k},{n},{m},{count}\n"));
                        }
                    }
                    s
                },
                || tables.values().map(ToString::to_string).collect::<Vec<_>>().join("\n"),
            ))
        }
        Command::Series { kind, n, m, format } => {
            let s = series(kind, n, m.unwrap_or(2 * n + 1));
            Ok(formatted(
                format,
                || {
                    let mut v = s.to_json();
                    v["kind"] = json!(kind.letter());
                    v
                },
                || s.to_csv(),
                || s.to_count_table(kind, RunCap::Finite(1), false).to_string(),
            ))
        }
        Command::Schroeder { n } => {
            let s = schroeder(n);
            let value = u64::try_from(&s).map_or_else(|_| json!(s.to_string()), |v| json!(v));
            Ok(json!({ "n": n, "schroeder": value }))
        }
        Command::WordToTree { word } => {
            let w = averaging_word(&word)?;
            Ok(tree_payload(&phi(&w)?))
        }
        Command::TreeToWord { tree } => {
            let t: AveragingTree = tree.parse()?;
            Ok(tree_payload(&t))
        }
        Command::SchroederTrees { n, budget } => {
            let trees = enumerate_schroeder_with_budget(n, budget)?;
            let listed: Vec<Value> = trees
                .iter()
                .map(|t| Ok(json!({ "tree": t.to_string(), "word": psi_inverse(t)?.to_string() })))
                .collect::<Result<_, TreeError>>()?;
            Ok(json!({ "n": n, "count": trees.len(), "trees": listed }))
        }
        Command::Compose { left, index, right } => {
            let (a, b) = (tree_or_word(&left)?, tree_or_word(&right)?);
            let c = compose(&a, index, &b).map_err(|e| CliError::new(ErrorKind::Usage, e))?;
            if c.leaf_count() != a.leaf_count() + b.leaf_count() - 1 {
                return Err(CliError::new(ErrorKind::Invariant, "composition changed the arity count"));
            }
            let mut out = tree_payload(&c);
            out["left"] = json!(a.to_string());
            out["index"] = json!(index);
            out["right"] = json!(b.to_string());
            Ok(out)
        }
        Command::CheckInstance { path } => {
            let text = std::fs::read_to_string(&path).map_err(|e| CliError::new(ErrorKind::Usage, format!("{path}: {e}")))?;
            let value: Value = serde_json::from_str(&text).map_err(|e| CliError::new(ErrorKind::Parse, format!("{path}: {e}")))?;
            let alg = FiniteAlgebra::from_json(&value).map_err(|e| CliError::new(ErrorKind::Parse, e))?;
            let verdict = |r: Result<(), averaging_core::instances::Counterexample>| match r {
                Ok(()) => json!({ "holds": true }),
                Err(c) => json!({ "holds": false, "identity": c.identity, "basis_pair": [alg.basis()[c.i].clone(), alg.basis()[c.j].clone()] }),
            };
            Ok(json!({
                "dim": alg.dim(),
                "averaging": verdict(check_averaging(&alg)),
                "reynolds": verdict(check_reynolds(&alg)),
                "idempotent": alg.is_idempotent(),
            }))
        }
    }
}
