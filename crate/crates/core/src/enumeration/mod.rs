// SPDX-License-Identifier: Apache-2.0

//! Counting averaging words over a single generator with an idempotent
//! operator: compositions into x-runs, an exhaustive census, generating
//! series and the Schröder recursions.

mod census;
mod closed_form;
mod compositions;
mod runs;
mod schroeder;
mod series;
mod table;

pub use census::{census, Census, CensusOptions, DEFAULT_CENSUS_BUDGET};
pub use closed_form::{closed_form, closed_form_univariate};
pub use compositions::{compositions, Composition, RunCap, RunCapError};
pub use runs::{collapse_runs, expand_runs, RunError};
pub use schroeder::{indecomposable_sequence, schroeder, schroeder_sequence};
pub use series::{
    reduce_to_v1, reduce_to_v1_class, run_series, series, series_family, univariate, BivariateSeries, SeriesFamily,
};
pub use table::{tables_to_json, CountTable, WordClass, WordClassError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumerationError {
    #[error("enumeration exceeded its budget of {budget} generated objects")]
    BudgetExceeded { budget: usize },
}
