//! Machine-readable summaries emitted by the `--json` flag.
//!
//! Every map in these types is a [`BTreeMap`] and every polynomial or
//! rational is rendered through its canonical display form, so serialized
//! output is byte-for-byte deterministic for a given input.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

/// One verified relation of a demo run.
#[derive(Debug, Clone, Serialize)]
pub struct RelationReport {
    /// Demo name (`weyl`, `clifford`, …).
    pub demo: String,
    /// The relation that was checked, in display form.
    pub relation: String,
    /// Truncation order the check ran at.
    pub order: u32,
    /// `"PASS"` or `"FAIL"`.
    pub status: String,
}

/// Summary of a `check` run.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    /// Path of the input file.
    pub input: String,
    /// Obstruction coefficients keyed by concatenated indices (`"123"`).
    pub obstruction_coeffs: BTreeMap<String, String>,
    /// `"pass"` if the Jacobi identity holds, `"fail"` otherwise.
    pub jacobi: String,
    /// `"POISSON"`, `"NOT-POISSON"`, or `"ENGINE-DISAGREEMENT"`.
    pub verdict: String,
}

/// Summary of a `solve-d3` run.
#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    /// Path of the input file.
    pub input: String,
    /// The coefficient the equation was built from.
    pub a13: String,
    /// The solved coefficient.
    pub a23: String,
    /// Degree bound the residual was checked under.
    pub order: u32,
    /// The residual of the defining equation, reduced below `order`.
    pub residual: String,
    /// Where the solution file was written.
    pub solution_path: String,
}

/// Summary of a `factor` run.
#[derive(Debug, Clone, Serialize)]
pub struct FactorReport {
    /// Path of the input file.
    pub input: String,
    /// `"FACTORED"`, `"REJECTED"`, or `"INCONCLUSIVE"`.
    pub outcome: String,
    /// The factors (present only when factored), keyed
    /// `phi`/`f1`/`f2`/`f3`.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub factors: BTreeMap<String, String>,
    /// The violated separated condition (present only when rejected).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub condition: Option<String>,
    /// Why no verdict was reached (present only when inconclusive).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

/// Summary of a `search-d4` run.
#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    /// Path of the family file.
    pub input: String,
    /// `"WITNESS"` or `"EXHAUSTED"`.
    pub outcome: String,
    /// Index of the witness record in the family file (0-based).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    /// The index triple whose obstruction coefficient survives.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub triple: Option<String>,
    /// The surviving coefficient, in display form.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficient: Option<String>,
    /// How many admissible candidates were scanned (exhaustion only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub admissible: Option<usize>,
    /// How many candidates failed the preconditions (exhaustion only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<usize>,
}

/// Writes `value` to `path` as pretty-printed JSON with a trailing newline.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> std::io::Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    let mut file = std::fs::File::create(path)?;
    file.write_all(text.as_bytes())
}
