//! The parsed-dataset model: typed columns of tagged cells.
//!
//! Cells keep the verbatim source text alongside the parsed payload; precision
//! and compliance scoring work off the raw text, so nothing here is allowed to
//! normalize or reformat it.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ColumnType {
    Integer,
    Decimal,
    Text,
    Datetime,
    Latitude,
    Longitude,
    Boolean,
}

impl ColumnType {
    pub fn is_numeric(self) -> bool {
        matches!(
            self,
            ColumnType::Integer | ColumnType::Decimal | ColumnType::Latitude | ColumnType::Longitude
        )
    }

    pub fn is_geo(self) -> bool {
        matches!(self, ColumnType::Latitude | ColumnType::Longitude)
    }
}

/// A single cell: a tag plus the byte-exact source text.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum CellValue {
    Missing {
        raw: String,
    },
    Text {
        raw: String,
    },
    Number {
        raw: String,
        value: f64,
        significant_digits: u32,
        decimal_places: u32,
    },
    Datetime {
        raw: String,
        epoch_seconds: i64,
        /// Index into the run configuration's ordered datetime format list.
        format_id: usize,
    },
    Geo {
        raw: String,
        degrees: f64,
    },
}

impl CellValue {
    pub fn raw(&self) -> &str {
        match self {
            CellValue::Missing { raw }
            | CellValue::Text { raw }
            | CellValue::Number { raw, .. }
            | CellValue::Datetime { raw, .. }
            | CellValue::Geo { raw, .. } => raw,
        }
    }

    pub fn is_missing(&self) -> bool {
        matches!(self, CellValue::Missing { .. })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub raw_name: String,
    pub normalized_name: String,
    pub inferred_type: ColumnType,
    pub cells: Vec<CellValue>,
    pub missing_count: usize,
}

impl Column {
    pub fn non_missing(&self) -> usize {
        self.cells.len() - self.missing_count
    }

    pub fn non_missing_cells(&self) -> impl Iterator<Item = &CellValue> {
        self.cells.iter().filter(|c| !c.is_missing())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub id: String,
    pub name: String,
    pub field_label: String,
    pub columns: Vec<Column>,
    pub row_count: usize,
    pub source_path: String,
}

impl Dataset {
    /// Normalized variable names, one per column.
    pub fn variable_names(&self) -> BTreeSet<String> {
        self.columns
            .iter()
            .map(|c| c.normalized_name.clone())
            .collect()
    }

    pub fn column(&self, normalized_name: &str) -> Option<&Column> {
        self.columns
            .iter()
            .find(|c| c.normalized_name == normalized_name)
    }

    pub fn total_cells(&self) -> usize {
        self.row_count * self.columns.len()
    }

    pub fn missing_cells(&self) -> usize {
        self.columns.iter().map(|c| c.missing_count).sum()
    }

    pub fn non_missing_cells(&self) -> usize {
        self.total_cells() - self.missing_cells()
    }

    /// Checks the structural invariants loaders must establish.
    pub fn validate(&self) -> Result<(), DatasetError> {
        if self.field_label.is_empty() {
            return Err(DatasetError::EmptyFieldLabel);
        }
        let mut seen = BTreeSet::new();
        for col in &self.columns {
            if col.cells.len() != self.row_count {
                return Err(DatasetError::ColumnLengthMismatch {
                    column: col.normalized_name.clone(),
                    expected: self.row_count,
                    actual: col.cells.len(),
                });
            }
            if !seen.insert(col.normalized_name.clone()) {
                return Err(DatasetError::DuplicateColumn {
                    name: col.normalized_name.clone(),
                });
            }
            let missing = col.cells.iter().filter(|c| c.is_missing()).count();
            if missing != col.missing_count {
                return Err(DatasetError::MissingCountMismatch {
                    column: col.normalized_name.clone(),
                });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DatasetError {
    EmptyFieldLabel,
    ColumnLengthMismatch {
        column: String,
        expected: usize,
        actual: usize,
    },
    DuplicateColumn {
        name: String,
    },
    MissingCountMismatch {
        column: String,
    },
    SynonymCycle {
        start: String,
    },
}

impl fmt::Display for DatasetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DatasetError::EmptyFieldLabel => write!(f, "dataset field label is empty"),
            DatasetError::ColumnLengthMismatch {
                column,
                expected,
                actual,
            } => write!(
                f,
                "column '{column}' has {actual} cells, expected {expected}"
            ),
            DatasetError::DuplicateColumn { name } => {
                write!(f, "duplicate normalized column name '{name}'")
            }
            DatasetError::MissingCountMismatch { column } => {
                write!(f, "column '{column}' missing_count disagrees with its cells")
            }
            DatasetError::SynonymCycle { start } => {
                write!(f, "synonym map contains a cycle through '{start}'")
            }
        }
    }
}

impl core::error::Error for DatasetError {}

/// Canonical variable name: trim, lowercase, collapse whitespace runs to one
/// underscore, then apply the exact-match synonym mapping.
pub fn normalize_variable_name(raw: &str, synonyms: &BTreeMap<String, String>) -> String {
    let trimmed = raw.trim();
    let mut out = String::with_capacity(trimmed.len());
    let mut in_space = false;
    for ch in trimmed.chars() {
        if ch.is_whitespace() {
            in_space = true;
        } else {
            if in_space {
                out.push('_');
                in_space = false;
            }
            for lower in ch.to_lowercase() {
                out.push(lower);
            }
        }
    }
    match synonyms.get(&out) {
        Some(canonical) => canonical.clone(),
        None => out,
    }
}

/// Normalizes a synonym map's keys and values and collapses chains
/// (a→b, b→c becomes a→c, b→c) so that `normalize_variable_name` is
/// idempotent under the returned map. A cyclic chain is a configuration error.
pub fn resolve_synonym_map(
    raw: &BTreeMap<String, String>,
) -> Result<BTreeMap<String, String>, DatasetError> {
    let empty = BTreeMap::new();
    let base: BTreeMap<String, String> = raw
        .iter()
        .map(|(k, v)| {
            (
                normalize_variable_name(k, &empty),
                normalize_variable_name(v, &empty),
            )
        })
        .collect();
    let mut resolved = BTreeMap::new();
    for (key, value) in &base {
        let mut current = value.clone();
        let mut hops = 0usize;
        while let Some(next) = base.get(&current) {
            if next == &current {
                break;
            }
            current = next.clone();
            hops += 1;
            if hops > base.len() {
                return Err(DatasetError::SynonymCycle { start: key.clone() });
            }
        }
        if &current != key {
            resolved.insert(key.clone(), current);
        }
    }
    Ok(resolved)
}

/// Digit structure of a numeric literal as written in the source.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumberLexeme {
    pub value: f64,
    pub significant_digits: u32,
    pub decimal_places: u32,
}

/// Lexes a cell as a plain or scientific-notation number. Significant digits
/// are all mantissa digits except leading zeros; trailing zeros count
/// (record-as-written). Decimal places are the digits written after the point.
/// A value that is all zeros ("0", "0.00") counts one significant digit.
pub fn lex_number(raw: &str) -> Option<NumberLexeme> {
    let s = raw.trim();
    if s.is_empty() {
        return None;
    }
    // Reject "inf"/"nan" and anything else outside literal syntax up front.
    if !s
        .chars()
        .all(|c| c.is_ascii_digit() || matches!(c, '+' | '-' | '.' | 'e' | 'E'))
    {
        return None;
    }
    let value: f64 = s.parse().ok()?;
    if !value.is_finite() {
        return None;
    }
    let mantissa = s.split(['e', 'E']).next().unwrap_or(s);
    let mantissa = mantissa.trim_start_matches(['+', '-']);
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    let digits_only = int_part.chars().chain(frac_part.chars());
    let mut total = 0u32;
    let mut leading_zeros = 0u32;
    let mut past_leading = false;
    for ch in digits_only {
        if !ch.is_ascii_digit() {
            return None;
        }
        total += 1;
        if ch == '0' && !past_leading {
            leading_zeros += 1;
        } else {
            past_leading = true;
        }
    }
    if total == 0 {
        return None;
    }
    let significant = if past_leading { total - leading_zeros } else { 1 };
    Some(NumberLexeme {
        value,
        significant_digits: significant,
        decimal_places: frac_part.len() as u32,
    })
}

pub fn parses_as_integer(raw: &str) -> bool {
    raw.trim().parse::<i64>().is_ok()
}

pub fn parses_as_boolean(raw: &str) -> bool {
    let s = raw.trim();
    s.eq_ignore_ascii_case("true") || s.eq_ignore_ascii_case("false")
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn no_synonyms() -> BTreeMap<String, String> {
        BTreeMap::new()
    }

    #[test]
    fn normalize_trims_folds_and_collapses() {
        assert_eq!(
            normalize_variable_name("  Air Pressure ", &no_synonyms()),
            "air_pressure"
        );
        assert_eq!(
            normalize_variable_name("Air \t  Pressure", &no_synonyms()),
            "air_pressure"
        );
    }

    #[test]
    fn normalize_applies_synonyms() {
        let mut syn = BTreeMap::new();
        syn.insert("temp".to_string(), "temperature".to_string());
        assert_eq!(normalize_variable_name("temp", &syn), "temperature");
        assert_eq!(
            normalize_variable_name("temperature", &no_synonyms()),
            "temperature"
        );
    }

    #[test]
    fn normalize_is_idempotent_with_resolved_map() {
        let mut raw = BTreeMap::new();
        raw.insert("Temp".to_string(), "temp c".to_string());
        raw.insert("temp_c".to_string(), "temperature".to_string());
        let resolved = resolve_synonym_map(&raw).unwrap();
        let once = normalize_variable_name("Temp", &resolved);
        let twice = normalize_variable_name(&once, &resolved);
        assert_eq!(once, "temperature");
        assert_eq!(once, twice);
    }

    #[test]
    fn synonym_cycle_is_rejected() {
        let mut raw = BTreeMap::new();
        raw.insert("a".to_string(), "b".to_string());
        raw.insert("b".to_string(), "a".to_string());
        assert!(matches!(
            resolve_synonym_map(&raw),
            Err(DatasetError::SynonymCycle { .. })
        ));
    }

    #[test]
    fn lex_number_counts_digits_as_written() {
        let n = lex_number("3.14").unwrap();
        assert_eq!((n.significant_digits, n.decimal_places), (3, 2));
        let n = lex_number("0.0500").unwrap();
        assert_eq!((n.significant_digits, n.decimal_places), (3, 4));
        let n = lex_number("007").unwrap();
        assert_eq!((n.significant_digits, n.decimal_places), (1, 0));
        let n = lex_number("10").unwrap();
        assert_eq!((n.significant_digits, n.decimal_places), (2, 0));
        let n = lex_number("0").unwrap();
        assert_eq!((n.significant_digits, n.decimal_places), (1, 0));
        let n = lex_number("0.00").unwrap();
        assert_eq!((n.significant_digits, n.decimal_places), (1, 2));
        let n = lex_number(".5").unwrap();
        assert_eq!((n.significant_digits, n.decimal_places), (1, 1));
        let n = lex_number("1.5e3").unwrap();
        assert_eq!((n.significant_digits, n.decimal_places), (2, 1));
        assert_eq!(n.value, 1500.0);
    }

    #[test]
    fn lex_number_rejects_non_literals() {
        assert!(lex_number("abc").is_none());
        assert!(lex_number("inf").is_none());
        assert!(lex_number("NaN").is_none());
        assert!(lex_number("5mm").is_none());
        assert!(lex_number("").is_none());
        assert!(lex_number("1e999").is_none());
        assert!(lex_number("1.2.3").is_none());
    }

    #[test]
    fn integer_and_boolean_predicates() {
        assert!(parses_as_integer(" 42 "));
        assert!(parses_as_integer("-7"));
        assert!(!parses_as_integer("1.0"));
        assert!(parses_as_boolean("TRUE"));
        assert!(parses_as_boolean("false"));
        assert!(!parses_as_boolean("yes"));
    }

    #[test]
    fn dataset_validate_catches_broken_invariants() {
        let cell = |raw: &str| CellValue::Text { raw: raw.to_string() };
        let ds = Dataset {
            id: "d".into(),
            name: "d".into(),
            field_label: "f".into(),
            columns: vec![Column {
                raw_name: "a".into(),
                normalized_name: "a".into(),
                inferred_type: ColumnType::Text,
                cells: vec![cell("x")],
                missing_count: 1, // wrong on purpose
            }],
            row_count: 1,
            source_path: "mem".into(),
        };
        assert!(matches!(
            ds.validate(),
            Err(DatasetError::MissingCountMismatch { .. })
        ));
    }
}
