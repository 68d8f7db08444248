//! The seven per-dataset quality indices: quantity, accuracy, granularity,
//! completeness, uniqueness, precision, and compliance.
//!
//! Every function here is a pure function of an immutable [`Dataset`]; profiles
//! for many datasets can be computed in parallel and are bit-identical
//! regardless of scheduling. Metrics that cannot be computed (empty dataset,
//! no numeric columns, ...) come back as [`Evaluation::NotEvaluable`] rather
//! than an error.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::dataset::{
    lex_number, parses_as_boolean, parses_as_integer, CellValue, Column, ColumnType, Dataset,
};
use crate::fmath;
use crate::stats;
use crate::Evaluation;

/// Mean Earth radius in kilometers, used for great-circle distances.
pub const EARTH_RADIUS_KM: f64 = 6371.0088;

/// Pattern rules a column can be held to for accuracy's format checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormatRule {
    Url,
    Phone,
}

impl FormatRule {
    pub fn matches(self, raw: &str) -> bool {
        let s = raw.trim();
        match self {
            FormatRule::Url => {
                let rest = s
                    .strip_prefix("http://")
                    .or_else(|| s.strip_prefix("https://"));
                match rest {
                    Some(r) => !r.is_empty() && !r.chars().any(char::is_whitespace),
                    None => false,
                }
            }
            FormatRule::Phone => {
                if s.is_empty()
                    || !s
                        .chars()
                        .all(|c| c.is_ascii_digit() || matches!(c, ' ' | '+' | '-' | '(' | ')' | '.'))
                {
                    return false;
                }
                let digits = s.chars().filter(char::is_ascii_digit).count();
                (7..=15).contains(&digits)
            }
        }
    }
}

/// Per-dataset knobs for index computation. Names are normalized variable names.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ProfileOptions {
    pub important_variables: Vec<String>,
    pub format_rules: BTreeMap<String, FormatRule>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuantityMeasure {
    pub rows: usize,
    pub non_missing_cells: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompletenessMeasure {
    pub overall: f64,
    pub per_column: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UniquenessMeasure {
    pub distinct_row_ratio: f64,
    pub per_column: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DigitStats {
    pub min: u32,
    pub median: f64,
    pub max: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ColumnPrecision {
    pub significant_digits: DigitStats,
    pub decimal_places: DigitStats,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrecisionMeasure {
    pub per_column: BTreeMap<String, ColumnPrecision>,
    /// Numeric-typed columns that had no lexable numeric cells.
    pub skipped_columns: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ColumnAnomalies {
    pub type_violations: usize,
    pub range_outliers: usize,
    pub format_violations: usize,
}

impl ColumnAnomalies {
    pub fn total(&self) -> usize {
        self.type_violations + self.range_outliers + self.format_violations
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AccuracyMeasure {
    pub per_column: BTreeMap<String, ColumnAnomalies>,
    /// Cells violating at least one rule (a cell never counts twice here).
    pub anomalous_cells: usize,
    pub overall_anomaly_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComplianceMeasure {
    pub per_column: BTreeMap<String, f64>,
    pub overall: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GranularityUnit {
    Seconds,
    Kilometers,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GranularityValue {
    pub unit: GranularityUnit,
    pub median_interval: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QualityProfile {
    pub dataset_id: String,
    pub quantity: QuantityMeasure,
    pub completeness: Evaluation<CompletenessMeasure>,
    pub uniqueness: Evaluation<UniquenessMeasure>,
    pub precision: Evaluation<PrecisionMeasure>,
    pub accuracy: Evaluation<AccuracyMeasure>,
    pub compliance: Evaluation<ComplianceMeasure>,
    pub granularity: BTreeMap<String, Evaluation<GranularityValue>>,
    pub warnings: Vec<String>,
}

pub fn quantity(dataset: &Dataset) -> QuantityMeasure {
    QuantityMeasure {
        rows: dataset.row_count,
        non_missing_cells: dataset.non_missing_cells(),
    }
}

pub fn completeness(dataset: &Dataset) -> Evaluation<CompletenessMeasure> {
    if dataset.row_count == 0 || dataset.columns.is_empty() {
        return Evaluation::not_evaluable("dataset has no rows");
    }
    let rows = dataset.row_count as f64;
    let per_column: BTreeMap<String, f64> = dataset
        .columns
        .iter()
        .map(|c| {
            (
                c.normalized_name.clone(),
                1.0 - c.missing_count as f64 / rows,
            )
        })
        .collect();
    let overall = dataset.non_missing_cells() as f64 / dataset.total_cells() as f64;
    Evaluation::Evaluated(CompletenessMeasure {
        overall,
        per_column,
    })
}

pub fn uniqueness(dataset: &Dataset) -> Evaluation<UniquenessMeasure> {
    if dataset.row_count == 0 || dataset.columns.is_empty() {
        return Evaluation::not_evaluable("dataset has no rows");
    }
    let rows = dataset.row_count as f64;
    let mut distinct_rows: BTreeSet<Vec<&str>> = BTreeSet::new();
    for r in 0..dataset.row_count {
        distinct_rows.insert(
            dataset
                .columns
                .iter()
                .map(|c| c.cells[r].raw())
                .collect::<Vec<_>>(),
        );
    }
    let per_column: BTreeMap<String, f64> = dataset
        .columns
        .iter()
        .map(|c| {
            let distinct: BTreeSet<&str> = c.cells.iter().map(CellValue::raw).collect();
            (c.normalized_name.clone(), distinct.len() as f64 / rows)
        })
        .collect();
    Evaluation::Evaluated(UniquenessMeasure {
        distinct_row_ratio: distinct_rows.len() as f64 / rows,
        per_column,
    })
}

fn digit_stats(values: &[u32]) -> DigitStats {
    DigitStats {
        min: *values.iter().min().expect("non-empty digit sample"),
        median: stats::median_of_u32(values).expect("non-empty digit sample"),
        max: *values.iter().max().expect("non-empty digit sample"),
    }
}

/// Significant digits and decimal places are lexed from raw text, so columns
/// holding coordinates (geo-tagged cells) are measured as written too.
pub fn precision(dataset: &Dataset) -> Evaluation<PrecisionMeasure> {
    let numeric: Vec<&Column> = dataset
        .columns
        .iter()
        .filter(|c| c.inferred_type.is_numeric())
        .collect();
    if numeric.is_empty() {
        return Evaluation::not_evaluable("no numeric columns");
    }
    let mut per_column = BTreeMap::new();
    let mut skipped = Vec::new();
    for col in numeric {
        let mut sig = Vec::new();
        let mut dec = Vec::new();
        for cell in col.non_missing_cells() {
            if let Some(lex) = lex_number(cell.raw()) {
                sig.push(lex.significant_digits);
                dec.push(lex.decimal_places);
            }
        }
        if sig.is_empty() {
            skipped.push(col.normalized_name.clone());
            continue;
        }
        per_column.insert(
            col.normalized_name.clone(),
            ColumnPrecision {
                significant_digits: digit_stats(&sig),
                decimal_places: digit_stats(&dec),
            },
        );
    }
    if per_column.is_empty() {
        return Evaluation::not_evaluable("no numeric column has parseable numeric cells");
    }
    Evaluation::Evaluated(PrecisionMeasure {
        per_column,
        skipped_columns: skipped,
    })
}

fn violates_type(column: &Column, cell: &CellValue) -> bool {
    match column.inferred_type {
        ColumnType::Text => false,
        ColumnType::Integer => !parses_as_integer(cell.raw()),
        ColumnType::Decimal => lex_number(cell.raw()).is_none(),
        ColumnType::Boolean => !parses_as_boolean(cell.raw()),
        // Geo tagging already encodes "finite decimal degrees in range".
        ColumnType::Latitude | ColumnType::Longitude => !matches!(cell, CellValue::Geo { .. }),
        ColumnType::Datetime => !matches!(cell, CellValue::Datetime { .. }),
    }
}

pub fn accuracy(dataset: &Dataset, options: &ProfileOptions) -> Evaluation<AccuracyMeasure> {
    if dataset.row_count == 0 || dataset.columns.is_empty() {
        return Evaluation::not_evaluable("dataset has no rows");
    }
    let non_missing_total = dataset.non_missing_cells();
    if non_missing_total == 0 {
        return Evaluation::not_evaluable("dataset has no non-missing cells");
    }
    let mut per_column = BTreeMap::new();
    let mut anomalous_cells = 0usize;
    for col in &dataset.columns {
        let mut counts = ColumnAnomalies {
            type_violations: 0,
            range_outliers: 0,
            format_violations: 0,
        };
        let mut flagged = alloc::vec![false; col.cells.len()];

        for (i, cell) in col.cells.iter().enumerate() {
            if cell.is_missing() {
                continue;
            }
            if violates_type(col, cell) {
                counts.type_violations += 1;
                flagged[i] = true;
            }
        }

        if matches!(col.inferred_type, ColumnType::Integer | ColumnType::Decimal) {
            let sample: Vec<f64> = col
                .cells
                .iter()
                .filter_map(|c| match c {
                    CellValue::Number { value, .. } => Some(*value),
                    _ => None,
                })
                .collect();
            if let Some((q1, q3)) = stats::quartiles(&sample) {
                let iqr = q3 - q1;
                let lower = q1 - 3.0 * iqr;
                let upper = q3 + 3.0 * iqr;
                for (i, cell) in col.cells.iter().enumerate() {
                    if let CellValue::Number { value, .. } = cell {
                        if *value < lower || *value > upper {
                            counts.range_outliers += 1;
                            flagged[i] = true;
                        }
                    }
                }
            }
        }

        if let Some(rule) = options.format_rules.get(&col.normalized_name) {
            for (i, cell) in col.cells.iter().enumerate() {
                if !cell.is_missing() && !rule.matches(cell.raw()) {
                    counts.format_violations += 1;
                    flagged[i] = true;
                }
            }
        }

        anomalous_cells += flagged.iter().filter(|f| **f).count();
        per_column.insert(col.normalized_name.clone(), counts);
    }
    Evaluation::Evaluated(AccuracyMeasure {
        per_column,
        anomalous_cells,
        overall_anomaly_ratio: anomalous_cells as f64 / non_missing_total as f64,
    })
}

pub fn compliance(dataset: &Dataset) -> Evaluation<ComplianceMeasure> {
    if dataset.row_count == 0 || dataset.columns.is_empty() {
        return Evaluation::not_evaluable("dataset has no rows");
    }
    let mut per_column = BTreeMap::new();
    for col in &dataset.columns {
        let non_missing = col.non_missing();
        if non_missing == 0 {
            continue;
        }
        let score = match col.inferred_type {
            ColumnType::Datetime => {
                let mut by_format: BTreeMap<usize, usize> = BTreeMap::new();
                for cell in col.non_missing_cells() {
                    if let CellValue::Datetime { format_id, .. } = cell {
                        *by_format.entry(*format_id).or_insert(0) += 1;
                    }
                }
                // Modal format; smallest id wins ties (BTreeMap iterates ascending).
                let modal = by_format.values().copied().max().unwrap_or(0);
                modal as f64 / non_missing as f64
            }
            ColumnType::Integer | ColumnType::Decimal => {
                let purely_numeric = col
                    .non_missing_cells()
                    .filter(|c| lex_number(c.raw()).is_some())
                    .count();
                purely_numeric as f64 / non_missing as f64
            }
            _ => 1.0,
        };
        per_column.insert(col.normalized_name.clone(), score);
    }
    if per_column.is_empty() {
        return Evaluation::not_evaluable("no column has non-missing cells");
    }
    let overall = per_column.values().sum::<f64>() / per_column.len() as f64;
    Evaluation::Evaluated(ComplianceMeasure {
        per_column,
        overall,
    })
}

fn haversine_km(lat1: f64, lon1: f64, lat2: f64, lon2: f64) -> f64 {
    let rad = core::f64::consts::PI / 180.0;
    let dlat = (lat2 - lat1) * rad / 2.0;
    let dlon = (lon2 - lon1) * rad / 2.0;
    let a = fmath::sin(dlat) * fmath::sin(dlat)
        + fmath::cos(lat1 * rad) * fmath::cos(lat2 * rad) * fmath::sin(dlon) * fmath::sin(dlon);
    let c = 2.0 * fmath::atan2(fmath::sqrt(a), fmath::sqrt((1.0 - a).max(0.0)));
    EARTH_RADIUS_KM * c
}

fn temporal_granularity(col: &Column) -> Evaluation<GranularityValue> {
    let mut stamps: Vec<i64> = col
        .cells
        .iter()
        .filter_map(|c| match c {
            CellValue::Datetime { epoch_seconds, .. } => Some(*epoch_seconds),
            _ => None,
        })
        .collect();
    if stamps.len() < 2 {
        return Evaluation::not_evaluable("fewer than 2 usable values");
    }
    stamps.sort_unstable();
    let intervals: Vec<f64> = stamps
        .windows(2)
        .map(|w| (w[1] - w[0]) as f64)
        .collect();
    Evaluation::Evaluated(GranularityValue {
        unit: GranularityUnit::Seconds,
        median_interval: stats::median(&intervals).expect("at least one interval"),
    })
}

fn geographic_granularity(dataset: &Dataset) -> Evaluation<GranularityValue> {
    let lat_col = dataset
        .columns
        .iter()
        .find(|c| c.inferred_type == ColumnType::Latitude);
    let lon_col = dataset
        .columns
        .iter()
        .find(|c| c.inferred_type == ColumnType::Longitude);
    let (lat_col, lon_col) = match (lat_col, lon_col) {
        (Some(la), Some(lo)) => (la, lo),
        _ => return Evaluation::not_evaluable("requires both a latitude and a longitude column"),
    };
    let mut points = Vec::new();
    for r in 0..dataset.row_count {
        if let (CellValue::Geo { degrees: lat, .. }, CellValue::Geo { degrees: lon, .. }) =
            (&lat_col.cells[r], &lon_col.cells[r])
        {
            points.push((*lat, *lon));
        }
    }
    if points.len() < 2 {
        return Evaluation::not_evaluable("fewer than 2 usable values");
    }
    let mut nearest = Vec::with_capacity(points.len());
    for (i, &(lat, lon)) in points.iter().enumerate() {
        let mut best = f64::INFINITY;
        for (j, &(olat, olon)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let d = haversine_km(lat, lon, olat, olon);
            if d < best {
                best = d;
            }
        }
        nearest.push(best);
    }
    Evaluation::Evaluated(GranularityValue {
        unit: GranularityUnit::Kilometers,
        median_interval: stats::median(&nearest).expect("at least two points"),
    })
}

/// Median observation interval for each user-designated important variable:
/// seconds between consecutive timestamps for datetime variables, kilometers
/// to the nearest other point for coordinate variables. Variables absent from
/// the dataset are reported in the warning list and omitted from the map.
pub fn granularity(
    dataset: &Dataset,
    important_variables: &[String],
) -> (BTreeMap<String, Evaluation<GranularityValue>>, Vec<String>) {
    let mut entries = BTreeMap::new();
    let mut warnings = Vec::new();
    let unique: BTreeSet<&String> = important_variables.iter().collect();
    for name in unique {
        let Some(col) = dataset.column(name) else {
            warnings.push(format!(
                "important variable '{name}' not present in dataset '{}'",
                dataset.id
            ));
            continue;
        };
        let entry = match col.inferred_type {
            ColumnType::Datetime => temporal_granularity(col),
            ColumnType::Latitude | ColumnType::Longitude => geographic_granularity(dataset),
            _ => Evaluation::not_evaluable("not a datetime or coordinate variable"),
        };
        entries.insert(name.clone(), entry);
    }
    (entries, warnings)
}

/// Computes all seven indices for one dataset.
pub fn profile(dataset: &Dataset, options: &ProfileOptions) -> QualityProfile {
    let (granularity_entries, mut warnings) = granularity(dataset, &options.important_variables);
    let precision_measure = precision(dataset);
    if let Some(p) = precision_measure.evaluated() {
        for col in &p.skipped_columns {
            warnings.push(format!(
                "numeric column '{col}' has no parseable numeric cells; excluded from precision"
            ));
        }
    }
    QualityProfile {
        dataset_id: dataset.id.clone(),
        quantity: quantity(dataset),
        completeness: completeness(dataset),
        uniqueness: uniqueness(dataset),
        precision: precision_measure,
        accuracy: accuracy(dataset, options),
        compliance: compliance(dataset),
        granularity: granularity_entries,
        warnings,
    }
}
