//! Table loading and dictionary-encoded columnar storage.
//!
//! A [`Table`] is an immutable columnar store: every cell is replaced by a
//! dense integer code per column (codes are assigned in first-occurrence
//! order, so code order equals first-appearance order). Missing cells map to
//! one dedicated code per column. Duplicate full rows are dropped at load and
//! counted, since every algorithm here assumes distinct rows.

use std::collections::{HashMap, HashSet};
use std::io::Read;

use crate::colset::{ColumnId, ColumnSet};
use crate::error::{Error, Result};

/// Parsing options for delimited input.
#[derive(Debug, Clone)]
pub struct LoadOptions {
    /// Field delimiter, comma by default.
    pub delimiter: u8,
    /// Cell texts treated as missing values.
    pub missing_markers: Vec<String>,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            delimiter: b',',
            missing_markers: vec![String::new(), "NA".to_string()],
        }
    }
}

/// One dictionary-encoded column.
#[derive(Debug, Clone)]
pub struct Column {
    name: String,
    codes: Vec<u32>,
    /// Dictionary: `values[code]` is the raw cell text first seen for `code`.
    values: Vec<String>,
    missing_code: Option<u32>,
    is_decimal: bool,
    is_numeric: bool,
}

impl Column {
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of distinct codes (missing counts as one value).
    pub fn cardinality(&self) -> usize {
        self.values.len()
    }

    pub fn codes(&self) -> &[u32] {
        &self.codes
    }

    pub fn code(&self, row: usize) -> u32 {
        self.codes[row]
    }

    /// Raw text for a code; for the missing code this is the marker that was
    /// first seen in the input.
    pub fn value(&self, code: u32) -> &str {
        &self.values[code as usize]
    }

    pub fn missing_code(&self) -> Option<u32> {
        self.missing_code
    }

    pub fn is_missing(&self, code: u32) -> bool {
        self.missing_code == Some(code)
    }

    /// True when every non-missing cell parses as a number and at least one
    /// parsed value has a nonzero fractional part.
    pub fn is_decimal(&self) -> bool {
        self.is_decimal
    }

    /// True when every non-missing cell parses as a number (and there is at
    /// least one such cell).
    pub fn is_numeric(&self) -> bool {
        self.is_numeric
    }

    /// Parsed numeric value for a code, if the column is numeric and the code
    /// is not missing.
    pub fn numeric_value(&self, code: u32) -> Option<f64> {
        if !self.is_numeric || self.is_missing(code) {
            return None;
        }
        self.values[code as usize].trim().parse().ok()
    }
}

/// Immutable dictionary-encoded table with `R >= 1` distinct rows.
#[derive(Debug, Clone)]
pub struct Table {
    columns: Vec<Column>,
    row_count: usize,
    duplicates_dropped: usize,
}

impl Table {
    /// Reads delimited text with a header row.
    pub fn load<R: Read>(reader: R, options: &LoadOptions) -> Result<Table> {
        let mut rdr = csv::ReaderBuilder::new()
            .delimiter(options.delimiter)
            .has_headers(true)
            .flexible(true)
            .from_reader(reader);

        let headers: Vec<String> = match rdr.headers() {
            Ok(h) if !h.is_empty() => h.iter().map(|s| s.to_string()).collect(),
            _ => return Err(Error::EmptyInput),
        };
        if headers.len() == 1 && headers[0].is_empty() {
            return Err(Error::EmptyInput);
        }

        let mut rows = Vec::new();
        for record in rdr.records() {
            let record = record?;
            if record.len() != headers.len() {
                return Err(Error::RaggedRow {
                    line: record.position().map_or(0, |p| p.line()),
                    expected: headers.len(),
                    found: record.len(),
                });
            }
            rows.push(record.iter().map(|s| s.to_string()).collect::<Vec<_>>());
        }
        Table::from_rows(headers, rows, options)
    }

    /// Parses a CSV string with default options.
    pub fn from_csv_str(text: &str) -> Result<Table> {
        Table::load(text.as_bytes(), &LoadOptions::default())
    }

    /// Builds a table from pre-split cells. Used by the loader, the synthetic
    /// generators, and tests.
    pub fn from_rows(
        header: Vec<String>,
        rows: Vec<Vec<String>>,
        options: &LoadOptions,
    ) -> Result<Table> {
        if header.is_empty() {
            return Err(Error::EmptyInput);
        }
        {
            let mut seen = HashSet::new();
            for name in &header {
                if !seen.insert(name.as_str()) {
                    return Err(Error::DuplicateHeader(name.clone()));
                }
            }
        }
        let n = header.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::RaggedRow {
                    // +2: one for the header line, one for 1-based numbering
                    line: (i + 2) as u64,
                    expected: n,
                    found: row.len(),
                });
            }
        }
        if rows.is_empty() {
            return Err(Error::NoRows);
        }

        let mut columns: Vec<Column> = header
            .into_iter()
            .map(|name| Column {
                name,
                codes: Vec::new(),
                values: Vec::new(),
                missing_code: None,
                is_decimal: false,
                is_numeric: false,
            })
            .collect();
        let mut dictionaries: Vec<HashMap<String, u32>> = vec![HashMap::new(); n];

        let mut seen_rows: HashSet<Vec<u32>> = HashSet::new();
        let mut duplicates_dropped = 0usize;
        let mut encoded = Vec::with_capacity(n);
        for row in rows {
            encoded.clear();
            for (j, cell) in row.into_iter().enumerate() {
                let col = &mut columns[j];
                let code = if options.missing_markers.iter().any(|m| m == &cell) {
                    match col.missing_code {
                        Some(c) => c,
                        None => {
                            let c = col.values.len() as u32;
                            col.values.push(cell);
                            col.missing_code = Some(c);
                            c
                        }
                    }
                } else {
                    match dictionaries[j].get(&cell) {
                        Some(&c) => c,
                        None => {
                            let c = col.values.len() as u32;
                            dictionaries[j].insert(cell.clone(), c);
                            col.values.push(cell);
                            c
                        }
                    }
                };
                encoded.push(code);
            }
            if seen_rows.insert(encoded.clone()) {
                for (j, &code) in encoded.iter().enumerate() {
                    columns[j].codes.push(code);
                }
            } else {
                duplicates_dropped += 1;
            }
        }

        let row_count = columns[0].codes.len();
        debug_assert!(row_count >= 1);
        assert!(
            row_count < u32::MAX as usize,
            "tables are capped at u32 rows"
        );

        for col in &mut columns {
            let non_missing: Vec<&str> = col
                .values
                .iter()
                .enumerate()
                .filter(|(i, _)| col.missing_code != Some(*i as u32))
                .map(|(_, v)| v.as_str())
                .collect();
            col.is_numeric = detect_numeric(non_missing.iter().copied());
            col.is_decimal = detect_decimal(non_missing.iter().copied());
        }

        Ok(Table {
            columns,
            row_count,
            duplicates_dropped,
        })
    }

    pub fn col_count(&self) -> usize {
        self.columns.len()
    }

    pub fn row_count(&self) -> usize {
        self.row_count
    }

    /// How many duplicate full rows the loader dropped.
    pub fn duplicates_dropped(&self) -> usize {
        self.duplicates_dropped
    }

    /// The reserved id of the hypothetical rowid column (equals `N`).
    pub fn rowid_id(&self) -> ColumnId {
        self.columns.len()
    }

    pub fn column(&self, id: ColumnId) -> Result<&Column> {
        self.columns.get(id).ok_or(Error::UnknownColumn(id))
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn column_id(&self, name: &str) -> Result<ColumnId> {
        self.columns
            .iter()
            .position(|c| c.name == name)
            .ok_or_else(|| Error::UnknownColumnName(name.to_string()))
    }

    /// All real column ids, ascending.
    pub fn all_columns(&self) -> ColumnSet {
        (0..self.col_count()).collect()
    }

    pub fn names(&self, set: &ColumnSet) -> Vec<String> {
        set.iter()
            .map(|id| {
                if id == self.rowid_id() {
                    "rowid".to_string()
                } else {
                    self.columns[id].name.clone()
                }
            })
            .collect()
    }

    /// Code of `col` at `row`; the rowid column yields the row index.
    #[inline]
    pub(crate) fn cell_code(&self, row: usize, col: ColumnId) -> u32 {
        if col == self.rowid_id() {
            row as u32
        } else {
            self.columns[col].codes[row]
        }
    }

    pub(crate) fn validate_set(&self, cols: &ColumnSet) -> Result<()> {
        for id in cols.iter() {
            if id > self.rowid_id() {
                return Err(Error::UnknownColumn(id));
            }
        }
        Ok(())
    }

    /// Number of distinct projected rows on `cols`. This is the uncounted
    /// primitive behind [`crate::measure::distinct_count`] and the pure error
    /// measures.
    pub(crate) fn projection_count(&self, cols: &ColumnSet) -> Result<usize> {
        self.validate_set(cols)?;
        if cols.is_empty() {
            // One empty tuple: the projection of any nonempty table onto no
            // columns.
            return Ok(1);
        }
        if cols.contains(self.rowid_id()) {
            return Ok(self.row_count);
        }
        let ids = cols.ids();
        match ids.len() {
            1 => Ok(self.columns[ids[0]].cardinality()),
            2..=4 => {
                let mut seen: HashSet<u128> = HashSet::with_capacity(self.row_count);
                for row in 0..self.row_count {
                    let mut key = 0u128;
                    for &id in ids {
                        key = (key << 32) | self.cell_code(row, id) as u128;
                    }
                    seen.insert(key);
                }
                Ok(seen.len())
            }
            _ => {
                let mut seen: HashSet<Vec<u32>> = HashSet::with_capacity(self.row_count);
                for row in 0..self.row_count {
                    seen.insert(ids.iter().map(|&id| self.cell_code(row, id)).collect());
                }
                Ok(seen.len())
            }
        }
    }
}

/// Decimal detection over raw non-missing cells: all numeric, at least one
/// with a nonzero fractional part.
pub fn detect_decimal<'a, I: IntoIterator<Item = &'a str>>(cells: I) -> bool {
    let mut any_fractional = false;
    let mut any_cell = false;
    for cell in cells {
        any_cell = true;
        match cell.trim().parse::<f64>() {
            Ok(v) if v.is_finite() => {
                if v.fract() != 0.0 {
                    any_fractional = true;
                }
            }
            _ => return false,
        }
    }
    any_cell && any_fractional
}

fn detect_numeric<'a, I: IntoIterator<Item = &'a str>>(cells: I) -> bool {
    let mut any = false;
    for cell in cells {
        any = true;
        match cell.trim().parse::<f64>() {
            Ok(v) if v.is_finite() => {}
            _ => return false,
        }
    }
    any
}
