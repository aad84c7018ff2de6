//! Directed-network adjacency data: ingestion, validation, degrees and the
//! zero-row patch.
//!
//! `entry(i, j)` is the weight of the edge from node `i` to node `j` ("`i`
//! follows `j`"), so out-degrees are row sums and in-degrees column sums.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::io::Read;

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Square non-negative matrix with one unique label per node.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjacencyMatrix {
    entries: DMatrix<f64>,
    labels: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeKind {
    Out,
    In,
}

/// Row sums (`Out`) or column sums (`In`) of an adjacency matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeVector {
    pub values: Vec<f64>,
    pub kind: DegreeKind,
}

fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

impl AdjacencyMatrix {
    /// Validates `entries` and attaches `labels`.
    pub fn new(entries: DMatrix<f64>, labels: Vec<String>) -> Result<Self> {
        let (rows, cols) = entries.shape();
        if rows != cols {
            return Err(Error::NotSquare { rows, cols });
        }
        if rows == 0 {
            return Err(Error::Empty);
        }
        if labels.len() != rows {
            return Err(Error::LabelCount {
                expected: rows,
                got: labels.len(),
            });
        }
        let mut seen = HashSet::with_capacity(rows);
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        for row in 0..rows {
            for col in 0..cols {
                let value = entries[(row, col)];
                if !value.is_finite() {
                    return Err(Error::NonFinite { row, col });
                }
                if value < 0.0 {
                    return Err(Error::NegativeEntry { row, col, value });
                }
            }
        }
        Ok(Self { entries, labels })
    }

    /// Builds a matrix from row slices, labelling nodes `"1"..="n"`.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        for row in rows {
            let cols = row.as_ref().len();
            if cols != n {
                return Err(Error::NotSquare { rows: n, cols });
            }
        }
        let entries = DMatrix::from_fn(n, n, |i, j| rows[i].as_ref()[j]);
        Self::new(entries, default_labels(n))
    }

    /// Builds a 0/1 matrix from `(follower, followed)` label pairs.
    ///
    /// With a roster the node order is the roster order and every edge label
    /// must appear in it; otherwise nodes are taken in first-appearance order.
    /// Duplicate edges collapse to a single 1.
    pub fn from_edges<I, S>(edges: I, roster: Option<&[String]>) -> Result<Self>
    where
        I: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let mut labels: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        if let Some(roster) = roster {
            for label in roster {
                if index.insert(label.clone(), labels.len()).is_some() {
                    return Err(Error::DuplicateLabel(label.clone()));
                }
                labels.push(label.clone());
            }
        }

        let mut pairs = Vec::new();
        for (line, (from, to)) in edges.into_iter().enumerate() {
            let (from, to) = (from.as_ref(), to.as_ref());
            if from.is_empty() || to.is_empty() {
                return Err(Error::Parse {
                    line: line + 1,
                    message: "edge with an empty label".into(),
                });
            }
            let mut lookup = |label: &str| -> Result<usize> {
                if let Some(&i) = index.get(label) {
                    return Ok(i);
                }
                if roster.is_some() {
                    return Err(Error::UnknownLabel(label.to_string()));
                }
                let i = labels.len();
                labels.push(label.to_string());
                index.insert(label.to_string(), i);
                Ok(i)
            };
            let i = lookup(from)?;
            let j = lookup(to)?;
            pairs.push((i, j));
        }

        let n = labels.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut entries = DMatrix::zeros(n, n);
        for (i, j) in pairs {
            entries[(i, j)] = 1.0;
        }
        Self::new(entries, labels)
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[(row, col)]
    }

    pub fn with_labels(self, labels: Vec<String>) -> Result<Self> {
        Self::new(self.entries, labels)
    }

    pub fn row_sums(&self) -> Vec<f64> {
        self.entries.row_iter().map(|r| r.sum()).collect()
    }

    pub fn column_sums(&self) -> Vec<f64> {
        self.entries.column_iter().map(|c| c.sum()).collect()
    }

    pub fn total(&self) -> f64 {
        self.entries.sum()
    }

    pub fn degrees(&self, kind: DegreeKind) -> DegreeVector {
        let values = match kind {
            DegreeKind::Out => self.row_sums(),
            DegreeKind::In => self.column_sums(),
        };
        DegreeVector { values, kind }
    }

    /// Replaces every all-zero row by an all-ones row (diagonal included).
    pub fn patch_zero_rows(&self) -> Self {
        let mut entries = self.entries.clone();
        for mut row in entries.row_iter_mut() {
            if row.iter().all(|&v| v == 0.0) {
                row.fill(1.0);
            }
        }
        Self {
            entries,
            labels: self.labels.clone(),
        }
    }

    pub fn has_zero_row(&self) -> bool {
        self.entries.row_iter().any(|r| r.iter().all(|&v| v == 0.0))
    }

    /// Headerless comma-separated rendering that parses back exactly.
    pub fn to_dense_csv(&self) -> String {
        let n = self.n();
        let mut out = String::with_capacity(n * n * 2);
        for i in 0..n {
            for j in 0..n {
                if j > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{}", self.entries[(i, j)]);
            }
            out.push('\n');
        }
        out
    }
}

/// Column names used when reading an edge-list CSV.
#[derive(Debug, Clone)]
pub struct EdgeColumns {
    pub following: String,
    pub followed: String,
}

impl Default for EdgeColumns {
    fn default() -> Self {
        Self {
            following: "following".into(),
            followed: "followed".into(),
        }
    }
}

fn column_index(headers: &csv::StringRecord, name: &str) -> Result<usize> {
    headers
        .iter()
        .position(|h| h.trim() == name)
        .ok_or_else(|| Error::MissingColumn(name.to_string()))
}

/// Reads `(following, followed)` pairs from a headed CSV.
pub fn read_edge_list<R: Read>(reader: R, columns: &EdgeColumns) -> Result<Vec<(String, String)>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr.headers()?.clone();
    let from = column_index(&headers, &columns.following)?;
    let to = column_index(&headers, &columns.followed)?;
    let mut edges = Vec::new();
    for (k, record) in rdr.records().enumerate() {
        let record = record?;
        let get = |i: usize| {
            record
                .get(i)
                .map(str::to_string)
                .ok_or_else(|| Error::Parse {
                    line: k + 2,
                    message: "short row".into(),
                })
        };
        edges.push((get(from)?, get(to)?));
    }
    Ok(edges)
}

/// Reads node labels from the named column of a headed CSV, in file order.
pub fn read_roster<R: Read>(reader: R, column: &str) -> Result<Vec<String>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr.headers()?.clone();
    let idx = column_index(&headers, column)?;
    let mut labels = Vec::new();
    for (k, record) in rdr.records().enumerate() {
        let record = record?;
        match record.get(idx) {
            Some(label) if !label.is_empty() => labels.push(label.to_string()),
            _ => {
                return Err(Error::Parse {
                    line: k + 2,
                    message: format!("empty {column}"),
                })
            }
        }
    }
    Ok(labels)
}

/// Edge-list ingestion: header `following,followed` (or overridden names),
/// optionally restricted to a roster.
pub fn load_edge_list<R: Read>(
    reader: R,
    columns: &EdgeColumns,
    roster: Option<&[String]>,
) -> Result<AdjacencyMatrix> {
    let edges = read_edge_list(reader, columns)?;
    AdjacencyMatrix::from_edges(edges, roster)
}

fn split_fields(line: &str) -> Vec<&str> {
    if line.contains(',') {
        line.split(',').map(str::trim).collect()
    } else {
        line.split_whitespace().collect()
    }
}

/// Parses a comma- or whitespace-separated numeric grid.
///
/// A first row that does not parse as numbers is taken as a header of node
/// labels. Explicit `labels` take precedence over both the header and the
/// default `"1".."n"`.
pub fn parse_dense_matrix(text: &str, labels: Option<Vec<String>>) -> Result<AdjacencyMatrix> {
    let mut header: Option<Vec<String>> = None;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let fields = split_fields(line);
        let parsed: std::result::Result<Vec<f64>, _> =
            fields.iter().map(|f| f.parse::<f64>()).collect();
        match parsed {
            Ok(row) => rows.push(row),
            Err(_) if rows.is_empty() && header.is_none() => {
                header = Some(
                    fields
                        .iter()
                        .map(|f| f.trim_matches('"').to_string())
                        .collect(),
                );
            }
            Err(e) => {
                return Err(Error::Parse {
                    line: k + 1,
                    message: e.to_string(),
                })
            }
        }
    }
    let n = rows.len();
    if n == 0 {
        return Err(Error::Empty);
    }
    for row in &rows {
        if row.len() != n {
            return Err(Error::NotSquare {
                rows: n,
                cols: row.len(),
            });
        }
    }
    let entries = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
    let labels = labels.or(header).unwrap_or_else(|| default_labels(n));
    AdjacencyMatrix::new(entries, labels)
}
