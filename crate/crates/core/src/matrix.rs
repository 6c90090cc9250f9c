//! Load matrices, composite-movement ranking and assignment cost matrices.
//!
//! A [`LoadMatrix`] holds the directed material flow between every ordered pair
//! of facilities. Cells with no flow are *vacant*, which is different from a
//! flow of zero: a vacant cell can never be used by the assignment stage, so it
//! becomes a forbidden cell of the [`CostMatrix`] rather than a large number.

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// Flow between two facilities, in load-units.
pub type Flow = u64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("load matrix is empty")]
    Empty,
    #[error("line {line}: header must start with `name` followed by facility names")]
    BadHeader { line: usize },
    #[error("line {line}: expected {expected} cells after the row name, found {found}")]
    NotSquare {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("expected {expected} data rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("line {line}: row name `{found}` does not match header column `{expected}`")]
    RowName {
        line: usize,
        expected: String,
        found: String,
    },
    #[error("facility name at position {index} is empty")]
    EmptyName { index: usize },
    #[error("duplicate facility name `{0}`")]
    DuplicateName(String),
    #[error("line {line}, cell ({row}, {col}): negative flow `{text}`")]
    NegativeFlow {
        line: usize,
        row: String,
        col: String,
        text: String,
    },
    #[error(
        "line {line}, cell ({row}, {col}): `{text}` is neither a non-negative integer nor `-`"
    )]
    InvalidCell {
        line: usize,
        row: String,
        col: String,
        text: String,
    },
    #[error("diagonal cell ({name}, {name}) must be vacant")]
    DiagonalNotVacant { name: String },
    #[error("malformed CSV: {0}")]
    Csv(String),
}

/// Directed flows `l_ij` between `n` named facilities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadMatrix {
    names: Vec<String>,
    flow: Vec<Option<Flow>>,
}

impl LoadMatrix {
    /// Builds a matrix from explicit rows; `None` marks a vacant cell.
    pub fn new(names: Vec<String>, rows: Vec<Vec<Option<Flow>>>) -> Result<Self, MatrixError> {
        let n = names.len();
        if n == 0 {
            return Err(MatrixError::Empty);
        }
        validate_names(&names)?;
        if rows.len() != n {
            return Err(MatrixError::RowCount {
                expected: n,
                found: rows.len(),
            });
        }
        let mut flow = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(MatrixError::NotSquare {
                    line: i + 2,
                    expected: n,
                    found: row.len(),
                });
            }
            if row[i].is_some() {
                return Err(MatrixError::DiagonalNotVacant {
                    name: names[i].clone(),
                });
            }
            flow.extend(row);
        }
        Ok(Self { names, flow })
    }

    /// Matrix with default names `F1..Fn` and every cell vacant.
    pub fn vacant(n: usize) -> Result<Self, MatrixError> {
        let names = (1..=n).map(|i| format!("F{i}")).collect();
        Self::new(names, vec![vec![None; n]; n])
    }

    /// Parses the `name,<facilities>` CSV layout. `-` and empty cells are vacant.
    pub fn parse_csv(text: &str) -> Result<Self, MatrixError> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());

        let mut records = Vec::new();
        for rec in reader.records() {
            let rec = rec.map_err(|e| MatrixError::Csv(e.to_string()))?;
            let line = rec.position().map(|p| p.line() as usize).unwrap_or(0);
            // Skip blank lines.
            if rec.len() == 1 && rec[0].is_empty() {
                continue;
            }
            records.push((line, rec));
        }
        let Some(((header_line, header), body)) = records.split_first() else {
            return Err(MatrixError::Empty);
        };
        if header.is_empty() || !header[0].eq_ignore_ascii_case("name") {
            return Err(MatrixError::BadHeader { line: *header_line });
        }
        let names: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
        let n = names.len();
        if n == 0 {
            return Err(MatrixError::Empty);
        }
        validate_names(&names)?;
        if body.len() != n {
            return Err(MatrixError::RowCount {
                expected: n,
                found: body.len(),
            });
        }

        let mut flow = Vec::with_capacity(n * n);
        for (i, (line, rec)) in body.iter().enumerate() {
            if rec.len() != n + 1 {
                return Err(MatrixError::NotSquare {
                    line: *line,
                    expected: n,
                    found: rec.len().saturating_sub(1),
                });
            }
            if rec[0] != names[i] {
                return Err(MatrixError::RowName {
                    line: *line,
                    expected: names[i].clone(),
                    found: rec[0].to_string(),
                });
            }
            for (j, text) in rec.iter().skip(1).enumerate() {
                let cell = parse_cell(text).map_err(|negative| {
                    let (row, col, text) = (names[i].clone(), names[j].clone(), text.to_string());
                    if negative {
                        MatrixError::NegativeFlow {
                            line: *line,
                            row,
                            col,
                            text,
                        }
                    } else {
                        MatrixError::InvalidCell {
                            line: *line,
                            row,
                            col,
                            text,
                        }
                    }
                })?;
                if i == j && cell.is_some() {
                    return Err(MatrixError::DiagonalNotVacant {
                        name: names[i].clone(),
                    });
                }
                flow.push(cell);
            }
        }
        Ok(Self { names, flow })
    }

    /// Writes the matrix back in the CSV layout accepted by [`parse_csv`](Self::parse_csv).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("name");
        for name in &self.names {
            out.push(',');
            out.push_str(name);
        }
        out.push('\n');
        for i in 0..self.n() {
            out.push_str(&self.names[i]);
            for j in 0..self.n() {
                match self.flow(i, j) {
                    Some(v) => write!(out, ",{v}").unwrap(),
                    None => out.push_str(",-"),
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Flow from facility `i` to facility `j`; `None` when the cell is vacant.
    pub fn flow(&self, i: usize, j: usize) -> Option<Flow> {
        self.flow[i * self.n() + j]
    }

    /// Non-vacant cells as `(from, to, flow)` in row-major order.
    pub fn flows(&self) -> impl Iterator<Item = (usize, usize, Flow)> + '_ {
        let n = self.n();
        self.flow
            .iter()
            .enumerate()
            .filter_map(move |(k, f)| f.map(|v| (k / n, k % n, v)))
    }

    /// Back-and-forth movement between `i` and `j`, vacant cells counting as zero.
    pub fn composite(&self, i: usize, j: usize) -> Flow {
        self.flow(i, j).unwrap_or(0) + self.flow(j, i).unwrap_or(0)
    }

    pub fn transpose(&self) -> LoadMatrix {
        let n = self.n();
        let mut flow = vec![None; n * n];
        for i in 0..n {
            for j in 0..n {
                flow[j * n + i] = self.flow(i, j);
            }
        }
        LoadMatrix {
            names: self.names.clone(),
            flow,
        }
    }

    /// Relabels facilities: facility `i` of `self` becomes facility `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> LoadMatrix {
        let n = self.n();
        assert_eq!(
            perm.len(),
            n,
            "permutation length must match facility count"
        );
        let mut names = vec![String::new(); n];
        let mut flow = vec![None; n * n];
        for i in 0..n {
            names[perm[i]] = self.names[i].clone();
            for j in 0..n {
                flow[perm[i] * n + perm[j]] = self.flow(i, j);
            }
        }
        LoadMatrix { names, flow }
    }

    /// Ranks facility pairs from most to least back-and-forth movement.
    pub fn composite_movements(&self) -> CompositeRanking {
        let n = self.n();
        let mut entries: Vec<CompositeEntry> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(a, b)| CompositeEntry {
                a,
                b,
                composite: self.composite(a, b),
            })
            .filter(|e| e.composite > 0)
            .collect();
        entries.sort_by(|x, y| {
            y.composite
                .cmp(&x.composite)
                .then((x.a, x.b).cmp(&(y.a, y.b)))
        });
        CompositeRanking { entries }
    }

    /// Turns flows into assignment costs; vacant cells (and the diagonal) are forbidden.
    pub fn to_cost_matrix(&self) -> CostMatrix {
        let n = self.n();
        let cells = self
            .flow
            .iter()
            .map(|f| f.map(|v| i64::try_from(v).expect("flow exceeds i64 range")))
            .collect();
        CostMatrix::from_cells(n, cells)
    }
}

fn validate_names(names: &[String]) -> Result<(), MatrixError> {
    let mut seen = HashSet::new();
    for (index, name) in names.iter().enumerate() {
        if name.trim().is_empty() {
            return Err(MatrixError::EmptyName { index });
        }
        if !seen.insert(name.as_str()) {
            return Err(MatrixError::DuplicateName(name.clone()));
        }
    }
    Ok(())
}

/// `Err(true)` for a negative number, `Err(false)` for anything else unparseable.
fn parse_cell(text: &str) -> Result<Option<Flow>, bool> {
    let t = text.trim();
    if t.is_empty() || t == "-" || t == "–" {
        return Ok(None);
    }
    if let Ok(v) = t.parse::<Flow>() {
        return Ok(Some(v));
    }
    match t.parse::<f64>() {
        Ok(v) if v < 0.0 => Err(true),
        _ => Err(false),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositeEntry {
    pub a: usize,
    pub b: usize,
    pub composite: Flow,
}

/// Pairs `(a, b)` with `a < b`, sorted by descending composite then by index.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CompositeRanking {
    pub entries: Vec<CompositeEntry>,
}

impl CompositeRanking {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, a: usize, b: usize) -> Option<Flow> {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        self.entries
            .iter()
            .find(|e| e.a == a && e.b == b)
            .map(|e| e.composite)
    }
}

/// Square assignment cost matrix with forbidden cells and reduction potentials.
///
/// The stored cells are always `original[i][j] - row_potential[i] - col_potential[j]`
/// for finite cells. Forbidden cells (`None`) are never used by an assignment and
/// take no part in minima.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostMatrix {
    n: usize,
    cells: Vec<Option<i64>>,
    row_potential: Vec<i64>,
    col_potential: Vec<i64>,
}

impl CostMatrix {
    pub fn new(rows: Vec<Vec<Option<i64>>>) -> Result<Self, MatrixError> {
        let n = rows.len();
        if n == 0 {
            return Err(MatrixError::Empty);
        }
        let mut cells = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(MatrixError::NotSquare {
                    line: i + 1,
                    expected: n,
                    found: row.len(),
                });
            }
            cells.extend(row);
        }
        Ok(Self::from_cells(n, cells))
    }

    /// Fully finite matrix.
    pub fn from_finite(rows: &[Vec<i64>]) -> Result<Self, MatrixError> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().copied().map(Some).collect())
                .collect(),
        )
    }

    pub(crate) fn from_cells(n: usize, cells: Vec<Option<i64>>) -> Self {
        debug_assert_eq!(cells.len(), n * n);
        Self {
            n,
            cells,
            row_potential: vec![0; n],
            col_potential: vec![0; n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Option<i64> {
        self.cells[i * self.n + j]
    }

    pub fn is_forbidden(&self, i: usize, j: usize) -> bool {
        self.get(i, j).is_none()
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, v: i64) {
        let cell = &mut self.cells[i * self.n + j];
        debug_assert!(cell.is_some(), "forbidden cells never receive a value");
        *cell = Some(v);
    }

    pub fn row(&self, i: usize) -> &[Option<i64>] {
        &self.cells[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<Option<i64>>> {
        self.cells.chunks(self.n).map(<[_]>::to_vec).collect()
    }

    pub fn row_potential(&self) -> &[i64] {
        &self.row_potential
    }

    pub fn col_potential(&self) -> &[i64] {
        &self.col_potential
    }

    pub(crate) fn potentials_mut(&mut self) -> (&mut [i64], &mut [i64]) {
        (&mut self.row_potential, &mut self.col_potential)
    }

    /// Sum of all row and column potentials.
    pub fn potential_total(&self) -> i64 {
        self.row_potential.iter().sum::<i64>() + self.col_potential.iter().sum::<i64>()
    }

    /// Cells equal to zero, row-major.
    pub fn zeros(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, c)| **c == Some(0))
            .map(move |(k, _)| (k / n, k % n))
    }

    /// Cost of a permutation `sigma` (row `i` to column `sigma[i]`), or `None`
    /// when it uses a forbidden cell.
    pub fn permutation_cost(&self, sigma: &[usize]) -> Option<i64> {
        sigma.iter().enumerate().map(|(i, &j)| self.get(i, j)).sum()
    }
}
