//! Hungarian method for square assignment problems with forbidden cells.
//!
//! The solver follows the textbook loop: reduce rows and columns, cover every
//! zero with the fewest lines, and while fewer than `n` lines suffice shift the
//! uncovered part of the table by its smallest entry. Forbidden cells never take
//! part in minima or covers. Every shift is recorded as row and column
//! potentials on the [`CostMatrix`], so `original - A_i - B_j` always equals the
//! current table and the potentials sum to the optimum at termination.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::matrix::CostMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Rows,
    Cols,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Rows => f.write_str("rows"),
            Side::Cols => f.write_str("columns"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AssignmentError {
    /// A Hall violator: `members` can only use the cells reaching `reach`,
    /// and `reach` is smaller than `members`.
    #[error("no assignment avoids forbidden cells: {side} {members:?} can only reach {reach:?}")]
    Infeasible {
        side: Side,
        members: Vec<usize>,
        reach: Vec<usize>,
    },
    #[error("cover uses {k} lines on a {n}x{n} table; nothing left to adjust")]
    CoverComplete { k: usize, n: usize },
}

/// Minimum set of rows and columns covering every zero of a reduced table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineCover {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub k: usize,
}

impl LineCover {
    pub fn covers_row(&self, i: usize) -> bool {
        self.rows.binary_search(&i).is_ok()
    }

    pub fn covers_col(&self, j: usize) -> bool {
        self.cols.binary_search(&j).is_ok()
    }

    pub fn covers(&self, i: usize, j: usize) -> bool {
        self.covers_row(i) || self.covers_col(j)
    }
}

/// Row `i` is assigned to column `sigma[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    pub sigma: Vec<usize>,
    pub objective: i64,
    pub certificate_k: usize,
}

impl Assignment {
    pub fn n(&self) -> usize {
        self.sigma.len()
    }

    /// Disjoint cycles of `sigma`, each starting at its smallest member.
    /// Cycles are listed by their smallest member.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.sigma[cur];
            }
            out.push(cycle);
        }
        out
    }
}

/// One pass of the solver loop: the table, its cover, and the shift applied
/// (`None` on the final pass where the cover reached `n`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HungarianStep {
    pub table: CostMatrix,
    pub cover: LineCover,
    pub delta: Option<i64>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HungarianTrace {
    pub steps: Vec<HungarianStep>,
}

/// Subtracts each row's finite minimum, then each column's finite minimum.
pub fn reduce(c: &CostMatrix) -> Result<CostMatrix, AssignmentError> {
    let n = c.n();
    for i in 0..n {
        if (0..n).all(|j| c.is_forbidden(i, j)) {
            return Err(AssignmentError::Infeasible {
                side: Side::Rows,
                members: vec![i],
                reach: vec![],
            });
        }
    }
    for j in 0..n {
        if (0..n).all(|i| c.is_forbidden(i, j)) {
            return Err(AssignmentError::Infeasible {
                side: Side::Cols,
                members: vec![j],
                reach: vec![],
            });
        }
    }

    let mut out = c.clone();
    for i in 0..n {
        let min = out.row(i).iter().flatten().copied().min().unwrap();
        if min != 0 {
            for j in 0..n {
                if let Some(v) = out.get(i, j) {
                    out.set(i, j, v - min);
                }
            }
            out.potentials_mut().0[i] += min;
        }
    }
    for j in 0..n {
        let min = (0..n).filter_map(|i| out.get(i, j)).min().unwrap();
        if min != 0 {
            for i in 0..n {
                if let Some(v) = out.get(i, j) {
                    out.set(i, j, v - min);
                }
            }
            out.potentials_mut().1[j] += min;
        }
    }
    Ok(out)
}

/// Fewest lines covering all zeros, built from a maximum matching on zero cells.
///
/// Ties between equally small covers are settled by the row-side König
/// construction over a matching found in row order, lowest column first.
pub fn min_line_cover(c: &CostMatrix) -> LineCover {
    let zero = |i: usize, j: usize| c.get(i, j) == Some(0);
    let m = Matching::maximum(c.n(), &zero, None);
    konig_cover(c.n(), &zero, &m)
}

/// Shifts the table by the smallest uncovered entry `δ`: uncovered cells lose
/// `δ`, doubly covered cells gain `δ`.
pub fn adjust(c: &CostMatrix, cover: &LineCover) -> Result<CostMatrix, AssignmentError> {
    adjust_with_delta(c, cover).map(|(m, _)| m)
}

fn adjust_with_delta(
    c: &CostMatrix,
    cover: &LineCover,
) -> Result<(CostMatrix, i64), AssignmentError> {
    let n = c.n();
    if cover.k >= n {
        return Err(AssignmentError::CoverComplete { k: cover.k, n });
    }
    let open_rows: Vec<usize> = (0..n).filter(|&i| !cover.covers_row(i)).collect();
    let open_cols: Vec<usize> = (0..n).filter(|&j| !cover.covers_col(j)).collect();
    let delta = open_rows
        .iter()
        .flat_map(|&i| open_cols.iter().filter_map(move |&j| c.get(i, j)))
        .min();
    let Some(delta) = delta else {
        let mut reach: Vec<usize> = open_rows
            .iter()
            .flat_map(|&i| (0..n).filter(move |&j| !c.is_forbidden(i, j)))
            .collect();
        reach.sort_unstable();
        reach.dedup();
        return Err(AssignmentError::Infeasible {
            side: Side::Rows,
            members: open_rows,
            reach,
        });
    };

    let mut out = c.clone();
    for i in 0..n {
        let row_covered = cover.covers_row(i);
        for j in 0..n {
            let Some(v) = out.get(i, j) else { continue };
            match (row_covered, cover.covers_col(j)) {
                (false, false) => out.set(i, j, v - delta),
                (true, true) => out.set(i, j, v + delta),
                _ => {}
            }
        }
    }
    let (rows, cols) = out.potentials_mut();
    for &i in &open_rows {
        rows[i] += delta;
    }
    for &j in &cover.cols {
        cols[j] -= delta;
    }
    Ok((out, delta))
}

/// Minimum-cost assignment over finite cells.
///
/// Among all optimal assignments the lexicographically smallest `sigma` is
/// returned.
pub fn solve_assignment(c: &CostMatrix) -> Result<Assignment, AssignmentError> {
    solve_assignment_traced(c).map(|(a, _)| a)
}

/// Like [`solve_assignment`], also returning every intermediate table.
pub fn solve_assignment_traced(
    c: &CostMatrix,
) -> Result<(Assignment, HungarianTrace), AssignmentError> {
    let n = c.n();
    check_feasible(c)?;

    let mut table = reduce(c)?;
    let mut matching = Matching::empty(n);
    let mut trace = HungarianTrace::default();
    loop {
        let zero = |i: usize, j: usize| table.get(i, j) == Some(0);
        matching = Matching::maximum(n, &zero, Some(matching));
        let cover = konig_cover(n, &zero, &matching);
        if cover.k == n {
            trace.steps.push(HungarianStep {
                table: table.clone(),
                cover,
                delta: None,
            });
            break;
        }
        let (next, delta) = adjust_with_delta(&table, &cover)?;
        trace.steps.push(HungarianStep {
            table,
            cover,
            delta: Some(delta),
        });
        table = next;
    }

    let zero = |i: usize, j: usize| table.get(i, j) == Some(0);
    let sigma = lexicographic_perfect(n, &zero, matching);
    let objective = c
        .permutation_cost(&sigma)
        .expect("zero cells of the reduced table are finite");
    Ok((
        Assignment {
            sigma,
            objective,
            certificate_k: n,
        },
        trace,
    ))
}

/// Returns a Hall violator when no perfect matching on finite cells exists.
pub fn check_feasible(c: &CostMatrix) -> Result<(), AssignmentError> {
    let n = c.n();
    let finite = |i: usize, j: usize| !c.is_forbidden(i, j);
    let m = Matching::maximum(n, &finite, None);
    let Some(root) = m.row_to.iter().position(Option::is_none) else {
        return Ok(());
    };
    let (rows, cols) = alternating_reach(n, &finite, &m, &[root]);
    Err(AssignmentError::Infeasible {
        side: Side::Rows,
        members: indices(&rows),
        reach: indices(&cols),
    })
}

/// Size of a maximum matching restricted to zero cells.
pub fn max_zero_matching(c: &CostMatrix) -> usize {
    let zero = |i: usize, j: usize| c.get(i, j) == Some(0);
    Matching::maximum(c.n(), &zero, None).size()
}

fn indices(mask: &[bool]) -> Vec<usize> {
    mask.iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(i))
        .collect()
}

#[derive(Debug, Clone)]
struct Matching {
    row_to: Vec<Option<usize>>,
    col_to: Vec<Option<usize>>,
}

impl Matching {
    fn empty(n: usize) -> Self {
        Self {
            row_to: vec![None; n],
            col_to: vec![None; n],
        }
    }

    fn size(&self) -> usize {
        self.row_to.iter().flatten().count()
    }

    /// Kuhn's augmenting paths in row order; `warm` edges still present in
    /// the graph are kept.
    fn maximum(n: usize, adj: &impl Fn(usize, usize) -> bool, warm: Option<Matching>) -> Self {
        let mut m = Matching::empty(n);
        if let Some(w) = warm {
            for (i, j) in w.row_to.iter().enumerate() {
                if let Some(j) = *j {
                    if adj(i, j) {
                        m.row_to[i] = Some(j);
                        m.col_to[j] = Some(i);
                    }
                }
            }
        }
        for i in 0..n {
            if m.row_to[i].is_none() {
                let mut visited = vec![false; n];
                m.augment(n, adj, i, &mut visited, &|_| true);
            }
        }
        m
    }

    fn augment(
        &mut self,
        n: usize,
        adj: &impl Fn(usize, usize) -> bool,
        row: usize,
        visited: &mut [bool],
        col_ok: &impl Fn(usize) -> bool,
    ) -> bool {
        for j in 0..n {
            if visited[j] || !col_ok(j) || !adj(row, j) {
                continue;
            }
            visited[j] = true;
            let free = match self.col_to[j] {
                None => true,
                Some(r) => self.augment(n, adj, r, visited, col_ok),
            };
            if free {
                self.row_to[row] = Some(j);
                self.col_to[j] = Some(row);
                return true;
            }
        }
        false
    }
}

/// Rows and columns reachable from `roots` by alternating paths
/// (any edge row to column, matched edge column to row).
fn alternating_reach(
    n: usize,
    adj: &impl Fn(usize, usize) -> bool,
    m: &Matching,
    roots: &[usize],
) -> (Vec<bool>, Vec<bool>) {
    let mut rows = vec![false; n];
    let mut cols = vec![false; n];
    let mut queue: VecDeque<usize> = roots.iter().copied().collect();
    for &r in roots {
        rows[r] = true;
    }
    while let Some(i) = queue.pop_front() {
        for (j, seen) in cols.iter_mut().enumerate() {
            if *seen || !adj(i, j) {
                continue;
            }
            *seen = true;
            if let Some(r) = m.col_to[j] {
                if !rows[r] {
                    rows[r] = true;
                    queue.push_back(r);
                }
            }
        }
    }
    (rows, cols)
}

fn konig_cover(n: usize, adj: &impl Fn(usize, usize) -> bool, m: &Matching) -> LineCover {
    let roots: Vec<usize> = (0..n).filter(|&i| m.row_to[i].is_none()).collect();
    let (reach_rows, reach_cols) = alternating_reach(n, adj, m, &roots);
    let rows: Vec<usize> = (0..n).filter(|&i| !reach_rows[i]).collect();
    let cols = indices(&reach_cols);
    let k = rows.len() + cols.len();
    debug_assert_eq!(k, m.size());
    LineCover { rows, cols, k }
}

/// Lexicographically smallest perfect matching, starting from any perfect one.
fn lexicographic_perfect(
    n: usize,
    adj: &impl Fn(usize, usize) -> bool,
    mut m: Matching,
) -> Vec<usize> {
    let mut fixed = vec![false; n];
    for i in 0..n {
        let current = m.row_to[i].expect("matching is perfect");
        for j in 0..n {
            if fixed[j] || !adj(i, j) {
                continue;
            }
            if j == current {
                break;
            }
            // Move row i onto column j and try to re-seat j's old row on the
            // columns that are still free to change.
            let displaced = m.col_to[j].expect("perfect matching covers every column");
            let mut trial = m.clone();
            trial.row_to[i] = Some(j);
            trial.col_to[j] = Some(i);
            trial.row_to[displaced] = None;
            trial.col_to[current] = None;
            let mut visited = vec![false; n];
            let blocked = |col: usize| !fixed[col] && col != j;
            if trial.augment(n, adj, displaced, &mut visited, &blocked) {
                m = trial;
                break;
            }
        }
        fixed[m.row_to[i].unwrap()] = true;
    }
    m.row_to.into_iter().map(Option::unwrap).collect()
}
