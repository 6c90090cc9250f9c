//! Floor geometry, block layouts and the load-distance cost.
//!
//! A floor is divided into a `rows x cols` grid of equal facility cells with an
//! aisle between neighbouring cells and none along the walls, so
//! `cols * cell_w + (cols - 1) * aisle = width` (likewise for height).

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::exact::Exact;
use crate::hungarian::Assignment;
use crate::matrix::{Flow, LoadMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LayoutError {
    #[error("floor dimensions and aisle width must be positive")]
    NonPositiveDimension,
    #[error(
        "no grid with at least {n} cells fits a {width} x {height} m floor with {aisle} m aisles"
    )]
    NoFeasibleGrid {
        n: usize,
        width: Exact,
        height: Exact,
        aisle: Exact,
    },
    #[error("a {rows} x {cols} grid leaves no room for cells between {aisle} m aisles")]
    GridTooFine {
        rows: usize,
        cols: usize,
        aisle: Exact,
    },
    #[error("{n} facilities do not fit in {slots} slots")]
    TooManyFacilities { n: usize, slots: usize },
    #[error("facility {0} is not placed")]
    Unplaced(usize),
    #[error("slot ({row}, {col}) lies outside the grid")]
    SlotOutOfRange { row: usize, col: usize },
    #[error("slot ({row}, {col}) holds more than one facility")]
    SlotReused { row: usize, col: usize },
    #[error("layout places {placed} facilities but the load matrix has {expected}")]
    FacilityCount { placed: usize, expected: usize },
    #[error("unknown facility `{0}`")]
    UnknownFacility(String),
    #[error("rows and cols must be given together")]
    PartialGrid,
}

/// How the distance between two placed facilities is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceModel {
    /// Facilities sharing a column are one aisle apart; otherwise each column
    /// step costs one cell width plus one aisle and rows are ignored.
    Paper,
    /// Manhattan distance between cell centroids.
    #[default]
    RectilinearCentroid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Slot {
    pub row: usize,
    pub col: usize,
}

impl Slot {
    pub fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FloorPlan {
    pub width_m: Exact,
    pub height_m: Exact,
    pub aisle_m: Exact,
    pub rows: usize,
    pub cols: usize,
    pub cell_w_m: Exact,
    pub cell_h_m: Exact,
}

/// Floor description as read from a JSON config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FloorConfig {
    pub width_m: Exact,
    pub height_m: Exact,
    pub aisle_m: Exact,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rows: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cols: Option<usize>,
}

impl FloorConfig {
    pub fn plan_for(&self, n: usize) -> Result<FloorPlan, LayoutError> {
        match (self.rows, self.cols) {
            (Some(rows), Some(cols)) => {
                let plan =
                    FloorPlan::with_grid(self.width_m, self.height_m, self.aisle_m, rows, cols)?;
                if plan.slots() < n {
                    return Err(LayoutError::TooManyFacilities {
                        n,
                        slots: plan.slots(),
                    });
                }
                Ok(plan)
            }
            (None, None) => FloorPlan::build(self.width_m, self.height_m, self.aisle_m, n),
            _ => Err(LayoutError::PartialGrid),
        }
    }
}

impl FloorPlan {
    /// Fixed grid shape; cell sizes follow from the floor and aisle widths.
    pub fn with_grid(
        width_m: Exact,
        height_m: Exact,
        aisle_m: Exact,
        rows: usize,
        cols: usize,
    ) -> Result<Self, LayoutError> {
        if !(width_m.is_positive() && height_m.is_positive() && aisle_m.is_positive()) {
            return Err(LayoutError::NonPositiveDimension);
        }
        let too_fine = || LayoutError::GridTooFine {
            rows,
            cols,
            aisle: aisle_m,
        };
        if rows == 0 || cols == 0 {
            return Err(too_fine());
        }
        let cell = |total: Exact, count: usize| {
            let count = count as i64;
            (total - aisle_m * (count - 1)) * Exact::ratio(1, count)
        };
        let cell_w_m = cell(width_m, cols);
        let cell_h_m = cell(height_m, rows);
        if !(cell_w_m.is_positive() && cell_h_m.is_positive()) {
            return Err(too_fine());
        }
        Ok(Self {
            width_m,
            height_m,
            aisle_m,
            rows,
            cols,
            cell_w_m,
            cell_h_m,
        })
    }

    /// Picks the grid with the fewest cells that still holds `n` facilities.
    ///
    /// Among equally small grids the one with the squarest cells wins, then the
    /// one with fewer rows.
    pub fn build(
        width_m: Exact,
        height_m: Exact,
        aisle_m: Exact,
        n: usize,
    ) -> Result<Self, LayoutError> {
        if !(width_m.is_positive() && height_m.is_positive() && aisle_m.is_positive()) || n == 0 {
            return Err(LayoutError::NonPositiveDimension);
        }
        let mut best: Option<(usize, Exact, usize, FloorPlan)> = None;
        for rows in 1..=n {
            for cols in 1..=n {
                if rows * cols < n {
                    continue;
                }
                let Ok(plan) = Self::with_grid(width_m, height_m, aisle_m, rows, cols) else {
                    continue;
                };
                let aspect = plan.cell_w_m * recip(plan.cell_h_m);
                let mismatch = aspect.max(recip(aspect));
                let key = (rows * cols, mismatch, rows);
                if best.as_ref().is_none_or(|(p, m, r, _)| key < (*p, *m, *r)) {
                    best = Some((key.0, key.1, key.2, plan));
                }
            }
        }
        best.map(|(_, _, _, plan)| plan)
            .ok_or(LayoutError::NoFeasibleGrid {
                n,
                width: width_m,
                height: height_m,
                aisle: aisle_m,
            })
    }

    pub fn slots(&self) -> usize {
        self.rows * self.cols
    }

    /// Row-major index of a slot.
    pub fn slot_index(&self, slot: Slot) -> usize {
        slot.row * self.cols + slot.col
    }

    pub fn slot_at(&self, index: usize) -> Slot {
        Slot::new(index / self.cols, index % self.cols)
    }

    pub fn contains(&self, slot: Slot) -> bool {
        slot.row < self.rows && slot.col < self.cols
    }

    pub fn slot_distance(&self, a: Slot, b: Slot, model: DistanceModel) -> Exact {
        if a == b {
            return Exact::ZERO;
        }
        let dcol = a.col.abs_diff(b.col) as i64;
        let drow = a.row.abs_diff(b.row) as i64;
        match model {
            DistanceModel::Paper => {
                if dcol == 0 {
                    self.aisle_m
                } else {
                    (self.cell_w_m + self.aisle_m) * dcol
                }
            }
            DistanceModel::RectilinearCentroid => {
                (self.cell_w_m + self.aisle_m) * dcol + (self.cell_h_m + self.aisle_m) * drow
            }
        }
    }
}

fn recip(x: Exact) -> Exact {
    Exact::ratio(x.denom(), x.numer())
}

/// Facility `i` sits in `placement[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockLayout {
    plan: FloorPlan,
    placement: Vec<Slot>,
}

impl BlockLayout {
    pub fn new(plan: FloorPlan, placement: Vec<Slot>) -> Result<Self, LayoutError> {
        if placement.len() > plan.slots() {
            return Err(LayoutError::TooManyFacilities {
                n: placement.len(),
                slots: plan.slots(),
            });
        }
        let mut used = vec![false; plan.slots()];
        for &slot in &placement {
            if !plan.contains(slot) {
                return Err(LayoutError::SlotOutOfRange {
                    row: slot.row,
                    col: slot.col,
                });
            }
            let idx = plan.slot_index(slot);
            if std::mem::replace(&mut used[idx], true) {
                return Err(LayoutError::SlotReused {
                    row: slot.row,
                    col: slot.col,
                });
            }
        }
        Ok(Self { plan, placement })
    }

    /// Places facility `i` in row-major slot `slot_indices[i]`.
    pub fn from_slot_indices(plan: FloorPlan, slot_indices: &[usize]) -> Result<Self, LayoutError> {
        let placement = slot_indices
            .iter()
            .map(|&s| {
                if s < plan.slots() {
                    Ok(plan.slot_at(s))
                } else {
                    Err(LayoutError::SlotOutOfRange {
                        row: s / plan.cols,
                        col: s % plan.cols,
                    })
                }
            })
            .collect::<Result<_, _>>()?;
        Self::new(plan, placement)
    }

    pub fn plan(&self) -> &FloorPlan {
        &self.plan
    }

    pub fn n(&self) -> usize {
        self.placement.len()
    }

    pub fn placement(&self) -> &[Slot] {
        &self.placement
    }

    pub fn slot_of(&self, facility: usize) -> Option<Slot> {
        self.placement.get(facility).copied()
    }

    pub fn slot_indices(&self) -> Vec<usize> {
        self.placement
            .iter()
            .map(|&s| self.plan.slot_index(s))
            .collect()
    }

    /// Occupant of every row-major slot.
    pub fn occupancy(&self) -> Vec<Option<usize>> {
        let mut occ = vec![None; self.plan.slots()];
        for (f, &s) in self.placement.iter().enumerate() {
            occ[self.plan.slot_index(s)] = Some(f);
        }
        occ
    }

    pub fn report(&self, names: &[String]) -> LayoutReport {
        LayoutReport {
            plan: self.plan.clone(),
            placement: self
                .placement
                .iter()
                .enumerate()
                .map(|(f, s)| PlacementRecord {
                    facility: names[f].clone(),
                    row: s.row,
                    col: s.col,
                })
                .collect(),
        }
    }

    /// Rebuilds a layout from its JSON form, matching facilities by name.
    pub fn from_report(report: &LayoutReport, m: &LoadMatrix) -> Result<Self, LayoutError> {
        if report.placement.len() != m.n() {
            return Err(LayoutError::FacilityCount {
                placed: report.placement.len(),
                expected: m.n(),
            });
        }
        let mut placement = vec![None; m.n()];
        for rec in &report.placement {
            let f = m
                .index_of(&rec.facility)
                .ok_or_else(|| LayoutError::UnknownFacility(rec.facility.clone()))?;
            placement[f] = Some(Slot::new(rec.row, rec.col));
        }
        let placement = placement
            .into_iter()
            .enumerate()
            .map(|(f, s)| s.ok_or(LayoutError::Unplaced(f)))
            .collect::<Result<_, _>>()?;
        Self::new(report.plan.clone(), placement)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlacementRecord {
    pub facility: String,
    pub row: usize,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayoutReport {
    pub plan: FloorPlan,
    pub placement: Vec<PlacementRecord>,
}

pub fn distance(
    layout: &BlockLayout,
    i: usize,
    j: usize,
    model: DistanceModel,
) -> Result<Exact, LayoutError> {
    let a = layout.slot_of(i).ok_or(LayoutError::Unplaced(i))?;
    let b = layout.slot_of(j).ok_or(LayoutError::Unplaced(j))?;
    Ok(layout.plan.slot_distance(a, b, model))
}

/// One `flow * distance` contribution to the load function.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostTerm {
    pub from: usize,
    pub to: usize,
    pub flow: Flow,
    pub distance: Exact,
    pub cost: Exact,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostReport {
    pub total: Exact,
    pub terms: Vec<CostTerm>,
}

/// Load function: sum of `flow(i -> j) * d(i, j)` over non-vacant cells.
pub fn total_cost(
    layout: &BlockLayout,
    m: &LoadMatrix,
    model: DistanceModel,
) -> Result<CostReport, LayoutError> {
    if layout.n() != m.n() {
        return Err(LayoutError::FacilityCount {
            placed: layout.n(),
            expected: m.n(),
        });
    }
    let terms: Vec<CostTerm> = m
        .flows()
        .map(|(from, to, flow)| {
            let distance =
                layout
                    .plan
                    .slot_distance(layout.placement[from], layout.placement[to], model);
            CostTerm {
                from,
                to,
                flow,
                distance,
                cost: distance * flow as i64,
            }
        })
        .collect();
    Ok(CostReport {
        total: terms.iter().map(|t| t.cost).sum(),
        terms,
    })
}

/// Left-to-right order of the facility groups formed from an assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ColumnOrder {
    /// Heaviest internal composite flow first; ties go to the lowest facility index.
    #[default]
    CompositeDescending,
    /// Groups in order of their lowest facility index.
    FacilityIndex,
}

/// Initial layout from an assignment, groups ordered by composite flow.
pub fn initial_layout(
    a: &Assignment,
    m: &LoadMatrix,
    plan: &FloorPlan,
) -> Result<BlockLayout, LayoutError> {
    initial_layout_ordered(a, m, plan, ColumnOrder::CompositeDescending)
}

/// Places the cycles of the assignment on the grid.
///
/// Two-cycles become pairs that share a column, one above the other across
/// the aisle, whenever a column still has two free cells. Longer cycles become
/// chains in cycle order and, together with fixed points and pairs that did
/// not fit, fill the remaining cells column by column.
pub fn initial_layout_ordered(
    a: &Assignment,
    m: &LoadMatrix,
    plan: &FloorPlan,
    order: ColumnOrder,
) -> Result<BlockLayout, LayoutError> {
    let n = m.n();
    if a.n() != n {
        return Err(LayoutError::FacilityCount {
            placed: a.n(),
            expected: n,
        });
    }
    if n > plan.slots() {
        return Err(LayoutError::TooManyFacilities {
            n,
            slots: plan.slots(),
        });
    }

    let mut groups = a.cycles();
    if order == ColumnOrder::CompositeDescending {
        let weight =
            |g: &Vec<usize>| -> Flow { g.windows(2).map(|w| m.composite(w[0], w[1])).sum() };
        // Stable sort keeps lowest-index-first among equal weights.
        groups.sort_by_key(|g| std::cmp::Reverse(weight(g)));
    }

    let mut free = vec![vec![true; plan.rows]; plan.cols];
    let mut placement = vec![None; n];
    let mut rest = Vec::new();
    for group in groups {
        if group.len() == 2 && plan.rows >= 2 {
            let col = (0..plan.cols).find(|&c| free[c].iter().filter(|&&f| f).count() >= 2);
            if let Some(c) = col {
                let mut rows = (0..plan.rows).filter(|&r| free[c][r]);
                for &f in &group {
                    let r = rows.next().unwrap();
                    placement[f] = Some(Slot::new(r, c));
                }
                for &f in &group {
                    free[c][placement[f].unwrap().row] = false;
                }
                continue;
            }
        }
        rest.push(group);
    }
    let mut open = (0..plan.cols)
        .flat_map(|c| (0..plan.rows).map(move |r| (r, c)))
        .filter(|&(r, c)| free[c][r]);
    for f in rest.into_iter().flatten() {
        let (r, c) = open.next().expect("slot count checked above");
        placement[f] = Some(Slot::new(r, c));
    }
    let placement = placement.into_iter().map(Option::unwrap).collect();
    BlockLayout::new(plan.clone(), placement)
}

/// Box diagram of the grid: one fixed-width box per cell, one character of
/// gutter for each aisle.
pub fn render_ascii(layout: &BlockLayout, names: &[String]) -> String {
    let plan = layout.plan();
    let occ = layout.occupancy();
    let width = names
        .iter()
        .map(|n| n.chars().count())
        .max()
        .unwrap_or(1)
        .max(1)
        + 2;
    let border = format!("+{}+", "-".repeat(width));
    let mut out = String::new();
    for r in 0..plan.rows {
        if r > 0 {
            out.push('\n');
        }
        let line =
            |f: &dyn Fn(usize) -> String| (0..plan.cols).map(f).collect::<Vec<_>>().join(" ");
        let _ = writeln!(out, "{}", line(&|_| border.clone()));
        let _ = writeln!(
            out,
            "{}",
            line(&|c| {
                let label = occ[plan.slot_index(Slot::new(r, c))]
                    .map(|f| names[f].as_str())
                    .unwrap_or("");
                format!("|{label:^width$}|")
            })
        );
        let _ = writeln!(out, "{}", line(&|_| border.clone()));
    }
    out
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.row, self.col)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE_CSV: &str = "\
name,I,II,III,IV,V,VI
I,-,20,-,-,-,25
II,10,-,15,-,-,-
III,-,-,-,30,-,-
IV,-,-,50,-,-,40
V,-,-,-,-,-,10
VI,-,-,-,-,15,-
";

    fn e(v: i64) -> Exact {
        Exact::from_int(v)
    }

    fn example_plan() -> FloorPlan {
        FloorPlan::build(e(64), e(22), e(2), 6).unwrap()
    }

    /// Columns hold (I,II), (III,IV), (V,VI) from left to right.
    fn pictured_layout() -> BlockLayout {
        let s = Slot::new;
        BlockLayout::new(
            example_plan(),
            vec![s(0, 0), s(1, 0), s(0, 1), s(1, 1), s(0, 2), s(1, 2)],
        )
        .unwrap()
    }

    #[test]
    fn example_floor_plan() {
        let p = example_plan();
        assert_eq!((p.rows, p.cols), (2, 3));
        assert_eq!((p.cell_w_m, p.cell_h_m), (e(20), e(10)));
    }

    #[test]
    fn single_cell_floor() {
        let p = FloorPlan::build(e(10), e(10), e(2), 1).unwrap();
        assert_eq!(
            (p.rows, p.cols, p.cell_w_m, p.cell_h_m),
            (1, 1, e(10), e(10))
        );
    }

    #[test]
    fn strip_floor() {
        let p = FloorPlan::build(e(46), e(10), e(2), 4).unwrap();
        assert_eq!(
            (p.rows, p.cols, p.cell_w_m, p.cell_h_m),
            (1, 4, e(10), e(10))
        );
    }

    #[test]
    fn aisle_too_wide() {
        assert!(matches!(
            FloorPlan::build(e(3), e(3), e(4), 2),
            Err(LayoutError::NoFeasibleGrid { .. })
        ));
        assert_eq!(
            FloorPlan::build(e(3), e(3), e(0), 2),
            Err(LayoutError::NonPositiveDimension)
        );
    }

    #[test]
    fn grid_override() {
        let cfg = FloorConfig {
            width_m: e(64),
            height_m: e(22),
            aisle_m: e(2),
            rows: Some(1),
            cols: Some(6),
        };
        let p = cfg.plan_for(6).unwrap();
        assert_eq!((p.rows, p.cols, p.cell_w_m), (1, 6, e(9)));
        assert!(cfg.plan_for(7).is_err());
    }

    #[test]
    fn paper_distances() {
        let l = pictured_layout();
        let d = |i, j| distance(&l, i, j, DistanceModel::Paper).unwrap();
        assert_eq!(d(0, 1), e(2));
        assert_eq!(d(0, 5), e(44));
        assert_eq!(d(3, 5), e(22));
        assert_eq!(d(4, 4), e(0));
        assert_eq!(
            distance(&l, 0, 9, DistanceModel::Paper),
            Err(LayoutError::Unplaced(9))
        );
    }

    #[test]
    fn centroid_distances() {
        let l = pictured_layout();
        let d = |i, j| distance(&l, i, j, DistanceModel::RectilinearCentroid).unwrap();
        assert_eq!(d(0, 2), e(22));
        assert_eq!(d(0, 1), e(12));
        assert_eq!(d(0, 3), e(34));
    }

    #[test]
    fn example_costs() {
        let m = LoadMatrix::parse_csv(EXAMPLE_CSV).unwrap();
        let initial = total_cost(&pictured_layout(), &m, DistanceModel::Paper).unwrap();
        assert_eq!(initial.total, e(2580));
        let s = Slot::new;
        let final_layout = BlockLayout::new(
            example_plan(),
            vec![s(0, 0), s(1, 0), s(0, 2), s(1, 2), s(0, 1), s(1, 1)],
        )
        .unwrap();
        let fin = total_cost(&final_layout, &m, DistanceModel::Paper).unwrap();
        assert_eq!(fin.total, e(2360));
    }

    #[test]
    fn vacant_matrix_costs_nothing() {
        let m = LoadMatrix::vacant(6).unwrap();
        let r = total_cost(&pictured_layout(), &m, DistanceModel::Paper).unwrap();
        assert_eq!(r.total, e(0));
        assert!(r.terms.is_empty());
    }

    #[test]
    fn rejects_bad_placements() {
        let s = Slot::new;
        assert!(matches!(
            BlockLayout::new(example_plan(), vec![s(0, 0), s(0, 0)]),
            Err(LayoutError::SlotReused { .. })
        ));
        assert!(matches!(
            BlockLayout::new(example_plan(), vec![s(2, 0)]),
            Err(LayoutError::SlotOutOfRange { .. })
        ));
    }

    #[test]
    fn initial_layout_pairs_share_columns() {
        let m = LoadMatrix::parse_csv(EXAMPLE_CSV).unwrap();
        let a = Assignment {
            sigma: vec![1, 0, 3, 2, 5, 4],
            objective: 135,
            certificate_k: 6,
        };
        let l = initial_layout(&a, &m, &example_plan()).unwrap();
        let cols: Vec<_> = l.placement().iter().map(|s| s.col).collect();
        // (III,IV) composite 80, (I,II) 30, (V,VI) 25.
        assert_eq!(cols, vec![1, 1, 0, 0, 2, 2]);

        let l =
            initial_layout_ordered(&a, &m, &example_plan(), ColumnOrder::FacilityIndex).unwrap();
        assert_eq!(l, pictured_layout());
        assert_eq!(
            total_cost(&l, &m, DistanceModel::Paper).unwrap().total,
            e(2580)
        );
    }

    #[test]
    fn initial_layout_single_facility() {
        let m = LoadMatrix::vacant(1).unwrap();
        let a = Assignment {
            sigma: vec![0],
            objective: 0,
            certificate_k: 1,
        };
        let plan = FloorPlan::build(e(10), e(10), e(2), 1).unwrap();
        let l = initial_layout(&a, &m, &plan).unwrap();
        assert_eq!(l.placement(), &[Slot::new(0, 0)]);
    }

    #[test]
    fn three_cycle_becomes_chain() {
        let m = LoadMatrix::parse_csv("name,A,B,C\nA,-,1,-\nB,-,-,1\nC,1,-,-\n").unwrap();
        let a = Assignment {
            sigma: vec![1, 2, 0],
            objective: 3,
            certificate_k: 3,
        };
        let plan = FloorPlan::with_grid(e(34), e(10), e(2), 1, 3).unwrap();
        let l = initial_layout(&a, &m, &plan).unwrap();
        assert_eq!(
            l.placement(),
            &[Slot::new(0, 0), Slot::new(0, 1), Slot::new(0, 2)]
        );
    }

    #[test]
    fn too_many_facilities() {
        let m = LoadMatrix::vacant(3).unwrap();
        let a = Assignment {
            sigma: vec![1, 2, 0],
            objective: 0,
            certificate_k: 3,
        };
        let plan = FloorPlan::with_grid(e(22), e(10), e(2), 1, 2).unwrap();
        assert!(matches!(
            initial_layout(&a, &m, &plan),
            Err(LayoutError::TooManyFacilities { .. })
        ));
    }

    #[test]
    fn report_round_trip() {
        let m = LoadMatrix::parse_csv(EXAMPLE_CSV).unwrap();
        let l = pictured_layout();
        let rep = l.report(m.names());
        let json = serde_json::to_string(&rep).unwrap();
        let back: LayoutReport = serde_json::from_str(&json).unwrap();
        assert_eq!(BlockLayout::from_report(&back, &m).unwrap(), l);
    }

    #[test]
    fn ascii_has_names_in_place() {
        let m = LoadMatrix::parse_csv(EXAMPLE_CSV).unwrap();
        let text = render_ascii(&pictured_layout(), m.names());
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[1].starts_with("|  I  | | III |"));
        assert!(lines[1].contains("III"));
        assert!(lines[5].contains("II") && lines[5].contains("VI"));
    }
}
