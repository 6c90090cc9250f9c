//! CRAFT-style improvement of block layouts.
//!
//! Each pass evaluates every candidate move from scratch, applies the one with
//! the largest cost decrease and stops once no move lowers the load function.
//! Moves are exchanges of two cells, optional 3-cycles of cells, and optional
//! exchanges of two whole grid columns or rows. Empty cells take part as
//! facilities without flow, which lets a facility move into vacant space.

use serde::{Deserialize, Serialize};

use crate::exact::Exact;
use crate::layout::{BlockLayout, DistanceModel, FloorPlan, LayoutError};
use crate::matrix::LoadMatrix;

/// Largest facility count the exhaustive oracle accepts.
pub const ORACLE_MAX_FACILITIES: usize = 8;
/// Largest number of placements the exhaustive oracle will enumerate.
pub const ORACLE_MAX_PLACEMENTS: u64 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CraftError {
    #[error("instance too large for enumeration: {n} facilities, {placements} placements")]
    TooLarge { n: usize, placements: u64 },
    #[error(transparent)]
    Layout(#[from] LayoutError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CraftConfig {
    pub model: DistanceModel,
    pub enable_three_way: bool,
    /// Exchange the contents of two whole columns (or rows) as one move.
    pub enable_line_exchange: bool,
    pub max_iterations: usize,
}

impl Default for CraftConfig {
    fn default() -> Self {
        Self {
            model: DistanceModel::default(),
            enable_three_way: false,
            enable_line_exchange: true,
            max_iterations: 10_000,
        }
    }
}

impl CraftConfig {
    pub fn with_model(model: DistanceModel) -> Self {
        Self {
            model,
            ..Self::default()
        }
    }

    /// Only two-way facility exchanges.
    pub fn pairs_only(model: DistanceModel) -> Self {
        Self {
            model,
            enable_three_way: false,
            enable_line_exchange: false,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveKind {
    Pair,
    Cycle3,
    Columns,
    Rows,
}

/// One applied improvement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwapStep {
    pub kind: MoveKind,
    /// Facilities that changed cell, ascending.
    pub facilities: Vec<usize>,
    pub cost_before: Exact,
    pub cost_after: Exact,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwapTrace {
    pub steps: Vec<SwapStep>,
}

impl SwapTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CraftOutcome {
    pub layout: BlockLayout,
    pub trace: SwapTrace,
    pub initial_cost: Exact,
    pub final_cost: Exact,
    /// False when `max_iterations` ran out before a local optimum was reached.
    pub converged: bool,
}

/// Flow list and slot-to-slot distances scaled to a common denominator, so
/// candidate costs are compared as integers.
pub(crate) struct CostModel {
    flows: Vec<(usize, usize, i128)>,
    dist: Vec<i128>,
    slots: usize,
    denom: i64,
}

impl CostModel {
    pub(crate) fn new(m: &LoadMatrix, plan: &FloorPlan, model: DistanceModel) -> Self {
        let slots = plan.slots();
        let raw: Vec<Exact> = (0..slots * slots)
            .map(|k| plan.slot_distance(plan.slot_at(k / slots), plan.slot_at(k % slots), model))
            .collect();
        let denom = raw.iter().fold(1i64, |acc, d| lcm(acc, d.denom()));
        let dist = raw
            .iter()
            .map(|d| d.numer() as i128 * (denom / d.denom()) as i128)
            .collect();
        let flows = m.flows().map(|(i, j, f)| (i, j, f as i128)).collect();
        Self {
            flows,
            dist,
            slots,
            denom,
        }
    }

    /// Scaled cost of facility `i` sitting in `slot_of[i]`.
    pub(crate) fn scaled(&self, slot_of: &[usize]) -> i128 {
        self.flows
            .iter()
            .map(|&(i, j, f)| f * self.dist[slot_of[i] * self.slots + slot_of[j]])
            .sum()
    }

    pub(crate) fn exact(&self, scaled: i128) -> Exact {
        let numer = i64::try_from(scaled).expect("load cost exceeds i64 range");
        Exact::ratio(numer, self.denom)
    }

    fn pair_term(&self, i: usize, si: usize, j: usize, sj: usize) -> i128 {
        // Only used by the oracle; flow lookups are linear in the flow count.
        self.flows
            .iter()
            .filter(|&&(a, b, _)| (a, b) == (i, j) || (a, b) == (j, i))
            .map(|&(a, _, f)| {
                let (sa, sb) = if a == i { (si, sj) } else { (sj, si) };
                f * self.dist[sa * self.slots + sb]
            })
            .sum()
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}

/// Candidate order key: moved entities ascending, then move rank.
type MoveKey = (Vec<usize>, u8);

struct Candidate {
    cost: i128,
    key: MoveKey,
    kind: MoveKind,
    occupancy: Vec<Option<usize>>,
}

fn entity(occ: &[Option<usize>], n: usize, s: usize) -> usize {
    occ[s].unwrap_or(n + s)
}

fn slot_of(occ: &[Option<usize>], n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for (s, f) in occ.iter().enumerate() {
        if let Some(f) = f {
            out[*f] = s;
        }
    }
    out
}

fn check_sizes(layout: &BlockLayout, m: &LoadMatrix) -> Result<(), LayoutError> {
    if layout.n() != m.n() {
        return Err(LayoutError::FacilityCount {
            placed: layout.n(),
            expected: m.n(),
        });
    }
    Ok(())
}

fn best_move(
    occ: &[Option<usize>],
    n: usize,
    plan: &FloorPlan,
    costs: &CostModel,
    cfg: &CraftConfig,
) -> Option<Candidate> {
    let current = costs.scaled(&slot_of(occ, n));
    let slots = occ.len();
    let mut best: Option<Candidate> = None;
    let mut consider =
        |kind: MoveKind, rank: u8, moved: &mut Vec<usize>, next: Vec<Option<usize>>| {
            let cost = costs.scaled(&slot_of(&next, n));
            if cost >= current {
                return;
            }
            moved.sort_unstable();
            let key = (std::mem::take(moved), rank);
            let better = match &best {
                None => true,
                Some(b) => (cost, &key) < (b.cost, &b.key),
            };
            if better {
                best = Some(Candidate {
                    cost,
                    key,
                    kind,
                    occupancy: next,
                });
            }
        };

    for a in 0..slots {
        for b in a + 1..slots {
            if occ[a].is_none() && occ[b].is_none() {
                continue;
            }
            let mut next = occ.to_vec();
            next.swap(a, b);
            let mut ids = vec![entity(occ, n, a), entity(occ, n, b)];
            consider(MoveKind::Pair, 0, &mut ids, next);
        }
    }

    if cfg.enable_three_way {
        for a in 0..slots {
            for b in a + 1..slots {
                for c in b + 1..slots {
                    let filled = [a, b, c].iter().filter(|&&s| occ[s].is_some()).count();
                    if filled < 2 {
                        continue;
                    }
                    // Rotation 0 moves a -> b -> c -> a, rotation 1 the reverse.
                    for rotation in 0..2u8 {
                        let mut next = occ.to_vec();
                        if rotation == 0 {
                            next[b] = occ[a];
                            next[c] = occ[b];
                            next[a] = occ[c];
                        } else {
                            next[c] = occ[a];
                            next[a] = occ[b];
                            next[b] = occ[c];
                        }
                        let mut ids = vec![entity(occ, n, a), entity(occ, n, b), entity(occ, n, c)];
                        consider(MoveKind::Cycle3, 1 + rotation, &mut ids, next);
                    }
                }
            }
        }
    }

    if cfg.enable_line_exchange {
        let idx = |r: usize, c: usize| r * plan.cols + c;
        for c1 in 0..plan.cols {
            for c2 in c1 + 1..plan.cols {
                let mut next = occ.to_vec();
                let mut ids = Vec::new();
                for r in 0..plan.rows {
                    next.swap(idx(r, c1), idx(r, c2));
                    ids.extend(occ[idx(r, c1)]);
                    ids.extend(occ[idx(r, c2)]);
                }
                if !ids.is_empty() {
                    consider(MoveKind::Columns, 3, &mut ids, next);
                }
            }
        }
        for r1 in 0..plan.rows {
            for r2 in r1 + 1..plan.rows {
                let mut next = occ.to_vec();
                let mut ids = Vec::new();
                for c in 0..plan.cols {
                    next.swap(idx(r1, c), idx(r2, c));
                    ids.extend(occ[idx(r1, c)]);
                    ids.extend(occ[idx(r2, c)]);
                }
                if !ids.is_empty() {
                    consider(MoveKind::Rows, 4, &mut ids, next);
                }
            }
        }
    }
    best
}

/// Applies the single best strictly improving move, or returns `None` at a
/// local optimum.
pub fn improve_once(
    layout: &BlockLayout,
    m: &LoadMatrix,
    cfg: &CraftConfig,
) -> Result<Option<(BlockLayout, SwapStep)>, LayoutError> {
    check_sizes(layout, m)?;
    let costs = CostModel::new(m, layout.plan(), cfg.model);
    Ok(step(layout, m.n(), &costs, cfg))
}

fn step(
    layout: &BlockLayout,
    n: usize,
    costs: &CostModel,
    cfg: &CraftConfig,
) -> Option<(BlockLayout, SwapStep)> {
    let occ = layout.occupancy();
    let before = costs.scaled(&slot_of(&occ, n));
    let cand = best_move(&occ, n, layout.plan(), costs, cfg)?;
    let new_slots = slot_of(&cand.occupancy, n);
    let mut facilities: Vec<usize> = (0..n)
        .filter(|&f| new_slots[f] != layout.plan().slot_index(layout.placement()[f]))
        .collect();
    facilities.sort_unstable();
    let next = BlockLayout::from_slot_indices(layout.plan().clone(), &new_slots)
        .expect("moves keep the placement injective");
    Some((
        next,
        SwapStep {
            kind: cand.kind,
            facilities,
            cost_before: costs.exact(before),
            cost_after: costs.exact(cand.cost),
        },
    ))
}

/// Repeats [`improve_once`] until no move helps or `max_iterations` passes ran.
pub fn run_craft(
    layout: &BlockLayout,
    m: &LoadMatrix,
    cfg: &CraftConfig,
) -> Result<CraftOutcome, LayoutError> {
    check_sizes(layout, m)?;
    let costs = CostModel::new(m, layout.plan(), cfg.model);
    let initial_cost = costs.exact(costs.scaled(&layout.slot_indices()));
    let mut current = layout.clone();
    let mut trace = SwapTrace::default();
    let mut converged = false;
    for _ in 0..cfg.max_iterations.max(1) {
        match step(&current, m.n(), &costs, cfg) {
            Some((next, s)) => {
                trace.steps.push(s);
                current = next;
            }
            None => {
                converged = true;
                break;
            }
        }
    }
    // The final pass may have been spent on an improvement; check once more.
    if !converged {
        converged = best_move(&current.occupancy(), m.n(), current.plan(), &costs, cfg).is_none();
    }
    let final_cost = costs.exact(costs.scaled(&current.slot_indices()));
    Ok(CraftOutcome {
        layout: current,
        trace,
        initial_cost,
        final_cost,
        converged,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub cost: Exact,
    pub layout: BlockLayout,
    pub placements: u64,
}

/// Number of injective placements of `n` facilities into `slots` cells.
pub fn placement_count(n: usize, slots: usize) -> u64 {
    if n > slots {
        return 0;
    }
    (slots - n + 1..=slots).fold(1u64, |acc, k| acc.saturating_mul(k as u64))
}

/// Calls `visit` with every injective placement (facility -> slot index) in
/// lexicographic order.
pub fn for_each_placement(n: usize, slots: usize, mut visit: impl FnMut(&[usize])) {
    fn go(
        f: usize,
        n: usize,
        used: &mut [bool],
        cur: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]),
    ) {
        if f == n {
            visit(cur);
            return;
        }
        for s in 0..used.len() {
            if used[s] {
                continue;
            }
            used[s] = true;
            cur.push(s);
            go(f + 1, n, used, cur, visit);
            cur.pop();
            used[s] = false;
        }
    }
    if n <= slots {
        go(
            0,
            n,
            &mut vec![false; slots],
            &mut Vec::with_capacity(n),
            &mut visit,
        );
    }
}

/// Exact minimum of the load function over every injective placement.
///
/// The returned layout is the lexicographically smallest optimal placement.
pub fn brute_force_optimum(
    m: &LoadMatrix,
    plan: &FloorPlan,
    model: DistanceModel,
) -> Result<OracleResult, CraftError> {
    let n = m.n();
    let slots = plan.slots();
    if n > slots {
        return Err(LayoutError::TooManyFacilities { n, slots }.into());
    }
    let placements = placement_count(n, slots);
    if n > ORACLE_MAX_FACILITIES || placements > ORACLE_MAX_PLACEMENTS {
        return Err(CraftError::TooLarge { n, placements });
    }
    let costs = CostModel::new(m, plan, model);

    struct Search<'a> {
        costs: &'a CostModel,
        n: usize,
        used: Vec<bool>,
        cur: Vec<usize>,
        best: Option<(i128, Vec<usize>)>,
    }

    impl Search<'_> {
        fn go(&mut self, acc: i128) {
            let f = self.cur.len();
            if f == self.n {
                if self.best.as_ref().is_none_or(|(b, _)| acc < *b) {
                    self.best = Some((acc, self.cur.clone()));
                }
                return;
            }
            for s in 0..self.used.len() {
                if self.used[s] {
                    continue;
                }
                let add: i128 = (0..f)
                    .map(|g| self.costs.pair_term(f, s, g, self.cur[g]))
                    .sum();
                self.used[s] = true;
                self.cur.push(s);
                self.go(acc + add);
                self.cur.pop();
                self.used[s] = false;
            }
        }
    }

    let mut search = Search {
        costs: &costs,
        n,
        used: vec![false; slots],
        cur: Vec::with_capacity(n),
        best: None,
    };
    search.go(0);
    let (best, slot_indices) = search.best.expect("at least one placement exists");
    Ok(OracleResult {
        cost: costs.exact(best),
        layout: BlockLayout::from_slot_indices(plan.clone(), &slot_indices)?,
        placements,
    })
}
