//! End-to-end MASS runs and the seeding benchmark.
//!
//! `run_mass` converts the load matrix to a cost matrix with forbidden vacant
//! cells, solves the assignment exactly, lays the matched facilities out side
//! by side and hands that layout to the CRAFT engine.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::craft::{
    brute_force_optimum, for_each_placement, placement_count, run_craft, CraftConfig, SwapTrace,
    ORACLE_MAX_FACILITIES, ORACLE_MAX_PLACEMENTS,
};
use crate::exact::Exact;
use crate::hungarian::{solve_assignment, Assignment, AssignmentError};
use crate::layout::{
    initial_layout_ordered, BlockLayout, ColumnOrder, FloorPlan, LayoutError, LayoutReport,
};
use crate::matrix::{CostMatrix, LoadMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MassError {
    #[error(transparent)]
    Infeasible(#[from] AssignmentError),
    #[error(transparent)]
    Layout(#[from] LayoutError),
}

/// What the assignment stage optimises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchingObjective {
    /// Minimise the raw load matrix taken as a cost matrix.
    #[default]
    Minimize,
    /// Maximise composite flow `l_ij + l_ji`; a cell is usable when either
    /// direction carries flow.
    MaximizeComposite,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MassConfig {
    pub craft: CraftConfig,
    pub objective: MatchingObjective,
    pub column_order: ColumnOrder,
}

/// Cost matrix the assignment stage solves for the chosen objective.
pub fn matching_costs(m: &LoadMatrix, objective: MatchingObjective) -> CostMatrix {
    match objective {
        MatchingObjective::Minimize => m.to_cost_matrix(),
        MatchingObjective::MaximizeComposite => {
            let n = m.n();
            let rows = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let usable =
                                i != j && (m.flow(i, j).is_some() || m.flow(j, i).is_some());
                            usable.then(|| -(m.composite(i, j) as i64))
                        })
                        .collect()
                })
                .collect();
            CostMatrix::new(rows).expect("load matrices are square and non-empty")
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineResult {
    pub assignment: Assignment,
    pub initial_layout: BlockLayout,
    pub initial_cost: Exact,
    pub final_layout: BlockLayout,
    pub final_cost: Exact,
    pub improvement: Exact,
    pub trace: SwapTrace,
    pub converged: bool,
}

impl PipelineResult {
    pub fn report(&self, m: &LoadMatrix) -> PipelineReport {
        PipelineReport {
            facilities: m.names().to_vec(),
            assignment: self.assignment.clone(),
            initial_layout: self.initial_layout.report(m.names()),
            initial_cost: self.initial_cost,
            final_layout: self.final_layout.report(m.names()),
            final_cost: self.final_cost,
            improvement: self.improvement,
            trace: self.trace.clone(),
            converged: self.converged,
        }
    }
}

/// JSON form of a [`PipelineResult`] with facilities named.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub facilities: Vec<String>,
    pub assignment: Assignment,
    pub initial_layout: LayoutReport,
    pub initial_cost: Exact,
    pub final_layout: LayoutReport,
    pub final_cost: Exact,
    pub improvement: Exact,
    pub trace: SwapTrace,
    pub converged: bool,
}

pub fn run_mass(
    m: &LoadMatrix,
    plan: &FloorPlan,
    cfg: &MassConfig,
) -> Result<PipelineResult, MassError> {
    let assignment = if m.n() == 1 {
        // A lone facility has no partner; its diagonal cell is always vacant.
        Assignment {
            sigma: vec![0],
            objective: 0,
            certificate_k: 1,
        }
    } else {
        solve_assignment(&matching_costs(m, cfg.objective))?
    };
    let initial = initial_layout_ordered(&assignment, m, plan, cfg.column_order)?;
    let outcome = run_craft(&initial, m, &cfg.craft)?;
    Ok(PipelineResult {
        assignment,
        initial_layout: initial,
        initial_cost: outcome.initial_cost,
        final_layout: outcome.layout,
        final_cost: outcome.final_cost,
        improvement: outcome.initial_cost - outcome.final_cost,
        trace: outcome.trace,
        converged: outcome.converged,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trial {
    pub seed: u64,
    pub iterations: usize,
    pub final_cost: Exact,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkReport {
    pub mass_iterations: usize,
    pub mass_final_cost: Exact,
    pub random_trials: Vec<Trial>,
    pub mean_random_iterations: f64,
    pub global_optimum: Option<Exact>,
}

impl BenchmarkReport {
    fn assemble(
        mass: &PipelineResult,
        random_trials: Vec<Trial>,
        global_optimum: Option<Exact>,
    ) -> Self {
        let mean_random_iterations = if random_trials.is_empty() {
            0.0
        } else {
            random_trials.iter().map(|t| t.iterations).sum::<usize>() as f64
                / random_trials.len() as f64
        };
        Self {
            mass_iterations: mass.trace.len(),
            mass_final_cost: mass.final_cost,
            random_trials,
            mean_random_iterations,
            global_optimum,
        }
    }
}

fn oracle_optimum(m: &LoadMatrix, plan: &FloorPlan, cfg: &MassConfig) -> Option<Exact> {
    let feasible = m.n() <= ORACLE_MAX_FACILITIES
        && placement_count(m.n(), plan.slots()) <= ORACLE_MAX_PLACEMENTS;
    if !feasible {
        return None;
    }
    brute_force_optimum(m, plan, cfg.craft.model)
        .ok()
        .map(|r| r.cost)
}

/// Uniformly random injective placement drawn from `seed`.
pub fn random_layout(plan: &FloorPlan, n: usize, seed: u64) -> Result<BlockLayout, LayoutError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut slots: Vec<usize> = (0..plan.slots()).collect();
    slots.shuffle(&mut rng);
    slots.truncate(n);
    BlockLayout::from_slot_indices(plan.clone(), &slots)
}

/// CRAFT from the MASS seed versus CRAFT from `trials` random placements.
///
/// Trial `t` uses seed `rng_seed + t`, so any single trial can be replayed.
pub fn benchmark_seeds(
    m: &LoadMatrix,
    plan: &FloorPlan,
    cfg: &MassConfig,
    trials: usize,
    rng_seed: u64,
) -> Result<BenchmarkReport, MassError> {
    let mass = run_mass(m, plan, cfg)?;
    let mut random_trials = Vec::with_capacity(trials);
    for t in 0..trials as u64 {
        let seed = rng_seed.wrapping_add(t);
        let start = random_layout(plan, m.n(), seed)?;
        let out = run_craft(&start, m, &cfg.craft)?;
        random_trials.push(Trial {
            seed,
            iterations: out.trace.len(),
            final_cost: out.final_cost,
        });
    }
    Ok(BenchmarkReport::assemble(
        &mass,
        random_trials,
        oracle_optimum(m, plan, cfg),
    ))
}

/// Like [`benchmark_seeds`] but starting CRAFT from every injective placement;
/// the trial seed is the placement's index in lexicographic order.
pub fn benchmark_exhaustive(
    m: &LoadMatrix,
    plan: &FloorPlan,
    cfg: &MassConfig,
) -> Result<BenchmarkReport, MassError> {
    let placements = placement_count(m.n(), plan.slots());
    if m.n() > ORACLE_MAX_FACILITIES || placements > ORACLE_MAX_PLACEMENTS {
        return Err(LayoutError::TooManyFacilities {
            n: m.n(),
            slots: plan.slots(),
        }
        .into());
    }
    let mass = run_mass(m, plan, cfg)?;
    let mut random_trials = Vec::with_capacity(placements as usize);
    let mut failure = None;
    for_each_placement(m.n(), plan.slots(), |slots| {
        if failure.is_some() {
            return;
        }
        let seed = random_trials.len() as u64;
        let run = BlockLayout::from_slot_indices(plan.clone(), slots)
            .and_then(|start| run_craft(&start, m, &cfg.craft));
        match run {
            Ok(out) => random_trials.push(Trial {
                seed,
                iterations: out.trace.len(),
                final_cost: out.final_cost,
            }),
            Err(e) => failure = Some(e),
        }
    });
    if let Some(e) = failure {
        return Err(e.into());
    }
    Ok(BenchmarkReport::assemble(
        &mass,
        random_trials,
        oracle_optimum(m, plan, cfg),
    ))
}
