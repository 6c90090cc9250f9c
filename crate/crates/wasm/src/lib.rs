//! Browser bindings for the layout solver.
//!
//! Every operation takes the load matrix CSV, the floor JSON and an options
//! JSON object, and returns a JSON report. The plain functions are usable
//! natively; the `#[wasm_bindgen]` wrappers only convert errors.

use mass_core::craft::{brute_force_optimum, CraftConfig};
use mass_core::hungarian::solve_assignment;
use mass_core::layout::{ColumnOrder, FloorConfig, FloorPlan, LayoutReport};
use mass_core::pipeline::{
    benchmark_seeds, matching_costs, run_mass, MassConfig, MatchingObjective,
};
use mass_core::{Assignment, DistanceModel, Exact, LoadMatrix};
use serde::{Deserialize, Serialize};
use wasm_bindgen::prelude::*;

/// Upper bound on random trials so the page stays responsive.
pub const MAX_TRIALS: usize = 2000;

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Options {
    pub model: Option<DistanceModel>,
    pub objective: MatchingObjective,
    pub three_way: bool,
    pub line_exchange: bool,
    pub reproduce_paper: bool,
    pub trials: usize,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            model: None,
            objective: MatchingObjective::Minimize,
            three_way: false,
            line_exchange: true,
            reproduce_paper: false,
            trials: 100,
            seed: 0,
        }
    }
}

impl Options {
    pub fn parse(json: &str) -> Result<Self, String> {
        if json.trim().is_empty() {
            return Ok(Self::default());
        }
        serde_json::from_str(json).map_err(|e| format!("options: {e}"))
    }

    fn model(&self) -> DistanceModel {
        self.model.unwrap_or(if self.reproduce_paper {
            DistanceModel::Paper
        } else {
            DistanceModel::RectilinearCentroid
        })
    }

    fn mass_config(&self) -> MassConfig {
        MassConfig {
            craft: CraftConfig {
                model: self.model(),
                enable_three_way: self.three_way,
                enable_line_exchange: self.line_exchange,
                ..CraftConfig::default()
            },
            objective: self.objective,
            column_order: if self.reproduce_paper {
                ColumnOrder::FacilityIndex
            } else {
                ColumnOrder::CompositeDescending
            },
        }
    }
}

#[derive(Debug, Serialize)]
struct AssignReport {
    facilities: Vec<String>,
    #[serde(flatten)]
    assignment: Assignment,
}

#[derive(Debug, Serialize)]
struct OracleReport {
    global_optimum: Exact,
    placements: u64,
    layout: LayoutReport,
}

fn loads(csv: &str) -> Result<LoadMatrix, String> {
    LoadMatrix::parse_csv(csv).map_err(|e| format!("loads: {e}"))
}

fn plan(floor_json: &str, n: usize) -> Result<FloorPlan, String> {
    let cfg: FloorConfig = serde_json::from_str(floor_json).map_err(|e| format!("floor: {e}"))?;
    cfg.plan_for(n).map_err(|e| format!("floor: {e}"))
}

fn to_json<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string(value).map_err(|e| e.to_string())
}

/// Full pipeline: assignment, initial layout and CRAFT improvement.
pub fn solve_json(csv: &str, floor_json: &str, options_json: &str) -> Result<String, String> {
    let opts = Options::parse(options_json)?;
    let m = loads(csv)?;
    let plan = plan(floor_json, m.n())?;
    let r = run_mass(&m, &plan, &opts.mass_config()).map_err(|e| e.to_string())?;
    to_json(&r.report(&m))
}

pub fn assign_json(csv: &str, options_json: &str) -> Result<String, String> {
    let opts = Options::parse(options_json)?;
    let m = loads(csv)?;
    let a = solve_assignment(&matching_costs(&m, opts.objective)).map_err(|e| e.to_string())?;
    to_json(&AssignReport {
        facilities: m.names().to_vec(),
        assignment: a,
    })
}

pub fn benchmark_json(csv: &str, floor_json: &str, options_json: &str) -> Result<String, String> {
    let opts = Options::parse(options_json)?;
    if opts.trials == 0 || opts.trials > MAX_TRIALS {
        return Err(format!("trials must be between 1 and {MAX_TRIALS}"));
    }
    let m = loads(csv)?;
    let plan = plan(floor_json, m.n())?;
    let r = benchmark_seeds(&m, &plan, &opts.mass_config(), opts.trials, opts.seed)
        .map_err(|e| e.to_string())?;
    to_json(&r)
}

pub fn oracle_json(csv: &str, floor_json: &str, options_json: &str) -> Result<String, String> {
    let opts = Options::parse(options_json)?;
    let m = loads(csv)?;
    let plan = plan(floor_json, m.n())?;
    let r = brute_force_optimum(&m, &plan, opts.model()).map_err(|e| e.to_string())?;
    to_json(&OracleReport {
        global_optimum: r.cost,
        placements: r.placements,
        layout: r.layout.report(m.names()),
    })
}

#[wasm_bindgen]
pub fn solve(csv: &str, floor_json: &str, options_json: &str) -> Result<String, JsValue> {
    solve_json(csv, floor_json, options_json).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn assign(csv: &str, options_json: &str) -> Result<String, JsValue> {
    assign_json(csv, options_json).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn benchmark(csv: &str, floor_json: &str, options_json: &str) -> Result<String, JsValue> {
    benchmark_json(csv, floor_json, options_json).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn oracle(csv: &str, floor_json: &str, options_json: &str) -> Result<String, JsValue> {
    oracle_json(csv, floor_json, options_json).map_err(|e| JsValue::from_str(&e))
}
