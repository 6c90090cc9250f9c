use std::fmt::Write as _;

use mass_core::craft::{MoveKind, OracleResult};
use mass_core::layout::{render_ascii, LayoutReport};
use mass_core::pipeline::{BenchmarkReport, PipelineResult};
use mass_core::{Assignment, Exact, LoadMatrix};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct AssignReport {
    pub facilities: Vec<String>,
    #[serde(flatten)]
    pub assignment: Assignment,
    pub pairs: Vec<(String, String)>,
}

impl AssignReport {
    pub fn new(m: &LoadMatrix, a: &Assignment) -> Self {
        Self {
            facilities: m.names().to_vec(),
            assignment: a.clone(),
            pairs: a
                .sigma
                .iter()
                .enumerate()
                .map(|(i, &j)| (m.name(i).to_string(), m.name(j).to_string()))
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct OracleReport {
    pub global_optimum: Exact,
    pub placements: u64,
    pub layout: LayoutReport,
}

impl OracleReport {
    pub fn new(m: &LoadMatrix, r: &OracleResult) -> Self {
        Self {
            global_optimum: r.cost,
            placements: r.placements,
            layout: r.layout.report(m.names()),
        }
    }
}

fn sigma_line(m: &LoadMatrix, a: &Assignment) -> String {
    a.sigma
        .iter()
        .enumerate()
        .map(|(i, &j)| format!("{}->{}", m.name(i), m.name(j)))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn solve(m: &LoadMatrix, r: &PipelineResult) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "assignment: {}", sigma_line(m, &r.assignment));
    let _ = writeln!(out, "assignment objective: {}", r.assignment.objective);
    let _ = writeln!(out, "initial cost: {}", r.initial_cost);
    let _ = writeln!(out, "final cost: {}", r.final_cost);
    let _ = writeln!(out, "improvement: {}", r.improvement);
    let _ = writeln!(out, "improving passes: {}", r.trace.len());
    if !r.converged {
        let _ = writeln!(
            out,
            "warning: iteration limit reached before a local optimum"
        );
    }
    if !r.trace.is_empty() {
        let _ = writeln!(out, "swap trace:");
        for (k, s) in r.trace.steps.iter().enumerate() {
            let kind = match s.kind {
                MoveKind::Pair => "pair",
                MoveKind::Cycle3 => "3-cycle",
                MoveKind::Columns => "columns",
                MoveKind::Rows => "rows",
            };
            let names: Vec<&str> = s.facilities.iter().map(|&f| m.name(f)).collect();
            let _ = writeln!(
                out,
                "  {}. {kind} [{}]: {} -> {}",
                k + 1,
                names.join(", "),
                s.cost_before,
                s.cost_after
            );
        }
    }
    let plan = r.final_layout.plan();
    let _ = writeln!(
        out,
        "grid: {} x {} cells of {} x {} m, aisle {} m",
        plan.rows, plan.cols, plan.cell_w_m, plan.cell_h_m, plan.aisle_m
    );
    let _ = writeln!(
        out,
        "\ninitial layout:\n{}",
        render_ascii(&r.initial_layout, m.names())
    );
    let _ = write!(
        out,
        "final layout:\n{}",
        render_ascii(&r.final_layout, m.names())
    );
    out
}

/// Assignment table with `*` on assigned cells and `-` on vacant ones.
pub fn assign(m: &LoadMatrix, a: &Assignment) -> String {
    let n = m.n();
    let w = m
        .names()
        .iter()
        .map(|s| s.chars().count())
        .max()
        .unwrap_or(1)
        .max(1);
    let mut out = String::new();
    let _ = write!(out, "{:w$}", "");
    for name in m.names() {
        let _ = write!(out, " {name:>w$}");
    }
    out.push('\n');
    for i in 0..n {
        let _ = write!(out, "{:w$}", m.name(i));
        for j in 0..n {
            let mark = if a.sigma[i] == j {
                "*".to_string()
            } else if m.flow(i, j).is_none() {
                "-".to_string()
            } else {
                ".".to_string()
            };
            let _ = write!(out, " {mark:>w$}");
        }
        out.push('\n');
    }
    let _ = writeln!(out, "assignment: {}", sigma_line(m, a));
    let _ = writeln!(out, "objective: {}", a.objective);
    let _ = writeln!(out, "lines to cover zeros (k): {}", a.certificate_k);
    out
}

pub fn benchmark(r: &BenchmarkReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:>20} {:>10} {:>12}", "seed", "passes", "final cost");
    for t in &r.random_trials {
        let _ = writeln!(
            out,
            "{:>20} {:>10} {:>12}",
            t.seed,
            t.iterations,
            t.final_cost.to_string()
        );
    }
    let _ = writeln!(out, "mass seed passes: {}", r.mass_iterations);
    let _ = writeln!(out, "mass final cost: {}", r.mass_final_cost);
    let _ = writeln!(out, "mean random passes: {:.4}", r.mean_random_iterations);
    if let Some(best) = r.global_optimum {
        let hits = r
            .random_trials
            .iter()
            .filter(|t| t.final_cost == best)
            .count();
        let _ = writeln!(out, "global optimum: {best}");
        let _ = writeln!(
            out,
            "random starts reaching it: {hits}/{}",
            r.random_trials.len()
        );
    }
    out
}

pub fn oracle(m: &LoadMatrix, r: &OracleResult) -> String {
    format!(
        "global optimum: {}\nplacements enumerated: {}\n{}",
        r.cost,
        r.placements,
        render_ascii(&r.layout, m.names())
    )
}
