//! Acceptance suite. Each test prints one `[PASS]` or `[FAIL]` line; run with
//! `cargo test -p mass-cli --test acceptance -- --nocapture --test-threads 1`.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use mass_core::craft::{brute_force_optimum, improve_once, run_craft, CraftConfig, MoveKind};
use mass_core::hungarian::{solve_assignment, solve_assignment_traced, AssignmentError};
use mass_core::layout::{total_cost, ColumnOrder, FloorPlan, Slot};
use mass_core::pipeline::{benchmark_exhaustive, random_layout, run_mass, MassConfig};
use mass_core::{BlockLayout, CostMatrix, DistanceModel, Exact, LoadMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ONE_SECOND: Duration = Duration::from_secs(1);

fn verdict(id: u32, title: &str, checks: &[(String, bool)]) {
    let failed: Vec<&str> = checks
        .iter()
        .filter(|c| !c.1)
        .map(|c| c.0.as_str())
        .collect();
    if failed.is_empty() {
        let detail: Vec<&str> = checks.iter().map(|c| c.0.as_str()).collect();
        println!("[PASS] AC{id} {title}: {}", detail.join("; "));
    } else {
        println!("[FAIL] AC{id} {title}: {}", failed.join("; "));
        panic!("AC{id} failed: {}", failed.join("; "));
    }
}

fn check(label: impl Into<String>, ok: bool) -> (String, bool) {
    (label.into(), ok)
}

fn paper_config() -> MassConfig {
    MassConfig {
        craft: CraftConfig::with_model(DistanceModel::Paper),
        column_order: ColumnOrder::FacilityIndex,
        ..MassConfig::default()
    }
}

fn layout(cells: [(usize, usize); 6]) -> BlockLayout {
    BlockLayout::new(
        example_plan(),
        cells.iter().map(|&(r, c)| Slot::new(r, c)).collect(),
    )
    .unwrap()
}

/// Per unordered pair: (distance, composite flow).
fn pair_terms(l: &BlockLayout, m: &LoadMatrix) -> BTreeMap<(usize, usize), (Exact, u64)> {
    let report = total_cost(l, m, DistanceModel::Paper).unwrap();
    let mut out: BTreeMap<(usize, usize), (Exact, u64)> = BTreeMap::new();
    for t in &report.terms {
        let key = (t.from.min(t.to), t.from.max(t.to));
        let e = out.entry(key).or_insert((t.distance, 0));
        assert_eq!(e.0, t.distance);
        e.1 += t.flow;
    }
    out
}

#[test]
fn ac1_hungarian_reproduction() {
    let c = example().to_cost_matrix();
    let start = Instant::now();
    let (a, trace) = solve_assignment_traced(&c).unwrap();
    let elapsed = start.elapsed();

    // First-iteration table with M-x cells read as forbidden.
    let first = [
        [None, Some(0), None, None, None, Some(5)],
        [Some(0), None, Some(0), None, None, None],
        [None, None, None, Some(0), None, None],
        [None, None, Some(5), None, None, Some(0)],
        [None, None, None, None, None, Some(0)],
        [None, None, None, None, Some(0), None],
    ];
    let first: Vec<Vec<Option<i64>>> = first.iter().map(|r| r.to_vec()).collect();
    let steps = &trace.steps;
    verdict(
        1,
        "Hungarian reproduction (first table, k=5, delta=5, k=6, starred matching)",
        &[
            check("two solver passes", steps.len() == 2),
            check(
                "first table",
                steps.first().map(|s| s.table.rows()) == Some(first),
            ),
            check(
                "first cover k=5",
                steps.first().map(|s| s.cover.k) == Some(5),
            ),
            check("delta=5", steps.first().and_then(|s| s.delta) == Some(5)),
            check(
                "final cover k=6",
                steps.last().map(|s| s.cover.k) == Some(6),
            ),
            check("matching", a.sigma == vec![1, 0, 3, 2, 5, 4]),
            check("certificate k=6", a.certificate_k == 6),
            check(format!("runtime {elapsed:?} < 1 s"), elapsed < ONE_SECOND),
        ],
    );
}

#[test]
fn ac2_cost_reproduction() {
    let m = example();
    let initial = layout([(0, 0), (1, 0), (0, 1), (1, 1), (0, 2), (1, 2)]);
    let fin = layout([(0, 0), (1, 0), (0, 2), (1, 2), (0, 1), (1, 1)]);
    let e = Exact::from_int;
    // Printed factors: 2 * pair composite for matched pairs, then the
    // cross-column products.
    let initial_expect: BTreeMap<_, _> = [
        ((0, 1), (e(2), 30)),
        ((2, 3), (e(2), 80)),
        ((4, 5), (e(2), 25)),
        ((0, 5), (e(44), 25)),
        ((3, 5), (e(22), 40)),
        ((1, 2), (e(22), 15)),
    ]
    .into_iter()
    .collect();
    let final_expect: BTreeMap<_, _> = [
        ((0, 1), (e(2), 30)),
        ((4, 5), (e(2), 25)),
        ((2, 3), (e(2), 80)),
        ((0, 5), (e(22), 25)),
        ((1, 2), (e(44), 15)),
        ((3, 5), (e(22), 40)),
    ]
    .into_iter()
    .collect();
    let t0 = total_cost(&initial, &m, DistanceModel::Paper)
        .unwrap()
        .total;
    let t1 = total_cost(&fin, &m, DistanceModel::Paper).unwrap().total;
    verdict(
        2,
        "cost reproduction (2580 initial, 2360 final, term by term)",
        &[
            check(format!("initial total {t0} = 2580"), t0 == e(2580)),
            check(format!("final total {t1} = 2360"), t1 == e(2360)),
            check("initial terms", pair_terms(&initial, &m) == initial_expect),
            check("final terms", pair_terms(&fin, &m) == final_expect),
        ],
    );
}

#[test]
fn ac3_end_to_end_mass() {
    let m = example();
    let plan = example_plan();
    let start = Instant::now();
    let r = run_mass(&m, &plan, &paper_config()).unwrap();
    let elapsed = start.elapsed();
    let pictured = layout([(0, 0), (1, 0), (0, 1), (1, 1), (0, 2), (1, 2)]);
    verdict(
        3,
        "end-to-end MASS (improvement 220 in one pass)",
        &[
            check("seed is the pictured layout", r.initial_layout == pictured),
            check(
                format!("initial cost {}", r.initial_cost),
                r.initial_cost == Exact::from_int(2580),
            ),
            check(
                format!("final cost {}", r.final_cost),
                r.final_cost == Exact::from_int(2360),
            ),
            check(
                format!("improvement {}", r.improvement),
                r.improvement == Exact::from_int(220),
            ),
            check(
                format!("{} improving passes", r.trace.len()),
                r.trace.len() == 1,
            ),
            check(
                "pass is a column exchange",
                r.trace.steps.first().map(|s| s.kind) == Some(MoveKind::Columns),
            ),
            check("converged", r.converged),
            check(format!("runtime {elapsed:?} < 1 s"), elapsed < ONE_SECOND),
        ],
    );
}

#[test]
fn ac4_oracle_certification() {
    let m = example();
    let plan = example_plan();
    let start = Instant::now();
    let r = brute_force_optimum(&m, &plan, DistanceModel::Paper).unwrap();
    let elapsed = start.elapsed();
    let plain = brute_force_layout(&m, &plan, DistanceModel::Paper);
    verdict(
        4,
        "oracle certification (720 placements, optimum 2360)",
        &[
            check(format!("{} placements", r.placements), r.placements == 720),
            check(
                format!("optimum {}", r.cost),
                r.cost == Exact::from_int(2360),
            ),
            check("independent enumeration agrees", plain == r.cost),
            check(format!("runtime {elapsed:?} < 1 s"), elapsed < ONE_SECOND),
        ],
    );
}

fn random_feasible(rng: &mut ChaCha8Rng, n: usize) -> CostMatrix {
    let density = rng.gen_range(0.0..0.8);
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if perm[i] == j || !rng.gen_bool(density) {
                        Some(rng.gen_range(-20..100))
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect();
    CostMatrix::new(rows).unwrap()
}

/// `s` rows restricted to fewer than `s` columns.
fn random_infeasible(rng: &mut ChaCha8Rng, n: usize) -> CostMatrix {
    let s = rng.gen_range(1..=n);
    let t = rng.gen_range(0..s);
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let allowed = i >= s || j < t;
                    (allowed && rng.gen_bool(0.8)).then(|| rng.gen_range(0..50))
                })
                .collect()
        })
        .collect();
    CostMatrix::new(rows).unwrap()
}

fn is_hall_violator(c: &CostMatrix, e: &AssignmentError) -> bool {
    let AssignmentError::Infeasible {
        side,
        members,
        reach,
    } = e
    else {
        return false;
    };
    let reaches = |m: usize, r: usize| match side {
        mass_core::hungarian::Side::Rows => !c.is_forbidden(m, r),
        mass_core::hungarian::Side::Cols => !c.is_forbidden(r, m),
    };
    reach.len() < members.len()
        && members
            .iter()
            .all(|&m| (0..c.n()).all(|r| !reaches(m, r) || reach.contains(&r)))
}

#[test]
fn ac5_solver_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut agree, mut feasible) = (0, 0);
    let (mut rejected, mut infeasible) = (0, 0);
    for case in 0..600 {
        let n = 2 + case % 6;
        let c = random_feasible(&mut rng, n);
        feasible += 1;
        let best = brute_force_assignment(&c).map(|b| b.0);
        if solve_assignment(&c).ok().map(|a| a.objective) == best && best.is_some() {
            agree += 1;
        }
    }
    for case in 0..200 {
        let n = 2 + case % 6;
        let c = random_infeasible(&mut rng, n);
        if brute_force_assignment(&c).is_some() {
            continue;
        }
        infeasible += 1;
        if let Err(e) = solve_assignment(&c) {
            if is_hall_violator(&c, &e) {
                rejected += 1;
            }
        }
    }
    verdict(
        5,
        "solver matches brute force (n in 2..7, mixed forbidden densities)",
        &[
            check(
                format!("{agree}/{feasible} feasible cases agree"),
                agree == feasible && feasible >= 500,
            ),
            check(
                format!("{rejected}/{infeasible} infeasible cases rejected with a Hall violator"),
                rejected == infeasible && infeasible > 0,
            ),
        ],
    );
}

#[test]
fn ac6_constant_shift() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut ok, mut total) = (0, 0);
    for case in 0..250 {
        let n = 2 + case % 6;
        let c = CostMatrix::from_finite(
            &(0..n)
                .map(|_| (0..n).map(|_| rng.gen_range(0..100)).collect())
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let a: Vec<i64> = (0..n).map(|_| rng.gen_range(-50..50)).collect();
        let b: Vec<i64> = (0..n).map(|_| rng.gen_range(-50..50)).collect();
        let shifted = CostMatrix::from_finite(
            &(0..n)
                .map(|i| (0..n).map(|j| c.get(i, j).unwrap() + a[i] + b[j]).collect())
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let (opt, _) = brute_force_assignment(&c).unwrap();
        let (opt_star, _) = brute_force_assignment(&shifted).unwrap();
        let sigma = solve_assignment(&c).unwrap().sigma;
        let shift: i64 = a.iter().sum::<i64>() + b.iter().sum::<i64>();
        total += 1;
        if opt_star - opt == shift && shifted.permutation_cost(&sigma) == Some(opt_star) {
            ok += 1;
        }
    }
    verdict(
        6,
        "constant-shift property (objective shifts by sum of potentials)",
        &[check(
            format!("{ok}/{total} cases"),
            ok == total && total >= 200,
        )],
    );
}

fn random_loads(rng: &mut ChaCha8Rng, n: usize) -> LoadMatrix {
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (i != j && rng.gen_bool(0.5)).then(|| rng.gen_range(0..60)))
                .collect()
        })
        .collect();
    LoadMatrix::new((0..n).map(|i| format!("F{i}")).collect(), rows).unwrap()
}

#[test]
fn ac7_craft_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut failures = Vec::new();
    let cases = 220;
    for case in 0..cases {
        let n = 2 + case % 5;
        let m = random_loads(&mut rng, n);
        let rows = rng.gen_range(1..=2);
        let cols = (n + rng.gen_range(0..=1)).div_ceil(rows);
        let plan = FloorPlan::with_grid(
            Exact::from_int(12 * cols as i64 - 2),
            Exact::from_int(8 * rows as i64 - 2),
            Exact::from_int(2),
            rows,
            cols,
        )
        .unwrap();
        let model = if rng.gen_bool(0.5) {
            DistanceModel::Paper
        } else {
            DistanceModel::RectilinearCentroid
        };
        let cfg = CraftConfig::with_model(model);
        let start = random_layout(&plan, n, rng.gen()).unwrap();
        let out = run_craft(&start, &m, &cfg).unwrap();
        let mut prev = out.initial_cost;
        let decreasing = out.trace.steps.iter().all(|s| {
            let ok = s.cost_before == prev && s.cost_after < s.cost_before;
            prev = s.cost_after;
            ok
        }) && prev == out.final_cost;
        let local = pair_neighbours(&out.layout)
            .iter()
            .all(|l| total_cost(l, &m, model).unwrap().total >= out.final_cost)
            && improve_once(&out.layout, &m, &cfg).unwrap().is_none();
        let oracle = brute_force_optimum(&m, &plan, model).unwrap().cost;
        if !(decreasing && local && out.final_cost >= oracle && out.converged) {
            failures.push(case);
        }
    }

    let m = example();
    let plan = example_plan();
    let bench = benchmark_exhaustive(&m, &plan, &paper_config()).unwrap();
    verdict(
        7,
        "CRAFT properties and seeding efficiency",
        &[
            check(
                format!("{cases} random instances, failing cases {failures:?}"),
                failures.is_empty(),
            ),
            check(
                format!("{} starts enumerated", bench.random_trials.len()),
                bench.random_trials.len() == 720,
            ),
            check(
                format!(
                    "MASS passes {} <= mean over all starts {:.4}",
                    bench.mass_iterations, bench.mean_random_iterations
                ),
                bench.mass_iterations as f64 <= bench.mean_random_iterations,
            ),
        ],
    );
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
        .display()
        .to_string()
}

#[test]
fn ac8_determinism() {
    let loads = data("example_loads.csv");
    let floor = data("example_floor.json");
    let runs: Vec<Vec<&str>> = vec![
        vec!["solve"],
        vec!["solve", "--reproduce-paper"],
        vec!["solve", "--three-way", "--objective", "max-composite"],
        vec!["assign"],
        vec!["benchmark", "--trials", "25", "--seed", "42"],
        vec![
            "benchmark",
            "--trials",
            "10",
            "--seed",
            "3",
            "--model",
            "paper",
        ],
        vec!["oracle"],
        vec!["oracle", "--model", "paper"],
    ];
    let mut checks = Vec::new();
    for args in &runs {
        let invoke = || {
            Command::new(env!("CARGO_BIN_EXE_mass"))
                .args(args)
                .args(["--loads", &loads, "--floor", &floor, "--format", "json"])
                .output()
                .unwrap()
        };
        let (a, b) = (invoke(), invoke());
        let valid = serde_json::from_slice::<serde_json::Value>(&a.stdout).is_ok();
        checks.push(check(
            args.join(" "),
            a.status.success() && valid && a.stdout == b.stdout,
        ));
    }
    verdict(8, "determinism (byte-identical JSON on repeat)", &checks);
}
