#![allow(dead_code)]

use mass_core::layout::{total_cost, BlockLayout, DistanceModel, FloorPlan};
use mass_core::{CostMatrix, Exact, LoadMatrix};

pub const EXAMPLE_CSV: &str = "\
name,I,II,III,IV,V,VI
I,-,20,-,-,-,25
II,10,-,15,-,-,-
III,-,-,-,30,-,-
IV,-,-,50,-,-,40
V,-,-,-,-,-,10
VI,-,-,-,-,15,-
";

pub fn example() -> LoadMatrix {
    LoadMatrix::parse_csv(EXAMPLE_CSV).unwrap()
}

pub fn example_plan() -> FloorPlan {
    FloorPlan::build(
        Exact::from_int(64),
        Exact::from_int(22),
        Exact::from_int(2),
        6,
    )
    .unwrap()
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for j in 0..used.len() {
            if !used[j] {
                used[j] = true;
                cur.push(j);
                go(cur, used, out);
                cur.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Exhaustive assignment minimum and every optimal permutation.
pub fn brute_force_assignment(c: &CostMatrix) -> Option<(i64, Vec<Vec<usize>>)> {
    let mut best: Option<(i64, Vec<Vec<usize>>)> = None;
    for p in permutations(c.n()) {
        let Some(cost) = c.permutation_cost(&p) else {
            continue;
        };
        match &mut best {
            Some((b, opts)) if cost == *b => opts.push(p),
            Some((b, _)) if cost > *b => {}
            _ => best = Some((cost, vec![p])),
        }
    }
    best
}

/// Largest number of zero cells any permutation can hit.
pub fn brute_force_zero_matching(c: &CostMatrix) -> usize {
    permutations(c.n())
        .iter()
        .map(|p| {
            p.iter()
                .enumerate()
                .filter(|&(i, &j)| c.get(i, j) == Some(0))
                .count()
        })
        .max()
        .unwrap_or(0)
}

/// Exhaustive minimum of the load function using the library's plain cost
/// evaluation rather than the improvement engine's scaled arithmetic.
pub fn brute_force_layout(m: &LoadMatrix, plan: &FloorPlan, model: DistanceModel) -> Exact {
    let mut best: Option<Exact> = None;
    let slots = plan.slots();
    let mut cur = Vec::new();
    fn go(
        m: &LoadMatrix,
        plan: &FloorPlan,
        model: DistanceModel,
        slots: usize,
        cur: &mut Vec<usize>,
        best: &mut Option<Exact>,
    ) {
        if cur.len() == m.n() {
            let l = BlockLayout::from_slot_indices(plan.clone(), cur).unwrap();
            let c = total_cost(&l, m, model).unwrap().total;
            if best.is_none_or(|b| c < b) {
                *best = Some(c);
            }
            return;
        }
        for s in 0..slots {
            if !cur.contains(&s) {
                cur.push(s);
                go(m, plan, model, slots, cur, best);
                cur.pop();
            }
        }
    }
    go(m, plan, model, slots, &mut cur, &mut best);
    best.unwrap()
}

/// Every layout reachable from `l` by exchanging two cells (either may be empty).
pub fn pair_neighbours(l: &BlockLayout) -> Vec<BlockLayout> {
    let plan = l.plan();
    let occ = l.occupancy();
    let mut out = Vec::new();
    for a in 0..plan.slots() {
        for b in a + 1..plan.slots() {
            if occ[a].is_none() && occ[b].is_none() {
                continue;
            }
            let mut slots = l.slot_indices();
            if let Some(f) = occ[a] {
                slots[f] = b;
            }
            if let Some(f) = occ[b] {
                slots[f] = a;
            }
            out.push(BlockLayout::from_slot_indices(plan.clone(), &slots).unwrap());
        }
    }
    out
}
