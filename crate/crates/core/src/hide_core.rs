//! Core-centrality solvers.
//!
//! Unlike the degree case, follower-only edges can raise a leader's core
//! number, so every satisfaction check recomputes the leader threshold on
//! the augmented graph.

use crate::centrality::{core_numbers, satisfied_count, Centrality, CoreWorkspace};
use crate::graph::{Edge, Graph, VertexId};
use crate::instance::{
    expect_kind, for_each_subset, subsets_up_to, Algorithm, Decision, EdgeAdditionPlan,
    HidingInstance, SolveError,
};

/// Leader threshold and the followers that fall short of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreDeficitReport {
    pub threshold: usize,
    pub deficient: Vec<VertexId>,
    pub satisfied_count: usize,
}

pub fn core_deficit(g: &Graph, inst: &HidingInstance) -> CoreDeficitReport {
    let core = core_numbers(g).core;
    let threshold = inst
        .partition
        .leaders()
        .iter()
        .map(|&l| core[l])
        .max()
        .unwrap_or(0);
    let (ok, deficient): (Vec<VertexId>, Vec<VertexId>) = inst
        .partition
        .followers()
        .partition(|&f| core[f] >= threshold);
    CoreDeficitReport {
        threshold,
        deficient,
        satisfied_count: ok.len(),
    }
}

/// Polynomial case where every leader has core number at most one.
///
/// Followers of degree at least one already have core at least one. The
/// remaining `d - d'` are isolated: they are paired up, and an odd one out
/// is hung off a follower that already has an edge. New edges never close a
/// cycle, so no leader's core rises.
pub fn solve_core_leq1(inst: &HidingInstance) -> Result<Decision, SolveError> {
    expect_kind(inst, Centrality::Core)?;
    let g = &inst.graph;
    let core = core_numbers(g).core;
    if let Some(&l) = inst.partition.leaders().iter().find(|&&l| core[l] > 1) {
        return Err(SolveError::Precondition(format!(
            "leader {l} has core number {} > 1",
            core[l]
        )));
    }
    let threshold = inst
        .partition
        .leaders()
        .iter()
        .map(|&l| core[l])
        .max()
        .unwrap_or(0);
    let satisfied = inst
        .partition
        .followers()
        .filter(|&f| core[f] >= threshold)
        .count();
    if satisfied >= inst.target {
        return Ok(Decision::Yes(EdgeAdditionPlan::build(
            inst,
            Vec::new(),
            Algorithm::CoreLeq1,
        )));
    }

    // Here threshold == 1, so the unsatisfied followers are exactly the
    // isolated ones.
    let need = inst.target - satisfied;
    let cost = need.div_ceil(2);
    if cost > inst.budget.unwrap_or(usize::MAX) {
        return Ok(Decision::No);
    }
    let isolated: Vec<VertexId> = inst
        .partition
        .followers()
        .filter(|&f| g.degree(f) == 0)
        .collect();
    let chosen = &isolated[..need];
    let mut edges: Vec<Edge> = chosen
        .chunks_exact(2)
        .map(|p| Edge::new(p[0], p[1]).expect("distinct followers"))
        .collect();
    if need % 2 == 1 {
        let last = chosen[need - 1];
        let anchor = inst
            .partition
            .followers()
            .find(|&f| g.degree(f) > 0)
            .or_else(|| chosen.first().copied().filter(|&f| f != last))
            .or_else(|| isolated.get(need).copied());
        match anchor {
            Some(a) => edges.push(Edge::new(last, a).expect("anchor differs from last")),
            None => {
                return Err(SolveError::Infeasible {
                    target: inst.target,
                    reason: "a single follower cannot gain an edge".into(),
                })
            }
        }
    }
    Ok(Decision::Yes(EdgeAdditionPlan::build(
        inst,
        edges,
        Algorithm::CoreLeq1,
    )))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoreExactConfig {
    /// Largest candidate pool searched; `None` disables the check.
    pub candidate_cap: Option<usize>,
    pub subset_cap: u128,
}

impl Default for CoreExactConfig {
    fn default() -> Self {
        CoreExactConfig {
            candidate_cap: Some(24),
            subset_cap: 100_000_000,
        }
    }
}

impl CoreExactConfig {
    pub fn uncapped_pool() -> Self {
        CoreExactConfig {
            candidate_cap: None,
            ..Self::default()
        }
    }
}

/// Subsets examined at each plan size, for auditing minimality.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchTrace {
    pub candidates: usize,
    pub checked_per_size: Vec<u128>,
}

pub fn solve_core_exact(
    inst: &HidingInstance,
    config: &CoreExactConfig,
) -> Result<Decision, SolveError> {
    solve_core_exact_traced(inst, config).map(|(d, _)| d)
}

/// Exhaustive search by increasing plan size. The first satisfying subset
/// (lexicographic within its size) is returned, so the plan is size-minimal.
pub fn solve_core_exact_traced(
    inst: &HidingInstance,
    config: &CoreExactConfig,
) -> Result<(Decision, SearchTrace), SolveError> {
    expect_kind(inst, Centrality::Core)?;
    let candidates = inst.candidate_edges();
    if let Some(cap) = config.candidate_cap {
        if candidates.len() > cap {
            return Err(SolveError::CandidateCap {
                count: candidates.len(),
                cap,
            });
        }
    }
    let budget = inst.budget.unwrap_or(candidates.len());
    let needed = subsets_up_to(candidates.len(), budget);
    if needed > config.subset_cap {
        return Err(SolveError::EnumerationCap {
            needed,
            cap: config.subset_cap,
        });
    }
    let mut trace = SearchTrace {
        candidates: candidates.len(),
        checked_per_size: Vec::new(),
    };
    let mut ws = CoreWorkspace::new();
    let mut overlay: Vec<Edge> = Vec::new();
    for size in 0..=budget.min(candidates.len()) {
        let mut checked: u128 = 0;
        let mut found = false;
        for_each_subset(candidates.len(), size, |pick| {
            checked += 1;
            overlay.clear();
            overlay.extend(pick.iter().map(|&i| candidates[i]));
            let cores = ws.cores_with(&inst.graph, &overlay);
            found = satisfied_count(cores, &inst.partition) >= inst.target;
            found
        });
        trace.checked_per_size.push(checked);
        if found {
            let plan = EdgeAdditionPlan::build(inst, overlay, Algorithm::CoreExact);
            return Ok((Decision::Yes(plan), trace));
        }
    }
    Ok((Decision::No, trace))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GreedyConfig {
    /// Below this many absent follower pairs the whole pool is scored.
    pub full_pool_cap: usize,
}

impl Default for GreedyConfig {
    fn default() -> Self {
        GreedyConfig {
            full_pool_cap: 50_000,
        }
    }
}

fn greedy_pool(g: &Graph, inst: &HidingInstance, deficient: &[VertexId], cap: usize) -> Vec<Edge> {
    let followers: Vec<VertexId> = inst.partition.followers().collect();
    let f = followers.len();
    let follower_edges = g
        .edges()
        .filter(|e| inst.partition.is_follower(e.u()) && inst.partition.is_follower(e.v()))
        .count();
    if f * f.saturating_sub(1) / 2 - follower_edges <= cap {
        return g.non_edges_between(&followers, &followers);
    }
    let mut pool = g.non_edges_between(deficient, &followers);
    let mut near: Vec<VertexId> = deficient
        .iter()
        .flat_map(|&x| g.neighbors(x).iter().copied())
        .filter(|&y| inst.partition.is_follower(y))
        .collect();
    near.sort_unstable();
    near.dedup();
    pool.extend(g.non_edges_between(&near, &near));
    pool.sort_unstable();
    pool.dedup();
    pool
}

/// Greedy heuristic for the general case: repeatedly add the absent follower
/// edge with the best (satisfied gain, deficient core gain) score, ties to
/// the lexicographically smallest edge, recomputing the threshold each step.
pub fn solve_core_greedy(
    inst: &HidingInstance,
    config: &GreedyConfig,
) -> Result<EdgeAdditionPlan, SolveError> {
    expect_kind(inst, Centrality::Core)?;
    let budget = inst.budget.unwrap_or(usize::MAX);
    let mut g = inst.graph.clone();
    let mut ws = CoreWorkspace::new();
    let mut edges = Vec::new();

    loop {
        let report = core_deficit(&g, inst);
        if report.satisfied_count >= inst.target {
            return Ok(EdgeAdditionPlan::build(inst, edges, Algorithm::CoreGreedy));
        }
        if edges.len() >= budget {
            return Err(SolveError::BudgetExhausted {
                budget,
                satisfied: report.satisfied_count,
                target: inst.target,
            });
        }
        let pool = greedy_pool(&g, inst, &report.deficient, config.full_pool_cap);
        let base_core: usize = {
            let cores = ws.cores_with(&g, &[]);
            report.deficient.iter().map(|&x| cores[x]).sum()
        };
        let mut best: Option<((usize, usize), Edge)> = None;
        for &e in &pool {
            let cores = ws.cores_with(&g, std::slice::from_ref(&e));
            let sat = satisfied_count(cores, &inst.partition);
            let core_sum: usize = report.deficient.iter().map(|&x| cores[x]).sum();
            let score = (sat, core_sum.saturating_sub(base_core));
            if best.is_none_or(|(s, _)| score > s) {
                best = Some((score, e));
            }
        }
        let Some((_, e)) = best else {
            return Err(SolveError::Infeasible {
                target: inst.target,
                reason: "no absent follower pair left".into(),
            });
        };
        g.add_edge(e).expect("pool edges are absent");
        edges.push(e);
    }
}
