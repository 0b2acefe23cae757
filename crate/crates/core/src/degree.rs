//! Degree-centrality solvers: the exact algorithm for bounded leader degree,
//! the HLDA 2-approximation, the matching lower bound, and a seeded random
//! baseline.
//!
//! All of them share the same setup. `c*` is the highest leader degree,
//! `d'` the number of followers already at degree `>= c*`, and the targets
//! `X` are the `d - d'` unsatisfied followers of highest degree (ties broken
//! by smallest id). Leader degrees never change because only follower
//! edges are added, so `c*` is fixed for the whole run.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::centrality::Centrality;
use crate::graph::{Edge, Graph, VertexId};
use crate::instance::{
    expect_kind, for_each_subset, subsets_up_to, Algorithm, Decision, EdgeAdditionPlan,
    HidingInstance, SolveError,
};

#[derive(Debug, Clone, PartialEq, Eq)]
struct Setup {
    threshold: usize,
    satisfied: usize,
    targets: Vec<VertexId>,
}

impl Setup {
    fn new(inst: &HidingInstance) -> Self {
        let g = &inst.graph;
        let threshold = inst
            .partition
            .leaders()
            .iter()
            .map(|&l| g.degree(l))
            .max()
            .unwrap_or(0);
        let satisfied = inst
            .partition
            .followers()
            .filter(|&f| g.degree(f) >= threshold)
            .count();
        let mut pool: Vec<VertexId> = inst
            .partition
            .followers()
            .filter(|&f| g.degree(f) < threshold)
            .collect();
        pool.sort_by_key(|&f| (std::cmp::Reverse(g.degree(f)), f));
        pool.truncate(inst.target.saturating_sub(satisfied));
        Setup {
            threshold,
            satisfied,
            targets: pool,
        }
    }

    fn deficit_sum(&self, g: &Graph) -> usize {
        self.targets
            .iter()
            .map(|&x| self.threshold - g.degree(x))
            .sum()
    }
}

/// `ceil(Σ (c* - deg(x)) / 2)` over the targets; zero when `d' >= d`.
pub fn lower_bound(inst: &HidingInstance) -> Result<usize, SolveError> {
    expect_kind(inst, Centrality::Degree)?;
    let setup = Setup::new(inst);
    Ok(setup.deficit_sum(&inst.graph).div_ceil(2))
}

/// HLDA: raise every target to `c*` with edges that touch at least one
/// target, stopping as soon as `d` followers meet the threshold.
///
/// While two deficient targets are non-adjacent, the lexicographically
/// smallest such pair is joined; once the deficient targets form a clique,
/// the lowest-id one is attached to the lowest-id non-adjacent follower.
/// Every edge lowers the total deficit by at least one, so the plan has at
/// most `Σ deficits <= 2 * lower_bound` edges.
pub fn hlda(inst: &HidingInstance) -> Result<EdgeAdditionPlan, SolveError> {
    expect_kind(inst, Centrality::Degree)?;
    let setup = Setup::new(inst);
    let k = setup.threshold;
    let mut g = inst.graph.clone();
    let mut satisfied = setup.satisfied;
    let mut deficient: BTreeSet<VertexId> = setup.targets.iter().copied().collect();
    let mut edges = Vec::new();

    let add =
        |g: &mut Graph, e: Edge, satisfied: &mut usize, deficient: &mut BTreeSet<VertexId>| {
            g.add_edge(e).expect("solver only adds absent edges");
            for x in [e.u(), e.v()] {
                if inst.partition.is_follower(x) && g.degree(x) == k {
                    *satisfied += 1;
                    deficient.remove(&x);
                }
            }
        };

    while satisfied < inst.target && !deficient.is_empty() {
        let pair = deficient.iter().find_map(|&x| {
            deficient
                .range(x + 1..)
                .find(|&&y| !g.has_edge(x, y))
                .map(|&y| (x, y))
        });
        let e = match pair {
            Some((x, y)) => Edge::new(x, y).expect("distinct targets"),
            None => {
                let x = *deficient.first().expect("loop guard");
                let y = inst
                    .partition
                    .followers()
                    .find(|&y| y != x && !g.has_edge(x, y))
                    .ok_or_else(|| SolveError::Infeasible {
                        target: inst.target,
                        reason: format!(
                            "follower {x} is adjacent to every other follower but has degree {} < {k}",
                            g.degree(x)
                        ),
                    })?;
                Edge::new(x, y).expect("distinct followers")
            }
        };
        add(&mut g, e, &mut satisfied, &mut deficient);
        edges.push(e);
    }
    Ok(EdgeAdditionPlan::build(inst, edges, Algorithm::Hlda))
}

/// Adds uniformly random absent follower–follower edges until `d`
/// followers meet the threshold. Deterministic for a given seed.
pub fn random_baseline(inst: &HidingInstance, seed: u64) -> Result<EdgeAdditionPlan, SolveError> {
    expect_kind(inst, Centrality::Degree)?;
    let setup = Setup::new(inst);
    let k = setup.threshold;
    let followers: Vec<VertexId> = inst.partition.followers().collect();
    let f = followers.len();
    let mut g = inst.graph.clone();
    let mut satisfied = setup.satisfied;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();

    let total_pairs = f * f.saturating_sub(1) / 2;
    let follower_edges = g
        .edges()
        .filter(|e| inst.partition.is_follower(e.u()) && inst.partition.is_follower(e.v()))
        .count();
    let mut remaining = total_pairs - follower_edges;
    // Rejection sampling until the pool gets sparse, then an explicit list.
    let mut explicit: Option<Vec<Edge>> = None;

    while satisfied < inst.target {
        if remaining == 0 {
            return Err(SolveError::Infeasible {
                target: inst.target,
                reason: format!("all follower pairs used with {satisfied} satisfied"),
            });
        }
        if explicit.is_none() && remaining * 64 < total_pairs {
            explicit = Some(g.non_edges_between(&followers, &followers));
        }
        let e = match explicit.as_mut() {
            Some(pool) => pool.swap_remove(rng.gen_range(0..pool.len())),
            None => loop {
                let a = followers[rng.gen_range(0..f)];
                let b = followers[rng.gen_range(0..f)];
                if a != b && !g.has_edge(a, b) {
                    break Edge::new(a, b).expect("distinct");
                }
            },
        };
        g.add_edge(e).expect("sampled edge is absent");
        remaining -= 1;
        for x in [e.u(), e.v()] {
            if g.degree(x) == k {
                satisfied += 1;
            }
        }
        edges.push(e);
    }
    Ok(EdgeAdditionPlan::build(inst, edges, Algorithm::Random).with_seed(seed))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactConfig {
    /// Largest number of edge subsets the enumeration branches may visit.
    pub enumeration_cap: u128,
}

impl Default for ExactConfig {
    fn default() -> Self {
        ExactConfig {
            enumeration_cap: 10_000_000,
        }
    }
}

/// Which part of the exact algorithm produced the answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExactBranch {
    AlreadySatisfied,
    /// At most `2k` followers: all subsets of the candidate edges.
    FewFollowers,
    /// Budget below `4k²`: all additions of at most `b` edges.
    SmallBudget,
    /// Green-edge augmentation with local swaps.
    Augmentation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactOutcome {
    pub decision: Decision,
    pub branch: ExactBranch,
    /// Swap steps taken in the augmentation branch.
    pub swaps: usize,
}

/// Exact decision procedure, polynomial when the largest leader degree `k`
/// is a constant.
pub fn solve_exact_bounded(inst: &HidingInstance) -> Result<Decision, SolveError> {
    solve_exact_bounded_with(inst, &ExactConfig::default()).map(|o| o.decision)
}

pub fn solve_exact_bounded_with(
    inst: &HidingInstance,
    config: &ExactConfig,
) -> Result<ExactOutcome, SolveError> {
    expect_kind(inst, Centrality::Degree)?;
    let setup = Setup::new(inst);
    let k = setup.threshold;
    let budget = inst.budget.unwrap_or(usize::MAX);
    let outcome = |decision, branch| ExactOutcome {
        decision,
        branch,
        swaps: 0,
    };

    if setup.satisfied >= inst.target {
        let plan = EdgeAdditionPlan::build(inst, Vec::new(), Algorithm::Exact);
        return Ok(outcome(Decision::Yes(plan), ExactBranch::AlreadySatisfied));
    }
    let followers = inst.partition.follower_count();
    if followers <= 2 * k {
        let d = enumerate(inst, k, budget, config)?;
        return Ok(outcome(d, ExactBranch::FewFollowers));
    }
    if (budget as u128) < 4 * (k as u128) * (k as u128) {
        let d = enumerate(inst, k, budget, config)?;
        return Ok(outcome(d, ExactBranch::SmallBudget));
    }
    Ok(augment(inst, setup, budget))
}

/// Size-major, lexicographic search over subsets of absent follower edges.
fn enumerate(
    inst: &HidingInstance,
    k: usize,
    budget: usize,
    config: &ExactConfig,
) -> Result<Decision, SolveError> {
    let candidates = inst.candidate_edges();
    let needed = subsets_up_to(candidates.len(), budget);
    if needed > config.enumeration_cap {
        return Err(SolveError::EnumerationCap {
            needed,
            cap: config.enumeration_cap,
        });
    }
    let base = inst.graph.degrees();
    let followers: Vec<VertexId> = inst.partition.followers().collect();
    let mut deg = base.clone();
    for size in 0..=budget.min(candidates.len()) {
        let mut found: Option<Vec<Edge>> = None;
        for_each_subset(candidates.len(), size, |pick| {
            for &i in pick {
                deg[candidates[i].u()] += 1;
                deg[candidates[i].v()] += 1;
            }
            let good = followers.iter().filter(|&&f| deg[f] >= k).count();
            for &i in pick {
                deg[candidates[i].u()] -= 1;
                deg[candidates[i].v()] -= 1;
            }
            if good >= inst.target {
                found = Some(pick.iter().map(|&i| candidates[i]).collect());
                true
            } else {
                false
            }
        });
        if let Some(edges) = found {
            return Ok(Decision::Yes(EdgeAdditionPlan::build(
                inst,
                edges,
                Algorithm::Exact,
            )));
        }
    }
    Ok(Decision::No)
}

/// Green-edge bookkeeping: original edges are implicitly red and are never
/// removed; only edges added by the solver may be swapped out.
struct GreenState<'a> {
    inst: &'a HidingInstance,
    g: Graph,
    green: Vec<Edge>,
    in_targets: Vec<bool>,
    k: usize,
}

impl GreenState<'_> {
    fn add(&mut self, e: Edge) {
        self.g
            .add_edge(e)
            .expect("green edges are absent when added");
        self.green.push(e);
    }

    fn remove(&mut self, e: Edge) {
        let at = self
            .green
            .iter()
            .position(|&x| x == e)
            .expect("only green edges are removed");
        self.green.remove(at);
        self.g.remove_edge(e).expect("green edge present");
    }

    fn deficient(&self, targets: &[VertexId]) -> Vec<VertexId> {
        let mut z: Vec<VertexId> = targets
            .iter()
            .copied()
            .filter(|&x| self.g.degree(x) < self.k)
            .collect();
        z.sort_unstable();
        z
    }

    /// Non-adjacent follower for `x`: satisfied followers outside the targets
    /// first, then other non-targets, then targets; lowest id within each.
    fn partner(&self, x: VertexId) -> Option<VertexId> {
        let p = &self.inst.partition;
        let free = |y: VertexId| y != x && !self.g.has_edge(x, y);
        let outside_sat = p
            .followers()
            .find(|&y| free(y) && !self.in_targets[y] && self.g.degree(y) >= self.k);
        outside_sat
            .or_else(|| p.followers().find(|&y| free(y) && !self.in_targets[y]))
            .or_else(|| p.followers().find(|&y| free(y)))
    }

    fn saturate(&mut self, x: VertexId) -> bool {
        while self.g.degree(x) < self.k {
            match self.partner(x) {
                Some(y) => self.add(Edge::new(x, y).expect("distinct")),
                None => return false,
            }
        }
        true
    }

    /// Smallest green edge with both endpoints outside `avoid`.
    fn green_avoiding(&self, avoid: &[VertexId]) -> Option<Edge> {
        self.green
            .iter()
            .copied()
            .filter(|e| !avoid.contains(&e.u()) && !avoid.contains(&e.v()))
            .min()
    }
}

fn augment(inst: &HidingInstance, setup: Setup, budget: usize) -> ExactOutcome {
    let k = setup.threshold;
    let mut in_targets = vec![false; inst.graph.n()];
    for &x in &setup.targets {
        in_targets[x] = true;
    }
    let initial_deficit = setup.deficit_sum(&inst.graph);
    let mut st = GreenState {
        inst,
        g: inst.graph.clone(),
        green: Vec::new(),
        in_targets,
        k,
    };
    let targets = setup.targets;
    let swap_threshold = 3 * k * k;
    let mut swaps = 0;
    let finish = |st: GreenState, swaps: usize, yes: bool| {
        let decision = if yes {
            debug_assert!(st.green.len() <= budget);
            Decision::Yes(EdgeAdditionPlan::build(inst, st.green, Algorithm::Exact))
        } else {
            debug_assert!(initial_deficit.div_ceil(2) > budget);
            Decision::No
        };
        ExactOutcome {
            decision,
            branch: ExactBranch::Augmentation,
            swaps,
        }
    };

    loop {
        let z = st.deficient(&targets);
        if st.green.len() < budget {
            let pair = z.iter().enumerate().find_map(|(i, &x)| {
                z[i + 1..]
                    .iter()
                    .find(|&&y| !st.g.has_edge(x, y))
                    .map(|&y| (x, y))
            });
            if let Some((x, y)) = pair {
                st.add(Edge::new(x, y).expect("distinct targets"));
                continue;
            }
        }
        // Case 1: every target reached the threshold.
        if z.is_empty() {
            return finish(st, swaps, true);
        }
        // Case 2: budget spent with a deficient target left.
        if st.green.len() >= budget {
            return finish(st, swaps, false);
        }
        if let [x] = z[..] {
            // Case 3: a single deficient target.
            if st.g.degree(x) + 1 == k {
                let ok = st.saturate(x);
                return finish(st, swaps, ok);
            }
            if st.green.len() <= swap_threshold {
                let ok = st.saturate(x);
                return finish(st, swaps, ok);
            }
            let mut avoid: Vec<VertexId> = st.g.neighbors(x).to_vec();
            avoid.push(x);
            let Some(e) = st.green_avoiding(&avoid) else {
                return finish(st, swaps, false);
            };
            st.remove(e);
            st.add(Edge::new(x, e.u()).expect("u is not x"));
            st.add(Edge::new(x, e.v()).expect("v is not x"));
            swaps += 1;
        } else {
            // Case 4: the deficient targets form a clique of size at most k.
            if st.green.len() <= swap_threshold {
                let mut ok = true;
                for &x in &z {
                    ok &= st.saturate(x);
                }
                return finish(st, swaps, ok);
            }
            let (a, b) = (z[0], z[1]);
            let mut avoid: Vec<VertexId> = st.g.neighbors(a).to_vec();
            avoid.extend_from_slice(st.g.neighbors(b));
            avoid.extend([a, b]);
            let Some(e) = st.green_avoiding(&avoid) else {
                return finish(st, swaps, false);
            };
            st.remove(e);
            st.add(Edge::new(a, e.u()).expect("u outside avoid set"));
            st.add(Edge::new(b, e.v()).expect("v outside avoid set"));
            swaps += 1;
        }
    }
}
