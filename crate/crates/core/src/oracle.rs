//! Brute-force reference implementations.
//!
//! Nothing here calls into the solver or centrality modules: cores are
//! computed definitionally by iterated deletion and satisfaction is checked
//! on a private adjacency copy, so agreement with the fast paths is a real
//! cross-check.

use thiserror::Error;

use crate::centrality::Centrality;
use crate::graph::{Edge, Graph, VertexId};
use crate::instance::HidingInstance;

/// Largest graph accepted by [`oracle_core_numbers`].
pub const MAX_CORE_ORACLE_VERTICES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_candidate_edges: usize,
    pub max_subsets: u128,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_candidate_edges: 24,
            max_subsets: 10_000_000,
        }
    }
}

impl OracleBudget {
    /// No cap on the candidate pool; subset cap unchanged.
    pub fn unbounded_pool() -> Self {
        OracleBudget {
            max_candidate_edges: usize::MAX,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{count} candidate edges exceed oracle cap {cap}")]
    CandidateCap { count: usize, cap: usize },
    #[error("search through size {size} needs {needed} subsets, cap is {cap}")]
    SubsetCap {
        size: usize,
        needed: u128,
        cap: u128,
    },
    #[error("graph has {n} vertices, oracle cap is {cap}")]
    TooLarge { n: usize, cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleOutcome {
    /// Minimum plan size and the lexicographically first witness of that size.
    Optimal {
        size: usize,
        witness: Vec<Edge>,
    },
    NoneWithinBudget,
}

impl OracleOutcome {
    pub fn optimal_size(&self) -> Option<usize> {
        match self {
            OracleOutcome::Optimal { size, .. } => Some(*size),
            OracleOutcome::NoneWithinBudget => None,
        }
    }
}

/// Core numbers by definition: for each `k`, delete vertices of degree `< k`
/// until none remain; survivors have core at least `k`.
fn definitional_cores(adj: &[Vec<VertexId>]) -> Vec<usize> {
    let n = adj.len();
    let mut core = vec![0usize; n];
    let mut k = 1;
    loop {
        let mut alive = vec![true; n];
        loop {
            let doomed: Vec<VertexId> = (0..n)
                .filter(|&v| alive[v] && adj[v].iter().filter(|&&u| alive[u]).count() < k)
                .collect();
            if doomed.is_empty() {
                break;
            }
            for v in doomed {
                alive[v] = false;
            }
        }
        if !alive.iter().any(|&a| a) {
            return core;
        }
        for v in 0..n {
            if alive[v] {
                core[v] = k;
            }
        }
        k += 1;
    }
}

fn adjacency_of(g: &Graph) -> Vec<Vec<VertexId>> {
    let mut adj = vec![Vec::new(); g.n()];
    for e in g.edges() {
        adj[e.u()].push(e.v());
        adj[e.v()].push(e.u());
    }
    adj
}

pub fn oracle_core_numbers(g: &Graph) -> Result<Vec<usize>, OracleError> {
    if g.n() > MAX_CORE_ORACLE_VERTICES {
        return Err(OracleError::TooLarge {
            n: g.n(),
            cap: MAX_CORE_ORACLE_VERTICES,
        });
    }
    Ok(definitional_cores(&adjacency_of(g)))
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

struct Checker {
    base: Vec<Vec<VertexId>>,
    leaders: Vec<VertexId>,
    followers: Vec<VertexId>,
    target: usize,
    kind: Centrality,
    scratch: Vec<Vec<VertexId>>,
}

impl Checker {
    fn new(inst: &HidingInstance) -> Self {
        let n = inst.graph.n();
        let leaders: Vec<VertexId> = (0..n).filter(|&v| inst.partition.is_leader(v)).collect();
        let followers: Vec<VertexId> = (0..n).filter(|&v| !inst.partition.is_leader(v)).collect();
        let base = adjacency_of(&inst.graph);
        Checker {
            scratch: base.clone(),
            base,
            leaders,
            followers,
            target: inst.target,
            kind: inst.kind,
        }
    }

    fn satisfied_with(&mut self, pool: &[(VertexId, VertexId)], pick: &[usize]) -> bool {
        for (dst, src) in self.scratch.iter_mut().zip(&self.base) {
            dst.clear();
            dst.extend_from_slice(src);
        }
        for &i in pick {
            let (a, b) = pool[i];
            self.scratch[a].push(b);
            self.scratch[b].push(a);
        }
        let score: Vec<usize> = match self.kind {
            Centrality::Degree => self.scratch.iter().map(Vec::len).collect(),
            Centrality::Core => definitional_cores(&self.scratch),
        };
        let threshold = self.leaders.iter().map(|&l| score[l]).max().unwrap_or(0);
        let good = self
            .followers
            .iter()
            .filter(|&&f| score[f] >= threshold)
            .count();
        good >= self.target
    }
}

/// Smallest set of absent follower–follower edges that satisfies the
/// instance, searched size by size in lexicographic order up to the
/// instance budget (or without limit in the optimization form).
pub fn oracle_min_edges(
    inst: &HidingInstance,
    budget: &OracleBudget,
) -> Result<OracleOutcome, OracleError> {
    let mut checker = Checker::new(inst);
    let mut pool: Vec<(VertexId, VertexId)> = Vec::new();
    for (i, &a) in checker.followers.iter().enumerate() {
        for &b in &checker.followers[i + 1..] {
            if !checker.base[a].contains(&b) {
                pool.push((a, b));
            }
        }
    }
    if pool.len() > budget.max_candidate_edges {
        return Err(OracleError::CandidateCap {
            count: pool.len(),
            cap: budget.max_candidate_edges,
        });
    }
    let max_size = inst.budget.unwrap_or(usize::MAX).min(pool.len());
    let mut spent: u128 = 0;
    for size in 0..=max_size {
        spent = spent.saturating_add(binomial(pool.len(), size));
        if spent > budget.max_subsets {
            return Err(OracleError::SubsetCap {
                size,
                needed: spent,
                cap: budget.max_subsets,
            });
        }
        // Odometer over index tuples i_0 < i_1 < ... < i_{size-1}.
        let mut pick: Vec<usize> = (0..size).collect();
        'tuples: loop {
            if checker.satisfied_with(&pool, &pick) {
                let witness = pick
                    .iter()
                    .map(|&i| Edge::new(pool[i].0, pool[i].1).expect("followers are distinct"))
                    .collect();
                return Ok(OracleOutcome::Optimal { size, witness });
            }
            let mut pos = size;
            while pos > 0 {
                pos -= 1;
                if pick[pos] < pool.len() - (size - pos) {
                    pick[pos] += 1;
                    for j in pos + 1..size {
                        pick[j] = pick[j - 1] + 1;
                    }
                    continue 'tuples;
                }
            }
            break;
        }
    }
    Ok(OracleOutcome::NoneWithinBudget)
}
