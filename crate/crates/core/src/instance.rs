//! Problem instances, edge-addition plans and the plan verifier.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::centrality::{centrality_values, satisfied_count, Centrality};
use crate::graph::{Edge, Graph, GraphError, VertexPartition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("target d = {d} exceeds the {followers} followers")]
    TargetTooLarge { d: usize, followers: usize },
    #[error("partition covers {partition} vertices but graph has {graph}")]
    SizeMismatch { partition: usize, graph: usize },
}

/// Graph, leaders, budget `b`, target `d` and centrality kind.
///
/// `budget == None` is the optimization form: the number of added edges is
/// what the solver minimizes rather than a hard cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HidingInstance {
    pub graph: Graph,
    pub partition: VertexPartition,
    pub budget: Option<usize>,
    pub target: usize,
    pub kind: Centrality,
}

impl HidingInstance {
    pub fn new(
        graph: Graph,
        partition: VertexPartition,
        budget: Option<usize>,
        target: usize,
        kind: Centrality,
    ) -> Result<Self, InstanceError> {
        if partition.n() != graph.n() {
            return Err(InstanceError::SizeMismatch {
                partition: partition.n(),
                graph: graph.n(),
            });
        }
        if target > partition.follower_count() {
            return Err(InstanceError::TargetTooLarge {
                d: target,
                followers: partition.follower_count(),
            });
        }
        Ok(HidingInstance {
            graph,
            partition,
            budget,
            target,
            kind,
        })
    }

    pub fn with_budget(mut self, budget: Option<usize>) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_kind(mut self, kind: Centrality) -> Self {
        self.kind = kind;
        self
    }

    /// Number of followers already meeting the leader threshold.
    pub fn satisfied_now(&self) -> usize {
        satisfied_count(&centrality_values(&self.graph, self.kind), &self.partition)
    }

    /// Every absent follower–follower pair in lexicographic order.
    pub fn candidate_edges(&self) -> Vec<Edge> {
        let followers: Vec<_> = self.partition.followers().collect();
        self.graph.non_edges_between(&followers, &followers)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Exact,
    Hlda,
    Random,
    CoreLeq1,
    CoreExact,
    CoreGreedy,
    Oracle,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Exact => "exact",
            Algorithm::Hlda => "hlda",
            Algorithm::Random => "random",
            Algorithm::CoreLeq1 => "leq1",
            Algorithm::CoreExact => "core-exact",
            Algorithm::CoreGreedy => "greedy",
            Algorithm::Oracle => "oracle",
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PlanStats {
    pub edges_added: usize,
    /// Followers still missing before any edge is added: `max(d - d', 0)`.
    pub deficit_before: usize,
    /// Satisfied followers once the plan is applied.
    pub satisfied_after: usize,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeAdditionPlan {
    pub edges: Vec<Edge>,
    pub algorithm: Algorithm,
    pub stats: PlanStats,
}

impl EdgeAdditionPlan {
    /// Builds a plan and fills its stats by applying it to `inst`.
    pub fn build(inst: &HidingInstance, edges: Vec<Edge>, algorithm: Algorithm) -> Self {
        let before = inst.satisfied_now();
        let mut g = inst.graph.clone();
        let satisfied_after = match g.add_edges(&edges) {
            Ok(()) => satisfied_count(&centrality_values(&g, inst.kind), &inst.partition),
            Err(_) => 0,
        };
        EdgeAdditionPlan {
            stats: PlanStats {
                edges_added: edges.len(),
                deficit_before: inst.target.saturating_sub(before),
                satisfied_after,
                seed: None,
            },
            edges,
            algorithm,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.stats.seed = Some(seed);
        self
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RejectReason {
    LeaderEdge(Edge),
    DuplicateEdge(Edge),
    ExistingEdge(Edge),
    OutOfRange(Edge),
    OverBudget { size: usize, budget: usize },
    Unsatisfied { satisfied: usize, required: usize },
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RejectReason::LeaderEdge(e) => write!(f, "edge {e} touches a leader"),
            RejectReason::DuplicateEdge(e) => write!(f, "edge {e} listed twice"),
            RejectReason::ExistingEdge(e) => write!(f, "edge {e} already in the graph"),
            RejectReason::OutOfRange(e) => write!(f, "edge {e} out of range"),
            RejectReason::OverBudget { size, budget } => {
                write!(f, "{size} edges exceed budget {budget}")
            }
            RejectReason::Unsatisfied {
                satisfied,
                required,
            } => write!(f, "{satisfied} satisfied followers, {required} required"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Accepted,
    Rejected(RejectReason),
}

impl Verdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Verdict::Accepted)
    }
}

/// Checks a plan from scratch: structure, budget, then full centrality
/// recomputation on the augmented graph (leader thresholds included).
pub fn verify(inst: &HidingInstance, plan: &EdgeAdditionPlan) -> Verdict {
    verify_edges(inst, &plan.edges)
}

pub fn verify_edges(inst: &HidingInstance, edges: &[Edge]) -> Verdict {
    let mut g = inst.graph.clone();
    for &e in edges {
        if inst.partition.is_leader(e.u()) || inst.partition.is_leader(e.v()) {
            return Verdict::Rejected(RejectReason::LeaderEdge(e));
        }
        match g.add_edge(e) {
            Ok(()) => {}
            Err(GraphError::DuplicateEdge(_)) if inst.graph.has_edge(e.u(), e.v()) => {
                return Verdict::Rejected(RejectReason::ExistingEdge(e))
            }
            Err(GraphError::DuplicateEdge(_)) => {
                return Verdict::Rejected(RejectReason::DuplicateEdge(e))
            }
            Err(_) => return Verdict::Rejected(RejectReason::OutOfRange(e)),
        }
    }
    if let Some(budget) = inst.budget {
        if edges.len() > budget {
            return Verdict::Rejected(RejectReason::OverBudget {
                size: edges.len(),
                budget,
            });
        }
    }
    let satisfied = satisfied_count(&centrality_values(&g, inst.kind), &inst.partition);
    if satisfied >= inst.target {
        Verdict::Accepted
    } else {
        Verdict::Rejected(RejectReason::Unsatisfied {
            satisfied,
            required: inst.target,
        })
    }
}

/// Outcome of a decision solver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Yes(EdgeAdditionPlan),
    No,
}

impl Decision {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes(_))
    }

    pub fn plan(&self) -> Option<&EdgeAdditionPlan> {
        match self {
            Decision::Yes(p) => Some(p),
            Decision::No => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("solver expects {expected} centrality, instance uses {found}")]
    KindMismatch {
        expected: Centrality,
        found: Centrality,
    },
    #[error("enumeration needs {needed} subsets, cap is {cap}")]
    EnumerationCap { needed: u128, cap: u128 },
    #[error("{count} candidate edges exceed the cap of {cap}")]
    CandidateCap { count: usize, cap: usize },
    #[error("cannot satisfy {target} followers: {reason}")]
    Infeasible { target: usize, reason: String },
    #[error("budget of {budget} edges exhausted with {satisfied} of {target} followers satisfied")]
    BudgetExhausted {
        budget: usize,
        satisfied: usize,
        target: usize,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub(crate) fn expect_kind(inst: &HidingInstance, expected: Centrality) -> Result<(), SolveError> {
    if inst.kind == expected {
        Ok(())
    } else {
        Err(SolveError::KindMismatch {
            expected,
            found: inst.kind,
        })
    }
}

/// `Σ_{s=0}^{min(b, c)} C(c, s)`, saturating.
pub(crate) fn subsets_up_to(c: usize, b: usize) -> u128 {
    let mut total: u128 = 0;
    let mut term: u128 = 1;
    for s in 0..=b.min(c) {
        total = total.saturating_add(term);
        term = term.saturating_mul((c - s) as u128) / (s as u128 + 1);
    }
    total
}

/// Visits every `s`-subset of `0..c` in lexicographic order until `visit`
/// returns `true`. Returns whether it stopped early.
pub(crate) fn for_each_subset(c: usize, s: usize, mut visit: impl FnMut(&[usize]) -> bool) -> bool {
    if s > c {
        return false;
    }
    let mut idx: Vec<usize> = (0..s).collect();
    loop {
        if visit(&idx) {
            return true;
        }
        let mut i = s;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if idx[i] != i + c - s {
                break;
            }
            if i == 0 {
                return false;
            }
        }
        idx[i] += 1;
        for j in i + 1..s {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn leader_triangle(followers: usize) -> (Graph, VertexPartition) {
        let n = 3 + followers;
        let g = Graph::from_edges(n, [(0, 1), (0, 2), (1, 2)]).unwrap();
        (g, VertexPartition::new(n, [0, 1, 2]).unwrap())
    }

    fn e(a: usize, b: usize) -> Edge {
        Edge::new(a, b).unwrap()
    }

    #[test]
    fn empty_plan_accepted_when_already_satisfied() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let p = VertexPartition::new(4, [0]).unwrap();
        let inst = HidingInstance::new(g, p, Some(0), 3, Centrality::Degree).unwrap();
        assert_eq!(verify_edges(&inst, &[]), Verdict::Accepted);
    }

    #[test]
    fn leader_edges_rejected() {
        let (g, p) = leader_triangle(3);
        let inst = HidingInstance::new(g, p, Some(3), 2, Centrality::Degree).unwrap();
        assert_eq!(
            verify_edges(&inst, &[e(0, 3)]),
            Verdict::Rejected(RejectReason::LeaderEdge(e(0, 3)))
        );
    }

    #[test]
    fn follower_triangle_accepted() {
        let (g, p) = leader_triangle(3);
        let inst = HidingInstance::new(g, p, Some(3), 2, Centrality::Degree).unwrap();
        let plan =
            EdgeAdditionPlan::build(&inst, vec![e(3, 4), e(3, 5), e(4, 5)], Algorithm::Oracle);
        assert_eq!(verify(&inst, &plan), Verdict::Accepted);
        assert_eq!(plan.stats.satisfied_after, 3);
        assert_eq!(plan.stats.deficit_before, 2);

        let tight = inst.clone().with_budget(Some(2));
        assert_eq!(
            verify(&tight, &plan),
            Verdict::Rejected(RejectReason::OverBudget { size: 3, budget: 2 })
        );
        assert_eq!(
            verify_edges(&inst, &[e(3, 4), e(4, 3)]),
            Verdict::Rejected(RejectReason::DuplicateEdge(e(3, 4)))
        );
        assert_eq!(
            verify_edges(&inst, &[e(3, 4)]),
            Verdict::Rejected(RejectReason::Unsatisfied {
                satisfied: 0,
                required: 2
            })
        );
    }

    #[test]
    fn existing_edge_rejected() {
        let g = Graph::from_edges(4, [(2, 3)]).unwrap();
        let p = VertexPartition::new(4, [0]).unwrap();
        let inst = HidingInstance::new(g, p, None, 1, Centrality::Degree).unwrap();
        assert_eq!(
            verify_edges(&inst, &[e(2, 3)]),
            Verdict::Rejected(RejectReason::ExistingEdge(e(2, 3)))
        );
    }

    #[test]
    fn target_must_fit_followers() {
        let (g, p) = leader_triangle(2);
        assert_eq!(
            HidingInstance::new(g, p, None, 3, Centrality::Degree),
            Err(InstanceError::TargetTooLarge { d: 3, followers: 2 })
        );
    }

    #[test]
    fn subset_counting_and_enumeration() {
        assert_eq!(subsets_up_to(4, 2), 1 + 4 + 6);
        assert_eq!(subsets_up_to(3, 10), 8);
        assert_eq!(subsets_up_to(0, 0), 1);
        let mut seen = Vec::new();
        for_each_subset(4, 2, |s| {
            seen.push(s.to_vec());
            false
        });
        assert_eq!(
            seen,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        let mut empty_calls = 0;
        for_each_subset(3, 0, |s| {
            assert!(s.is_empty());
            empty_calls += 1;
            false
        });
        assert_eq!(empty_calls, 1);
        assert!(!for_each_subset(2, 3, |_| true));
    }
}
