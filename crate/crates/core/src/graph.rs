//! Undirected simple graphs over dense vertex ids `0..n`.
//!
//! Adjacency lists are kept sorted so that every iteration order in the
//! crate is deterministic: ties break by smallest vertex id, then by
//! lexicographic edge order.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),
    #[error("edge {0} already present")]
    DuplicateEdge(Edge),
    #[error("edge {0} not present")]
    MissingEdge(Edge),
    #[error("vertex id {id} out of range for graph with {n} vertices")]
    OutOfRange { id: VertexId, n: usize },
}

/// An undirected edge stored canonically with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    u: VertexId,
    v: VertexId,
}

impl Edge {
    /// Canonicalizes the endpoint order. Fails on a self-loop.
    pub fn new(a: VertexId, b: VertexId) -> Result<Self, GraphError> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(Edge { u: a, v: b }),
            std::cmp::Ordering::Greater => Ok(Edge { u: b, v: a }),
            std::cmp::Ordering::Equal => Err(GraphError::SelfLoop(a)),
        }
    }

    pub fn u(&self) -> VertexId {
        self.u
    }

    pub fn v(&self) -> VertexId {
        self.v
    }

    pub fn touches(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }

    pub fn endpoints(&self) -> (VertexId, VertexId) {
        (self.u, self.v)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.u, self.v)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<VertexId>>,
    m: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph from an edge iterator, rejecting self-loops,
    /// duplicates and out-of-range ids.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut g = Graph::new(n);
        for (a, b) in edges {
            g.add_edge(Edge::new(a, b)?)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    fn check(&self, id: VertexId) -> Result<(), GraphError> {
        if id < self.n() {
            Ok(())
        } else {
            Err(GraphError::OutOfRange { id, n: self.n() })
        }
    }

    pub fn add_edge(&mut self, e: Edge) -> Result<(), GraphError> {
        self.check(e.u)?;
        self.check(e.v)?;
        let pos_u = match self.adj[e.u].binary_search(&e.v) {
            Ok(_) => return Err(GraphError::DuplicateEdge(e)),
            Err(pos) => pos,
        };
        self.adj[e.u].insert(pos_u, e.v);
        let pos_v = self.adj[e.v]
            .binary_search(&e.u)
            .expect_err("adjacency lost symmetry");
        self.adj[e.v].insert(pos_v, e.u);
        self.m += 1;
        Ok(())
    }

    pub fn remove_edge(&mut self, e: Edge) -> Result<(), GraphError> {
        self.check(e.u)?;
        self.check(e.v)?;
        let pos_u = self.adj[e.u]
            .binary_search(&e.v)
            .map_err(|_| GraphError::MissingEdge(e))?;
        self.adj[e.u].remove(pos_u);
        let pos_v = self.adj[e.v]
            .binary_search(&e.u)
            .expect("adjacency lost symmetry");
        self.adj[e.v].remove(pos_v);
        self.m -= 1;
        Ok(())
    }

    /// Adds every edge of `edges` or none of them.
    pub fn add_edges<'a, I>(&mut self, edges: I) -> Result<(), GraphError>
    where
        I: IntoIterator<Item = &'a Edge>,
    {
        let mut added: Vec<Edge> = Vec::new();
        for &e in edges {
            if let Err(err) = self.add_edge(e) {
                for &back in added.iter().rev() {
                    self.remove_edge(back)
                        .expect("rollback of a freshly added edge");
                }
                return Err(err);
            }
            added.push(e);
        }
        Ok(())
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        a < self.n() && b < self.n() && self.adj[a].binary_search(&b).is_ok()
    }

    /// Degree of `v`. Panics when `v` is out of range, like slice indexing.
    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn checked_degree(&self, v: VertexId) -> Result<usize, GraphError> {
        self.check(v)?;
        Ok(self.adj[v].len())
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.n()
    }

    /// All edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, nbrs)| {
            nbrs.iter()
                .filter(move |&&v| v > u)
                .map(move |&v| Edge { u, v })
        })
    }

    /// Every absent pair `{x, y}` with `x ∈ a`, `y ∈ b`, `x ≠ y`, each
    /// exactly once, in lexicographic order.
    pub fn non_edges_between(&self, a: &[VertexId], b: &[VertexId]) -> Vec<Edge> {
        let n = self.n();
        let mut in_a = vec![false; n];
        let mut in_b = vec![false; n];
        for &x in a.iter().filter(|&&x| x < n) {
            in_a[x] = true;
        }
        for &y in b.iter().filter(|&&y| y < n) {
            in_b[y] = true;
        }
        let union: Vec<VertexId> = (0..n).filter(|&x| in_a[x] || in_b[x]).collect();
        let mut out = Vec::new();
        for (i, &x) in union.iter().enumerate() {
            for &y in &union[i + 1..] {
                let wanted = (in_a[x] && in_b[y]) || (in_b[x] && in_a[y]);
                if wanted && !self.has_edge(x, y) {
                    out.push(Edge { u: x, v: y });
                }
            }
        }
        out
    }

    /// Full-scan structural audit: sorted, symmetric, loop-free, and
    /// consistent edge count.
    pub fn check_invariants(&self) -> bool {
        let mut half = 0usize;
        for (u, nbrs) in self.adj.iter().enumerate() {
            if nbrs.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
            for &v in nbrs {
                if v == u || v >= self.n() || self.adj[v].binary_search(&u).is_err() {
                    return false;
                }
            }
            half += nbrs.len();
        }
        half.is_multiple_of(2) && half / 2 == self.m
    }

    /// Induced subgraph on `keep`, relabelled to `0..keep.len()` in the
    /// order given.
    pub fn induced(&self, keep: &[VertexId]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::new(keep.len());
        for e in self.edges() {
            let (a, b) = (index[e.u], index[e.v]);
            if a != usize::MAX && b != usize::MAX {
                g.add_edge(Edge::new(a, b).expect("distinct endpoints"))
                    .expect("induced edges are unique");
            }
        }
        g
    }
}

/// Leaders of an instance; every other vertex is a follower.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexPartition {
    n: usize,
    leaders: Vec<VertexId>,
    is_leader: Vec<bool>,
}

impl VertexPartition {
    pub fn new<I>(n: usize, leaders: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = VertexId>,
    {
        let set: BTreeSet<VertexId> = leaders.into_iter().collect();
        if let Some(&bad) = set.iter().find(|&&l| l >= n) {
            return Err(GraphError::OutOfRange { id: bad, n });
        }
        let mut is_leader = vec![false; n];
        for &l in &set {
            is_leader[l] = true;
        }
        Ok(VertexPartition {
            n,
            leaders: set.into_iter().collect(),
            is_leader,
        })
    }

    /// Partition with no leaders.
    pub fn all_followers(n: usize) -> Self {
        VertexPartition {
            n,
            leaders: Vec::new(),
            is_leader: vec![false; n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Sorted leader ids.
    pub fn leaders(&self) -> &[VertexId] {
        &self.leaders
    }

    pub fn is_leader(&self, v: VertexId) -> bool {
        self.is_leader.get(v).copied().unwrap_or(false)
    }

    pub fn is_follower(&self, v: VertexId) -> bool {
        v < self.n && !self.is_leader[v]
    }

    /// Follower ids in increasing order.
    pub fn followers(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.n).filter(move |&v| !self.is_leader[v])
    }

    pub fn follower_count(&self) -> usize {
        self.n - self.leaders.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn add_single_edge() {
        let mut g = Graph::new(2);
        g.add_edge(Edge::new(0, 1).unwrap()).unwrap();
        assert_eq!(g.m(), 1);
        assert_eq!(g.degree(0), 1);
        assert_eq!(g.degree(1), 1);
    }

    #[test]
    fn duplicate_edge_is_rejected() {
        let mut g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let e = Edge::new(1, 0).unwrap();
        assert_eq!(g.add_edge(e), Err(GraphError::DuplicateEdge(e)));
        assert_eq!(g.m(), 3);
    }

    #[test]
    fn closing_a_path() {
        let mut g = path3();
        g.add_edge(Edge::new(0, 2).unwrap()).unwrap();
        assert!(g.vertices().all(|v| g.degree(v) == 2));
        assert!(g.check_invariants());
    }

    #[test]
    fn self_loop_and_range_errors() {
        assert_eq!(Edge::new(4, 4), Err(GraphError::SelfLoop(4)));
        let mut g = Graph::new(2);
        assert_eq!(
            g.add_edge(Edge::new(0, 5).unwrap()),
            Err(GraphError::OutOfRange { id: 5, n: 2 })
        );
        assert!(g.checked_degree(2).is_err());
    }

    #[test]
    fn degrees_of_standard_graphs() {
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(k4.vertices().all(|v| k4.degree(v) == 3));
        let star = Graph::from_edges(6, (1..6).map(|l| (0, l))).unwrap();
        assert_eq!(star.degree(0), 5);
        let mut g = Graph::new(3);
        g.add_edge(Edge::new(0, 1).unwrap()).unwrap();
        assert_eq!(g.degree(2), 0);
    }

    #[test]
    fn non_edges_examples() {
        let k3 = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(k3.non_edges_between(&[0, 1, 2], &[0, 1, 2]).is_empty());

        let empty = Graph::new(3);
        let got: Vec<_> = empty
            .non_edges_between(&[0, 1, 2], &[0, 1, 2])
            .into_iter()
            .map(|e| e.endpoints())
            .collect();
        assert_eq!(got, vec![(0, 1), (0, 2), (1, 2)]);

        let got: Vec<_> = path3()
            .non_edges_between(&[0], &[1, 2])
            .into_iter()
            .map(|e| e.endpoints())
            .collect();
        assert_eq!(got, vec![(0, 2)]);
    }

    #[test]
    fn remove_and_batch_rollback() {
        let mut g = path3();
        g.remove_edge(Edge::new(0, 1).unwrap()).unwrap();
        assert_eq!(g.m(), 1);
        assert!(g.remove_edge(Edge::new(0, 1).unwrap()).is_err());

        let batch = [Edge::new(0, 1).unwrap(), Edge::new(1, 2).unwrap()];
        assert!(g.add_edges(&batch).is_err());
        assert_eq!(g, Graph::from_edges(3, [(1, 2)]).unwrap());
    }

    #[test]
    fn partition_basics() {
        let p = VertexPartition::new(5, [3, 1, 3]).unwrap();
        assert_eq!(p.leaders(), &[1, 3]);
        assert_eq!(p.followers().collect::<Vec<_>>(), vec![0, 2, 4]);
        assert_eq!(p.follower_count(), 3);
        assert!(VertexPartition::new(2, [2]).is_err());
    }
}
