//! Degree and core centrality over a leader/follower partition.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Edge, Graph, VertexId, VertexPartition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Centrality {
    Degree,
    Core,
}

impl fmt::Display for Centrality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Centrality::Degree => "degree",
            Centrality::Core => "core",
        })
    }
}

impl FromStr for Centrality {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "degree" => Ok(Centrality::Degree),
            "core" => Ok(Centrality::Core),
            other => Err(format!(
                "unknown centrality {other:?} (expected degree|core)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CentralityError {
    #[error("leader set is empty")]
    NoLeaders,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreDecomposition {
    /// Core number per vertex.
    pub core: Vec<usize>,
    /// Vertices in removal order.
    pub peel_order: Vec<VertexId>,
    pub degeneracy: usize,
}

/// Min-degree peeling with a bucket queue. Among vertices of equal residual
/// degree the smallest id is removed first, so `peel_order` is fully
/// determined by the graph.
pub fn core_numbers(g: &Graph) -> CoreDecomposition {
    let n = g.n();
    let mut residual = g.degrees();
    let max_deg = residual.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<BTreeSet<VertexId>> = vec![BTreeSet::new(); max_deg + 1];
    for v in 0..n {
        buckets[residual[v]].insert(v);
    }
    let mut removed = vec![false; n];
    let mut core = vec![0; n];
    let mut peel_order = Vec::with_capacity(n);
    let mut level = 0;
    let mut cursor = 0;
    for _ in 0..n {
        while buckets[cursor].is_empty() {
            cursor += 1;
        }
        let v = buckets[cursor].pop_first().expect("non-empty bucket");
        level = level.max(cursor);
        core[v] = level;
        removed[v] = true;
        peel_order.push(v);
        for &u in g.neighbors(v) {
            if removed[u] {
                continue;
            }
            let d = residual[u];
            buckets[d].remove(&u);
            buckets[d - 1].insert(u);
            residual[u] = d - 1;
        }
        // A neighbor may have dropped one bucket below the cursor.
        cursor = cursor.saturating_sub(1);
    }
    CoreDecomposition {
        core,
        peel_order,
        degeneracy: level,
    }
}

/// Reusable buffers for repeated core computations on `graph + extra`.
///
/// Uses the array-based bin-sort peeling, which yields the same core numbers
/// as [`core_numbers`] without allocating per call. Intended for the
/// exhaustive and greedy solvers that evaluate many small edge overlays.
#[derive(Debug, Default, Clone)]
pub struct CoreWorkspace {
    deg: Vec<usize>,
    bin: Vec<usize>,
    pos: Vec<usize>,
    vert: Vec<usize>,
    extra_adj: Vec<Vec<VertexId>>,
    touched: Vec<VertexId>,
}

impl CoreWorkspace {
    pub fn new() -> Self {
        Self::default()
    }

    /// Core numbers of `g` with the edges in `extra` added. `extra` must not
    /// overlap `g`'s edges.
    pub fn cores_with(&mut self, g: &Graph, extra: &[Edge]) -> &[usize] {
        let n = g.n();
        if self.extra_adj.len() < n {
            self.extra_adj.resize_with(n, Vec::new);
        }
        for &v in &self.touched {
            self.extra_adj[v].clear();
        }
        self.touched.clear();
        for e in extra {
            let (a, b) = e.endpoints();
            self.extra_adj[a].push(b);
            self.extra_adj[b].push(a);
            self.touched.push(a);
            self.touched.push(b);
        }

        self.deg.clear();
        self.deg
            .extend((0..n).map(|v| g.degree(v) + self.extra_adj[v].len()));
        let max_deg = self.deg.iter().copied().max().unwrap_or(0);
        self.bin.clear();
        self.bin.resize(max_deg + 1, 0);
        for &d in &self.deg {
            self.bin[d] += 1;
        }
        let mut start = 0;
        for b in self.bin.iter_mut() {
            let count = *b;
            *b = start;
            start += count;
        }
        self.pos.clear();
        self.pos.resize(n, 0);
        self.vert.clear();
        self.vert.resize(n, 0);
        for v in 0..n {
            let d = self.deg[v];
            self.pos[v] = self.bin[d];
            self.vert[self.bin[d]] = v;
            self.bin[d] += 1;
        }
        for d in (1..=max_deg).rev() {
            self.bin[d] = self.bin[d - 1];
        }
        if let Some(b0) = self.bin.first_mut() {
            *b0 = 0;
        }

        for i in 0..n {
            let v = self.vert[i];
            let dv = self.deg[v];
            let base = g.neighbors(v);
            for k in 0..base.len() + self.extra_adj[v].len() {
                let u = if k < base.len() {
                    base[k]
                } else {
                    self.extra_adj[v][k - base.len()]
                };
                let du = self.deg[u];
                if du > dv {
                    let pu = self.pos[u];
                    let pw = self.bin[du];
                    let w = self.vert[pw];
                    if u != w {
                        self.pos[u] = pw;
                        self.vert[pu] = w;
                        self.pos[w] = pu;
                        self.vert[pw] = u;
                    }
                    self.bin[du] += 1;
                    self.deg[u] = du - 1;
                }
            }
        }
        &self.deg
    }
}

/// Centrality value of every vertex.
pub fn centrality_values(g: &Graph, kind: Centrality) -> Vec<usize> {
    match kind {
        Centrality::Degree => g.degrees(),
        Centrality::Core => core_numbers(g).core,
    }
}

fn max_over_leaders(values: &[usize], p: &VertexPartition) -> Option<usize> {
    p.leaders().iter().map(|&l| values[l]).max()
}

pub fn max_leader_centrality(
    g: &Graph,
    p: &VertexPartition,
    kind: Centrality,
) -> Result<usize, CentralityError> {
    let values = centrality_values(g, kind);
    max_over_leaders(&values, p).ok_or(CentralityError::NoLeaders)
}

/// Followers whose centrality is at least every leader's. With no leaders
/// the condition is vacuous and every follower qualifies.
pub fn satisfied_followers(g: &Graph, p: &VertexPartition, kind: Centrality) -> Vec<VertexId> {
    let values = centrality_values(g, kind);
    satisfied_from_values(&values, p)
}

pub(crate) fn satisfied_from_values(values: &[usize], p: &VertexPartition) -> Vec<VertexId> {
    let threshold = max_over_leaders(values, p).unwrap_or(0);
    p.followers().filter(|&f| values[f] >= threshold).collect()
}

pub(crate) fn satisfied_count(values: &[usize], p: &VertexPartition) -> usize {
    let threshold = max_over_leaders(values, p).unwrap_or(0);
    p.followers().filter(|&f| values[f] >= threshold).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn clique_edges(vs: &[usize]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, &a) in vs.iter().enumerate() {
            for &b in &vs[i + 1..] {
                out.push((a, b));
            }
        }
        out
    }

    #[test]
    fn cycle_is_two_core() {
        let d = core_numbers(&cycle(5));
        assert_eq!(d.core, vec![2; 5]);
        assert_eq!(d.degeneracy, 2);
    }

    #[test]
    fn k4_with_pendant() {
        let mut edges = clique_edges(&[0, 1, 2, 3]);
        edges.push((3, 4));
        let g = Graph::from_edges(5, edges).unwrap();
        let d = core_numbers(&g);
        assert_eq!(d.core, vec![3, 3, 3, 3, 1]);
        assert_eq!(d.peel_order[0], 4);
        assert_eq!(d.peel_order[1..], [0, 1, 2, 3]);
    }

    #[test]
    fn isolated_vertices_have_core_zero() {
        let g = Graph::from_edges(4, [(0, 1)]).unwrap();
        assert_eq!(core_numbers(&g).core, vec![1, 1, 0, 0]);
        assert_eq!(core_numbers(&Graph::new(0)).degeneracy, 0);
    }

    #[test]
    fn workspace_matches_bucket_peeling_with_overlay() {
        let base = Graph::from_edges(6, [(0, 1), (1, 2), (3, 4)]).unwrap();
        let extra = [Edge::new(0, 2).unwrap(), Edge::new(4, 5).unwrap()];
        let mut full = base.clone();
        full.add_edges(&extra).unwrap();
        let mut ws = CoreWorkspace::new();
        assert_eq!(
            ws.cores_with(&base, &extra),
            core_numbers(&full).core.as_slice()
        );
        assert_eq!(
            ws.cores_with(&base, &[]),
            core_numbers(&base).core.as_slice()
        );
    }

    #[test]
    fn leader_threshold_examples() {
        // Leader clique of size 4 -> degree 3.
        let g = Graph::from_edges(6, clique_edges(&[0, 1, 2, 3])).unwrap();
        let p = VertexPartition::new(6, [0, 1, 2, 3]).unwrap();
        assert_eq!(max_leader_centrality(&g, &p, Centrality::Degree), Ok(3));

        let lone = VertexPartition::new(6, [5]).unwrap();
        assert_eq!(max_leader_centrality(&g, &lone, Centrality::Core), Ok(0));

        let none = VertexPartition::all_followers(6);
        assert_eq!(
            max_leader_centrality(&g, &none, Centrality::Degree),
            Err(CentralityError::NoLeaders)
        );
    }

    #[test]
    fn satisfied_follower_examples() {
        let empty = Graph::new(5);
        let p = VertexPartition::new(5, [0]).unwrap();
        assert_eq!(
            satisfied_followers(&empty, &p, Centrality::Degree),
            vec![1, 2, 3, 4]
        );
        assert_eq!(
            satisfied_followers(&empty, &p, Centrality::Core),
            vec![1, 2, 3, 4]
        );

        let g = Graph::from_edges(6, clique_edges(&[0, 1, 2])).unwrap();
        let p = VertexPartition::new(6, [0, 1, 2]).unwrap();
        assert!(satisfied_followers(&g, &p, Centrality::Degree).is_empty());
        assert!(satisfied_followers(&g, &p, Centrality::Core).is_empty());
    }

    #[test]
    fn centrality_parse_roundtrip() {
        for k in [Centrality::Degree, Centrality::Core] {
            assert_eq!(k.to_string().parse::<Centrality>(), Ok(k));
        }
        assert!("closeness".parse::<Centrality>().is_err());
    }
}
