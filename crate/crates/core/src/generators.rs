//! Random graph models, captain networks and reduction-based instances.
//!
//! Vertex-id layouts are fixed so that generated plans can be read back by
//! hand; each constructor documents its layout.

use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::centrality::{core_numbers, Centrality};
use crate::graph::{Edge, Graph, VertexId, VertexPartition};
use crate::instance::HidingInstance;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("no captain ids supplied")]
    MissingCaptains,
    #[error("set cover input line {line}: {msg}")]
    SetCoverSyntax { line: usize, msg: String },
}

fn invalid(msg: impl Into<String>) -> GenError {
    GenError::InvalidParams(msg.into())
}

fn edge(a: VertexId, b: VertexId) -> Edge {
    Edge::new(a, b).expect("generator never emits self-loops")
}

fn insert(g: &mut Graph, a: VertexId, b: VertexId) {
    g.add_edge(edge(a, b))
        .expect("generator never repeats an edge");
}

fn clique(g: &mut Graph, vs: impl IntoIterator<Item = VertexId> + Clone) {
    let vs: Vec<VertexId> = vs.into_iter().collect();
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            insert(g, a, b);
        }
    }
}

/// Barabási–Albert preferential attachment. Starts from a complete graph on
/// `avg_degree/2 + 1` vertices; every later vertex attaches to
/// `avg_degree/2` distinct earlier vertices chosen proportionally to degree.
pub fn gen_ba(n: usize, avg_degree: usize, seed: u64) -> Result<Graph, GenError> {
    if avg_degree < 2 || !avg_degree.is_multiple_of(2) {
        return Err(invalid(format!(
            "BA average degree must be even and >= 2, got {avg_degree}"
        )));
    }
    if n <= avg_degree {
        return Err(invalid(format!(
            "BA needs n > average degree ({n} <= {avg_degree})"
        )));
    }
    let attach = avg_degree / 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    clique(&mut g, 0..=attach);
    // Each vertex appears once per incident edge.
    let mut ends: Vec<VertexId> = g.edges().flat_map(|e| [e.u(), e.v()]).collect();
    let mut picked = BTreeSet::new();
    for v in attach + 1..n {
        picked.clear();
        while picked.len() < attach {
            picked.insert(ends[rng.gen_range(0..ends.len())]);
        }
        for &u in &picked {
            insert(&mut g, u, v);
            ends.push(u);
            ends.push(v);
        }
    }
    Ok(g)
}

/// Watts–Strogatz small world: ring lattice with `avg_degree/2` neighbours
/// per side, then each lattice edge `(u, u+j)` is rewired to `(u, w)` with
/// probability `beta`, `w` uniform among non-neighbours of `u`.
pub fn gen_ws(n: usize, avg_degree: usize, beta: f64, seed: u64) -> Result<Graph, GenError> {
    if !avg_degree.is_multiple_of(2) {
        return Err(invalid(format!(
            "WS average degree must be even, got {avg_degree}"
        )));
    }
    if n <= avg_degree {
        return Err(invalid(format!(
            "WS needs n > average degree ({n} <= {avg_degree})"
        )));
    }
    if !(0.0..=1.0).contains(&beta) {
        return Err(invalid(format!(
            "rewiring probability {beta} outside [0, 1]"
        )));
    }
    let half = avg_degree / 2;
    let mut g = Graph::new(n);
    for j in 1..=half {
        for u in 0..n {
            insert(&mut g, u, (u + j) % n);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for j in 1..=half {
        for u in 0..n {
            if rng.gen::<f64>() >= beta || g.degree(u) >= n - 1 {
                continue;
            }
            let v = (u + j) % n;
            let w = loop {
                let w = rng.gen_range(0..n);
                if w != u && !g.has_edge(u, w) {
                    break w;
                }
            };
            g.remove_edge(edge(u, v))
                .expect("lattice edge still present");
            insert(&mut g, u, w);
        }
    }
    Ok(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CaptainParams {
    /// Number of leaders.
    pub h: usize,
    /// Captains per group.
    pub p: usize,
    /// Outer vertices.
    pub m: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaptainNetwork {
    pub graph: Graph,
    pub partition: VertexPartition,
    pub captains: Vec<VertexId>,
}

/// Multi-leader captain network.
///
/// Layout: leaders `0..h`; captain `j` of group `i` is `h + i*p + j`; outer
/// vertex `x` is `h + h*p + x` and links to captain `x mod p` of every group.
pub fn gen_captain_multi(params: CaptainParams) -> Result<CaptainNetwork, GenError> {
    let CaptainParams { h, p, m } = params;
    if h < 2 || p < 1 {
        return Err(invalid(format!(
            "multi-leader captain network needs h >= 2, p >= 1 (h={h}, p={p})"
        )));
    }
    let captain = |i: usize, j: usize| h + i * p + j;
    let n = h + h * p + m;
    let mut g = Graph::new(n);
    clique(&mut g, 0..h);
    for i in 0..h {
        for j in 0..p {
            insert(&mut g, i, captain(i, j));
        }
    }
    for i in 0..h {
        for i2 in i + 1..h {
            for j in 0..p {
                for j2 in 0..p {
                    insert(&mut g, captain(i, j), captain(i2, j2));
                }
            }
        }
    }
    for x in 0..m {
        for i in 0..h {
            insert(&mut g, h + h * p + x, captain(i, x % p));
        }
    }
    Ok(CaptainNetwork {
        graph: g,
        partition: VertexPartition::new(n, 0..h).expect("leader ids in range"),
        captains: (h..h + h * p).collect(),
    })
}

/// Single-leader captain network.
///
/// Layout: leader `0`; first group `1..=p`; second group `p+1..=2p`; outer
/// vertex `x` is `2p + 1 + x` and links to captain `x mod p` of both groups.
pub fn gen_captain_single(p: usize, m: usize) -> Result<CaptainNetwork, GenError> {
    if p < 1 {
        return Err(invalid("single-leader captain network needs p >= 1"));
    }
    let n = 1 + 2 * p + m;
    let mut g = Graph::new(n);
    for c in 1..=2 * p {
        insert(&mut g, 0, c);
    }
    for a in 1..=p {
        for b in p + 1..=2 * p {
            insert(&mut g, a, b);
        }
    }
    for x in 0..m {
        let v = 2 * p + 1 + x;
        insert(&mut g, v, 1 + x % p);
        insert(&mut g, v, p + 1 + x % p);
    }
    Ok(CaptainNetwork {
        graph: g,
        partition: VertexPartition::new(n, [0]).expect("leader id in range"),
        captains: (1..=2 * p).collect(),
    })
}

/// Captain network for any `h >= 1`: single-leader layout when `h == 1`.
pub fn gen_captain(params: CaptainParams) -> Result<CaptainNetwork, GenError> {
    if params.h == 1 {
        gen_captain_single(params.p, params.m)
    } else {
        gen_captain_multi(params)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DisguiseRecord {
    pub max_leader_core: usize,
    pub min_captain_core: usize,
    pub max_captain_core: usize,
    /// Highest captain core minus highest leader core.
    pub diff_primary: i64,
    /// Lowest captain core minus highest leader core.
    pub diff_min: i64,
}

pub fn measure_disguise(
    g: &Graph,
    partition: &VertexPartition,
    captains: &[VertexId],
) -> Result<DisguiseRecord, GenError> {
    if captains.is_empty() {
        return Err(GenError::MissingCaptains);
    }
    if let Some(&c) = captains.iter().find(|&&c| c >= g.n()) {
        return Err(invalid(format!("captain id {c} out of range")));
    }
    let core = core_numbers(g).core;
    let max_leader_core = partition
        .leaders()
        .iter()
        .map(|&l| core[l])
        .max()
        .unwrap_or(0);
    let min_captain_core = captains.iter().map(|&c| core[c]).min().expect("non-empty");
    let max_captain_core = captains.iter().map(|&c| core[c]).max().expect("non-empty");
    Ok(DisguiseRecord {
        max_leader_core,
        min_captain_core,
        max_captain_core,
        diff_primary: max_captain_core as i64 - max_leader_core as i64,
        diff_min: min_captain_core as i64 - max_leader_core as i64,
    })
}

/// Universe `0..n`, a family of subsets and a cover budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetCoverInstance {
    pub n: usize,
    /// Each set sorted, elements zero-based.
    pub sets: Vec<Vec<usize>>,
    pub t: usize,
}

impl SetCoverInstance {
    pub fn new(n: usize, sets: Vec<Vec<usize>>, t: usize) -> Result<Self, GenError> {
        if t > sets.len() {
            return Err(invalid(format!(
                "cover budget {t} exceeds {} sets",
                sets.len()
            )));
        }
        let mut sets = sets;
        for s in &mut sets {
            s.sort_unstable();
            s.dedup();
            if let Some(&x) = s.iter().find(|&&x| x >= n) {
                return Err(invalid(format!("element {x} outside universe of size {n}")));
            }
        }
        Ok(SetCoverInstance { n, sets, t })
    }

    /// Text form: `n m t`, then one line per set with one-based element ids.
    pub fn parse(text: &str) -> Result<Self, GenError> {
        let syntax = |line: usize, msg: &str| GenError::SetCoverSyntax {
            line,
            msg: msg.to_string(),
        };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hl, header) = lines.next().ok_or_else(|| syntax(1, "missing header"))?;
        let nums: Vec<usize> = header
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|_| syntax(hl, "header must be three integers"))?;
        let [n, m, t] = nums[..] else {
            return Err(syntax(hl, "header must be `n m t`"));
        };
        let mut sets = Vec::with_capacity(m);
        for _ in 0..m {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| syntax(hl, "fewer set lines than m"))?;
            let set = line
                .split_whitespace()
                .map(|tok| match tok.parse::<usize>() {
                    Ok(x) if (1..=n).contains(&x) => Ok(x - 1),
                    _ => Err(syntax(ln, &format!("bad element {tok:?}"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            sets.push(set);
        }
        if let Some((ln, _)) = lines.next() {
            return Err(syntax(ln, "more set lines than m"));
        }
        Self::new(n, sets, t)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.n, self.sets.len(), self.t);
        for s in &self.sets {
            let ids: Vec<String> = s.iter().map(|x| (x + 1).to_string()).collect();
            out.push_str(&ids.join(" "));
            out.push('\n');
        }
        out
    }

    /// Size of the smallest cover, or `None` if the union misses an element.
    pub fn min_cover_size(&self) -> Option<usize> {
        let full: u64 = if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        };
        let masks: Vec<u64> = self
            .sets
            .iter()
            .map(|s| s.iter().fold(0u64, |acc, &x| acc | 1 << x))
            .collect();
        let m = masks.len();
        assert!(m < 32, "brute-force cover check limited to 31 sets");
        (0u32..1 << m)
            .filter(|pick| {
                (0..m)
                    .filter(|i| pick >> i & 1 == 1)
                    .fold(0u64, |acc, i| acc | masks[i])
                    == full
            })
            .map(|pick| pick.count_ones() as usize)
            .min()
    }

    pub fn has_cover_within_budget(&self) -> bool {
        self.min_cover_size().is_some_and(|s| s <= self.t)
    }
}

/// Vertex ids used by [`reduce_setcover_to_hl`]; all indices zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SetCoverLayout {
    pub n: usize,
    pub m: usize,
}

impl SetCoverLayout {
    /// Path vertex for element `j` of set `i`.
    pub fn x(&self, i: usize, j: usize) -> VertexId {
        i * self.n + j
    }
    /// Slot `l` (0..5) of the gadget attached to set `i`.
    pub fn w(&self, i: usize, l: usize) -> VertexId {
        self.m * self.n + 5 * i + l
    }
    /// Slot `l` (0..5) of the gadget for element `j`.
    pub fn z(&self, j: usize, l: usize) -> VertexId {
        self.m * self.n + 5 * self.m + 5 * j + l
    }
    pub fn vertex_count(&self) -> usize {
        self.m * self.n + 5 * self.m + 5 * self.n
    }
    /// The edge whose addition closes the path of set `i` into a cycle.
    /// `None` for a one-element universe, where the path is a single vertex.
    pub fn closing_edge(&self, i: usize) -> Option<Edge> {
        (self.n >= 2).then(|| edge(self.x(i, 0), self.x(i, 1)))
    }
}

/// Five-vertex gadget: slots 1..5 form a K4 and slot 0 hangs off slots 1, 4.
fn gadget(g: &mut Graph, base: VertexId) {
    clique(g, base + 1..base + 5);
    insert(g, base, base + 1);
    insert(g, base, base + 4);
}

/// Builds the core-centrality instance from a Set Cover instance.
///
/// Every set gets a path over its element slots ending in slot 0, so that
/// adding `(x(i,0), x(i,1))` closes it into a cycle. Every set and every
/// element gets a five-vertex gadget; the set gadget's hub links to the slots
/// of elements outside the set and the element gadget's hub links to the
/// slots of the sets containing it. Leaders are the K4 parts of the element
/// gadgets, so each has core 3.
pub fn reduce_setcover_to_hl(sc: &SetCoverInstance) -> (HidingInstance, SetCoverLayout) {
    let n = sc.n;
    let m = sc.sets.len();
    let lay = SetCoverLayout { n, m };
    let mut g = Graph::new(lay.vertex_count());
    for (i, set) in sc.sets.iter().enumerate() {
        for j in 1..n.saturating_sub(1) {
            insert(&mut g, lay.x(i, j), lay.x(i, j + 1));
        }
        if n >= 2 {
            insert(&mut g, lay.x(i, n - 1), lay.x(i, 0));
        }
        gadget(&mut g, lay.w(i, 0));
        for j in 0..n {
            if set.binary_search(&j).is_ok() {
                continue;
            }
            insert(&mut g, lay.w(i, 0), lay.x(i, j));
        }
    }
    for j in 0..n {
        gadget(&mut g, lay.z(j, 0));
        for (i, set) in sc.sets.iter().enumerate() {
            if set.binary_search(&j).is_ok() {
                insert(&mut g, lay.z(j, 0), lay.x(i, j));
            }
        }
    }
    let leaders = (0..n).flat_map(|j| (1..5).map(move |l| lay.z(j, l)));
    let partition = VertexPartition::new(g.n(), leaders).expect("leader ids in range");
    let target = 4 * m + n * (sc.t + 1) + sc.t;
    let inst = HidingInstance::new(g, partition, Some(sc.t), target, Centrality::Core)
        .expect("target never exceeds follower count");
    (inst, lay)
}

/// Vertex ids used by [`reduce_dks_to_hl`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DksLayout {
    pub n: usize,
    pub k: usize,
}

impl DksLayout {
    /// Copy of source vertex `v`.
    pub fn a(&self, v: usize) -> VertexId {
        v
    }
    /// Pendant slot `l` of source vertex `v`.
    pub fn pendant(&self, v: usize, l: usize) -> VertexId {
        self.n + v * self.n + l
    }
    pub fn leader(&self, i: usize) -> VertexId {
        self.n + self.n * self.n + i
    }
    pub fn vertex_count(&self) -> usize {
        self.n + self.n * self.n + self.n + self.k
    }
}

/// Builds the degree-centrality instance from a Densest-k-Subgraph instance.
///
/// The copies of `g`'s vertices carry the complement of `g`, each copy gets
/// `deg(v) + 1` pendant neighbours so that every copy has degree `n`, and a
/// clique of `n + k` leaders sets the threshold at `n + k - 1`. All `n`
/// pendant slots per vertex are materialized, unused ones stay isolated.
pub fn reduce_dks_to_hl(g: &Graph, k: usize) -> Result<(HidingInstance, DksLayout), GenError> {
    let n = g.n();
    if k > n {
        return Err(invalid(format!("k = {k} exceeds graph order {n}")));
    }
    let lay = DksLayout { n, k };
    let mut h = Graph::new(lay.vertex_count());
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) {
                insert(&mut h, lay.a(u), lay.a(v));
            }
        }
    }
    clique(&mut h, (0..n + k).map(|i| lay.leader(i)));
    for v in 0..n {
        for l in 0..=g.degree(v) {
            insert(&mut h, lay.a(v), lay.pendant(v, l));
        }
    }
    let leaders = (0..n + k).map(|i| lay.leader(i));
    let partition = VertexPartition::new(h.n(), leaders).expect("leader ids in range");
    let inst = HidingInstance::new(h, partition, None, k, Centrality::Degree)
        .map_err(|e| invalid(e.to_string()))?;
    Ok((inst, lay))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ba_small_and_deterministic() {
        let g = gen_ba(5, 2, 7).unwrap();
        assert_eq!(g.m(), 4);
        assert!(g.check_invariants());
        assert_eq!(gen_ba(300, 4, 11).unwrap(), gen_ba(300, 4, 11).unwrap());
        assert_ne!(gen_ba(300, 4, 11).unwrap(), gen_ba(300, 4, 12).unwrap());
        let big = gen_ba(2000, 4, 1).unwrap();
        let mean = 2.0 * big.m() as f64 / 2000.0;
        assert!((mean - 4.0).abs() <= 0.2, "mean degree {mean}");
        assert!(gen_ba(5, 3, 0).is_err());
        assert!(gen_ba(4, 4, 0).is_err());
    }

    #[test]
    fn ws_lattice_and_rewiring() {
        let ring = gen_ws(12, 4, 0.0, 3).unwrap();
        assert!(ring.degrees().iter().all(|&d| d == 4));
        let g = gen_ws(2000, 4, 0.1, 5).unwrap();
        assert_eq!(g.m(), 4000);
        assert!(g.check_invariants());
        assert_ne!(g, gen_ws(2000, 4, 0.0, 5).unwrap());
        assert_eq!(g, gen_ws(2000, 4, 0.1, 5).unwrap());
        assert!(gen_ws(10, 3, 0.1, 0).is_err());
        assert!(gen_ws(10, 4, 1.5, 0).is_err());
    }

    #[test]
    fn captain_multi_degrees() {
        let net = gen_captain_multi(CaptainParams { h: 4, p: 3, m: 10 }).unwrap();
        let (h, p) = (4, 3);
        let inner: Vec<VertexId> = (0..h + h * p).collect();
        let sub = net.graph.induced(&inner);
        for &c in &net.captains {
            assert_eq!(sub.degree(c), p * (h - 1) + 1);
        }
        for l in 0..h {
            assert_eq!(sub.degree(l), h - 1 + p);
        }
        for x in h + h * p..net.graph.n() {
            assert_eq!(net.graph.degree(x), h);
        }

        let tiny = gen_captain_multi(CaptainParams { h: 2, p: 1, m: 0 }).unwrap();
        assert_eq!(tiny.graph.n(), 4);
        let pairs: Vec<_> = tiny.graph.edges().map(|e| e.endpoints()).collect();
        assert_eq!(pairs, vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert!(gen_captain_multi(CaptainParams { h: 1, p: 2, m: 0 }).is_err());
    }

    #[test]
    fn captain_single_degrees() {
        let net = gen_captain_single(3, 7).unwrap();
        assert_eq!(net.graph.degree(0), 6);
        // 7 outer vertices over 3 slots: loads 3, 2, 2.
        let loads: Vec<usize> = net
            .captains
            .iter()
            .map(|&c| net.graph.degree(c) - 1 - 3)
            .collect();
        assert_eq!(loads, vec![3, 2, 2, 3, 2, 2]);

        let balanced = gen_captain_single(3, 6).unwrap();
        for &c in &balanced.captains {
            assert_eq!(balanced.graph.degree(c), 1 + 3 + 2);
        }

        let tri = gen_captain_single(1, 0).unwrap();
        assert_eq!(core_numbers(&tri.graph).core, vec![2, 2, 2]);
    }

    #[test]
    fn disguise_examples() {
        let net = gen_captain(CaptainParams { h: 4, p: 3, m: 10 }).unwrap();
        let r = measure_disguise(&net.graph, &net.partition, &net.captains).unwrap();
        assert!(r.diff_min >= 1, "{r:?}");
        let single = gen_captain(CaptainParams { h: 1, p: 3, m: 10 }).unwrap();
        let r = measure_disguise(&single.graph, &single.partition, &single.captains).unwrap();
        assert_eq!(r.diff_min, 0);
        assert_eq!(
            measure_disguise(&net.graph, &net.partition, &[]),
            Err(GenError::MissingCaptains)
        );
    }

    fn fig1() -> SetCoverInstance {
        SetCoverInstance::parse("4 3 2\n1 2\n2\n3 4\n").unwrap()
    }

    #[test]
    fn set_cover_text_roundtrip() {
        let sc = fig1();
        assert_eq!(sc.sets, vec![vec![0, 1], vec![1], vec![2, 3]]);
        assert_eq!(SetCoverInstance::parse(&sc.to_text()).unwrap(), sc);
        assert_eq!(sc.min_cover_size(), Some(2));
        assert!(SetCoverInstance::parse("2 1 1\n3\n").is_err());
        assert!(SetCoverInstance::parse("2 2 1\n1\n").is_err());
        assert!(SetCoverInstance::parse("2 1 2\n1 2\n").is_err());
    }

    #[test]
    fn setcover_structure() {
        let (inst, lay) = reduce_setcover_to_hl(&fig1());
        assert_eq!(inst.graph.n(), 47);
        assert_eq!(inst.partition.leaders().len(), 16);
        assert_eq!(inst.budget, Some(2));
        assert_eq!(inst.target, 26);
        let core = core_numbers(&inst.graph).core;
        assert!(inst.partition.leaders().iter().all(|&l| core[l] == 3));
        // The closing edges are absent, the other path edges present.
        for i in 0..3 {
            assert!(!inst.graph.has_edge(lay.x(i, 0), lay.x(i, 1)));
            assert!(inst.graph.has_edge(lay.x(i, 3), lay.x(i, 0)));
        }
        assert!(inst.graph.has_edge(lay.w(1, 0), lay.x(1, 0)));
        assert!(inst.graph.has_edge(lay.z(1, 0), lay.x(0, 1)));
        assert!(!inst.graph.has_edge(lay.z(0, 0), lay.x(1, 0)));
    }

    #[test]
    fn dks_structure() {
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (1, 2)]).unwrap();
        let (inst, lay) = reduce_dks_to_hl(&g, 3).unwrap();
        assert_eq!(inst.graph.n(), 4 * 5 + 4 + 3);
        assert_eq!(inst.partition.leaders().len(), 7);
        for v in 0..4 {
            assert_eq!(inst.graph.degree(lay.a(v)), 4);
        }
        for i in 0..7 {
            assert_eq!(inst.graph.degree(lay.leader(i)), 4 + 3 - 1);
        }
        assert_eq!(inst.budget, None);
        assert_eq!(inst.target, 3);
        assert!(reduce_dks_to_hl(&g, 5).is_err());
    }
}
