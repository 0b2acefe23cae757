//! Experiment sweeps producing CSV rows.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::centrality::Centrality;
use crate::degree::{hlda, lower_bound, random_baseline};
use crate::generators::{gen_ba, gen_captain, gen_ws, measure_disguise, CaptainParams, GenError};
use crate::graph::{Graph, VertexId, VertexPartition};
use crate::instance::{HidingInstance, SolveError};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model {
    Ba,
    Ws { beta: f64 },
}

impl Model {
    pub fn name(&self) -> &'static str {
        match self {
            Model::Ba => "ba",
            Model::Ws { .. } => "ws",
        }
    }

    pub fn generate(&self, n: usize, avg_degree: usize, seed: u64) -> Result<Graph, GenError> {
        match *self {
            Model::Ba => gen_ba(n, avg_degree, seed),
            Model::Ws { beta } => gen_ws(n, avg_degree, beta, seed),
        }
    }
}

/// Leaders are `count` vertices sampled without replacement from the `top`
/// highest-degree vertices (ties to the smaller id).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LeaderRule {
    pub top: usize,
    pub count: usize,
}

impl Default for LeaderRule {
    fn default() -> Self {
        LeaderRule {
            top: 100,
            count: 20,
        }
    }
}

impl fmt::Display for LeaderRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "top{}-sample{}", self.top, self.count)
    }
}

impl LeaderRule {
    pub fn select(&self, g: &Graph, seed: u64) -> Vec<VertexId> {
        let mut by_degree: Vec<VertexId> = g.vertices().collect();
        by_degree.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        by_degree.truncate(self.top);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut leaders: Vec<VertexId> = by_degree
            .choose_multiple(&mut rng, self.count.min(by_degree.len()))
            .copied()
            .collect();
        leaders.sort_unstable();
        leaders
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DegreeAlgo {
    Lb,
    Hlda,
    Random,
}

impl fmt::Display for DegreeAlgo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DegreeAlgo::Lb => "lb",
            DegreeAlgo::Hlda => "hlda",
            DegreeAlgo::Random => "random",
        })
    }
}

impl FromStr for DegreeAlgo {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lb" => Ok(DegreeAlgo::Lb),
            "hlda" => Ok(DegreeAlgo::Hlda),
            "random" => Ok(DegreeAlgo::Random),
            other => Err(format!(
                "unknown algorithm {other:?} (expected lb|hlda|random)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegreeSweep {
    pub model: Model,
    pub n: usize,
    pub avg_degree: usize,
    pub d_list: Vec<usize>,
    pub algos: Vec<DegreeAlgo>,
    pub seeds: Vec<u64>,
    pub leaders: LeaderRule,
    /// Record wall-clock time per row. Off by default so output is
    /// reproducible byte for byte.
    pub timing: bool,
}

/// One CSV row of a degree sweep. Optional columns are empty when the row
/// failed or timing is disabled.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub model: &'static str,
    pub n: usize,
    pub avg_degree: usize,
    pub beta: Option<f64>,
    pub seed: u64,
    pub leader_rule: String,
    pub d: usize,
    pub algorithm: String,
    pub edges_added: Option<usize>,
    pub lb: Option<usize>,
    pub runtime_ms: Option<f64>,
    pub error: String,
}

fn degree_instance(g: &Graph, leaders: &[VertexId], d: usize) -> Result<HidingInstance, String> {
    let partition =
        VertexPartition::new(g.n(), leaders.iter().copied()).map_err(|e| e.to_string())?;
    HidingInstance::new(g.clone(), partition, None, d, Centrality::Degree)
        .map_err(|e| e.to_string())
}

fn run_algo(inst: &HidingInstance, algo: DegreeAlgo, seed: u64) -> Result<usize, SolveError> {
    match algo {
        DegreeAlgo::Lb => lower_bound(inst),
        DegreeAlgo::Hlda => hlda(inst).map(|p| p.len()),
        DegreeAlgo::Random => random_baseline(inst, seed).map(|p| p.len()),
    }
}

/// Rows are ordered by seed, then `d`, then algorithm, following the order
/// given in the sweep.
pub fn bench_degree(sweep: &DegreeSweep) -> Vec<BenchRecord> {
    let mut rows = Vec::new();
    let beta = match sweep.model {
        Model::Ba => None,
        Model::Ws { beta } => Some(beta),
    };
    for &seed in &sweep.seeds {
        let row = |d: usize, algo: String| BenchRecord {
            model: sweep.model.name(),
            n: sweep.n,
            avg_degree: sweep.avg_degree,
            beta,
            seed,
            leader_rule: sweep.leaders.to_string(),
            d,
            algorithm: algo,
            edges_added: None,
            lb: None,
            runtime_ms: None,
            error: String::new(),
        };
        let g = match sweep.model.generate(sweep.n, sweep.avg_degree, seed) {
            Ok(g) => g,
            Err(e) => {
                for &d in &sweep.d_list {
                    for algo in &sweep.algos {
                        rows.push(BenchRecord {
                            error: e.to_string(),
                            ..row(d, algo.to_string())
                        });
                    }
                }
                continue;
            }
        };
        let leaders = sweep.leaders.select(&g, seed);
        for &d in &sweep.d_list {
            let inst = degree_instance(&g, &leaders, d);
            let lb = inst.as_ref().ok().and_then(|i| lower_bound(i).ok());
            for &algo in &sweep.algos {
                let mut rec = row(d, algo.to_string());
                rec.lb = lb;
                match &inst {
                    Err(e) => rec.error = e.clone(),
                    Ok(inst) => {
                        let start = Instant::now();
                        let out = run_algo(inst, algo, seed);
                        if sweep.timing {
                            rec.runtime_ms = Some(start.elapsed().as_secs_f64() * 1000.0);
                        }
                        match out {
                            Ok(k) => rec.edges_added = Some(k),
                            Err(e) => rec.error = e.to_string(),
                        }
                    }
                }
                rows.push(rec);
            }
        }
    }
    rows
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaptainRecord {
    pub h: usize,
    pub p: usize,
    pub m: Option<usize>,
    pub total: usize,
    pub max_leader_core: Option<usize>,
    pub min_captain_core: Option<usize>,
    pub max_captain_core: Option<usize>,
    pub diff_primary: Option<i64>,
    pub diff_min: Option<i64>,
    pub error: String,
}

/// Outer vertex count that brings a captain network to `total` vertices.
/// With one leader there are two captain groups of size `p`.
pub fn outer_count(h: usize, p: usize, total: usize) -> Option<usize> {
    let core = if h == 1 { 1 + 2 * p } else { h + h * p };
    total.checked_sub(core)
}

/// One row per `(p, h)` with `p` in the outer loop. Each row describes a
/// captain network of `total` vertices; infeasible pairs get an error row.
pub fn bench_captain_core(p_list: &[usize], h_list: &[usize], total: usize) -> Vec<CaptainRecord> {
    let mut rows = Vec::new();
    for &p in p_list {
        for &h in h_list {
            let mut rec = CaptainRecord {
                h,
                p,
                m: None,
                total,
                max_leader_core: None,
                min_captain_core: None,
                max_captain_core: None,
                diff_primary: None,
                diff_min: None,
                error: String::new(),
            };
            let Some(m) = outer_count(h, p, total) else {
                rec.error = format!("h={h}, p={p} needs more than {total} vertices");
                rows.push(rec);
                continue;
            };
            rec.m = Some(m);
            let measured = gen_captain(CaptainParams { h, p, m })
                .and_then(|net| measure_disguise(&net.graph, &net.partition, &net.captains));
            match measured {
                Ok(r) => {
                    rec.max_leader_core = Some(r.max_leader_core);
                    rec.min_captain_core = Some(r.min_captain_core);
                    rec.max_captain_core = Some(r.max_captain_core);
                    rec.diff_primary = Some(r.diff_primary);
                    rec.diff_min = Some(r.diff_min);
                }
                Err(e) => rec.error = e.to_string(),
            }
            rows.push(rec);
        }
    }
    rows
}

pub fn write_csv<T: Serialize, W: Write>(rows: &[T], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sweep(model: Model) -> DegreeSweep {
        DegreeSweep {
            model,
            n: 300,
            avg_degree: 4,
            d_list: vec![20, 60],
            algos: vec![DegreeAlgo::Lb, DegreeAlgo::Hlda, DegreeAlgo::Random],
            seeds: vec![1, 2],
            leaders: LeaderRule::default(),
            timing: false,
        }
    }

    fn csv_of<T: Serialize>(rows: &[T]) -> String {
        let mut buf = Vec::new();
        write_csv(rows, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn leader_rule_is_seeded() {
        let g = gen_ba(500, 4, 3).unwrap();
        let rule = LeaderRule::default();
        let a = rule.select(&g, 9);
        assert_eq!(a.len(), 20);
        assert_eq!(a, rule.select(&g, 9));
        let mut top: Vec<VertexId> = g.vertices().collect();
        top.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        assert!(a.iter().all(|v| top[..100].contains(v)));
    }

    #[test]
    fn degree_rows_are_ordered_and_bounded() {
        for model in [Model::Ba, Model::Ws { beta: 0.1 }] {
            let rows = bench_degree(&sweep(model));
            assert_eq!(rows.len(), 12);
            for chunk in rows.chunks(3) {
                let lb = chunk[0].edges_added.unwrap();
                let h = chunk[1].edges_added.unwrap();
                let r = chunk[2].edges_added.unwrap();
                assert!(lb <= h && h <= 2 * lb, "{chunk:?}");
                assert!(r >= h);
            }
            assert_eq!(csv_of(&rows), csv_of(&bench_degree(&sweep(model))));
        }
    }

    #[test]
    fn oversized_target_is_an_error_row() {
        let mut s = sweep(Model::Ba);
        s.d_list = vec![1000];
        let rows = bench_degree(&s);
        assert!(rows
            .iter()
            .all(|r| !r.error.is_empty() && r.edges_added.is_none()));
    }

    #[test]
    fn captain_rows() {
        let rows = bench_captain_core(&[1, 2, 3], &[1, 2, 4], 550);
        assert_eq!(rows.len(), 9);
        let r = rows.iter().find(|r| r.h == 1 && r.p == 3).unwrap();
        assert_eq!(r.m, Some(543));
        assert_eq!(r.diff_min, Some(0));
        let r = rows.iter().find(|r| r.h == 4 && r.p == 3).unwrap();
        assert_eq!(r.m, Some(534));
        assert!(r.diff_min.unwrap() >= 1);

        let tight = bench_captain_core(&[10], &[6], 50);
        assert!(tight[0].m.is_none() && !tight[0].error.is_empty());
        let text = csv_of(&rows);
        assert!(text.starts_with("h,p,m,total,max_leader_core"));
    }
}
