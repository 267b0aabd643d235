//! The five-step algorithm: decompose, build `G^b`, reduce and split into
//! blocks, partition blocks, expand. Either returns a verified tree-partition
//! or a rejection certificate proving `tpw(G) > k`.

use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decomp::{verify_td, TreeDecomposition, TreePartition, VerifyError};
use crate::frontend::{balance_td, exact_td_with_cap, heuristic_td, treewidth_lower_bound, Strategy, EXACT_TD_CAP};
use crate::graph::Graph;
use crate::io::{read_td, IoError};
use crate::separator::{b_reduction, build_gb, candidate_pairs, transport_td, BReduction, PairCriterion};
use crate::wood::{combine_blocks, expand, partition_isolated_balanced, partition_rooted_balanced, CombineError};
use crate::CapacityError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step1 {
    /// Minimum-width decomposition by exhaustive search (small graphs only).
    Exact,
    Heuristic {
        strategy: Strategy,
        seed: u64,
    },
    Import(PathBuf),
    Provided(TreeDecomposition),
}

impl Default for Step1 {
    fn default() -> Self {
        Step1::Heuristic {
            strategy: Strategy::MinFill,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineParams {
    pub k: usize,
    pub step1: Step1,
    pub b_override: Option<usize>,
    pub parallel: bool,
    pub criterion: PairCriterion,
}

impl PipelineParams {
    pub fn new(k: usize) -> Self {
        PipelineParams {
            k,
            step1: Step1::default(),
            b_override: None,
            parallel: true,
            criterion: PairCriterion::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LbSource {
    /// Degeneracy / contraction-degeneracy bound.
    Heuristic,
    /// Exhaustive search found no decomposition of width `lb - 1`.
    Exact,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RejectionCertificate {
    /// `tw(G) >= lb > 2k - 1`.
    TreewidthLb { lb: usize, source: LbSource },
    /// A connected set of `G^b` with more than `k` vertices.
    LargeComponent { vertices: Vec<usize>, b: usize },
    /// A vertex of `H` (given by its part of `G`) whose degree inside a block
    /// of `H` (given by the parts of its vertices) exceeds the threshold.
    BlockDegree {
        block: Vec<Vec<usize>>,
        vertex: Vec<usize>,
        degree: usize,
        threshold: usize,
        b: usize,
    },
}

impl RejectionCertificate {
    pub fn kind(&self) -> &'static str {
        match self {
            RejectionCertificate::TreewidthLb { .. } => "treewidth_lb",
            RejectionCertificate::LargeComponent { .. } => "large_component",
            RejectionCertificate::BlockDegree { .. } => "block_degree",
        }
    }

    /// Recomputes the witness from `g` alone. `G^b` is rebuilt over all pairs.
    pub fn revalidate(&self, g: &Graph, k: usize, criterion: PairCriterion) -> bool {
        match self {
            RejectionCertificate::TreewidthLb { lb, source } => {
                if *lb < 2 * k {
                    return false;
                }
                match source {
                    LbSource::Heuristic => treewidth_lower_bound(g) >= *lb,
                    LbSource::Exact => matches!(exact_td_with_cap(g, lb - 1, EXACT_TD_CAP), Ok(None)),
                }
            }
            RejectionCertificate::LargeComponent { vertices, b } => {
                if vertices.len() <= k || vertices.iter().any(|&v| v >= g.n()) {
                    return false;
                }
                let pairs: Vec<(usize, usize)> = vertices
                    .iter()
                    .enumerate()
                    .flat_map(|(i, &u)| vertices[i + 1..].iter().map(move |&v| (u.min(v), u.max(v))))
                    .collect();
                let gb = build_gb(g, *b, &pairs, criterion, true);
                let (sub, _) = gb.induced(vertices);
                sub.connected_components().len() == 1
            }
            RejectionCertificate::BlockDegree {
                block,
                vertex,
                degree,
                threshold,
                b,
            } => {
                if *threshold != degree_threshold(k, *b) || degree <= threshold {
                    return false;
                }
                let n = g.n();
                let all: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
                let red = b_reduction(g, &build_gb(g, *b, &all, criterion, true));
                let id_of = |part: &Vec<usize>| -> Option<usize> {
                    let p = red.part_of[*part.first()?];
                    (red.parts[p] == *part).then_some(p)
                };
                let Some(hv) = id_of(vertex) else { return false };
                let mut ids = Vec::new();
                for p in block {
                    match id_of(p) {
                        Some(x) => ids.push(x),
                        None => return false,
                    }
                }
                ids.sort_unstable();
                let bf = red.h.biconnected_components();
                let Some(bi) = bf.blocks.iter().position(|bl| *bl == ids) else {
                    return false;
                };
                let (sub, map) = red.h.induced(&bf.blocks[bi]);
                let Some(local) = map.iter().position(|&x| x == hv) else {
                    return false;
                };
                sub.degree(local) == *degree
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub step: String,
    pub fields: Vec<(String, u64)>,
}

impl TraceRecord {
    fn new(step: &str, fields: &[(&str, usize)], started: Instant) -> Self {
        let mut f: Vec<(String, u64)> = fields.iter().map(|&(k, v)| (k.to_string(), v as u64)).collect();
        f.push(("millis".to_string(), started.elapsed().as_millis() as u64));
        TraceRecord {
            step: step.to_string(),
            fields: f,
        }
    }

    pub fn get(&self, key: &str) -> Option<u64> {
        self.fields.iter().find(|(k, _)| k == key).map(|&(_, v)| v)
    }

    /// `step=<name> key=value ...`
    pub fn to_line(&self) -> String {
        let mut s = format!("step={}", self.step);
        for (k, v) in &self.fields {
            s.push_str(&format!(" {k}={v}"));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PipelineOutcome {
    Partition {
        tp: TreePartition,
        width: usize,
        trace: Vec<TraceRecord>,
    },
    Reject {
        cert: RejectionCertificate,
        trace: Vec<TraceRecord>,
    },
}

impl PipelineOutcome {
    pub fn trace(&self) -> &[TraceRecord] {
        match self {
            PipelineOutcome::Partition { trace, .. } | PipelineOutcome::Reject { trace, .. } => trace,
        }
    }
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("k must be at least 1")]
    ZeroK,
    #[error(transparent)]
    Io(#[from] IoError),
    #[error("imported decomposition declares {declared} vertices, graph has {actual}")]
    ImportSize { declared: usize, actual: usize },
    #[error("step-1 decomposition is invalid: {0}")]
    InvalidDecomposition(#[from] VerifyError),
    #[error("b = {b} is below max(2k-1, w+1) = {min}")]
    BTooSmall { b: usize, min: usize },
    #[error(transparent)]
    Capacity(#[from] CapacityError),
    #[error("internal: {0}")]
    Combine(#[from] CombineError),
}

/// `k(1 + (k-1)(b-2)) + k`, clamped at `b < 2` to `b = 2`.
pub fn degree_threshold(k: usize, b: usize) -> usize {
    k * (1 + (k - 1) * b.saturating_sub(2)) + k
}

pub fn run(g: &Graph, params: &PipelineParams) -> Result<PipelineOutcome, PipelineError> {
    let k = params.k;
    if k == 0 {
        return Err(PipelineError::ZeroK);
    }
    let mut trace = Vec::new();

    // Step 1.
    let t = Instant::now();
    let lb = treewidth_lower_bound(g);
    if lb > 2 * k - 1 {
        trace.push(TraceRecord::new("decompose", &[("lb", lb)], t));
        return Ok(PipelineOutcome::Reject {
            cert: RejectionCertificate::TreewidthLb {
                lb,
                source: LbSource::Heuristic,
            },
            trace,
        });
    }
    let td = match &params.step1 {
        Step1::Heuristic { strategy, seed } => heuristic_td(g, *strategy, *seed),
        Step1::Exact => {
            let mut found = None;
            for w in lb..2 * k {
                if let Some(td) = exact_td_with_cap(g, w, EXACT_TD_CAP)? {
                    found = Some(td);
                    break;
                }
            }
            match found {
                Some(td) => td,
                None => {
                    trace.push(TraceRecord::new("decompose", &[("lb", 2 * k)], t));
                    return Ok(PipelineOutcome::Reject {
                        cert: RejectionCertificate::TreewidthLb {
                            lb: 2 * k,
                            source: LbSource::Exact,
                        },
                        trace,
                    });
                }
            }
        }
        Step1::Import(path) => {
            let (td, declared) = read_td(path)?;
            if declared != g.n() {
                return Err(PipelineError::ImportSize {
                    declared,
                    actual: g.n(),
                });
            }
            verify_td(g, &td)?;
            td
        }
        Step1::Provided(td) => {
            verify_td(g, td)?;
            td.clone()
        }
    };
    let w = td.width();
    trace.push(TraceRecord::new(
        "decompose",
        &[("lb", lb), ("w", w), ("bags", td.num_nodes())],
        t,
    ));

    // Step 2.
    let t = Instant::now();
    let b_min = (2 * k - 1).max(w + 1);
    let b = match params.b_override {
        Some(b) if b < b_min => return Err(PipelineError::BTooSmall { b, min: b_min }),
        Some(b) => b,
        None => b_min,
    };
    let pairs = candidate_pairs(&td);
    let gb = build_gb(g, b, &pairs, params.criterion, params.parallel);
    let red = b_reduction(g, &gb);
    let max_component = red.max_weight();
    trace.push(TraceRecord::new(
        "gb",
        &[
            ("b", b),
            ("pairs", pairs.len()),
            ("gb_edges", gb.m()),
            ("max_component", max_component),
        ],
        t,
    ));
    if let Some(big) = red.parts.iter().find(|p| p.len() > k) {
        return Ok(PipelineOutcome::Reject {
            cert: RejectionCertificate::LargeComponent {
                vertices: big.clone(),
                b,
            },
            trace,
        });
    }

    // Step 3.
    let t = Instant::now();
    let h = &red.h;
    let td_h = transport_td(&td, &red);
    let bf = h.biconnected_components();
    let occ = td_h.occurrences(h.n());
    let tree_adj = td_h.tree_adjacency();
    let subs: Vec<(Graph, Vec<usize>)> = bf.blocks.iter().map(|bl| h.induced(bl)).collect();
    trace.push(TraceRecord::new(
        "reduce",
        &[("h_vertices", h.n()), ("h_edges", h.m()), ("blocks", bf.len())],
        t,
    ));

    // Step 4.
    let t = Instant::now();
    let threshold = degree_threshold(k, b);
    let delta_h = subs.iter().map(|(s, _)| s.max_degree()).max().unwrap_or(0);
    for (sub, map) in &subs {
        if let Some(v) = (0..sub.n()).find(|&v| sub.degree(v) > threshold) {
            return Ok(PipelineOutcome::Reject {
                cert: RejectionCertificate::BlockDegree {
                    block: map.iter().map(|&x| red.parts[x].clone()).collect(),
                    vertex: red.parts[map[v]].clone(),
                    degree: sub.degree(v),
                    threshold,
                    b,
                },
                trace,
            });
        }
    }
    let solve = |bi: usize| -> TreePartition {
        let (sub, map) = &subs[bi];
        let local_td = td_h.restrict(&bf.blocks[bi], &occ, &tree_adj);
        let wb = local_td.width();
        let btd = balance_td(sub, &local_td);
        let mut tp = match bf.parent_cut[bi] {
            None => partition_rooted_balanced(sub, &btd, wb, &[0]),
            Some(c) => {
                let local = map.binary_search(&c).expect("cutvertex lies in its block");
                partition_isolated_balanced(sub, &btd, wb, local)
            }
        };
        for bag in &mut tp.bags {
            for v in bag.iter_mut() {
                *v = map[*v];
            }
        }
        tp
    };
    let per_block: Vec<TreePartition> = if params.parallel {
        (0..bf.len()).into_par_iter().map(solve).collect()
    } else {
        (0..bf.len()).map(solve).collect()
    };
    let tp_h = combine_blocks(h, &bf, &per_block)?;
    trace.push(TraceRecord::new(
        "partition",
        &[
            ("delta_h", delta_h),
            ("threshold", threshold),
            ("width_h", tp_h.width()),
        ],
        t,
    ));

    // Step 5.
    let t = Instant::now();
    let tp = expand(&tp_h, &red);
    let width = tp.width();
    trace.push(TraceRecord::new("expand", &[("width", width)], t));
    Ok(PipelineOutcome::Partition { tp, width, trace })
}

/// Steps 2 and 3 alone, for inspection: `G^b` over candidate pairs and its reduction.
pub fn reduction_for(g: &Graph, td: &TreeDecomposition, b: usize, criterion: PairCriterion) -> (Graph, BReduction) {
    let gb = build_gb(g, b, &candidate_pairs(td), criterion, true);
    let red = b_reduction(g, &gb);
    (gb, red)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::verify_tp;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }

    #[test]
    fn thresholds() {
        assert_eq!(degree_threshold(1, 3), 2);
        assert_eq!(degree_threshold(2, 6), 12);
        assert_eq!(degree_threshold(3, 8), 42);
    }

    #[test]
    fn k6_rejects_by_treewidth() {
        let out = run(&complete(6), &PipelineParams::new(2)).unwrap();
        match out {
            PipelineOutcome::Reject { cert, .. } => {
                assert_eq!(
                    cert,
                    RejectionCertificate::TreewidthLb {
                        lb: 5,
                        source: LbSource::Heuristic
                    }
                );
                assert!(cert.revalidate(&complete(6), 2, PairCriterion::default()));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn c4_trace() {
        let c4 = cycle(4);
        match run(&c4, &PipelineParams::new(1)).unwrap() {
            PipelineOutcome::Reject { cert, .. } => {
                assert_eq!(
                    cert,
                    RejectionCertificate::TreewidthLb {
                        lb: 2,
                        source: LbSource::Heuristic
                    }
                )
            }
            other => panic!("{other:?}"),
        }
        match run(&c4, &PipelineParams::new(2)).unwrap() {
            PipelineOutcome::Partition { tp, width, trace } => {
                assert_eq!(verify_tp(&c4, &tp), Ok(width));
                let steps: Vec<&str> = trace.iter().map(|r| r.step.as_str()).collect();
                assert_eq!(steps, ["decompose", "gb", "reduce", "partition", "expand"]);
                assert_eq!(trace[1].get("b"), Some(3));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn b_override_checked() {
        let mut p = PipelineParams::new(2);
        p.b_override = Some(2);
        assert!(matches!(
            run(&cycle(5), &p),
            Err(PipelineError::BTooSmall { b: 2, min: 3 })
        ));
        p.b_override = Some(5);
        assert!(matches!(run(&cycle(5), &p), Ok(PipelineOutcome::Partition { .. })));
    }

    #[test]
    fn exact_step1_matches() {
        let mut p = PipelineParams::new(2);
        p.step1 = Step1::Exact;
        let g = cycle(7);
        match run(&g, &p).unwrap() {
            PipelineOutcome::Partition { tp, .. } => {
                verify_tp(&g, &tp).unwrap();
            }
            other => panic!("{other:?}"),
        }
    }
}
