//! Step 2: pairwise minimum vertex separators by unit-capacity max-flow on the
//! vertex-split digraph, the auxiliary graph `G^b`, and the b-reduction.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::decomp::TreeDecomposition;
use crate::graph::Graph;

/// When a candidate pair becomes an edge of `G^b`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PairCriterion {
    /// Minimum `u`-`v` separator in `G - uv` has at least `b` vertices.
    #[default]
    SeparatorInGMinusEdge,
    /// At least `b` internally disjoint `u`-`v` paths in `G`, counting the edge itself.
    DisjointPaths,
}

/// Split digraph of a graph: `v_in = 2v`, `v_out = 2v + 1`, arc `v_in → v_out`
/// plus `u_out → v_in` for each edge orientation. Arcs come in pairs `(a, a^1)`
/// with the reverse arc at capacity 0; arcs of a node are sorted by head.
#[derive(Clone, Debug)]
pub struct FlowNetwork {
    n: usize,
    first: Vec<usize>,
    arcs: Vec<usize>,
    head: Vec<usize>,
    base: Vec<u8>,
}

/// Per-thread mutable state for flow queries on one network.
#[derive(Clone, Debug)]
pub struct FlowWorkspace {
    cap: Vec<u8>,
    touched: Vec<usize>,
    seen: Vec<u32>,
    via: Vec<usize>,
    stamp: u32,
}

impl FlowNetwork {
    pub fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut head = Vec::with_capacity(2 * (n + 2 * g.m()));
        let mut base = Vec::with_capacity(head.capacity());
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); 2 * n];
        let mut add = |from: usize, to: usize, head: &mut Vec<usize>, base: &mut Vec<u8>| {
            let a = head.len();
            head.push(to);
            base.push(1);
            head.push(from);
            base.push(0);
            out[from].push(a);
            out[to].push(a + 1);
        };
        for v in 0..n {
            add(2 * v, 2 * v + 1, &mut head, &mut base);
        }
        for v in 0..n {
            for &u in g.neighbors(v) {
                add(2 * v + 1, 2 * u, &mut head, &mut base);
            }
        }
        let mut first = Vec::with_capacity(2 * n + 1);
        let mut arcs = Vec::with_capacity(head.len());
        for list in &mut out {
            list.sort_by_key(|&a| head[a]);
            first.push(arcs.len());
            arcs.extend_from_slice(list);
        }
        first.push(arcs.len());
        FlowNetwork {
            n,
            first,
            arcs,
            head,
            base,
        }
    }

    pub fn workspace(&self) -> FlowWorkspace {
        FlowWorkspace {
            cap: self.base.clone(),
            touched: Vec::new(),
            seen: vec![0; 2 * self.n],
            via: vec![usize::MAX; 2 * self.n],
            stamp: 0,
        }
    }

    /// `min(μ(s,t), cap)` where μ is the minimum `s`-`t` vertex separator in
    /// `G - st`. Augments along breadth-first paths and stops at `cap`.
    pub fn mu(&self, ws: &mut FlowWorkspace, s: usize, t: usize, cap: usize) -> usize {
        assert!(s != t, "mu needs two distinct vertices");
        let (src, sink) = (2 * s + 1, 2 * t);
        let (skip_a, skip_b) = ((2 * s + 1, 2 * t), (2 * t + 1, 2 * s));
        let mut flow = 0;
        while flow < cap {
            ws.stamp = ws.stamp.wrapping_add(1);
            if ws.stamp == 0 {
                ws.seen.iter_mut().for_each(|x| *x = 0);
                ws.stamp = 1;
            }
            let stamp = ws.stamp;
            let mut queue = std::collections::VecDeque::from([src]);
            ws.seen[src] = stamp;
            let mut found = false;
            'bfs: while let Some(x) = queue.pop_front() {
                for &a in &self.arcs[self.first[x]..self.first[x + 1]] {
                    let y = self.head[a];
                    if ws.cap[a] == 0 || ws.seen[y] == stamp || (x, y) == skip_a || (x, y) == skip_b {
                        continue;
                    }
                    ws.seen[y] = stamp;
                    ws.via[y] = a;
                    if y == sink {
                        found = true;
                        break 'bfs;
                    }
                    queue.push_back(y);
                }
            }
            if !found {
                break;
            }
            let mut y = sink;
            while y != src {
                let a = ws.via[y];
                ws.cap[a] -= 1;
                ws.cap[a ^ 1] += 1;
                ws.touched.push(a);
                y = self.head[a ^ 1];
            }
            flow += 1;
        }
        for a in ws.touched.drain(..) {
            ws.cap[a] = self.base[a];
            ws.cap[a ^ 1] = self.base[a ^ 1];
        }
        flow
    }
}

/// One-shot `min(μ(s,t), cap)`; use [`FlowNetwork`] for repeated queries.
pub fn mu(g: &Graph, s: usize, t: usize, cap: usize) -> usize {
    let net = FlowNetwork::new(g);
    let mut ws = net.workspace();
    net.mu(&mut ws, s, t, cap)
}

/// All pairs `u < v` sharing a bag, sorted.
pub fn candidate_pairs(td: &TreeDecomposition) -> Vec<(usize, usize)> {
    let mut set = HashSet::new();
    for bag in &td.bags {
        for (i, &a) in bag.iter().enumerate() {
            for &b in &bag[i + 1..] {
                set.insert((a.min(b), a.max(b)));
            }
        }
    }
    let mut pairs: Vec<_> = set.into_iter().collect();
    pairs.sort_unstable();
    pairs
}

/// `G^b` restricted to `pairs`. The result does not depend on `parallel`.
pub fn build_gb(g: &Graph, b: usize, pairs: &[(usize, usize)], criterion: PairCriterion, parallel: bool) -> Graph {
    let net = FlowNetwork::new(g);
    let test = |ws: &mut FlowWorkspace, &(u, v): &(usize, usize)| -> bool {
        let bonus = match criterion {
            PairCriterion::SeparatorInGMinusEdge => 0,
            PairCriterion::DisjointPaths => usize::from(g.has_edge(u, v)),
        };
        net.mu(ws, u, v, b.saturating_sub(bonus)) + bonus >= b
    };
    let keep: Vec<bool> = if parallel {
        pairs.par_iter().map_init(|| net.workspace(), test).collect()
    } else {
        let mut ws = net.workspace();
        pairs.iter().map(|p| test(&mut ws, p)).collect()
    };
    let edges: Vec<(usize, usize)> = pairs
        .iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(&(u, v), _)| (u.min(v), u.max(v)))
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    Graph::from_edges(g.n(), edges).expect("pairs are distinct in-range vertices")
}

/// `H` obtained by identifying the connected components of `G^b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BReduction {
    pub h: Graph,
    pub part_of: Vec<usize>,
    /// Part members, sorted; part ids follow the minimum member.
    pub parts: Vec<Vec<usize>>,
}

impl BReduction {
    pub fn weight(&self, part: usize) -> usize {
        self.parts[part].len()
    }

    pub fn max_weight(&self) -> usize {
        self.parts.iter().map(Vec::len).max().unwrap_or(0)
    }
}

pub fn b_reduction(g: &Graph, gb: &Graph) -> BReduction {
    let parts = gb.connected_components();
    let (h, part_of) = g.quotient(&parts).expect("components partition V");
    BReduction { h, part_of, parts }
}

/// Replaces every bag by the parts it meets; a tree decomposition of `H` when
/// the threshold is above the decomposition's adhesion.
pub fn transport_td(td: &TreeDecomposition, red: &BReduction) -> TreeDecomposition {
    let bags = td
        .bags
        .iter()
        .map(|bag| {
            let mut b: Vec<usize> = bag.iter().map(|&v| red.part_of[v]).collect();
            b.sort_unstable();
            b.dedup();
            b
        })
        .collect();
    TreeDecomposition {
        bags,
        edges: td.edges.clone(),
        root: td.root,
    }
}
