//! Steps 3–5: tree-partitions from balanced tree decompositions of
//! bounded-degree graphs, the isolated-root variant, block combination and
//! expansion of a b-reduction.

use std::collections::VecDeque;

use thiserror::Error;

use crate::decomp::{TreeDecomposition, TreePartition};
use crate::frontend::{balance_td, BalancedTd};
use crate::graph::{BlockForest, Graph};
use crate::separator::BReduction;

pub const ALPHA: f64 = 1.0 + std::f64::consts::FRAC_1_SQRT_2;
pub const GAMMA: f64 = 1.0 + std::f64::consts::SQRT_2;

/// Window and width constants for decomposition width `w` and maximum degree `delta`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WoodConstants {
    pub w: usize,
    pub delta: usize,
}

impl WoodConstants {
    pub fn new(w: usize, delta: usize) -> Self {
        WoodConstants { w, delta }
    }

    /// `(γ+1)(w+1)`.
    pub fn window_low(&self) -> f64 {
        (GAMMA + 1.0) * (self.w as f64 + 1.0)
    }

    /// `3(γ+1)(w+1)Δ`.
    pub fn window_high(&self) -> f64 {
        3.0 * (GAMMA + 1.0) * (self.w as f64 + 1.0) * self.delta as f64
    }

    /// `γ(w+1)(3γΔ−1)`; the reference width, not enforced.
    pub fn bound(&self) -> f64 {
        GAMMA * (self.w as f64 + 1.0) * (3.0 * GAMMA * self.delta as f64 - 1.0)
    }

    /// Boundary sizes strictly below this are grouped; the ceiling of the double.
    pub fn low_cutoff(&self) -> usize {
        self.window_low().ceil() as usize
    }

    /// Grouped boundaries are kept strictly below this; the ceiling of the double.
    pub fn high_cutoff(&self) -> usize {
        self.window_high().ceil() as usize
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CombineError {
    #[error("partition of block {block} does not isolate its parent cutvertex {cut}")]
    CutNotIsolated { block: usize, cut: usize },
    #[error("partition of block {block} misses its vertex {vertex}")]
    MissingVertex { block: usize, vertex: usize },
}

/// Scratch space for separator walks and component searches on subsets of a graph.
struct Scratch {
    in_d: Vec<u32>,
    in_x: Vec<u32>,
    in_w: Vec<u32>,
    seen: Vec<u32>,
    d_stamp: u32,
    w_stamp: u32,
    x_stamp: u32,
    seen_stamp: u32,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            in_d: vec![0; n],
            in_x: vec![0; n],
            in_w: vec![0; n],
            seen: vec![0; n],
            d_stamp: 0,
            w_stamp: 0,
            x_stamp: 0,
            seen_stamp: 0,
        }
    }

    fn set_d(&mut self, d: &[usize]) {
        self.d_stamp += 1;
        for &v in d {
            self.in_d[v] = self.d_stamp;
        }
    }

    fn all_d(&mut self) {
        self.d_stamp += 1;
        let stamp = self.d_stamp;
        self.in_d.iter_mut().for_each(|x| *x = stamp);
    }

    fn d(&self, v: usize) -> bool {
        self.in_d[v] == self.d_stamp
    }

    fn set_x<'a>(&mut self, x: impl IntoIterator<Item = &'a usize>) {
        self.x_stamp += 1;
        for &v in x {
            self.in_x[v] = self.x_stamp;
        }
    }

    fn x(&self, v: usize) -> bool {
        self.in_x[v] == self.x_stamp
    }

    fn fresh_seen(&mut self) -> u32 {
        self.seen_stamp += 1;
        self.seen_stamp
    }

    /// Walk from the root towards the heavy component. Requires `in_d` set.
    fn separator_walk(&mut self, g: &Graph, btd: &BalancedTd, w: &[usize]) -> usize {
        let mut c = btd.root;
        loop {
            let bag: Vec<usize> = btd.bag(c).to_vec();
            self.set_x(&bag);
            let stamp = self.fresh_seen();
            let (mut heavy, mut heavy_rep) = (0usize, usize::MAX);
            self.w_stamp += 1;
            for &u in w {
                self.in_w[u] = self.w_stamp;
            }
            // Count W-members per component of G[D] - X.
            for &start in w {
                if self.x(start) || !self.d(start) || self.seen[start] == stamp {
                    continue;
                }
                self.seen[start] = stamp;
                let mut queue = VecDeque::from([start]);
                let mut count = 0;
                while let Some(u) = queue.pop_front() {
                    if self.in_w[u] == self.w_stamp {
                        count += 1;
                    }
                    for &y in g.neighbors(u) {
                        if self.d(y) && !self.x(y) && self.seen[y] != stamp {
                            self.seen[y] = stamp;
                            queue.push_back(y);
                        }
                    }
                }
                if count > heavy {
                    heavy = count;
                    heavy_rep = start;
                }
            }
            if 2 * heavy <= w.len() {
                return c;
            }
            match btd.children[c]
                .iter()
                .copied()
                .find(|&ch| btd.occurs_below(heavy_rep, ch))
            {
                Some(ch) => c = ch,
                None => return c,
            }
        }
    }
}

/// Node of `btd` whose bag leaves every component of `G[within] - X` with at
/// most `|W|/2` vertices of `W`. `within = None` means the whole graph.
pub fn balanced_separator_bag(g: &Graph, btd: &BalancedTd, w: &[usize], within: Option<&[usize]>) -> usize {
    let mut s = Scratch::new(g.n());
    match within {
        Some(d) => s.set_d(d),
        None => s.all_d(),
    }
    s.separator_walk(g, btd, w)
}

struct Item {
    d: Vec<usize>,
    s: Vec<usize>,
    parent: Option<usize>,
}

struct Builder<'a> {
    g: &'a Graph,
    btd: &'a BalancedTd,
    consts: WoodConstants,
    scratch: Scratch,
    bags: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl<'a> Builder<'a> {
    fn new(g: &'a Graph, btd: &'a BalancedTd, consts: WoodConstants) -> Self {
        Builder {
            g,
            btd,
            consts,
            scratch: Scratch::new(g.n()),
            bags: Vec::new(),
            edges: Vec::new(),
        }
    }

    fn add_bag(&mut self, bag: Vec<usize>, parent: Option<usize>) -> usize {
        let id = self.bags.len();
        self.bags.push(bag);
        if let Some(p) = parent {
            self.edges.push((p, id));
        }
        id
    }

    fn run(&mut self, items: Vec<Item>) {
        let mut queue: VecDeque<Item> = items.into();
        while let Some(Item { d, mut s, parent }) = queue.pop_front() {
            if d.is_empty() {
                continue;
            }
            if s.is_empty() {
                s.push(d[0]);
            }
            if d.len() <= s.len() + self.consts.w + 1 {
                self.add_bag(d, parent);
                continue;
            }
            self.scratch.set_d(&d);
            let x = self.scratch.separator_walk(self.g, self.btd, &s);
            let mut r = s.clone();
            r.extend(self.btd.bag(x).iter().copied().filter(|&v| self.scratch.d(v)));
            r.sort_unstable();
            r.dedup();
            self.scratch.set_x(&r);
            let me = self.add_bag(r, parent);

            let stamp = self.scratch.fresh_seen();
            let mut comps: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
            for &start in &d {
                if self.scratch.x(start) || self.scratch.seen[start] == stamp {
                    continue;
                }
                self.scratch.seen[start] = stamp;
                let mut comp = vec![start];
                let mut i = 0;
                while i < comp.len() {
                    let u = comp[i];
                    i += 1;
                    for &y in self.g.neighbors(u) {
                        if self.scratch.d(y) && !self.scratch.x(y) && self.scratch.seen[y] != stamp {
                            self.scratch.seen[y] = stamp;
                            comp.push(y);
                        }
                    }
                }
                comp.sort_unstable();
                let boundary: Vec<usize> = comp
                    .iter()
                    .copied()
                    .filter(|&u| self.g.neighbors(u).iter().any(|&y| self.scratch.x(y)))
                    .collect();
                comps.push((comp, boundary));
            }

            let low = self.consts.low_cutoff();
            let high = self.consts.high_cutoff();
            let (mut small, big): (Vec<_>, Vec<_>) = comps.into_iter().partition(|(_, b)| b.len() < low);
            small.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then(a.0[0].cmp(&b.0[0])));
            let mut groups: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
            for (comp, boundary) in small {
                match groups.last_mut() {
                    Some((gd, gs)) if gs.len() + boundary.len() < high => {
                        gd.extend(comp);
                        gs.extend(boundary);
                    }
                    _ => groups.push((comp, boundary)),
                }
            }
            let mut children: Vec<(Vec<usize>, Vec<usize>)> = big.into_iter().chain(groups).collect();
            for (gd, gs) in &mut children {
                gd.sort_unstable();
                gs.sort_unstable();
            }
            children.sort_by_key(|(gd, _)| gd[0]);
            for (gd, gs) in children {
                queue.push_back(Item {
                    d: gd,
                    s: gs,
                    parent: Some(me),
                });
            }
        }
    }

    fn finish(self) -> TreePartition {
        TreePartition::new(self.bags, self.edges)
    }
}

/// Tree-partition of `g` whose root bag (node 0) contains `s`, using an
/// already balanced decomposition. `w` is the width of the decomposition
/// before balancing.
pub fn partition_rooted_balanced(g: &Graph, btd: &BalancedTd, w: usize, s: &[usize]) -> TreePartition {
    let mut s = s.to_vec();
    s.sort_unstable();
    s.dedup();
    let consts = WoodConstants::new(w, g.max_degree());
    let mut b = Builder::new(g, btd, consts);
    b.run(vec![Item {
        d: (0..g.n()).collect(),
        s,
        parent: None,
    }]);
    b.finish()
}

pub fn partition_rooted(g: &Graph, td: &TreeDecomposition, s: &[usize]) -> TreePartition {
    let btd = balance_td(g, td);
    partition_rooted_balanced(g, &btd, td.width(), s)
}

/// Tree-partition of `g` in which `v` is alone in the root bag (node 0).
pub fn partition_isolated_balanced(g: &Graph, btd: &BalancedTd, w: usize, v: usize) -> TreePartition {
    let n = g.n();
    let consts = WoodConstants::new(w, g.max_degree());
    if n as f64 <= consts.window_low() + 1.0 {
        let rest: Vec<usize> = (0..n).filter(|&u| u != v).collect();
        if rest.is_empty() {
            return TreePartition::new(vec![vec![v]], vec![]);
        }
        return TreePartition::new(vec![vec![v], rest], vec![(0, 1)]);
    }
    let mut removed = vec![false; n];
    removed[v] = true;
    let mut b = Builder::new(g, btd, consts);
    let root = b.add_bag(vec![v], None);
    let items = g
        .components_avoiding(&removed)
        .into_iter()
        .map(|d| {
            let s: Vec<usize> = d.iter().copied().filter(|&u| g.has_edge(u, v)).collect();
            Item {
                d,
                s,
                parent: Some(root),
            }
        })
        .collect();
    b.run(items);
    b.finish()
}

pub fn partition_isolated(g: &Graph, td: &TreeDecomposition, v: usize) -> TreePartition {
    let btd = balance_td(g, td);
    partition_isolated_balanced(g, &btd, td.width(), v)
}

/// Glues per-block partitions (in the ids of `h`) into one partition of `h`.
/// Each non-root block's singleton bag at its parent cutvertex is dropped and
/// its tree neighbours attach to the bag holding the cutvertex. Partitions of
/// different components are joined through their first bags.
pub fn combine_blocks(h: &Graph, bf: &BlockForest, per_block: &[TreePartition]) -> Result<TreePartition, CombineError> {
    let mut bags: Vec<Vec<usize>> = Vec::new();
    let mut edges = Vec::new();
    let mut holder = vec![usize::MAX; h.n()];
    let mut component_anchor: Option<usize> = None;
    for (block, tp) in per_block.iter().enumerate() {
        let offset = bags.len();
        let mut id = vec![usize::MAX; tp.num_nodes()];
        let mut skipped = None;
        if let Some(cut) = bf.parent_cut[block] {
            let t = tp
                .bags
                .iter()
                .position(|b| b.contains(&cut))
                .ok_or(CombineError::MissingVertex { block, vertex: cut })?;
            if tp.bags[t].len() != 1 {
                return Err(CombineError::CutNotIsolated { block, cut });
            }
            skipped = Some((t, holder[cut]));
        }
        let mut next = offset;
        for (t, bag) in tp.bags.iter().enumerate() {
            match skipped {
                Some((s, hold)) if s == t => id[t] = hold,
                _ => {
                    id[t] = next;
                    next += 1;
                    for &v in bag {
                        holder[v] = id[t];
                    }
                    bags.push(bag.clone());
                }
            }
        }
        for &(a, b) in &tp.edges {
            edges.push((id[a], id[b]));
        }
        for &v in &bf.blocks[block] {
            if holder[v] == usize::MAX {
                return Err(CombineError::MissingVertex { block, vertex: v });
            }
        }
        if bf.is_root(block) && next > offset {
            match component_anchor {
                Some(a) => edges.push((a, offset)),
                None => component_anchor = Some(offset),
            }
        }
    }
    let mut tp = TreePartition::new(bags, edges);
    tp.canonicalize();
    Ok(tp)
}

/// Replaces every vertex of `H` by its part of `G`.
pub fn expand(tp_h: &TreePartition, red: &BReduction) -> TreePartition {
    let bags = tp_h
        .bags
        .iter()
        .map(|bag| {
            let mut b: Vec<usize> = bag.iter().flat_map(|&p| red.parts[p].iter().copied()).collect();
            b.sort_unstable();
            b
        })
        .collect();
    TreePartition::new(bags, tp_h.edges.clone())
}
