//! Simple undirected graphs over dense vertex ids `0..n`.
//!
//! Everything else in the crate is built on [`Graph`]. Adjacency lists are
//! kept sorted so that iteration order (and therefore every algorithm that
//! scans neighbours) is deterministic.

use std::collections::{BTreeMap, VecDeque};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("adjacency of {0} is not symmetric with {1}")]
    Asymmetric(usize, usize),
    #[error("adjacency list of {0} is not strictly sorted")]
    Unsorted(usize),
    #[error("{0}-{1} is not an edge")]
    NotAnEdge(usize, usize),
    #[error("vertex {0} appears in more than one part")]
    OverlappingParts(usize),
    #[error("vertex {0} is not covered by any part")]
    UncoveredVertex(usize),
}

/// Simple undirected graph in sorted adjacency-list form.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

/// Accumulates edges, silently merging duplicates.
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    adj: Vec<Vec<usize>>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder {
            adj: vec![Vec::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Appends a fresh vertex and returns its id.
    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    pub fn add_vertices(&mut self, count: usize) -> std::ops::Range<usize> {
        let start = self.adj.len();
        self.adj.resize(start + count, Vec::new());
        start..start + count
    }

    /// Panics on self-loops and out-of-range ids: builders are only fed by
    /// generators whose ids are correct by construction.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loop at {u}");
        assert!(u < self.adj.len() && v < self.adj.len(), "edge {u}-{v} out of range");
        self.adj[u].push(v);
        self.adj[v].push(u);
    }

    pub fn add_clique(&mut self, vertices: &[usize]) {
        for (i, &u) in vertices.iter().enumerate() {
            for &v in &vertices[i + 1..] {
                self.add_edge(u, v);
            }
        }
    }

    pub fn add_biclique(&mut self, left: &[usize], right: &[usize]) {
        for &u in left {
            for &v in right {
                self.add_edge(u, v);
            }
        }
    }

    pub fn build(mut self) -> Graph {
        let mut m2 = 0;
        for list in &mut self.adj {
            list.sort_unstable();
            list.dedup();
            m2 += list.len();
        }
        let g = Graph {
            adj: self.adj,
            m: m2 / 2,
        };
        debug_assert!(g.validate().is_ok());
        g
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Strict constructor: rejects self-loops, out-of-range ids and repeated edges.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut m2 = 0;
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let v = w[0];
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
            m2 += list.len();
        }
        Ok(Graph { adj, m: m2 / 2 })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Checks the representation invariants: sorted simple lists and symmetry.
    pub fn validate(&self) -> Result<(), GraphError> {
        let n = self.n();
        let mut m2 = 0;
        for (u, list) in self.adj.iter().enumerate() {
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return Err(GraphError::Unsorted(u));
            }
            for &v in list {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
                if v == u {
                    return Err(GraphError::SelfLoop(u));
                }
                if self.adj[v].binary_search(&u).is_err() {
                    return Err(GraphError::Asymmetric(u, v));
                }
            }
            m2 += list.len();
        }
        debug_assert_eq!(m2 / 2, self.m);
        Ok(())
    }

    /// Subgraph induced by `vertices`. Returns the subgraph together with the
    /// local-to-global id table (the input order, sorted).
    pub fn induced(&self, vertices: &[usize]) -> (Graph, Vec<usize>) {
        let mut global: Vec<usize> = vertices.to_vec();
        global.sort_unstable();
        global.dedup();
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in global.iter().enumerate() {
            local[v] = i;
        }
        let mut m2 = 0;
        let adj: Vec<Vec<usize>> = global
            .iter()
            .map(|&v| {
                let list: Vec<usize> = self.adj[v]
                    .iter()
                    .filter_map(|&w| (local[w] != usize::MAX).then_some(local[w]))
                    .collect();
                m2 += list.len();
                list
            })
            .collect();
        (Graph { adj, m: m2 / 2 }, global)
    }

    /// Connected components, each sorted, ordered by minimum vertex id.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        self.components_avoiding(&vec![false; self.n()])
    }

    /// Components of the graph after deleting every vertex flagged in `removed`.
    pub fn components_avoiding(&self, removed: &[bool]) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = removed.to_vec();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Component label per vertex (labels follow [`Graph::connected_components`] order).
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let comps = self.connected_components();
        let mut label = vec![0; self.n()];
        for (i, comp) in comps.iter().enumerate() {
            for &v in comp {
                label[v] = i;
            }
        }
        (label, comps.len())
    }

    /// 2-connected components and bridges, rooted into a block forest.
    pub fn biconnected_components(&self) -> BlockForest {
        BlockForest::new(self)
    }

    /// Replaces every edge `uv` (with `u < v`) by a path through `counts[(u, v)]`
    /// fresh vertices. Missing keys mean zero.
    pub fn subdivide(&self, counts: &EdgeCounts) -> Result<(Graph, SubdivisionMap), GraphError> {
        for &(u, v) in counts.keys() {
            if !self.has_edge(u, v) || u > v {
                return Err(GraphError::NotAnEdge(u, v));
            }
        }
        let total: usize = counts.values().sum();
        let mut b = GraphBuilder::new(self.n() + total);
        let mut paths = BTreeMap::new();
        let mut next = self.n();
        for (u, v) in self.edges() {
            let c = counts.get(&(u, v)).copied().unwrap_or(0);
            if c == 0 {
                b.add_edge(u, v);
                continue;
            }
            let path: Vec<usize> = (next..next + c).collect();
            next += c;
            let mut prev = u;
            for &x in &path {
                b.add_edge(prev, x);
                prev = x;
            }
            b.add_edge(prev, v);
            paths.insert((u, v), path);
        }
        Ok((b.build(), SubdivisionMap { paths }))
    }

    /// Identifies each part of `parts` to one vertex. Returns the quotient and
    /// the vertex-to-part table.
    pub fn quotient(&self, parts: &[Vec<usize>]) -> Result<(Graph, Vec<usize>), GraphError> {
        let n = self.n();
        let mut part_of = vec![usize::MAX; n];
        for (p, part) in parts.iter().enumerate() {
            for &v in part {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
                if part_of[v] != usize::MAX {
                    return Err(GraphError::OverlappingParts(v));
                }
                part_of[v] = p;
            }
        }
        if let Some(v) = part_of.iter().position(|&p| p == usize::MAX) {
            return Err(GraphError::UncoveredVertex(v));
        }
        Ok((self.quotient_by_labels(&part_of, parts.len()), part_of))
    }

    /// Quotient by a labelling `part_of: V -> 0..num_parts`.
    pub fn quotient_by_labels(&self, part_of: &[usize], num_parts: usize) -> Graph {
        let mut b = GraphBuilder::new(num_parts);
        for (u, v) in self.edges() {
            let (p, q) = (part_of[u], part_of[v]);
            if p != q {
                b.add_edge(p, q);
            }
        }
        b.build()
    }
}

/// Per-edge subdivision counts keyed by `(u, v)` with `u < v`.
pub type EdgeCounts = BTreeMap<(usize, usize), usize>;

/// For each subdivided edge `(u, v)`, `u < v`, the new vertices in order from `u` to `v`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SubdivisionMap {
    pub paths: BTreeMap<(usize, usize), Vec<usize>>,
}

impl SubdivisionMap {
    pub fn path(&self, u: usize, v: usize) -> &[usize] {
        self.paths.get(&(u.min(v), u.max(v))).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }
}

/// Blocks (2-connected components, bridges, and isolated vertices) rooted into
/// a forest: one root block per connected component.
///
/// Block ids follow breadth-first order from the roots, so a parent block
/// always has a smaller id than its children.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockForest {
    pub blocks: Vec<Vec<usize>>,
    pub cutvertices: Vec<usize>,
    /// Cutvertex shared with the parent block; `None` for roots.
    pub parent_cut: Vec<Option<usize>>,
    pub parent_block: Vec<Option<usize>>,
    pub roots: Vec<usize>,
}

impl BlockForest {
    fn new(g: &Graph) -> Self {
        let raw = raw_blocks(g);
        let n = g.n();
        let mut blocks_of: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, b) in raw.iter().enumerate() {
            for &v in b {
                blocks_of[v].push(i);
            }
        }
        let cutvertices: Vec<usize> = (0..n).filter(|&v| blocks_of[v].len() > 1).collect();

        let mut visited = vec![false; raw.len()];
        let mut order: Vec<usize> = Vec::with_capacity(raw.len());
        let mut parent_cut_raw = vec![None; raw.len()];
        let mut parent_raw: Vec<Option<usize>> = vec![None; raw.len()];
        let mut roots_raw = Vec::new();
        for comp in g.connected_components() {
            let min_v = comp[0];
            let root = *blocks_of[min_v]
                .iter()
                .min_by(|&&a, &&b| raw[a].cmp(&raw[b]))
                .expect("every vertex lies in a block");
            roots_raw.push(root);
            visited[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(b) = queue.pop_front() {
                order.push(b);
                for &x in &raw[b] {
                    let mut kids: Vec<usize> = blocks_of[x].iter().copied().filter(|&c| !visited[c]).collect();
                    kids.sort_by(|&a, &b| raw[a].cmp(&raw[b]));
                    for c in kids {
                        visited[c] = true;
                        parent_cut_raw[c] = Some(x);
                        parent_raw[c] = Some(b);
                        queue.push_back(c);
                    }
                }
            }
        }
        let mut new_id = vec![0; raw.len()];
        for (i, &b) in order.iter().enumerate() {
            new_id[b] = i;
        }
        BlockForest {
            blocks: order.iter().map(|&b| raw[b].clone()).collect(),
            cutvertices,
            parent_cut: order.iter().map(|&b| parent_cut_raw[b]).collect(),
            parent_block: order.iter().map(|&b| parent_raw[b].map(|p| new_id[p])).collect(),
            roots: roots_raw.iter().map(|&b| new_id[b]).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn is_root(&self, block: usize) -> bool {
        self.parent_cut[block].is_none()
    }
}

/// Hopcroft–Tarjan with an explicit edge stack; iterative to survive long paths.
fn raw_blocks(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    const UNSEEN: usize = usize::MAX;
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut blocks = Vec::new();
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    // (vertex, parent, next neighbour index)
    let mut frames: Vec<(usize, usize, usize)> = Vec::new();

    for root in 0..n {
        if disc[root] != UNSEEN {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        if g.degree(root) == 0 {
            blocks.push(vec![root]);
            continue;
        }
        frames.push((root, UNSEEN, 0));
        while let Some(frame) = frames.last_mut() {
            let (v, parent, i) = *frame;
            if i < g.degree(v) {
                frame.2 += 1;
                let w = g.neighbors(v)[i];
                if disc[w] == UNSEEN {
                    edge_stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    frames.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
                continue;
            }
            frames.pop();
            if parent == UNSEEN {
                continue;
            }
            low[parent] = low[parent].min(low[v]);
            if low[v] >= disc[parent] {
                let mut block = Vec::new();
                while let Some((a, b)) = edge_stack.pop() {
                    block.push(a);
                    block.push(b);
                    if (a, b) == (parent, v) {
                        break;
                    }
                }
                block.sort_unstable();
                block.dedup();
                blocks.push(block);
            }
        }
    }
    blocks
}
