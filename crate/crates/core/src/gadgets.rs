//! Instance generators: extremal families, the TCMIS and domino hardness
//! reductions, and the witness converters that go with them.

use std::collections::HashMap;
use std::ops::Range;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decomp::{root_tree, tree_adjacency, verify_tp, VerifyError};
use crate::graph::{Graph, GraphBuilder};
use crate::{TreeDecomposition, TreePartition};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GadgetError {
    #[error("cluster gadget needs a nonempty attachment set")]
    EmptyAttachment,
    #[error("attachment set is not a clique: {0} and {1} are not adjacent")]
    NotAClique(usize, usize),
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("parameter {name} must be at least {min}")]
    Parameter { name: &'static str, min: usize },
    #[error("tree on {nodes} nodes is not a tree")]
    NotATree { nodes: usize },
    #[error("tree node {node} has {children} children; the tree must be binary when rooted at 0")]
    NotBinary { node: usize, children: usize },
    #[error("edge {edge}: endpoint {vertex:?} is outside the classes")]
    BadEndpoint { edge: usize, vertex: TcmisVertex },
    #[error("edge {edge} joins two vertices of one class")]
    IntraClassEdge { edge: usize },
    #[error("edge {edge} joins nodes {a} and {b}, which are neither equal nor adjacent in the tree")]
    NonLocalEdge { edge: usize, a: usize, b: usize },
    #[error("trunk clique at node {node} would have {size} vertices (p = {p})")]
    TrunkTooSmall { node: usize, p: usize, size: i64 },
    #[error("maximum degree {degree} is not below the audit bound {bound}")]
    DegreeAudit { degree: usize, bound: usize },
    #[error("witness has no valid index for node {node} color {color}")]
    BadWitness { node: usize, color: usize },
    #[error("tree-partition has width {width}, above k = {k}")]
    PartitionTooWide { width: usize, k: usize },
    #[error("tree-partition is invalid: {0}")]
    InvalidPartition(#[from] VerifyError),
}

/// `m × m` grid, vertex `(i, j)` at `i*m + j`.
pub fn gen_grid(m: usize) -> Graph {
    let mut b = GraphBuilder::new(m * m);
    for i in 0..m {
        for j in 0..m {
            if j + 1 < m {
                b.add_edge(i * m + j, i * m + j + 1);
            }
            if i + 1 < m {
                b.add_edge(i * m + j, (i + 1) * m + j);
            }
        }
    }
    b.build()
}

/// `m × m` wall: the grid without the vertical edges `(i,j)(i+1,j)` where
/// `i + j` is even, counting rows and columns from 1. Row-major ids.
pub fn gen_wall(m: usize) -> Graph {
    let mut b = GraphBuilder::new(m * m);
    for i in 0..m {
        for j in 0..m {
            if j + 1 < m {
                b.add_edge(i * m + j, i * m + j + 1);
            }
            if i + 1 < m && (i + j + 2) % 2 == 1 {
                b.add_edge(i * m + j, (i + 1) * m + j);
            }
        }
    }
    b.build()
}

/// Path `0..m` plus an apex `m` adjacent to all of it.
pub fn gen_fan(m: usize) -> Graph {
    let mut b = GraphBuilder::new(m + 1);
    for v in 0..m {
        if v + 1 < m {
            b.add_edge(v, v + 1);
        }
        b.add_edge(v, m);
    }
    b.build()
}

/// `K_{a,b}`: left side `0..a`, right side `a..a+b`.
pub fn gen_complete_bipartite(a: usize, b: usize) -> Graph {
    let mut g = GraphBuilder::new(a + b);
    let left: Vec<usize> = (0..a).collect();
    let right: Vec<usize> = (a..a + b).collect();
    g.add_biclique(&left, &right);
    g.build()
}

/// Every edge of `tree` replaced by `m` parallel edges, each subdivided once.
/// Original vertices keep their ids; the `m` midpoints of each edge follow in
/// sorted edge order.
pub fn gen_multiple_tree(tree: &Graph, m: usize) -> Graph {
    let mut b = GraphBuilder::new(tree.n());
    for (u, v) in tree.edges() {
        for x in b.add_vertices(m) {
            b.add_edge(u, x);
            b.add_edge(x, v);
        }
    }
    b.build()
}

/// `G(n, p)` drawn with ChaCha8 from `seed`, pairs in lexicographic order.
pub fn gen_gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                b.add_edge(u, v);
            }
        }
    }
    b.build()
}

/// Uniform labelled tree from a random Prüfer sequence.
pub fn gen_random_tree(n: usize, seed: u64) -> Graph {
    if n < 2 {
        return Graph::empty(n);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &x in &code {
        degree[x] += 1;
    }
    let mut leaves: std::collections::BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut b = GraphBuilder::new(n);
    for &x in &code {
        let leaf = leaves.pop_first().expect("a Prüfer step always has a leaf");
        b.add_edge(leaf, x);
        degree[x] -= 1;
        if degree[x] == 1 {
            leaves.insert(x);
        }
    }
    let u = leaves.pop_first().expect("two leaves remain");
    let v = leaves.pop_first().expect("two leaves remain");
    b.add_edge(u, v);
    b.build()
}

fn check_clique(g: &Graph, z: &[usize]) -> Result<(), GadgetError> {
    if z.is_empty() {
        return Err(GadgetError::EmptyAttachment);
    }
    for &v in z {
        if v >= g.n() {
            return Err(GadgetError::VertexOutOfRange { vertex: v, n: g.n() });
        }
    }
    for (i, &u) in z.iter().enumerate() {
        for &v in &z[i + 1..] {
            if !g.has_edge(u, v) {
                return Err(GadgetError::NotAClique(u, v));
            }
        }
    }
    Ok(())
}

fn add_cluster(b: &mut GraphBuilder, z: Range<usize>, l: usize) -> Range<usize> {
    let c = b.add_vertices(2 * l);
    let cv: Vec<usize> = c.clone().collect();
    b.add_clique(&cv);
    let zv: Vec<usize> = z.collect();
    b.add_biclique(&zv, &cv[..l]);
    c
}

/// `h` plus a `2L`-clique whose first `L` vertices are joined to all of `z`.
/// Returns the extended graph and the new vertex range.
pub fn gen_cluster_gadget(h: &Graph, z: &[usize], l: usize) -> Result<(Graph, Range<usize>), GadgetError> {
    check_clique(h, z)?;
    let mut b = GraphBuilder::new(h.n());
    for (u, v) in h.edges() {
        b.add_edge(u, v);
    }
    let c = b.add_vertices(2 * l);
    let cv: Vec<usize> = c.clone().collect();
    b.add_clique(&cv);
    b.add_biclique(z, &cv[..l.min(cv.len())]);
    Ok((b.build(), c))
}

/// Vertex `v_{node, color, index}`; color in `1..=k`, index in `1..=r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TcmisVertex {
    pub node: usize,
    pub color: usize,
    pub index: usize,
}

/// Tree-chained multicolored independent set instance. The tree is on nodes
/// `0..nodes` and is rooted at 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TcmisInstance {
    pub nodes: usize,
    pub tree_edges: Vec<(usize, usize)>,
    pub k: usize,
    pub r: usize,
    pub edges: Vec<(TcmisVertex, TcmisVertex)>,
}

impl TcmisInstance {
    /// Parent of every tree node when rooted at 0.
    pub fn tree_parents(&self) -> Result<Vec<Option<usize>>, GadgetError> {
        let bad = GadgetError::NotATree { nodes: self.nodes };
        if self.nodes == 0 || self.tree_edges.len() + 1 != self.nodes {
            return Err(bad);
        }
        if self
            .tree_edges
            .iter()
            .any(|&(a, b)| a >= self.nodes || b >= self.nodes || a == b)
        {
            return Err(bad);
        }
        let adj = tree_adjacency(self.nodes, &self.tree_edges);
        let (parent, order) = root_tree(&adj, 0);
        if order.len() != self.nodes {
            return Err(bad);
        }
        let mut children = vec![0usize; self.nodes];
        for p in parent.iter().flatten() {
            children[*p] += 1;
        }
        if let Some(node) = (0..self.nodes).find(|&t| children[t] > 2) {
            return Err(GadgetError::NotBinary {
                node,
                children: children[node],
            });
        }
        Ok(parent)
    }

    pub fn validate(&self) -> Result<Vec<Option<usize>>, GadgetError> {
        if self.k == 0 {
            return Err(GadgetError::Parameter { name: "k", min: 1 });
        }
        if self.r == 0 {
            return Err(GadgetError::Parameter { name: "r", min: 1 });
        }
        let parent = self.tree_parents()?;
        for (edge, &(a, b)) in self.edges.iter().enumerate() {
            for v in [a, b] {
                if v.node >= self.nodes || !(1..=self.k).contains(&v.color) || !(1..=self.r).contains(&v.index) {
                    return Err(GadgetError::BadEndpoint { edge, vertex: v });
                }
            }
            if a.node == b.node && a.color == b.color {
                return Err(GadgetError::IntraClassEdge { edge });
            }
            if a.node != b.node && parent[a.node] != Some(b.node) && parent[b.node] != Some(a.node) {
                return Err(GadgetError::NonLocalEdge {
                    edge,
                    a: a.node,
                    b: b.node,
                });
            }
        }
        Ok(parent)
    }
}

/// Node of the subdivided tree `T'`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrunkNode {
    /// Node of `T`, if this is one.
    pub original: Option<usize>,
    pub parent: Option<usize>,
    pub p: usize,
    /// Edge indices `j` (0-based) with `i_{e_j}` at this node.
    pub marks: Vec<usize>,
    pub clique: Range<usize>,
}

/// Chain `CC_{i,c,1..}` of one class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chain {
    pub node: usize,
    pub color: usize,
    /// Trunk node the last clique is joined to.
    pub top: usize,
    pub cliques: Vec<Range<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterEntry {
    pub clique: Range<usize>,
    pub cluster: Range<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TcmisGadget {
    #[serde(skip)]
    pub h: Graph,
    pub k: usize,
    pub r: usize,
    /// `L = 36k + 5`.
    pub l: usize,
    /// `N = (m + 1) r`.
    pub n_sub: usize,
    /// Indices `0..|V_T|` are the nodes of `T`, then `i'`, then `r_0`, then
    /// subdivision nodes.
    pub trunk: Vec<TrunkNode>,
    pub root: usize,
    /// Chain of `(i, c)` at index `i*k + c - 1`.
    pub chains: Vec<Chain>,
    pub clusters: Vec<ClusterEntry>,
    /// `i_{e_j}` for each edge.
    pub edge_nodes: Vec<usize>,
    /// Edges whose size-7 offsets fall outside the chain's reach.
    pub overshoot: Vec<usize>,
    pub max_degree: usize,
}

impl TcmisGadget {
    pub fn chain_len(&self) -> usize {
        2 * self.n_sub + self.r + 5
    }

    pub fn chain(&self, node: usize, color: usize) -> &Chain {
        &self.chains[node * self.k + color - 1]
    }

    /// Trunk node `d` steps above `x`.
    pub fn ancestor(&self, mut x: usize, d: usize) -> Option<usize> {
        for _ in 0..d {
            x = self.trunk[x].parent?;
        }
        Some(x)
    }

    pub fn degree_bound(&self) -> usize {
        5 * self.k * self.l + 5 * self.l
    }
}

fn walk_up(parent: &[Option<usize>], mut x: usize, d: usize) -> Option<usize> {
    for _ in 0..d {
        x = parent[x]?;
    }
    Some(x)
}

pub fn gen_tcmis_gadget(inst: &TcmisInstance) -> Result<TcmisGadget, GadgetError> {
    let tparent = inst.validate()?;
    let (k, r, m, t) = (inst.k, inst.r, inst.edges.len(), inst.nodes);
    let l = 36 * k + 5;
    let n_sub = (m + 1) * r;
    let reach = 2 * n_sub + 2;
    let chain_len = 2 * n_sub + r + 5;

    // T plus i' above node 0 and r_0 above i', then every edge subdivided.
    let (iprime, r0) = (t, t + 1);
    let mut parent: Vec<Option<usize>> = vec![None; t + 2];
    for (x, p) in tparent.iter().enumerate() {
        parent[x] = Some(p.unwrap_or(iprime));
    }
    parent[iprime] = Some(r0);
    for c in 0..t + 1 {
        let q = parent[c].expect("only r_0 is parentless");
        let first = parent.len();
        for s in 0..n_sub {
            parent.push(Some(if s + 1 < n_sub { first + s + 1 } else { q }));
        }
        if n_sub > 0 {
            parent[c] = Some(first);
        }
    }
    let nodes = parent.len();

    let mut p = vec![0usize; nodes];
    for i in 0..t {
        for d in 0..=reach {
            p[walk_up(&parent, i, d).expect("T+ grandparents exist")] += 1;
        }
    }

    let mut marks: Vec<Vec<usize>> = vec![Vec::new(); nodes];
    let mut edge_nodes = Vec::with_capacity(m);
    let mut sizes: Vec<Vec<usize>> = vec![vec![6; chain_len]; t * k];
    for s in &mut sizes {
        s[0] = l - 7;
        s[chain_len - 1] = l - 7;
    }
    let mut overshoot = Vec::new();
    for (j, &(a, b)) in inst.edges.iter().enumerate() {
        let g = 2 * (j + 1) * r;
        let base = if a.node == b.node || tparent[b.node] == Some(a.node) {
            a.node
        } else {
            b.node
        };
        let at = walk_up(&parent, base, g).expect("g(e_j) stays below r_0");
        marks[at].push(j);
        edge_nodes.push(at);
        let mut flagged = false;
        for (v, u) in [(a, b), (b, a)] {
            let gamma = if tparent[v.node] == Some(u.node) {
                flagged |= g > n_sub + 1;
                g + n_sub + 2 + v.index
            } else {
                g + 1 + v.index
            };
            if gamma >= chain_len {
                flagged = true;
            } else {
                sizes[v.node * k + v.color - 1][gamma - 1] = 7;
            }
        }
        if flagged {
            overshoot.push(j);
        }
    }

    let mut b = GraphBuilder::new(0);
    let mut trunk = Vec::with_capacity(nodes);
    for x in 0..nodes {
        let base = if marks[x].is_empty() { 2 } else { 1 };
        let size = l as i64 - (6 * k * p[x]) as i64 - base;
        if size < 1 {
            return Err(GadgetError::TrunkTooSmall { node: x, p: p[x], size });
        }
        let clique = b.add_vertices(size as usize);
        trunk.push(TrunkNode {
            original: (x < t).then_some(x),
            parent: parent[x],
            p: p[x],
            marks: std::mem::take(&mut marks[x]),
            clique,
        });
    }
    for x in 0..nodes {
        let own: Vec<usize> = trunk[x].clique.clone().collect();
        b.add_clique(&own);
        if let Some(q) = parent[x] {
            let up: Vec<usize> = trunk[q].clique.clone().collect();
            b.add_biclique(&own, &up);
        }
    }
    let mut chains = Vec::with_capacity(t * k);
    for i in 0..t {
        let top = walk_up(&parent, i, reach).expect("T+ grandparents exist");
        for c in 1..=k {
            let cliques: Vec<Range<usize>> = sizes[i * k + c - 1].iter().map(|&s| b.add_vertices(s)).collect();
            let mut prev: Vec<usize> = trunk[i].clique.clone().collect();
            for q in &cliques {
                let cur: Vec<usize> = q.clone().collect();
                b.add_clique(&cur);
                b.add_biclique(&prev, &cur);
                prev = cur;
            }
            let end: Vec<usize> = trunk[top].clique.clone().collect();
            b.add_biclique(&prev, &end);
            chains.push(Chain {
                node: i,
                color: c,
                top,
                cliques,
            });
        }
    }
    let targets: Vec<Range<usize>> = trunk
        .iter()
        .map(|x| x.clique.clone())
        .chain(chains.iter().flat_map(|c| c.cliques.iter().cloned()))
        .collect();
    let clusters = targets
        .into_iter()
        .map(|clique| ClusterEntry {
            cluster: add_cluster(&mut b, clique.clone(), l),
            clique,
        })
        .collect();
    let h = b.build();
    let max_degree = h.max_degree();
    let gadget = TcmisGadget {
        h,
        k,
        r,
        l,
        n_sub,
        trunk,
        root: r0,
        chains,
        clusters,
        edge_nodes,
        overshoot,
        max_degree,
    };
    if max_degree >= gadget.degree_bound() {
        return Err(GadgetError::DegreeAudit {
            degree: max_degree,
            bound: gadget.degree_bound(),
        });
    }
    Ok(gadget)
}

/// A bag of the witness partition larger than `L`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BagOverflow {
    pub bag: usize,
    pub size: usize,
    /// Trunk node of the bag, when it is a trunk bag.
    pub trunk_node: Option<usize>,
    /// Edges `j` with `i_{e_j}` at that trunk node.
    pub edges: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TcmisWitness {
    pub tp: TreePartition,
    pub overflow: Vec<BagOverflow>,
}

/// Pushes bags holding `seg[0] ∪ seg[last]`, `seg[1] ∪ seg[last-1]`, ... as
/// a path hanging off `anchor`, recording each clique's bag in `at`.
fn fold(
    bags: &mut Vec<Vec<usize>>,
    edges: &mut Vec<(usize, usize)>,
    anchor: usize,
    seg: &[Range<usize>],
    at: &mut HashMap<usize, usize>,
) {
    let mut prev = anchor;
    let (mut lo, mut hi) = (0usize, seg.len());
    while lo < hi {
        let id = bags.len();
        let mut bag: Vec<usize> = seg[lo].clone().collect();
        at.insert(seg[lo].start, id);
        if hi - 1 > lo {
            bag.extend(seg[hi - 1].clone());
            at.insert(seg[hi - 1].start, id);
        }
        bags.push(bag);
        edges.push((prev, id));
        prev = id;
        lo += 1;
        hi -= 1;
    }
}

/// The partition from the completeness direction of the reduction, for the
/// choice `h[i][c-1]` of index in class `V_{i,c}`. Any choice is accepted;
/// a choice containing both ends of an edge shows up as an overflow at
/// `i_{e_j}`.
pub fn tcmis_witness_to_partition(gadget: &TcmisGadget, h: &[Vec<usize>]) -> Result<TcmisWitness, GadgetError> {
    let (k, r) = (gadget.k, gadget.r);
    let reach = 2 * gadget.n_sub + 2;
    let len = gadget.chain_len();
    let mut bags: Vec<Vec<usize>> = gadget.trunk.iter().map(|x| x.clique.clone().collect()).collect();
    let mut edges: Vec<(usize, usize)> = gadget
        .trunk
        .iter()
        .enumerate()
        .filter_map(|(x, node)| node.parent.map(|q| (x, q)))
        .collect();
    let mut at: HashMap<usize, usize> = gadget
        .trunk
        .iter()
        .enumerate()
        .map(|(x, n)| (n.clique.start, x))
        .collect();

    for chain in &gadget.chains {
        let (i, c) = (chain.node, chain.color);
        let choice = h.get(i).and_then(|row| row.get(c - 1)).copied().unwrap_or(0);
        if !(1..=r).contains(&choice) {
            return Err(GadgetError::BadWitness { node: i, color: c });
        }
        // 1-based CC_{choice+1+d} sits at distance d above i.
        for d in 0..=reach {
            let x = gadget.ancestor(i, d).expect("chain stays below its top");
            let q = &chain.cliques[choice + d];
            bags[x].extend(q.clone());
            at.insert(q.start, x);
        }
        fold(&mut bags, &mut edges, i, &chain.cliques[..choice], &mut at);
        fold(
            &mut bags,
            &mut edges,
            chain.top,
            &chain.cliques[choice + reach + 1..len],
            &mut at,
        );
    }
    debug_assert_eq!(
        gadget.chains.len(),
        gadget.trunk.iter().filter(|x| x.original.is_some()).count() * k
    );

    for entry in &gadget.clusters {
        let host = at[&entry.clique.start];
        let first = bags.len();
        let l = gadget.l;
        bags.push((entry.cluster.start..entry.cluster.start + l).collect());
        bags.push((entry.cluster.start + l..entry.cluster.end).collect());
        edges.push((host, first));
        edges.push((first, first + 1));
    }

    let overflow = bags
        .iter()
        .enumerate()
        .filter(|(_, bag)| bag.len() > gadget.l)
        .map(|(id, bag)| {
            let trunk_node = (id < gadget.trunk.len()).then_some(id);
            BagOverflow {
                bag: id,
                size: bag.len(),
                trunk_node,
                edges: trunk_node.map(|x| gadget.trunk[x].marks.clone()).unwrap_or_default(),
            }
        })
        .collect();
    let mut tp = TreePartition::new(bags, edges);
    tp.canonicalize();
    Ok(TcmisWitness { tp, overflow })
}

/// `H` from a graph `G` and target `k` for the domino reduction, with the
/// registry of its pieces. Layout: all `C_v` (`v*L..`), then `S_w` for each
/// clique vertex `w` in id order (`y_w` first), then `z_e` in sorted edge order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominoReduction {
    #[serde(skip)]
    pub h: Graph,
    pub k: usize,
    pub d: usize,
    /// `L = kd + 1`.
    pub l: usize,
    /// `M = (k + 1) L - 1`.
    pub m: usize,
    pub c: Vec<Range<usize>>,
    pub s: Vec<Range<usize>>,
    pub z: Vec<(usize, usize, usize)>,
}

impl DominoReduction {
    pub fn y(&self, w: usize) -> usize {
        self.s[w].start
    }
}

pub fn gen_domino_reduction(g: &Graph, k: usize) -> Result<DominoReduction, GadgetError> {
    if k == 0 {
        return Err(GadgetError::Parameter { name: "k", min: 1 });
    }
    let d = g.max_degree();
    let l = k * d + 1;
    let m = (k + 1) * l - 1;
    let mut b = GraphBuilder::new(0);
    let c: Vec<Range<usize>> = (0..g.n()).map(|_| b.add_vertices(l)).collect();
    for cv in &c {
        b.add_clique(&cv.clone().collect::<Vec<_>>());
    }
    let mut s = Vec::with_capacity(g.n() * l);
    for w in 0..g.n() * l {
        let sw = b.add_vertices(2 * m - 2);
        b.add_edge(w, sw.start);
        for x in sw.start + 1..sw.end {
            b.add_edge(sw.start, x);
        }
        s.push(sw);
    }
    let mut z = Vec::with_capacity(g.m());
    for (u, v) in g.edges() {
        let ze = b.add_vertex();
        for x in c[u].clone().chain(c[v].clone()) {
            b.add_edge(ze, x);
        }
        z.push((u, v, ze));
    }
    Ok(DominoReduction {
        h: b.build(),
        k,
        d,
        l,
        m,
        c,
        s,
        z,
    })
}

/// Domino tree decomposition of the reduction's `H` built from a
/// tree-partition of `G` of width at most `k`.
pub fn tp_witness_to_domino(
    g: &Graph,
    tp: &TreePartition,
    red: &DominoReduction,
) -> Result<TreeDecomposition, GadgetError> {
    let width = verify_tp(g, tp)?;
    if width > red.k {
        return Err(GadgetError::PartitionTooWide { width, k: red.k });
    }
    let at = tp.bag_of(g.n());
    let mut bags: Vec<Vec<usize>> = tp
        .bags
        .iter()
        .map(|bag| bag.iter().flat_map(|&v| red.c[v].clone()).collect())
        .collect();
    for &(u, v, ze) in &red.z {
        bags[at[u]].push(ze);
        if at[v] != at[u] {
            bags[at[v]].push(ze);
        }
    }
    let mut edges = tp.edges.clone();
    for (w, sw) in red.s.iter().enumerate() {
        let host = at[w / red.l];
        let y = sw.start;
        let split = sw.start + 1 + (red.m - 2);
        let first = bags.len();
        let mut one = vec![w, y];
        one.extend(sw.start + 1..split);
        let mut two = vec![y];
        two.extend(split..sw.end);
        bags.push(one);
        bags.push(two);
        edges.push((host, first));
        edges.push((first, first + 1));
    }
    for bag in &mut bags {
        bag.sort_unstable();
    }
    let mut td = TreeDecomposition::new(bags, edges);
    td.root = Some(0);
    Ok(td)
}

/// Width-3 tree-partition of `K_{3,m}` as laid out by
/// [`gen_complete_bipartite`]`(3, m)`: the 3-side at the root and one child
/// bag per right vertex.
pub fn explicit_k3m_partition(m: usize) -> TreePartition {
    let mut bags = vec![vec![0, 1, 2]];
    let mut edges = Vec::with_capacity(m);
    for j in 0..m {
        bags.push(vec![3 + j]);
        edges.push((0, j + 1));
    }
    TreePartition::new(bags, edges)
}
