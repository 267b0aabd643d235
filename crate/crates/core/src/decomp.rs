//! Decomposition models and their verifiers.
//!
//! Verifiers recompute every property from scratch and report exactly one
//! witness: the first failure in a fixed scan order (tree structure, then
//! coverage, then edge conditions, scanning nodes and vertices by id).

use std::collections::{HashSet, VecDeque};

use thiserror::Error;

use crate::graph::Graph;

/// Index-level problems that make a decomposition impossible to interpret.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructuralError {
    #[error("tree edge {index} references node {node}, but there are {nodes} nodes")]
    NodeOutOfRange { index: usize, node: usize, nodes: usize },
    #[error("bag {node} contains vertex {vertex}, but the graph has {n} vertices")]
    VertexOutOfRange { node: usize, vertex: usize, n: usize },
    #[error("bag {node} lists vertex {vertex} twice")]
    DuplicateInBag { node: usize, vertex: usize },
    #[error("root {root} is not a node ({nodes} nodes)")]
    RootOutOfRange { root: usize, nodes: usize },
    #[error("tree edge {index} is a self-loop at node {node}")]
    TreeSelfLoop { index: usize, node: usize },
}

/// A clause of a decomposition definition that does not hold, with its witness.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Violation {
    #[error("tree edge {0}-{1} closes a cycle")]
    TreeCycle(usize, usize),
    #[error("tree is disconnected: node {0} is unreachable from node 0")]
    TreeDisconnected(usize),
    #[error("vertex {0} is in no bag")]
    VertexUncovered(usize),
    #[error("edge {0}-{1} is not contained in any bag")]
    EdgeUncovered(usize, usize),
    #[error("bags containing vertex {0} do not form a subtree")]
    OccurrenceDisconnected(usize),
    #[error("vertex {vertex} is in bags {first} and {second}")]
    VertexInTwoBags { vertex: usize, first: usize, second: usize },
    #[error("bag {0} is empty")]
    EmptyBag(usize),
    #[error("edge {u}-{v} joins bags {bag_u} and {bag_v}, which are neither equal nor adjacent")]
    EdgeNotLocal {
        u: usize,
        v: usize,
        bag_u: usize,
        bag_v: usize,
    },
    #[error("vertex {vertex} appears in {count} bags")]
    TooManyOccurrences { vertex: usize, count: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("malformed decomposition: {0}")]
    Structural(#[from] StructuralError),
    #[error("invalid decomposition: {0}")]
    Violation(#[from] Violation),
}

impl VerifyError {
    pub fn violation(&self) -> Option<&Violation> {
        match self {
            VerifyError::Violation(v) => Some(v),
            VerifyError::Structural(_) => None,
        }
    }
}

/// Tree decomposition: tree over nodes `0..bags.len()` with covering bags.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
    pub root: Option<usize>,
}

/// Tree-partition: tree over nodes with pairwise disjoint, covering bags.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TreePartition {
    pub bags: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
}

/// Tree-cut decomposition: rooted tree whose nonempty bags partition V.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TreeCutDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
    pub root: usize,
}

/// Recomputed tree-cut quantities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TcdReport {
    pub width: usize,
    pub nice: bool,
    /// First thin node (in id order) whose subtree has a neighbour in a sibling subtree.
    pub non_nice_node: Option<usize>,
    /// `|cut(e(t))|`; zero at the root.
    pub adhesion: Vec<usize>,
    pub torso: Vec<usize>,
    pub parent: Vec<Option<usize>>,
}

/// Adjacency lists of a tree given as an edge list.
pub fn tree_adjacency(nodes: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); nodes];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    adj
}

/// BFS parents and order from `root`.
pub fn root_tree(adj: &[Vec<usize>], root: usize) -> (Vec<Option<usize>>, Vec<usize>) {
    let mut parent = vec![None; adj.len()];
    let mut seen = vec![false; adj.len()];
    let mut order = Vec::with_capacity(adj.len());
    let mut queue = VecDeque::from([root]);
    seen[root] = true;
    while let Some(t) = queue.pop_front() {
        order.push(t);
        for &c in &adj[t] {
            if !seen[c] {
                seen[c] = true;
                parent[c] = Some(t);
                queue.push_back(c);
            }
        }
    }
    (parent, order)
}

fn check_indices(
    g: &Graph,
    bags: &[Vec<usize>],
    edges: &[(usize, usize)],
    root: Option<usize>,
) -> Result<(), StructuralError> {
    let nodes = bags.len();
    let n = g.n();
    let mut mark = vec![usize::MAX; n];
    for (node, bag) in bags.iter().enumerate() {
        for &vertex in bag {
            if vertex >= n {
                return Err(StructuralError::VertexOutOfRange { node, vertex, n });
            }
            if mark[vertex] == node {
                return Err(StructuralError::DuplicateInBag { node, vertex });
            }
            mark[vertex] = node;
        }
    }
    for (index, &(a, b)) in edges.iter().enumerate() {
        for node in [a, b] {
            if node >= nodes {
                return Err(StructuralError::NodeOutOfRange { index, node, nodes });
            }
        }
        if a == b {
            return Err(StructuralError::TreeSelfLoop { index, node: a });
        }
    }
    if let Some(root) = root {
        if root >= nodes {
            return Err(StructuralError::RootOutOfRange { root, nodes });
        }
    }
    Ok(())
}

fn check_tree(nodes: usize, edges: &[(usize, usize)]) -> Result<(), Violation> {
    let mut uf: Vec<usize> = (0..nodes).collect();
    fn find(uf: &mut [usize], mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
        if ra == rb {
            return Err(Violation::TreeCycle(a, b));
        }
        uf[ra] = rb;
    }
    if nodes > 0 {
        let r0 = find(&mut uf, 0);
        if let Some(t) = (1..nodes).find(|&t| find(&mut uf, t) != r0) {
            return Err(Violation::TreeDisconnected(t));
        }
    }
    Ok(())
}

impl TreeDecomposition {
    pub fn new(bags: Vec<Vec<usize>>, edges: Vec<(usize, usize)>) -> Self {
        TreeDecomposition {
            bags,
            edges,
            root: None,
        }
    }

    pub fn single_bag(vertices: Vec<usize>) -> Self {
        TreeDecomposition::new(vec![vertices], Vec::new())
    }

    pub fn num_nodes(&self) -> usize {
        self.bags.len()
    }

    /// `max |X_i| - 1`, saturating at 0.
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }

    pub fn tree_adjacency(&self) -> Vec<Vec<usize>> {
        tree_adjacency(self.num_nodes(), &self.edges)
    }

    /// For each vertex, the sorted list of nodes whose bag contains it.
    pub fn occurrences(&self, n: usize) -> Vec<Vec<usize>> {
        let mut occ = vec![Vec::new(); n];
        for (t, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                occ[v].push(t);
            }
        }
        occ
    }

    /// Restriction to `vertices` (sorted, deduplicated), relabelled to local
    /// ids `0..vertices.len()`. Nodes that see none of the vertices are dropped;
    /// the surviving pieces are reconnected, which keeps the result valid for
    /// the induced subgraph.
    pub fn restrict(&self, vertices: &[usize], occ: &[Vec<usize>], tree_adj: &[Vec<usize>]) -> TreeDecomposition {
        let mut kept: Vec<usize> = vertices.iter().flat_map(|&v| occ[v].iter().copied()).collect();
        kept.sort_unstable();
        kept.dedup();
        if kept.is_empty() {
            return TreeDecomposition::default();
        }
        let mut local_node = std::collections::HashMap::with_capacity(kept.len());
        for (i, &t) in kept.iter().enumerate() {
            local_node.insert(t, i);
        }
        let mut bags = vec![Vec::new(); kept.len()];
        for (lv, &v) in vertices.iter().enumerate() {
            for t in &occ[v] {
                bags[local_node[t]].push(lv);
            }
        }
        let mut edges = Vec::new();
        for (i, &t) in kept.iter().enumerate() {
            for s in &tree_adj[t] {
                if let Some(&j) = local_node.get(s) {
                    if i < j {
                        edges.push((i, j));
                    }
                }
            }
        }
        // Reconnect pieces that only met through dropped nodes.
        let mut uf: Vec<usize> = (0..kept.len()).collect();
        fn find(uf: &mut [usize], mut x: usize) -> usize {
            while uf[x] != x {
                uf[x] = uf[uf[x]];
                x = uf[x];
            }
            x
        }
        for &(a, b) in &edges {
            let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
            uf[ra] = rb;
        }
        for i in 1..kept.len() {
            let (r0, ri) = (find(&mut uf, 0), find(&mut uf, i));
            if r0 != ri {
                uf[ri] = r0;
                edges.push((0, i));
            }
        }
        TreeDecomposition::new(bags, edges)
    }
}

impl TreePartition {
    pub fn new(bags: Vec<Vec<usize>>, edges: Vec<(usize, usize)>) -> Self {
        TreePartition { bags, edges }
    }

    pub fn num_nodes(&self) -> usize {
        self.bags.len()
    }

    /// `max |B_i|`.
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Bag index of each vertex; `usize::MAX` for uncovered vertices.
    pub fn bag_of(&self, n: usize) -> Vec<usize> {
        let mut at = vec![usize::MAX; n];
        for (t, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                at[v] = t;
            }
        }
        at
    }

    /// Removes empty bags, reattaching their tree neighbours to one another.
    /// Width-neutral: no host edge can pass through an empty bag.
    pub fn prune_empty_bags(&mut self) {
        if !self.bags.iter().any(Vec::is_empty) {
            return;
        }
        let nodes = self.num_nodes();
        let mut adj: Vec<HashSet<usize>> = vec![HashSet::new(); nodes];
        for &(a, b) in &self.edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        let mut alive = vec![true; nodes];
        for t in 0..nodes {
            if !self.bags[t].is_empty() {
                continue;
            }
            let mut nbrs: Vec<usize> = adj[t].drain().collect();
            nbrs.sort_unstable();
            for &s in &nbrs {
                adj[s].remove(&t);
            }
            if let Some((&hub, rest)) = nbrs.split_first() {
                for &s in rest {
                    adj[hub].insert(s);
                    adj[s].insert(hub);
                }
            }
            alive[t] = false;
        }
        let mut new_id = vec![usize::MAX; nodes];
        let mut bags = Vec::new();
        for t in 0..nodes {
            if alive[t] {
                new_id[t] = bags.len();
                bags.push(std::mem::take(&mut self.bags[t]));
            }
        }
        let mut edges = Vec::new();
        for t in 0..nodes {
            if !alive[t] {
                continue;
            }
            for &s in &adj[t] {
                if t < s {
                    edges.push((new_id[t], new_id[s]));
                }
            }
        }
        edges.sort_unstable();
        self.bags = bags;
        self.edges = edges;
    }

    /// Sorts every bag and normalises tree edges to `(min, max)` in order.
    pub fn canonicalize(&mut self) {
        for bag in &mut self.bags {
            bag.sort_unstable();
        }
        for e in &mut self.edges {
            *e = (e.0.min(e.1), e.0.max(e.1));
        }
        self.edges.sort_unstable();
    }
}

/// Width of a valid tree decomposition, or the first violated clause.
pub fn verify_td(g: &Graph, td: &TreeDecomposition) -> Result<usize, VerifyError> {
    check_indices(g, &td.bags, &td.edges, td.root)?;
    let nodes = td.num_nodes();
    check_tree(nodes, &td.edges)?;
    let occ = td.occurrences(g.n());
    if let Some(v) = occ.iter().position(Vec::is_empty) {
        return Err(Violation::VertexUncovered(v).into());
    }
    for (u, v) in g.edges() {
        if !sorted_intersect(&occ[u], &occ[v]) {
            return Err(Violation::EdgeUncovered(u, v).into());
        }
    }
    let mut shared_edges = vec![0usize; g.n()];
    let mut in_a = vec![usize::MAX; g.n()];
    for (i, &(a, b)) in td.edges.iter().enumerate() {
        for &v in &td.bags[a] {
            in_a[v] = i;
        }
        for &v in &td.bags[b] {
            if in_a[v] == i {
                shared_edges[v] += 1;
            }
        }
    }
    if let Some(v) = (0..g.n()).find(|&v| shared_edges[v] + 1 != occ[v].len()) {
        return Err(Violation::OccurrenceDisconnected(v).into());
    }
    Ok(td.width())
}

/// Tree decomposition check plus the two-bags-per-vertex rule.
pub fn verify_domino(g: &Graph, td: &TreeDecomposition) -> Result<usize, VerifyError> {
    let width = verify_td(g, td)?;
    let occ = td.occurrences(g.n());
    if let Some(v) = (0..g.n()).find(|&v| occ[v].len() >= 3) {
        return Err(Violation::TooManyOccurrences {
            vertex: v,
            count: occ[v].len(),
        }
        .into());
    }
    Ok(width)
}

/// Width of a valid tree-partition, or the first violated clause.
pub fn verify_tp(g: &Graph, tp: &TreePartition) -> Result<usize, VerifyError> {
    check_indices(g, &tp.bags, &tp.edges, None)?;
    check_tree(tp.num_nodes(), &tp.edges)?;
    let at = partition_index(g.n(), &tp.bags)?;
    if let Some(t) = tp.bags.iter().position(Vec::is_empty) {
        return Err(Violation::EmptyBag(t).into());
    }
    let tree_edges: HashSet<(usize, usize)> = tp.edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    for (u, v) in g.edges() {
        let (a, b) = (at[u], at[v]);
        if a != b && !tree_edges.contains(&(a.min(b), a.max(b))) {
            return Err(Violation::EdgeNotLocal {
                u,
                v,
                bag_u: a,
                bag_v: b,
            }
            .into());
        }
    }
    Ok(tp.width())
}

/// Tree-cut decomposition check; recomputes cut sizes, adhesion, torso sizes
/// and niceness from the host graph.
pub fn verify_tcd(g: &Graph, tcd: &TreeCutDecomposition) -> Result<TcdReport, VerifyError> {
    let nodes = tcd.bags.len();
    if nodes == 0 {
        return Err(StructuralError::RootOutOfRange { root: tcd.root, nodes }.into());
    }
    check_indices(g, &tcd.bags, &tcd.edges, Some(tcd.root))?;
    check_tree(nodes, &tcd.edges)?;
    let at = partition_index(g.n(), &tcd.bags)?;

    let adj = tree_adjacency(nodes, &tcd.edges);
    let (parent, order) = root_tree(&adj, tcd.root);
    let mut depth = vec![0usize; nodes];
    for &t in &order {
        if let Some(p) = parent[t] {
            depth[t] = depth[p] + 1;
        }
    }
    // cut[t] counts host edges crossing the tree edge between t and its parent.
    let mut cut = vec![0usize; nodes];
    for (u, v) in g.edges() {
        let (mut a, mut b) = (at[u], at[v]);
        while a != b {
            if depth[a] >= depth[b] {
                cut[a] += 1;
                a = parent[a].expect("non-root node has a parent");
            } else {
                cut[b] += 1;
                b = parent[b].expect("non-root node has a parent");
            }
        }
    }
    let adhesion = cut.clone();
    let mut torso: Vec<usize> = tcd.bags.iter().map(Vec::len).collect();
    for t in 0..nodes {
        if let Some(p) = parent[t] {
            if cut[t] >= 3 {
                torso[t] += 1;
                torso[p] += 1;
            }
        }
    }
    let width = (0..nodes).map(|t| adhesion[t].max(torso[t])).max().unwrap_or(0);

    // Euler intervals for subtree membership.
    let mut tin = vec![0usize; nodes];
    let mut tout = vec![0usize; nodes];
    let mut clock = 0;
    let mut stack = vec![(tcd.root, false)];
    while let Some((t, done)) = stack.pop() {
        if done {
            tout[t] = clock;
            continue;
        }
        tin[t] = clock;
        clock += 1;
        stack.push((t, true));
        for &c in adj[t].iter().rev() {
            if parent[c] == Some(t) {
                stack.push((c, false));
            }
        }
    }
    let inside = |x: usize, t: usize| tin[t] <= tin[x] && tin[x] < tout[t];

    let mut non_nice_node = None;
    'nodes: for t in 0..nodes {
        let Some(p) = parent[t] else { continue };
        if adhesion[t] > 2 {
            continue;
        }
        for (u, v) in g.edges() {
            for (x, y) in [(u, v), (v, u)] {
                let (bx, by) = (at[x], at[y]);
                if inside(bx, t) && !inside(by, t) && inside(by, p) && by != p {
                    non_nice_node = Some(t);
                    break 'nodes;
                }
            }
        }
    }
    Ok(TcdReport {
        width,
        nice: non_nice_node.is_none(),
        non_nice_node,
        adhesion,
        torso,
        parent,
    })
}

fn partition_index(n: usize, bags: &[Vec<usize>]) -> Result<Vec<usize>, Violation> {
    let mut at = vec![usize::MAX; n];
    for (t, bag) in bags.iter().enumerate() {
        for &v in bag {
            if at[v] != usize::MAX {
                return Err(Violation::VertexInTwoBags {
                    vertex: v,
                    first: at[v],
                    second: t,
                });
            }
            at[v] = t;
        }
    }
    if let Some(v) = at.iter().position(|&t| t == usize::MAX) {
        return Err(Violation::VertexUncovered(v));
    }
    Ok(at)
}

fn sorted_intersect(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges.iter().copied()).unwrap()
    }

    fn c4() -> Graph {
        g(4, &[(0, 1), (1, 2), (2, 3), (0, 3)])
    }

    #[test]
    fn td_examples() {
        let k2 = g(2, &[(0, 1)]);
        assert_eq!(verify_td(&k2, &TreeDecomposition::single_bag(vec![0, 1])), Ok(1));
        let p3 = g(3, &[(0, 1), (1, 2)]);
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![1, 2]], vec![(0, 1)]);
        assert_eq!(verify_td(&p3, &td), Ok(1));
        let c3 = g(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(verify_td(&c3, &td), Err(Violation::EdgeUncovered(0, 2).into()));
    }

    #[test]
    fn td_rejects_broken_subtree_and_tree() {
        let p3 = g(3, &[(0, 1), (1, 2)]);
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![2], vec![1, 2]], vec![(0, 1), (1, 2)]);
        assert_eq!(verify_td(&p3, &td), Err(Violation::OccurrenceDisconnected(1).into()));
        let cyc = TreeDecomposition::new(vec![vec![0, 1], vec![1, 2], vec![1]], vec![(0, 1), (1, 2), (2, 0)]);
        assert_eq!(verify_td(&p3, &cyc), Err(Violation::TreeCycle(2, 0).into()));
        let bad = TreeDecomposition::new(vec![vec![0, 7]], vec![]);
        assert!(matches!(verify_td(&p3, &bad), Err(VerifyError::Structural(_))));
    }

    #[test]
    fn tp_examples() {
        let p4 = g(4, &[(0, 1), (1, 2), (2, 3)]);
        let tp = TreePartition::new((0..4).map(|v| vec![v]).collect(), vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(verify_tp(&p4, &tp), Ok(1));
        let ok = TreePartition::new(vec![vec![0, 3], vec![1, 2]], vec![(0, 1)]);
        assert_eq!(verify_tp(&c4(), &ok), Ok(2));
        assert_eq!(
            verify_tp(&c4(), &tp),
            Err(Violation::EdgeNotLocal {
                u: 0,
                v: 3,
                bag_u: 0,
                bag_v: 3
            }
            .into())
        );
    }

    #[test]
    fn tp_partition_errors() {
        let two = TreePartition::new(vec![vec![0, 3], vec![1, 2, 3]], vec![(0, 1)]);
        assert_eq!(
            verify_tp(&c4(), &two),
            Err(Violation::VertexInTwoBags {
                vertex: 3,
                first: 0,
                second: 1
            }
            .into())
        );
        let missing = TreePartition::new(vec![vec![0, 3], vec![1]], vec![(0, 1)]);
        assert_eq!(verify_tp(&c4(), &missing), Err(Violation::VertexUncovered(2).into()));
        let empty = TreePartition::new(vec![vec![0, 3], vec![1, 2], vec![]], vec![(0, 1), (1, 2)]);
        assert_eq!(verify_tp(&c4(), &empty), Err(Violation::EmptyBag(2).into()));
    }

    #[test]
    fn pruning_keeps_validity() {
        let mut tp = TreePartition::new(vec![vec![0, 3], vec![], vec![1, 2]], vec![(0, 1), (1, 2)]);
        tp.prune_empty_bags();
        assert_eq!(verify_tp(&c4(), &tp), Ok(2));
    }

    #[test]
    fn domino_examples() {
        let p3 = g(3, &[(0, 1), (1, 2)]);
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![1, 2]], vec![(0, 1)]);
        assert_eq!(verify_domino(&p3, &td), Ok(1));
        let p5 = g(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        let td = TreeDecomposition::new(
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4]],
            vec![(0, 1), (1, 2), (2, 3)],
        );
        assert_eq!(verify_domino(&p5, &td), Ok(1));
        let star = g(4, &[(0, 1), (0, 2), (0, 3)]);
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![0, 2], vec![0, 3]], vec![(0, 1), (1, 2)]);
        assert_eq!(
            verify_domino(&star, &td),
            Err(Violation::TooManyOccurrences { vertex: 0, count: 3 }.into())
        );
    }

    #[test]
    fn tcd_examples() {
        let k2 = g(2, &[(0, 1)]);
        let one = TreeCutDecomposition {
            bags: vec![vec![0, 1]],
            edges: vec![],
            root: 0,
        };
        let r = verify_tcd(&k2, &one).unwrap();
        assert_eq!((r.width, r.nice), (2, true));
        let split = TreeCutDecomposition {
            bags: vec![vec![0], vec![1]],
            edges: vec![(0, 1)],
            root: 0,
        };
        let r = verify_tcd(&k2, &split).unwrap();
        assert_eq!(r.adhesion, vec![0, 1]);
        assert_eq!(r.torso, vec![1, 1]);
        assert_eq!((r.width, r.nice), (1, true));
        let p3 = g(3, &[(0, 1), (1, 2)]);
        let star = TreeCutDecomposition {
            bags: vec![vec![1], vec![0], vec![2]],
            edges: vec![(0, 1), (0, 2)],
            root: 0,
        };
        let r = verify_tcd(&p3, &star).unwrap();
        assert_eq!(r.adhesion, vec![0, 1, 1]);
        assert_eq!(r.torso[0], 1);
        assert_eq!((r.width, r.nice), (1, true));
    }

    #[test]
    fn tcd_detects_non_nice_and_bold_edges() {
        // Two thin leaf children joined by an edge.
        let p3 = g(3, &[(0, 1), (1, 2)]);
        let tcd = TreeCutDecomposition {
            bags: vec![vec![], vec![0, 1], vec![2]],
            edges: vec![(0, 1), (0, 2)],
            root: 0,
        };
        let r = verify_tcd(&p3, &tcd).unwrap();
        assert!(!r.nice);
        assert_eq!(r.non_nice_node, Some(1));

        // K_4 split 1 | 3: cut of size 3 makes the tree edge bold.
        let k4 = g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let tcd = TreeCutDecomposition {
            bags: vec![vec![1, 2, 3], vec![0]],
            edges: vec![(0, 1)],
            root: 0,
        };
        let r = verify_tcd(&k4, &tcd).unwrap();
        assert_eq!(r.adhesion[1], 3);
        assert_eq!(r.torso, vec![4, 2]);
        assert_eq!(r.width, 4);
    }

    #[test]
    fn restrict_drops_unrelated_nodes() {
        let p4 = g(4, &[(0, 1), (1, 2), (2, 3)]);
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![1, 2], vec![2, 3]], vec![(0, 1), (1, 2)]);
        let occ = td.occurrences(4);
        let adj = td.tree_adjacency();
        let r = td.restrict(&[2, 3], &occ, &adj);
        let (sub, _) = p4.induced(&[2, 3]);
        assert_eq!(verify_td(&sub, &r), Ok(1));
        assert_eq!(r.num_nodes(), 2);
    }
}
