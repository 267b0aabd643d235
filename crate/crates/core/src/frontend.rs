//! Step 1: tree decompositions by elimination heuristics or exact search,
//! certified treewidth lower bounds, and logarithmic-depth balancing.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashSet, VecDeque};

use crate::decomp::TreeDecomposition;
use crate::graph::Graph;
use crate::CapacityError;

pub const EXACT_TD_CAP: usize = 15;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    MinDegree,
    MinFill,
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Greedy elimination ordering. Ties go to the seed-salted hash and then to
/// the smaller id; seed 0 means plain id order.
pub fn heuristic_td(g: &Graph, strategy: Strategy, seed: u64) -> TreeDecomposition {
    let n = g.n();
    let salt = |v: usize| {
        if seed == 0 {
            0
        } else {
            splitmix(seed ^ (v as u64).wrapping_mul(0x2545_F491_4F6C_DD1D))
        }
    };
    let mut adj: Vec<HashSet<usize>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let score = |adj: &[HashSet<usize>], v: usize| -> usize {
        match strategy {
            Strategy::MinDegree => adj[v].len(),
            Strategy::MinFill => {
                let nb: Vec<usize> = adj[v].iter().copied().collect();
                let mut missing = 0;
                for (i, &a) in nb.iter().enumerate() {
                    for &b in &nb[i + 1..] {
                        if !adj[a].contains(&b) {
                            missing += 1;
                        }
                    }
                }
                missing
            }
        }
    };
    let mut current: Vec<usize> = (0..n).map(|v| score(&adj, v)).collect();
    let mut queue: BTreeSet<(usize, u64, usize)> = (0..n).map(|v| (current[v], salt(v), v)).collect();
    let mut order = Vec::with_capacity(n);
    let mut eliminated = vec![false; n];
    while let Some((_, _, v)) = queue.pop_first() {
        eliminated[v] = true;
        order.push(v);
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        for &a in &nb {
            adj[a].remove(&v);
        }
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        adj[v].clear();
        let mut dirty: BTreeSet<usize> = nb.iter().copied().collect();
        if strategy == Strategy::MinFill {
            for &a in &nb {
                dirty.extend(adj[a].iter().copied());
            }
        }
        for u in dirty {
            if eliminated[u] {
                continue;
            }
            let s = score(&adj, u);
            if s != current[u] {
                queue.remove(&(current[u], salt(u), u));
                current[u] = s;
                queue.insert((s, salt(u), u));
            }
        }
    }
    td_from_order(g, &order)
}

/// Tree decomposition induced by eliminating vertices in `order`: node `v` has
/// bag `{v} ∪ N⁺(v)` and hangs below its earliest-eliminated higher neighbour.
pub fn td_from_order(g: &Graph, order: &[usize]) -> TreeDecomposition {
    let n = g.n();
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut adj: Vec<HashSet<usize>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut bags = vec![Vec::new(); n];
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    let mut roots = Vec::new();
    for &v in order {
        let mut later: Vec<usize> = adj[v].iter().copied().collect();
        later.sort_unstable();
        for &a in &later {
            adj[a].remove(&v);
        }
        for (i, &a) in later.iter().enumerate() {
            for &b in &later[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        match later.iter().min_by_key(|&&u| pos[u]) {
            Some(&p) => edges.push((v, p)),
            None => roots.push(v),
        }
        let mut bag = later;
        bag.push(v);
        bag.sort_unstable();
        bags[v] = bag;
    }
    for w in roots.windows(2) {
        edges.push((w[0], w[1]));
    }
    TreeDecomposition::new(bags, edges)
}

/// `max(degeneracy, contraction degeneracy)` where the contraction variant
/// merges a minimum-degree vertex into its minimum-degree neighbour.
pub fn treewidth_lower_bound(g: &Graph) -> usize {
    min_degree_sweep(g, false).max(min_degree_sweep(g, true))
}

fn min_degree_sweep(g: &Graph, contract: bool) -> usize {
    let n = g.n();
    let mut adj: Vec<HashSet<usize>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut queue: BTreeSet<(usize, usize)> = (0..n).map(|v| (adj[v].len(), v)).collect();
    let mut best = 0;
    while let Some((d, v)) = queue.pop_first() {
        best = best.max(d);
        let nb: Vec<usize> = {
            let mut nb: Vec<usize> = adj[v].iter().copied().collect();
            nb.sort_unstable();
            nb
        };
        let target = if contract {
            nb.iter().copied().min_by_key(|&u| (adj[u].len(), u))
        } else {
            None
        };
        // Only neighbours of v change degree (the contraction target is one of them).
        for &u in &nb {
            queue.remove(&(adj[u].len(), u));
        }
        for &u in &nb {
            adj[u].remove(&v);
        }
        if let Some(t) = target {
            for &u in &nb {
                if u != t && adj[t].insert(u) {
                    adj[u].insert(t);
                }
            }
        }
        adj[v].clear();
        for &u in &nb {
            queue.insert((adj[u].len(), u));
        }
    }
    best
}

/// Exhaustive elimination-ordering search. Returns a decomposition of width
/// at most `k` if one exists.
pub fn exact_td(g: &Graph, k: usize) -> Result<Option<TreeDecomposition>, CapacityError> {
    exact_td_with_cap(g, k, EXACT_TD_CAP)
}

pub fn exact_td_with_cap(g: &Graph, k: usize, cap: usize) -> Result<Option<TreeDecomposition>, CapacityError> {
    let n = g.n();
    if n > cap || n > 31 {
        return Err(CapacityError { n, cap: cap.min(31) });
    }
    let nb: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | (1 << u)))
        .collect();
    let full: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
    // Number of later neighbours of v in the elimination graph once `set` is gone.
    let q = |set: u32, v: usize| -> u32 {
        let mut inner = nb[v] & set;
        loop {
            let mut grown = inner;
            let mut it = inner;
            while it != 0 {
                let x = it.trailing_zeros() as usize;
                it &= it - 1;
                grown |= nb[x] & set;
            }
            if grown == inner {
                break;
            }
            inner = grown;
        }
        let mut reach = nb[v];
        let mut it = inner;
        while it != 0 {
            let x = it.trailing_zeros() as usize;
            it &= it - 1;
            reach |= nb[x];
        }
        (reach & !set & !(1 << v)).count_ones()
    };
    let mut dead = vec![false; 1usize << n];
    let mut order = Vec::with_capacity(n);
    fn search(
        set: u32,
        full: u32,
        n: usize,
        k: usize,
        q: &dyn Fn(u32, usize) -> u32,
        dead: &mut [bool],
        order: &mut Vec<usize>,
    ) -> bool {
        if set == full {
            return true;
        }
        if dead[set as usize] {
            return false;
        }
        for v in 0..n {
            if set & (1 << v) != 0 || q(set, v) as usize > k {
                continue;
            }
            order.push(v);
            if search(set | (1 << v), full, n, k, q, dead, order) {
                return true;
            }
            order.pop();
        }
        dead[set as usize] = true;
        false
    }
    if search(0, full, n, k, &q, &mut dead, &mut order) {
        Ok(Some(td_from_order(g, &order)))
    } else {
        Ok(None)
    }
}

/// A rooted binary decomposition with tables for constant-time
/// "does `v` occur in the subtree of `c`" queries.
#[derive(Clone, Debug)]
pub struct BalancedTd {
    /// Bags are sorted; `td.root` is set.
    pub td: TreeDecomposition,
    pub root: usize,
    pub parent: Vec<Option<usize>>,
    pub children: Vec<Vec<usize>>,
    pub depth: Vec<usize>,
    /// Maximum node depth; 0 for a single bag.
    pub height: usize,
    tin: Vec<usize>,
    tout: Vec<usize>,
    /// Shallowest node containing each vertex, `usize::MAX` if none.
    top: Vec<usize>,
}

impl BalancedTd {
    /// Wraps an already rooted decomposition (root taken from `td.root`, else 0).
    pub fn from_rooted(n: usize, mut td: TreeDecomposition) -> Self {
        for bag in &mut td.bags {
            bag.sort_unstable();
        }
        let nodes = td.num_nodes();
        let root = td.root.unwrap_or(0);
        td.root = Some(root);
        let adj = td.tree_adjacency();
        let mut parent = vec![None; nodes];
        let mut children = vec![Vec::new(); nodes];
        let mut depth = vec![0; nodes];
        let mut tin = vec![0; nodes];
        let mut tout = vec![0; nodes];
        let mut clock = 0;
        if nodes > 0 {
            let mut stack = vec![(root, usize::MAX, false)];
            while let Some((t, p, done)) = stack.pop() {
                if done {
                    tout[t] = clock;
                    continue;
                }
                tin[t] = clock;
                clock += 1;
                if p != usize::MAX {
                    parent[t] = Some(p);
                    depth[t] = depth[p] + 1;
                    children[p].push(t);
                }
                stack.push((t, p, true));
                for &c in adj[t].iter().rev() {
                    if c != p {
                        stack.push((c, t, false));
                    }
                }
            }
        }
        let mut top = vec![usize::MAX; n];
        for (t, bag) in td.bags.iter().enumerate() {
            for &v in bag {
                if top[v] == usize::MAX || depth[t] < depth[top[v]] {
                    top[v] = t;
                }
            }
        }
        let height = depth.iter().copied().max().unwrap_or(0);
        BalancedTd {
            td,
            root,
            parent,
            children,
            depth,
            height,
            tin,
            tout,
            top,
        }
    }

    pub fn width(&self) -> usize {
        self.td.width()
    }

    pub fn bag(&self, t: usize) -> &[usize] {
        &self.td.bags[t]
    }

    pub fn bag_contains(&self, t: usize, v: usize) -> bool {
        self.td.bags[t].binary_search(&v).is_ok()
    }

    /// Whether node `x` lies in the subtree rooted at `c`.
    pub fn in_subtree(&self, x: usize, c: usize) -> bool {
        self.tin[c] <= self.tin[x] && self.tin[x] < self.tout[c]
    }

    /// Whether some bag in the subtree of `c` contains `v`.
    pub fn occurs_below(&self, v: usize, c: usize) -> bool {
        let t = self.top[v];
        t != usize::MAX && (self.in_subtree(t, c) || self.bag_contains(c, v))
    }

    pub fn is_binary(&self) -> bool {
        self.children.iter().all(|c| c.len() <= 2)
    }
}

/// Rebuilds `td` as a binary tree of logarithmic depth: each piece of the
/// decomposition tree is split at a centroid (or, for pieces with two
/// boundary edges, at the centroid's projection onto the path between them),
/// and the split node's bag absorbs the piece's boundary vertices. Children of
/// a split node are merged pairwise by size into a binary tree.
pub fn balance_td(g: &Graph, td: &TreeDecomposition) -> BalancedTd {
    let nodes = td.num_nodes();
    if nodes == 0 {
        return BalancedTd::from_rooted(g.n(), TreeDecomposition::default());
    }
    let sorted: Vec<Vec<usize>> = td
        .bags
        .iter()
        .map(|b| {
            let mut b = b.clone();
            b.sort_unstable();
            b
        })
        .collect();
    let mut b = Balancer {
        adj: td.tree_adjacency(),
        bags: &sorted,
        removed: vec![false; nodes],
        out_bags: Vec::new(),
        out_edges: Vec::new(),
        seen: vec![usize::MAX; nodes],
        stamp: 0,
    };
    let (root, _) = b.build(0);
    let mut out = TreeDecomposition::new(b.out_bags, b.out_edges);
    out.root = Some(root);
    BalancedTd::from_rooted(g.n(), out)
}

struct Balancer<'a> {
    adj: Vec<Vec<usize>>,
    bags: &'a [Vec<usize>],
    removed: Vec<bool>,
    out_bags: Vec<Vec<usize>>,
    out_edges: Vec<(usize, usize)>,
    seen: Vec<usize>,
    stamp: usize,
}

impl Balancer<'_> {
    /// Builds the piece containing `entry`; returns (output node, piece size).
    fn build(&mut self, entry: usize) -> (usize, usize) {
        self.stamp += 1;
        let stamp = self.stamp;
        // BFS over the piece, recording parents and boundary edges.
        let mut order = vec![entry];
        let mut parent = std::collections::HashMap::new();
        let mut boundary: Vec<(usize, usize)> = Vec::new();
        self.seen[entry] = stamp;
        let mut i = 0;
        while i < order.len() {
            let t = order[i];
            i += 1;
            for &s in &self.adj[t] {
                if self.removed[s] {
                    boundary.push((t, s));
                } else if self.seen[s] != stamp {
                    self.seen[s] = stamp;
                    parent.insert(s, t);
                    order.push(s);
                }
            }
        }
        let size = order.len();
        let mut sub = std::collections::HashMap::with_capacity(size);
        for &t in order.iter().rev() {
            let s = 1 + self.adj[t]
                .iter()
                .filter(|&&c| parent.get(&c) == Some(&t))
                .map(|c| sub[c])
                .sum::<usize>();
            sub.insert(t, s);
        }
        let mut centroid = entry;
        loop {
            let heavy = self.adj[centroid]
                .iter()
                .copied()
                .filter(|c| parent.get(c) == Some(&centroid))
                .find(|c| sub[c] * 2 > size);
            match heavy {
                Some(c) => centroid = c,
                None => break,
            }
        }
        let split = if boundary.len() >= 2 {
            debug_assert!(boundary.len() == 2);
            let (a1, a2) = (boundary[0].0, boundary[1].0);
            let mut on_path = HashSet::new();
            let ancestors = |mut x: usize| {
                let mut up = vec![x];
                while let Some(&p) = parent.get(&x) {
                    up.push(p);
                    x = p;
                }
                up
            };
            let (up1, up2) = (ancestors(a1), ancestors(a2));
            let set2: HashSet<usize> = up2.iter().copied().collect();
            let lca = *up1.iter().find(|x| set2.contains(x)).expect("piece is connected");
            for &x in up1.iter().take_while(|&&x| x != lca) {
                on_path.insert(x);
            }
            for &x in up2.iter().take_while(|&&x| x != lca) {
                on_path.insert(x);
            }
            on_path.insert(lca);
            self.projection(centroid, &on_path)
        } else {
            centroid
        };

        let mut bag: Vec<usize> = self.bags[split].clone();
        for &(a, o) in &boundary {
            for &v in &self.bags[a] {
                if self.bags[o].binary_search(&v).is_ok() {
                    bag.push(v);
                }
            }
        }
        bag.sort_unstable();
        bag.dedup();
        self.removed[split] = true;
        let me = self.out_bags.len();
        self.out_bags.push(bag.clone());

        let next: Vec<usize> = self.adj[split].iter().copied().filter(|&s| !self.removed[s]).collect();
        let mut kids = Vec::new();
        for s in next {
            kids.push(self.build(s));
        }
        // Pairwise merge by size; merge nodes repeat the split bag.
        let mut heap: BinaryHeap<Reverse<(usize, usize, usize)>> = kids
            .iter()
            .enumerate()
            .map(|(i, &(node, sz))| Reverse((sz, i, node)))
            .collect();
        let mut seq = kids.len();
        while heap.len() > 2 {
            let Reverse((s1, _, n1)) = heap.pop().expect("heap has > 2 entries");
            let Reverse((s2, _, n2)) = heap.pop().expect("heap has > 2 entries");
            let m = self.out_bags.len();
            self.out_bags.push(bag.clone());
            self.out_edges.push((m, n1));
            self.out_edges.push((m, n2));
            heap.push(Reverse((s1 + s2, seq, m)));
            seq += 1;
        }
        for Reverse((_, _, node)) in heap.into_sorted_vec() {
            self.out_edges.push((me, node));
        }
        (me, size)
    }

    /// Closest node of `path` to `x` inside the current piece.
    fn projection(&mut self, x: usize, path: &HashSet<usize>) -> usize {
        self.stamp += 1;
        let stamp = self.stamp;
        let mut queue = VecDeque::from([x]);
        self.seen[x] = stamp;
        while let Some(t) = queue.pop_front() {
            if path.contains(&t) {
                return t;
            }
            for &s in &self.adj[t] {
                if !self.removed[s] && self.seen[s] != stamp {
                    self.seen[s] = stamp;
                    queue.push_back(s);
                }
            }
        }
        unreachable!("the path lies in the same piece")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::verify_td;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }

    #[test]
    fn heuristic_examples() {
        for s in [Strategy::MinDegree, Strategy::MinFill] {
            for seed in [0, 7] {
                assert_eq!(verify_td(&path(9), &heuristic_td(&path(9), s, seed)), Ok(1));
                assert_eq!(verify_td(&cycle(6), &heuristic_td(&cycle(6), s, seed)), Ok(2));
                assert_eq!(verify_td(&complete(5), &heuristic_td(&complete(5), s, seed)), Ok(4));
            }
        }
        let g = Graph::from_edges(5, [(0, 1), (3, 4)]).unwrap();
        assert_eq!(verify_td(&g, &heuristic_td(&g, Strategy::MinFill, 3)), Ok(1));
    }

    #[test]
    fn heuristic_is_deterministic() {
        let g = cycle(12);
        assert_eq!(
            heuristic_td(&g, Strategy::MinFill, 42),
            heuristic_td(&g, Strategy::MinFill, 42)
        );
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(treewidth_lower_bound(&path(7)), 1);
        assert_eq!(treewidth_lower_bound(&complete(6)), 5);
        assert_eq!(treewidth_lower_bound(&cycle(4)), 2);
        assert_eq!(treewidth_lower_bound(&cycle(9)), 2);
        assert_eq!(treewidth_lower_bound(&Graph::empty(3)), 0);
    }

    #[test]
    fn exact_examples() {
        let td = exact_td(&path(4), 1).unwrap().unwrap();
        assert_eq!(verify_td(&path(4), &td), Ok(1));
        assert_eq!(exact_td(&cycle(4), 1).unwrap(), None);
        let td = exact_td(&complete(4), 3).unwrap().unwrap();
        assert_eq!(verify_td(&complete(4), &td), Ok(3));
        assert!(exact_td(&path(16), 1).is_err());
    }

    #[test]
    fn balance_single_bag() {
        let g = complete(3);
        let b = balance_td(&g, &TreeDecomposition::single_bag(vec![0, 1, 2]));
        assert_eq!(b.height, 0);
        assert_eq!(verify_td(&g, &b.td), Ok(2));
    }

    #[test]
    fn balance_long_path() {
        let g = path(1025);
        let td = TreeDecomposition::new(
            (0..1024).map(|i| vec![i, i + 1]).collect(),
            (1..1024).map(|i| (i - 1, i)).collect(),
        );
        let b = balance_td(&g, &td);
        assert!(verify_td(&g, &b.td).unwrap() <= 5);
        assert!(b.is_binary());
        assert!(b.height <= 44, "height {}", b.height);
    }

    #[test]
    fn subtree_queries_match_scan() {
        let g = cycle(10);
        let td = heuristic_td(&g, Strategy::MinDegree, 0);
        let b = balance_td(&g, &td);
        for c in 0..b.td.num_nodes() {
            for v in 0..10 {
                let scan = (0..b.td.num_nodes()).any(|x| b.in_subtree(x, c) && b.bag_contains(x, v));
                assert_eq!(b.occurs_below(v, c), scan);
            }
        }
    }
}
