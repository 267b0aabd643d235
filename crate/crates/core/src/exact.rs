//! Exhaustive solvers for tiny graphs: tree-partition-width, domino treewidth,
//! and brute-force minimum separators.
//!
//! Both width searches grow a rooted decomposition bag by bag. A component of
//! what remains below a bag must sit in one child subtree, and that child's
//! bag must contain every neighbour the component has in the bag above.

use std::collections::HashMap;

use crate::decomp::{TreeDecomposition, TreePartition};
use crate::graph::Graph;
use crate::CapacityError;

pub const EXACT_TPW_CAP: usize = 12;
pub const EXACT_DOMINO_CAP: usize = 10;

/// Result of a width search bounded by `kmax`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Exact<W> {
    Width { width: usize, witness: W },
    Greater,
}

impl<W> Exact<W> {
    pub fn width(&self) -> Option<usize> {
        match self {
            Exact::Width { width, .. } => Some(*width),
            Exact::Greater => None,
        }
    }
}

fn masks(g: &Graph) -> Vec<u64> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | (1 << u)))
        .collect()
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let b = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(b)
    })
}

fn neighborhood(nb: &[u64], set: u64) -> u64 {
    bits(set).fold(0, |acc, v| acc | nb[v])
}

/// Connected components of the subgraph induced by `set`, by lowest bit.
fn components(nb: &[u64], set: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut left = set;
    while left != 0 {
        let mut comp = left & left.wrapping_neg();
        loop {
            let grown = (comp | neighborhood(nb, comp)) & set;
            if grown == comp {
                break;
            }
            comp = grown;
        }
        out.push(comp);
        left &= !comp;
    }
    out
}

/// Calls `f` on `base ∪ E` for subsets `E ⊆ pool` with `|E| ≤ budget`, in
/// order of increasing `|E|`; stops when `f` returns true.
fn for_supersets(base: u64, pool: u64, budget: usize, f: &mut dyn FnMut(u64) -> bool) -> bool {
    let items: Vec<usize> = bits(pool).collect();
    fn rec(items: &[usize], start: usize, left: usize, cur: u64, f: &mut dyn FnMut(u64) -> bool) -> bool {
        if left == 0 {
            return f(cur);
        }
        for i in start..items.len() {
            if rec(items, i + 1, left - 1, cur | (1 << items[i]), f) {
                return true;
            }
        }
        false
    }
    for size in 0..=budget.min(items.len()) {
        if rec(&items, 0, size, base, f) {
            return true;
        }
    }
    false
}

fn check_cap(g: &Graph, cap: usize) -> Result<(), CapacityError> {
    let limit = cap.min(63);
    if g.n() > limit {
        return Err(CapacityError { n: g.n(), cap: limit });
    }
    Ok(())
}

struct Tpw<'a> {
    nb: &'a [u64],
    k: usize,
    memo: HashMap<(u64, u64), bool>,
}

impl Tpw<'_> {
    /// Whether `d` has a tree-partition of width `k` whose root bag contains `req`.
    fn feasible(&mut self, d: u64, req: u64) -> bool {
        if req.count_ones() as usize > self.k {
            return false;
        }
        if d.count_ones() as usize <= self.k {
            return true;
        }
        if let Some(&r) = self.memo.get(&(d, req)) {
            return r;
        }
        let r = self.choose(d, req).is_some();
        self.memo.insert((d, req), r);
        r
    }

    fn choose(&mut self, d: u64, req: u64) -> Option<u64> {
        if d.count_ones() as usize <= self.k {
            return Some(d);
        }
        let budget = self.k - req.count_ones() as usize;
        let mut found = None;
        let nb = self.nb;
        for_supersets(req, d & !req, budget, &mut |bag| {
            let rest = d & !bag;
            let nbag = neighborhood(nb, bag);
            let ok = components(nb, rest).into_iter().all(|c| self.feasible(c, nbag & c));
            if ok {
                found = Some(bag);
            }
            ok
        });
        found
    }

    fn build(&mut self, d: u64, req: u64, parent: Option<usize>, out: &mut TreePartition) {
        let bag = self.choose(d, req).expect("called only on feasible states");
        let id = out.bags.len();
        out.bags.push(bits(bag).collect());
        if let Some(p) = parent {
            out.edges.push((p, id));
        }
        let nbag = neighborhood(self.nb, bag);
        for c in components(self.nb, d & !bag) {
            self.build(c, nbag & c, Some(id), out);
        }
    }
}

/// Minimum tree-partition width if it is at most `kmax`, with a witness.
pub fn exact_tpw(g: &Graph, kmax: usize) -> Result<Exact<TreePartition>, CapacityError> {
    exact_tpw_with_cap(g, kmax, EXACT_TPW_CAP)
}

pub fn exact_tpw_with_cap(g: &Graph, kmax: usize, cap: usize) -> Result<Exact<TreePartition>, CapacityError> {
    check_cap(g, cap)?;
    let n = g.n();
    if n == 0 {
        return Ok(Exact::Width {
            width: 0,
            witness: TreePartition::default(),
        });
    }
    let nb = masks(g);
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let comps = components(&nb, all);
    for k in 1..=kmax {
        let mut s = Tpw {
            nb: &nb,
            k,
            memo: HashMap::new(),
        };
        if comps.iter().all(|&c| s.feasible(c, c & c.wrapping_neg())) {
            let mut tp = TreePartition::default();
            for &c in &comps {
                let first = tp.bags.len();
                s.build(c, c & c.wrapping_neg(), None, &mut tp);
                if first > 0 {
                    tp.edges.push((0, first));
                }
            }
            tp.canonicalize();
            return Ok(Exact::Width { width: k, witness: tp });
        }
    }
    Ok(Exact::Greater)
}

struct Domino<'a> {
    nb: &'a [u64],
    k: usize,
    memo: HashMap<(u64, u64), bool>,
}

impl Domino<'_> {
    /// Groups of `d` below a bag `x` whose still-reusable part is `avail`:
    /// components sharing a reusable neighbour must share the child. `None`
    /// if `d` touches a vertex that already has both of its bags.
    fn groups(&self, d: u64, x: u64, avail: u64) -> Option<Vec<(u64, u64)>> {
        if neighborhood(self.nb, x & !avail) & d != 0 {
            return None;
        }
        let mut groups: Vec<(u64, u64)> = Vec::new();
        for c in components(self.nb, d) {
            let mut merged = (c, neighborhood(self.nb, c) & avail);
            // Absorb every group sharing a reusable vertex, until none does.
            while let Some(i) = groups.iter().position(|&(_, ga)| ga & merged.1 != 0) {
                let (gd, ga) = groups.swap_remove(i);
                merged = (merged.0 | gd, merged.1 | ga);
            }
            groups.push(merged);
        }
        groups.sort_unstable();
        Some(groups)
    }

    fn feasible_below(&mut self, d: u64, x: u64, avail: u64) -> bool {
        if d == 0 {
            return true;
        }
        match self.groups(d, x, avail) {
            None => false,
            Some(gs) => gs.into_iter().all(|(gd, gx)| self.feasible_group(gd, gx)),
        }
    }

    /// Whether group `dg` can hang below a child bag that reuses `xg`.
    fn feasible_group(&mut self, dg: u64, xg: u64) -> bool {
        if let Some(&r) = self.memo.get(&(dg, xg)) {
            return r;
        }
        let r = self.choose(dg, xg).is_some();
        self.memo.insert((dg, xg), r);
        r
    }

    fn choose(&mut self, dg: u64, xg: u64) -> Option<u64> {
        let required = neighborhood(self.nb, xg) & dg;
        let used = (xg | required).count_ones() as usize;
        if used > self.k + 1 {
            return None;
        }
        let mut found = None;
        for_supersets(required, dg & !required, self.k + 1 - used, &mut |y| {
            if y == 0 {
                return false;
            }
            let ok = self.feasible_below(dg & !y, xg | y, y);
            if ok {
                found = Some(y);
            }
            ok
        });
        found
    }

    fn build_below(&mut self, d: u64, x: u64, avail: u64, parent: usize, out: &mut TreeDecomposition) {
        if d == 0 {
            return;
        }
        for (gd, gx) in self.groups(d, x, avail).expect("feasible state") {
            let y = self.choose(gd, gx).expect("feasible group");
            let id = out.bags.len();
            out.bags.push(bits(gx | y).collect());
            out.edges.push((parent, id));
            self.build_below(gd & !y, gx | y, y, id, out);
        }
    }
}

/// Minimum width of a tree decomposition in which every vertex lies in at
/// most two bags, if it is at most `kmax`, with a witness.
pub fn exact_domino_tw(g: &Graph, kmax: usize) -> Result<Exact<TreeDecomposition>, CapacityError> {
    exact_domino_tw_with_cap(g, kmax, EXACT_DOMINO_CAP)
}

pub fn exact_domino_tw_with_cap(g: &Graph, kmax: usize, cap: usize) -> Result<Exact<TreeDecomposition>, CapacityError> {
    check_cap(g, cap)?;
    let n = g.n();
    if n == 0 {
        return Ok(Exact::Width {
            width: 0,
            witness: TreeDecomposition::default(),
        });
    }
    let nb = masks(g);
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let comps = components(&nb, all);
    let delta = g.max_degree();
    for k in 0..=kmax {
        // A vertex sits in at most two bags of at most k+1 vertices.
        if delta > 2 * k {
            continue;
        }
        let mut s = Domino {
            nb: &nb,
            k,
            memo: HashMap::new(),
        };
        let mut roots = Vec::new();
        for &c in &comps {
            let low = c & c.wrapping_neg();
            let mut root = None;
            for_supersets(low, c & !low, k, &mut |x0| {
                let ok = s.feasible_below(c & !x0, x0, x0);
                if ok {
                    root = Some(x0);
                }
                ok
            });
            match root {
                Some(x0) => roots.push((c, x0)),
                None => break,
            }
        }
        if roots.len() < comps.len() {
            continue;
        }
        let mut td = TreeDecomposition::default();
        for (c, x0) in roots {
            let id = td.bags.len();
            td.bags.push(bits(x0).collect());
            if id > 0 {
                td.edges.push((0, id));
            }
            s.build_below(c & !x0, x0, x0, id, &mut td);
        }
        return Ok(Exact::Width { width: k, witness: td });
    }
    Ok(Exact::Greater)
}

/// Minimum number of vertices whose removal separates `s` from `t` in `G - st`,
/// by enumerating all subsets of the other vertices.
pub fn brute_mu(g: &Graph, s: usize, t: usize) -> usize {
    assert!(s != t, "brute_mu needs two distinct vertices");
    assert!(g.n() <= 16, "brute_mu enumerates subsets of at most 16 vertices");
    let n = g.n();
    let mut nb = masks(g);
    nb[s] &= !(1 << t);
    nb[t] &= !(1 << s);
    let others: Vec<usize> = (0..n).filter(|&v| v != s && v != t).collect();
    let all: u64 = (1u64 << n) - 1;
    let mut best = others.len();
    for sub in 0u64..(1 << others.len()) {
        let size = sub.count_ones() as usize;
        if size >= best {
            continue;
        }
        let removed = bits(sub).fold(0u64, |m, i| m | (1 << others[i]));
        let alive = all & !removed;
        let mut reach = 1u64 << s;
        loop {
            let grown = (reach | neighborhood(&nb, reach)) & alive;
            if grown == reach {
                break;
            }
            reach = grown;
        }
        if reach & (1 << t) == 0 {
            best = size;
        }
    }
    best
}
