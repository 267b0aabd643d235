//! Slow reference oracles and instance helpers shared by the integration tests.
#![allow(dead_code)]

use treepart::decomp::verify_td;
use treepart::frontend::{heuristic_td, Strategy};
use treepart::gadgets::{gen_gnp, gen_random_tree, TcmisInstance, TcmisVertex};
use treepart::{Graph, GraphBuilder, TreeDecomposition, TreePartition};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges.iter().copied()).unwrap()
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
}

/// Spine of `spine` vertices, each with `legs` pendant leaves.
pub fn caterpillar(spine: usize, legs: usize) -> Graph {
    let mut b = GraphBuilder::new(spine);
    for i in 0..spine {
        if i > 0 {
            b.add_edge(i - 1, i);
        }
        for x in b.add_vertices(legs) {
            b.add_edge(i, x);
        }
    }
    b.build()
}

/// Random graph with `n` in `lo..=hi` and density in `[pmin, pmax)`.
pub fn random_graph(seed: u64, lo: usize, hi: usize, pmin: f64, pmax: f64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let n = rng.gen_range(lo..=hi);
    let p = rng.gen_range(pmin..pmax);
    gen_gnp(n, p, seed)
}

/// Connected sparse graph: a random tree plus up to `extra` random edges that
/// keep the maximum degree at most `max_deg`.
pub fn tree_plus(seed: u64, n: usize, extra: usize, max_deg: usize) -> Graph {
    let t = gen_random_tree(n, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(31) + 7);
    let mut edges: Vec<(usize, usize)> = t.edges().collect();
    let mut deg: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut tries = 0;
    let mut added = 0;
    while added < extra && tries < 50 * (extra + 1) && n > 2 {
        tries += 1;
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let e = (u.min(v), u.max(v));
        if u == v || deg[u] >= max_deg || deg[v] >= max_deg || edges.contains(&e) {
            continue;
        }
        edges.push(e);
        deg[u] += 1;
        deg[v] += 1;
        added += 1;
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn min_fill(g: &Graph) -> TreeDecomposition {
    let td = heuristic_td(g, Strategy::MinFill, 0);
    verify_td(g, &td).expect("heuristic decompositions are valid");
    td
}

/// Maximum number of internally vertex-disjoint `s`-`t` paths that avoid the
/// edge `st`, by enumerating simple paths and packing their interiors.
pub fn menger_paths(g: &Graph, s: usize, t: usize) -> usize {
    assert!(g.n() <= 16);
    let mut interiors: Vec<u32> = Vec::new();
    fn walk(g: &Graph, x: usize, t: usize, s: usize, visited: u32, inner: u32, out: &mut Vec<u32>) {
        for &y in g.neighbors(x) {
            if y == t {
                if x != s {
                    out.push(inner);
                }
                continue;
            }
            if visited & (1 << y) == 0 {
                walk(g, y, t, s, visited | 1 << y, inner | 1 << y, out);
            }
        }
    }
    walk(g, s, t, s, 1 << s, 0, &mut interiors);
    interiors.sort_unstable();
    interiors.dedup();
    // Only inclusion-minimal interiors matter for a packing.
    let minimal: Vec<u32> = interiors
        .iter()
        .copied()
        .filter(|&a| !interiors.iter().any(|&b| b != a && b & a == b))
        .collect();
    fn pack(sets: &[u32], used: u32) -> usize {
        let Some(pos) = sets.iter().position(|&a| a & used == 0) else {
            return 0;
        };
        let a = sets[pos];
        let with = 1 + pack(&sets[pos + 1..], used | a);
        let without = pack(&sets[pos + 1..], used);
        with.max(without)
    }
    pack(&minimal, 0)
}

/// Tree-partition-width by enumerating set partitions: a partition admits a
/// tree exactly when its quotient graph is a forest. Returns the width and a
/// witness partition. Exponential; meant for `n <= 7`.
pub fn slow_tpw(g: &Graph) -> (usize, Vec<usize>) {
    let n = g.n();
    assert!(n <= 9);
    if n == 0 {
        return (0, vec![]);
    }
    let mut best = (usize::MAX, vec![]);
    let mut label = vec![0usize; n];
    fn rec(g: &Graph, v: usize, parts: usize, label: &mut Vec<usize>, best: &mut (usize, Vec<usize>)) {
        let n = g.n();
        if v == n {
            let mut size = vec![0usize; parts];
            for &l in label.iter() {
                size[l] += 1;
            }
            let width = *size.iter().max().unwrap();
            if width >= best.0 {
                return;
            }
            let mut qe: Vec<(usize, usize)> = g
                .edges()
                .filter(|&(a, b)| label[a] != label[b])
                .map(|(a, b)| (label[a].min(label[b]), label[a].max(label[b])))
                .collect();
            qe.sort_unstable();
            qe.dedup();
            let mut uf: Vec<usize> = (0..parts).collect();
            fn find(uf: &mut [usize], mut x: usize) -> usize {
                while uf[x] != x {
                    x = uf[x];
                }
                x
            }
            for (a, b) in qe {
                let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
                if ra == rb {
                    return;
                }
                uf[ra] = rb;
            }
            *best = (width, label.clone());
            return;
        }
        for l in 0..=parts {
            label[v] = l;
            rec(g, v + 1, parts.max(l + 1), label, best);
        }
    }
    rec(g, 0, 0, &mut label, &mut best);
    best
}

/// Tree-partition from a labelling whose quotient is a forest: parts become
/// bags, quotient edges become tree edges, and components are chained.
pub fn partition_from_labels(g: &Graph, label: &[usize]) -> TreePartition {
    let parts = label.iter().max().map_or(0, |m| m + 1);
    let mut bags = vec![Vec::new(); parts];
    for (v, &l) in label.iter().enumerate() {
        bags[l].push(v);
    }
    let q = g.quotient_by_labels(label, parts);
    let mut edges: Vec<(usize, usize)> = q.edges().collect();
    let comps = q.connected_components();
    for w in comps.windows(2) {
        edges.push((w[0][0], w[1][0]));
    }
    TreePartition::new(bags, edges)
}

pub fn v(node: usize, color: usize, index: usize) -> TcmisVertex {
    TcmisVertex { node, color, index }
}

/// Instance on the path `0 - 1 - ... - (t-1)` rooted at 0.
pub fn path_instance(t: usize, k: usize, r: usize, edges: Vec<(TcmisVertex, TcmisVertex)>) -> TcmisInstance {
    TcmisInstance {
        nodes: t,
        tree_edges: (1..t).map(|i| (i - 1, i)).collect(),
        k,
        r,
        edges,
    }
}

/// Five small instances covering no edges, an intra-node edge, a
/// parent-child edge, both kinds together, and a three-node path.
pub fn tcmis_instances() -> Vec<TcmisInstance> {
    vec![
        path_instance(1, 1, 1, vec![]),
        path_instance(1, 2, 2, vec![(v(0, 1, 1), v(0, 2, 2))]),
        path_instance(2, 1, 2, vec![(v(0, 1, 1), v(1, 1, 2))]),
        path_instance(2, 2, 2, vec![(v(0, 2, 1), v(1, 1, 1)), (v(1, 1, 2), v(1, 2, 2))]),
        path_instance(3, 1, 1, vec![(v(0, 1, 1), v(1, 1, 1)), (v(2, 1, 1), v(1, 1, 1))]),
    ]
}

/// Every choice vector `h[node][color - 1]` with entries in `1..=r`.
pub fn all_choices(inst: &TcmisInstance) -> Vec<Vec<Vec<usize>>> {
    let (t, k, r) = (inst.nodes, inst.k, inst.r);
    (0..r.pow((t * k) as u32))
        .map(|code| {
            let mut x = code;
            (0..t)
                .map(|_| {
                    (0..k)
                        .map(|_| {
                            let c = 1 + x % r;
                            x /= r;
                            c
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// Edges of `inst` whose two endpoints are both chosen by `h`.
pub fn hit_edges(inst: &TcmisInstance, h: &[Vec<usize>]) -> Vec<usize> {
    let picked = |u: &TcmisVertex| h[u.node][u.color - 1] == u.index;
    (0..inst.edges.len())
        .filter(|&j| picked(&inst.edges[j].0) && picked(&inst.edges[j].1))
        .collect()
}
