mod common;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use treepart::bridge::{tcd_bound, tcd_to_subdivision_tp, tp_lift_subdivision};
use treepart::decomp::{verify_tcd, verify_tp};
use treepart::exact::{exact_tpw, Exact};
use treepart::gadgets::gen_random_tree;
use treepart::graph::EdgeCounts;
use treepart::{Graph, TreeCutDecomposition};

/// One vertex per bag, shaped like the tree `t` itself.
fn tree_shaped(t: &Graph) -> TreeCutDecomposition {
    TreeCutDecomposition {
        bags: (0..t.n()).map(|v| vec![v]).collect(),
        edges: t.edges().collect(),
        root: 0,
    }
}

/// Bags of `chunk` consecutive vertices along a path of nodes.
fn path_shaped(n: usize, chunk: usize) -> TreeCutDecomposition {
    let bags: Vec<Vec<usize>> = (0..n).collect::<Vec<_>>().chunks(chunk).map(|c| c.to_vec()).collect();
    let edges = (1..bags.len()).map(|i| (i - 1, i)).collect();
    TreeCutDecomposition { bags, edges, root: 0 }
}

fn check_tcd(g: &Graph, tcd: &TreeCutDecomposition) -> usize {
    let report = verify_tcd(g, tcd).unwrap();
    assert!(report.nice);
    let out = tcd_to_subdivision_tp(g, tcd).unwrap();
    let mut expected = g.n();
    for (u, v) in g.edges() {
        let (a, b) = (bag_of(tcd, u), bag_of(tcd, v));
        expected += tree_distance(tcd, a, b);
    }
    assert_eq!(out.graph.n(), expected);
    let width = verify_tp(&out.graph, &out.tp).unwrap();
    assert!(
        width <= tcd_bound(report.width),
        "width {width} above bound for tcd width {}",
        report.width
    );
    width
}

fn bag_of(tcd: &TreeCutDecomposition, v: usize) -> usize {
    tcd.bags.iter().position(|b| b.contains(&v)).unwrap()
}

fn tree_distance(tcd: &TreeCutDecomposition, a: usize, b: usize) -> usize {
    let n = tcd.bags.len();
    let mut dist = vec![usize::MAX; n];
    dist[a] = 0;
    let mut queue = std::collections::VecDeque::from([a]);
    while let Some(x) = queue.pop_front() {
        for &(p, q) in &tcd.edges {
            for (s, t) in [(p, q), (q, p)] {
                if s == x && dist[t] == usize::MAX {
                    dist[t] = dist[x] + 1;
                    queue.push_back(t);
                }
            }
        }
    }
    dist[b]
}

#[test]
fn nice_tcds_of_trees_and_cycles() {
    for seed in 0..10 {
        let t = gen_random_tree(12, seed);
        assert!(check_tcd(&t, &tree_shaped(&t)) <= 2);
    }
    for n in 3..9 {
        check_tcd(&cycle(n), &path_shaped(n, 1));
        check_tcd(&cycle(n), &path_shaped(n, 2));
    }
    check_tcd(&complete(5), &path_shaped(5, 5));
    check_tcd(&caterpillar(4, 2), &tree_shaped(&caterpillar(4, 2)));
}

#[test]
fn lifts_of_random_partitions() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut done = 0;
    for seed in 0..80 {
        let g = random_graph(seed, 2, 7, 0.2, 0.7);
        let Exact::Width { width: k, witness } = exact_tpw(&g, 7).unwrap() else {
            unreachable!()
        };
        let counts: EdgeCounts = g.edges().map(|e| (e, rng.gen_range(0..4))).collect();
        let added: usize = counts.values().sum();
        let out = tp_lift_subdivision(&g, &witness, &counts).unwrap();
        assert_eq!(out.graph.n(), g.n() + added);
        assert_eq!(out.graph.m(), g.m() + added);
        let w = verify_tp(&out.graph, &out.tp).unwrap();
        assert!(w <= k * (k + 1), "lifted width {w} from {k}");
        done += 1;
    }
    assert_eq!(done, 80);
}

#[test]
fn lift_with_zero_counts_is_identity() {
    let g = complete(4);
    let Exact::Width { witness, .. } = exact_tpw(&g, 4).unwrap() else {
        unreachable!()
    };
    let out = tp_lift_subdivision(&g, &witness, &EdgeCounts::new()).unwrap();
    assert_eq!(out.graph, g);
    assert_eq!(verify_tp(&g, &out.tp).unwrap(), 2);
}
