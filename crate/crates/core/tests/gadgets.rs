mod common;

use common::*;
use treepart::decomp::{verify_domino, verify_tp};
use treepart::exact::{exact_tpw, Exact};
use treepart::gadgets::*;

fn c2(x: usize) -> usize {
    x * x.saturating_sub(1) / 2
}

/// Closed-form `(|V(H)|, |E(H)|)` for a path-shaped instance. The subdivided
/// trunk is a path; trunk positions are counted from the deepest node up.
fn expected_counts(inst: &TcmisInstance) -> (usize, usize) {
    let (t, k, r, m) = (inst.nodes, inst.k, inst.r, inst.edges.len());
    let l = 36 * k + 5;
    let n_sub = (m + 1) * r;
    let reach = 2 * n_sub + 2;
    let len = 2 * n_sub + r + 5;
    let positions = (t + 1) * (n_sub + 1) + 1;
    let pos = |i: usize| (t - 1 - i) * (n_sub + 1);

    let mut marked = vec![false; positions];
    let mut sizes = vec![vec![6usize; len]; t * k];
    for s in &mut sizes {
        s[0] = l - 7;
        s[len - 1] = l - 7;
    }
    for (j, &(a, b)) in inst.edges.iter().enumerate() {
        let g = 2 * (j + 1) * r;
        let base = a.node.min(b.node);
        marked[pos(base) + g] = true;
        for (x, y) in [(a, b), (b, a)] {
            let gamma = if y.node + 1 == x.node {
                g + n_sub + 2 + x.index
            } else {
                g + 1 + x.index
            };
            sizes[x.node * k + x.color - 1][gamma - 1] = 7;
        }
    }
    let trunk: Vec<usize> = (0..positions)
        .map(|q| {
            let p = (0..t).filter(|&i| pos(i) <= q && q <= pos(i) + reach).count();
            l - 6 * k * p - if marked[q] { 1 } else { 2 }
        })
        .collect();

    let mut cliques: Vec<usize> = trunk.clone();
    let mut edges: usize =
        trunk.iter().map(|&s| c2(s)).sum::<usize>() + trunk.windows(2).map(|w| w[0] * w[1]).sum::<usize>();
    for i in 0..t {
        for c in 0..k {
            let s = &sizes[i * k + c];
            cliques.extend(s);
            edges += s.iter().map(|&x| c2(x)).sum::<usize>();
            edges += s.windows(2).map(|w| w[0] * w[1]).sum::<usize>();
            edges += trunk[pos(i)] * s[0] + s[len - 1] * trunk[pos(i) + reach];
        }
    }
    let mut vertices: usize = cliques.iter().sum();
    for &s in &cliques {
        vertices += 2 * l;
        edges += c2(2 * l) + s * l;
    }
    (vertices, edges)
}

#[test]
fn tcmis_counts_match_closed_form() {
    for inst in tcmis_instances() {
        let gadget = gen_tcmis_gadget(&inst).unwrap();
        assert!(gadget.overshoot.is_empty());
        assert_eq!((gadget.h.n(), gadget.h.m()), expected_counts(&inst), "{inst:?}");
        assert!(gadget.max_degree < gadget.degree_bound());
    }
    let (n, _) = expected_counts(&tcmis_instances()[1]);
    assert_eq!(n, 7446);
}

/// Every class choice that avoids both ends of every edge gives a partition
/// of width at most `L`; choices hitting an edge overflow at that edge's node.
#[test]
fn tcmis_witnesses_localize_edges() {
    for inst in tcmis_instances() {
        let gadget = gen_tcmis_gadget(&inst).unwrap();
        for choices in all_choices(&inst) {
            let hit = hit_edges(&inst, &choices);
            let w = tcmis_witness_to_partition(&gadget, &choices).unwrap();
            let width = verify_tp(&gadget.h, &w.tp).unwrap();
            if hit.is_empty() {
                assert!(w.overflow.is_empty());
                assert!(width <= gadget.l);
            } else {
                let flagged: Vec<usize> = w.overflow.iter().flat_map(|o| o.edges.clone()).collect();
                for j in hit {
                    assert!(flagged.contains(&j), "edge {j} not localized");
                    let o = w
                        .overflow
                        .iter()
                        .find(|o| o.trunk_node == Some(gadget.edge_nodes[j]))
                        .unwrap();
                    assert_eq!(o.size, gadget.l + 1);
                }
            }
        }
    }
}

#[test]
fn tcmis_rejects_bad_instances() {
    let intra = path_instance(1, 2, 2, vec![(v(0, 1, 1), v(0, 1, 2))]);
    assert!(matches!(
        gen_tcmis_gadget(&intra),
        Err(GadgetError::IntraClassEdge { .. })
    ));
    let far = path_instance(3, 1, 1, vec![(v(0, 1, 1), v(2, 1, 1))]);
    assert!(matches!(gen_tcmis_gadget(&far), Err(GadgetError::NonLocalEdge { .. })));
    let mut ternary = path_instance(4, 1, 1, vec![]);
    ternary.tree_edges = vec![(0, 1), (0, 2), (0, 3)];
    assert!(matches!(gen_tcmis_gadget(&ternary), Err(GadgetError::NotBinary { .. })));
    let bushy = TcmisInstance {
        nodes: 7,
        tree_edges: vec![(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)],
        k: 1,
        r: 1,
        edges: vec![],
    };
    assert!(matches!(
        gen_tcmis_gadget(&bushy),
        Err(GadgetError::TrunkTooSmall { .. })
    ));
}

#[test]
fn domino_reduction_sizes() {
    for seed in 0..8 {
        let g = random_graph(seed, 2, 6, 0.3, 0.7);
        let k = 2;
        let red = gen_domino_reduction(&g, k).unwrap();
        let d = g.max_degree();
        let l = k * d + 1;
        let m = (k + 1) * l - 1;
        assert_eq!((red.l, red.m), (l, m));
        assert_eq!(red.h.n(), g.n() * l + g.n() * l * (2 * m - 2) + g.m());
        assert_eq!(red.h.m(), g.n() * c2(l) + g.n() * l * (2 * m - 2) + 2 * l * g.m());
    }
}

#[test]
fn domino_witnesses_from_partitions() {
    let mut checked = 0;
    for seed in 0..40 {
        let g = random_graph(seed, 2, 6, 0.2, 0.7);
        if g.m() == 0 {
            continue;
        }
        let Exact::Width { width, witness } = exact_tpw(&g, 3).unwrap() else {
            continue;
        };
        let red = gen_domino_reduction(&g, width).unwrap();
        let td = tp_witness_to_domino(&g, &witness, &red).unwrap();
        let w = verify_domino(&red.h, &td).unwrap();
        assert!(w < red.m, "width {w} vs M {}", red.m);
        checked += 1;
    }
    assert!(checked >= 10);
    let c4 = cycle(4);
    let red = gen_domino_reduction(&c4, 1).unwrap();
    let tp = treepart::TreePartition::new(vec![vec![0, 1, 2, 3]], vec![]);
    assert!(matches!(
        tp_witness_to_domino(&c4, &tp, &red),
        Err(GadgetError::PartitionTooWide { .. })
    ));
}

#[test]
fn families_have_known_partitions() {
    let k = gen_complete_bipartite(3, 50);
    assert_eq!(verify_tp(&k, &explicit_k3m_partition(50)).unwrap(), 3);
    let grid = gen_grid(3);
    assert_eq!((grid.n(), grid.m()), (9, 12));
    assert_eq!(exact_tpw(&grid, 4).unwrap().width(), Some(3));
    let fan = gen_fan(6);
    assert_eq!(exact_tpw(&fan, 4).unwrap().width(), Some(slow_tpw(&fan).0));
    assert_eq!(slow_tpw(&gen_fan(4)).0, 2);
    let wall = gen_wall(3);
    assert!(wall.max_degree() <= 3);
}
