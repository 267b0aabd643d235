//! Tree-partitions of subdivisions: from a nice tree-cut decomposition, and
//! lifted from a tree-partition of the original graph.

use thiserror::Error;

use crate::decomp::{root_tree, tree_adjacency, verify_tcd, verify_tp, VerifyError};
use crate::graph::{EdgeCounts, Graph, GraphError, SubdivisionMap};
use crate::{TreeCutDecomposition, TreePartition};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BridgeError {
    #[error("invalid input decomposition: {0}")]
    Invalid(#[from] VerifyError),
    #[error("tree-cut decomposition is not nice at thin node {node}")]
    NotNice { node: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A subdivision of `G` together with a tree-partition of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdivided {
    pub graph: Graph,
    pub map: SubdivisionMap,
    pub tp: TreePartition,
}

/// `2 + k(k+2)/2 + k`, rounded down.
pub fn tcd_bound(k: usize) -> usize {
    2 + k * (k + 2) / 2 + k
}

/// Subdivides each edge `uv` once per tree edge between the nodes of `u` and
/// `v`, and puts the new vertices on those nodes: walking from the endpoint
/// nearer the root (lower id on ties), the `j`-th new vertex goes to the
/// `j`-th node after the start. Empty bags are pruned.
pub fn tcd_to_subdivision_tp(g: &Graph, tcd: &TreeCutDecomposition) -> Result<Subdivided, BridgeError> {
    let report = verify_tcd(g, tcd)?;
    if let Some(node) = report.non_nice_node {
        return Err(BridgeError::NotNice { node });
    }
    let parent = &report.parent;
    let nodes = tcd.bags.len();
    let mut depth = vec![0usize; nodes];
    let (_, order) = root_tree(&tree_adjacency(nodes, &tcd.edges), tcd.root);
    for &t in &order {
        if let Some(p) = parent[t] {
            depth[t] = depth[p] + 1;
        }
    }
    let mut at = vec![0usize; g.n()];
    for (t, bag) in tcd.bags.iter().enumerate() {
        for &v in bag {
            at[v] = t;
        }
    }
    let tree_path = |a: usize, b: usize| -> Vec<usize> {
        let (mut x, mut y) = (a, b);
        let (mut up, mut down) = (vec![], vec![]);
        while x != y {
            if depth[x] >= depth[y] {
                up.push(x);
                x = parent[x].expect("non-root");
            } else {
                down.push(y);
                y = parent[y].expect("non-root");
            }
        }
        up.push(x);
        up.extend(down.into_iter().rev());
        up
    };

    let mut counts = EdgeCounts::new();
    let mut routes = Vec::new();
    for (u, v) in g.edges() {
        let (a, b) = if depth[at[u]] <= depth[at[v]] { (u, v) } else { (v, u) };
        let path = tree_path(at[a], at[b]);
        if path.len() > 1 {
            counts.insert((u, v), path.len() - 1);
            routes.push((a, b, path));
        }
    }
    let (graph, map) = g.subdivide(&counts)?;
    let mut bags = tcd.bags.clone();
    for (a, b, path) in routes {
        let mut verts = map.path(a, b).to_vec();
        if a > b {
            verts.reverse();
        }
        for (j, x) in verts.into_iter().enumerate() {
            bags[path[j + 1]].push(x);
        }
    }
    let mut tp = TreePartition::new(bags, tcd.edges.clone());
    tp.prune_empty_bags();
    tp.canonicalize();
    Ok(Subdivided { graph, map, tp })
}

fn fold(bags: &mut Vec<Vec<usize>>, edges: &mut Vec<(usize, usize)>, anchor: usize, seg: &[usize]) {
    let mut prev = anchor;
    let (mut lo, mut hi) = (0usize, seg.len());
    while lo < hi {
        let id = bags.len();
        let mut bag = vec![seg[lo]];
        if hi - 1 > lo {
            bag.push(seg[hi - 1]);
        }
        bags.push(bag);
        edges.push((prev, id));
        prev = id;
        lo += 1;
        hi -= 1;
    }
}

/// Tree-partition of `subdivide(g, counts)` from one of `g`, rooted at bag 0.
/// Paths inside a bag fold into a width-2 branch off that bag, starting from
/// the lower endpoint. Paths between a child bag and its parent put the vertex
/// next to the parent endpoint into the child bag and fold the rest off the
/// child bag.
pub fn tp_lift_subdivision(g: &Graph, tp: &TreePartition, counts: &EdgeCounts) -> Result<Subdivided, BridgeError> {
    verify_tp(g, tp)?;
    let (graph, map) = g.subdivide(counts)?;
    let (parent, _) = root_tree(&tree_adjacency(tp.num_nodes(), &tp.edges), 0);
    let at = tp.bag_of(g.n());
    let mut bags = tp.bags.clone();
    let mut edges = tp.edges.clone();
    for (&(u, v), path) in &map.paths {
        let (bu, bv) = (at[u], at[v]);
        if bu == bv {
            fold(&mut bags, &mut edges, bu, path);
            continue;
        }
        // Orient the path from the child endpoint to the parent endpoint.
        let (child, seq): (usize, Vec<usize>) = if parent[bu] == Some(bv) {
            (bu, path.clone())
        } else {
            (bv, path.iter().rev().copied().collect())
        };
        let (&last, rest) = seq.split_last().expect("subdivided paths are nonempty");
        bags[child].push(last);
        fold(&mut bags, &mut edges, child, rest);
    }
    let mut tp = TreePartition::new(bags, edges);
    tp.canonicalize();
    Ok(Subdivided { graph, map, tp })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, e: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, e.iter().copied()).unwrap()
    }

    #[test]
    fn tcd_examples() {
        let k2 = g(2, &[(0, 1)]);
        let tcd = TreeCutDecomposition {
            bags: vec![vec![0], vec![1]],
            edges: vec![(0, 1)],
            root: 0,
        };
        let out = tcd_to_subdivision_tp(&k2, &tcd).unwrap();
        assert_eq!(out.graph.n(), 3);
        assert_eq!(verify_tp(&out.graph, &out.tp).unwrap(), 2);

        let one = TreeCutDecomposition {
            bags: vec![vec![0, 1]],
            edges: vec![],
            root: 0,
        };
        let out = tcd_to_subdivision_tp(&k2, &one).unwrap();
        assert!(out.map.is_empty());
        assert_eq!(out.tp.bags, vec![vec![0, 1]]);

        let p3 = g(3, &[(0, 1), (1, 2)]);
        let path = TreeCutDecomposition {
            bags: vec![vec![0], vec![1], vec![2]],
            edges: vec![(0, 1), (1, 2)],
            root: 0,
        };
        let out = tcd_to_subdivision_tp(&p3, &path).unwrap();
        assert_eq!(verify_tp(&out.graph, &out.tp).unwrap(), 2);
    }

    #[test]
    fn non_nice_rejected() {
        // Leaves {1} and {2} are thin siblings joined by an edge.
        let p3 = g(3, &[(0, 1), (1, 2)]);
        let tcd = TreeCutDecomposition {
            bags: vec![vec![0], vec![1], vec![2]],
            edges: vec![(0, 1), (0, 2)],
            root: 0,
        };
        assert!(matches!(
            tcd_to_subdivision_tp(&p3, &tcd),
            Err(BridgeError::NotNice { .. })
        ));
    }

    #[test]
    fn lift_examples() {
        let k2 = g(2, &[(0, 1)]);
        let tp = TreePartition::new(vec![vec![0], vec![1]], vec![(0, 1)]);
        let out = tp_lift_subdivision(&k2, &tp, &EdgeCounts::from([((0, 1), 3)])).unwrap();
        assert_eq!(out.graph.n(), 5);
        assert!(verify_tp(&out.graph, &out.tp).unwrap() <= 2);

        let same = tp_lift_subdivision(&k2, &tp, &EdgeCounts::new()).unwrap();
        assert_eq!(same.tp, tp);

        let c4 = g(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        let tp = TreePartition::new(vec![vec![0, 3], vec![1, 2]], vec![(0, 1)]);
        let counts: EdgeCounts = c4.edges().map(|e| (e, 1)).collect();
        let out = tp_lift_subdivision(&c4, &tp, &counts).unwrap();
        assert_eq!(verify_tp(&out.graph, &out.tp).unwrap(), 4);
    }
}
