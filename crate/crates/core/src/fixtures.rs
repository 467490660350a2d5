//! Named graphs, templates and decomposition fixtures. These are the
//! substrate for the analyzer checks and the acceptance suite, and they back
//! the CLI `gen` subcommand.

use std::collections::BTreeSet;

use crate::decomp::TreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::{ColouredGraph, Vertex};
use crate::term::{GraphTerm, Template};
use crate::tree::SetTree;

pub fn clique(n: usize) -> ColouredGraph {
    let mut edges = Vec::new();
    for u in 0..n as Vertex {
        for v in u + 1..n as Vertex {
            edges.push((u, v));
        }
    }
    ColouredGraph::new(n, 1, vec![1; n], edges).unwrap()
}

pub fn independent(n: usize) -> ColouredGraph {
    ColouredGraph::new(n, 1, vec![1; n], []).unwrap()
}

pub fn path(n: usize) -> ColouredGraph {
    let edges = (0..n as Vertex - 1).map(|v| (v, v + 1));
    ColouredGraph::new(n, 1, vec![1; n], edges).unwrap()
}

/// Half-graph H_n in column-major layout: top of column c is vertex 2(c-1)
/// (colour 1), bottom is 2(c-1)+1 (colour 2); top_i — bottom_j iff i ≤ j.
pub fn half_graph(n: usize) -> ColouredGraph {
    let mut colour = Vec::new();
    for _ in 0..n {
        colour.push(1);
        colour.push(2);
    }
    ColouredGraph::new(2 * n, 2, colour, half_graph_edges(n)).unwrap()
}

/// The same graph with a single colour.
pub fn half_graph_mono(n: usize) -> ColouredGraph {
    ColouredGraph::new(2 * n, 1, vec![1; 2 * n], half_graph_edges(n)).unwrap()
}

fn half_graph_edges(n: usize) -> Vec<(Vertex, Vertex)> {
    let mut edges = Vec::new();
    for i in 1..=n {
        for j in i..=n {
            edges.push((2 * (i as Vertex - 1), 2 * (j as Vertex - 1) + 1));
        }
    }
    edges
}

pub fn top_of(column: usize) -> Vertex {
    2 * (column as Vertex - 1)
}

pub fn bottom_of(column: usize) -> Vertex {
    2 * (column as Vertex - 1) + 1
}

/// The comparability graph of a tree: one vertex per node, edges between
/// ancestor-related pairs.
pub fn comparability_graph(t: &SetTree) -> ColouredGraph {
    let n = t.node_count();
    let mut edges = Vec::new();
    for a in t.node_ids() {
        for b in a + 1..n {
            if t.is_ancestor(a, b) || t.is_ancestor(b, a) {
                edges.push((a as Vertex, b as Vertex));
            }
        }
    }
    ColouredGraph::new(n, 1, vec![1; n], edges).unwrap()
}

/// The clique template: single-vertex initial, step joins the two ports.
pub fn clique_template() -> Template {
    let body = ColouredGraph::new(2, 1, vec![1, 1], [(0, 1)]).unwrap();
    let step = GraphTerm::new(body, vec![vec![0], vec![1]]).unwrap();
    Template::new(ColouredGraph::single(), step).unwrap()
}

/// The half-graph template: the initial graph is a single column (top,
/// bottom, one edge); the step connects the first argument's tops to the
/// second argument's bottoms.
pub fn half_graph_template() -> Template {
    Template::new(half_graph(1), half_graph_step_variants().into_iter().next().unwrap()).unwrap()
}

/// The three step operations that generate half-graphs for every shape:
/// tops-to-new-bottoms, bottoms-to-new-tops (the mirror), and the variant
/// whose second argument enters with swapped colours.
pub fn half_graph_step_variants() -> Vec<GraphTerm> {
    // ports: arg1 = [a1, b1], arg2 = [a2, b2], with a1 = 0, b1 = 1, …
    let v1 = {
        let body = ColouredGraph::new(4, 2, vec![1, 2, 1, 2], [(0, 3)]).unwrap();
        GraphTerm::new(body, vec![vec![0, 1], vec![2, 3]]).unwrap()
    };
    let v2 = {
        let body = ColouredGraph::new(4, 2, vec![1, 2, 1, 2], [(1, 2)]).unwrap();
        GraphTerm::new(body, vec![vec![2, 3], vec![0, 1]]).unwrap()
    };
    let v3 = {
        // arg2's colour-1 vertices land in a bottom-coloured port and vice
        // versa (the second argument is turned upside down)
        let body = ColouredGraph::new(4, 2, vec![1, 2, 2, 1], [(0, 2)]).unwrap();
        GraphTerm::new(body, vec![vec![0, 1], vec![2, 3]]).unwrap()
    };
    vec![v1, v2, v3]
}

/// The comparability-tree template: one colour, the step adds a vertex
/// adjacent to both ports.
pub fn comparability_template() -> Template {
    let body = ColouredGraph::new(3, 1, vec![1, 1, 1], [(0, 2), (1, 2)]).unwrap();
    let step = GraphTerm::new(body, vec![vec![0], vec![1]]).unwrap();
    Template::new(ColouredGraph::single(), step).unwrap()
}

/// The child-tree template: blue (1) stores the root, red (2) the rest. The
/// step joins the two roots and recolours the second argument's blue root to
/// red; the initial graph is a blue root with two red children (surjectivity
/// forces the extra vertices).
pub fn child_tree_template() -> Template {
    let initial = ColouredGraph::new(3, 2, vec![1, 2, 2], [(0, 1), (0, 2)]).unwrap();
    let body = ColouredGraph::new(4, 2, vec![1, 2, 2, 2], [(0, 2)]).unwrap();
    let step = GraphTerm::new(body, vec![vec![0, 1], vec![2, 3]]).unwrap();
    Template::new(initial, step).unwrap()
}

/// The three non-branching alternatives to the comparability step: no edges
/// at all (edgeless graphs), the two ports joined (cliques), and the ports
/// joined with the introduced vertex adjacent to both (odd cliques). The
/// latter two generate disjoint unions of cliques for every shape.
pub fn nonbranching_template(variant: usize) -> Result<Template> {
    let step = match variant {
        1 => {
            let body = ColouredGraph::new(2, 1, vec![1, 1], []).unwrap();
            GraphTerm::new(body, vec![vec![0], vec![1]]).unwrap()
        }
        2 => {
            let body = ColouredGraph::new(2, 1, vec![1, 1], [(0, 1)]).unwrap();
            GraphTerm::new(body, vec![vec![0], vec![1]]).unwrap()
        }
        3 => {
            let body =
                ColouredGraph::new(3, 1, vec![1, 1, 1], [(0, 1), (0, 2), (1, 2)]).unwrap();
            GraphTerm::new(body, vec![vec![0], vec![1]]).unwrap()
        }
        _ => return Err(Error::UnknownFixture(format!("nonbranching variant {variant}"))),
    };
    Template::new(ColouredGraph::single(), step)
}

/// The left-comb shape with n leaves as a set-tree: leaves {0},…,{n-1} and
/// internal prefixes {0..j}.
pub fn comb_shape(n: usize) -> SetTree {
    assert!(n >= 1);
    let mut nodes: Vec<BTreeSet<u32>> = (0..n as u32).map(|i| [i].into_iter().collect()).collect();
    for j in 2..=n {
        nodes.push((0..j as u32).collect());
    }
    if n == 1 {
        return SetTree::new(1, nodes.into_iter().take(1)).unwrap();
    }
    SetTree::new(n, nodes).unwrap()
}

/// Vertex-by-vertex chain decomposition of the half-graph in layout order
/// (top_1, bottom_1, top_2, …); every node introduces one vertex.
pub fn half_graph_column_chain(n: usize) -> TreeDecomposition {
    let g = half_graph(n);
    let nodes = (1..=2 * n).map(|m| (0..m as u32).collect());
    let tree = SetTree::new(2 * n, nodes).unwrap();
    TreeDecomposition::new(g, tree, None).unwrap()
}

/// Balanced binary singleton-leaf certificate for K_n (cliquewidth 1).
pub fn clique_certificate(n: usize) -> TreeDecomposition {
    let g = clique(n);
    let mut nodes: Vec<BTreeSet<u32>> = Vec::new();
    balanced_ranges(0, n as u32, &mut nodes);
    TreeDecomposition::new(g, SetTree::new(n, nodes).unwrap(), None).unwrap()
}

fn balanced_ranges(lo: u32, hi: u32, out: &mut Vec<BTreeSet<u32>>) {
    out.push((lo..hi).collect());
    if hi - lo >= 2 {
        let mid = lo + (hi - lo) / 2;
        balanced_ranges(lo, mid, out);
        balanced_ranges(mid, hi, out);
    }
}

/// Binary certificate for H_n at width 2: balanced binary over columns, each
/// column split into its two singleton vertices.
pub fn half_graph_binary_certificate(n: usize) -> TreeDecomposition {
    assert!(n >= 2);
    let g = half_graph(n);
    let mut nodes: Vec<BTreeSet<u32>> = Vec::new();
    fn columns(lo: usize, hi: usize, out: &mut Vec<BTreeSet<u32>>) {
        let set: BTreeSet<u32> = (lo..hi)
            .flat_map(|c| [top_of(c + 1), bottom_of(c + 1)])
            .collect();
        out.push(set);
        if hi - lo >= 2 {
            let mid = lo + (hi - lo) / 2;
            columns(lo, mid, out);
            columns(mid, hi, out);
        } else {
            out.push([top_of(lo + 1)].into_iter().collect());
            out.push([bottom_of(lo + 1)].into_iter().collect());
        }
    }
    columns(0, n, &mut nodes);
    TreeDecomposition::new(g, SetTree::new(2 * n, nodes).unwrap(), None).unwrap()
}

fn column_range_set(f: usize, l: usize) -> BTreeSet<u32> {
    (f..=l).flat_map(|c| [top_of(c), bottom_of(c)]).collect()
}

/// The left-aligned column chain over H_n: node i holds columns [1, i]. All
/// nodes have rank 2, but contexts introduce columns on one side only, so the
/// entanglement comes out one-directional.
pub fn half_graph_prefix_chain(n: usize) -> TreeDecomposition {
    assert!(n >= 2);
    let g = half_graph(n);
    let nodes = (1..=n).map(|i| column_range_set(1, i));
    let tree = SetTree::new(2 * n, nodes).unwrap();
    TreeDecomposition::new(g, tree, None).unwrap()
}

/// The centered chain over H_n: node i holds columns [i, n+1-i], so every
/// context introduces columns on both sides. All nodes have rank 2 with
/// identity recolourings.
pub fn half_graph_centered_chain(n: usize) -> TreeDecomposition {
    assert!(n >= 1);
    let g = half_graph(n);
    let mut nodes = Vec::new();
    let mut i = 1;
    while i <= n + 1 - i {
        nodes.push(column_range_set(i, n + 1 - i));
        i += 1;
    }
    TreeDecomposition::new(g, SetTree::new(2 * n, nodes).unwrap(), None).unwrap()
}

/// The centered binary fixture over H_n: children of a column interval are
/// strictly inside it on both ends, so every context is two-sided and the
/// entanglement is symmetric.
pub fn half_graph_centered_binary(n: usize) -> TreeDecomposition {
    assert!(n >= 3);
    let g = half_graph(n);
    let mut nodes = Vec::new();
    fn split(f: usize, l: usize, out: &mut Vec<BTreeSet<u32>>) {
        out.push(column_range_set(f, l));
        let len = l - f + 1;
        if len >= 4 {
            let mid = (f + l) / 2;
            split(f + 1, mid, out);
            split(mid + 1, l - 1, out);
        } else if len == 3 {
            split(f + 1, f + 1, out);
        }
    }
    split(1, n, &mut nodes);
    TreeDecomposition::new(g, SetTree::new(2 * n, nodes).unwrap(), None).unwrap()
}

/// n disjoint edges u_i – v_i (u coloured 1, v coloured 2) with the chain of
/// pair prefixes: all edges are local and nothing is entangled.
pub fn matching_chain(n: usize) -> TreeDecomposition {
    assert!(n >= 1);
    let mut colour = Vec::new();
    let mut edges = Vec::new();
    for i in 0..n as u32 {
        colour.extend([1, 2]);
        edges.push((2 * i, 2 * i + 1));
    }
    let g = ColouredGraph::new(2 * n, 2, colour, edges).unwrap();
    let nodes = (1..=n).map(|m| (0..2 * m as u32).collect());
    let tree = SetTree::new(2 * n, nodes).unwrap();
    TreeDecomposition::new(g, tree, None).unwrap()
}

/// The path 0–1–…–(n-1) with prefix chain nodes {0..i}: one recurrent outer
/// component.
pub fn path_chain(n: usize) -> TreeDecomposition {
    let g = path(n);
    let nodes = (1..=n).map(|m| (0..m as u32).collect());
    let tree = SetTree::new(n, nodes).unwrap();
    TreeDecomposition::new(g, tree, None).unwrap()
}

/// Two disjoint paths (a-row coloured 1, b-row coloured 2) with the chain of
/// column prefixes: two recurrent outer components.
pub fn two_path_chain(m: usize) -> TreeDecomposition {
    assert!(m >= 2);
    let mut colour = Vec::new();
    let mut edges = Vec::new();
    for j in 0..m as u32 {
        colour.extend([1, 2]);
        if j + 1 < m as u32 {
            edges.push((2 * j, 2 * (j + 1)));
            edges.push((2 * j + 1, 2 * (j + 1) + 1));
        }
    }
    let g = ColouredGraph::new(2 * m, 2, colour, edges).unwrap();
    let nodes = (1..=m).map(|c| (0..2 * c as u32).collect());
    let tree = SetTree::new(2 * m, nodes).unwrap();
    TreeDecomposition::new(g, tree, None).unwrap()
}

/// The comparability graph of the complete binary tree of the given depth,
/// decomposed by its subtree sets: one colour, rank 1 everywhere, and the
/// single supercolour is entangled with itself.
pub fn comparability_fixture(depth: usize) -> TreeDecomposition {
    let sigma = SetTree::complete_binary(depth);
    let g = comparability_graph(&sigma);
    let nodes: Vec<BTreeSet<u32>> = sigma
        .node_ids()
        .map(|v| {
            sigma
                .node_ids()
                .filter(|&u| u == v || sigma.is_ancestor(v, u))
                .map(|u| u as u32)
                .collect()
        })
        .collect();
    let tree = SetTree::new(sigma.node_count(), nodes).unwrap();
    TreeDecomposition::new(g, tree, None).unwrap()
}

/// The decomposition induced by generating a template over a shape: one node
/// per shape node, holding the vertices produced in its subtree.
pub fn template_decomposition(tpl: &Template, shape: &SetTree) -> Result<TreeDecomposition> {
    let (g, tags) = tpl.generate_traced(shape)?;
    let nodes: Vec<BTreeSet<u32>> = shape
        .node_ids()
        .map(|s| {
            tags.iter()
                .enumerate()
                .filter(|(_, (t, _))| *t == s || shape.is_ancestor(s, *t))
                .map(|(i, _)| i as u32)
                .collect()
        })
        .collect();
    let tree = SetTree::new(g.n(), nodes)?;
    TreeDecomposition::new(g, tree, None)
}

/// The child-tree template generated over the left comb, decomposed by its
/// generation subtrees. The leaf-triple contexts and the prefix contexts have
/// different recolouring kernels, so this fixture has no supercolours.
pub fn child_tree_chain(n: usize) -> Result<TreeDecomposition> {
    template_decomposition(&child_tree_template(), &comb_shape(n))
}

/// Two half-graphs stacked on the same centered chain, with all top–top'
/// pairs joined: the pair (T, T') is not entangled in any direction yet has
/// non-local edges, so the fixture is not normalized.
pub fn nonlocal_pair_fixture(n: usize) -> TreeDecomposition {
    assert!(n >= 3);
    let mut colour = Vec::new();
    for _ in 0..n {
        colour.extend([1, 2, 3, 4]);
    }
    let t = |c: usize| 4 * (c as Vertex - 1);
    let b = |c: usize| 4 * (c as Vertex - 1) + 1;
    let t2 = |c: usize| 4 * (c as Vertex - 1) + 2;
    let b2 = |c: usize| 4 * (c as Vertex - 1) + 3;
    let mut edges = Vec::new();
    for i in 1..=n {
        for j in i..=n {
            edges.push((t(i), b(j)));
            edges.push((t2(i), b2(j)));
        }
        for j in 1..=n {
            edges.push((t(i).min(t2(j)), t(i).max(t2(j))));
        }
    }
    let g = ColouredGraph::new(4 * n, 4, colour, edges).unwrap();
    let mut nodes = Vec::new();
    let mut i = 1;
    while i <= n + 1 - i {
        let set: BTreeSet<u32> = (i..=n + 1 - i)
            .flat_map(|c| [t(c), b(c), t2(c), b2(c)])
            .collect();
        nodes.push(set);
        i += 1;
    }
    let tree = SetTree::new(4 * n, nodes).unwrap();
    TreeDecomposition::new(g, tree, None).unwrap()
}

/// All analyzer fixtures by name, at a default size, for "run everything"
/// style checks.
pub fn analyzer_fixtures() -> Vec<(&'static str, TreeDecomposition)> {
    vec![
        ("half-graph-chain", half_graph_centered_chain(5)),
        ("half-graph-binary", half_graph_centered_binary(6)),
        ("matching-chain", matching_chain(4)),
        ("comparability", comparability_fixture(2)),
        ("nonlocal-pair", nonlocal_pair_fixture(6)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_isomorphic;
    use crate::term::Shape;

    #[test]
    fn half_graph_shape() {
        let h3 = half_graph(3);
        assert_eq!(h3.n(), 6);
        assert_eq!(h3.edge_count(), 6); // 3 + 2 + 1
        assert!(h3.has_edge(top_of(1), bottom_of(3)));
        assert!(!h3.has_edge(top_of(3), bottom_of(1)));
        assert!(h3.has_edge(top_of(2), bottom_of(2)));
    }

    #[test]
    fn step_variants_generate_isomorphic_halfgraphs() {
        // checked exhaustively over all shapes with ≤ 6 leaves in the
        // integration suite; spot-check the comb here
        for step in half_graph_step_variants() {
            let tpl = Template::new(half_graph(1), step).unwrap();
            let g = tpl.generate(&Shape::Comb(4)).unwrap();
            assert!(is_isomorphic(&g, &half_graph(4)).unwrap());
        }
    }

    #[test]
    fn nonbranching_variants() {
        let t1 = nonbranching_template(1).unwrap();
        let g1 = t1.generate(&Shape::Comb(4)).unwrap();
        assert_eq!(g1.edge_count(), 0);
        let t2 = nonbranching_template(2).unwrap();
        let g2 = t2.generate(&Shape::Comb(3)).unwrap();
        assert!(is_isomorphic(&g2, &clique(3)).unwrap());
        let t3 = nonbranching_template(3).unwrap();
        let g3 = t3.generate(&Shape::Comb(3)).unwrap();
        // the introduced vertices join everything: K5
        assert!(is_isomorphic(&g3, &clique(5)).unwrap());
        assert!(nonbranching_template(4).is_err());
    }

    #[test]
    fn centered_chain_is_uniformly_rank_two() {
        let d = half_graph_centered_chain(5);
        for id in d.tree().node_ids() {
            assert_eq!(d.node_rank(id), 2);
        }
        for (x, y) in d.tree().contexts() {
            assert_eq!(d.recolouring(x, y).unwrap(), vec![1, 2]);
        }
    }

    #[test]
    fn centered_binary_contexts_are_two_sided() {
        let d = half_graph_centered_binary(8);
        for (x, y) in d.tree().contexts() {
            let x_min = *d.tree().node(x).first().unwrap();
            let x_max = *d.tree().node(x).last().unwrap();
            let has_left = d.tree().node(y).iter().any(|&v| v < x_min);
            let has_right = d.tree().node(y).iter().any(|&v| v > x_max);
            assert!(has_left && has_right, "context ({x},{y}) is one-sided");
        }
    }

    #[test]
    fn comparability_fixture_is_rank_one() {
        let d = comparability_fixture(2);
        for id in d.tree().node_ids() {
            assert_eq!(d.node_rank(id), 1);
        }
    }

    #[test]
    fn nonlocal_fixture_is_rank_four() {
        let d = nonlocal_pair_fixture(4);
        for id in d.tree().node_ids() {
            assert_eq!(d.node_rank(id), 4);
        }
    }

    #[test]
    fn comb_shape_is_binary() {
        crate::term::validate_binary_shape(&comb_shape(5)).unwrap();
        assert_eq!(comb_shape(1).node_count(), 1);
    }
}
