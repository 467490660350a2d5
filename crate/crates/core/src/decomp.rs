//! Tree decompositions over contextual classes: width, certificates for
//! cliquewidth and linear cliquewidth, sub-decompositions, and linearisations
//! with their width.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::caps;
use crate::error::{Error, Result};
use crate::graph::{
    contextual_classes, rank, Colour, ColouredGraph, Vertex, VertexSubset,
};
use crate::term::{GraphTerm, Provenance};
use crate::tree::{NodeId, SetTree};

/// A graph, a tree on its vertices, and for each node an order on its
/// contextual classes. The order defaults to the canonical one (classes
/// sorted by smallest member); overrides must list the same classes.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DecompositionJson", into = "DecompositionJson")]
pub struct TreeDecomposition {
    graph: ColouredGraph,
    tree: SetTree,
    class_order: Vec<Vec<Vec<Vertex>>>,
}

#[derive(Serialize, Deserialize)]
struct DecompositionJson {
    graph: ColouredGraph,
    tree: SetTree,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    class_order: Option<BTreeMap<NodeId, Vec<Vec<Vertex>>>>,
}

impl TryFrom<DecompositionJson> for TreeDecomposition {
    type Error = Error;
    fn try_from(j: DecompositionJson) -> Result<Self> {
        TreeDecomposition::new(j.graph, j.tree, j.class_order)
    }
}

impl From<TreeDecomposition> for DecompositionJson {
    fn from(d: TreeDecomposition) -> Self {
        let class_order = Some(d.class_order.iter().cloned().enumerate().collect());
        DecompositionJson {
            graph: d.graph,
            tree: d.tree,
            class_order,
        }
    }
}

impl std::fmt::Debug for TreeDecomposition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "TreeDecomposition(graph={:?}, tree={:?})",
            self.graph, self.tree
        )
    }
}

impl TreeDecomposition {
    pub fn new(
        graph: ColouredGraph,
        tree: SetTree,
        overrides: Option<BTreeMap<NodeId, Vec<Vec<Vertex>>>>,
    ) -> Result<Self> {
        if tree.ground() != graph.n() {
            return Err(Error::InvalidDecomposition(format!(
                "tree ground set has {} elements, graph has {} vertices",
                tree.ground(),
                graph.n()
            )));
        }
        let mut class_order: Vec<Vec<Vec<Vertex>>> = tree
            .node_ids()
            .map(|id| {
                let x = VertexSubset::new(&graph, tree.node(id).iter().copied()).unwrap();
                contextual_classes(&graph, &x)
            })
            .collect();
        if let Some(overrides) = overrides {
            for (id, order) in overrides {
                if id >= tree.node_count() {
                    return Err(Error::InvalidDecomposition(format!("unknown node {id}")));
                }
                let canonical: BTreeSet<Vec<Vertex>> = class_order[id].iter().cloned().collect();
                let given: BTreeSet<Vec<Vertex>> = order
                    .iter()
                    .map(|c| {
                        let mut c = c.clone();
                        c.sort_unstable();
                        c
                    })
                    .collect();
                if canonical != given {
                    return Err(Error::InvalidDecomposition(format!(
                        "class order for node {id} does not list its contextual classes"
                    )));
                }
                class_order[id] = order;
            }
        }
        Ok(TreeDecomposition {
            graph,
            tree,
            class_order,
        })
    }

    /// Decomposition with the trivial one-node tree.
    pub fn trivial(graph: ColouredGraph) -> Self {
        let tree = SetTree::trivial(graph.n());
        TreeDecomposition::new(graph, tree, None).unwrap()
    }

    pub fn graph(&self) -> &ColouredGraph {
        &self.graph
    }

    pub fn tree(&self) -> &SetTree {
        &self.tree
    }

    pub fn classes(&self, id: NodeId) -> &[Vec<Vertex>] {
        &self.class_order[id]
    }

    pub fn node_rank(&self, id: NodeId) -> usize {
        self.class_order[id].len()
    }

    /// Maximal number of contextual classes in a node.
    pub fn width(&self) -> usize {
        self.tree.node_ids().map(|id| self.node_rank(id)).max().unwrap()
    }

    /// The smallest (deepest) node containing the vertex.
    pub fn introducing_node(&self, v: Vertex) -> NodeId {
        self.tree
            .nodes_containing(v)
            .into_iter()
            .min_by_key(|&id| self.tree.node(id).len())
            .expect("the root contains every vertex")
    }

    pub fn introduced_at(&self, id: NodeId) -> Vec<Vertex> {
        self.tree
            .node(id)
            .iter()
            .copied()
            .filter(|&v| self.introducing_node(v) == id)
            .collect()
    }

    /// 1-based class index of `v` at a node containing it.
    pub fn colour_in(&self, id: NodeId, v: Vertex) -> Colour {
        self.class_order[id]
            .iter()
            .position(|c| c.contains(&v))
            .map(|p| p as Colour + 1)
            .expect("vertex is in the node")
    }

    /// The node viewed as a coloured graph: the induced subgraph, coloured by
    /// class index. Vertices appear in sorted order.
    pub fn node_coloured_graph(&self, id: NodeId) -> ColouredGraph {
        let members: Vec<Vertex> = self.tree.node(id).iter().copied().collect();
        self.graph
            .induced_recoloured(&members, self.node_rank(id), |v| self.colour_in(id, v))
            .expect("classes partition the node")
    }

    /// Whether some (equivalently every) member of class `c` of node `id` is
    /// adjacent to the vertex `v` outside the node.
    pub fn class_adjacent(&self, id: NodeId, c: Colour, v: Vertex) -> bool {
        debug_assert!(!self.tree.node(id).contains(&v));
        let member = self.class_order[id][c as usize - 1][0];
        self.graph.has_edge(member, v)
    }

    /// The recolouring of the context x ⊂ y: class a of x ↦ the class of y
    /// containing it. Entry a-1 is the image of a.
    pub fn recolouring(&self, x: NodeId, y: NodeId) -> Result<Vec<Colour>> {
        if !self.tree.is_ancestor(y, x) {
            return Err(Error::InvalidDecomposition(format!("({x},{y}) is not a context")));
        }
        Ok(self
            .class_order[x]
            .iter()
            .map(|class| self.colour_in(y, class[0]))
            .collect())
    }

    /// The unary graph term induced by the context x ⊂ y: the vertices
    /// introduced in the context plus one port per class of x. Port vertices
    /// come after the introduced ones.
    pub fn context_term(&self, x: NodeId, y: NodeId) -> Result<GraphTerm> {
        self.multicontext_term(&[x], y)
    }

    /// The graph term induced by a multicontext X_1,…,X_n ⊂ y: the inner
    /// nodes must be pairwise disjoint and strictly contained in y.
    pub fn multicontext_term(&self, inner: &[NodeId], y: NodeId) -> Result<GraphTerm> {
        for (i, &x) in inner.iter().enumerate() {
            if !self.tree.is_ancestor(y, x) {
                return Err(Error::InvalidDecomposition(format!("({x},{y}) is not a context")));
            }
            for &x2 in &inner[i + 1..] {
                if !self.tree.are_disjoint(x, x2) {
                    return Err(Error::InvalidDecomposition(format!(
                        "inner nodes {x} and {x2} are not disjoint"
                    )));
                }
            }
        }
        let in_some_arg =
            |v: Vertex| inner.iter().any(|&x| self.tree.node(x).contains(&v));
        let intro: Vec<Vertex> = self
            .tree
            .node(y)
            .iter()
            .copied()
            .filter(|&v| !in_some_arg(v))
            .collect();
        let mut colour: Vec<Colour> = intro.iter().map(|&v| self.colour_in(y, v)).collect();
        let mut args = Vec::new();
        let mut port_base = vec![0 as Vertex; inner.len()];
        let mut next = intro.len() as Vertex;
        for (ai, &x) in inner.iter().enumerate() {
            port_base[ai] = next;
            let r = self.recolouring(x, y)?;
            args.push((next..next + self.node_rank(x) as Vertex).collect::<Vec<_>>());
            colour.extend(r.iter().copied());
            next += self.node_rank(x) as Vertex;
        }
        let mut edges = Vec::new();
        for (i, &u) in intro.iter().enumerate() {
            for (j, &v) in intro.iter().enumerate().skip(i + 1) {
                if self.graph.has_edge(u, v) {
                    edges.push((i as Vertex, j as Vertex));
                }
            }
        }
        for (ai, &x) in inner.iter().enumerate() {
            for c in 1..=self.node_rank(x) as Colour {
                let port = port_base[ai] + c - 1;
                for (i, &u) in intro.iter().enumerate() {
                    if self.class_adjacent(x, c, u) {
                        edges.push((i as Vertex, port));
                    }
                }
                // cross-argument port edges: adjacency between classes of
                // disjoint nodes is all-or-nothing
                for (aj, &x2) in inner.iter().enumerate().skip(ai + 1) {
                    for c2 in 1..=self.node_rank(x2) as Colour {
                        let u = self.class_order[x][c as usize - 1][0];
                        let v = self.class_order[x2][c2 as usize - 1][0];
                        if self.graph.has_edge(u, v) {
                            edges.push((port, port_base[aj] + c2 - 1));
                        }
                    }
                }
            }
        }
        let body = ColouredGraph::new(next as usize, self.node_rank(y), colour, edges)?;
        GraphTerm::new(body, args)
    }

    /// Certificate check for cliquewidth ≤ k: width ≤ k, every leaf a
    /// singleton, every non-leaf binary, every vertex introduced in a leaf.
    pub fn verify_cliquewidth_certificate(&self, k: usize) -> bool {
        if self.width() > k {
            return false;
        }
        for id in self.tree.node_ids() {
            let c = self.tree.children(id).len();
            if c == 0 && self.tree.node(id).len() != 1 {
                return false;
            }
            if c != 0 && c != 2 {
                return false;
            }
        }
        self.graph
            .vertices()
            .all(|v| self.tree.is_leaf(self.introducing_node(v)))
    }

    /// Certificate check for linear cliquewidth ≤ k: the nodes form a chain,
    /// every node introduces at most one vertex, width ≤ k.
    pub fn verify_linear_certificate(&self, k: usize) -> bool {
        if self.width() > k {
            return false;
        }
        for a in self.tree.node_ids() {
            for b in a + 1..self.tree.node_count() {
                if self.tree.are_disjoint(a, b) {
                    return false;
                }
            }
        }
        self.tree.node_ids().all(|id| self.introduced_at(id).len() <= 1)
    }

    /// Restriction to a tree minor: the graph keeps the vertices of the new
    /// root (coloured by its contextual classes in the original graph), the
    /// tree becomes the minor, class orders are recomputed canonically.
    pub fn sub_decomposition(&self, new_root: NodeId, keep: &[NodeId]) -> Result<TreeDecomposition> {
        let minor = self.tree.tree_minor(new_root, keep)?;
        let members = minor.elem_of.clone();
        let graph = self.graph.induced_recoloured(&members, self.node_rank(new_root), |v| {
            self.colour_in(new_root, v)
        })?;
        TreeDecomposition::new(graph, minor.tree, None)
    }

    /// The sub-decomposition of a node and its children; its tree has height
    /// one.
    pub fn local_sub_decomposition(&self, x: NodeId) -> Result<TreeDecomposition> {
        let mut keep = vec![x];
        keep.extend(self.tree.children(x));
        self.sub_decomposition(x, &keep)
    }
}

/// An ordered list of disjoint vertex sets covering the graph; parts must sit
/// inside single introducing nodes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Linearisation {
    pub parts: Vec<Vec<Vertex>>,
}

impl Linearisation {
    pub fn singletons(order: &[Vertex]) -> Self {
        Linearisation {
            parts: order.iter().map(|&v| vec![v]).collect(),
        }
    }

    pub fn validate(&self, d: &TreeDecomposition) -> Result<()> {
        let mut seen = BTreeSet::new();
        for part in &self.parts {
            if part.is_empty() {
                return Err(Error::InvalidLinearisation("empty part".into()));
            }
            for &v in part {
                if v as usize >= d.graph().n() || !seen.insert(v) {
                    return Err(Error::InvalidLinearisation(format!(
                        "vertex {v} repeated or out of range"
                    )));
                }
            }
            let node = d.introducing_node(part[0]);
            if part.iter().any(|&v| d.introducing_node(v) != node) {
                return Err(Error::InvalidLinearisation(format!(
                    "part {part:?} mixes introducing nodes"
                )));
            }
        }
        if seen.len() != d.graph().n() {
            return Err(Error::InvalidLinearisation(
                "parts do not cover the vertex set".into(),
            ));
        }
        Ok(())
    }
}

/// Width of a linear preorder given by ordered parts: the maximal rank of its
/// prefixes. Works on any part list, covering the graph or not.
pub fn preorder_width(g: &ColouredGraph, parts: &[Vec<Vertex>]) -> usize {
    let mut prefix: BTreeSet<Vertex> = BTreeSet::new();
    let mut width = 0;
    for part in parts {
        prefix.extend(part.iter().copied());
        let x = VertexSubset::new(g, prefix.iter().copied()).unwrap();
        width = width.max(rank(g, &x));
    }
    width
}

/// Validates the linearisation against the decomposition and measures the
/// maximal prefix rank.
pub fn linearisation_width(d: &TreeDecomposition, lin: &Linearisation) -> Result<usize> {
    lin.validate(d)?;
    Ok(preorder_width(d.graph(), &lin.parts))
}

/// Lexicographic combination: the parts of the outer preorder, each refined
/// by its own inner linearisation. Inner i must cover exactly outer part i.
pub fn combine_linearisations(
    outer: &Linearisation,
    inners: &[Linearisation],
) -> Result<Linearisation> {
    if outer.parts.len() != inners.len() {
        return Err(Error::InvalidLinearisation(format!(
            "{} outer parts but {} inner linearisations",
            outer.parts.len(),
            inners.len()
        )));
    }
    let mut parts = Vec::new();
    for (outer_part, inner) in outer.parts.iter().zip(inners) {
        let covered: BTreeSet<Vertex> = inner.parts.iter().flatten().copied().collect();
        let expected: BTreeSet<Vertex> = outer_part.iter().copied().collect();
        if covered != expected {
            return Err(Error::InvalidLinearisation(format!(
                "inner linearisation covers {covered:?}, expected {expected:?}"
            )));
        }
        parts.extend(inner.parts.iter().cloned());
    }
    Ok(Linearisation { parts })
}

/// Evaluates the term compiled from a cliquewidth certificate bottom-up and
/// returns the result with the vertex correspondence (output position →
/// original vertex).
pub fn certificate_term_eval(d: &TreeDecomposition) -> Result<(ColouredGraph, Vec<Vertex>)> {
    if !d.verify_cliquewidth_certificate(d.width()) {
        return Err(Error::InvalidDecomposition(
            "not a cliquewidth certificate (singleton binary leaves required)".into(),
        ));
    }
    eval_node(d, d.tree().root())
}

fn eval_node(d: &TreeDecomposition, id: NodeId) -> Result<(ColouredGraph, Vec<Vertex>)> {
    let children = d.tree().children(id);
    if children.is_empty() {
        let v = *d.tree().node(id).first().unwrap();
        return Ok((ColouredGraph::single(), vec![v]));
    }
    let (a, b) = (children[0], children[1]);
    let (ga, ma) = eval_node(d, a)?;
    let (gb, mb) = eval_node(d, b)?;
    // the sum-and-recolour induced by the contextual classes of the children
    let ka = d.node_rank(a);
    let kb = d.node_rank(b);
    let ra = d.recolouring(a, id)?;
    let rb = d.recolouring(b, id)?;
    let mut colour: Vec<Colour> = ra.clone();
    colour.extend(rb.iter().copied());
    let mut edges = Vec::new();
    for ca in 1..=ka as Colour {
        for cb in 1..=kb as Colour {
            let u = d.classes(a)[ca as usize - 1][0];
            let v = d.classes(b)[cb as usize - 1][0];
            if d.graph().has_edge(u, v) {
                edges.push(((ca - 1) as Vertex, (ka as Colour + cb - 1) as Vertex));
            }
        }
    }
    let body = ColouredGraph::new(ka + kb, d.node_rank(id), colour, edges)?;
    let term = GraphTerm::new(
        body,
        vec![
            (0..ka as Vertex).collect(),
            (ka as Vertex..(ka + kb) as Vertex).collect(),
        ],
    )?;
    let (out, trace) = term.eval_traced(&[&ga, &gb])?;
    let mapping = trace
        .iter()
        .map(|p| match *p {
            Provenance::Introduced(_) => unreachable!("sum-and-recolour has no introduced vertices"),
            Provenance::FromArg(0, v) => ma[v as usize],
            Provenance::FromArg(_, v) => mb[v as usize],
        })
        .collect();
    Ok((out, mapping))
}

/// Checks that the compiled certificate term re-evaluates to the underlying
/// graph (up to the tracked vertex correspondence; colours must match the
/// root classes).
pub fn certificate_round_trip(d: &TreeDecomposition) -> Result<bool> {
    let (out, mapping) = certificate_term_eval(d)?;
    if out.n() != d.graph().n() {
        return Ok(false);
    }
    let root = d.tree().root();
    for (p, &v) in mapping.iter().enumerate() {
        if out.colour(p as Vertex) != d.colour_in(root, v) {
            return Ok(false);
        }
        for (q, &w) in mapping.iter().enumerate().skip(p + 1) {
            if out.has_edge(p as Vertex, q as Vertex) != d.graph().has_edge(v, w) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Exact minimum width over all chain decompositions (equivalently, vertex
/// orders), by dynamic programming over prefix sets. Capped because of the
/// 2^n blowup.
pub fn min_chain_width(g: &ColouredGraph) -> Result<usize> {
    let n = g.n();
    let cap = caps::chain_search_vertices();
    if n > cap {
        return Err(Error::TooLarge {
            what: "chain decomposition search",
            size: n,
            cap,
        });
    }
    let rank_of = |mask: u64| -> usize {
        let members = (0..n as u32).filter(|&v| mask & (1 << v) != 0);
        let x = VertexSubset::new(g, members).unwrap();
        rank(g, &x)
    };
    let full = (1u64 << n) - 1;
    let mut best = vec![usize::MAX; (full + 1) as usize];
    best[0] = 0;
    for mask in 1..=full {
        let r = rank_of(mask);
        let mut b = usize::MAX;
        for v in 0..n {
            if mask & (1 << v) != 0 {
                b = b.min(best[(mask ^ (1 << v)) as usize]);
            }
        }
        best[mask as usize] = b.max(r);
    }
    Ok(best[full as usize])
}

/// The chain decomposition given by introducing vertices in the given order.
pub fn chain_decomposition(g: &ColouredGraph, order: &[Vertex]) -> Result<TreeDecomposition> {
    if order.len() != g.n() {
        return Err(Error::InvalidDecomposition("order must cover all vertices".into()));
    }
    let nodes = (1..=order.len()).map(|m| order[..m].iter().copied().collect());
    let tree = SetTree::new(g.n(), nodes)?;
    TreeDecomposition::new(g.clone(), tree, None)
}
