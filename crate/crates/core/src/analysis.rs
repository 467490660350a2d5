//! Per-instance structural analyzers for tree decompositions: supercolours,
//! uniformity, superflips, entanglement, the normalisation condition,
//! orientations, consistent cuts, outer components and profiles, centers, and
//! the final linearisation built from an orientation.
//!
//! Every class-level "for every context in the class" in the source
//! definitions becomes "for every context of this decomposition" here.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::caps;
use crate::decomp::{preorder_width, Linearisation, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::{components_of, Colour, ColouredGraph, Vertex};
use crate::mso::{q_type, MsoStructure, TheoryTable};
use crate::tree::NodeId;

/// Blocks of the shared kernel of the (idempotent) context recolourings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupercolourPartition {
    pub blocks: Vec<BTreeSet<Colour>>,
}

impl SupercolourPartition {
    pub fn block_of(&self, c: Colour) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&c))
    }
}

/// If all context recolourings are idempotent and share one kernel, returns
/// its blocks; otherwise None. Nodes of different rank have no common kernel.
pub fn recolouring_kernel(d: &TreeDecomposition) -> Option<SupercolourPartition> {
    let contexts = d.tree().contexts();
    let k = d.node_rank(d.tree().root());
    if d.tree().node_ids().any(|id| d.node_rank(id) != k) {
        return None;
    }
    let mut kernel: Option<Vec<Vec<bool>>> = None;
    for &(x, y) in &contexts {
        let r = d.recolouring(x, y).ok()?;
        for a in 1..=k as Colour {
            let ra = r[a as usize - 1];
            if r[ra as usize - 1] != ra {
                return None; // not idempotent
            }
        }
        let mut ker = vec![vec![false; k]; k];
        for a in 0..k {
            for b in 0..k {
                ker[a][b] = r[a] == r[b];
            }
        }
        match &kernel {
            None => kernel = Some(ker),
            Some(prev) if *prev == ker => {}
            Some(_) => return None,
        }
    }
    let kernel = kernel.unwrap_or_else(|| {
        // no contexts: singletons
        (0..k).map(|a| (0..k).map(|b| a == b).collect()).collect()
    });
    let mut blocks: Vec<BTreeSet<Colour>> = Vec::new();
    let mut placed = vec![false; k];
    for a in 0..k {
        if placed[a] {
            continue;
        }
        let block: BTreeSet<Colour> = (0..k)
            .filter(|&b| kernel[a][b])
            .map(|b| b as Colour + 1)
            .collect();
        for &b in &block {
            placed[b as usize - 1] = true;
        }
        blocks.push(block);
    }
    Some(SupercolourPartition { blocks })
}

/// Everything the analyzers below need about one decomposition: the shared
/// rank, supercolours, fixpoint colours and realized recolourings.
pub struct Analyzer<'a> {
    pub d: &'a TreeDecomposition,
    pub k: usize,
    pub supercolours: SupercolourPartition,
    pub fixpoints: BTreeSet<Colour>,
    pub realized_recolourings: Vec<Vec<Colour>>,
}

impl<'a> Analyzer<'a> {
    pub fn new(d: &'a TreeDecomposition) -> Result<Self> {
        let supercolours = recolouring_kernel(d).ok_or_else(|| {
            Error::UndefinedEntanglement(
                "no supercolours: recolourings are not idempotent with a shared kernel".into(),
            )
        })?;
        let k = d.node_rank(d.tree().root());
        let mut realized: BTreeSet<Vec<Colour>> = BTreeSet::new();
        let mut fixpoints = BTreeSet::new();
        for (x, y) in d.tree().contexts() {
            let r = d.recolouring(x, y)?;
            fixpoints.extend(r.iter().copied());
            realized.insert(r);
        }
        if fixpoints.is_empty() {
            return Err(Error::UndefinedEntanglement(
                "no contexts, so no fixpoint colours".into(),
            ));
        }
        Ok(Analyzer {
            d,
            k,
            supercolours,
            fixpoints,
            realized_recolourings: realized.into_iter().collect(),
        })
    }

    pub fn block_count(&self) -> usize {
        self.supercolours.blocks.len()
    }

    pub fn block_of_colour(&self, c: Colour) -> usize {
        self.supercolours.block_of(c).expect("colour in range")
    }

    /// A vertex's supercolour, read at the root (it is the same at every
    /// node containing the vertex).
    pub fn block_of_vertex(&self, v: Vertex) -> usize {
        self.block_of_colour(self.d.colour_in(self.d.tree().root(), v))
    }

    pub fn fixpoints_of_block(&self, b: usize) -> Vec<Colour> {
        self.supercolours.blocks[b]
            .iter()
            .copied()
            .filter(|c| self.fixpoints.contains(c))
            .collect()
    }

    fn is_realized(&self, e: &[Colour]) -> bool {
        self.realized_recolourings.iter().any(|r| r == e)
    }

    /// The image colour of a whole block under a recolouring (well-defined
    /// because the kernel classes are the blocks).
    fn image_of_block(&self, e: &[Colour], b: usize) -> Colour {
        let any = *self.supercolours.blocks[b].first().unwrap();
        e[any as usize - 1]
    }
}

// ---------------------------------------------------------------------------
// superflips
// ---------------------------------------------------------------------------

/// Applies every colour-pair flip of A × B (colours read as class indices of
/// the decomposition's nodes) and rebuilds the decomposition with canonical
/// class orders.
pub fn superflip(
    d: &TreeDecomposition,
    a: &BTreeSet<Colour>,
    b: &BTreeSet<Colour>,
) -> Result<TreeDecomposition> {
    let sc = recolouring_kernel(d)
        .ok_or_else(|| Error::UndefinedEntanglement("superflip needs supercolours".into()))?;
    for block in [a, b] {
        if !sc.blocks.contains(block) {
            return Err(Error::InvalidFlip(format!(
                "{block:?} is not a supercolour block of this decomposition"
            )));
        }
    }
    let root = d.tree().root();
    let in_a: BTreeSet<Vertex> = d
        .graph()
        .vertices()
        .filter(|&v| a.contains(&d.colour_in(root, v)))
        .collect();
    let in_b: BTreeSet<Vertex> = d
        .graph()
        .vertices()
        .filter(|&v| b.contains(&d.colour_in(root, v)))
        .collect();
    let mut edges: BTreeSet<(Vertex, Vertex)> = d.graph().edges().collect();
    for u in d.graph().vertices() {
        for v in u + 1..d.graph().n() as Vertex {
            let hit = (in_a.contains(&u) && in_b.contains(&v))
                || (in_a.contains(&v) && in_b.contains(&u));
            if hit {
                if !edges.remove(&(u, v)) {
                    edges.insert((u, v));
                }
            }
        }
    }
    let graph = ColouredGraph::new(
        d.graph().n(),
        d.graph().k(),
        d.graph().colours().to_vec(),
        edges,
    )?;
    TreeDecomposition::new(graph, d.tree().clone(), None)
}

// ---------------------------------------------------------------------------
// uniformity
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniformReport {
    /// all node q-theories equal (None = skipped: caps exceeded)
    pub nodes_uniform: Option<bool>,
    /// s ∘ t = s over all realized context theories
    pub contexts_forward_invariant: Option<bool>,
    /// some component touches all colours in some node, after every superflip
    pub colour_connected: Option<bool>,
}

pub fn check_uniform(d: &TreeDecomposition, q: usize) -> UniformReport {
    let nodes_uniform = (|| {
        let mut first = None;
        for id in d.tree().node_ids() {
            let s = MsoStructure::plain(d.node_coloured_graph(id));
            let ty = q_type(&s, q).ok()?;
            match &first {
                None => first = Some(ty),
                Some(t) if *t == ty => {}
                Some(_) => return Some(false),
            }
        }
        Some(true)
    })();
    let contexts_forward_invariant = (|| {
        let k = d.node_rank(d.tree().root());
        if d.tree().node_ids().any(|id| d.node_rank(id) != k) {
            return Some(false);
        }
        let mut table = TheoryTable::new(q, k);
        let mut types = BTreeSet::new();
        for (x, y) in d.tree().contexts() {
            let term = d.context_term(x, y).ok()?;
            types.insert(table.register(&term).ok()?);
        }
        for s in &types {
            for t in &types {
                let c = table.compose(s, t).ok()?;
                if c != *s {
                    return Some(false);
                }
            }
        }
        Some(true)
    })();
    let colour_connected = (|| {
        let sc = recolouring_kernel(d)?;
        let blocks = sc.blocks.len();
        if blocks > caps::superflip_blocks() {
            return None;
        }
        let mut pairs = Vec::new();
        for i in 0..blocks {
            for j in i..blocks {
                pairs.push((i, j));
            }
        }
        for mask in 0u32..(1 << pairs.len()) {
            let mut flipped = d.clone();
            for (p, &(i, j)) in pairs.iter().enumerate() {
                if mask & (1 << p) != 0 {
                    flipped = superflip(&flipped, &sc.blocks[i], &sc.blocks[j]).ok()?;
                }
            }
            if !some_component_touches_all_colours(&flipped) {
                return Some(false);
            }
        }
        Some(true)
    })();
    UniformReport {
        nodes_uniform,
        contexts_forward_invariant,
        colour_connected,
    }
}

fn some_component_touches_all_colours(d: &TreeDecomposition) -> bool {
    let comps = d.graph().components();
    for comp in &comps {
        let set: BTreeSet<Vertex> = comp.iter().copied().collect();
        for id in d.tree().node_ids() {
            let touches_all =
                (0..d.node_rank(id)).all(|c| d.classes(id)[c].iter().any(|v| set.contains(v)));
            if touches_all {
                return true;
            }
        }
    }
    false
}

// ---------------------------------------------------------------------------
// entanglement
// ---------------------------------------------------------------------------

/// Directed entanglement relation on supercolour blocks, with the
/// some-versus-every diagnostic from the corresponding lemma.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntanglementGraph {
    pub blocks: Vec<BTreeSet<Colour>>,
    /// (i, j) present means block i is entangled with block j
    pub edges: BTreeSet<(usize, usize)>,
    /// per ordered pair: the some-quantified and every-quantified edge
    /// conditions agree
    pub some_every_consistent: bool,
}

impl EntanglementGraph {
    pub fn entangled(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i, j))
    }

    pub fn is_symmetric_irreflexive(&self) -> bool {
        self.edges.iter().all(|&(i, j)| i != j && self.edges.contains(&(j, i)))
    }

    /// Blocks incident to no entanglement edge: the local supercolours.
    pub fn local_blocks(&self) -> BTreeSet<usize> {
        let touched: BTreeSet<usize> = self.edges.iter().flat_map(|&(i, j)| [i, j]).collect();
        (0..self.blocks.len()).filter(|b| !touched.contains(b)).collect()
    }
}

/// A block-`block` vertex introduced in the context (x ⊂ y) adjacent (or
/// non-adjacent) to port class `c` of x.
fn witness_exists(
    an: &Analyzer,
    x: NodeId,
    y: NodeId,
    block: usize,
    c: Colour,
    adjacent: bool,
) -> bool {
    an.d
        .tree()
        .node(y)
        .iter()
        .copied()
        .filter(|v| !an.d.tree().node(x).contains(v))
        .any(|v| an.block_of_vertex(v) == block && an.d.class_adjacent(x, c, v) == adjacent)
}

pub fn entanglement(an: &Analyzer) -> EntanglementGraph {
    let contexts = an.d.tree().contexts();
    let blocks = an.supercolours.blocks.clone();
    let mut edges = BTreeSet::new();
    let mut consistent = true;
    for i in 0..blocks.len() {
        for j in 0..blocks.len() {
            // (a): every context, every fixpoint b of block j: an i-vertex
            // introduced in the context with an edge to port b
            let cond_a = contexts.iter().all(|&(x, y)| {
                an.fixpoints_of_block(j)
                    .iter()
                    .all(|&b| witness_exists(an, x, y, i, b, true))
            });
            // (b): every context, every fixpoint a of block i: a j-vertex
            // with a non-edge to port a
            let cond_b = contexts.iter().all(|&(x, y)| {
                an.fixpoints_of_block(i)
                    .iter()
                    .all(|&a| witness_exists(an, x, y, j, a, false))
            });
            if cond_a && cond_b {
                edges.insert((i, j));
            }
            // diagnostic: for edges from ports of block i to vertices of
            // block j, some ⇔ every
            let some = contexts.iter().any(|&(x, y)| {
                an.fixpoints_of_block(i)
                    .iter()
                    .any(|&a| witness_exists(an, x, y, j, a, true))
            });
            let every = contexts.iter().all(|&(x, y)| {
                an.fixpoints_of_block(i)
                    .iter()
                    .all(|&a| witness_exists(an, x, y, j, a, true))
            });
            if some != every {
                consistent = false;
            }
        }
    }
    EntanglementGraph {
        blocks,
        edges,
        some_every_consistent: consistent,
    }
}

// ---------------------------------------------------------------------------
// local edges and normalisation
// ---------------------------------------------------------------------------

/// Two nodes are nearby when they are equal, siblings, or parent and child.
pub fn nearby(d: &TreeDecomposition, a: NodeId, b: NodeId) -> bool {
    if a == b {
        return true;
    }
    let t = d.tree();
    t.parent(a) == Some(b) || t.parent(b) == Some(a) || t.parent(a) == t.parent(b)
}

/// An edge is local when its endpoints are introduced in nearby nodes.
pub fn is_local_edge(d: &TreeDecomposition, u: Vertex, v: Vertex) -> bool {
    nearby(d, d.introducing_node(u), d.introducing_node(v))
}

/// The normalisation condition: for every pair of blocks, one of the four
/// entanglements holds or the restriction to the two blocks has only local
/// edges.
pub fn check_normalized(an: &Analyzer, ent: &EntanglementGraph) -> bool {
    for i in 0..an.block_count() {
        for j in i..an.block_count() {
            let entangled = ent.entangled(i, i)
                || ent.entangled(j, j)
                || ent.entangled(i, j)
                || ent.entangled(j, i);
            if entangled {
                continue;
            }
            let all_local = an.d.graph().edges().all(|(u, v)| {
                let bu = an.block_of_vertex(u);
                let bv = an.block_of_vertex(v);
                let in_pair = (bu == i || bu == j) && (bv == i || bv == j);
                !in_pair || is_local_edge(an.d, u, v)
            });
            if !all_local {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// orientations
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orientation {
    /// arrows on block indices
    pub arrows: BTreeSet<(usize, usize)>,
}

impl Orientation {
    pub fn opposite(&self) -> Orientation {
        Orientation {
            arrows: self.arrows.iter().map(|&(i, j)| (j, i)).collect(),
        }
    }

    pub fn has(&self, i: usize, j: usize) -> bool {
        self.arrows.contains(&(i, j))
    }
}

pub enum OrientationOutcome {
    Oriented(Orientation),
    /// why the relation fails the orientation axioms
    Violation(String),
}

/// The relation A → B iff there is an edge from X1.e1(A) to X2.e2(B), checked
/// against the orientation axioms for the given entanglement graph.
pub fn orientation_of(
    an: &Analyzer,
    ent: &EntanglementGraph,
    x1: NodeId,
    x2: NodeId,
    e1: &[Colour],
    e2: &[Colour],
) -> Result<OrientationOutcome> {
    if !an.d.tree().are_disjoint(x1, x2) {
        return Err(Error::NotOriented(format!("nodes {x1} and {x2} are not disjoint")));
    }
    for e in [e1, e2] {
        if !an.is_realized(e) {
            return Err(Error::NotOriented(format!(
                "recolouring {e:?} is not realized in the decomposition"
            )));
        }
    }
    let mut arrows = BTreeSet::new();
    for i in 0..an.block_count() {
        for j in 0..an.block_count() {
            let c1 = an.image_of_block(e1, i);
            let c2 = an.image_of_block(e2, j);
            // classes of disjoint nodes see each other uniformly
            let u = an.d.classes(x1)[c1 as usize - 1][0];
            let v = an.d.classes(x2)[c2 as usize - 1][0];
            if an.d.graph().has_edge(u, v) {
                arrows.insert((i, j));
            }
        }
    }
    for i in 0..an.block_count() {
        for j in 0..an.block_count() {
            let fwd = arrows.contains(&(i, j));
            let bwd = arrows.contains(&(j, i));
            if ent.entangled(i, j) {
                // for i = j the two conditions coincide, so "exactly one"
                // cannot hold and self-entanglement forbids orientations
                if fwd == bwd {
                    return Ok(OrientationOutcome::Violation(format!(
                        "entangled pair ({i},{j}) has {} arrows",
                        if fwd { "both" } else { "no" }
                    )));
                }
            } else if !ent.entangled(j, i) && (fwd || bwd) {
                return Ok(OrientationOutcome::Violation(format!(
                    "non-entangled pair ({i},{j}) has an arrow"
                )));
            }
        }
    }
    Ok(OrientationOutcome::Oriented(Orientation { arrows }))
}

// ---------------------------------------------------------------------------
// interiors and consistent cuts
// ---------------------------------------------------------------------------

/// Vertices of the node whose connected component (in the induced subgraph)
/// touches at least one non-local colour.
pub fn interior(an: &Analyzer, ent: &EntanglementGraph, x: NodeId) -> BTreeSet<Vertex> {
    let members: Vec<Vertex> = an.d.tree().node(x).iter().copied().collect();
    let local = ent.local_blocks();
    let comps = components_of(members.len(), |a, b| {
        an.d.graph().has_edge(members[a as usize], members[b as usize])
    });
    let mut out = BTreeSet::new();
    for comp in comps {
        let touches_nonlocal = comp
            .iter()
            .any(|&i| !local.contains(&an.block_of_vertex(members[i as usize])));
        if touches_nonlocal {
            out.extend(comp.iter().map(|&i| members[i as usize]));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cut {
    pub left: BTreeSet<Vertex>,
    pub right: BTreeSet<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CutProblem {
    /// a vertex forced onto both sides
    BothSides { v: Vertex },
    /// a left/right pair violating the edge ⇔ arrow equivalence
    CrossPair { v: Vertex, w: Vertex },
    /// a local component linking the two sides
    LocalLink {
        component: BTreeSet<Vertex>,
        left: Vertex,
        right: Vertex,
    },
}

pub enum CutOutcome {
    Cut(Cut),
    Problem(CutProblem),
}

/// The essentially unique cut of interior(Y) \ interior(X) consistent with
/// the orientation and the recolouring: non-local vertices get forced sides,
/// local components follow their sided neighbours, free components go left.
pub fn consistent_cut(
    an: &Analyzer,
    ent: &EntanglementGraph,
    x: NodeId,
    y: NodeId,
    e: &[Colour],
    o: &Orientation,
) -> Result<CutOutcome> {
    if !an.d.tree().is_ancestor(y, x) {
        return Err(Error::InvalidDecomposition(format!("({x},{y}) is not a context")));
    }
    if !an.is_realized(e) {
        return Err(Error::NotOriented(format!("recolouring {e:?} is not realized")));
    }
    let u_set: BTreeSet<Vertex> = interior(an, ent, y)
        .difference(&interior(an, ent, x))
        .copied()
        .collect();
    let local_blocks = ent.local_blocks();
    // forced sides for non-local vertices; true = left
    let mut side: BTreeMap<Vertex, bool> = BTreeMap::new();
    for &v in &u_set {
        let a = an.block_of_vertex(v);
        if local_blocks.contains(&a) {
            continue;
        }
        let mut left_witness = None;
        let mut right_witness = None;
        for b in 0..an.block_count() {
            let (fwd, bwd) = (o.has(a, b), o.has(b, a));
            if !fwd && !bwd {
                continue;
            }
            let port_colour = an.image_of_block(e, b);
            // v has a non-local colour, so it lies outside x and sees the
            // port class uniformly
            let adj = an.d.class_adjacent(x, port_colour, v);
            let is_left = if fwd { adj } else { !adj };
            if is_left {
                left_witness = Some(b);
            } else {
                right_witness = Some(b);
            }
        }
        match (left_witness, right_witness) {
            (Some(_), Some(_)) => return Ok(CutOutcome::Problem(CutProblem::BothSides { v })),
            (Some(_), None) => {
                side.insert(v, true);
            }
            (None, Some(_)) => {
                side.insert(v, false);
            }
            (None, None) => {}
        }
    }
    // local components follow their sided neighbours
    let locals: Vec<Vertex> = u_set
        .iter()
        .copied()
        .filter(|&v| local_blocks.contains(&an.block_of_vertex(v)))
        .collect();
    let comps = components_of(locals.len(), |a, b| {
        an.d.graph().has_edge(locals[a as usize], locals[b as usize])
    });
    for comp in comps {
        let vertices: BTreeSet<Vertex> = comp.iter().map(|&i| locals[i as usize]).collect();
        let mut left_nbr = None;
        let mut right_nbr = None;
        for &v in &vertices {
            for (&w, &s) in &side {
                if an.d.graph().has_edge(v, w) {
                    if s {
                        left_nbr = Some(w);
                    } else {
                        right_nbr = Some(w);
                    }
                }
            }
        }
        match (left_nbr, right_nbr) {
            (Some(l), Some(r)) => {
                return Ok(CutOutcome::Problem(CutProblem::LocalLink {
                    component: vertices,
                    left: l,
                    right: r,
                }))
            }
            (None, Some(_)) => {
                for v in vertices {
                    side.insert(v, false);
                }
            }
            // sided left, or free: free components default to the left
            _ => {
                for v in vertices {
                    side.insert(v, true);
                }
            }
        }
    }
    // full validation of the defining equivalence on cross pairs
    for (&v, &sv) in &side {
        for (&w, &sw) in &side {
            if !(sv && !sw) {
                continue;
            }
            let expected = o.has(an.block_of_vertex(v), an.block_of_vertex(w));
            if an.d.graph().has_edge(v, w) != expected {
                return Ok(CutOutcome::Problem(CutProblem::CrossPair { v, w }));
            }
        }
    }
    let left = side.iter().filter(|(_, &s)| s).map(|(&v, _)| v).collect();
    let right = side.iter().filter(|(_, &s)| !s).map(|(&v, _)| v).collect();
    Ok(CutOutcome::Cut(Cut { left, right }))
}

// ---------------------------------------------------------------------------
// outer components, profiles, centers
// ---------------------------------------------------------------------------

/// Components of the outer-path relation on the colours of x in the context
/// x ⊂ y: walks inside y avoiding edges contained in x. Colours with no
/// outer edge belong to no component.
pub fn outer_components(
    d: &TreeDecomposition,
    x: NodeId,
    y: NodeId,
) -> Result<Vec<BTreeSet<Colour>>> {
    let aux = OuterGraph::new(d, x, y)?;
    Ok(aux.components())
}

/// The outer-path relation between y-colour sets and x-colour sets: (A, B)
/// iff some outer path joins a vertex with y-colour in A to the port class B.
pub fn profile(
    d: &TreeDecomposition,
    x: NodeId,
    y: NodeId,
) -> Result<(Vec<BTreeSet<Colour>>, BTreeSet<(usize, usize)>)> {
    let aux = OuterGraph::new(d, x, y)?;
    let comps = aux.components();
    let mut rel = BTreeSet::new();
    for (ai, a) in comps.iter().enumerate() {
        for (bi, b) in comps.iter().enumerate() {
            if aux.connects(a, b) {
                rel.insert((ai, bi));
            }
        }
    }
    Ok((comps, rel))
}

/// View of a context with the argument's classes contracted to port nodes
/// and the argument-internal edges removed.
struct OuterGraph<'a> {
    d: &'a TreeDecomposition,
    x: NodeId,
    y: NodeId,
    k_x: usize,
    outside: Vec<Vertex>,
    /// aux component id per node (ports first, then outside vertices)
    comp: Vec<usize>,
    degree: Vec<usize>,
}

impl<'a> OuterGraph<'a> {
    fn new(d: &'a TreeDecomposition, x: NodeId, y: NodeId) -> Result<Self> {
        if !d.tree().is_ancestor(y, x) {
            return Err(Error::InvalidDecomposition(format!("({x},{y}) is not a context")));
        }
        let k_x = d.node_rank(x);
        let outside: Vec<Vertex> = d
            .tree()
            .node(y)
            .iter()
            .copied()
            .filter(|v| !d.tree().node(x).contains(v))
            .collect();
        let total = k_x + outside.len();
        let adj = |a: u32, b: u32| -> bool {
            let (a, b) = (a as usize, b as usize);
            match (a < k_x, b < k_x) {
                (true, true) => false, // no port-port edges
                (true, false) => d.class_adjacent(x, a as Colour + 1, outside[b - k_x]),
                (false, true) => d.class_adjacent(x, b as Colour + 1, outside[a - k_x]),
                (false, false) => d.graph().has_edge(outside[a - k_x], outside[b - k_x]),
            }
        };
        let comps = components_of(total, &adj);
        let mut comp = vec![0; total];
        for (ci, members) in comps.iter().enumerate() {
            for &m in members {
                comp[m as usize] = ci;
            }
        }
        let degree = (0..total)
            .map(|a| (0..total).filter(|&b| b != a && adj(a as u32, b as u32)).count())
            .collect();
        Ok(OuterGraph {
            d,
            x,
            y,
            k_x,
            outside,
            comp,
            degree,
        })
    }

    /// Outer components: port classes grouped by aux component, isolated
    /// ports dropped.
    fn components(&self) -> Vec<BTreeSet<Colour>> {
        let mut by_comp: BTreeMap<usize, BTreeSet<Colour>> = BTreeMap::new();
        for c in 0..self.k_x {
            if self.degree[c] > 0 {
                by_comp.entry(self.comp[c]).or_default().insert(c as Colour + 1);
            }
        }
        by_comp.into_values().collect()
    }

    /// An outer path (≥ 1 edge) from a vertex with y-colour in `a` to a port
    /// class in `b`.
    fn connects(&self, a: &BTreeSet<Colour>, b: &BTreeSet<Colour>) -> bool {
        for target in b {
            let t = *target as usize - 1;
            if self.degree[t] == 0 {
                continue;
            }
            for v in self.d.tree().node(self.y) {
                if !a.contains(&self.d.colour_in(self.y, *v)) {
                    continue;
                }
                let node = if self.d.tree().node(self.x).contains(v) {
                    self.d.colour_in(self.x, *v) as usize - 1
                } else {
                    self.k_x + self.outside.iter().position(|u| u == v).unwrap()
                };
                if self.degree[node] == 0 {
                    continue;
                }
                if self.comp[node] == self.comp[t] {
                    return true;
                }
            }
        }
        false
    }
}

/// A minimum-size connected set of vertices introduced by the context that
/// meets every path from x to the complement of y. None when no such
/// connected separator exists.
pub fn find_center(
    d: &TreeDecomposition,
    x: NodeId,
    y: NodeId,
) -> Result<Option<BTreeSet<Vertex>>> {
    if !d.tree().is_ancestor(y, x) {
        return Err(Error::InvalidDecomposition(format!("({x},{y}) is not a context")));
    }
    let introduced: Vec<Vertex> = d
        .tree()
        .node(y)
        .iter()
        .copied()
        .filter(|v| !d.tree().node(x).contains(v))
        .collect();
    let cap = caps::center_vertices();
    if introduced.len() > cap {
        return Err(Error::TooLarge {
            what: "center subset search",
            size: introduced.len(),
            cap,
        });
    }
    let g = d.graph();
    let x_set = d.tree().node(x);
    let y_set = d.tree().node(y);
    let separates = |s: &BTreeSet<Vertex>| -> bool {
        // BFS from x avoiding s; fail when the complement of y is reached
        let mut seen: BTreeSet<Vertex> =
            x_set.iter().copied().filter(|v| !s.contains(v)).collect();
        let mut stack: Vec<Vertex> = seen.iter().copied().collect();
        while let Some(v) = stack.pop() {
            for u in g.vertices() {
                if s.contains(&u) || seen.contains(&u) || !g.has_edge(u, v) {
                    continue;
                }
                if !y_set.contains(&u) {
                    return false;
                }
                seen.insert(u);
                stack.push(u);
            }
        }
        true
    };
    let connected = |s: &BTreeSet<Vertex>| -> bool {
        if s.len() <= 1 {
            return true;
        }
        let vs: Vec<Vertex> = s.iter().copied().collect();
        components_of(vs.len(), |a, b| g.has_edge(vs[a as usize], vs[b as usize])).len() == 1
    };
    let m = introduced.len();
    for size in 0..=m {
        for combo in combinations(m, size) {
            let s: BTreeSet<Vertex> = combo.iter().map(|&i| introduced[i]).collect();
            if connected(&s) && separates(&s) {
                return Ok(Some(s));
            }
        }
    }
    Ok(None)
}

fn combinations(m: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(m: usize, size: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in from..m {
            cur.push(i);
            rec(m, size, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(m, size, 0, &mut Vec::new(), &mut out);
    out
}

// ---------------------------------------------------------------------------
// the final linearisation
// ---------------------------------------------------------------------------

/// Builds the linearisation of an oriented decomposition: leaves are ordered
/// by the pairwise orientations, every other interior vertex is slotted
/// between consecutive leaves via the sides it takes in consistent cuts, and
/// parts are grouped by introducing node.
pub fn build_linearisation(d: &TreeDecomposition, o: &Orientation) -> Result<Linearisation> {
    let an = Analyzer::new(d)?;
    let ent = entanglement(&an);
    if !ent.is_symmetric_irreflexive() {
        return Err(Error::NotOriented(
            "entanglement is not symmetric and irreflexive".into(),
        ));
    }
    // orientations must exist for all disjoint pairs and be independent of
    // the recolourings, each equal to o or its opposite
    let nodes: Vec<NodeId> = d.tree().node_ids().collect();
    for &x1 in &nodes {
        for &x2 in &nodes {
            if x1 >= x2 || !d.tree().are_disjoint(x1, x2) {
                continue;
            }
            let mut seen: Option<Orientation> = None;
            for e1 in &an.realized_recolourings {
                for e2 in &an.realized_recolourings {
                    match orientation_of(&an, &ent, x1, x2, e1, e2)? {
                        OrientationOutcome::Violation(why) => {
                            return Err(Error::NotOriented(format!("nodes ({x1},{x2}): {why}")))
                        }
                        OrientationOutcome::Oriented(or) => match &seen {
                            None => seen = Some(or),
                            Some(prev) if *prev == or => {}
                            Some(_) => {
                                return Err(Error::NotOriented(format!(
                                    "orientation of ({x1},{x2}) depends on the recolouring"
                                )))
                            }
                        },
                    }
                }
            }
            if let Some(or) = seen {
                if or != *o && or != o.opposite() {
                    return Err(Error::NotOriented(format!(
                        "orientation of ({x1},{x2}) is neither the given one nor its opposite"
                    )));
                }
            }
        }
    }
    let e = an.realized_recolourings[0].clone();
    // order the leaves by the sequential order
    let mut leaves = d.tree().leaves();
    let before = |x1: NodeId, x2: NodeId| -> Result<bool> {
        match orientation_of(&an, &ent, x1, x2, &e, &e)? {
            OrientationOutcome::Oriented(or) => Ok(or == *o),
            OrientationOutcome::Violation(why) => Err(Error::NotOriented(why)),
        }
    };
    let mut ordered = vec![leaves.remove(0)];
    for leaf in leaves {
        let mut at = ordered.len();
        for (i, &other) in ordered.iter().enumerate() {
            if before(leaf, other)? {
                at = i;
                break;
            }
        }
        ordered.insert(at, leaf);
    }
    // verify the sequential order is transitive across the sorted leaves
    for i in 0..ordered.len() {
        for j in i + 1..ordered.len() {
            if !before(ordered[i], ordered[j])? {
                return Err(Error::Construction(format!(
                    "sequential order on leaves is not transitive at ({},{})",
                    ordered[i], ordered[j]
                )));
            }
        }
    }
    let root = d.tree().root();
    let root_interior = interior(&an, &ent, root);
    let leaf_interiors: Vec<BTreeSet<Vertex>> =
        ordered.iter().map(|&x| interior(&an, &ent, x)).collect();
    let in_some_leaf_interior = |v: Vertex| leaf_interiors.iter().any(|s| s.contains(&v));
    // precompute the consistent cut of each context (leaf ⊂ root)
    let mut cuts = Vec::new();
    for &x in &ordered {
        match consistent_cut(&an, &ent, x, root, &e, o)? {
            CutOutcome::Problem(p) => {
                return Err(Error::Construction(format!(
                    "no consistent cut for leaf {x}: {p:?}"
                )))
            }
            CutOutcome::Cut(cut) => cuts.push(cut),
        }
    }
    // the side of a vertex with respect to a leaf: forced left, forced
    // right, or free (a local component defaulted left without an anchor)
    let side_wrt = |u: Vertex, leaf_idx: usize| -> Option<bool> {
        let cut = &cuts[leaf_idx];
        if cut.left.contains(&u) {
            if ent.local_blocks().contains(&an.block_of_vertex(u)) && !anchored(&an, &ent, cut, u)
            {
                return None;
            }
            Some(true)
        } else if cut.right.contains(&u) {
            Some(false)
        } else {
            None
        }
    };
    let n = ordered.len();
    let mut slot_of: BTreeMap<Vertex, usize> = BTreeMap::new();
    for v in d.graph().vertices() {
        if !root_interior.contains(&v) || in_some_leaf_interior(v) {
            continue;
        }
        let mut max_right = 0; // largest i (1-based) with X_i < v
        let mut min_left = n + 1; // smallest i with v < X_i
        for i in 0..n {
            match side_wrt(v, i) {
                Some(true) => min_left = min_left.min(i + 1),
                Some(false) => max_right = max_right.max(i + 1),
                None => {}
            }
        }
        if min_left <= max_right {
            return Err(Error::Construction(format!(
                "vertex {v} has no slot: right of leaf {max_right} but left of leaf {min_left}"
            )));
        }
        slot_of.insert(v, max_right);
    }
    // assemble: non-interior vertices first, then U_0 < int(X_1) < U_1 < …
    let mut parts: Vec<Vec<Vertex>> = Vec::new();
    let push_group = |vs: Vec<Vertex>, slot: Option<usize>, parts: &mut Vec<Vec<Vertex>>| {
        // split by introducing node so every part is legal; inside a slot,
        // groups on the left leaf's branch come deepest-first and groups on
        // the right leaf's branch shallowest-last
        let mut by_node: BTreeMap<NodeId, Vec<Vertex>> = BTreeMap::new();
        for v in vs {
            by_node.entry(d.introducing_node(v)).or_default().push(v);
        }
        let mut groups: Vec<(NodeId, Vec<Vertex>)> = by_node.into_iter().collect();
        if let Some(i) = slot {
            let contains = |z: NodeId, leaf: NodeId| {
                d.tree().node(leaf).is_subset(d.tree().node(z))
            };
            groups.sort_by_key(|&(z, _)| {
                let anc_left = i >= 1 && contains(z, ordered[i - 1]);
                let anc_right = i < n && contains(z, ordered[i]);
                let depth = d.tree().depth(z) as i64;
                match (anc_left, anc_right) {
                    (true, false) => (0, -depth),
                    (true, true) => (1, -depth),
                    (false, false) => (1, depth),
                    (false, true) => (2, depth),
                }
            });
        }
        for (_, group) in groups {
            parts.push(group);
        }
    };
    let outside: Vec<Vertex> = d
        .graph()
        .vertices()
        .filter(|&v| !root_interior.contains(&v))
        .collect();
    push_group(outside, None, &mut parts);
    for i in 0..=n {
        if i > 0 {
            push_group(
                leaf_interiors[i - 1].iter().copied().collect(),
                None,
                &mut parts,
            );
        }
        let us: Vec<Vertex> = slot_of
            .iter()
            .filter(|(_, &s)| s == i)
            .map(|(&v, _)| v)
            .collect();
        push_group(us, Some(i), &mut parts);
    }
    let lin = Linearisation { parts };
    lin.validate(d)?;
    Ok(lin)
}

/// Whether a left-defaulted local vertex actually reaches a non-local left
/// vertex through local left vertices (otherwise its component was free).
fn anchored(an: &Analyzer, ent: &EntanglementGraph, cut: &Cut, u: Vertex) -> bool {
    let local = ent.local_blocks();
    let mut seen: BTreeSet<Vertex> = [u].into_iter().collect();
    let mut stack = vec![u];
    while let Some(v) = stack.pop() {
        for &w in &cut.left {
            if seen.contains(&w) || !an.d.graph().has_edge(v, w) {
                continue;
            }
            if !local.contains(&an.block_of_vertex(w)) {
                return true;
            }
            seen.insert(w);
            stack.push(w);
        }
    }
    false
}

/// Measures the width of a built linearisation.
pub fn linearisation_width_of(d: &TreeDecomposition, lin: &Linearisation) -> usize {
    preorder_width(d.graph(), &lin.parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn blocks_of(d: &TreeDecomposition) -> SupercolourPartition {
        recolouring_kernel(d).expect("fixture has supercolours")
    }

    fn tops_to_bottoms(an: &Analyzer) -> Orientation {
        let t = an.block_of_colour(1);
        let b = an.block_of_colour(2);
        Orientation {
            arrows: [(t, b)].into_iter().collect(),
        }
    }

    #[test]
    fn identity_recolourings_give_singleton_blocks() {
        let d = fixtures::half_graph_centered_chain(5);
        let sc = blocks_of(&d);
        assert_eq!(sc.blocks.len(), 2);
        assert!(sc.blocks.iter().all(|b| b.len() == 1));
    }

    #[test]
    fn child_tree_chain_has_no_supercolours() {
        // leaf-triple contexts and prefix contexts have different kernels
        let d = fixtures::child_tree_chain(4).unwrap();
        assert!(recolouring_kernel(&d).is_none());
    }

    #[test]
    fn matching_chain_kernel_is_singletons() {
        let d = fixtures::matching_chain(3);
        assert_eq!(blocks_of(&d).blocks.len(), 2);
    }

    #[test]
    fn matching_chain_entanglement_is_empty() {
        let d = fixtures::matching_chain(4);
        let an = Analyzer::new(&d).unwrap();
        let ent = entanglement(&an);
        assert!(ent.edges.is_empty());
        assert!(ent.some_every_consistent);
        assert!(check_normalized(&an, &ent));
    }

    #[test]
    fn halfgraph_entanglement_is_symmetric() {
        for d in [
            fixtures::half_graph_centered_chain(5),
            fixtures::half_graph_centered_binary(6),
        ] {
            let an = Analyzer::new(&d).unwrap();
            let ent = entanglement(&an);
            let t = an.block_of_colour(1);
            let b = an.block_of_colour(2);
            assert!(ent.entangled(t, b), "T entangled with B");
            assert!(ent.entangled(b, t), "B entangled with T");
            assert!(!ent.entangled(t, t));
            assert!(!ent.entangled(b, b));
            assert!(ent.is_symmetric_irreflexive());
            assert!(ent.some_every_consistent);
            assert!(check_normalized(&an, &ent));
        }
    }

    #[test]
    fn comparability_fixture_is_self_entangled() {
        let d = fixtures::comparability_fixture(2);
        let an = Analyzer::new(&d).unwrap();
        let ent = entanglement(&an);
        assert!(ent.entangled(0, 0));
        assert!(!ent.is_symmetric_irreflexive());
    }

    #[test]
    fn nonlocal_pair_fixture_is_not_normalized() {
        let d = fixtures::nonlocal_pair_fixture(6);
        let an = Analyzer::new(&d).unwrap();
        let ent = entanglement(&an);
        // T/B entangled both ways, T'/B' entangled both ways
        assert!(ent.entangled(0, 1) && ent.entangled(1, 0));
        assert!(ent.entangled(2, 3) && ent.entangled(3, 2));
        // the (T, T') pair has no entanglement yet carries a non-local edge
        assert!(!ent.entangled(0, 2) && !ent.entangled(2, 0));
        assert!(!check_normalized(&an, &ent));
    }

    #[test]
    fn superflip_is_an_involution() {
        let d = fixtures::half_graph_centered_binary(6);
        let sc = blocks_of(&d);
        let once = superflip(&d, &sc.blocks[0], &sc.blocks[1]).unwrap();
        assert_ne!(once.graph(), d.graph());
        let twice = superflip(&once, &sc.blocks[0], &sc.blocks[1]).unwrap();
        assert_eq!(&twice, &d);
    }

    #[test]
    fn self_block_superflip_changes_graph_but_not_report() {
        let d = fixtures::half_graph_centered_chain(4);
        let sc = blocks_of(&d);
        let report = check_uniform(&d, 1);
        let flipped = superflip(&d, &sc.blocks[0], &sc.blocks[0]).unwrap();
        assert_ne!(flipped.graph(), d.graph());
        assert_eq!(check_uniform(&flipped, 1), report);
    }

    #[test]
    fn superflip_preserves_uniform_report() {
        for (name, d) in fixtures::analyzer_fixtures() {
            let Some(sc) = recolouring_kernel(&d) else { continue };
            if sc.blocks.len() > caps::superflip_blocks() {
                continue;
            }
            let report = check_uniform(&d, 1);
            for i in 0..sc.blocks.len() {
                for j in i..sc.blocks.len() {
                    let flipped = superflip(&d, &sc.blocks[i], &sc.blocks[j]).unwrap();
                    assert_eq!(check_uniform(&flipped, 1), report, "{name} flip ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn halfgraph_chain_uniform_at_q1() {
        let d = fixtures::half_graph_centered_chain(5);
        let report = check_uniform(&d, 1);
        assert_eq!(report.nodes_uniform, Some(true));
        assert_eq!(report.contexts_forward_invariant, Some(true));
        assert_eq!(report.colour_connected, Some(true));
    }

    #[test]
    fn mixed_blocks_are_not_uniform() {
        // one node is a joined pair, the root adds an unjoined pair
        let g = ColouredGraph::new(4, 2, vec![1, 2, 1, 2], [(0, 1)]).unwrap();
        let nodes = vec![
            (0..2u32).collect::<BTreeSet<_>>(),
            (0..4u32).collect::<BTreeSet<_>>(),
        ];
        let tree = crate::tree::SetTree::new(4, nodes).unwrap();
        let d = TreeDecomposition::new(g, tree, None).unwrap();
        let report = check_uniform(&d, 2);
        assert_eq!(report.nodes_uniform, Some(false));
    }

    #[test]
    fn single_context_idempotent_theory_is_forward_invariant() {
        let d = fixtures::matching_chain(2);
        let report = check_uniform(&d, 1);
        assert_eq!(report.contexts_forward_invariant, Some(true));
    }

    #[test]
    fn halfgraph_binary_orientations_are_bipolar() {
        let d = fixtures::half_graph_centered_binary(6);
        let an = Analyzer::new(&d).unwrap();
        let ent = entanglement(&an);
        let e = an.realized_recolourings[0].clone();
        let mut seen: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
        for x1 in d.tree().node_ids() {
            for x2 in d.tree().node_ids() {
                if x1 == x2 || !d.tree().are_disjoint(x1, x2) {
                    continue;
                }
                match orientation_of(&an, &ent, x1, x2, &e, &e).unwrap() {
                    OrientationOutcome::Oriented(o) => {
                        seen.insert(o.arrows.into_iter().collect());
                    }
                    OrientationOutcome::Violation(w) => panic!("not oriented: {w}"),
                }
            }
        }
        assert_eq!(seen.len(), 2);
        let pair: Vec<_> = seen.into_iter().collect();
        let o0 = Orientation {
            arrows: pair[0].iter().copied().collect(),
        };
        let o1 = Orientation {
            arrows: pair[1].iter().copied().collect(),
        };
        assert_eq!(o0.opposite(), o1);
    }

    #[test]
    fn swapped_nodes_give_opposite_orientation() {
        let d = fixtures::half_graph_centered_binary(6);
        let an = Analyzer::new(&d).unwrap();
        let ent = entanglement(&an);
        let e = an.realized_recolourings[0].clone();
        let leaves = d.tree().leaves();
        let (x1, x2) = (leaves[0], leaves[1]);
        let OrientationOutcome::Oriented(a) = orientation_of(&an, &ent, x1, x2, &e, &e).unwrap()
        else {
            panic!()
        };
        let OrientationOutcome::Oriented(b) = orientation_of(&an, &ent, x2, x1, &e, &e).unwrap()
        else {
            panic!()
        };
        assert_eq!(a.opposite(), b);
        assert_ne!(a, b);
    }

    #[test]
    fn self_entangled_fixture_has_no_orientation() {
        let d = fixtures::comparability_fixture(2);
        let an = Analyzer::new(&d).unwrap();
        let ent = entanglement(&an);
        let t = d.tree();
        let mut pair = None;
        for a in t.node_ids() {
            for b in t.node_ids() {
                if a != b && t.are_disjoint(a, b) {
                    pair = Some((a, b));
                }
            }
        }
        let (a, b) = pair.unwrap();
        let e = an.realized_recolourings[0].clone();
        match orientation_of(&an, &ent, a, b, &e, &e).unwrap() {
            OrientationOutcome::Violation(_) => {}
            OrientationOutcome::Oriented(_) => panic!("self-entanglement must forbid orientations"),
        }
    }

    #[test]
    fn superflip_swaps_the_orientation() {
        let d = fixtures::half_graph_centered_binary(6);
        let an = Analyzer::new(&d).unwrap();
        let ent = entanglement(&an);
        let e = an.realized_recolourings[0].clone();
        let leaves = d.tree().leaves();
        let OrientationOutcome::Oriented(before) =
            orientation_of(&an, &ent, leaves[0], leaves[1], &e, &e).unwrap()
        else {
            panic!()
        };
        let sc = blocks_of(&d);
        let flipped = superflip(&d, &sc.blocks[0], &sc.blocks[1]).unwrap();
        let an2 = Analyzer::new(&flipped).unwrap();
        let ent2 = entanglement(&an2);
        let OrientationOutcome::Oriented(after) =
            orientation_of(&an2, &ent2, leaves[0], leaves[1], &e, &e).unwrap()
        else {
            panic!()
        };
        assert_eq!(before.opposite(), after);
    }

    #[test]
    fn halfgraph_chain_cut_splits_columns() {
        let d = fixtures::half_graph_centered_chain(5);
        let an = Analyzer::new(&d).unwrap();
        let ent = entanglement(&an);
        let e = an.realized_recolourings[0].clone();
        let o = tops_to_bottoms(&an);
        let tree = d.tree();
        let root = tree.root();
        let x = tree.node_ids().min_by_key(|&id| tree.node(id).len()).unwrap();
        match consistent_cut(&an, &ent, x, root, &e, &o).unwrap() {
            CutOutcome::Cut(cut) => {
                // earlier columns left, later columns right
                let min_col = *tree.node(x).first().unwrap();
                let max_col = *tree.node(x).last().unwrap();
                for &v in &cut.left {
                    assert!(v < min_col);
                }
                for &v in &cut.right {
                    assert!(v > max_col);
                }
                assert!(!cut.left.is_empty() && !cut.right.is_empty());
            }
            CutOutcome::Problem(p) => panic!("expected a cut, got {p:?}"),
        }
    }

    #[test]
    fn cut_covers_the_interior_difference() {
        let d = fixtures::half_graph_centered_chain(3);
        let an = Analyzer::new(&d).unwrap();
        let ent = entanglement(&an);
        let e = an.realized_recolourings[0].clone();
        let o = tops_to_bottoms(&an);
        let root = d.tree().root();
        assert!(consistent_cut(&an, &ent, root, root, &e, &o).is_err());
        let x = d.tree().node_ids().min_by_key(|&id| d.tree().node(id).len()).unwrap();
        if let CutOutcome::Cut(cut) = consistent_cut(&an, &ent, x, root, &e, &o).unwrap() {
            let u: BTreeSet<Vertex> = interior(&an, &ent, root)
                .difference(&interior(&an, &ent, x))
                .copied()
                .collect();
            assert_eq!(cut.left.len() + cut.right.len(), u.len());
        } else {
            panic!("expected a cut");
        }
    }

    #[test]
    fn tampered_fixture_has_no_cut() {
        // removing one half-graph edge breaks the side equivalence
        let d = fixtures::half_graph_centered_chain(5);
        let edges: Vec<(Vertex, Vertex)> = d
            .graph()
            .edges()
            .filter(|&(u, v)| (u, v) != (0, 9))
            .collect();
        let g = ColouredGraph::new(
            d.graph().n(),
            d.graph().k(),
            d.graph().colours().to_vec(),
            edges,
        )
        .unwrap();
        let d2 = TreeDecomposition::new(g, d.tree().clone(), None).unwrap();
        if recolouring_kernel(&d2).is_some() {
            let an = Analyzer::new(&d2).unwrap();
            let ent = entanglement(&an);
            let e = an.realized_recolourings[0].clone();
            let o = tops_to_bottoms(&an);
            let root = d2.tree().root();
            let x = d2
                .tree()
                .node_ids()
                .min_by_key(|&id| d2.tree().node(id).len())
                .unwrap();
            match consistent_cut(&an, &ent, x, root, &e, &o) {
                Ok(CutOutcome::Problem(_)) | Err(_) => {}
                Ok(CutOutcome::Cut(_)) => panic!("tampered fixture must not admit a cut"),
            }
        }
        // losing the kernel entirely is also an acceptable failure mode
    }

    #[test]
    fn path_chain_has_one_recurrent_component() {
        let d = fixtures::path_chain(6);
        let t = d.tree();
        let x = t.node_ids().find(|&id| t.node(id).len() == 3).unwrap();
        let y = t.node_ids().find(|&id| t.node(id).len() == 5).unwrap();
        let comps = outer_components(&d, x, y).unwrap();
        assert_eq!(comps.len(), 1);
        let (comps, rel) = profile(&d, x, y).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(rel.len(), 1);
        assert!(rel.contains(&(0, 0)));
    }

    #[test]
    fn matching_profile_is_empty() {
        let d = fixtures::matching_chain(4);
        let t = d.tree();
        let x = t.node_ids().find(|&id| t.node(id).len() == 2).unwrap();
        let y = t.root();
        let (_, rel) = profile(&d, x, y).unwrap();
        assert!(rel.is_empty());
        assert!(outer_components(&d, x, y).unwrap().is_empty());
    }

    #[test]
    fn two_paths_give_identity_profile_on_two_components() {
        let d = fixtures::two_path_chain(5);
        let t = d.tree();
        let x = t.node_ids().find(|&id| t.node(id).len() == 4).unwrap();
        let y = t.node_ids().find(|&id| t.node(id).len() == 8).unwrap();
        let (comps, rel) = profile(&d, x, y).unwrap();
        assert_eq!(comps.len(), 2);
        let identity: BTreeSet<(usize, usize)> = (0..2).map(|i| (i, i)).collect();
        assert_eq!(rel, identity);
    }

    #[test]
    fn profile_is_an_idempotent_partial_function_on_fixtures() {
        for d in [fixtures::path_chain(6), fixtures::two_path_chain(4)] {
            for (x, y) in d.tree().contexts() {
                let (_, rel) = profile(&d, x, y).unwrap();
                for &(a, b) in &rel {
                    // partial function
                    assert!(rel.iter().filter(|&&(a2, _)| a2 == a).count() <= 1);
                    // idempotent: b maps to itself when it is in the image
                    assert!(rel.contains(&(b, b)));
                }
            }
        }
    }

    #[test]
    fn profile_composes_on_path_fixture() {
        let d = fixtures::path_chain(7);
        let t = d.tree();
        let node_of_len = |l: usize| t.node_ids().find(|&id| t.node(id).len() == l).unwrap();
        let (x, y, z) = (node_of_len(2), node_of_len(4), node_of_len(6));
        let (_, pxy) = profile(&d, x, y).unwrap();
        let (_, pyz) = profile(&d, y, z).unwrap();
        let (_, pxz) = profile(&d, x, z).unwrap();
        for &(a, b) in &pyz {
            for &(b2, c) in &pxy {
                if b == b2 {
                    assert!(pxz.contains(&(a, c)));
                }
            }
        }
    }

    #[test]
    fn center_of_single_through_vertex() {
        let d = fixtures::path_chain(5);
        let t = d.tree();
        // context {0..2} ⊂ {0..3}: introduced = {3}, every escape passes it
        let x = t.node_ids().find(|&id| t.node(id).len() == 3).unwrap();
        let y = t.node_ids().find(|&id| t.node(id).len() == 4).unwrap();
        let center = find_center(&d, x, y).unwrap().unwrap();
        assert_eq!(center, [3u32].into_iter().collect());
    }

    #[test]
    fn center_of_wider_context_is_a_cut_vertex() {
        let d = fixtures::path_chain(7);
        let t = d.tree();
        let x = t.node_ids().find(|&id| t.node(id).len() == 2).unwrap();
        let y = t.node_ids().find(|&id| t.node(id).len() == 6).unwrap();
        let center = find_center(&d, x, y).unwrap().unwrap();
        assert_eq!(center.len(), 1);
    }

    #[test]
    fn two_disjoint_through_paths_have_no_center() {
        let d = fixtures::two_path_chain(5);
        let t = d.tree();
        let x = t.node_ids().find(|&id| t.node(id).len() == 4).unwrap();
        let y = t.node_ids().find(|&id| t.node(id).len() == 8).unwrap();
        assert!(find_center(&d, x, y).unwrap().is_none());
    }

    #[test]
    fn linearisation_of_centered_chain() {
        let d = fixtures::half_graph_centered_chain(5);
        let an = Analyzer::new(&d).unwrap();
        let o = tops_to_bottoms(&an);
        let lin = build_linearisation(&d, &o).unwrap();
        let width = linearisation_width_of(&d, &lin);
        assert!(width <= 2, "width {width}");
    }

    #[test]
    fn linearisation_of_binary_fixture_is_optimal() {
        let d = fixtures::half_graph_centered_binary(4);
        let an = Analyzer::new(&d).unwrap();
        let o = tops_to_bottoms(&an);
        let lin = build_linearisation(&d, &o).unwrap();
        let width = linearisation_width_of(&d, &lin);
        let best = crate::decomp::min_chain_width(d.graph()).unwrap();
        assert_eq!(width, best);
    }

    #[test]
    fn asymmetric_fixture_fails_before_construction() {
        // a left-aligned chain over the half-graph: entanglement is
        // one-directional, so nothing can be oriented
        let d = fixtures::half_graph_prefix_chain(3);
        let an = Analyzer::new(&d).unwrap();
        let ent = entanglement(&an);
        assert!(!ent.is_symmetric_irreflexive());
        let o = Orientation {
            arrows: [(0, 1)].into_iter().collect(),
        };
        assert!(matches!(build_linearisation(&d, &o), Err(Error::NotOriented(_))));
    }
}
