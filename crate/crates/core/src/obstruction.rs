//! The obstruction library: binary graph terms whose iterations transduce all
//! trees, each admitted together with an executable tree-recovery decoder.
//! Decoding always ends with an exact regenerate-and-compare verification, so
//! an accepted answer is a genuine preimage.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::caps;
use crate::error::{Error, Result};
use crate::graph::{Colour, ColouredGraph, Vertex};
use crate::term::{GraphTerm, Template};
use crate::tree::{NodeId, SetTree};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Obstruction {
    pub name: String,
    pub term: GraphTerm,
    /// The minimal initial graph used by the decoders (one vertex per colour).
    pub initial: ColouredGraph,
    pub decoder: DecoderSpec,
}

impl Obstruction {
    pub fn new(
        name: &str,
        term: GraphTerm,
        initial: ColouredGraph,
        decoder: DecoderSpec,
    ) -> Result<Self> {
        let k = term.k_out();
        if term.arity() != 2 || term.arg_sort(0) != k || term.arg_sort(1) != k {
            return Err(Error::Type(format!(
                "obstruction must be a binary term of type {k} × {k} → {k}"
            )));
        }
        for i in 0..2 {
            let r = term.recolouring_of(i)?;
            if r != (1..=k as Colour).collect::<Vec<_>>() {
                return Err(Error::Type(format!(
                    "obstruction recolouring of argument {i} is not the identity"
                )));
            }
        }
        if initial.k() != k {
            return Err(Error::Type("initial graph sort mismatch".into()));
        }
        Ok(Obstruction {
            name: name.to_string(),
            term,
            initial,
            decoder,
        })
    }

    pub fn template(&self) -> Template {
        Template::new(self.initial.clone(), self.term.clone()).unwrap()
    }

    /// Recovers the generation tree of a graph produced by this obstruction's
    /// template, verifying the answer by exact regeneration.
    pub fn decode(&self, g: &ColouredGraph) -> Result<SetTree> {
        match &self.decoder {
            DecoderSpec::Comparability => {
                // comparability decoding is self-verifying (the recovered
                // order reproduces the edge relation exactly)
                decode_comparability(g)
            }
            DecoderSpec::Containment { marker, sync } => decode_containment(self, g, *marker, *sync),
            DecoderSpec::HalfgraphPair => decode_halfgraph_pair_impl(self, g),
            DecoderSpec::PairInterval(spec) => decode_pair_interval(self, g, spec),
            DecoderSpec::Search {
                leaf_size,
                internal_size,
            } => decode_by_search(self, g, *leaf_size, *internal_size),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DecoderSpec {
    /// Dominance order of the comparability graph.
    Comparability,
    /// Neighbourhoods of `sync`-coloured vertices in `marker`-coloured ones
    /// form the laminar family of subtrees.
    Containment { marker: Colour, sync: Colour },
    /// The a/b/c half-graph pair: b-vertices carry two depth-first orders.
    HalfgraphPair,
    /// Paired interval reads against marker colours.
    PairInterval(PairIntervalSpec),
    /// Bounded preimage enumeration over ordered shapes (for obstructions
    /// whose anomaly is a missing edge, leaving nothing to pair on).
    Search { leaf_size: usize, internal_size: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairIntervalSpec {
    pub pairing: Pairing,
    /// read on the pair's v-member, yielding the interval start
    pub f_read: Read,
    /// read on the pair's w-member, yielding the interval end
    pub l_read: Read,
    /// how to order the per-leaf vertices of each colour
    pub orders: Vec<LeafOrder>,
    /// body vertex ids of v, w (and the linking vertex) in the term
    pub v_term: Vertex,
    pub w_term: Vertex,
    pub lambda_term: Option<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Pairing {
    /// v and w joined by an edge, identified by their colours.
    Edge { v: Colour, w: Colour },
    /// v and w linked through a degree-2 vertex of the given colour.
    Lambda { lambda: Colour, v: Colour, w: Colour },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Read {
    pub marker: Colour,
    pub kind: ReadKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReadKind {
    /// neighbourhood is {f..n}: start of the own subtree
    SuffixFrom,
    /// neighbourhood is {l+1..n}: everything after the own subtree
    SuffixAfter,
    /// neighbourhood is {1..l}
    PrefixTo,
    /// neighbourhood is {1..f-1}
    PrefixBefore,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeafOrder {
    pub colour: Colour,
    /// colour class against which the neighbourhoods are compared; None means
    /// the vertices are interchangeable (isolated leaf vertices)
    pub via: Option<Colour>,
    pub bigger_first: bool,
}

// ---------------------------------------------------------------------------
// comparability decoding
// ---------------------------------------------------------------------------

/// Recovers the tree order from a comparability graph: v is an ancestor of w
/// iff they are adjacent and every neighbour of w (other than the two) is a
/// neighbour of v. Mutually dominating chain segments are ordered by vertex
/// id. Errors when the relation fails the tree-order axioms.
pub fn decode_comparability(g: &ColouredGraph) -> Result<SetTree> {
    let n = g.n();
    let dominates = |v: Vertex, w: Vertex| -> bool {
        g.has_edge(v, w)
            && g.vertices()
                .filter(|&u| u != v && u != w)
                .all(|u| !g.has_edge(w, u) || g.has_edge(v, u))
    };
    let mut anc = vec![vec![false; n]; n];
    for v in g.vertices() {
        for w in g.vertices() {
            if v == w {
                continue;
            }
            let dv = dominates(v, w);
            let dw = dominates(w, v);
            anc[v as usize][w as usize] = dv && (!dw || v < w);
        }
    }
    // every edge must be oriented exactly one way, non-edges not at all
    for v in 0..n {
        for w in v + 1..n {
            let oriented = anc[v][w] as usize + anc[w][v] as usize;
            if g.has_edge(v as Vertex, w as Vertex) {
                if oriented != 1 {
                    return Err(Error::Decode(format!(
                        "edge ({v},{w}) is not resolved by the ancestor relation"
                    )));
                }
            } else if oriented != 0 {
                return Err(Error::Decode(format!(
                    "non-adjacent pair ({v},{w}) became comparable"
                )));
            }
        }
    }
    // transitivity
    for a in 0..n {
        for b in 0..n {
            if !anc[a][b] {
                continue;
            }
            for c in 0..n {
                if anc[b][c] && !anc[a][c] {
                    return Err(Error::Decode(format!(
                        "ancestor relation is not transitive at ({a},{b},{c})"
                    )));
                }
            }
        }
    }
    // ancestors of a vertex form a chain
    for w in 0..n {
        let ancestors: Vec<usize> = (0..n).filter(|&v| anc[v][w]).collect();
        for (i, &a) in ancestors.iter().enumerate() {
            for &b in &ancestors[i + 1..] {
                if !anc[a][b] && !anc[b][a] {
                    return Err(Error::Decode(format!(
                        "ancestors {a} and {b} of {w} are incomparable"
                    )));
                }
            }
        }
    }
    // unique root, ancestor of everything
    let roots: Vec<usize> = (0..n).filter(|&v| (0..n).all(|u| !anc[u][v])).collect();
    if roots.len() != 1 || (0..n).any(|w| w != roots[0] && !anc[roots[0]][w]) {
        return Err(Error::Decode("no unique root dominating all vertices".into()));
    }
    let nodes = (0..n).map(|v| {
        (0..n)
            .filter(|&w| w == v || anc[v][w])
            .map(|w| w as u32)
            .collect::<BTreeSet<u32>>()
    });
    SetTree::new(n, nodes).map_err(|e| Error::Decode(format!("recovered family is not a tree: {e}")))
}

// ---------------------------------------------------------------------------
// containment decoding
// ---------------------------------------------------------------------------

fn decode_containment(
    o: &Obstruction,
    g: &ColouredGraph,
    marker: Colour,
    sync: Colour,
) -> Result<SetTree> {
    let markers: Vec<Vertex> = g.colour_class(marker);
    let syncs: Vec<Vertex> = g.colour_class(sync);
    let index: BTreeMap<Vertex, u32> = markers
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i as u32))
        .collect();
    if markers.is_empty() {
        return Err(Error::Decode("no marker vertices".into()));
    }
    let mut sets: Vec<BTreeSet<u32>> = Vec::new();
    let mut sync_of: BTreeMap<BTreeSet<u32>, Vertex> = BTreeMap::new();
    for &s in &syncs {
        let set: BTreeSet<u32> = markers
            .iter()
            .filter(|&&m| g.has_edge(s, m))
            .map(|m| index[m])
            .collect();
        if set.is_empty() {
            return Err(Error::Decode("a sync vertex has no marker neighbours".into()));
        }
        if sync_of.insert(set.clone(), s).is_some() {
            return Err(Error::Decode("two sync vertices share a neighbourhood".into()));
        }
        sets.push(set);
    }
    let tree = SetTree::new(markers.len(), sets)
        .map_err(|e| Error::Decode(format!("neighbourhoods are not laminar: {e}")))?;
    crate::term::validate_binary_shape(&tree).map_err(|e| Error::Decode(e.to_string()))?;
    // role assignment: sync vertex ↔ its node; marker i ↔ the leaf {i}
    let mut roles: BTreeMap<Vertex, (NodeId, Vertex)> = BTreeMap::new();
    let marker_initial = o.initial.colour_class(marker)[0];
    let sync_initial = o.initial.colour_class(sync)[0];
    let intro = o.term.introduced();
    if intro.len() != 1 {
        return Err(Error::Decode("containment decoder expects one introduced vertex".into()));
    }
    for id in tree.node_ids() {
        let s = sync_of
            .get(tree.node(id))
            .ok_or_else(|| Error::Decode("missing sync vertex for a node".into()))?;
        if tree.is_leaf(id) {
            if tree.node(id).len() != 1 {
                return Err(Error::Decode("leaf is not a singleton".into()));
            }
            roles.insert(*s, (id, sync_initial));
            let m = markers[*tree.node(id).first().unwrap() as usize];
            roles.insert(m, (id, marker_initial));
        } else {
            roles.insert(*s, (id, intro[0]));
        }
    }
    verify_by_regeneration(o, g, &tree, &roles)?;
    Ok(tree)
}

// ---------------------------------------------------------------------------
// the a/b/c half-graph pair decoder
// ---------------------------------------------------------------------------

/// Reconstructs the binary tree behind a graph generated by the three-colour
/// half-graph-pair obstruction: b-vertices are ordered by their a-neighbour
/// sets and by their c-neighbour sets, and the subtree of v is
/// `{u : v ≤_a u and u ≤_c v}`.
pub fn decode_halfgraph_pair(g: &ColouredGraph) -> Result<SetTree> {
    for name in ["halfgraph-pair-109a", "halfgraph-pair-109b"] {
        let o = by_name(name).expect("library obstruction");
        match o.decode(g) {
            Ok(t) => return Ok(t),
            Err(Error::Decode(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Decode(
        "not a graph generated by the half-graph-pair obstruction".into(),
    ))
}

fn decode_halfgraph_pair_impl(o: &Obstruction, g: &ColouredGraph) -> Result<SetTree> {
    if g.k() != 3 {
        return Err(Error::Decode(format!("expected 3 colours, got {}", g.k())));
    }
    let avs = g.colour_class(1);
    let bvs = g.colour_class(2);
    let cvs = g.colour_class(3);
    // counts: one a and one c per leaf, one b per tree node
    let leaves = avs.len();
    if leaves == 0 || cvs.len() != leaves || bvs.len() != 2 * leaves - 1 {
        return Err(Error::Decode("colour class sizes do not fit any tree".into()));
    }
    let na: Vec<BTreeSet<Vertex>> = bvs
        .iter()
        .map(|&x| avs.iter().copied().filter(|&a| g.has_edge(x, a)).collect())
        .collect();
    let nc: Vec<BTreeSet<Vertex>> = bvs
        .iter()
        .map(|&x| cvs.iter().copied().filter(|&c| g.has_edge(x, c)).collect())
        .collect();
    for family in [&na, &nc] {
        for (i, s) in family.iter().enumerate() {
            for t in &family[i + 1..] {
                if !s.is_subset(t) && !t.is_subset(s) {
                    return Err(Error::Decode("neighbour sets do not form a chain".into()));
                }
            }
        }
    }
    // subtree of x: everything below x in ≤_a and above in ≤_c
    let sets: Vec<BTreeSet<u32>> = (0..bvs.len())
        .map(|x| {
            (0..bvs.len())
                .filter(|&u| na[u].is_subset(&na[x]) && nc[u].is_subset(&nc[x]))
                .map(|u| u as u32)
                .collect()
        })
        .collect();
    let distinct: BTreeSet<&BTreeSet<u32>> = sets.iter().collect();
    if distinct.len() != sets.len() {
        return Err(Error::Decode("two b-vertices got the same subtree".into()));
    }
    let tree = SetTree::new(bvs.len(), sets.clone())
        .map_err(|e| Error::Decode(format!("subtrees are not laminar: {e}")))?;
    crate::term::validate_binary_shape(&tree).map_err(|e| Error::Decode(e.to_string()))?;
    // leaf positions: order leaf b-vertices by descending a-neighbourhoods
    let mut leaf_bs: Vec<usize> = (0..bvs.len()).filter(|&x| sets[x].len() == 1).collect();
    if leaf_bs.len() != leaves {
        return Err(Error::Decode("wrong number of leaves".into()));
    }
    leaf_bs.sort_by_key(|&x| std::cmp::Reverse(na[x].len()));
    // a-vertices ordered by ascending b-neighbourhoods, c by descending
    let mut a_sorted = avs.clone();
    a_sorted.sort_by_key(|&a| bvs.iter().filter(|&&x| g.has_edge(a, x)).count());
    let mut c_sorted = cvs.clone();
    c_sorted.sort_by_key(|&c| std::cmp::Reverse(bvs.iter().filter(|&&x| g.has_edge(c, x)).count()));
    // roles
    let intro = o.term.introduced();
    let (ia, ib, ic) = (
        o.initial.colour_class(1)[0],
        o.initial.colour_class(2)[0],
        o.initial.colour_class(3)[0],
    );
    let mut roles: BTreeMap<Vertex, (NodeId, Vertex)> = BTreeMap::new();
    let node_of_set: BTreeMap<&BTreeSet<u32>, NodeId> =
        tree.node_ids().map(|id| (tree.node(id), id)).collect();
    for (x, set) in sets.iter().enumerate() {
        let id = node_of_set[set];
        if set.len() == 1 {
            let pos = leaf_bs.iter().position(|&y| y == x).unwrap();
            roles.insert(bvs[x], (id, ib));
            roles.insert(a_sorted[pos], (id, ia));
            roles.insert(c_sorted[pos], (id, ic));
        } else {
            roles.insert(bvs[x], (id, intro[0]));
        }
    }
    verify_by_regeneration(o, g, &tree, &roles)?;
    Ok(tree)
}

// ---------------------------------------------------------------------------
// paired interval decoding
// ---------------------------------------------------------------------------

fn decode_pair_interval(
    o: &Obstruction,
    g: &ColouredGraph,
    spec: &PairIntervalSpec,
) -> Result<SetTree> {
    // identify pairs: (v-member, w-member)
    let mut pairs: Vec<(Vertex, Vertex)> = Vec::new();
    let mut lambda_of: BTreeMap<(Vertex, Vertex), Vertex> = BTreeMap::new();
    let mut paired: BTreeSet<Vertex> = BTreeSet::new();
    match &spec.pairing {
        Pairing::Edge { v: cv, w: cw } => {
            for (x, y) in g.edges() {
                let (a, b) = (g.colour(x), g.colour(y));
                if (a, b) == (*cv, *cw) || (a, b) == (*cw, *cv) {
                    pairs.push(orient_pair(g, spec, (x, y), (*cv, *cw))?);
                }
            }
            for &(v, w) in &pairs {
                if !paired.insert(v) || !paired.insert(w) {
                    return Err(Error::Decode("a vertex participates in two pairs".into()));
                }
            }
        }
        Pairing::Lambda { lambda, v: cv, w: cw } => {
            for l in g.colour_class(*lambda) {
                let nbrs: Vec<Vertex> = g.neighbours(l).into_iter().collect();
                if nbrs.len() != 2 {
                    continue; // leaf lambda vertices are isolated or decorative
                }
                let cs = (g.colour(nbrs[0]), g.colour(nbrs[1]));
                let pair = if cs == (*cv, *cw) {
                    (nbrs[0], nbrs[1])
                } else if cs == (*cw, *cv) {
                    (nbrs[1], nbrs[0])
                } else {
                    continue;
                };
                let pair = orient_pair(g, spec, pair, (*cv, *cw))?;
                lambda_of.insert(pair, l);
                pairs.push(pair);
                if !paired.insert(pair.0) || !paired.insert(pair.1) || !paired.insert(l) {
                    return Err(Error::Decode("a vertex participates in two pairs".into()));
                }
            }
        }
    }
    // leaf instances per colour, with positions
    let mut positions: BTreeMap<Colour, Vec<Vertex>> = BTreeMap::new();
    let mut n_leaves: Option<usize> = None;
    for ord in &spec.orders {
        let mut instances: Vec<Vertex> = g
            .colour_class(ord.colour)
            .into_iter()
            .filter(|v| !paired.contains(v))
            .collect();
        match n_leaves {
            None => n_leaves = Some(instances.len()),
            Some(n) if n == instances.len() => {}
            Some(n) => {
                return Err(Error::Decode(format!(
                    "colour {} has {} leaf vertices, expected {n}",
                    ord.colour,
                    instances.len()
                )))
            }
        }
        if let Some(via) = ord.via {
            let via_class: Vec<Vertex> = g.colour_class(via);
            let nb = |v: Vertex| -> BTreeSet<Vertex> {
                via_class.iter().copied().filter(|&u| g.has_edge(u, v)).collect()
            };
            let sets: BTreeMap<Vertex, BTreeSet<Vertex>> =
                instances.iter().map(|&v| (v, nb(v))).collect();
            instances.sort_by_key(|v| sets[v].len());
            if ord.bigger_first {
                instances.reverse();
            }
            // the neighbourhoods must form a strict chain
            for w in instances.windows(2) {
                let (s, t) = (&sets[&w[0]], &sets[&w[1]]);
                let nested = if ord.bigger_first {
                    t.is_subset(s) && t != s
                } else {
                    s.is_subset(t) && s != t
                };
                if !nested {
                    return Err(Error::Decode(format!(
                        "leaf vertices of colour {} are not strictly ordered",
                        ord.colour
                    )));
                }
            }
        }
        positions.insert(ord.colour, instances);
    }
    let n = n_leaves.ok_or_else(|| Error::Decode("no leaf orders configured".into()))?;
    if n == 0 {
        return Err(Error::Decode("no leaves".into()));
    }
    // read the interval of each pair
    let marker_pos = |marker: Colour| -> Result<&Vec<Vertex>> {
        positions
            .get(&marker)
            .ok_or_else(|| Error::Decode(format!("marker colour {marker} has no leaf order")))
    };
    let mut intervals: Vec<((usize, usize), (Vertex, Vertex))> = Vec::new();
    for &(v, w) in &pairs {
        let f = read_boundary(g, v, marker_pos(spec.f_read.marker)?, spec.f_read.kind)?;
        let l = read_boundary(g, w, marker_pos(spec.l_read.marker)?, spec.l_read.kind)?;
        if f > l || l > n || f == 0 {
            return Err(Error::Decode(format!("pair reads gave an empty interval [{f},{l}]")));
        }
        intervals.push(((f, l), (v, w)));
    }
    // assemble the tree: singleton leaves plus the pair intervals
    let mut sets: BTreeSet<BTreeSet<u32>> =
        (0..n as u32).map(|j| [j].into_iter().collect()).collect();
    let internal_count = intervals.iter().filter(|((f, l), _)| f < l).count();
    if n >= 2 && internal_count != n - 1 {
        return Err(Error::Decode(format!(
            "{internal_count} internal intervals cannot form a binary tree on {n} leaves"
        )));
    }
    for ((f, l), _) in &intervals {
        sets.insert((*f as u32 - 1..=*l as u32 - 1).collect());
    }
    if sets.len() != 2 * n - 1 {
        return Err(Error::Decode("duplicate intervals".into()));
    }
    let tree = SetTree::new(n, sets)
        .map_err(|e| Error::Decode(format!("intervals are not laminar: {e}")))?;
    crate::term::validate_binary_shape(&tree).map_err(|e| Error::Decode(e.to_string()))?;
    // roles
    let mut roles: BTreeMap<Vertex, (NodeId, Vertex)> = BTreeMap::new();
    let node_of_set: BTreeMap<&BTreeSet<u32>, NodeId> =
        tree.node_ids().map(|id| (tree.node(id), id)).collect();
    for (colour, instances) in &positions {
        let initial_vertex = o.initial.colour_class(*colour)[0];
        for (j, &v) in instances.iter().enumerate() {
            let leaf: BTreeSet<u32> = [j as u32].into_iter().collect();
            roles.insert(v, (node_of_set[&leaf], initial_vertex));
        }
    }
    for ((f, l), (v, w)) in &intervals {
        let set: BTreeSet<u32> = (*f as u32 - 1..=*l as u32 - 1).collect();
        let id = node_of_set[&set];
        if f < l {
            roles.insert(*v, (id, spec.v_term));
            roles.insert(*w, (id, spec.w_term));
            if let Some(&lam) = lambda_of.get(&(*v, *w)) {
                let lt = spec.lambda_term.ok_or_else(|| {
                    Error::Decode("lambda pairing without a lambda term vertex".into())
                })?;
                roles.insert(lam, (id, lt));
            }
        } else {
            // a leaf pair (the initial graph already links these vertices)
            let iv = o.initial.colour_class(g.colour(*v))[0];
            let iw = o.initial.colour_class(g.colour(*w))[0];
            roles.insert(*v, (id, iv));
            roles.insert(*w, (id, iw));
            if let Some(&lam) = lambda_of.get(&(*v, *w)) {
                roles.insert(lam, (id, o.initial.colour_class(g.colour(lam))[0]));
            }
        }
    }
    verify_by_regeneration(o, g, &tree, &roles)?;
    Ok(tree)
}

/// For same-coloured pair members, the v-member is the one whose f-read
/// neighbourhood strictly contains the w-member's.
fn orient_pair(
    g: &ColouredGraph,
    spec: &PairIntervalSpec,
    (x, y): (Vertex, Vertex),
    (cv, cw): (Colour, Colour),
) -> Result<(Vertex, Vertex)> {
    if cv != cw {
        return Ok(if g.colour(x) == cv { (x, y) } else { (y, x) });
    }
    let marker_class = g.colour_class(spec.f_read.marker);
    let nb = |v: Vertex| -> BTreeSet<Vertex> {
        marker_class.iter().copied().filter(|&m| g.has_edge(m, v)).collect()
    };
    let (nx, ny) = (nb(x), nb(y));
    if ny.is_subset(&nx) && nx != ny {
        Ok((x, y))
    } else if nx.is_subset(&ny) && nx != ny {
        Ok((y, x))
    } else {
        Err(Error::Decode("cannot orient a same-coloured pair".into()))
    }
}

fn read_boundary(
    g: &ColouredGraph,
    v: Vertex,
    markers: &[Vertex],
    kind: ReadKind,
) -> Result<usize> {
    let n = markers.len();
    let hits: BTreeSet<usize> = markers
        .iter()
        .enumerate()
        .filter(|(_, &m)| g.has_edge(m, v))
        .map(|(j, _)| j + 1)
        .collect();
    let (value, expected): (usize, BTreeSet<usize>) = match kind {
        ReadKind::SuffixFrom => {
            let f = *hits.first().ok_or_else(|| Error::Decode("empty suffix read".into()))?;
            (f, (f..=n).collect())
        }
        ReadKind::SuffixAfter => {
            let l = hits.first().map(|&s| s - 1).unwrap_or(n);
            (l, (l + 1..=n).collect())
        }
        ReadKind::PrefixTo => {
            let l = *hits.last().ok_or_else(|| Error::Decode("empty prefix read".into()))?;
            (l, (1..=l).collect())
        }
        ReadKind::PrefixBefore => {
            let f = hits.last().map(|&s| s + 1).unwrap_or(1);
            (f, (1..f).collect())
        }
    };
    if hits != expected {
        return Err(Error::Decode(format!(
            "marker neighbourhood of vertex {v} is not contiguous"
        )));
    }
    Ok(value)
}

// ---------------------------------------------------------------------------
// bounded preimage search
// ---------------------------------------------------------------------------

fn decode_by_search(
    o: &Obstruction,
    g: &ColouredGraph,
    leaf_size: usize,
    internal_size: usize,
) -> Result<SetTree> {
    // n leaves contribute leaf_size vertices each, n-1 internals the rest
    let total = g.n();
    if (total + internal_size) % (leaf_size + internal_size) != 0 {
        return Err(Error::Decode("vertex count fits no tree".into()));
    }
    let n = (total + internal_size) / (leaf_size + internal_size);
    if n == 0 || n > 8 {
        return Err(Error::Decode(format!("leaf count {n} outside the searchable range")));
    }
    let tpl = o.template();
    for shape in ordered_interval_shapes(n) {
        let (gen, _) = tpl.generate_traced(&shape)?;
        if refined_isomorphic(&gen, g) {
            return Ok(shape);
        }
    }
    Err(Error::Decode("no generated graph matches".into()))
}

/// All ordered binary trees over leaf intervals of {0..n-1}: children split
/// the interval, so the canonical child order is the left-to-right order.
pub fn ordered_interval_shapes(n: usize) -> Vec<SetTree> {
    fn splits(f: u32, l: u32, acc: &mut Vec<Vec<BTreeSet<u32>>>) {
        let base: BTreeSet<u32> = (f..=l).collect();
        if f == l {
            acc.push(vec![base]);
            return;
        }
        let mut here = Vec::new();
        for m in f..l {
            let mut left = Vec::new();
            splits(f, m, &mut left);
            let mut right = Vec::new();
            splits(m + 1, l, &mut right);
            for lnodes in &left {
                for rnodes in &right {
                    let mut nodes = vec![base.clone()];
                    nodes.extend(lnodes.iter().cloned());
                    nodes.extend(rnodes.iter().cloned());
                    here.push(nodes);
                }
            }
        }
        acc.append(&mut here);
    }
    let mut acc = Vec::new();
    splits(0, n as u32 - 1, &mut acc);
    acc.into_iter()
        .map(|nodes| SetTree::new(n, nodes).unwrap())
        .collect()
}

/// Colour-preserving isomorphism with 1-WL refinement, for the structured
/// graphs produced by obstruction templates. Private: inputs are small by
/// construction of the decoders.
fn refined_isomorphic(g1: &ColouredGraph, g2: &ColouredGraph) -> bool {
    if g1.n() != g2.n() || g1.k() != g2.k() || g1.edge_count() != g2.edge_count() {
        return false;
    }
    let n = g1.n();
    let refine = |g: &ColouredGraph| -> Vec<u64> {
        let mut label: Vec<u64> = g.vertices().map(|v| g.colour(v) as u64).collect();
        for _ in 0..n {
            let next_keys: Vec<(u64, Vec<u64>)> = (0..n)
                .map(|v| {
                    let mut nb: Vec<u64> = (0..n)
                        .filter(|&u| g.has_edge(u as Vertex, v as Vertex))
                        .map(|u| label[u])
                        .collect();
                    nb.sort_unstable();
                    (label[v], nb)
                })
                .collect();
            let mut sorted = next_keys.clone();
            sorted.sort();
            sorted.dedup();
            let relabel: BTreeMap<&(u64, Vec<u64>), u64> = sorted
                .iter()
                .enumerate()
                .map(|(i, key)| (key, i as u64))
                .collect();
            let new: Vec<u64> = next_keys.iter().map(|key| relabel[key]).collect();
            if new == label {
                break;
            }
            label = new;
        }
        label
    };
    let l1 = refine(g1);
    let l2 = refine(g2);
    let mut h1 = l1.clone();
    let mut h2 = l2.clone();
    h1.sort_unstable();
    h2.sort_unstable();
    if h1 != h2 {
        return false;
    }
    fn extend(
        g1: &ColouredGraph,
        g2: &ColouredGraph,
        l1: &[u64],
        l2: &[u64],
        v: usize,
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let n = g1.n();
        if v == n {
            return true;
        }
        for w in 0..n {
            if used[w] || l1[v] != l2[w] {
                continue;
            }
            if (0..v).all(|p| {
                g1.has_edge(p as Vertex, v as Vertex) == g2.has_edge(map[p] as Vertex, w as Vertex)
            }) {
                map[v] = w;
                used[w] = true;
                if extend(g1, g2, l1, l2, v + 1, map, used) {
                    return true;
                }
                used[w] = false;
            }
        }
        false
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(g1, g2, &l1, &l2, 0, &mut map, &mut used)
}

// ---------------------------------------------------------------------------
// regeneration check
// ---------------------------------------------------------------------------

/// Regenerates the graph from the recovered tree and compares it with the
/// input, edge by edge, through the decoder's role assignment.
fn verify_by_regeneration(
    o: &Obstruction,
    g: &ColouredGraph,
    tree: &SetTree,
    roles: &BTreeMap<Vertex, (NodeId, Vertex)>,
) -> Result<()> {
    if roles.len() != g.n() {
        return Err(Error::Decode(format!(
            "role assignment covers {} of {} vertices",
            roles.len(),
            g.n()
        )));
    }
    let (gen, tags) = o.template().generate_traced(tree)?;
    if gen.n() != g.n() {
        return Err(Error::Decode("regenerated graph has a different size".into()));
    }
    let lookup: BTreeMap<(NodeId, Vertex), Vertex> = tags
        .iter()
        .enumerate()
        .map(|(i, &tag)| (tag, i as Vertex))
        .collect();
    if lookup.len() != gen.n() {
        return Err(Error::Decode("ambiguous regeneration tags".into()));
    }
    let mut image: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    for (&v, tag) in roles {
        let &w = lookup
            .get(tag)
            .ok_or_else(|| Error::Decode(format!("role {tag:?} not produced by regeneration")))?;
        if image.insert(v, w).is_some() {
            return Err(Error::Decode("role assignment is not injective".into()));
        }
        if g.colour(v) != gen.colour(w) {
            return Err(Error::Decode(format!("colour mismatch at vertex {v}")));
        }
    }
    let values: BTreeSet<Vertex> = image.values().copied().collect();
    if values.len() != g.n() {
        return Err(Error::Decode("role images are not distinct".into()));
    }
    for u in g.vertices() {
        for v in u + 1..g.n() as Vertex {
            if g.has_edge(u, v) != gen.has_edge(image[&u], image[&v]) {
                return Err(Error::Decode(format!(
                    "edge mismatch between vertices {u} and {v}"
                )));
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// covering
// ---------------------------------------------------------------------------

/// Whether the obstruction's term is obtainable from `t` by entangled
/// superflips, contractions of connected local-colour sets, and vertex
/// deletions, with ports mapping to ports of the same argument in order.
/// Exhaustive search; superflips are enumerated first (they commute with the
/// other operations).
pub fn covers_obstruction(
    t: &GraphTerm,
    o: &Obstruction,
    supercolours: &[BTreeSet<Colour>],
    entangled: &[(usize, usize)],
) -> Result<bool> {
    let vcap = caps::cover_vertices();
    if t.body().n() > vcap {
        return Err(Error::TooLarge {
            what: "covering search body",
            size: t.body().n(),
            cap: vcap,
        });
    }
    let ccap = caps::cover_colours();
    if t.k_out() > ccap || o.term.k_out() > ccap {
        return Err(Error::TooLarge {
            what: "covering search colours",
            size: t.k_out().max(o.term.k_out()),
            cap: ccap,
        });
    }
    if t.arity() != 2 {
        return Err(Error::Type("covering needs a binary term".into()));
    }
    let block_of = |c: Colour| supercolours.iter().position(|b| b.contains(&c));
    let nonlocal: BTreeSet<usize> = entangled.iter().flat_map(|&(a, b)| [a, b]).collect();
    let is_local = |c: Colour| block_of(c).map(|b| !nonlocal.contains(&b)).unwrap_or(true);
    // unordered entangled block pairs drive the flip subsets
    let flip_pairs: Vec<(usize, usize)> = {
        let set: BTreeSet<(usize, usize)> = entangled
            .iter()
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .collect();
        set.into_iter().collect()
    };
    for mask in 0u32..(1 << flip_pairs.len()) {
        let mut body = t.body().clone();
        for (i, &(a, b)) in flip_pairs.iter().enumerate() {
            if mask & (1 << i) != 0 {
                body = superflip_term_body(t, &body, &supercolours[a], &supercolours[b]);
            }
        }
        let flipped = GraphTerm::new(body, (0..2).map(|i| t.ports(i).to_vec()).collect())
            .expect("flips never touch same-argument port pairs");
        if match_into(&flipped, &o.term, &is_local) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Flips all colour pairs of A × B in the body, except between ports of the
/// same argument (a term derived from a flipped decomposition never has
/// those edges).
fn superflip_term_body(
    t: &GraphTerm,
    body: &ColouredGraph,
    a: &BTreeSet<Colour>,
    b: &BTreeSet<Colour>,
) -> ColouredGraph {
    let same_arg = |u: Vertex, v: Vertex| {
        (0..t.arity()).any(|i| t.ports(i).contains(&u) && t.ports(i).contains(&v))
    };
    let mut edges: BTreeSet<(Vertex, Vertex)> = body.edges().collect();
    for u in body.vertices() {
        for v in u + 1..body.n() as Vertex {
            let (cu, cv) = (body.colour(u), body.colour(v));
            let hit = (a.contains(&cu) && b.contains(&cv)) || (a.contains(&cv) && b.contains(&cu));
            if hit && !same_arg(u, v) {
                if !edges.remove(&(u, v)) {
                    edges.insert((u, v));
                }
            }
        }
    }
    ColouredGraph::new(body.n(), body.k(), body.colours().to_vec(), edges).unwrap()
}

/// Pieces: each target vertex becomes either a single source vertex or a
/// contracted connected set of local-coloured introduced vertices; the edge
/// relation between pieces must match the target exactly.
fn match_into(src: &GraphTerm, target: &GraphTerm, is_local: &dyn Fn(Colour) -> bool) -> bool {
    // target vertices in a fixed order: ports (arg 0, arg 1), then introduced
    let mut tvs: Vec<Vertex> = Vec::new();
    for i in 0..2 {
        tvs.extend(target.ports(i).iter().copied());
    }
    tvs.extend(target.introduced());
    // candidate pieces for target introduced vertices: singletons and
    // connected local sets among src introduced vertices
    let src_intro = src.introduced();
    let mut pieces: Vec<BTreeSet<Vertex>> =
        src_intro.iter().map(|&v| [v].into_iter().collect()).collect();
    let local_intro: Vec<Vertex> = src_intro
        .iter()
        .copied()
        .filter(|&v| is_local(src.body().colour(v)))
        .collect();
    pieces.extend(connected_subsets(src.body(), &local_intro, 2));
    // port choices per argument: order-preserving injections
    fn injections(have: usize, want: usize) -> Vec<Vec<usize>> {
        fn rec(
            have: usize,
            want: usize,
            from: usize,
            cur: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if cur.len() == want {
                out.push(cur.clone());
                return;
            }
            for i in from..have {
                cur.push(i);
                rec(have, want, i + 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(have, want, 0, &mut Vec::new(), &mut out);
        out
    }
    for inj0 in injections(src.arg_sort(0), target.arg_sort(0)) {
        'next: for inj1 in injections(src.arg_sort(1), target.arg_sort(1)) {
            let mut assigned: Vec<BTreeSet<Vertex>> = Vec::new();
            for (pos, &tv) in tvs.iter().enumerate() {
                let piece: BTreeSet<Vertex> = if pos < target.arg_sort(0) {
                    [src.ports(0)[inj0[pos]]].into_iter().collect()
                } else if pos < target.arg_sort(0) + target.arg_sort(1) {
                    [src.ports(1)[inj1[pos - target.arg_sort(0)]]].into_iter().collect()
                } else {
                    break;
                };
                if src.body().colour(*piece.first().unwrap()) != target.body().colour(tv) {
                    continue 'next;
                }
                assigned.push(piece);
            }
            if !pieces_consistent(src.body(), target, &tvs, &assigned) {
                continue;
            }
            if assign_introduced(src, target, &tvs, &pieces, &mut assigned) {
                return true;
            }
        }
    }
    false
}

fn assign_introduced(
    src: &GraphTerm,
    target: &GraphTerm,
    tvs: &[Vertex],
    pieces: &[BTreeSet<Vertex>],
    assigned: &mut Vec<BTreeSet<Vertex>>,
) -> bool {
    if assigned.len() == tvs.len() {
        return true;
    }
    let tv = tvs[assigned.len()];
    let tcolour = target.body().colour(tv);
    'candidates: for piece in pieces {
        for used in assigned.iter() {
            if piece.intersection(used).next().is_some() {
                continue 'candidates;
            }
        }
        // a singleton keeps its colour; a contracted set takes any of its
        // colours
        if piece.len() == 1 {
            if src.body().colour(*piece.first().unwrap()) != tcolour {
                continue;
            }
        } else if !piece.iter().any(|&v| src.body().colour(v) == tcolour) {
            continue;
        }
        assigned.push(piece.clone());
        if pieces_consistent(src.body(), target, tvs, assigned)
            && assign_introduced(src, target, tvs, pieces, assigned)
        {
            return true;
        }
        assigned.pop();
    }
    false
}

/// Checks the target's edge relation on all currently assigned pieces.
fn pieces_consistent(
    body: &ColouredGraph,
    target: &GraphTerm,
    tvs: &[Vertex],
    assigned: &[BTreeSet<Vertex>],
) -> bool {
    for i in 0..assigned.len() {
        for j in i + 1..assigned.len() {
            let connected = assigned[i]
                .iter()
                .any(|&u| assigned[j].iter().any(|&v| body.has_edge(u, v)));
            if connected != target.body().has_edge(tvs[i], tvs[j]) {
                return false;
            }
        }
    }
    true
}

fn connected_subsets(
    g: &ColouredGraph,
    within: &[Vertex],
    min_size: usize,
) -> Vec<BTreeSet<Vertex>> {
    let mut out: BTreeSet<BTreeSet<Vertex>> = BTreeSet::new();
    let within_set: BTreeSet<Vertex> = within.iter().copied().collect();
    let mut frontier: Vec<BTreeSet<Vertex>> =
        within.iter().map(|&v| [v].into_iter().collect()).collect();
    let mut seen: BTreeSet<BTreeSet<Vertex>> = frontier.iter().cloned().collect();
    while let Some(set) = frontier.pop() {
        if set.len() >= min_size {
            out.insert(set.clone());
        }
        for &v in &within_set {
            if set.contains(&v) {
                continue;
            }
            if set.iter().any(|&u| g.has_edge(u, v)) {
                let mut bigger = set.clone();
                bigger.insert(v);
                if seen.insert(bigger.clone()) {
                    frontier.push(bigger);
                }
            }
        }
    }
    out.into_iter().collect()
}

// ---------------------------------------------------------------------------
// the library
// ---------------------------------------------------------------------------

pub fn library() -> &'static [Obstruction] {
    use std::sync::OnceLock;
    static LIB: OnceLock<Vec<Obstruction>> = OnceLock::new();
    LIB.get_or_init(build_library)
}

pub fn by_name(name: &str) -> Option<&'static Obstruction> {
    library().iter().find(|o| o.name == name)
}

fn graph(n: usize, colour: Vec<Colour>, edges: &[(Vertex, Vertex)]) -> ColouredGraph {
    let k = *colour.iter().max().unwrap() as usize;
    ColouredGraph::new(n, k, colour, edges.iter().copied()).unwrap()
}

fn term(body: ColouredGraph, args: Vec<Vec<Vertex>>) -> GraphTerm {
    GraphTerm::new(body, args).unwrap()
}

fn read(marker: Colour, kind: ReadKind) -> Read {
    Read { marker, kind }
}

fn order(colour: Colour, via: Option<Colour>, bigger_first: bool) -> LeafOrder {
    LeafOrder {
        colour,
        via,
        bigger_first,
    }
}

fn build_library() -> Vec<Obstruction> {
    let mut lib = Vec::new();

    // 131: the comparability step (one colour, one vertex joined to both ports)
    lib.push(
        Obstruction::new(
            "comparability-131",
            term(graph(3, vec![1, 1, 1], &[(0, 2), (1, 2)]), vec![vec![0], vec![1]]),
            ColouredGraph::single(),
            DecoderSpec::Comparability,
        )
        .unwrap(),
    );

    // 69: red neighbourhoods in blue follow the subtree containment
    lib.push(
        Obstruction::new(
            "containment-69",
            term(
                graph(5, vec![1, 2, 1, 2, 2], &[(0, 4), (2, 4)]),
                vec![vec![0, 1], vec![2, 3]],
            ),
            graph(2, vec![1, 2], &[(0, 1)]),
            DecoderSpec::Containment { marker: 1, sync: 2 },
        )
        .unwrap(),
    );

    // 109: the a/b/c pair of half-graphs with a synchronising b-vertex per
    // node (two variants, differing in the a–c diagonal)
    for (name, extra) in [("halfgraph-pair-109a", None), ("halfgraph-pair-109b", Some((0, 5)))] {
        let mut edges = vec![(0, 6), (3, 6), (2, 6), (5, 6), (1, 3), (4, 2)];
        if let Some(e) = extra {
            edges.push(e);
        }
        lib.push(
            Obstruction::new(
                name,
                term(
                    graph(7, vec![1, 2, 3, 1, 2, 3, 2], &edges),
                    vec![vec![0, 1, 2], vec![3, 4, 5]],
                ),
                graph(3, vec![1, 2, 3], &[(0, 1), (1, 2)]),
                DecoderSpec::HalfgraphPair,
            )
            .unwrap(),
        );
    }

    // 108: two half-graphs (a/b and c/d) with an ℓ-vertex linking the b and c
    // contributed by the same node
    lib.push(
        Obstruction::new(
            "linked-pair-108",
            term(
                graph(
                    13,
                    vec![1, 2, 3, 4, 5, 1, 2, 3, 4, 5, 2, 3, 4],
                    &[
                        (0, 10),
                        (5, 10), // β to both a-ports
                        (0, 6),  // b2–a1
                        (4, 12),
                        (9, 12), // γ to both d-ports
                        (3, 9),  // c1–d2
                        (10, 11),
                        (11, 12),
                    ],
                ),
                vec![vec![0, 1, 2, 3, 4], vec![5, 6, 7, 8, 9]],
            ),
            graph(5, vec![1, 2, 3, 4, 5], &[(0, 1), (3, 4), (1, 2), (2, 3)]),
            DecoderSpec::PairInterval(PairIntervalSpec {
                pairing: Pairing::Lambda {
                    lambda: 3,
                    v: 4,
                    w: 2,
                },
                f_read: read(5, ReadKind::SuffixFrom),
                l_read: read(1, ReadKind::PrefixTo),
                // b, c and ℓ vertices are all covered by the λ-pairs (the
                // initial graph links each leaf's b and c through its ℓ)
                orders: vec![order(1, Some(2), true), order(5, Some(4), false)],
                v_term: 12,
                w_term: 10,
                lambda_term: Some(11),
            }),
        )
        .unwrap(),
    );

    // 122: both witnesses in colour a, joined by the anomalous edge; the left
    // one sees the b-ports
    lib.push(
        Obstruction::new(
            "cut-122",
            term(
                graph(6, vec![1, 2, 1, 2, 1, 1], &[(4, 5), (1, 4), (3, 4), (0, 3)]),
                vec![vec![0, 1], vec![2, 3]],
            ),
            graph(2, vec![1, 2], &[]),
            DecoderSpec::PairInterval(PairIntervalSpec {
                pairing: Pairing::Edge { v: 1, w: 1 },
                f_read: read(2, ReadKind::SuffixFrom),
                l_read: read(2, ReadKind::SuffixAfter),
                orders: vec![order(1, Some(2), true), order(2, Some(1), false)],
                v_term: 4,
                w_term: 5,
                lambda_term: None,
            }),
        )
        .unwrap(),
    );

    // 124: witnesses in a and b sided through each other's ports, with the
    // edge between them missing; nothing to pair on, so decoding enumerates
    // preimages
    lib.push(
        Obstruction::new(
            "cut-124",
            term(
                graph(
                    6,
                    vec![1, 2, 1, 2, 1, 2],
                    &[(1, 4), (3, 4), (0, 5), (2, 5), (0, 3)],
                ),
                vec![vec![0, 1], vec![2, 3]],
            ),
            graph(2, vec![1, 2], &[]),
            DecoderSpec::Search {
                leaf_size: 2,
                internal_size: 2,
            },
        )
        .unwrap(),
    );

    // 125: witnesses in a and b, neither touching the c-ports, joined by the
    // anomalous edge; the two orientation edges run through colour c
    lib.push(
        Obstruction::new(
            "cut-125",
            term(
                graph(8, vec![1, 2, 3, 1, 2, 3, 1, 2], &[(6, 7), (1, 5), (2, 3)]),
                vec![vec![0, 1, 2], vec![3, 4, 5]],
            ),
            graph(3, vec![1, 2, 3], &[]),
            DecoderSpec::PairInterval(PairIntervalSpec {
                pairing: Pairing::Edge { v: 1, w: 2 },
                f_read: read(3, ReadKind::PrefixBefore),
                l_read: read(3, ReadKind::SuffixAfter),
                orders: vec![
                    order(1, Some(3), false),
                    order(2, Some(3), true),
                    order(3, Some(1), true),
                ],
                v_term: 6,
                w_term: 7,
                lambda_term: None,
            }),
        )
        .unwrap(),
    );

    // 126: four distinct supercolours; variant a has the anomalous edge
    // present, variant b has it missing
    lib.push(
        Obstruction::new(
            "cut-126a",
            term(
                graph(
                    10,
                    vec![1, 2, 3, 4, 1, 2, 3, 4, 1, 2],
                    &[(8, 9), (2, 4), (1, 7)],
                ),
                vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7]],
            ),
            graph(4, vec![1, 2, 3, 4], &[]),
            DecoderSpec::PairInterval(PairIntervalSpec {
                pairing: Pairing::Edge { v: 1, w: 2 },
                f_read: read(3, ReadKind::PrefixBefore),
                l_read: read(4, ReadKind::SuffixAfter),
                orders: vec![
                    order(1, Some(3), false),
                    order(2, Some(4), true),
                    order(3, Some(1), true),
                    order(4, Some(2), false),
                ],
                v_term: 8,
                w_term: 9,
                lambda_term: None,
            }),
        )
        .unwrap(),
    );
    lib.push(
        Obstruction::new(
            "cut-126b",
            term(
                graph(
                    10,
                    vec![1, 2, 3, 4, 1, 2, 3, 4, 1, 2],
                    &[(0, 5), (2, 4), (1, 7)],
                ),
                vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7]],
            ),
            graph(4, vec![1, 2, 3, 4], &[]),
            DecoderSpec::Search {
                leaf_size: 4,
                internal_size: 2,
            },
        )
        .unwrap(),
    );

    // 128: the 122 anomaly with its edge subdivided by a local colour
    lib.push(
        Obstruction::new(
            "cut-128",
            term(
                graph(
                    9,
                    vec![1, 2, 3, 1, 2, 3, 1, 3, 1],
                    &[(6, 7), (7, 8), (1, 6), (4, 6), (0, 4)],
                ),
                vec![vec![0, 1, 2], vec![3, 4, 5]],
            ),
            graph(3, vec![1, 2, 3], &[]),
            DecoderSpec::PairInterval(PairIntervalSpec {
                pairing: Pairing::Lambda {
                    lambda: 3,
                    v: 1,
                    w: 1,
                },
                f_read: read(2, ReadKind::SuffixFrom),
                l_read: read(2, ReadKind::SuffixAfter),
                orders: vec![
                    order(1, Some(2), true),
                    order(2, Some(1), false),
                    order(3, None, false),
                ],
                v_term: 6,
                w_term: 8,
                lambda_term: Some(7),
            }),
        )
        .unwrap(),
    );

    // 134: the 124 anomaly subdivided by a local colour (which also restores
    // the pairing)
    lib.push(
        Obstruction::new(
            "cut-134",
            term(
                graph(
                    9,
                    vec![1, 2, 3, 1, 2, 3, 1, 3, 2],
                    &[(6, 7), (7, 8), (1, 6), (4, 6), (0, 8), (3, 8), (0, 4)],
                ),
                vec![vec![0, 1, 2], vec![3, 4, 5]],
            ),
            graph(3, vec![1, 2, 3], &[]),
            DecoderSpec::PairInterval(PairIntervalSpec {
                pairing: Pairing::Lambda {
                    lambda: 3,
                    v: 1,
                    w: 2,
                },
                f_read: read(2, ReadKind::SuffixFrom),
                l_read: read(1, ReadKind::PrefixTo),
                orders: vec![
                    order(1, Some(2), true),
                    order(2, Some(1), false),
                    order(3, None, false),
                ],
                v_term: 6,
                w_term: 8,
                lambda_term: Some(7),
            }),
        )
        .unwrap(),
    );

    // 135: the 125 anomaly subdivided by a local colour
    lib.push(
        Obstruction::new(
            "cut-135",
            term(
                graph(
                    11,
                    vec![1, 2, 3, 4, 1, 2, 3, 4, 1, 3, 2],
                    &[(8, 9), (9, 10), (1, 7), (3, 4)],
                ),
                vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7]],
            ),
            graph(4, vec![1, 2, 3, 4], &[]),
            DecoderSpec::PairInterval(PairIntervalSpec {
                pairing: Pairing::Lambda {
                    lambda: 3,
                    v: 1,
                    w: 2,
                },
                f_read: read(4, ReadKind::PrefixBefore),
                l_read: read(4, ReadKind::SuffixAfter),
                orders: vec![
                    order(1, Some(4), false),
                    order(2, Some(4), true),
                    order(4, Some(1), true),
                    order(3, None, false),
                ],
                v_term: 8,
                w_term: 10,
                lambda_term: Some(9),
            }),
        )
        .unwrap(),
    );

    // 136: the 126 anomalies subdivided by a local colour
    lib.push(
        Obstruction::new(
            "cut-136a",
            term(
                graph(
                    13,
                    vec![1, 2, 3, 4, 5, 1, 2, 3, 4, 5, 1, 3, 2],
                    &[(10, 11), (11, 12), (3, 5), (1, 9)],
                ),
                vec![vec![0, 1, 2, 3, 4], vec![5, 6, 7, 8, 9]],
            ),
            graph(5, vec![1, 2, 3, 4, 5], &[]),
            DecoderSpec::PairInterval(PairIntervalSpec {
                pairing: Pairing::Lambda {
                    lambda: 3,
                    v: 1,
                    w: 2,
                },
                f_read: read(4, ReadKind::PrefixBefore),
                l_read: read(5, ReadKind::SuffixAfter),
                orders: vec![
                    order(1, Some(4), false),
                    order(2, Some(5), true),
                    order(4, Some(1), true),
                    order(5, Some(2), false),
                    order(3, None, false),
                ],
                v_term: 10,
                w_term: 12,
                lambda_term: Some(11),
            }),
        )
        .unwrap(),
    );
    lib.push(
        Obstruction::new(
            "cut-136b",
            term(
                graph(
                    13,
                    vec![1, 2, 3, 4, 5, 1, 2, 3, 4, 5, 1, 3, 2],
                    &[(10, 11), (11, 12), (3, 10), (8, 10), (0, 8), (1, 9)],
                ),
                vec![vec![0, 1, 2, 3, 4], vec![5, 6, 7, 8, 9]],
            ),
            graph(5, vec![1, 2, 3, 4, 5], &[]),
            DecoderSpec::PairInterval(PairIntervalSpec {
                pairing: Pairing::Lambda {
                    lambda: 3,
                    v: 1,
                    w: 2,
                },
                f_read: read(4, ReadKind::SuffixFrom),
                l_read: read(5, ReadKind::SuffixAfter),
                orders: vec![
                    order(1, Some(4), true),
                    order(2, Some(5), true),
                    order(4, Some(1), false),
                    order(5, Some(2), false),
                    order(3, None, false),
                ],
                v_term: 10,
                w_term: 12,
                lambda_term: Some(11),
            }),
        )
        .unwrap(),
    );

    lib
}


/// The library as shipped data: one JSON file per obstruction.
pub fn library_files() -> Vec<(String, String)> {
    library()
        .iter()
        .map(|o| {
            (
                format!("obstruction-{}.json", o.name),
                serde_json::to_string_pretty(o).expect("serializable") + "\n",
            )
        })
        .collect()
}
