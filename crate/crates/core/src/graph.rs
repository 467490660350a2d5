//! Coloured graphs and the rank machinery built on contextual classes.
//!
//! A `ColouredGraph` is a finite undirected graph with a surjective colouring
//! into `{1..k}`; these are the sort-`k` elements of the cliquewidth algebra.
//! The subset rank used throughout counts contextual classes (distinct
//! colour/neighbour-row pairs against the complement); the GF(2) matrix rank
//! is kept as a separate diagnostic and the two are never converted into one
//! another.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::caps;
use crate::error::{Error, Result};

pub type Vertex = u32;
pub type Colour = u32;

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct ColouredGraph {
    n: usize,
    k: usize,
    colour: Vec<Colour>,
    edges: BTreeSet<(Vertex, Vertex)>,
}

/// Wire format: `{"n":…, "k":…, "colour":[1-based per vertex], "edges":[[u,v],…]}`.
#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    k: usize,
    colour: Vec<Colour>,
    edges: Vec<(Vertex, Vertex)>,
}

impl TryFrom<GraphJson> for ColouredGraph {
    type Error = Error;
    fn try_from(j: GraphJson) -> Result<Self> {
        ColouredGraph::new(j.n, j.k, j.colour, j.edges)
    }
}

impl From<ColouredGraph> for GraphJson {
    fn from(g: ColouredGraph) -> Self {
        GraphJson {
            n: g.n,
            k: g.k,
            colour: g.colour,
            edges: g.edges.into_iter().collect(),
        }
    }
}

impl std::fmt::Debug for ColouredGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "ColouredGraph(n={}, k={}, colour={:?}, edges={:?})",
            self.n, self.k, self.colour, self.edges
        )
    }
}

impl ColouredGraph {
    pub fn new(
        n: usize,
        k: usize,
        colour: Vec<Colour>,
        edges: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph(
                "empty graph rejected: a colouring cannot be surjective".into(),
            ));
        }
        if k == 0 {
            return Err(Error::InvalidGraph("colour count must be at least 1".into()));
        }
        if colour.len() != n {
            return Err(Error::InvalidGraph(format!(
                "colour list has length {}, expected {}",
                colour.len(),
                n
            )));
        }
        let mut seen = vec![false; k];
        for (v, &c) in colour.iter().enumerate() {
            if c == 0 || c as usize > k {
                return Err(Error::InvalidGraph(format!(
                    "vertex {v} has colour {c}, outside 1..={k}"
                )));
            }
            seen[c as usize - 1] = true;
        }
        if let Some(c) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidGraph(format!(
                "colouring is not surjective: colour {} unused",
                c + 1
            )));
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u},{v}) references a vertex outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(ColouredGraph {
            n,
            k,
            colour,
            edges: set,
        })
    }

    /// Single vertex in the unique colour: the constant of the algebra.
    pub fn single() -> Self {
        ColouredGraph::new(1, 1, vec![1], []).unwrap()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn colour(&self, v: Vertex) -> Colour {
        self.colour[v as usize]
    }

    pub fn colours(&self) -> &[Colour] {
        &self.colour
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        0..self.n as Vertex
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u != v && self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn neighbours(&self, v: Vertex) -> BTreeSet<Vertex> {
        self.vertices().filter(|&u| self.has_edge(u, v)).collect()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.vertices().filter(|&u| self.has_edge(u, v)).count()
    }

    pub fn colour_class(&self, c: Colour) -> Vec<Vertex> {
        self.vertices().filter(|&v| self.colour(v) == c).collect()
    }

    /// Induced subgraph on `keep` (in the given order), recoloured by `colour_of`.
    /// The caller is responsible for surjectivity of the new colouring.
    pub fn induced_recoloured(
        &self,
        keep: &[Vertex],
        k: usize,
        colour_of: impl Fn(Vertex) -> Colour,
    ) -> Result<Self> {
        let index: BTreeMap<Vertex, Vertex> = keep
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i as Vertex))
            .collect();
        if index.len() != keep.len() {
            return Err(Error::InvalidGraph("duplicate vertex in induced set".into()));
        }
        let mut edges = Vec::new();
        for (i, &u) in keep.iter().enumerate() {
            for &v in &keep[i + 1..] {
                if self.has_edge(u, v) {
                    edges.push((index[&u], index[&v]));
                }
            }
        }
        ColouredGraph::new(keep.len(), k, keep.iter().map(|&v| colour_of(v)).collect(), edges)
    }

    /// Connected components of the underlying graph, each sorted.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        components_of(self.n, |u, v| self.has_edge(u, v))
    }

    pub fn to_dot(&self) -> String {
        const PALETTE: [&str; 10] = [
            "lightblue", "salmon", "palegreen", "gold", "plum", "orange", "cyan", "gray80",
            "khaki", "pink",
        ];
        let mut out = String::from("graph g {\n  node [style=filled];\n");
        for v in self.vertices() {
            let fill = PALETTE[(self.colour(v) as usize - 1) % PALETTE.len()];
            out.push_str(&format!(
                "  {} [label=\"{}:{}\", fillcolor={}];\n",
                v,
                v,
                self.colour(v),
                fill
            ));
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("  {u} -- {v};\n"));
        }
        out.push_str("}\n");
        out
    }
}

pub(crate) fn components_of(n: usize, adj: impl Fn(Vertex, Vertex) -> bool) -> Vec<Vec<Vertex>> {
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut stack = vec![s as Vertex];
        let mut comp = Vec::new();
        seen[s] = true;
        while let Some(v) = stack.pop() {
            comp.push(v);
            for u in 0..n as Vertex {
                if !seen[u as usize] && adj(u, v) {
                    seen[u as usize] = true;
                    stack.push(u);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// A validated subset of the vertices of some graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSubset {
    members: BTreeSet<Vertex>,
}

impl VertexSubset {
    pub fn new(host: &ColouredGraph, members: impl IntoIterator<Item = Vertex>) -> Result<Self> {
        let members: BTreeSet<Vertex> = members.into_iter().collect();
        if let Some(&v) = members.iter().find(|&&v| v as usize >= host.n()) {
            return Err(Error::InvalidSubset(format!(
                "vertex {v} is not in the host graph (n = {})",
                host.n()
            )));
        }
        Ok(VertexSubset { members })
    }

    pub fn full(host: &ColouredGraph) -> Self {
        VertexSubset {
            members: host.vertices().collect(),
        }
    }

    pub fn members(&self) -> &BTreeSet<Vertex> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// A sequence of colour-pair flips, applied in order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipSpec {
    pub pairs: Vec<(Colour, Colour)>,
}

impl FlipSpec {
    pub fn new(pairs: impl IntoIterator<Item = (Colour, Colour)>) -> Self {
        FlipSpec {
            pairs: pairs.into_iter().collect(),
        }
    }
}

/// Contextual classes of `x`: vertices grouped by colour and by neighbourhood
/// in the complement of `x`, in canonical order (sorted by smallest member).
pub fn contextual_classes(g: &ColouredGraph, x: &VertexSubset) -> Vec<Vec<Vertex>> {
    let outside: Vec<Vertex> = g.vertices().filter(|v| !x.members().contains(v)).collect();
    let mut by_key: BTreeMap<(Colour, Vec<bool>), Vec<Vertex>> = BTreeMap::new();
    for &v in x.members() {
        let row: Vec<bool> = outside.iter().map(|&u| g.has_edge(v, u)).collect();
        by_key.entry((g.colour(v), row)).or_default().push(v);
    }
    let mut classes: Vec<Vec<Vertex>> = by_key.into_values().collect();
    classes.sort_by_key(|c| c[0]);
    classes
}

/// The rank of a subset: its number of contextual classes.
pub fn rank(g: &ColouredGraph, x: &VertexSubset) -> usize {
    contextual_classes(g, x).len()
}

/// GF(2) row rank of the u × w biadjacency matrix. The sets need not be
/// disjoint nor form a partition.
pub fn matrix_rank_gf2(g: &ColouredGraph, u: &VertexSubset, w: &VertexSubset) -> usize {
    let cols: Vec<Vertex> = w.members().iter().copied().collect();
    let words = cols.len().div_ceil(64);
    let mut rows: Vec<Vec<u64>> = u
        .members()
        .iter()
        .map(|&r| {
            let mut bits = vec![0u64; words.max(1)];
            for (j, &c) in cols.iter().enumerate() {
                if g.has_edge(r, c) {
                    bits[j / 64] |= 1 << (j % 64);
                }
            }
            bits
        })
        .collect();
    let mut rank = 0;
    for col in 0..cols.len() {
        let (wi, bit) = (col / 64, 1u64 << (col % 64));
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][wi] & bit != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[wi] & bit != 0 {
                for (a, b) in row.iter_mut().zip(&pivot_row) {
                    *a ^= b;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Number of distinct rows of the u × w biadjacency matrix (the paper's crank).
pub fn distinct_row_count(g: &ColouredGraph, u: &VertexSubset, w: &VertexSubset) -> usize {
    if u.is_empty() {
        return 0;
    }
    let cols: Vec<Vertex> = w.members().iter().copied().collect();
    let rows: BTreeSet<Vec<bool>> = u
        .members()
        .iter()
        .map(|&r| cols.iter().map(|&c| g.has_edge(r, c)).collect())
        .collect();
    rows.len()
}

/// Applies each `(a,b)` flip in sequence: the edge set is replaced by its
/// symmetric difference with `{vw : colour(v)=a, colour(w)=b, v≠w}`.
pub fn apply_flip(g: &ColouredGraph, f: &FlipSpec) -> Result<ColouredGraph> {
    for &(a, b) in &f.pairs {
        for c in [a, b] {
            if c == 0 || c as usize > g.k() {
                return Err(Error::InvalidFlip(format!(
                    "colour {c} outside 1..={}",
                    g.k()
                )));
            }
        }
    }
    let mut edges = g.edges.clone();
    for &(a, b) in &f.pairs {
        for u in g.vertices() {
            for v in u + 1..g.n as Vertex {
                let cu = g.colour(u);
                let cv = g.colour(v);
                if (cu == a && cv == b) || (cu == b && cv == a) {
                    if !edges.remove(&(u, v)) {
                        edges.insert((u, v));
                    }
                }
            }
        }
    }
    ColouredGraph::new(g.n, g.k, g.colour.clone(), edges)
}

/// Colour-preserving edge-preserving bijection search, capped at
/// [`caps::iso_vertices`] vertices.
pub fn is_isomorphic(g1: &ColouredGraph, g2: &ColouredGraph) -> Result<bool> {
    let cap = caps::iso_vertices();
    let size = g1.n().max(g2.n());
    if size > cap {
        return Err(Error::TooLarge {
            what: "isomorphism search",
            size,
            cap,
        });
    }
    if g1.n() != g2.n() || g1.k() != g2.k() || g1.edge_count() != g2.edge_count() {
        return Ok(false);
    }
    let mut profile1: Vec<(Colour, usize)> = g1.vertices().map(|v| (g1.colour(v), g1.degree(v))).collect();
    let mut profile2: Vec<(Colour, usize)> = g2.vertices().map(|v| (g2.colour(v), g2.degree(v))).collect();
    profile1.sort_unstable();
    profile2.sort_unstable();
    if profile1 != profile2 {
        return Ok(false);
    }
    let n = g1.n();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        g1: &ColouredGraph,
        g2: &ColouredGraph,
        v: usize,
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let n = g1.n();
        if v == n {
            return true;
        }
        for w in 0..n {
            if used[w] || g1.colour(v as Vertex) != g2.colour(w as Vertex) {
                continue;
            }
            if (0..v).all(|p| {
                g1.has_edge(p as Vertex, v as Vertex) == g2.has_edge(map[p] as Vertex, w as Vertex)
            }) {
                map[v] = w;
                used[w] = true;
                if extend(g1, g2, v + 1, map, used) {
                    return true;
                }
                used[w] = false;
                map[v] = usize::MAX;
            }
        }
        false
    }
    Ok(extend(g1, g2, 0, &mut map, &mut used))
}
