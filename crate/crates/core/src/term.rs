//! Typed graph terms of the cliquewidth algebra: evaluation, composition of
//! unary loop-type terms, recolourings, and templates generating regular
//! classes.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Colour, ColouredGraph, Vertex};
use crate::tree::{NodeId, SetTree};

/// A term operation of type k_1 × … × k_n → k, represented as a coloured
/// graph with one ordered port list per argument. Port `a` of argument `i`
/// (position a-1 in the list) receives the colour-a vertices of the i-th
/// argument; its body colour is what those vertices become.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TermJson", into = "TermJson")]
pub struct GraphTerm {
    body: ColouredGraph,
    args: Vec<Vec<Vertex>>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    n: usize,
    k: usize,
    colour: Vec<Colour>,
    edges: Vec<(Vertex, Vertex)>,
    args: Vec<Vec<Vertex>>,
    k_out: usize,
}

impl TryFrom<TermJson> for GraphTerm {
    type Error = Error;
    fn try_from(j: TermJson) -> Result<Self> {
        if j.k_out != j.k {
            return Err(Error::Type(format!(
                "k_out = {} disagrees with the body colour count k = {}",
                j.k_out, j.k
            )));
        }
        let body = ColouredGraph::new(j.n, j.k, j.colour, j.edges)?;
        GraphTerm::new(body, j.args)
    }
}

impl From<GraphTerm> for TermJson {
    fn from(t: GraphTerm) -> Self {
        TermJson {
            n: t.body.n(),
            k: t.body.k(),
            k_out: t.body.k(),
            colour: t.body.colours().to_vec(),
            edges: t.body.edges().collect(),
            args: t.args,
        }
    }
}

impl std::fmt::Debug for GraphTerm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GraphTerm(body={:?}, args={:?})", self.body, self.args)
    }
}

impl GraphTerm {
    pub fn new(body: ColouredGraph, args: Vec<Vec<Vertex>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for ports in &args {
            for &p in ports {
                if p as usize >= body.n() {
                    return Err(Error::Type(format!("port {p} is not a body vertex")));
                }
                if !seen.insert(p) {
                    return Err(Error::Type(format!("port {p} repeats across the port lists")));
                }
            }
            for (i, &p) in ports.iter().enumerate() {
                for &q in &ports[i + 1..] {
                    if body.has_edge(p, q) {
                        return Err(Error::Type(format!(
                            "edge between ports {p} and {q} of the same argument"
                        )));
                    }
                }
            }
        }
        Ok(GraphTerm { body, args })
    }

    /// The identity operation of sort k: k isolated port vertices in colour
    /// order, no extra vertices.
    pub fn identity(k: usize) -> Self {
        let body = ColouredGraph::new(k, k, (1..=k as Colour).collect(), []).unwrap();
        GraphTerm::new(body, vec![(0..k as Vertex).collect()]).unwrap()
    }

    pub fn body(&self) -> &ColouredGraph {
        &self.body
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    /// Input sort of argument `i`.
    pub fn arg_sort(&self, i: usize) -> usize {
        self.args[i].len()
    }

    pub fn ports(&self, i: usize) -> &[Vertex] {
        &self.args[i]
    }

    pub fn k_out(&self) -> usize {
        self.body.k()
    }

    pub fn is_port(&self, v: Vertex) -> bool {
        self.args.iter().any(|ports| ports.contains(&v))
    }

    /// Body vertices that are not ports of any argument.
    pub fn introduced(&self) -> Vec<Vertex> {
        self.body.vertices().filter(|&v| !self.is_port(v)).collect()
    }

    /// The recolouring of argument `i`: input colour a ↦ body colour of its
    /// port. Entry a-1 of the result is the image of a.
    pub fn recolouring_of(&self, i: usize) -> Result<Vec<Colour>> {
        let ports = self.args.get(i).ok_or_else(|| {
            Error::Type(format!("argument index {i} out of range (arity {})", self.arity()))
        })?;
        Ok(ports.iter().map(|&p| self.body.colour(p)).collect())
    }

    /// Substitutes the arguments into the term. See `eval_traced` for the
    /// vertex provenance.
    pub fn eval(&self, args: &[&ColouredGraph]) -> Result<ColouredGraph> {
        Ok(self.eval_traced(args)?.0)
    }

    /// Evaluation with provenance: output vertex i came from
    /// `trace[i] = Introduced(body vertex)` or `FromArg(arg index, vertex)`.
    /// Output vertices are ordered introduced-first, then the arguments in
    /// order, each in its own vertex order.
    pub fn eval_traced(&self, args: &[&ColouredGraph]) -> Result<(ColouredGraph, Vec<Provenance>)> {
        if args.len() != self.arity() {
            return Err(Error::Type(format!(
                "arity mismatch: term takes {} arguments, got {}",
                self.arity(),
                args.len()
            )));
        }
        for (i, g) in args.iter().enumerate() {
            if g.k() != self.arg_sort(i) {
                return Err(Error::Type(format!(
                    "argument {i} has sort {}, expected {}",
                    g.k(),
                    self.arg_sort(i)
                )));
            }
        }
        let introduced = self.introduced();
        let mut trace: Vec<Provenance> = introduced.iter().map(|&v| Provenance::Introduced(v)).collect();
        for (i, g) in args.iter().enumerate() {
            trace.extend(g.vertices().map(|v| Provenance::FromArg(i, v)));
        }
        // the body vertex whose edges/colour a given output vertex inherits
        let body_rep = |p: &Provenance| -> Vertex {
            match *p {
                Provenance::Introduced(v) => v,
                Provenance::FromArg(i, v) => self.args[i][args[i].colour(v) as usize - 1],
            }
        };
        let colour: Vec<Colour> = trace.iter().map(|p| self.body.colour(body_rep(p))).collect();
        let mut edges = Vec::new();
        for (x, px) in trace.iter().enumerate() {
            for (y, py) in trace.iter().enumerate().skip(x + 1) {
                let edge = match (px, py) {
                    (Provenance::FromArg(i, v), Provenance::FromArg(j, w)) if i == j => {
                        args[*i].has_edge(*v, *w)
                    }
                    _ => self.body.has_edge(body_rep(px), body_rep(py)),
                };
                if edge {
                    edges.push((x as Vertex, y as Vertex));
                }
            }
        }
        let out = ColouredGraph::new(trace.len(), self.k_out(), colour, edges)
            .map_err(|e| Error::Sort(format!("evaluation produced an invalid graph: {e}")))?;
        Ok((out, trace))
    }

    /// Composition of unary loop-type terms: the operation "apply `inner`,
    /// then `self`". Ports of the result are the ports of `inner`.
    pub fn compose_unary(&self, inner: &GraphTerm) -> Result<GraphTerm> {
        let k = self.k_out();
        for t in [self, inner] {
            if t.arity() != 1 || t.arg_sort(0) != t.k_out() || t.k_out() != k {
                return Err(Error::Type(format!(
                    "compose_unary needs two terms of the same loop type k → k (got arity {} of type {} → {})",
                    t.arity(),
                    if t.arity() == 1 { t.arg_sort(0) } else { 0 },
                    t.k_out()
                )));
            }
        }
        let outer_intro = self.introduced();
        // result vertices: outer introduced, then the whole inner body
        let n = outer_intro.len() + inner.body.n();
        let inner_offset = outer_intro.len() as Vertex;
        // colour of an inner vertex: body colour of the outer port its inner
        // colour is routed into
        let outer_port_for = |c: Colour| self.args[0][c as usize - 1];
        let mut colour = Vec::with_capacity(n);
        for &v in &outer_intro {
            colour.push(self.body.colour(v));
        }
        for v in inner.body.vertices() {
            colour.push(self.body.colour(outer_port_for(inner.body.colour(v))));
        }
        let mut edges = Vec::new();
        for (x, &u) in outer_intro.iter().enumerate() {
            for (y, &v) in outer_intro.iter().enumerate().skip(x + 1) {
                if self.body.has_edge(u, v) {
                    edges.push((x as Vertex, y as Vertex));
                }
            }
        }
        for (u, v) in inner.body.edges() {
            edges.push((inner_offset + u, inner_offset + v));
        }
        for (x, &u) in outer_intro.iter().enumerate() {
            for v in inner.body.vertices() {
                if self.body.has_edge(u, outer_port_for(inner.body.colour(v))) {
                    edges.push((x as Vertex, inner_offset + v));
                }
            }
        }
        let body = ColouredGraph::new(n, k, colour, edges)
            .map_err(|e| Error::Sort(format!("composition produced an invalid body: {e}")))?;
        let ports = inner.args[0].iter().map(|&p| inner_offset + p).collect();
        GraphTerm::new(body, vec![ports])
    }

    /// Fixes argument `i` to a constant graph, reducing the arity by one.
    pub fn specialize(&self, i: usize, g: &ColouredGraph) -> Result<GraphTerm> {
        if i >= self.arity() {
            return Err(Error::Type(format!("argument index {i} out of range")));
        }
        if g.k() != self.arg_sort(i) {
            return Err(Error::Type(format!(
                "constant has sort {}, argument {i} expects {}",
                g.k(),
                self.arg_sort(i)
            )));
        }
        let keep: Vec<Vertex> = self.body.vertices().filter(|v| !self.args[i].contains(v)).collect();
        let n = keep.len() + g.n();
        let offset = keep.len() as Vertex;
        let index_of = |v: Vertex| keep.iter().position(|&u| u == v).map(|p| p as Vertex);
        let mut colour: Vec<Colour> = keep.iter().map(|&v| self.body.colour(v)).collect();
        let port_for = |c: Colour| self.args[i][c as usize - 1];
        colour.extend(g.vertices().map(|v| self.body.colour(port_for(g.colour(v)))));
        let mut edges = Vec::new();
        for (x, &u) in keep.iter().enumerate() {
            for (y, &v) in keep.iter().enumerate().skip(x + 1) {
                if self.body.has_edge(u, v) {
                    edges.push((x as Vertex, y as Vertex));
                }
            }
        }
        for (u, v) in g.edges() {
            edges.push((offset + u, offset + v));
        }
        for (x, &u) in keep.iter().enumerate() {
            for v in g.vertices() {
                if self.body.has_edge(u, port_for(g.colour(v))) {
                    edges.push((x as Vertex, offset + v));
                }
            }
        }
        let body = ColouredGraph::new(n, self.k_out(), colour, edges)
            .map_err(|e| Error::Sort(format!("specialization produced an invalid body: {e}")))?;
        let mut args = Vec::new();
        for (j, ports) in self.args.iter().enumerate() {
            if j != i {
                args.push(ports.iter().map(|&p| index_of(p).unwrap()).collect());
            }
        }
        GraphTerm::new(body, args)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Introduced(Vertex),
    FromArg(usize, Vertex),
}

/// An initial graph plus a binary step of type k × k → k; iterating the step
/// over binary shapes generates a regular class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Template {
    pub initial: ColouredGraph,
    pub step: GraphTerm,
}

impl Template {
    pub fn new(initial: ColouredGraph, step: GraphTerm) -> Result<Self> {
        let k = initial.k();
        if step.arity() != 2 || step.arg_sort(0) != k || step.arg_sort(1) != k || step.k_out() != k
        {
            return Err(Error::Type(format!(
                "template step must have type {k} × {k} → {k}"
            )));
        }
        Ok(Template { initial, step })
    }

    pub fn generate(&self, shape: &Shape) -> Result<ColouredGraph> {
        match shape {
            Shape::Comb(n) => {
                if *n == 0 {
                    return Err(Error::Type("comb shape needs at least one leaf".into()));
                }
                let mut acc = self.initial.clone();
                for _ in 1..*n {
                    acc = self.step.eval(&[&acc, &self.initial])?;
                }
                Ok(acc)
            }
            Shape::Tree(t) => {
                validate_binary_shape(t)?;
                self.generate_at(t, t.root())
            }
        }
    }

    fn generate_at(&self, t: &SetTree, id: NodeId) -> Result<ColouredGraph> {
        let children = t.children(id);
        match children.as_slice() {
            [] => Ok(self.initial.clone()),
            [l, r] => {
                let gl = self.generate_at(t, *l)?;
                let gr = self.generate_at(t, *r)?;
                self.step.eval(&[&gl, &gr])
            }
            _ => unreachable!("validated binary"),
        }
    }

    /// Generation with provenance: each output vertex is tagged with the shape
    /// node it came from and its vertex id within that copy of the initial
    /// graph (leaves) or within the step body (introduced at inner nodes).
    pub fn generate_traced(&self, t: &SetTree) -> Result<(ColouredGraph, Vec<(NodeId, Vertex)>)> {
        validate_binary_shape(t)?;
        self.generate_traced_at(t, t.root())
    }

    fn generate_traced_at(
        &self,
        t: &SetTree,
        id: NodeId,
    ) -> Result<(ColouredGraph, Vec<(NodeId, Vertex)>)> {
        let children = t.children(id);
        match children.as_slice() {
            [] => {
                let tags = self.initial.vertices().map(|v| (id, v)).collect();
                Ok((self.initial.clone(), tags))
            }
            [l, r] => {
                let (gl, tl) = self.generate_traced_at(t, *l)?;
                let (gr, tr) = self.generate_traced_at(t, *r)?;
                let (out, trace) = self.step.eval_traced(&[&gl, &gr])?;
                let tags = trace
                    .iter()
                    .map(|p| match *p {
                        Provenance::Introduced(v) => (id, v),
                        Provenance::FromArg(0, v) => tl[v as usize],
                        Provenance::FromArg(_, v) => tr[v as usize],
                    })
                    .collect();
                Ok((out, tags))
            }
            _ => unreachable!("validated binary"),
        }
    }
}

/// A generation shape: either the left comb with n leaves, or an explicit
/// binary set-tree whose children are folded in canonical node order.
#[derive(Clone, Debug)]
pub enum Shape {
    Comb(usize),
    Tree(SetTree),
}

pub fn validate_binary_shape(t: &SetTree) -> Result<()> {
    for id in t.node_ids() {
        let c = t.children(id).len();
        if c != 0 && c != 2 {
            return Err(Error::InvalidTree(format!(
                "shape node {id} has {c} children; binary shapes need 0 or 2"
            )));
        }
    }
    Ok(())
}
