//! A small MSO evaluator over coloured graph structures with port constants:
//! formula parsing and evaluation by exhaustive quantification, canonical
//! q-theories (Hintikka-style recursive types), the theory semigroup of unary
//! loop-type terms, and transductions.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::caps;
use crate::error::{Error, Result};
use crate::graph::{Colour, ColouredGraph, Vertex};
use crate::term::GraphTerm;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Var(String),
    Port(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    True,
    False,
    Edge(Term, Term),
    Eq(Term, Term),
    Colour(Colour, Term),
    In(Term, String),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    ExistsElem(String, Box<Formula>),
    ForallElem(String, Box<Formula>),
    ExistsSet(String, Box<Formula>),
    ForallSet(String, Box<Formula>),
}

impl Formula {
    /// Maximal number of quantifiers along a branch of the syntax tree.
    pub fn quantifier_depth(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Edge(..) | Formula::Eq(..)
            | Formula::Colour(..) | Formula::In(..) => 0,
            Formula::Not(f) => f.quantifier_depth(),
            Formula::And(fs) | Formula::Or(fs) => {
                fs.iter().map(|f| f.quantifier_depth()).max().unwrap_or(0)
            }
            Formula::ExistsElem(_, f) | Formula::ForallElem(_, f) | Formula::ExistsSet(_, f)
            | Formula::ForallSet(_, f) => 1 + f.quantifier_depth(),
        }
    }

    pub fn has_set_quantifier(&self) -> bool {
        match self {
            Formula::ExistsSet(..) | Formula::ForallSet(..) => true,
            Formula::Not(f) => f.has_set_quantifier(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().any(|f| f.has_set_quantifier()),
            Formula::ExistsElem(_, f) | Formula::ForallElem(_, f) => f.has_set_quantifier(),
            _ => false,
        }
    }

    /// True when the formula speaks only about the edge relation, equality
    /// and set variables: the vocabulary of plain graphs.
    pub fn graph_vocabulary_only(&self) -> bool {
        match self {
            Formula::Colour(..) => false,
            Formula::Edge(a, b) | Formula::Eq(a, b) => {
                !matches!(a, Term::Port(_)) && !matches!(b, Term::Port(_))
            }
            Formula::In(t, _) => !matches!(t, Term::Port(_)),
            Formula::True | Formula::False => true,
            Formula::Not(f) => f.graph_vocabulary_only(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().all(|f| f.graph_vocabulary_only()),
            Formula::ExistsElem(_, f) | Formula::ForallElem(_, f) | Formula::ExistsSet(_, f)
            | Formula::ForallSet(_, f) => f.graph_vocabulary_only(),
        }
    }

    pub fn to_sexpr(&self) -> String {
        fn term(t: &Term) -> String {
            match t {
                Term::Var(x) => x.clone(),
                Term::Port(i) => format!("(port {i})"),
            }
        }
        match self {
            Formula::True => "true".into(),
            Formula::False => "false".into(),
            Formula::Edge(a, b) => format!("(edge {} {})", term(a), term(b)),
            Formula::Eq(a, b) => format!("(eq {} {})", term(a), term(b)),
            Formula::Colour(c, t) => format!("(col {c} {})", term(t)),
            Formula::In(t, s) => format!("(in {} {s})", term(t)),
            Formula::Not(f) => format!("(not {})", f.to_sexpr()),
            Formula::And(fs) => format!(
                "(and {})",
                fs.iter().map(|f| f.to_sexpr()).collect::<Vec<_>>().join(" ")
            ),
            Formula::Or(fs) => format!(
                "(or {})",
                fs.iter().map(|f| f.to_sexpr()).collect::<Vec<_>>().join(" ")
            ),
            Formula::ExistsElem(x, f) => format!("(exists-v {x} {})", f.to_sexpr()),
            Formula::ForallElem(x, f) => format!("(forall-v {x} {})", f.to_sexpr()),
            Formula::ExistsSet(x, f) => format!("(exists-S {x} {})", f.to_sexpr()),
            Formula::ForallSet(x, f) => format!("(forall-S {x} {})", f.to_sexpr()),
        }
    }
}

/// Parses `(and …)`, `(or …)`, `(not f)`, `(exists-v x f)`, `(exists-S X f)`,
/// `(forall-v x f)`, `(forall-S X f)`, `(edge t t)`, `(eq t t)`, `(col a t)`,
/// `(in t X)`, `true`, `false`; terms are variable symbols or `(port i)`.
pub fn parse_formula(input: &str) -> Result<Formula> {
    let tokens = tokenize(input)?;
    let mut pos = 0;
    let sexpr = parse_sexpr(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(Error::Parse("trailing input after formula".into()));
    }
    formula_of(&sexpr)
}

#[derive(Debug)]
enum Sexpr {
    Atom(String),
    List(Vec<Sexpr>),
}

fn tokenize(input: &str) -> Result<Vec<String>> {
    let mut tokens = Vec::new();
    let mut cur = String::new();
    for ch in input.chars() {
        match ch {
            '(' | ')' => {
                if !cur.is_empty() {
                    tokens.push(std::mem::take(&mut cur));
                }
                tokens.push(ch.to_string());
            }
            c if c.is_whitespace() => {
                if !cur.is_empty() {
                    tokens.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        tokens.push(cur);
    }
    if tokens.is_empty() {
        return Err(Error::Parse("empty formula".into()));
    }
    Ok(tokens)
}

fn parse_sexpr(tokens: &[String], pos: &mut usize) -> Result<Sexpr> {
    match tokens.get(*pos) {
        None => Err(Error::Parse("unexpected end of input".into())),
        Some(t) if t == "(" => {
            *pos += 1;
            let mut items = Vec::new();
            loop {
                match tokens.get(*pos) {
                    None => return Err(Error::Parse("unclosed parenthesis".into())),
                    Some(t) if t == ")" => {
                        *pos += 1;
                        return Ok(Sexpr::List(items));
                    }
                    _ => items.push(parse_sexpr(tokens, pos)?),
                }
            }
        }
        Some(t) if t == ")" => Err(Error::Parse("unexpected ')'".into())),
        Some(t) => {
            *pos += 1;
            Ok(Sexpr::Atom(t.clone()))
        }
    }
}

fn term_of(s: &Sexpr) -> Result<Term> {
    match s {
        Sexpr::Atom(a) => Ok(Term::Var(a.clone())),
        Sexpr::List(items) => match items.as_slice() {
            [Sexpr::Atom(kw), Sexpr::Atom(i)] if kw == "port" => {
                let i = i.parse().map_err(|_| Error::Parse(format!("bad port index {i}")))?;
                Ok(Term::Port(i))
            }
            _ => Err(Error::Parse("expected a variable or (port i)".into())),
        },
    }
}

fn formula_of(s: &Sexpr) -> Result<Formula> {
    match s {
        Sexpr::Atom(a) if a == "true" => Ok(Formula::True),
        Sexpr::Atom(a) if a == "false" => Ok(Formula::False),
        Sexpr::Atom(a) => Err(Error::Parse(format!("unexpected atom '{a}'"))),
        Sexpr::List(items) => {
            let [Sexpr::Atom(head), rest @ ..] = items.as_slice() else {
                return Err(Error::Parse("expected an operator".into()));
            };
            match (head.as_str(), rest) {
                ("and", fs) => Ok(Formula::And(fs.iter().map(formula_of).collect::<Result<_>>()?)),
                ("or", fs) => Ok(Formula::Or(fs.iter().map(formula_of).collect::<Result<_>>()?)),
                ("not", [f]) => Ok(Formula::Not(Box::new(formula_of(f)?))),
                ("edge", [a, b]) => Ok(Formula::Edge(term_of(a)?, term_of(b)?)),
                ("eq", [a, b]) => Ok(Formula::Eq(term_of(a)?, term_of(b)?)),
                ("col", [Sexpr::Atom(c), t]) => {
                    let c = c.parse().map_err(|_| Error::Parse(format!("bad colour {c}")))?;
                    Ok(Formula::Colour(c, term_of(t)?))
                }
                ("in", [t, Sexpr::Atom(x)]) => Ok(Formula::In(term_of(t)?, x.clone())),
                ("exists-v", [Sexpr::Atom(x), f]) => {
                    Ok(Formula::ExistsElem(x.clone(), Box::new(formula_of(f)?)))
                }
                ("forall-v", [Sexpr::Atom(x), f]) => {
                    Ok(Formula::ForallElem(x.clone(), Box::new(formula_of(f)?)))
                }
                ("exists-S", [Sexpr::Atom(x), f]) => {
                    Ok(Formula::ExistsSet(x.clone(), Box::new(formula_of(f)?)))
                }
                ("forall-S", [Sexpr::Atom(x), f]) => {
                    Ok(Formula::ForallSet(x.clone(), Box::new(formula_of(f)?)))
                }
                (op, _) => Err(Error::Parse(format!("unknown or malformed operator '{op}'"))),
            }
        }
    }
}

/// A coloured graph with an ordered list of distinguished port vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MsoStructure {
    graph: ColouredGraph,
    ports: Vec<Vertex>,
}

impl MsoStructure {
    pub fn new(graph: ColouredGraph, ports: Vec<Vertex>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &p in &ports {
            if p as usize >= graph.n() {
                return Err(Error::InvalidGraph(format!("port {p} is not a vertex")));
            }
            if !seen.insert(p) {
                return Err(Error::InvalidGraph(format!("port {p} repeated")));
            }
        }
        Ok(MsoStructure { graph, ports })
    }

    pub fn plain(graph: ColouredGraph) -> Self {
        MsoStructure {
            graph,
            ports: Vec::new(),
        }
    }

    /// The structure of a graph term: its body with all argument ports as
    /// constants, in argument order.
    pub fn of_term(t: &GraphTerm) -> Self {
        let ports = (0..t.arity()).flat_map(|i| t.ports(i).iter().copied()).collect();
        MsoStructure::new(t.body().clone(), ports).unwrap()
    }

    pub fn graph(&self) -> &ColouredGraph {
        &self.graph
    }

    pub fn ports(&self) -> &[Vertex] {
        &self.ports
    }
}

#[derive(Clone, Debug, Default)]
pub struct Assignment {
    pub elem: BTreeMap<String, Vertex>,
    pub set: BTreeMap<String, BTreeSet<Vertex>>,
}

/// Standard semantics by exhaustive quantification. Structures with set
/// quantifiers are capped (2^n assignments per quantifier).
pub fn eval(f: &Formula, s: &MsoStructure, asg: &Assignment) -> Result<bool> {
    if f.has_set_quantifier() {
        let cap = caps::eval_set_vertices();
        if s.graph.n() > cap {
            return Err(Error::TooLarge {
                what: "set quantification",
                size: s.graph.n(),
                cap,
            });
        }
    }
    let mut asg = asg.clone();
    eval_rec(f, s, &mut asg)
}

fn resolve(t: &Term, s: &MsoStructure, asg: &Assignment) -> Result<Vertex> {
    match t {
        Term::Var(x) => asg
            .elem
            .get(x)
            .copied()
            .ok_or_else(|| Error::Unbound(x.clone())),
        Term::Port(i) => s
            .ports
            .get(*i)
            .copied()
            .ok_or_else(|| Error::Parse(format!("port index {i} out of range"))),
    }
}

fn eval_rec(f: &Formula, s: &MsoStructure, asg: &mut Assignment) -> Result<bool> {
    match f {
        Formula::True => Ok(true),
        Formula::False => Ok(false),
        Formula::Edge(a, b) => {
            let (u, v) = (resolve(a, s, asg)?, resolve(b, s, asg)?);
            Ok(s.graph.has_edge(u, v))
        }
        Formula::Eq(a, b) => Ok(resolve(a, s, asg)? == resolve(b, s, asg)?),
        Formula::Colour(c, t) => Ok(s.graph.colour(resolve(t, s, asg)?) == *c),
        Formula::In(t, x) => {
            let v = resolve(t, s, asg)?;
            let set = asg.set.get(x).ok_or_else(|| Error::Unbound(x.clone()))?;
            Ok(set.contains(&v))
        }
        Formula::Not(f) => Ok(!eval_rec(f, s, asg)?),
        Formula::And(fs) => {
            for f in fs {
                if !eval_rec(f, s, asg)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Formula::Or(fs) => {
            for f in fs {
                if eval_rec(f, s, asg)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        Formula::ExistsElem(x, f) => eval_elem_quantifier(x, f, true, s, asg),
        Formula::ForallElem(x, f) => eval_elem_quantifier(x, f, false, s, asg),
        Formula::ExistsSet(x, f) => eval_set_quantifier(x, f, true, s, asg),
        Formula::ForallSet(x, f) => eval_set_quantifier(x, f, false, s, asg),
    }
}

fn eval_elem_quantifier(
    x: &str,
    f: &Formula,
    exists: bool,
    s: &MsoStructure,
    asg: &mut Assignment,
) -> Result<bool> {
    let saved = asg.elem.get(x).copied();
    let mut result = !exists;
    for v in s.graph.vertices() {
        asg.elem.insert(x.to_string(), v);
        if eval_rec(f, s, asg)? == exists {
            result = exists;
            break;
        }
    }
    restore(&mut asg.elem, x, saved);
    Ok(result)
}

fn eval_set_quantifier(
    x: &str,
    f: &Formula,
    exists: bool,
    s: &MsoStructure,
    asg: &mut Assignment,
) -> Result<bool> {
    let saved = asg.set.get(x).cloned();
    let n = s.graph.n();
    let mut result = !exists;
    for mask in 0u64..(1u64 << n) {
        let set: BTreeSet<Vertex> = (0..n as u32).filter(|v| mask & (1 << v) != 0).collect();
        asg.set.insert(x.to_string(), set);
        if eval_rec(f, s, asg)? == exists {
            result = exists;
            break;
        }
    }
    restore(&mut asg.set, x, saved);
    Ok(result)
}

fn restore<V>(map: &mut BTreeMap<String, V>, key: &str, saved: Option<V>) {
    match saved {
        Some(v) => {
            map.insert(key.to_string(), v);
        }
        None => {
            map.remove(key);
        }
    }
}

// ---------------------------------------------------------------------------
// q-theories
// ---------------------------------------------------------------------------

/// Canonical representation of the depth-q theory of a structure: atomic
/// facts about the constants at depth 0, and at depth q the atomic facts plus
/// the sets of depth-(q-1) types of all one-step extensions by an element and
/// by a set. Equal types ⇔ same depth-≤q sentences.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum TypeRep {
    Atoms(AtomSet),
    Node {
        atoms: AtomSet,
        elem: BTreeSet<TypeRep>,
        set: BTreeSet<TypeRep>,
    },
}

/// Atomic facts over the constants (ports, then element parameters, in
/// order): colours, edges, equalities, and membership in set parameters.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct AtomSet {
    pub colours: Vec<Colour>,
    pub edges: Vec<(u8, u8)>,
    pub eqs: Vec<(u8, u8)>,
    pub mems: Vec<(u8, u8)>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MsoType {
    pub q: usize,
    pub rep: TypeRep,
}

#[derive(Clone, Copy)]
enum Param {
    Elem(Vertex),
    Set(u64),
}

/// The q-theory of a structure. Capped: q ≤ 3, and the structure size shrinks
/// with q because of the 2^n set extensions.
pub fn q_type(s: &MsoStructure, q: usize) -> Result<MsoType> {
    let depth_cap = caps::qtype_depth();
    if q > depth_cap {
        return Err(Error::TooLarge {
            what: "q-theory depth",
            size: q,
            cap: depth_cap,
        });
    }
    let size_cap = caps::qtype_vertices(q);
    if s.graph.n() > size_cap {
        return Err(Error::TooLarge {
            what: "q-theory structure",
            size: s.graph.n(),
            cap: size_cap,
        });
    }
    let mut params = Vec::new();
    Ok(MsoType {
        q,
        rep: type_rec(s, q, &mut params),
    })
}

fn type_rec(s: &MsoStructure, q: usize, params: &mut Vec<Param>) -> TypeRep {
    let atoms = atoms_of(s, params);
    if q == 0 {
        return TypeRep::Atoms(atoms);
    }
    let n = s.graph.n();
    let mut elem = BTreeSet::new();
    for v in 0..n as Vertex {
        params.push(Param::Elem(v));
        elem.insert(type_rec(s, q - 1, params));
        params.pop();
    }
    let mut set = BTreeSet::new();
    for mask in 0u64..(1u64 << n) {
        params.push(Param::Set(mask));
        set.insert(type_rec(s, q - 1, params));
        params.pop();
    }
    TypeRep::Node { atoms, elem, set }
}

fn atoms_of(s: &MsoStructure, params: &[Param]) -> AtomSet {
    let mut constants: Vec<Vertex> = s.ports.clone();
    let mut sets: Vec<u64> = Vec::new();
    for p in params {
        match p {
            Param::Elem(v) => constants.push(*v),
            Param::Set(m) => sets.push(*m),
        }
    }
    let mut atoms = AtomSet {
        colours: constants.iter().map(|&c| s.graph.colour(c)).collect(),
        ..AtomSet::default()
    };
    for (i, &u) in constants.iter().enumerate() {
        for (j, &v) in constants.iter().enumerate().skip(i + 1) {
            if s.graph.has_edge(u, v) {
                atoms.edges.push((i as u8, j as u8));
            }
            if u == v {
                atoms.eqs.push((i as u8, j as u8));
            }
        }
        for (si, &mask) in sets.iter().enumerate() {
            if mask & (1 << u) != 0 {
                atoms.mems.push((i as u8, si as u8));
            }
        }
    }
    atoms
}

// ---------------------------------------------------------------------------
// the theory semigroup of unary loop-type terms
// ---------------------------------------------------------------------------

/// Composition table for q-theories of unary terms of a fixed loop type,
/// built by composing representative terms and re-running `q_type`.
/// Compositionality guarantees well-definedness; a clash signals a bug and
/// aborts.
pub struct TheoryTable {
    q: usize,
    k: usize,
    reps: BTreeMap<MsoType, GraphTerm>,
    table: BTreeMap<(MsoType, MsoType), MsoType>,
}

impl TheoryTable {
    pub fn new(q: usize, k: usize) -> Self {
        TheoryTable {
            q,
            k,
            reps: BTreeMap::new(),
            table: BTreeMap::new(),
        }
    }

    /// Registers a term as the representative of its type, returning the type.
    pub fn register(&mut self, term: &GraphTerm) -> Result<MsoType> {
        if term.arity() != 1 || term.arg_sort(0) != self.k || term.k_out() != self.k {
            return Err(Error::Type(format!(
                "theory table is for loop type {k} → {k}",
                k = self.k
            )));
        }
        let ty = q_type(&MsoStructure::of_term(term), self.q)?;
        self.reps.entry(ty.clone()).or_insert_with(|| term.clone());
        Ok(ty)
    }

    /// The type of the composition, computed once per type pair via the
    /// registered representatives.
    pub fn compose(&mut self, t1: &MsoType, t2: &MsoType) -> Result<MsoType> {
        if let Some(t) = self.table.get(&(t1.clone(), t2.clone())) {
            return Ok(t.clone());
        }
        let e = self.reps.get(t1).ok_or_else(|| {
            Error::Type("no representative registered for the left type".into())
        })?;
        let f = self.reps.get(t2).ok_or_else(|| {
            Error::Type("no representative registered for the right type".into())
        })?;
        let composed = e.compose_unary(f)?;
        let ty = q_type(&MsoStructure::of_term(&composed), self.q)?;
        self.reps.entry(ty.clone()).or_insert(composed);
        self.table.insert((t1.clone(), t2.clone()), ty.clone());
        Ok(ty)
    }

    /// Checks compositionality on a concrete pair: the table's answer must
    /// equal the directly recomputed type of e ∘ f. A mismatch is reported as
    /// a compositionality violation.
    pub fn compose_check(&mut self, e: &GraphTerm, f: &GraphTerm) -> Result<MsoType> {
        let te = self.register(e)?;
        let tf = self.register(f)?;
        let via_table = self.compose(&te, &tf)?;
        let direct = q_type(&MsoStructure::of_term(&e.compose_unary(f)?), self.q)?;
        if via_table != direct {
            return Err(Error::Compositionality(
                "table composition disagrees with direct recomputation".into(),
            ));
        }
        Ok(via_table)
    }

    pub fn identity_type(&mut self) -> Result<MsoType> {
        self.register(&GraphTerm::identity(self.k))
    }
}

/// Extracts the recolouring from the q = 0 type of a unary term structure:
/// the colours of the ports are the first k entries of the atom colours.
pub fn recolouring_from_type(ty: &MsoType, k: usize) -> Option<Vec<Colour>> {
    let atoms = match &ty.rep {
        TypeRep::Atoms(a) => a,
        TypeRep::Node { atoms, .. } => atoms,
    };
    if atoms.colours.len() < k {
        return None;
    }
    Some(atoms.colours[..k].to_vec())
}

// ---------------------------------------------------------------------------
// transductions
// ---------------------------------------------------------------------------

/// A parameterized vertex/edge formula pair over the vocabulary of plain
/// graphs. Parameters are the set variables Z1..Zp; the vertex formula uses
/// the free element variable `x`, the edge formula `x` and `y`.
#[derive(Clone, Debug)]
pub struct Transduction {
    pub params: usize,
    pub vertex_formula: Formula,
    pub edge_formula: Formula,
}

impl Transduction {
    pub fn new(params: usize, vertex_formula: Formula, edge_formula: Formula) -> Result<Self> {
        for f in [&vertex_formula, &edge_formula] {
            if !f.graph_vocabulary_only() {
                return Err(Error::Type(
                    "transduction formulas must use the graph vocabulary only".into(),
                ));
            }
        }
        Ok(Transduction {
            params,
            vertex_formula,
            edge_formula,
        })
    }

    fn param_name(i: usize) -> String {
        format!("Z{}", i + 1)
    }

    /// One output for a fixed parameter choice: vertices where the vertex
    /// formula holds, edges where the edge formula holds. Returns None when
    /// the edge relation is not symmetric-irreflexive on the kept vertices;
    /// an empty vertex set is an error (coloured graphs are nonempty). Kept
    /// vertices are returned with their original ids.
    pub fn apply(
        &self,
        g: &ColouredGraph,
        params: &[BTreeSet<Vertex>],
    ) -> Result<Option<(ColouredGraph, Vec<Vertex>)>> {
        if params.len() != self.params {
            return Err(Error::Type(format!(
                "expected {} parameters, got {}",
                self.params,
                params.len()
            )));
        }
        let s = MsoStructure::plain(g.clone());
        let mut asg = Assignment::default();
        for (i, set) in params.iter().enumerate() {
            asg.set.insert(Self::param_name(i), set.clone());
        }
        let mut kept = Vec::new();
        for v in g.vertices() {
            asg.elem.insert("x".into(), v);
            if eval(&self.vertex_formula, &s, &asg)? {
                kept.push(v);
            }
        }
        asg.elem.remove("x");
        if kept.is_empty() {
            return Err(Error::Sort(
                "transduction output has no vertices; coloured graphs must be nonempty".into(),
            ));
        }
        let mut rel = BTreeMap::new();
        for &u in &kept {
            for &v in &kept {
                asg.elem.insert("x".into(), u);
                asg.elem.insert("y".into(), v);
                rel.insert((u, v), eval(&self.edge_formula, &s, &asg)?);
            }
        }
        for &u in &kept {
            if rel[&(u, u)] {
                return Ok(None); // not irreflexive
            }
            for &v in &kept {
                if rel[&(u, v)] != rel[&(v, u)] {
                    return Ok(None); // not symmetric
                }
            }
        }
        let index: BTreeMap<Vertex, Vertex> = kept
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i as Vertex))
            .collect();
        let mut edges = Vec::new();
        for &u in &kept {
            for &v in &kept {
                if u < v && rel[&(u, v)] {
                    edges.push((index[&u], index[&v]));
                }
            }
        }
        let out = ColouredGraph::new(kept.len(), 1, vec![1; kept.len()], edges)?;
        Ok(Some((out, kept)))
    }

    /// Exhaustive search over all parameter tuples for one producing an
    /// output isomorphic to the target.
    pub fn search_witness(
        &self,
        g: &ColouredGraph,
        target: &ColouredGraph,
    ) -> Result<Option<Vec<BTreeSet<Vertex>>>> {
        let cap = caps::transduction_vertices();
        if g.n() > cap {
            return Err(Error::TooLarge {
                what: "transduction parameter search",
                size: g.n(),
                cap,
            });
        }
        let n = g.n();
        let total = 1u64 << (n as u64 * self.params as u64).min(63);
        for combined in 0..total.max(1) {
            let mut params = Vec::new();
            for i in 0..self.params {
                let mask = (combined >> (i * n)) & ((1 << n) - 1);
                params.push((0..n as u32).filter(|v| mask & (1 << v) != 0).collect());
            }
            // an empty output is a dead end for this parameter choice
            match self.apply(g, &params) {
                Ok(Some((out, _))) => {
                    let target_mono = ColouredGraph::new(
                        target.n(),
                        1,
                        vec![1; target.n()],
                        target.edges().collect::<Vec<_>>(),
                    )?;
                    if crate::graph::is_isomorphic(&out, &target_mono)? {
                        return Ok(Some(params));
                    }
                }
                Ok(None) | Err(Error::Sort(_)) => {}
                Err(e) => return Err(e),
            }
            if self.params == 0 {
                break;
            }
        }
        Ok(None)
    }
}

/// The transduction that complements the edge relation.
pub fn complement_transduction() -> Transduction {
    let x = || Term::Var("x".into());
    let y = || Term::Var("y".into());
    Transduction::new(
        0,
        Formula::True,
        Formula::And(vec![
            Formula::Not(Box::new(Formula::Edge(x(), y()))),
            Formula::Not(Box::new(Formula::Eq(x(), y()))),
        ]),
    )
    .unwrap()
}

/// `v` is an ancestor of `w` in a comparability graph: they are adjacent and
/// every neighbour of `w` (other than the two) is a neighbour of `v`.
pub fn ancestor_formula() -> Formula {
    parse_formula(
        "(and (edge v w) (forall-v u (or (eq u v) (eq u w) (or (not (edge w u)) (edge v u)))))",
    )
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn plain(g: &ColouredGraph) -> MsoStructure {
        MsoStructure::plain(g.clone())
    }

    #[test]
    fn parse_and_print_round_trip() {
        let src = "(and (edge x y) (not (in x Z1)) (exists-S W (forall-v u (in u W))))";
        let f = parse_formula(src).unwrap();
        let f2 = parse_formula(&f.to_sexpr()).unwrap();
        assert_eq!(f, f2);
        assert_eq!(f.quantifier_depth(), 2);
        assert!(f.has_set_quantifier());
    }

    #[test]
    fn parse_errors() {
        assert!(parse_formula("(edge x").is_err());
        assert!(parse_formula("(frobnicate x y)").is_err());
        assert!(parse_formula("").is_err());
    }

    #[test]
    fn clique_is_complete_p3_is_not() {
        let f = parse_formula("(forall-v x (forall-v y (or (eq x y) (edge x y))))").unwrap();
        let k3 = fixtures::clique(3);
        let p3 = fixtures::path(3);
        assert!(eval(&f, &plain(&k3), &Assignment::default()).unwrap());
        assert!(!eval(&f, &plain(&p3), &Assignment::default()).unwrap());
    }

    #[test]
    fn unbound_variable_is_an_error() {
        let f = parse_formula("(edge x y)").unwrap();
        let k3 = fixtures::clique(3);
        assert!(matches!(
            eval(&f, &plain(&k3), &Assignment::default()),
            Err(Error::Unbound(_))
        ));
    }

    #[test]
    fn set_quantifier_cap() {
        let f = parse_formula("(exists-S Z (exists-v x (in x Z)))").unwrap();
        let big = fixtures::clique(13);
        assert!(matches!(
            eval(&f, &plain(&big), &Assignment::default()),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn eval_is_isomorphism_invariant() {
        // permuting vertex ids never changes a sentence value
        let sentences = [
            "(exists-v x (forall-v y (or (eq x y) (edge x y))))",
            "(exists-S Z (forall-v x (or (in x Z) (exists-v y (and (edge x y) (in y Z))))))",
            "(forall-v x (exists-v y (edge x y)))",
        ];
        let g = fixtures::half_graph_mono(3);
        // relabel by the permutation v ↦ (v*5+1) mod 6
        let perm: Vec<Vertex> = (0..6).map(|v| ((v * 5 + 1) % 6) as Vertex).collect();
        let edges: Vec<(Vertex, Vertex)> = g
            .edges()
            .map(|(u, v)| (perm[u as usize], perm[v as usize]))
            .collect();
        let h = ColouredGraph::new(6, 1, vec![1; 6], edges).unwrap();
        for src in sentences {
            let f = parse_formula(src).unwrap();
            assert_eq!(
                eval(&f, &plain(&g), &Assignment::default()).unwrap(),
                eval(&f, &plain(&h), &Assignment::default()).unwrap(),
                "{src}"
            );
        }
    }

    #[test]
    fn q0_type_determines_recolouring() {
        let tpl = fixtures::child_tree_template();
        let unary = tpl.step.specialize(0, &tpl.initial).unwrap();
        let ty = q_type(&MsoStructure::of_term(&unary), 0).unwrap();
        let rec = recolouring_from_type(&ty, 2).unwrap();
        assert_eq!(rec, unary.recolouring_of(0).unwrap());
    }

    #[test]
    fn isomorphic_structures_have_equal_types() {
        let g = fixtures::path(4);
        let perm: Vec<Vertex> = vec![2, 0, 3, 1];
        let edges: Vec<(Vertex, Vertex)> = g
            .edges()
            .map(|(u, v)| (perm[u as usize], perm[v as usize]))
            .collect();
        let h = ColouredGraph::new(4, 1, vec![1; 4], edges).unwrap();
        for q in 0..=2 {
            assert_eq!(
                q_type(&plain(&g), q).unwrap(),
                q_type(&plain(&h), q).unwrap()
            );
        }
    }

    #[test]
    fn k3_and_p3_differ_at_depth_two() {
        let k3 = fixtures::clique(3);
        let p3 = fixtures::path(3);
        assert_ne!(
            q_type(&plain(&k3), 2).unwrap(),
            q_type(&plain(&p3), 2).unwrap()
        );
        // and a concrete distinguishing depth-2 sentence: every pair of
        // distinct vertices is adjacent
        let f = parse_formula("(forall-v x (forall-v y (or (eq x y) (edge x y))))").unwrap();
        assert!(eval(&f, &plain(&k3), &Assignment::default()).unwrap());
        assert!(!eval(&f, &plain(&p3), &Assignment::default()).unwrap());
    }

    #[test]
    fn theory_table_identity_is_neutral() {
        let mut table = TheoryTable::new(1, 2);
        let tpl = fixtures::half_graph_template();
        let u = tpl.step.specialize(1, &tpl.initial).unwrap();
        let tu = table.register(&u).unwrap();
        let tid = table.identity_type().unwrap();
        assert_eq!(table.compose(&tid, &tu).unwrap(), tu);
        assert_eq!(table.compose(&tu, &tid).unwrap(), tu);
    }

    #[test]
    fn compose_check_on_halfgraph_step() {
        let mut table = TheoryTable::new(1, 2);
        let tpl = fixtures::half_graph_template();
        let u = tpl.step.specialize(1, &tpl.initial).unwrap();
        table.compose_check(&u, &u).unwrap();
    }

    #[test]
    fn complement_of_independent_is_clique() {
        let tr = complement_transduction();
        let i3 = fixtures::independent(3);
        let (out, _) = tr.apply(&i3, &[]).unwrap().unwrap();
        assert!(crate::graph::is_isomorphic(&out, &fixtures::clique(3)).unwrap());
    }

    #[test]
    fn empty_output_is_an_error() {
        let tr = Transduction::new(0, Formula::False, Formula::False).unwrap();
        let k3 = fixtures::clique(3);
        assert!(matches!(tr.apply(&k3, &[]), Err(Error::Sort(_))));
    }

    #[test]
    fn reflexive_edge_formula_gives_none() {
        let refl = Transduction::new(
            0,
            Formula::True,
            Formula::Eq(Term::Var("x".into()), Term::Var("y".into())),
        )
        .unwrap();
        let k2 = fixtures::clique(2);
        assert!(refl.apply(&k2, &[]).unwrap().is_none());
    }

    #[test]
    fn search_finds_complement_witness() {
        let tr = complement_transduction();
        let i3 = fixtures::independent(3);
        let w = tr.search_witness(&i3, &fixtures::clique(3)).unwrap();
        assert_eq!(w, Some(vec![]));
        // no-edge target from K3 under the identity transduction → none
        let id = Transduction::new(
            0,
            Formula::True,
            parse_formula("(edge x y)").unwrap(),
        )
        .unwrap();
        let none = id.search_witness(&fixtures::clique(3), &fixtures::independent(3)).unwrap();
        assert!(none.is_none());
    }

    #[test]
    fn vertex_deletion_search() {
        // one-parameter vertex deletion: keep x iff x ∈ Z1
        let tr = Transduction::new(
            1,
            parse_formula("(in x Z1)").unwrap(),
            parse_formula("(edge x y)").unwrap(),
        )
        .unwrap();
        let k4 = fixtures::clique(4);
        let w = tr.search_witness(&k4, &fixtures::clique(3)).unwrap().unwrap();
        assert_eq!(w[0].len(), 3);
    }
}
