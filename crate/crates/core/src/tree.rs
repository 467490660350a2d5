//! Trees as laminar set families, tree minors, Strahler numbers, splits and
//! their layers, and the Strahler-constraint dichotomy.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::ColouredGraph;

pub type NodeId = usize;
pub type Element = u32;

/// A laminar family of subsets of `{0..ground-1}` containing the full set.
/// Nodes are stored in canonical order (by sorted member list), so node ids
/// are stable for a given family.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TreeJson", into = "TreeJson")]
pub struct SetTree {
    ground: usize,
    nodes: Vec<BTreeSet<Element>>,
    parent: Vec<Option<NodeId>>,
}

#[derive(Serialize, Deserialize)]
struct TreeJson {
    ground: usize,
    nodes: Vec<Vec<Element>>,
}

impl TryFrom<TreeJson> for SetTree {
    type Error = Error;
    fn try_from(j: TreeJson) -> Result<Self> {
        SetTree::new(j.ground, j.nodes.into_iter().map(|ns| ns.into_iter().collect()))
    }
}

impl From<SetTree> for TreeJson {
    fn from(t: SetTree) -> Self {
        TreeJson {
            ground: t.ground,
            nodes: t.nodes.into_iter().map(|s| s.into_iter().collect()).collect(),
        }
    }
}

impl std::fmt::Debug for SetTree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SetTree(ground={}, nodes={:?})", self.ground, self.nodes)
    }
}

impl SetTree {
    pub fn new(ground: usize, nodes: impl IntoIterator<Item = BTreeSet<Element>>) -> Result<Self> {
        if ground == 0 {
            return Err(Error::InvalidTree("ground set must be nonempty".into()));
        }
        let mut nodes: Vec<BTreeSet<Element>> = nodes.into_iter().collect();
        nodes.sort_by(|a, b| {
            let av: Vec<_> = a.iter().collect();
            let bv: Vec<_> = b.iter().collect();
            av.cmp(&bv)
        });
        for w in nodes.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidTree(format!("duplicate node {:?}", w[0])));
            }
        }
        let full: BTreeSet<Element> = (0..ground as Element).collect();
        for node in &nodes {
            if node.is_empty() {
                return Err(Error::InvalidTree("empty node".into()));
            }
            if let Some(&e) = node.iter().find(|&&e| e as usize >= ground) {
                return Err(Error::InvalidTree(format!(
                    "node element {e} outside ground 0..{ground}"
                )));
            }
        }
        if !nodes.iter().any(|s| *s == full) {
            return Err(Error::InvalidTree("the full set must be a node (the root)".into()));
        }
        for (i, a) in nodes.iter().enumerate() {
            for b in &nodes[i + 1..] {
                let disjoint = a.intersection(b).next().is_none();
                let nested = a.is_subset(b) || b.is_subset(a);
                if !disjoint && !nested {
                    return Err(Error::InvalidTree(format!(
                        "nodes {a:?} and {b:?} overlap without nesting"
                    )));
                }
            }
        }
        // parent = minimal proper superset
        let parent = nodes
            .iter()
            .map(|node| {
                nodes
                    .iter()
                    .enumerate()
                    .filter(|(_, other)| node.is_subset(other) && node != *other)
                    .min_by_key(|(_, other)| other.len())
                    .map(|(j, _)| j)
            })
            .collect();
        Ok(SetTree { ground, nodes, parent })
    }

    /// The trivial tree containing only the root.
    pub fn trivial(ground: usize) -> Self {
        SetTree::new(ground, [(0..ground as Element).collect()]).unwrap()
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node(&self, id: NodeId) -> &BTreeSet<Element> {
        &self.nodes[id]
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> {
        0..self.nodes.len()
    }

    pub fn root(&self) -> NodeId {
        self.parent.iter().position(|p| p.is_none()).unwrap()
    }

    pub fn parent(&self, id: NodeId) -> Option<NodeId> {
        self.parent[id]
    }

    pub fn children(&self, id: NodeId) -> Vec<NodeId> {
        self.node_ids().filter(|&c| self.parent[c] == Some(id)).collect()
    }

    pub fn is_leaf(&self, id: NodeId) -> bool {
        self.children(id).is_empty()
    }

    pub fn leaves(&self) -> Vec<NodeId> {
        self.node_ids().filter(|&id| self.is_leaf(id)).collect()
    }

    /// Proper ancestor test via set inclusion.
    pub fn is_ancestor(&self, anc: NodeId, desc: NodeId) -> bool {
        anc != desc && self.nodes[desc].is_subset(&self.nodes[anc])
    }

    pub fn are_disjoint(&self, a: NodeId, b: NodeId) -> bool {
        self.nodes[a].intersection(&self.nodes[b]).next().is_none()
    }

    /// All contexts: ordered pairs (descendant, ancestor) with strict containment.
    pub fn contexts(&self) -> Vec<(NodeId, NodeId)> {
        let mut out = Vec::new();
        for x in self.node_ids() {
            for y in self.node_ids() {
                if self.is_ancestor(y, x) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Nodes whose set contains the given element.
    pub fn nodes_containing(&self, e: Element) -> Vec<NodeId> {
        self.node_ids().filter(|&id| self.nodes[id].contains(&e)).collect()
    }

    pub fn depth(&self, id: NodeId) -> usize {
        let mut d = 0;
        let mut cur = id;
        while let Some(p) = self.parent[cur] {
            d += 1;
            cur = p;
        }
        d
    }

    /// One vertex per node, edges between parents and children, k = 1.
    pub fn child_graph(&self) -> ColouredGraph {
        let edges: Vec<(u32, u32)> = self
            .node_ids()
            .filter_map(|c| self.parent[c].map(|p| (p as u32, c as u32)))
            .collect();
        ColouredGraph::new(self.node_count(), 1, vec![1; self.node_count()], edges).unwrap()
    }

    /// Tree minor: new root, restricted ground set, kept nodes. Elements are
    /// re-indexed; the mapping from new elements to old ones is returned along
    /// with the kept node ids in node order of the minor.
    pub fn tree_minor(&self, new_root: NodeId, keep: &[NodeId]) -> Result<TreeMinor> {
        if !keep.contains(&new_root) {
            return Err(Error::InvalidTree("new root must be kept".into()));
        }
        let root_set = &self.nodes[new_root];
        for &id in keep {
            if !self.nodes[id].is_subset(root_set) {
                return Err(Error::InvalidTree(format!(
                    "kept node {:?} is not contained in the new root",
                    self.nodes[id]
                )));
            }
        }
        let elem_of: Vec<Element> = root_set.iter().copied().collect();
        let index: BTreeMap<Element, Element> = elem_of
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, i as Element))
            .collect();
        let mut keep: Vec<NodeId> = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let sets: Vec<BTreeSet<Element>> = keep
            .iter()
            .map(|&id| self.nodes[id].iter().map(|e| index[e]).collect())
            .collect();
        let tree = SetTree::new(elem_of.len(), sets.clone())?;
        // node_of[i] = original id of the minor's node i
        let node_of = tree
            .nodes
            .iter()
            .map(|s| {
                let original: BTreeSet<Element> = s.iter().map(|&e| elem_of[e as usize]).collect();
                keep.iter()
                    .copied()
                    .find(|&id| self.nodes[id] == original)
                    .unwrap()
            })
            .collect();
        Ok(TreeMinor { tree, elem_of, node_of })
    }

    /// Strahler number, by the two-max recursion: leaves get 0; a node gets
    /// the maximum over children, plus one when the two largest child values
    /// are equal. Validated against the exhaustive minor oracle in tests.
    pub fn strahler(&self) -> usize {
        self.strahler_at(self.root())
    }

    fn strahler_at(&self, id: NodeId) -> usize {
        let mut vals: Vec<usize> = self.children(id).iter().map(|&c| self.strahler_at(c)).collect();
        vals.sort_unstable_by(|a, b| b.cmp(a));
        match vals.as_slice() {
            [] => 0,
            [one] => *one,
            [a, b, ..] => {
                if a == b {
                    a + 1
                } else {
                    *a
                }
            }
        }
    }

    /// Rooted shape code (AHU): equal codes iff the node hierarchies are
    /// isomorphic as rooted unordered trees. Element contents are ignored.
    pub fn shape_code(&self) -> String {
        fn code(t: &SetTree, id: NodeId) -> String {
            let mut cs: Vec<String> = t.children(id).iter().map(|&c| code(t, c)).collect();
            cs.sort();
            format!("({})", cs.join(""))
        }
        code(self, self.root())
    }

    /// Complete binary set-tree of the given depth: every non-leaf has two
    /// children, all leaves at depth `d`, leaves are singletons.
    pub fn complete_binary(depth: usize) -> Self {
        let ground = 1usize << depth;
        let mut nodes: Vec<BTreeSet<Element>> = Vec::new();
        for level in 0..=depth {
            let width = ground >> level;
            for i in 0..(1usize << level) {
                nodes.push(((i * width) as Element..((i + 1) * width) as Element).collect());
            }
        }
        SetTree::new(ground, nodes).unwrap()
    }

    /// Chain of nested sets: {0..n-1} ⊃ {0..n-2} ⊃ … ⊃ {0}.
    pub fn chain(n: usize) -> Self {
        SetTree::new(n, (1..=n).map(|m| (0..m as Element).collect())).unwrap()
    }
}

pub struct TreeMinor {
    pub tree: SetTree,
    /// new element -> original element
    pub elem_of: Vec<Element>,
    /// minor node id -> original node id
    pub node_of: Vec<NodeId>,
}

/// A level assignment to the nodes of a tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Split {
    pub level: Vec<i64>,
}

impl Split {
    pub fn constant(t: &SetTree) -> Self {
        Split {
            level: vec![0; t.node_count()],
        }
    }

    /// Number of distinct levels used.
    pub fn height(&self) -> usize {
        self.level.iter().collect::<BTreeSet<_>>().len()
    }
}

/// Layers of a split: two nodes are visible when they are ancestor-related,
/// have equal level, and no strictly-higher level occurs strictly between
/// them; layers are the classes of the reflexive-transitive closure.
pub fn layers(t: &SetTree, s: &Split) -> Result<Vec<Vec<NodeId>>> {
    if s.level.len() != t.node_count() {
        return Err(Error::InvalidSplit(format!(
            "split assigns {} levels to {} nodes",
            s.level.len(),
            t.node_count()
        )));
    }
    let n = t.node_count();
    let mut visible = vec![vec![false; n]; n];
    for x in 0..n {
        for y in 0..n {
            if !t.is_ancestor(y, x) || s.level[x] != s.level[y] {
                continue;
            }
            let blocked = (0..n).any(|z| {
                t.is_ancestor(y, z) && t.is_ancestor(z, x) && s.level[z] > s.level[x]
            });
            if !blocked {
                visible[x][y] = true;
                visible[y][x] = true;
            }
        }
    }
    let comps = crate::graph::components_of(n, |a, b| visible[a as usize][b as usize]);
    Ok(comps
        .into_iter()
        .map(|c| c.into_iter().map(|v| v as NodeId).collect())
        .collect())
}

/// A commutative family of disjoint node pairs closed under moving a member
/// down in the tree.
#[derive(Clone, Debug)]
pub struct StrahlerConstraint {
    pairs: BTreeSet<(NodeId, NodeId)>,
}

impl StrahlerConstraint {
    /// Materializes and validates a set of pairs.
    pub fn new(t: &SetTree, pairs: impl IntoIterator<Item = (NodeId, NodeId)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in pairs {
            if a >= t.node_count() || b >= t.node_count() {
                return Err(Error::InvalidConstraint(format!("unknown node in pair ({a},{b})")));
            }
            if !t.are_disjoint(a, b) {
                return Err(Error::InvalidConstraint(format!(
                    "pair ({a},{b}) is not disjoint"
                )));
            }
            set.insert((a.min(b), a.max(b)));
        }
        // closed under replacing a member by a descendant
        for &(a, b) in &set {
            for (x, y) in [(a, b), (b, a)] {
                for y2 in t.node_ids() {
                    if t.is_ancestor(y, y2) && !set.contains(&(x.min(y2), x.max(y2))) {
                        return Err(Error::InvalidConstraint(format!(
                            "({x},{y}) is constrained but ({x},{y2}) is not, though {y2} descends from {y}"
                        )));
                    }
                }
            }
        }
        Ok(StrahlerConstraint { pairs: set })
    }

    /// Materializes a predicate over all disjoint pairs, then validates closure.
    pub fn from_predicate(t: &SetTree, pred: impl Fn(NodeId, NodeId) -> bool) -> Result<Self> {
        let mut pairs = Vec::new();
        for a in t.node_ids() {
            for b in a + 1..t.node_count() {
                if t.are_disjoint(a, b) && pred(a, b) {
                    pairs.push((a, b));
                }
            }
        }
        StrahlerConstraint::new(t, pairs)
    }

    /// All disjoint pairs: the trivial constraint.
    pub fn all_pairs(t: &SetTree) -> Self {
        StrahlerConstraint::from_predicate(t, |_, _| true).unwrap()
    }

    /// Pairs whose meet (smallest node containing both) lies in `red`.
    pub fn red_meet(t: &SetTree, red: &BTreeSet<NodeId>) -> Self {
        StrahlerConstraint::from_predicate(t, |a, b| {
            let meet = t
                .node_ids()
                .filter(|&m| t.node(a).is_subset(t.node(m)) && t.node(b).is_subset(t.node(m)))
                .min_by_key(|&m| t.node(m).len());
            meet.map(|m| red.contains(&m)).unwrap_or(false)
        })
        .unwrap()
    }

    pub fn contains(&self, a: NodeId, b: NodeId) -> bool {
        self.pairs.contains(&(a.min(b), a.max(b)))
    }

    pub fn pairs(&self) -> &BTreeSet<(NodeId, NodeId)> {
        &self.pairs
    }
}

pub enum DichotomyOutcome {
    /// A tree minor of Strahler number ≥ n in which every disjoint pair is
    /// constrained.
    Minor {
        new_root: NodeId,
        keep: Vec<NodeId>,
        minor: SetTree,
    },
    /// A split of height ≤ n whose layers contain no constrained pair.
    Split(Split),
}

/// The constructive dichotomy: each node gets the largest `m` such that its
/// subtree admits a constrained complete-binary minor of depth `m`; branch 1
/// extracts the witness when the root value reaches `n`, branch 2 returns the
/// value map as a split.
pub fn strahler_dichotomy(
    t: &SetTree,
    c: &StrahlerConstraint,
    n: usize,
) -> Result<DichotomyOutcome> {
    let count = t.node_count();
    // h[y] = largest depth of a constrained complete-binary minor rooted at y
    let mut h = vec![0usize; count];
    let mut best_pair: Vec<Option<(NodeId, NodeId)>> = vec![None; count];
    // process nodes by increasing set size so descendants come first
    let mut order: Vec<NodeId> = t.node_ids().collect();
    order.sort_by_key(|&id| t.node(id).len());
    // f[x] = max of h over the subtree rooted at x
    let mut f = vec![0usize; count];
    for &y in &order {
        let mut best = 0;
        for a in t.node_ids() {
            if !(a == y || t.is_ancestor(y, a)) {
                continue;
            }
            for b in t.node_ids() {
                if b <= a || !(b == y || t.is_ancestor(y, b)) {
                    continue;
                }
                if t.are_disjoint(a, b) && c.contains(a, b) {
                    let d = 1 + f[a].min(f[b]);
                    if d > best {
                        best = d;
                        best_pair[y] = Some((a, b));
                    }
                }
            }
        }
        h[y] = best;
        f[y] = best;
        for ch in t.children(y) {
            f[y] = f[y].max(f[ch]);
        }
    }
    if f[t.root()] >= n {
        // extract: find the deepest witness root with h ≥ n
        let y0 = t.node_ids().filter(|&y| h[y] >= n).min_by_key(|&y| t.node(y).len()).unwrap();
        let mut keep = Vec::new();
        extract(t, &h, &f, &best_pair, y0, n, &mut keep);
        let minor = t.tree_minor(y0, &keep)?;
        return Ok(DichotomyOutcome::Minor {
            new_root: y0,
            keep,
            minor: minor.tree,
        });
    }
    Ok(DichotomyOutcome::Split(Split {
        level: f.iter().map(|&v| v as i64).collect(),
    }))
}

fn extract(
    t: &SetTree,
    h: &[usize],
    f: &[usize],
    best_pair: &[Option<(NodeId, NodeId)>],
    y: NodeId,
    depth: usize,
    keep: &mut Vec<NodeId>,
) {
    keep.push(y);
    if depth == 0 {
        return;
    }
    let (a, b) = best_pair[y].expect("witness pair recorded for positive depth");
    for side in [a, b] {
        // descend to a node realizing h ≥ depth-1 inside the subtree of `side`
        let target = t
            .node_ids()
            .filter(|&z| (z == side || t.is_ancestor(side, z)) && h[z] >= depth - 1)
            .min_by_key(|&z| t.node(z).len());
        let z = target.unwrap_or(side);
        debug_assert!(f[side] >= depth - 1);
        extract(t, h, f, best_pair, z, depth - 1, keep);
    }
}

/// Post-hoc verifier for dichotomy outcomes, used by the acceptance suite.
pub fn verify_dichotomy_outcome(
    t: &SetTree,
    c: &StrahlerConstraint,
    n: usize,
    outcome: &DichotomyOutcome,
) -> std::result::Result<(), String> {
    match outcome {
        DichotomyOutcome::Minor { new_root, keep, minor } => {
            if !keep.contains(new_root) {
                return Err("root not kept".into());
            }
            if minor.strahler() < n {
                return Err(format!(
                    "minor has Strahler {} < {n}",
                    minor.strahler()
                ));
            }
            for (i, &a) in keep.iter().enumerate() {
                for &b in &keep[i + 1..] {
                    if t.are_disjoint(a, b) && !c.contains(a, b) {
                        return Err(format!("disjoint pair ({a},{b}) in minor is unconstrained"));
                    }
                }
            }
            Ok(())
        }
        DichotomyOutcome::Split(s) => {
            if s.height() > n {
                return Err(format!("split height {} > {n}", s.height()));
            }
            for layer in layers(t, s).map_err(|e| e.to_string())? {
                for (i, &a) in layer.iter().enumerate() {
                    for &b in &layer[i + 1..] {
                        if t.are_disjoint(a, b) && c.contains(a, b) {
                            return Err(format!("layer contains constrained pair ({a},{b})"));
                        }
                    }
                }
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        // missing root
        assert!(SetTree::new(2, [[0u32].into_iter().collect()]).is_err());
        // overlap without nesting
        assert!(SetTree::new(
            3,
            [
                (0..3).collect::<BTreeSet<_>>(),
                [0u32, 1].into_iter().collect(),
                [1u32, 2].into_iter().collect(),
            ]
        )
        .is_err());
        // duplicates
        assert!(SetTree::new(
            2,
            [
                (0..2).collect::<BTreeSet<_>>(),
                [0u32].into_iter().collect(),
                [0u32].into_iter().collect(),
            ]
        )
        .is_err());
    }

    #[test]
    fn child_graph_of_trivial_tree() {
        let t = SetTree::trivial(3);
        let g = t.child_graph();
        assert_eq!(g.n(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn child_graph_of_complete_binary() {
        let t = SetTree::complete_binary(2);
        let g = t.child_graph();
        assert_eq!(g.n(), 7);
        assert_eq!(g.edge_count(), 6);
        // degrees: root 2, internals 3, leaves 1
        let mut degs: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
        degs.sort_unstable();
        assert_eq!(degs, vec![1, 1, 1, 1, 2, 3, 3]);
    }

    #[test]
    fn minor_identity_and_singleton() {
        let t = SetTree::complete_binary(2);
        let all: Vec<NodeId> = t.node_ids().collect();
        let m = t.tree_minor(t.root(), &all).unwrap();
        assert_eq!(m.tree, t);
        let single = t.tree_minor(3, &[3]).unwrap();
        assert_eq!(single.tree.node_count(), 1);
    }

    #[test]
    fn minor_rejects_uncontained_nodes() {
        let t = SetTree::complete_binary(2);
        let leaf = t.leaves()[0];
        let root = t.root();
        assert!(t.tree_minor(leaf, &[leaf, root]).is_err());
    }

    #[test]
    fn strahler_of_chain_is_zero() {
        assert_eq!(SetTree::chain(5).strahler(), 0);
    }

    #[test]
    fn strahler_of_complete_binary() {
        for d in 0..=4 {
            assert_eq!(SetTree::complete_binary(d).strahler(), d);
        }
    }

    #[test]
    fn layers_of_constant_split() {
        let t = SetTree::complete_binary(2);
        let ls = layers(&t, &Split::constant(&t)).unwrap();
        assert_eq!(ls.len(), 1);
        assert_eq!(ls[0].len(), t.node_count());
    }

    #[test]
    fn layers_of_parity_split_on_chain() {
        // chain of 4 nodes, levels 0,1,0,1 top-down: the two level-0 nodes are
        // separated by a level-1 node, so the layers are {n0},{n1,n3},{n2}
        // (writing n0 for the root).
        let t = SetTree::chain(4);
        // node ids are in canonical order: {0} < {0,1} < {0,1,2} < {0,1,2,3};
        // the root {0,1,2,3} is id 3, top-down order is ids 3,2,1,0.
        let mut level = vec![0i64; 4];
        level[3] = 0;
        level[2] = 1;
        level[1] = 0;
        level[0] = 1;
        let ls = layers(&t, &Split { level }).unwrap();
        let mut sorted: Vec<Vec<NodeId>> = ls;
        sorted.sort();
        assert_eq!(sorted, vec![vec![0, 2], vec![1], vec![3]]);
    }

    #[test]
    fn layers_partition_nodes() {
        let t = SetTree::complete_binary(3);
        let split = Split {
            level: (0..t.node_count()).map(|i| (i % 3) as i64).collect(),
        };
        let ls = layers(&t, &split).unwrap();
        let mut seen: Vec<NodeId> = ls.into_iter().flatten().collect();
        seen.sort_unstable();
        assert_eq!(seen, t.node_ids().collect::<Vec<_>>());
    }

    #[test]
    fn constraint_closure_is_checked() {
        let t = SetTree::complete_binary(2);
        // pick a single pair of disjoint internal nodes: the closure demands
        // their descendants too, so this must be rejected
        let internals: Vec<NodeId> = t
            .node_ids()
            .filter(|&i| !t.is_leaf(i) && i != t.root())
            .collect();
        let (a, b) = (internals[0], internals[1]);
        assert!(t.are_disjoint(a, b));
        assert!(StrahlerConstraint::new(&t, [(a, b)]).is_err());
    }

    #[test]
    fn dichotomy_trivial_cases() {
        let t = SetTree::complete_binary(3);
        let all = StrahlerConstraint::all_pairs(&t);
        match strahler_dichotomy(&t, &all, 3).unwrap() {
            DichotomyOutcome::Minor { minor, .. } => assert!(minor.strahler() >= 3),
            DichotomyOutcome::Split(_) => panic!("expected minor branch"),
        }
        let empty = StrahlerConstraint::new(&t, []).unwrap();
        match strahler_dichotomy(&t, &empty, 1).unwrap() {
            DichotomyOutcome::Split(s) => {
                assert!(s.height() <= 1);
                let outcome = DichotomyOutcome::Split(s);
                verify_dichotomy_outcome(&t, &empty, 1, &outcome).unwrap();
            }
            DichotomyOutcome::Minor { .. } => panic!("expected split branch"),
        }
    }

    #[test]
    fn shape_codes_distinguish() {
        assert_eq!(
            SetTree::complete_binary(1).shape_code(),
            SetTree::new(2, [(0..2).collect(), [0].into(), [1].into()])
                .unwrap()
                .shape_code()
        );
        assert_ne!(SetTree::chain(3).shape_code(), SetTree::complete_binary(2).shape_code());
    }

    #[test]
    fn json_round_trip() {
        let t = SetTree::complete_binary(2);
        let s = serde_json::to_string(&t).unwrap();
        let t2: SetTree = serde_json::from_str(&s).unwrap();
        assert_eq!(t, t2);
    }
}
