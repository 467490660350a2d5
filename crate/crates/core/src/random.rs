//! Seeded random instance generators for the property and acceptance tests.
//! The seed comes from CWLAB_SEED when set, with a fixed default, so runs are
//! reproducible.

use std::collections::{BTreeMap, BTreeSet};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::graph::{ColouredGraph, Vertex};
use crate::semigroup::{AdditiveLabelling, Semigroup};
use crate::term::GraphTerm;
use crate::tree::{NodeId, SetTree, StrahlerConstraint};

pub const DEFAULT_SEED: u64 = 0xC11A_B5EE;

pub fn seed_from_env() -> u64 {
    std::env::var("CWLAB_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random graph on `n` vertices with `k` colours (surjective) and the given
/// edge probability.
pub fn graph(rng: &mut impl Rng, n: usize, k: usize, p: f64) -> ColouredGraph {
    assert!(n >= k && k >= 1);
    let mut colour: Vec<u32> = (0..n)
        .map(|i| {
            if i < k {
                i as u32 + 1
            } else {
                rng.random_range(1..=k as u32)
            }
        })
        .collect();
    colour.shuffle(rng);
    let mut edges = Vec::new();
    for u in 0..n as Vertex {
        for v in u + 1..n as Vertex {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    ColouredGraph::new(n, k, colour, edges).unwrap()
}

/// A random laminar family: recursive random partitioning of the ground set,
/// with node count bounded by `max_nodes`.
pub fn laminar_tree(rng: &mut impl Rng, max_nodes: usize) -> SetTree {
    assert!(max_nodes >= 1);
    let ground = rng.random_range(1..=max_nodes.max(2));
    let mut nodes: Vec<BTreeSet<u32>> = vec![(0..ground as u32).collect()];
    let mut queue: Vec<BTreeSet<u32>> = vec![(0..ground as u32).collect()];
    while let Some(set) = queue.pop() {
        if nodes.len() >= max_nodes || set.len() < 2 || rng.random_bool(0.3) {
            continue;
        }
        // split into 2..=3 parts, keep a random subfamily of the parts
        let items: Vec<u32> = set.iter().copied().collect();
        let parts = rng.random_range(2..=3.min(items.len()));
        let mut assignment: Vec<usize> = (0..items.len()).map(|i| i % parts).collect();
        assignment.shuffle(rng);
        let mut groups: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); parts];
        for (i, &e) in items.iter().enumerate() {
            groups[assignment[i]].insert(e);
        }
        for group in groups {
            if group.is_empty() || group.len() == set.len() {
                continue;
            }
            if nodes.len() < max_nodes && rng.random_bool(0.85) {
                nodes.push(group.clone());
                queue.push(group);
            }
        }
    }
    SetTree::new(ground, nodes).unwrap()
}

/// A random Strahler constraint on the tree: pairs meeting in a random red
/// node set, or a random downward-closed pair family.
pub fn strahler_constraint(rng: &mut impl Rng, t: &SetTree) -> StrahlerConstraint {
    if rng.random_bool(0.5) {
        let red: BTreeSet<NodeId> = t.node_ids().filter(|_| rng.random_bool(0.5)).collect();
        StrahlerConstraint::red_meet(t, &red)
    } else {
        // close a random seed set downward
        let mut pairs: BTreeSet<(NodeId, NodeId)> = BTreeSet::new();
        for a in t.node_ids() {
            for b in a + 1..t.node_count() {
                if t.are_disjoint(a, b) && rng.random_bool(0.3) {
                    pairs.insert((a, b));
                }
            }
        }
        loop {
            let mut added = false;
            for &(a, b) in pairs.clone().iter() {
                for (x, y) in [(a, b), (b, a)] {
                    for y2 in t.node_ids() {
                        if t.is_ancestor(y, y2) {
                            let p = (x.min(y2), x.max(y2));
                            if pairs.insert(p) {
                                added = true;
                            }
                        }
                    }
                }
            }
            if !added {
                break;
            }
        }
        StrahlerConstraint::new(t, pairs).unwrap()
    }
}

/// A random additive labelling into the given semigroup: random parent-edge
/// labels, everything else derived.
pub fn additive_labelling(rng: &mut impl Rng, t: &SetTree, sg: Semigroup) -> AdditiveLabelling {
    let edge: BTreeMap<NodeId, usize> = t
        .node_ids()
        .filter(|&id| t.parent(id).is_some())
        .map(|id| (id, rng.random_range(0..sg.size())))
        .collect();
    AdditiveLabelling::from_edge_labels(t, sg, edge).unwrap()
}

/// A random unary loop-type term of sort k with at most `max_intro`
/// introduced vertices.
pub fn unary_loop_term(rng: &mut impl Rng, k: usize, max_intro: usize) -> GraphTerm {
    let intro = rng.random_range(0..=max_intro);
    let n = k + intro;
    // ports first (vertices 0..k); any surjective body colouring works, and
    // the ports' colours define the recolouring
    let mut colour: Vec<u32> = (0..n).map(|_| rng.random_range(1..=k as u32)).collect();
    for c in 1..=k as u32 {
        if !colour.contains(&c) {
            let at = rng.random_range(0..n);
            colour[at] = c;
        }
    }
    // surjectivity could still fail if a later forced write overwrote an
    // earlier forced colour; patch deterministically
    for c in 1..=k as u32 {
        if !colour.contains(&c) {
            colour[c as usize - 1] = c;
        }
    }
    let mut edges = Vec::new();
    for u in 0..n as Vertex {
        for v in u + 1..n as Vertex {
            if (u as usize) < k && (v as usize) < k {
                continue; // no edges between ports
            }
            if rng.random_bool(0.4) {
                edges.push((u, v));
            }
        }
    }
    let body = ColouredGraph::new(n, k, colour, edges).unwrap();
    GraphTerm::new(body, vec![(0..k as Vertex).collect()]).unwrap()
}

/// A random two-level preorder on the vertex set: an ordered partition into
/// outer parts, each with an ordered inner partition.
pub fn two_level_preorder(
    rng: &mut impl Rng,
    n: usize,
) -> (Vec<Vec<Vertex>>, Vec<Vec<Vec<Vertex>>>) {
    let mut vertices: Vec<Vertex> = (0..n as Vertex).collect();
    vertices.shuffle(rng);
    let mut outer: Vec<Vec<Vertex>> = Vec::new();
    let mut at = 0;
    while at < n {
        let take = rng.random_range(1..=(n - at).min(4));
        outer.push(vertices[at..at + take].to_vec());
        at += take;
    }
    let inners = outer
        .iter()
        .map(|part| {
            let mut part = part.clone();
            part.shuffle(rng);
            let mut inner: Vec<Vec<Vertex>> = Vec::new();
            let mut at = 0;
            while at < part.len() {
                let take = rng.random_range(1..=(part.len() - at).min(3));
                inner.push(part[at..at + take].to_vec());
                at += take;
            }
            inner
        })
        .collect();
    (outer, inners)
}
