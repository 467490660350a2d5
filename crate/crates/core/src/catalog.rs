//! Exhaustive enumerations of small structures: rooted unordered trees,
//! binary shapes, and associative multiplication tables. Used by the oracle
//! tests and the acceptance suite.

use std::collections::BTreeSet;

use crate::semigroup::Semigroup;
use crate::tree::SetTree;

/// All rooted unordered tree shapes with exactly `n` nodes, one canonical
/// representative each.
pub fn rooted_trees(n: usize) -> Vec<TreeShape> {
    fn gen(n: usize, memo: &mut Vec<Option<Vec<TreeShape>>>) -> Vec<TreeShape> {
        if let Some(cached) = &memo[n] {
            return cached.clone();
        }
        let mut out = Vec::new();
        if n == 1 {
            out.push(TreeShape(Vec::new()));
        } else {
            // children as a multiset: enumerate non-increasing code sequences
            let mut partial: Vec<TreeShape> = Vec::new();
            fn rec(
                remaining: usize,
                max_code: &Option<String>,
                partial: &mut Vec<TreeShape>,
                out: &mut Vec<TreeShape>,
                memo: &mut Vec<Option<Vec<TreeShape>>>,
            ) {
                if remaining == 0 {
                    out.push(TreeShape(partial.clone()));
                    return;
                }
                for size in (1..=remaining).rev() {
                    for child in gen(size, memo) {
                        let code = child.code();
                        if let Some(max) = max_code {
                            if code > *max {
                                continue;
                            }
                        }
                        partial.push(child);
                        rec(remaining - size, &Some(code), partial, out, memo);
                        partial.pop();
                    }
                }
            }
            rec(n - 1, &None, &mut partial, &mut out, memo);
        }
        // canonical codes are unique, but the child-size enumeration can
        // produce the same multiset along different orders; dedupe by code
        out.sort_by_key(|t| t.code());
        out.dedup_by_key(|t| t.code());
        memo[n] = Some(out.clone());
        out
    }
    let mut memo = vec![None; n + 1];
    if n == 0 {
        return Vec::new();
    }
    gen(n, &mut memo)
}

/// All rooted unordered binary tree shapes (every non-leaf has exactly two
/// children) with exactly `leaves` leaves.
pub fn binary_trees(leaves: usize) -> Vec<TreeShape> {
    fn gen(leaves: usize, memo: &mut Vec<Option<Vec<TreeShape>>>) -> Vec<TreeShape> {
        if let Some(cached) = &memo[leaves] {
            return cached.clone();
        }
        let mut out = Vec::new();
        if leaves == 1 {
            out.push(TreeShape(Vec::new()));
        } else {
            for left in 1..=leaves / 2 {
                let right = leaves - left;
                for l in gen(left, memo) {
                    for r in gen(right, memo) {
                        // unordered children: dedupe only the equal-size case
                        if left == right && l.code() > r.code() {
                            continue;
                        }
                        out.push(TreeShape(vec![l.clone(), r.clone()]));
                    }
                }
            }
        }
        out.sort_by_key(|t| t.code());
        out.dedup_by_key(|t| t.code());
        memo[leaves] = Some(out.clone());
        out
    }
    let mut memo = vec![None; leaves + 1];
    if leaves == 0 {
        return Vec::new();
    }
    gen(leaves, &mut memo)
}

#[derive(Clone, Debug)]
pub struct TreeShape(pub Vec<TreeShape>);

impl TreeShape {
    pub fn code(&self) -> String {
        let mut cs: Vec<String> = self.0.iter().map(|c| c.code()).collect();
        cs.sort();
        format!("({})", cs.join(""))
    }

    pub fn node_count(&self) -> usize {
        1 + self.0.iter().map(|c| c.node_count()).sum::<usize>()
    }

    pub fn leaf_count(&self) -> usize {
        if self.0.is_empty() {
            1
        } else {
            self.0.iter().map(|c| c.leaf_count()).sum()
        }
    }

    /// Realizes the shape as a set-tree by giving every node one private
    /// ground element; all node sets are distinct.
    pub fn realize(&self) -> SetTree {
        let mut nodes: Vec<BTreeSet<u32>> = Vec::new();
        fn build(shape: &TreeShape, next: &mut u32, nodes: &mut Vec<BTreeSet<u32>>) -> BTreeSet<u32> {
            let own = *next;
            *next += 1;
            let mut set: BTreeSet<u32> = [own].into_iter().collect();
            for child in &shape.0 {
                set.extend(build(child, next, nodes));
            }
            nodes.push(set.clone());
            set
        }
        let mut next = 0;
        build(self, &mut next, &mut nodes);
        SetTree::new(next as usize, nodes).unwrap()
    }

    /// Realizes a binary shape with singleton leaves: ground elements are the
    /// leaves in left-to-right order, internal nodes are leaf intervals.
    pub fn realize_binary(&self) -> SetTree {
        let mut nodes: Vec<BTreeSet<u32>> = Vec::new();
        fn build(shape: &TreeShape, next: &mut u32, nodes: &mut Vec<BTreeSet<u32>>) -> BTreeSet<u32> {
            if shape.0.is_empty() {
                let own = *next;
                *next += 1;
                let set: BTreeSet<u32> = [own].into_iter().collect();
                nodes.push(set.clone());
                return set;
            }
            let mut set = BTreeSet::new();
            for child in &shape.0 {
                set.extend(build(child, next, nodes));
            }
            nodes.push(set.clone());
            set
        }
        let mut next = 0;
        build(self, &mut next, &mut nodes);
        SetTree::new(next as usize, nodes).unwrap()
    }
}

/// Every associative multiplication table on {0..size-1}, as a semigroup.
/// Feasible for size ≤ 3 (3^9 candidate tables).
pub fn all_semigroups(size: usize) -> Vec<Semigroup> {
    let cells = size * size;
    let mut out = Vec::new();
    let mut table = vec![0usize; cells];
    loop {
        let mul: Vec<Vec<usize>> = (0..size)
            .map(|a| table[a * size..(a + 1) * size].to_vec())
            .collect();
        if let Ok(sg) = Semigroup::new(size, mul) {
            out.push(sg);
        }
        let mut i = 0;
        loop {
            if i == cells {
                return out;
            }
            table[i] += 1;
            if table[i] < size {
                break;
            }
            table[i] = 0;
            i += 1;
        }
    }
}
