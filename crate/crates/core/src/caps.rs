//! Hard caps on the exhaustive searches. The env variable `CWLAB_CAPS` is a
//! multiplier applied to every cap (values > 1 raise them at the user's risk).

use std::sync::OnceLock;

fn multiplier() -> f64 {
    static M: OnceLock<f64> = OnceLock::new();
    *M.get_or_init(|| {
        std::env::var("CWLAB_CAPS")
            .ok()
            .and_then(|s| s.parse::<f64>().ok())
            .filter(|m| *m >= 1.0)
            .unwrap_or(1.0)
    })
}

pub fn scaled(base: usize) -> usize {
    (base as f64 * multiplier()).floor() as usize
}

/// Exhaustive isomorphism search.
pub fn iso_vertices() -> usize {
    scaled(12)
}

/// Set quantifiers in formula evaluation (2^n assignments).
pub fn eval_set_vertices() -> usize {
    scaled(12)
}

/// q-theory computation: maximal depth, and structure size per depth.
pub fn qtype_depth() -> usize {
    scaled(3)
}

pub fn qtype_vertices(q: usize) -> usize {
    if q <= 1 {
        scaled(18)
    } else if q == 2 {
        scaled(8)
    } else {
        scaled(6)
    }
}

/// Parameter search in transductions.
pub fn transduction_vertices() -> usize {
    scaled(10)
}

/// Exhaustive forward-invariant-split search.
pub fn split_search_nodes() -> usize {
    scaled(10)
}

/// Exhaustive chain-decomposition search.
pub fn chain_search_vertices() -> usize {
    scaled(10)
}

/// Subset search for centers.
pub fn center_vertices() -> usize {
    scaled(12)
}

/// Body size of the candidate term in the obstruction-covering search.
pub fn cover_vertices() -> usize {
    scaled(14)
}

pub fn cover_colours() -> usize {
    scaled(5)
}

/// Superflip subsets enumerated by the colour-connectedness check.
pub fn superflip_blocks() -> usize {
    scaled(4)
}
