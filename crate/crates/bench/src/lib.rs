//! Benchmarks for semistar-core; see `benches/`.

use semistar_core::{RawTree, SpectrumTree};

/// Root with an internal child `P` over `M1`, `M2`, next to a maximal ideal `N`.
pub fn final_shape(p: i64, n: i64) -> SpectrumTree {
    RawTree::new()
        .node("0", None, 1, None)
        .node("P", Some("0"), p, None)
        .node("M1", Some("P"), 1, Some(1))
        .node("M2", Some("P"), 1, Some(1))
        .node("N", Some("0"), n, Some(1))
        .validate()
        .expect("valid tree")
}
