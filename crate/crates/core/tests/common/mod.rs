#![allow(dead_code)]

use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::Rng;
use semistar_core::spectrum::RawTree;
use semistar_core::{MultiPoly, Poset, Rational, SpectrumTree};

pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn poly(vars: &[&str], terms: &[(&[u32], i64, i64)]) -> MultiPoly {
    MultiPoly::from_terms(vars, terms.iter().map(|(e, n, d)| (e.to_vec(), q(*n, *d)))).unwrap()
}

/// Root with children `P` (over maximal ideals `M1`, `M2`) and `N`.
pub fn final_shape(p: i64, m1: (i64, i64), m2: (i64, i64), n: (i64, i64)) -> SpectrumTree {
    RawTree::new()
        .node("0", None, 1, None)
        .node("P", Some("0"), p, None)
        .node("M1", Some("P"), m1.0, Some(m1.1))
        .node("M2", Some("P"), m2.0, Some(m2.1))
        .node("N", Some("0"), n.0, Some(n.1))
        .validate()
        .unwrap()
}

/// Root with the single child `P` over maximal ideals `M1`, `M2`.
pub fn y_shape(p: i64, m1: (i64, i64), m2: (i64, i64)) -> SpectrumTree {
    RawTree::new()
        .node("0", None, 1, None)
        .node("P", Some("0"), p, None)
        .node("M1", Some("P"), m1.0, Some(m1.1))
        .node("M2", Some("P"), m2.0, Some(m2.1))
        .validate()
        .unwrap()
}

/// All `(ω, ε)` leaf labels with `ω ≤ 4`.
pub fn leaf_labels() -> Vec<(u64, u8)> {
    (1..=4u64)
        .flat_map(|w| (1..=2u8).filter(move |&e| e as u64 <= w).map(move |e| (w, e)))
        .collect()
}

/// A random poset with a size drawn from `sizes` and shuffled labels.
pub fn random_poset(rng: &mut impl Rng, sizes: RangeInclusive<usize>, density: f64) -> Poset {
    let n = rng.gen_range(sizes);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                pairs.push((perm[i], perm[j]));
            }
        }
    }
    Poset::from_relations(n, &pairs).unwrap()
}

/// A random tree: one to three root children, each either a maximal ideal
/// or a branching prime over two or three maximal ideals.
pub fn random_tree(rng: &mut impl Rng) -> SpectrumTree {
    let mut raw = RawTree::new().node("0", None, 1, None);
    let mut next = 0;
    let mut fresh = |prefix: &str| {
        next += 1;
        format!("{prefix}{next}")
    };
    for _ in 0..rng.gen_range(1..=3) {
        if rng.gen_bool(0.5) {
            let e = rng.gen_range(1..=2);
            raw = raw.node(&fresh("M"), Some("0"), rng.gen_range(e..=4), Some(e));
        } else {
            let p = fresh("P");
            raw = raw.node(&p, Some("0"), rng.gen_range(1..=4), None);
            for _ in 0..rng.gen_range(2..=3) {
                let e = rng.gen_range(1..=2);
                raw = raw.node(&fresh("M"), Some(&p), rng.gen_range(e..=2), Some(e));
            }
        }
    }
    raw.validate().unwrap()
}

/// Like [`random_tree`], but internal root children carry exactly two
/// maximal ideals, which keeps full semistar counts fast.
pub fn random_light_tree(rng: &mut impl Rng) -> SpectrumTree {
    let mut raw = RawTree::new().node("0", None, 1, None);
    let mut next = 0;
    let mut fresh = |prefix: &str| {
        next += 1;
        format!("{prefix}{next}")
    };
    for _ in 0..rng.gen_range(1..=3) {
        if rng.gen_bool(0.5) {
            let e = rng.gen_range(1..=2);
            raw = raw.node(&fresh("M"), Some("0"), rng.gen_range(e..=4), Some(e));
        } else {
            let p = fresh("P");
            raw = raw.node(&p, Some("0"), rng.gen_range(1..=3), None);
            for _ in 0..2 {
                let e = rng.gen_range(1..=2);
                raw = raw.node(&fresh("M"), Some(&p), rng.gen_range(e..=2), Some(e));
            }
        }
    }
    raw.validate().unwrap()
}
