mod common;

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::SeedableRng;

use common::{final_shape, random_tree, y_shape};
use semistar_core::oracle::brute_supports;
use semistar_core::spectrum::RawTree;
use semistar_core::{
    derive_omega, enumerate_supports, is_isomorphic, Bounds, Error, Poset, PrimeFlag, Skeleton,
    SpectrumTree, Support,
};

#[test]
fn support_enumeration_matches_filter() {
    for m in 0..=3 {
        let found = enumerate_supports(m, &Bounds::default()).unwrap();
        assert_eq!(found.len() as u64, brute_supports(m).unwrap(), "m = {m}");
    }
}

#[test]
fn four_branch_supports_are_exactly_the_union_closed_families() {
    // filter all 2^15 families directly
    let mut want = BTreeSet::new();
    for choice in 0u64..1 << 15 {
        let family = 1 | choice << 1;
        let closed = (0..16).all(|a| {
            family >> a & 1 == 0 || (0..16).all(|b| family >> b & 1 == 0 || family >> (a | b) & 1 == 1)
        });
        if closed {
            want.insert(family);
        }
    }
    let got: BTreeSet<u64> = enumerate_supports(4, &Bounds::default())
        .unwrap()
        .iter()
        .map(Support::family_mask)
        .collect();
    assert_eq!(got, want);
    assert_eq!(got.len(), 2480);
}

#[test]
fn supports_respect_branch_bound() {
    let b = Bounds::default().with_max_branches(2);
    assert!(matches!(enumerate_supports(3, &b), Err(Error::EnumerationLimit { .. })));
}

#[test]
fn full_components_are_boolean_lattices() {
    for m in 1..=4usize {
        let full = Support::new(m, &(0..1u32 << m).collect::<Vec<_>>()).unwrap();
        let boolean = Skeleton::new(m - 1).poset();
        for t in 0..m {
            let c = full.component_poset(t);
            assert_eq!(c.size(), 1 << (m - 1));
            assert!(is_isomorphic(&c, &boolean));
        }
    }
}

#[test]
fn skeleton_sizes() {
    let t = final_shape(1, (1, 1), (1, 1), (1, 1));
    assert_eq!(t.skeleton().len(), 4);
    assert_eq!(SpectrumTree::valuation(1, 1).unwrap().skeleton().len(), 2);
    assert_eq!(SpectrumTree::h_local(&[(1, 1); 3]).unwrap().skeleton().len(), 8);
    let p = Skeleton::new(3).poset();
    assert!(is_isomorphic(&p, &Poset::chain(2).product(&Poset::chain(2)).product(&Poset::chain(2))));
}

#[test]
fn decomposition_sizes() {
    assert_eq!(SpectrumTree::h_local(&[(1, 1); 3]).unwrap().standard_decomposition().len(), 3);
    assert_eq!(y_shape(1, (1, 1), (1, 1)).standard_decomposition().len(), 1);
    assert_eq!(final_shape(1, (1, 1), (1, 1), (1, 1)).standard_decomposition().len(), 2);
}

#[test]
fn surgery_on_random_trees_stays_valid() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..100 {
        let t = random_tree(&mut rng);
        for x in 1..t.len() {
            let q = t.quotient_subtree(x).unwrap();
            assert_eq!(q.omega(0), 1);
            for y in 1..q.len() {
                let orig = t.node_index(q.id(y)).unwrap();
                assert_eq!(q.omega(y), t.omega(orig));
                assert_eq!(q.epsilon(y), t.epsilon(orig));
            }
        }
        for c in t.standard_decomposition() {
            let b = t.branch_subtree(c).unwrap();
            assert_eq!(b.branch_count(), 1);
            assert_eq!(b.len(), 1 + subtree_size(&t, c));
        }
    }
}

fn subtree_size(t: &SpectrumTree, x: usize) -> usize {
    1 + t.children(x).iter().map(|&c| subtree_size(t, c)).sum::<usize>()
}

#[test]
fn h_local_branches_are_valuations() {
    let t = SpectrumTree::h_local(&[(3, 2), (1, 1)]).unwrap();
    for c in t.standard_decomposition() {
        let b = t.branch_subtree(c).unwrap();
        assert_eq!(b.len(), 2);
        assert!(b.is_leaf(1));
    }
}

#[test]
fn leaf_segment_omega_matches_epsilon() {
    assert_eq!(derive_omega(&[PrimeFlag::Idempotent]).unwrap(), 2);
    assert_eq!(derive_omega(&[PrimeFlag::NonIdempotent]).unwrap(), 1);
    // an admissible leaf has ω ≥ ε, with equality for a one-prime segment
    for (flag, eps) in [(PrimeFlag::Idempotent, 2), (PrimeFlag::NonIdempotent, 1)] {
        let w = derive_omega(&[flag]).unwrap();
        assert!(SpectrumTree::valuation(w, eps).is_ok());
    }
}

#[test]
fn root_may_have_a_single_child() {
    assert!(SpectrumTree::valuation(2, 1).is_ok());
    let raw = RawTree::new()
        .node("0", None, 1, None)
        .node("P", Some("0"), 1, None)
        .node("M", Some("P"), 1, Some(1));
    let err = raw.validate().unwrap_err().to_string();
    assert!(err.contains("branching point"), "{err}");
}
