//! Flagged posets of fractional star and semistar operations, and the four
//! counts.
//!
//! A branch `T` (child `c` of the root) contributes the flagged poset
//! `FStar(T)`: a chain of length `ω(c)` with its bottom `ε(c)` elements
//! flagged when `c` is maximal, and otherwise the semistar poset of the
//! quotient at `c` without its top, followed by a chain of length `ω(c)`.
//!
//! A semistar operation is a support `Δ` together with one order-preserving
//! map `Δ(T) → FStar(T)` for every branch whose component is nonempty.

mod flagged;
mod semistar;
mod symbolic;

use std::cell::OnceCell;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::poset::{count_hom, count_hom_restricted, Poset};
use crate::spectrum::{enumerate_supports, SpectrumTree};

pub use flagged::FlaggedPoset;
pub use semistar::{semistar_poset, ComponentMap, SemistarElement, SemistarPoset};
pub use symbolic::{semistar_polynomial, smstar_polynomial, Symbol, SymbolKind};

pub(crate) fn checked_mul(a: u128, b: u128) -> Result<u128> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

pub(crate) fn checked_add(a: u128, b: u128) -> Result<u128> {
    a.checked_add(b).ok_or(Error::Overflow)
}

/// Lazily computed data of one branch, keyed by its root child.
pub(crate) struct Branch<'t> {
    tree: &'t SpectrumTree,
    node: usize,
    bounds: Bounds,
    quotient: OnceCell<SpectrumTree>,
    size: OnceCell<u128>,
    flag_count: OnceCell<u128>,
    poset: OnceCell<FlaggedPoset>,
}

impl<'t> Branch<'t> {
    pub(crate) fn new(tree: &'t SpectrumTree, node: usize, bounds: &Bounds) -> Self {
        Branch {
            tree,
            node,
            bounds: *bounds,
            quotient: OnceCell::new(),
            size: OnceCell::new(),
            flag_count: OnceCell::new(),
            poset: OnceCell::new(),
        }
    }

    pub(crate) fn all(tree: &'t SpectrumTree, bounds: &Bounds) -> Vec<Branch<'t>> {
        tree.standard_decomposition()
            .into_iter()
            .map(|c| Branch::new(tree, c, bounds))
            .collect()
    }

    fn omega(&self) -> u128 {
        self.tree.omega(self.node) as u128
    }

    fn quotient(&self) -> Result<&SpectrumTree> {
        if let Some(q) = self.quotient.get() {
            return Ok(q);
        }
        let q = self.tree.quotient_subtree(self.node)?;
        Ok(self.quotient.get_or_init(|| q))
    }

    /// `|FStar(T)|`.
    pub(crate) fn size(&self) -> Result<u128> {
        if let Some(&s) = self.size.get() {
            return Ok(s);
        }
        let s = if self.tree.is_leaf(self.node) {
            self.omega()
        } else {
            checked_add(count_semistar(self.quotient()?, &self.bounds)? - 1, self.omega())?
        };
        Ok(*self.size.get_or_init(|| s))
    }

    /// `|Star(T)|`.
    pub(crate) fn flag_count(&self) -> Result<u128> {
        if let Some(&s) = self.flag_count.get() {
            return Ok(s);
        }
        let s = match self.tree.epsilon(self.node) {
            Some(e) => e as u128,
            None => count_smstar(self.quotient()?, &self.bounds)?,
        };
        Ok(*self.flag_count.get_or_init(|| s))
    }

    pub(crate) fn poset(&self) -> Result<&FlaggedPoset> {
        if let Some(p) = self.poset.get() {
            return Ok(p);
        }
        let omega = self.tree.omega(self.node) as usize;
        let p = match self.tree.epsilon(self.node) {
            Some(e) => FlaggedPoset::chain(omega, e as usize),
            None => {
                let s = semistar_poset(self.quotient()?, &self.bounds)?;
                s.materialize(&self.bounds)?.without_maximum()?.below_chain(omega)
            }
        };
        Ok(self.poset.get_or_init(|| p))
    }

    /// `|hom(component, FStar(T))|`, without building `FStar(T)` when the
    /// component has at most one element.
    pub(crate) fn count_from(&self, component: &Poset) -> Result<u128> {
        match component.size() {
            0 => Ok(1),
            1 => self.size(),
            _ => count_hom(component, self.poset()?.poset()),
        }
    }

    /// Like [`count_from`](Self::count_from), with the image of `d` flagged.
    pub(crate) fn tild_count_from(&self, component: &Poset, d: usize) -> Result<u128> {
        if component.size() == 1 {
            return self.flag_count();
        }
        tildhom_count(component, Some(d), self.poset()?)
    }
}

/// `FStar(T)` of a single-branch tree.
pub fn fstar_poset(branch: &SpectrumTree, bounds: &Bounds) -> Result<FlaggedPoset> {
    if branch.branch_count() != 1 {
        return Err(Error::Precondition(format!(
            "expected a single-branch tree, found {} branches",
            branch.branch_count()
        )));
    }
    let b = Branch::new(branch, branch.children(0)[0], bounds);
    b.poset().cloned()
}

/// The product of the branch posets, flagged componentwise. Only the
/// cardinality and the flag count are meaningful; the product order is a
/// modeling choice.
pub fn fstar_product_poset(tree: &SpectrumTree, bounds: &Bounds) -> Result<FlaggedPoset> {
    let mut acc = FlaggedPoset::chain(1, 1);
    for b in Branch::all(tree, bounds) {
        acc = acc.product(b.poset()?);
        if acc.size() > bounds.max_poset {
            return Err(Error::limit("fractional star poset elements", bounds.max_poset as u64));
        }
    }
    Ok(acc)
}

/// Maps `component → f.poset()` sending `d` (when given) into the flags.
pub fn tildhom_count(component: &Poset, d: Option<usize>, f: &FlaggedPoset) -> Result<u128> {
    match d {
        None => count_hom(component, f.poset()),
        Some(d) => {
            if d >= component.size() {
                return Err(Error::Precondition("designated element out of range".into()));
            }
            let mut allowed = vec![None; component.size()];
            allowed[d] = Some(f.flags().clone());
            count_hom_restricted(component, f.poset(), &allowed)
        }
    }
}

/// Number of semistar operations.
pub fn count_semistar(tree: &SpectrumTree, bounds: &Bounds) -> Result<u128> {
    let m = tree.branch_count();
    let branches = Branch::all(tree, bounds);
    let mut total = 0u128;
    for support in enumerate_supports(m, bounds)? {
        let mut term = 1u128;
        for (t, b) in branches.iter().enumerate() {
            let comp = support.component_poset(t);
            term = checked_mul(term, b.count_from(&comp)?)?;
            if term == 0 {
                break;
            }
        }
        total = checked_add(total, term)?;
    }
    Ok(total)
}

/// Number of (semi)star operations: semistar operations closing `D`.
pub fn count_smstar(tree: &SpectrumTree, bounds: &Bounds) -> Result<u128> {
    let m = tree.branch_count();
    let branches = Branch::all(tree, bounds);
    let mut total = 0u128;
    for support in enumerate_supports(m, bounds)? {
        if !support.contains_full() {
            continue;
        }
        let mut term = 1u128;
        for (t, b) in branches.iter().enumerate() {
            let comp = support.component_poset(t);
            // D is the last member of every component
            term = checked_mul(term, b.tild_count_from(&comp, comp.size() - 1)?)?;
            if term == 0 {
                break;
            }
        }
        total = checked_add(total, term)?;
    }
    Ok(total)
}

/// Number of fractional star operations.
pub fn count_fstar(tree: &SpectrumTree, bounds: &Bounds) -> Result<u128> {
    Branch::all(tree, bounds)
        .iter()
        .try_fold(1u128, |acc, b| checked_mul(acc, b.size()?))
}

/// Number of star operations.
pub fn count_star(tree: &SpectrumTree, bounds: &Bounds) -> Result<u128> {
    Branch::all(tree, bounds)
        .iter()
        .try_fold(1u128, |acc, b| checked_mul(acc, b.flag_count()?))
}

/// `(|FStar(D)|, |Star(D)|)` for trees in which every branching prime is
/// a child of the root, computed from the counts of the h-local trees
/// formed by each branching prime's maximal ideals.
pub fn height2_counts(tree: &SpectrumTree, bounds: &Bounds) -> Result<(u128, u128)> {
    for x in 1..tree.len() {
        if !tree.is_leaf(x) && tree.parent(x) != Some(0) {
            return Err(Error::Precondition(format!(
                "branching prime `{}` is not a child of the root",
                tree.id(x)
            )));
        }
    }
    let mut fstar = 1u128;
    let mut star = 1u128;
    for p in tree.standard_decomposition() {
        let (f, s) = if tree.is_leaf(p) {
            (tree.omega(p) as u128, tree.epsilon(p).unwrap_or(1) as u128)
        } else {
            let leaves: Vec<(u64, u8)> = tree
                .children(p)
                .iter()
                .map(|&m| (tree.omega(m), tree.epsilon(m).unwrap_or(1)))
                .collect();
            let h = SpectrumTree::h_local(&leaves)?;
            let pi = count_semistar(&h, bounds)?;
            (
                checked_add(pi - 1, tree.omega(p) as u128)?,
                count_smstar(&h, bounds)?,
            )
        };
        fstar = checked_mul(fstar, f)?;
        star = checked_mul(star, s)?;
    }
    Ok((fstar, star))
}

/// The four cardinalities of a tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub semistar: u128,
    pub fstar: u128,
    pub smstar: u128,
    pub star: u128,
}

impl CountReport {
    pub fn compute(tree: &SpectrumTree, bounds: &Bounds) -> Result<Self> {
        Ok(CountReport {
            semistar: count_semistar(tree, bounds)?,
            fstar: count_fstar(tree, bounds)?,
            smstar: count_smstar(tree, bounds)?,
            star: count_star(tree, bounds)?,
        })
    }
}

/// Bit set of the given length with the listed members.
pub(crate) fn bitset(len: usize, members: impl IntoIterator<Item = usize>) -> FixedBitSet {
    let mut b = FixedBitSet::with_capacity(len);
    for x in members {
        b.insert(x);
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::RawTree;

    fn b() -> Bounds {
        Bounds::default()
    }

    fn y_tree(p: i64, w1: i64, e1: i64, w2: i64, e2: i64) -> SpectrumTree {
        RawTree::new()
            .node("0", None, 1, None)
            .node("P", Some("0"), p, None)
            .node("M1", Some("P"), w1, Some(e1))
            .node("M2", Some("P"), w2, Some(e2))
            .validate()
            .unwrap()
    }

    #[test]
    fn valuation_counts() {
        for w in 1..=4u64 {
            for e in 1..=2u8.min(w as u8) {
                let v = SpectrumTree::valuation(w, e).unwrap();
                let r = CountReport::compute(&v, &b()).unwrap();
                assert_eq!(r.semistar, w as u128 + 1);
                assert_eq!(r.fstar, w as u128);
                assert_eq!(r.smstar, e as u128);
                assert_eq!(r.star, e as u128);
            }
        }
    }

    #[test]
    fn field_counts() {
        let r = CountReport::compute(&SpectrumTree::field(), &b()).unwrap();
        assert_eq!((r.semistar, r.fstar, r.smstar, r.star), (1, 1, 1, 1));
    }

    #[test]
    fn two_leaf_h_local() {
        let t = SpectrumTree::h_local(&[(1, 1), (1, 1)]).unwrap();
        assert_eq!(count_semistar(&t, &b()).unwrap(), 7);
        // (1 + ε1 a)(1 + ε2 b) at a = 3, b = 2, ε = (2, 1)
        let t = SpectrumTree::h_local(&[(3, 2), (2, 1)]).unwrap();
        assert_eq!(count_smstar(&t, &b()).unwrap(), 7 * 3);
    }

    #[test]
    fn y_star_count() {
        let y = y_tree(1, 2, 2, 3, 1);
        assert_eq!(count_star(&y, &b()).unwrap(), 5 * 4);
        assert_eq!(count_smstar(&y, &b()).unwrap(), 20);
        assert_eq!(
            count_semistar(&y, &b()).unwrap(),
            count_fstar(&y, &b()).unwrap() + 1
        );
        let (f, s) = height2_counts(&y, &b()).unwrap();
        assert_eq!(f, count_fstar(&y, &b()).unwrap());
        assert_eq!(s, 20);
    }

    #[test]
    fn tildhom_examples() {
        // chain(2) with D at the bottom into chain(n) with ε flagged: εn - ε + 1
        let comp = Poset::chain(2);
        for n in 2..=5usize {
            for e in 1..=2usize {
                let f = FlaggedPoset::chain(n, e);
                let got = tildhom_count(&comp, Some(0), &f).unwrap();
                assert_eq!(got as usize, e * n - e + 1);
                assert_eq!(tildhom_count(&Poset::chain(1), Some(0), &f).unwrap() as usize, e);
            }
        }
        let full = FlaggedPoset::chain(4, 4);
        assert_eq!(
            tildhom_count(&comp, Some(0), &full).unwrap(),
            count_hom(&comp, full.poset()).unwrap()
        );
    }

    #[test]
    fn final_example_branch_size() {
        let t = RawTree::new()
            .node("0", None, 1, None)
            .node("P", Some("0"), 3, None)
            .node("M1", Some("P"), 1, Some(1))
            .node("M2", Some("P"), 1, Some(1))
            .validate()
            .unwrap();
        let f = fstar_poset(&t, &b()).unwrap();
        assert_eq!(f.size(), 6 + 3);
        assert_eq!(count_fstar(&t, &b()).unwrap(), 9);
    }

    #[test]
    fn product_poset_matches_counts() {
        let t = SpectrumTree::h_local(&[(3, 2), (2, 1), (2, 2)]).unwrap();
        let p = fstar_product_poset(&t, &b()).unwrap();
        assert_eq!(p.size() as u128, count_fstar(&t, &b()).unwrap());
        assert_eq!(p.flag_count() as u128, count_star(&t, &b()).unwrap());
    }

    #[test]
    fn height2_rejects_deep_trees() {
        let deep = RawTree::new()
            .node("0", None, 1, None)
            .node("P", Some("0"), 1, None)
            .node("Q", Some("P"), 1, None)
            .node("M1", Some("Q"), 1, Some(1))
            .node("M2", Some("Q"), 1, Some(1))
            .node("M3", Some("P"), 1, Some(1))
            .validate()
            .unwrap();
        assert!(height2_counts(&deep, &b()).is_err());
        assert!(count_star(&deep, &b()).is_ok());
    }
}
