//! Finite posets stored as a full reachability relation.
//!
//! Elements are the indices `0..size`. Both the up-set and the down-set of
//! every element are kept as bit sets, so `leq` is a single bit lookup and
//! candidate filtering during map enumeration is a bitwise intersection.

mod hasse;
mod hom;
mod iso;

use fixedbitset::FixedBitSet;

use crate::bounds::Bounds;
use crate::error::{Error, Result};

pub use hasse::HasseDiagram;
pub use hom::{
    count_hom, count_hom_restricted, enum_hom, hom_polynomial, order_polynomial, OrderMap,
};
pub use iso::is_isomorphic;

#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
}

impl std::fmt::Debug for Poset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Poset")
            .field("size", &self.size())
            .field("covers", &self.covers())
            .finish()
    }
}

impl Poset {
    /// Builds a poset from an explicit `leq` predicate, checking that it is
    /// reflexive, antisymmetric and transitive.
    pub fn from_fn(size: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let mut up = vec![FixedBitSet::with_capacity(size); size];
        for (x, row) in up.iter_mut().enumerate() {
            for y in 0..size {
                if leq(x, y) {
                    row.insert(y);
                }
            }
        }
        Self::from_up_sets(up)
    }

    /// Builds the poset generated by `lo < hi` relations (reflexive-transitive
    /// closure). Cycles are rejected.
    pub fn from_relations(size: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut up = vec![FixedBitSet::with_capacity(size); size];
        for (x, row) in up.iter_mut().enumerate() {
            row.insert(x);
        }
        for &(lo, hi) in pairs {
            if lo >= size || hi >= size {
                return Err(Error::NotAPartialOrder(format!(
                    "pair ({lo}, {hi}) out of range for {size} elements"
                )));
            }
            up[lo].insert(hi);
        }
        // Warshall on bit rows.
        for k in 0..size {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        Self::from_up_sets(up)
    }

    /// Skips the axiom checks; the caller guarantees `up` is a partial order.
    pub(crate) fn from_up_sets_unchecked(up: Vec<FixedBitSet>) -> Self {
        let size = up.len();
        let mut down = vec![FixedBitSet::with_capacity(size); size];
        for (x, row) in up.iter().enumerate() {
            for y in row.ones() {
                down[y].insert(x);
            }
        }
        Poset { up, down }
    }

    fn from_up_sets(up: Vec<FixedBitSet>) -> Result<Self> {
        let size = up.len();
        let mut down = vec![FixedBitSet::with_capacity(size); size];
        for (x, row) in up.iter().enumerate() {
            if !row.contains(x) {
                return Err(Error::NotAPartialOrder(format!("{x} <= {x} fails")));
            }
            for y in row.ones() {
                down[y].insert(x);
            }
        }
        for (x, row) in up.iter().enumerate() {
            for y in row.ones() {
                if y != x && up[y].contains(x) {
                    return Err(Error::NotAPartialOrder(format!(
                        "{x} and {y} are mutually below each other"
                    )));
                }
                if !up[y].is_subset(row) {
                    return Err(Error::NotAPartialOrder(format!(
                        "relation is not transitive through {x} <= {y}"
                    )));
                }
            }
        }
        Ok(Poset { up, down })
    }

    pub fn empty() -> Self {
        Poset {
            up: Vec::new(),
            down: Vec::new(),
        }
    }

    /// The chain `0 < 1 < … < n-1`.
    pub fn chain(n: usize) -> Self {
        let mut up = Vec::with_capacity(n);
        let mut down = Vec::with_capacity(n);
        for x in 0..n {
            let mut u = FixedBitSet::with_capacity(n);
            u.insert_range(x..n);
            let mut d = FixedBitSet::with_capacity(n);
            d.insert_range(0..x + 1);
            up.push(u);
            down.push(d);
        }
        Poset { up, down }
    }

    pub fn antichain(n: usize) -> Self {
        let mut up = Vec::with_capacity(n);
        for x in 0..n {
            let mut u = FixedBitSet::with_capacity(n);
            u.insert(x);
            up.push(u);
        }
        Poset {
            down: up.clone(),
            up,
        }
    }

    /// Disjoint union with every element of `self` below every element of
    /// `other`; the elements of `other` are shifted by `self.size()`.
    pub fn ordinal_sum(&self, other: &Poset) -> Poset {
        let (p, q) = (self.size(), other.size());
        let n = p + q;
        let mut up = Vec::with_capacity(n);
        let mut down = Vec::with_capacity(n);
        for x in 0..p {
            let mut u = FixedBitSet::with_capacity(n);
            u.extend(self.up[x].ones());
            u.insert_range(p..n);
            let mut d = FixedBitSet::with_capacity(n);
            d.extend(self.down[x].ones());
            up.push(u);
            down.push(d);
        }
        for y in 0..q {
            let mut u = FixedBitSet::with_capacity(n);
            u.extend(other.up[y].ones().map(|z| z + p));
            let mut d = FixedBitSet::with_capacity(n);
            d.insert_range(0..p);
            d.extend(other.down[y].ones().map(|z| z + p));
            up.push(u);
            down.push(d);
        }
        Poset { up, down }
    }

    /// Componentwise order on the Cartesian product. The pair `(x, y)` has
    /// index `x * other.size() + y`.
    pub fn product(&self, other: &Poset) -> Poset {
        let q = other.size();
        let n = self.size() * q;
        let mut up = Vec::with_capacity(n);
        let mut down = Vec::with_capacity(n);
        for x in 0..self.size() {
            for y in 0..q {
                let mut u = FixedBitSet::with_capacity(n);
                for x2 in self.up[x].ones() {
                    u.extend(other.up[y].ones().map(|y2| x2 * q + y2));
                }
                let mut d = FixedBitSet::with_capacity(n);
                for x2 in self.down[x].ones() {
                    d.extend(other.down[y].ones().map(|y2| x2 * q + y2));
                }
                up.push(u);
                down.push(d);
            }
        }
        Poset { up, down }
    }

    /// The order dual.
    pub fn dual(&self) -> Poset {
        Poset {
            up: self.down.clone(),
            down: self.up.clone(),
        }
    }

    /// The sub-poset induced on `elements`, re-indexed in the given order.
    pub fn induced(&self, elements: &[usize]) -> Poset {
        let n = elements.len();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (i, &x) in elements.iter().enumerate() {
            for (j, &y) in elements.iter().enumerate() {
                if self.leq(x, y) {
                    up[i].insert(j);
                    down[j].insert(i);
                }
            }
        }
        Poset { up, down }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.up.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// `{y | x <= y}`
    pub fn up_set(&self, x: usize) -> &FixedBitSet {
        &self.up[x]
    }

    /// `{y | y <= x}`
    pub fn down_set(&self, x: usize) -> &FixedBitSet {
        &self.down[x]
    }

    pub fn is_chain(&self) -> bool {
        (0..self.size()).all(|x| self.up[x].count_ones(..) + self.down[x].count_ones(..) == self.size() + 1)
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.size())
            .filter(|&x| self.down[x].count_ones(..) == 1)
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.size())
            .filter(|&x| self.up[x].count_ones(..) == 1)
            .collect()
    }

    pub fn minimum(&self) -> Option<usize> {
        (0..self.size()).find(|&x| self.up[x].count_ones(..) == self.size())
    }

    pub fn maximum(&self) -> Option<usize> {
        (0..self.size()).find(|&x| self.down[x].count_ones(..) == self.size())
    }

    /// Number of pairs `x <= y`, equal pairs included.
    pub fn comparable_pairs(&self) -> usize {
        self.up.iter().map(|row| row.count_ones(..)).sum()
    }

    /// Covering pairs `(lo, hi)`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.size();
        let mut out = Vec::new();
        for x in 0..n {
            let mut strict = self.up[x].clone();
            strict.set(x, false);
            let mut reachable = FixedBitSet::with_capacity(n);
            for y in strict.ones() {
                let mut s = self.up[y].clone();
                s.set(y, false);
                reachable.union_with(&s);
            }
            strict.difference_with(&reachable);
            out.extend(strict.ones().map(|y| (x, y)));
        }
        out
    }

    /// A linear extension, choosing the smallest available index first.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.size();
        let mut remaining: Vec<usize> = (0..n).map(|x| self.down[x].count_ones(..) - 1).collect();
        let mut placed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        while order.len() < n {
            let x = (0..n)
                .find(|&x| !placed[x] && remaining[x] == 0)
                .expect("a partial order always has a minimal unplaced element");
            placed[x] = true;
            order.push(x);
            for y in self.up[x].ones() {
                if y != x {
                    remaining[y] -= 1;
                }
            }
        }
        order
    }

    /// Whether `set` is closed downwards.
    pub fn is_down_set(&self, set: &FixedBitSet) -> bool {
        set.ones().all(|x| self.down[x].is_subset(set))
    }

    /// All down-sets, as sorted element lists, in a fixed deterministic order
    /// (the empty set first, the whole poset last).
    pub fn down_sets(&self, bounds: &Bounds) -> Result<Vec<Vec<usize>>> {
        Ok(self
            .down_set_masks(bounds)?
            .into_iter()
            .map(|mask| (0..self.size()).filter(|&x| mask >> x & 1 == 1).collect())
            .collect())
    }

    /// Down-sets as bit masks over element indices.
    pub(crate) fn down_set_masks(&self, bounds: &Bounds) -> Result<Vec<u64>> {
        let n = self.size();
        if n > bounds.max_source || n > 64 {
            return Err(Error::limit(
                format!("down-sets of a {n}-element poset"),
                bounds.max_source.min(64) as u64,
            ));
        }
        let below: Vec<u64> = (0..n)
            .map(|x| self.down[x].ones().filter(|&y| y != x).fold(0u64, |m, y| m | 1 << y))
            .collect();
        let order = self.linear_extension();
        let mut out = Vec::new();
        let mut stack = vec![(0usize, 0u64)];
        // Depth-first over the linear extension: excluding before including
        // keeps the output ordered from the empty set upwards.
        while let Some((i, mask)) = stack.pop() {
            if i == n {
                out.push(mask);
                if out.len() as u64 > bounds.max_maps {
                    return Err(Error::limit("down-set enumeration", bounds.max_maps));
                }
                continue;
            }
            let x = order[i];
            if below[x] & !mask == 0 {
                stack.push((i + 1, mask | 1 << x));
            }
            stack.push((i + 1, mask));
        }
        Ok(out)
    }

    pub fn hasse(&self) -> HasseDiagram {
        HasseDiagram::new(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> Poset {
        Poset::chain(2).product(&Poset::chain(2))
    }

    #[test]
    fn chain_shapes() {
        assert_eq!(Poset::chain(1).size(), 1);
        assert!(Poset::chain(0).is_empty());
        let c5 = Poset::chain(5);
        assert_eq!(c5.minimal_elements(), vec![0]);
        assert_eq!(c5.maximal_elements(), vec![4]);
        assert!(c5.is_chain());
        let b = Bounds::default();
        assert_eq!(Poset::chain(3).down_sets(&b).unwrap().len(), 4);
    }

    #[test]
    fn down_set_counts() {
        let b = Bounds::default();
        for n in 0..7 {
            assert_eq!(Poset::chain(n).down_sets(&b).unwrap().len(), n + 1);
            assert_eq!(Poset::antichain(n).down_sets(&b).unwrap().len(), 1 << n);
        }
        // {}, {00}, {00,01}, {00,10}, {00,01,10}, all
        let ds = diamond().down_sets(&b).unwrap();
        assert_eq!(ds.len(), 6);
        assert_eq!(ds.first().unwrap(), &Vec::<usize>::new());
        assert_eq!(ds.last().unwrap(), &vec![0, 1, 2, 3]);
    }

    #[test]
    fn down_set_bound_is_an_error() {
        let b = Bounds {
            max_source: 4,
            ..Bounds::default()
        };
        assert!(matches!(
            Poset::antichain(5).down_sets(&b),
            Err(Error::EnumerationLimit { .. })
        ));
    }

    #[test]
    fn rejects_non_orders() {
        assert!(Poset::from_relations(2, &[(0, 1), (1, 0)]).is_err());
        assert!(Poset::from_fn(3, |x, y| x == y || (x, y) == (0, 1) || (x, y) == (1, 2)).is_err());
        assert!(Poset::from_fn(2, |x, y| x < y).is_err());
        assert!(Poset::from_relations(3, &[(0, 1), (1, 2)]).unwrap().is_chain());
    }

    #[test]
    fn ordinal_sum_and_product_shapes() {
        let s = Poset::antichain(2).ordinal_sum(&Poset::chain(1));
        assert_eq!(s.maximum(), Some(2));
        assert_eq!(s.minimal_elements(), vec![0, 1]);
        let d = diamond();
        assert_eq!(d.minimum(), Some(0));
        assert_eq!(d.maximum(), Some(3));
        assert_eq!(d.covers(), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert!(!d.comparable(1, 2));
    }

    #[test]
    fn linear_extension_respects_order() {
        let p = Poset::from_relations(4, &[(3, 0), (2, 1), (3, 1)]).unwrap();
        let ext = p.linear_extension();
        let pos: Vec<usize> = (0..4).map(|x| ext.iter().position(|&y| y == x).unwrap()).collect();
        for x in 0..4 {
            for y in 0..4 {
                if p.lt(x, y) {
                    assert!(pos[x] < pos[y]);
                }
            }
        }
    }
}
