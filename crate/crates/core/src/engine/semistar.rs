use fixedbitset::FixedBitSet;

use super::{bitset, Branch, FlaggedPoset};
use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::poset::{enum_hom, OrderMap, Poset};
use crate::spectrum::{enumerate_supports, SpectrumTree, Support};

const NONE: u32 = u32::MAX;

/// The map attached to one nonempty component `Δ(T)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentMap {
    pub branch: usize,
    /// Members of `Δ(T)` as branch-set masks, ascending; `map` is indexed
    /// by position in this list.
    pub component: Vec<u32>,
    pub map: OrderMap,
}

/// A semistar operation: a support and its component maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemistarElement {
    pub support: Support,
    pub maps: Vec<ComponentMap>,
}

impl SemistarElement {
    /// `φ_T(s)` as an element of `FStar(T)`, if `s ∈ Δ(T)`.
    pub fn image(&self, branch: usize, s: u32) -> Option<usize> {
        let cm = self.maps.iter().find(|c| c.branch == branch)?;
        let pos = cm.component.iter().position(|&x| x == s)?;
        Some(cm.map.image(pos))
    }
}

struct Block {
    support: Support,
    /// `(branch, component, maps)` per nonempty component.
    comps: Vec<(usize, Vec<u32>, Vec<OrderMap>)>,
    offset: usize,
    len: usize,
}

/// All semistar operations of a tree, grouped by support in increasing
/// family-mask order; within a support, ordered lexicographically by map
/// images. Element 0 is the operation with support `{K}`, the maximum.
///
/// The order relation is evaluated on demand; [`materialize`] builds it
/// explicitly for small posets.
///
/// [`materialize`]: SemistarPoset::materialize
pub struct SemistarPoset {
    m: usize,
    branches: Vec<FlaggedPoset>,
    blocks: Vec<Block>,
    len: usize,
}

/// The semistar operations of `tree`.
pub fn semistar_poset(tree: &SpectrumTree, bounds: &Bounds) -> Result<SemistarPoset> {
    let m = tree.branch_count();
    let supports = enumerate_supports(m, bounds)?;
    let branches: Vec<FlaggedPoset> = Branch::all(tree, bounds)
        .iter()
        .map(|b| b.poset().cloned())
        .collect::<Result<_>>()?;

    let mut blocks = Vec::with_capacity(supports.len());
    let mut offset = 0usize;
    for support in supports {
        let mut comps = Vec::new();
        let mut len = 1usize;
        for (t, f) in branches.iter().enumerate() {
            let comp = support.component(t);
            if comp.is_empty() {
                continue;
            }
            let homs = enum_hom(&support.component_poset(t), f.poset(), bounds)?;
            len = len
                .checked_mul(homs.len())
                .filter(|&l| (l as u64) <= bounds.max_maps)
                .ok_or_else(|| Error::limit("semistar operations", bounds.max_maps))?;
            comps.push((t, comp, homs));
        }
        blocks.push(Block {
            support,
            comps,
            offset,
            len,
        });
        offset += len;
        if offset as u64 > bounds.max_maps {
            return Err(Error::limit("semistar operations", bounds.max_maps));
        }
    }
    Ok(SemistarPoset {
        m,
        branches,
        blocks,
        len: offset,
    })
}

impl SemistarPoset {
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn branch_count(&self) -> usize {
        self.m
    }

    /// `FStar(T)` for each branch, in standard-decomposition order.
    pub fn branch_posets(&self) -> &[FlaggedPoset] {
        &self.branches
    }

    /// Distinct supports, in element order.
    pub fn supports(&self) -> Vec<Support> {
        self.blocks.iter().map(|b| b.support).collect()
    }

    /// Index range of the elements with a given support.
    pub fn support_range(&self, support: &Support) -> Option<std::ops::Range<usize>> {
        self.blocks
            .iter()
            .find(|b| b.support == *support)
            .map(|b| b.offset..b.offset + b.len)
    }

    fn locate(&self, i: usize) -> (&Block, Vec<usize>) {
        assert!(i < self.len, "element {i} out of range");
        let bi = self.blocks.partition_point(|b| b.offset + b.len <= i);
        let block = &self.blocks[bi];
        let mut rest = i - block.offset;
        let mut digits = vec![0; block.comps.len()];
        for (k, (_, _, homs)) in block.comps.iter().enumerate().rev() {
            digits[k] = rest % homs.len();
            rest /= homs.len();
        }
        (block, digits)
    }

    pub fn support_of(&self, i: usize) -> Support {
        self.locate(i).0.support
    }

    pub fn element(&self, i: usize) -> SemistarElement {
        let (block, digits) = self.locate(i);
        SemistarElement {
            support: block.support,
            maps: block
                .comps
                .iter()
                .zip(digits)
                .map(|((t, comp, homs), d)| ComponentMap {
                    branch: *t,
                    component: comp.clone(),
                    map: homs[d].clone(),
                })
                .collect(),
        }
    }

    /// Images as a flat table: entry `t·2^m + s` is `φ_T(s)` or `NONE`.
    fn images(&self, i: usize) -> Vec<u32> {
        let n = 1usize << self.m;
        let mut img = vec![NONE; self.m * n];
        let (block, digits) = self.locate(i);
        for ((t, comp, homs), d) in block.comps.iter().zip(digits) {
            for (pos, &s) in comp.iter().enumerate() {
                img[t * n + s as usize] = homs[d].image(pos) as u32;
            }
        }
        img
    }

    fn flagged_images(&self, support: &Support, img: &[u32]) -> bool {
        if !support.contains_full() {
            return false;
        }
        let n = 1usize << self.m;
        let full = n - 1;
        self.branches
            .iter()
            .enumerate()
            .all(|(t, f)| f.is_flagged(img[t * n + full] as usize))
    }

    /// Whether element `i` closes the ring: its support contains `D` and
    /// every `φ_T(D)` is a star operation.
    pub fn is_flagged(&self, i: usize) -> bool {
        let support = self.support_of(i);
        support.contains_full() && self.flagged_images(&support, &self.images(i))
    }

    pub fn flag_count(&self) -> usize {
        let mut count = 0;
        for block in &self.blocks {
            if !block.support.contains_full() {
                continue;
            }
            // images of D are independent across components, so count per
            // component and multiply
            let full = (1u32 << self.m) - 1;
            let mut prod = 1usize;
            for (t, comp, homs) in &block.comps {
                let d = comp.iter().position(|&s| s == full).expect("D in every component");
                prod *= homs
                    .iter()
                    .filter(|h| self.branches[*t].is_flagged(h.image(d)))
                    .count();
            }
            count += prod;
        }
        count
    }

    fn leq_images(&self, s1: &Support, img1: &[u32], s2: &Support, img2: &[u32]) -> bool {
        if !s1.includes(s2) {
            return false;
        }
        let n = 1usize << self.m;
        for (t, f) in self.branches.iter().enumerate() {
            for s in 0..n {
                let b = img2[t * n + s];
                if b != NONE && !f.poset().leq(img1[t * n + s] as usize, b as usize) {
                    return false;
                }
            }
        }
        true
    }

    /// `i ≤ j`: the support of `i` contains that of `j`, and the maps of
    /// `i` lie below those of `j` wherever `j` is defined.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq_images(
            &self.support_of(i),
            &self.images(i),
            &self.support_of(j),
            &self.images(j),
        )
    }

    /// The explicit flagged poset; fails beyond `bounds.max_poset` elements.
    pub fn materialize(&self, bounds: &Bounds) -> Result<FlaggedPoset> {
        if self.len > bounds.max_poset {
            return Err(Error::limit("materialized poset elements", bounds.max_poset as u64));
        }
        let data: Vec<(Support, Vec<u32>)> = (0..self.len)
            .map(|i| (self.support_of(i), self.images(i)))
            .collect();
        let mut up = vec![FixedBitSet::with_capacity(self.len); self.len];
        for (i, (s1, img1)) in data.iter().enumerate() {
            for (j, (s2, img2)) in data.iter().enumerate() {
                if self.leq_images(s1, img1, s2, img2) {
                    up[i].insert(j);
                }
            }
        }
        let flags = bitset(
            self.len,
            data.iter()
                .enumerate()
                .filter(|(_, (s, img))| self.flagged_images(s, img))
                .map(|(i, _)| i),
        );
        Ok(FlaggedPoset::new_unchecked(
            Poset::from_up_sets_unchecked(up),
            flags,
        ))
    }

    /// Human-readable label of an element: its support followed by the
    /// images of each component.
    pub fn label(&self, i: usize) -> String {
        let e = self.element(i);
        let maps: Vec<String> = e
            .maps
            .iter()
            .map(|c| format!("T{}:{:?}", c.branch, c.map.images()))
            .collect();
        if maps.is_empty() {
            e.support.describe()
        } else {
            format!("{} {}", e.support.describe(), maps.join(" "))
        }
    }
}
