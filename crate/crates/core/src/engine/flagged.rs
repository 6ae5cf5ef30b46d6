use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poset::{HasseDiagram, Poset};

/// A poset with a marked down-set: the operations that close the ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlaggedPoset {
    poset: Poset,
    flags: FixedBitSet,
}

#[derive(Serialize)]
struct FlaggedJson<'a> {
    size: usize,
    covers: &'a [[usize; 2]],
    flagged: Vec<usize>,
}

impl FlaggedPoset {
    /// Checks that the flags form a down-set containing the minimum.
    pub fn new(poset: Poset, flags: FixedBitSet) -> Result<Self> {
        let mut flags = flags;
        flags.grow(poset.size());
        if flags.len() > poset.size() && flags.ones().any(|x| x >= poset.size()) {
            return Err(Error::Precondition("flag outside the poset".into()));
        }
        if !poset.is_down_set(&flags) {
            return Err(Error::Precondition("flags are not a down-set".into()));
        }
        if let Some(min) = poset.minimum() {
            if !flags.contains(min) {
                return Err(Error::Precondition("the minimum must be flagged".into()));
            }
        }
        Ok(FlaggedPoset { poset, flags })
    }

    pub(crate) fn new_unchecked(poset: Poset, flags: FixedBitSet) -> Self {
        FlaggedPoset { poset, flags }
    }

    /// `chain(n)` with its bottom `flagged` elements marked.
    pub fn chain(n: usize, flagged: usize) -> Self {
        let mut flags = FixedBitSet::with_capacity(n);
        flags.insert_range(0..flagged.min(n));
        FlaggedPoset {
            poset: Poset::chain(n),
            flags,
        }
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn flags(&self) -> &FixedBitSet {
        &self.flags
    }

    pub fn size(&self) -> usize {
        self.poset.size()
    }

    pub fn is_flagged(&self, x: usize) -> bool {
        self.flags.contains(x)
    }

    pub fn flag_count(&self) -> usize {
        self.flags.count_ones(..)
    }

    pub fn flagged(&self) -> Vec<usize> {
        self.flags.ones().collect()
    }

    /// Removes the maximum, which must exist and be unflagged.
    pub fn without_maximum(&self) -> Result<FlaggedPoset> {
        let top = self
            .poset
            .maximum()
            .ok_or_else(|| Error::Precondition("poset has no maximum".into()))?;
        if self.flags.contains(top) && self.size() > 1 {
            return Err(Error::Precondition("the maximum is flagged".into()));
        }
        let keep: Vec<usize> = (0..self.size()).filter(|&x| x != top).collect();
        let poset = self.poset.induced(&keep);
        let mut flags = FixedBitSet::with_capacity(keep.len());
        for (i, &x) in keep.iter().enumerate() {
            flags.set(i, self.flags.contains(x));
        }
        Ok(FlaggedPoset { poset, flags })
    }

    /// `self ⊕ chain(n)`; the flags stay on `self`.
    pub fn below_chain(&self, n: usize) -> FlaggedPoset {
        let poset = self.poset.ordinal_sum(&Poset::chain(n));
        let mut flags = self.flags.clone();
        flags.grow(poset.size());
        FlaggedPoset { poset, flags }
    }

    /// Product order, flagged where both coordinates are.
    pub fn product(&self, other: &FlaggedPoset) -> FlaggedPoset {
        let poset = self.poset.product(&other.poset);
        let q = other.size();
        let mut flags = FixedBitSet::with_capacity(poset.size());
        for x in self.flags.ones() {
            for y in other.flags.ones() {
                flags.insert(x * q + y);
            }
        }
        FlaggedPoset { poset, flags }
    }

    pub fn hasse(&self) -> HasseDiagram {
        self.poset.hasse()
    }

    /// Hasse diagram as DOT, flagged nodes filled.
    pub fn to_dot(&self) -> String {
        self.to_dot_with(|i| i.to_string())
    }

    pub fn to_dot_with(&self, label: impl Fn(usize) -> String) -> String {
        self.hasse().to_dot_with(label, |i| self.is_flagged(i))
    }

    /// `{"size", "covers", "flagged"}`.
    pub fn to_json(&self) -> String {
        let h = self.hasse();
        serde_json::to_string(&FlaggedJson {
            size: h.size,
            covers: &h.covers,
            flagged: self.flagged(),
        })
        .expect("plain data serializes")
    }
}
