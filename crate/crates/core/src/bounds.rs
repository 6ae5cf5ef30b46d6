/// Limits on every exhaustive enumeration in the crate.
///
/// Exceeding a limit is always reported as [`Error::EnumerationLimit`];
/// nothing is ever silently truncated.
///
/// [`Error::EnumerationLimit`]: crate::Error::EnumerationLimit
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    /// Largest source poset accepted by down-set and map enumeration.
    pub max_source: usize,
    /// Largest number of maps (or poset elements) produced by one enumeration.
    pub max_maps: u64,
    /// Largest number of branches in a standard decomposition.
    pub max_branches: usize,
    /// Largest poset whose full order relation is materialized.
    pub max_poset: usize,
}

/// Branch count beyond which a support no longer fits a 64-bit family mask.
pub const HARD_MAX_BRANCHES: usize = 6;

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_source: 20,
            max_maps: 10_000_000,
            max_branches: 4,
            max_poset: 8192,
        }
    }
}

impl Bounds {
    pub fn with_max_maps(mut self, max_maps: u64) -> Self {
        self.max_maps = max_maps;
        self
    }

    pub fn with_max_branches(mut self, max_branches: usize) -> Self {
        self.max_branches = max_branches;
        self
    }
}
