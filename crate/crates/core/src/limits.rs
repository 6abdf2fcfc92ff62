use crate::error::{Error, Result};

/// Upper bound on the number of live items (intervals, prefixes, atoms) an
/// exponential construction may hold at once.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_items: usize,
}

impl Limits {
    pub const DEFAULT_MAX_ITEMS: usize = 1 << 24;

    pub fn new(max_items: usize) -> Self {
        Limits { max_items }
    }

    pub(crate) fn check(&self, what: &'static str, needed: usize) -> Result<()> {
        if needed > self.max_items {
            Err(Error::Resource {
                what,
                needed: needed as u128,
                limit: self.max_items as u128,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits::new(Self::DEFAULT_MAX_ITEMS)
    }
}
