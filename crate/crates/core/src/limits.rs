use serde::{Deserialize, Serialize};

/// Hard guardrails for the combinatorial searches. Exceeding any of them is
/// reported as [`crate::Error::CapacityExceeded`], never silently truncated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Maximum number of elements of a term-function algebra (free or finitely presented).
    pub free_elements: usize,
    /// Largest carrier whose subsets may be enumerated.
    pub subset_carrier: usize,
    /// Largest carrier a direct product may have.
    pub product_size: usize,
    /// Maximum number of assignments examined by an exhaustive quasi-identity check.
    pub assignments: u64,
    /// Maximum number of table entries when a term-function algebra is materialized.
    pub table_entries: usize,
    /// Maximum number of operation applications while closing a term-function algebra.
    pub closure_steps: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            free_elements: 200_000,
            subset_carrier: 12,
            product_size: 1 << 20,
            assignments: 50_000_000,
            table_entries: 1 << 24,
            closure_steps: 1 << 30,
        }
    }
}

impl Limits {
    pub fn with_free_elements(mut self, cap: usize) -> Self {
        self.free_elements = cap;
        self
    }
}

/// `base^exp`, or `None` on overflow.
pub(crate) fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}
