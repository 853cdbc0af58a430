use crate::fp::DEFAULT_MAX_COSETS;
use crate::group::DEFAULT_INTERSECTION_CAP;
use serde::{Deserialize, Serialize};

/// Resource limits shared by enumeration, coset actions and intersections.
/// Hitting any of them yields an inconclusive result, never a wrong one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Caps {
    pub max_cosets: usize,
    /// Largest index of a subgroup whose coset action is built.
    pub index: usize,
    /// Largest order of the smaller group in an intersection.
    pub intersection: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_cosets: DEFAULT_MAX_COSETS,
            index: 100_000,
            intersection: DEFAULT_INTERSECTION_CAP as u64,
        }
    }
}
