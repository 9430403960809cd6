use serde::{Deserialize, Serialize};

use crate::counting::DEFAULT_MAX_ENUMERATION;
use crate::group::DEFAULT_MAX_GROUP_ORDER;
use crate::lattice::DEFAULT_MAX_SUBGROUPS;

/// Resource caps applied while building groups, lattices and enumerations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub max_group_order: usize,
    pub max_subgroups: usize,
    pub max_enumeration: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_group_order: DEFAULT_MAX_GROUP_ORDER,
            max_subgroups: DEFAULT_MAX_SUBGROUPS,
            max_enumeration: DEFAULT_MAX_ENUMERATION,
        }
    }
}
