//! Brute-force enumeration of set partitions, enriched maps, rooted trees and
//! crowns, together with the weight sums used as oracles for series
//! identities.

mod coefficients;
mod crowns;
mod maps;
mod partitions;

pub use coefficients::{
    crown_assembly_sum, crown_weight, det_coefficient_via_crowns, exp_coefficient_via_maps,
    forest_coefficient, tree_coefficient,
};
pub use crowns::enumerate_crowns;
pub use maps::{enumerate_enriched_maps, enumerate_rooted_trees, EnrichedMap, StructureClass};
pub use partitions::{bell, partitions_of, set_partitions};

use crate::error::{Error, Result};

/// Default bound on `|V| + |S|` for enumeration requests.
pub const DEFAULT_LABEL_CAP: usize = 9;

pub fn check_label_cap(labels: usize, cap: usize) -> Result<()> {
    if labels > cap {
        return Err(Error::CapExceeded { labels, cap });
    }
    Ok(())
}
