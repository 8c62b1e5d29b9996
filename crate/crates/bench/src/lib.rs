//! Benchmark fixtures shared by the criterion targets.

use neighborly::partitions::{neighborly_of_weight, NeighborlyPartition};

/// Every neighborly partition of weight `<= max_weight`, in enumeration order.
pub fn fixture_partitions(max_weight: u32) -> Vec<NeighborlyPartition> {
    (0..=max_weight).flat_map(neighborly_of_weight).collect()
}
