//! Neighborly partitions, spanning-forest signatures of their graphs, and
//! exact truncated q-series for checking enumeration against closed forms.
//!
//! All arithmetic is exact. Series carry an explicit truncation order and
//! panic on `i64` overflow rather than wrap.

pub mod error;
pub mod harness;
pub mod identities;
pub mod partitions;
pub mod qseries;
pub mod signatures;

pub use error::{Error, Result};
pub use harness::{CheckKind, Report, RunConfig, RunParams, Status};
pub use identities::OddSignConvention;
pub use partitions::{NeighborlyPartition, Partition, Run};
pub use qseries::{BivariateSeries, Series};
pub use signatures::{DeletionRule, PartitionGraph};
