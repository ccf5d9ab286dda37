//! Exact characters of wreath products `G ≀ S_N`, the mod-p "mashing"
//! congruence between their columns, and censuses of the proportion of
//! table entries divisible by a prime.
//!
//! `G` enters only through its class data and integer character table
//! ([`base_group::GroupData`]). Classes and irreducibles of `G ≀ S_N` are
//! both labelled by k-multipartitions of `N` ([`partitions`]).

pub mod base_group;
pub mod congruence;
pub mod error;
pub mod partitions;
pub mod stats;
pub mod weyl_d;
pub mod wreath_chars;

pub use base_group::GroupData;
pub use error::{Error, Result};
pub use partitions::{MultiPartition, Partition};
pub use wreath_chars::{CharTable, CharacterEngine};

/// Crate version, embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
