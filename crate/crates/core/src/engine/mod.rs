//! Multigraded dimension tables of Ext, local cohomology and Tor, the maps
//! between them, and the independent oracles used to cross-check them.

mod ext;
mod hochster;
mod local;
mod table;
mod tor;

pub use ext::{
    depth, ext_chain_map, ext_comparison, ext_map_profile, ext_mixed_tables, ext_table, ext_tables, ha_stabilization,
    scale_forward, ExtMapProfile, RankProfile, Stabilization, StabilizationConfig,
};
pub use hochster::{hochster_dim, hochster_table, hochster_tables};
pub use local::{ha_table, ha_tables, hm_quotient_profile, hm_table, hm_tables, local_duality_mismatch};
pub(crate) use table::tabulate;
pub use table::{describe_chamber, CohomologyTable, GradedModuleMap, TableKind};
pub use tor::{tor_table, tor_tables};
