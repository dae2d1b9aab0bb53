//! Multigraded free complexes, Čech complexes, their degree strands, and the
//! chamber decompositions on which strands are constant.

mod cech;
mod chamber;
mod graded;
mod strand;
mod taylor;

pub use cech::{cech_strand, CechComplexSpec};
pub use chamber::{Chamber, ChamberDecomposition, Interval, ThresholdSet};
pub use graded::{Direction, GradedChainMap, GradedFreeComplex, MonomialEntry, MonomialMatrix};
pub use strand::Strand;
pub use taylor::{comparison_chain_map, dual_complex, frobenius_functor, taylor_complex, MAX_TAYLOR_GENERATORS};
