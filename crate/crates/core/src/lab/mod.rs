//! Executable verdicts for the injectivity, vanishing and duality statements on
//! concrete monomial ideals, and the power-map action on local cohomology.

mod action;
mod checks;
mod power;
mod purity;
mod verdict;

pub use action::{phi_action, ActionOnTable, Nilpotency};
pub use checks::{
    all_guaranteed_hold, check_depth_injectivity, check_ext_tor, check_injectivity_chain, check_obstruction,
    check_phi_ext_iso, check_vanishing_criterion, check_vanishing_equivalence,
};
pub use power::PowerEndomorphism;
pub use purity::{check_purity_splitting, check_rspan_surjectivity, default_window};
pub use verdict::{Claim, Outcome, Verdict};
