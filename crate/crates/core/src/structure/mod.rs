//! Superpotentials, diagonal graded maps, the noetherian/domain property report
//! and the ascending chain that appears when some `beta_i` vanishes.

mod chain;
mod nakayama;
mod properties;
mod superpotential;

pub use chain::{cycle_u, noetherian_chain_check, x_path, ChainReport, ChainStep};
pub use nakayama::{candidate_mu, check_diagonal_map, lagged_mu, DiagonalMapSpec, MapCheckReport, RelationImage};
pub use properties::{property_report, pwd_probe_h, HPwdReport, PropertyReport, ZeroBetaWitness};
pub use superpotential::{
    build_superpotential, check_derivation_quotient, check_twist_invariance, cyclic_derivative, twist, CompactTerm,
    DerivationReport, Superpotential, TwistReport, TwistWeights, WeightScheme,
};
