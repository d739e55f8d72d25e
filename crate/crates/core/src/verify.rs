//! Predicates with deterministic witnesses: strong blocking sets and their
//! outer variant, outer minimality, avoidance, sublines, Hermitian
//! varieties, linear sets and saturation.

pub mod avoidance;
pub mod hermitian;
pub mod linear_set;
pub mod outer;
pub mod saturating;
pub mod sbs;
pub mod subline;

pub use avoidance::{avoidance_property, violates_avoidance, SubspaceCollection};
pub use hermitian::{hermitian_rank2_containment, HermitianScan, HermitianSpec};
pub use linear_set::{expand_vec, first_heavy_q_system, linear_set_avoidance, linear_set_weight, LinearSetSpec};
pub use outer::{
    code_is_outer_minimal, codeword_is_outer_minimal, engines_agree, is_outer_sbs, outer_ab, outer_minimal_engine,
    OuterEngine,
};
pub use saturating::{first_uncovered, is_saturating, replay_uncovered};
pub use sbs::{first_failing_hyperplane, hyperplane_rank, is_sbs};
pub use subline::{on_any_proper_subline, points_on_common_subline, SublineField};
