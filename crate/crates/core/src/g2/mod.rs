//! Rank-seven rigid local systems with monodromy in `G₂`.

pub mod classify;
pub mod construction;
pub mod rational;
pub mod table;

pub use classify::{classify_profiles, classify_rigid_g2, ClassificationReport, Rule};
pub use construction::{
    case_row, check_conditions, construct_h, infinity_case, invert_construction, weyl_orbit,
    ConstructionRecipe, InfinityCase, InversionOutcome, InversionReport,
};
pub use rational::{
    characters_up_to, enumerate_rational_pairs, trace_rational_at_infinity, RationalPair,
};
pub use table::{concrete_classes, recognize, template, G2ClassInfo, Template, TABLE};
