//! Intersection forms and the topological invariants built from them.

mod forms;
mod invariants;

pub use forms::{builtin_form, direct_sum, negate, parse_form_sum, IntersectionForm};
pub use invariants::{
    alpha_n, alpha_s1, beta, beta_welldefined_check, format_rational, ko_group,
    novikov_glue_signature, parse_rational, rohlin, w_cs, w_cs_matches_beta, w_invariant,
    w_mod2_equals_rohlin, w_welldefined_delta, AlphaData, AlphaS1, KOElement, KOGroup, KOValue,
    Mod2Rational,
};
