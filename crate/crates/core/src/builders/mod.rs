//! Constructors for verified Hopf algebras.

pub mod examples;
pub mod group;
pub mod pbw;
pub mod smash;

pub use examples::{
    cyclic_group, divided_line, example_a, example_a_parameters, example_a_presentation, example_b,
    example_b_presentation, height_two_line, heisenberg, smash_demo, smash_trivial, truncated_line, witt_line,
};
pub use group::{group_algebra, GroupTable};
pub use pbw::{
    pbw_algebra_map, presentation_hopf, presentation_hopf_unchecked, restricted_enveloping, LinearForm, Presentation,
    RestrictedLieData, TailTerm, Term, MAX_PBW_DIM,
};
pub use smash::{random_smash_instance, smash_product, SmashInstance};
