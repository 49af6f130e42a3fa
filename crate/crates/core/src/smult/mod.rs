//! The double categories SMult, Span and Sq(Set) on finite sets.
//!
//! Loose morphisms compose by pullback, realised as literal sets of pairs
//! `(x,y)`. Composition with an identity is therefore not strictly unital;
//! [`left_unitor`] and [`right_unitor`] supply the comparison cells.

mod cells;
mod comparison;
mod raw;
mod set;
mod smf;

pub use cells::{
    associator, left_unitor, loose_compose_cells, right_unitor, tight_compose_cells, SmultCell, SpanCell, SqCell,
};
pub use comparison::{
    counit_component, embed_coreflective, embed_coreflective_cell, embed_reflective, embed_reflective_cell,
    k_star, k_star_cell, k_star_compositor, reflective_unit_component, sigma_component, sigma_naturality, u1,
    u1_cell, u2, u2_cell,
};
pub use raw::{validate_raw_smf, RawCell, RawSmf, SmfRef};
pub use set::{FinFunction, FinSet};
pub use smf::{compose_smf, identity_smf, validate_smf, Smf, SmfFlags, SpanMor};
