//! Delta lenses, their diagrammatic and retrofunctor presentations, and the
//! constructions relating them.

mod delta;
mod diagram;
mod factor;
mod morphism;
mod opfib;
mod retro;

pub use delta::{check_delta_lens, DeltaLens, RawDeltaLens, RawLift};
pub use diagram::{
    check_dialens, counit_at, dopf_lens, hat_lambda, hat_upsilon, lambda, lens_from_diagram, DiaLens, RawDiaLens,
};
pub use factor::{epi_mono_factorization, ioo_ff_factorization, EpiMonoFactorization, IooFfFactorization};
pub use morphism::{check_lens_morphism, LensMorphism, RawLensMorphism};
pub use opfib::{is_split_opfibration, projection_lens, OpfibMode};
pub use retro::{
    check_retrofunctor, cofree_lens, cofree_witness, is_cofree, CofreeWitness, RawRetrofunctor, Retrofunctor,
};
