//! Finite categories, functors between them, and the constructions the rest
//! of the crate is built on.

mod category;
mod constructions;
mod dot;
mod functor;
mod predicates;
mod pushout;
mod search;

pub(crate) use category::assemble;
pub use category::{validate_category, CatBuilder, FinCat, Mor, Obj, RawCategory, RawComposite, RawMorphism};
pub(crate) use constructions::UnionFind;
pub use constructions::{
    codiscrete, comma_components, comma_over, comprehensive_factorization, coproduct, decalage, decalage_map,
    full_subcategory, induced_functor, pi0, product, pullback, subcategory, to_codiscrete, Cocone, Cone, Decalage,
    Factorization,
};
pub use dot::to_dot;
pub use functor::{validate_functor, validate_functor_between, CatRef, FinFunctor, RawFunctor};
pub use predicates::is_discrete;
pub use pushout::{pushout_along_ioo, PushoutBound};
pub use search::FunctorSearch;
