//! Indexed split multivalued functions over a finite base, the category of
//! elements and its inverse, and transport along base functors.

mod elements;
mod free;
mod indexed;
mod morphism;
mod transport;

pub use elements::{elements, elements_raw, fibres, roundtrip_idx, roundtrip_lens, Elements};
pub use free::{free_carriers, FreeCarriers};
pub use indexed::{validate_indexed_smf, IndexedSmf, RawCarrier, RawIndexedSmf, RawMu, RawMuEntry};
pub use morphism::{elements_morphism, fibres_morphism, IdxMorphism};
pub use transport::{
    coproduct_idx, fib_coproduct_idx, fib_product_idx, is_split_opfibration_idx, product_idx, pullback_idx,
    pushforward_idx, pushforward_lens, IdxLimit,
};
