//! Seeded generators for categories, lenses, indexed data and cells.

pub mod catalog;
pub mod enumerate;
mod random;

pub use random::{
    mutate_idx, random_category, random_cell, random_cell_below, random_functor, random_functor_pair, random_grid,
    random_idx, random_lens, random_lens_pair, random_smf, random_smf_between, random_smf_path, GenConfig, LensShape,
};
