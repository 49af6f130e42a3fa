//! Finite categories, delta lenses and indexed split multivalued functions.
//!
//! The crate is organised bottom-up:
//!
//! - [`fincat`]: finite categories as explicit composition tables, functors,
//!   comma categories, the comprehensive factorization, décalage, pullbacks
//!   and bounded pushouts along identity-on-objects functors.
//! - [`smult`]: the double categories of split multivalued functions, spans
//!   and commuting squares of finite sets, with their comparison functors.
//! - [`lens`]: delta lenses, retrofunctors, diagrammatic delta lenses and the
//!   split-opfibration detectors.
//! - [`idx`]: indexed split multivalued functions, the category of elements,
//!   fibres, transport and (co)products.
//! - [`classify`]: class predicates computed twice, once on indexed data and
//!   once on the elements lens.
//! - [`gen`] and [`laws`]: seeded instance generation and the law suites used
//!   by the CLI and the acceptance tests.

pub mod classify;
pub mod error;
pub mod fincat;
pub mod gen;
pub mod idx;
pub mod laws;
pub mod lens;
pub mod names;
pub mod report;
pub mod smult;

pub use error::{Error, Result};
pub use report::{ValidationReport, Violation};
