//! Measurement core for tabular data-quality assessment.
//!
//! Three layers live here, all pure functions over an immutable [`dataset::Dataset`]:
//!
//! - [`indices`] — the seven per-dataset quality indices (quantity, accuracy,
//!   granularity, completeness, uniqueness, precision, compliance);
//! - [`net`] — variable co-occurrence networks across dataset collections with
//!   Jaccard edge weights, degree centrality, and betweenness centrality;
//! - [`analytics`] — scoring of human assessment responses ("cannot evaluate"
//!   ratios, coefficient of variation, false-answer rate, Simpson's diversity,
//!   Fisher's exact test).
//!
//! The crate is `no_std` (alloc required). All float math goes through `libm`
//! so results are bit-identical across platforms. File formats, CSV ingestion,
//! report rendering, and the CLI live in the companion `qualimeta` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analytics;
pub mod dataset;
mod eval;
mod fmath;
pub mod indices;
pub mod net;
pub mod stats;

pub use eval::Evaluation;
