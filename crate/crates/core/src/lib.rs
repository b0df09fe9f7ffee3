//! Corpus toolkit and sequence tagger for adposition and case supersense
//! (SNACS) annotations.
//!
//! The numeric code is generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix it to `f64`, which is what the command-line tool uses.

pub mod agreement;
pub mod bio;
pub mod conllulex;
pub mod eval;
pub mod scalar;
pub mod stats;
pub mod synth;
pub mod tagger;

pub use scalar::Scalar;

pub type CrfModel = tagger::CrfModel<f64>;
pub type CrfModel32 = tagger::CrfModel<f32>;
pub type CrfConfig = tagger::CrfConfig<f64>;
pub type EvalReport = eval::EvalReport<f64>;
