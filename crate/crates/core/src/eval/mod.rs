//! Seeded corpus splits and B-tag precision/recall/F1.

mod metrics;
mod split;

pub use metrics::{evaluate, f1, EvalError, EvalReport};
pub use split::{bucket_sizes, split_corpus, Bucket, Split, SplitError, DEFAULT_RATIOS};
