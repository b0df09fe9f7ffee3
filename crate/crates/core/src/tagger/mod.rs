//! Most-frequent-label baseline and a feature-based linear-chain CRF over
//! BIO construal tags.

mod baseline;
mod crf;
mod features;
mod io;
mod train;

pub use baseline::{baseline_tag, train_baseline, BaselineModel, TargetMode};
pub use crf::{crf_loglik_grad, viterbi_decode, CrfError, CrfModel, LabelAlphabet, Weights};
pub use features::{
    sentence_features, EmbeddingFeatures, EmbeddingProvider, FeatureAlphabet, FeatureProvider,
    FeatureVector, TemplateFeatures, TEMPLATE_FEATURES,
};
pub use io::{load_model, model_from_json, model_to_json, save_model, ModelIoError, StoredModel, MODEL_FORMAT};
pub use train::{train_crf, CrfConfig, EpochLog, Trained, EPOCH_GRID, LEARNING_RATE_GRID};
