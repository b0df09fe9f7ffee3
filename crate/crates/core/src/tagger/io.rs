use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::baseline::BaselineModel;
use super::crf::CrfModel;
use crate::Scalar;

pub const MODEL_FORMAT: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum ModelIoError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed model file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("model format {found} is not supported (expected {MODEL_FORMAT})")]
    Format { found: u32 },
    #[error("expected a {expected} model, file holds {found}")]
    Kind { expected: String, found: String },
}

/// Any saved model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "model", rename_all = "lowercase")]
pub enum StoredModel<T> {
    Baseline(BaselineModel),
    Crf(CrfModel<T>),
}

impl<T> StoredModel<T> {
    pub fn kind(&self) -> &'static str {
        match self {
            StoredModel::Baseline(_) => "baseline",
            StoredModel::Crf(_) => "crf",
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Envelope<M> {
    format: u32,
    scalar: String,
    #[serde(flatten)]
    model: M,
}

#[derive(Deserialize)]
struct Header {
    format: u32,
    kind: String,
}

fn scalar_name<T>() -> &'static str {
    if std::mem::size_of::<T>() == 4 {
        "f32"
    } else {
        "f64"
    }
}

/// Serializes a model as a self-describing JSON document.
pub fn model_to_json<T: Scalar>(model: &StoredModel<T>) -> String {
    let env = Envelope {
        format: MODEL_FORMAT,
        scalar: scalar_name::<T>().to_owned(),
        model,
    };
    serde_json::to_string(&env).expect("models serialize")
}

pub fn model_from_json<T: Scalar + DeserializeOwned>(text: &str) -> Result<StoredModel<T>, ModelIoError> {
    let header: Header = serde_json::from_str(text)?;
    if header.format != MODEL_FORMAT {
        return Err(ModelIoError::Format {
            found: header.format,
        });
    }
    if header.kind != "baseline" && header.kind != "crf" {
        return Err(ModelIoError::Kind {
            expected: "baseline or crf".into(),
            found: header.kind,
        });
    }
    let env: Envelope<StoredModel<T>> = serde_json::from_str(text)?;
    Ok(env.model)
}

pub fn save_model<T: Scalar>(model: &StoredModel<T>, path: impl AsRef<Path>) -> Result<(), ModelIoError> {
    let path = path.as_ref();
    std::fs::write(path, model_to_json(model)).map_err(|source| ModelIoError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_model<T: Scalar>(path: impl AsRef<Path>) -> Result<StoredModel<T>, ModelIoError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| ModelIoError::Io {
        path: path.display().to_string(),
        source,
    })?;
    model_from_json(&text)
}
