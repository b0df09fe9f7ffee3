use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// The default inventory shipped with the crate.
pub const DEFAULT_INVENTORY: &str = include_str!("../../config/inventory.toml");

const FORMAT_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum InventoryError {
    #[error("cannot read inventory {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed inventory: {0}")]
    Syntax(#[from] toml::de::Error),
    #[error("unsupported inventory format {0} (expected {FORMAT_VERSION})")]
    Format(u32),
    #[error("label {0:?} is listed both as a supersense and as a special label")]
    Overlap(String),
    #[error("lemma {0:?} is listed twice in the target lexicon")]
    DuplicateLemma(String),
}

/// Coarse class of an annotation target.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum TargetClass {
    Case,
    Emphatic,
    Adposition,
}

impl TargetClass {
    pub const ALL: [TargetClass; 3] = [Self::Case, Self::Emphatic, Self::Adposition];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Case => "case",
            Self::Emphatic => "emphatic",
            Self::Adposition => "adposition",
        }
    }
}

impl fmt::Display for TargetClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TargetClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "case" => Ok(Self::Case),
            "emphatic" => Ok(Self::Emphatic),
            "adposition" | "adpositions" => Ok(Self::Adposition),
            other => Err(format!("unknown target class {other:?}")),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct InventoryFile {
    format: u32,
    #[serde(default)]
    version: String,
    supersenses: Vec<String>,
    specials: Vec<String>,
    #[serde(default)]
    targets: Vec<LexiconEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
struct LexiconEntry {
    lemma: String,
    translit: Option<String>,
    class: TargetClass,
}

/// Supersense labels, special labels and the target lexicon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelInventory {
    pub version: String,
    pub supersenses: BTreeSet<String>,
    pub specials: BTreeSet<String>,
    pub target_lexicon: BTreeMap<String, TargetClass>,
    /// Romanization to canonical lemma.
    pub translit: BTreeMap<String, String>,
}

impl LabelInventory {
    pub fn from_toml(text: &str) -> Result<Self, InventoryError> {
        let file: InventoryFile = toml::from_str(text)?;
        if file.format != FORMAT_VERSION {
            return Err(InventoryError::Format(file.format));
        }
        let supersenses: BTreeSet<String> = file.supersenses.into_iter().collect();
        let specials: BTreeSet<String> = file.specials.into_iter().collect();
        if let Some(label) = supersenses.intersection(&specials).next() {
            return Err(InventoryError::Overlap(label.clone()));
        }
        let mut target_lexicon = BTreeMap::new();
        let mut translit = BTreeMap::new();
        for entry in file.targets {
            if target_lexicon
                .insert(entry.lemma.clone(), entry.class)
                .is_some()
            {
                return Err(InventoryError::DuplicateLemma(entry.lemma));
            }
            if let Some(roman) = entry.translit {
                translit.insert(roman, entry.lemma);
            }
        }
        Ok(Self {
            version: file.version,
            supersenses,
            specials,
            target_lexicon,
            translit,
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, InventoryError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| InventoryError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_toml(&text)
    }

    /// The bundled inventory.
    pub fn builtin() -> Self {
        Self::from_toml(DEFAULT_INVENTORY).expect("bundled inventory is valid")
    }

    pub fn is_special(&self, label: &str) -> bool {
        self.specials.contains(label)
    }

    pub fn contains(&self, label: &str) -> bool {
        self.supersenses.contains(label) || self.specials.contains(label)
    }

    /// Resolves a romanized lemma to its canonical form; other strings are
    /// returned unchanged.
    pub fn canonical_lemma<'a>(&'a self, lemma: &'a str) -> &'a str {
        self.translit.get(lemma).map(String::as_str).unwrap_or(lemma)
    }

    /// Lexicon class of `lemma`, or `None` when the lemma is not listed.
    pub fn lookup_class(&self, lemma: &str) -> Option<TargetClass> {
        self.target_lexicon.get(self.canonical_lemma(lemma)).copied()
    }
}

impl Default for LabelInventory {
    fn default() -> Self {
        Self::builtin()
    }
}
