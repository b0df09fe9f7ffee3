use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::conllulex::{Corpus, LabelDimension, Target, TargetClass};

/// Label counts, sorted by descending count with ties broken
/// lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountDistribution {
    entries: Vec<(String, usize)>,
    total: usize,
}

impl CountDistribution {
    /// Builds a distribution; repeated keys are merged and zero counts kept.
    pub fn from_counts<K: Into<String>>(counts: impl IntoIterator<Item = (K, usize)>) -> Self {
        let mut merged: BTreeMap<String, usize> = BTreeMap::new();
        for (k, c) in counts {
            *merged.entry(k.into()).or_default() += c;
        }
        let mut entries: Vec<(String, usize)> = merged.into_iter().collect();
        entries.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        let total = entries.iter().map(|e| e.1).sum();
        CountDistribution { entries, total }
    }

    /// Counts the occurrences of each item.
    pub fn tally<K: Into<String>>(items: impl IntoIterator<Item = K>) -> Self {
        Self::from_counts(items.into_iter().map(|k| (k, 1)))
    }

    pub fn entries(&self) -> &[(String, usize)] {
        &self.entries
    }

    pub fn counts(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|e| e.1)
    }

    pub fn total(&self) -> usize {
        self.total
    }

    /// Number of keys.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn count(&self, key: &str) -> usize {
        self.entries
            .iter()
            .find(|e| e.0 == key)
            .map_or(0, |e| e.1)
    }

    /// `count(key)` as a percentage of `denominator` (0 when it is 0).
    pub fn percent_of(&self, key: &str, denominator: usize) -> f64 {
        percent(self.count(key), denominator)
    }
}

pub(crate) fn percent(count: usize, total: usize) -> f64 {
    if total == 0 {
        0.0
    } else {
        100.0 * count as f64 / total as f64
    }
}

/// What a target is counted by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DistributionKey {
    Scene,
    Function,
    Construal,
    Lemma,
}

impl DistributionKey {
    pub fn of(self, target: &Target) -> String {
        match self {
            Self::Scene => target.construal.label(LabelDimension::Scene),
            Self::Function => target.construal.label(LabelDimension::Function),
            Self::Construal => target.construal.label(LabelDimension::Construal),
            Self::Lemma => target.lemma.clone(),
        }
    }
}

impl From<LabelDimension> for DistributionKey {
    fn from(d: LabelDimension) -> Self {
        match d {
            LabelDimension::Scene => Self::Scene,
            LabelDimension::Function => Self::Function,
            LabelDimension::Construal => Self::Construal,
        }
    }
}

impl FromStr for DistributionKey {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lemma" => Ok(Self::Lemma),
            other => other.parse::<LabelDimension>().map(Into::into),
        }
    }
}

impl fmt::Display for DistributionKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Scene => "scene",
            Self::Function => "function",
            Self::Construal => "construal",
            Self::Lemma => "lemma",
        })
    }
}

/// Distribution of targets of class `klass` (all classes when `None`) along
/// one dimension.
pub fn label_distribution(
    corpus: &Corpus,
    klass: Option<TargetClass>,
    key: DistributionKey,
) -> CountDistribution {
    CountDistribution::tally(
        corpus
            .targets()
            .iter()
            .filter(|t| klass.is_none_or(|k| t.klass == k))
            .map(|t| key.of(t)),
    )
}
