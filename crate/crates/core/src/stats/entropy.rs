use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::distribution::CountDistribution;
use crate::conllulex::{Corpus, LabelDimension};
use crate::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EntropyError {
    #[error("undefined entropy: distribution is empty")]
    Undefined,
}

/// Plug-in Shannon entropy in bits.
pub fn shannon_entropy<T: Scalar>(d: &CountDistribution) -> Result<T, EntropyError> {
    if d.is_empty() {
        return Err(EntropyError::Undefined);
    }
    let n = T::from_count(d.total());
    let h: T = d
        .counts()
        .filter(|&c| c > 0)
        .map(|c| {
            let p = T::from_count(c) / n;
            -p * p.log2()
        })
        .sum();
    Ok(h.max(T::zero()))
}

/// Coverage-adjusted (Chao-Shen) entropy estimate in bits.
///
/// With `n` observations and `f1` singleton keys, sample coverage is
/// `C = 1 - f1/n`; each key gets `p = C * count/n` and contributes
/// `-p log2 p / (1 - (1-p)^n)`. When every key is a singleton (`C = 0`) the
/// coverage falls back to `1 - f1/(n+1)`.
pub fn chao_shen_entropy<T: Scalar>(d: &CountDistribution) -> Result<T, EntropyError> {
    if d.is_empty() {
        return Err(EntropyError::Undefined);
    }
    let observed = d.counts().filter(|&c| c > 0).count();
    if observed == 1 {
        return Ok(T::zero());
    }
    let total = d.total();
    let n = T::from_count(total);
    let f1 = d.counts().filter(|&c| c == 1).count();
    let coverage = if f1 == total {
        log::warn!("all {total} observations are singletons; using coverage 1 - f1/(n+1)");
        T::one() - T::from_count(f1) / (n + T::one())
    } else {
        T::one() - T::from_count(f1) / n
    };
    let h: T = d
        .counts()
        .filter(|&c| c > 0)
        .map(|c| {
            let p = coverage * T::from_count(c) / n;
            let inclusion = T::one() - (T::one() - p).powf(n);
            -p * p.log2() / inclusion
        })
        .sum();
    Ok(h.max(T::zero()))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Estimator {
    #[default]
    ChaoShen,
    Shannon,
}

impl Estimator {
    pub fn estimate<T: Scalar>(self, d: &CountDistribution) -> Result<T, EntropyError> {
        match self {
            Self::ChaoShen => chao_shen_entropy(d),
            Self::Shannon => shannon_entropy(d),
        }
    }
}

impl FromStr for Estimator {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "chao-shen" => Ok(Self::ChaoShen),
            "shannon" | "plugin" => Ok(Self::Shannon),
            other => Err(format!("unknown estimator {other:?}")),
        }
    }
}

impl fmt::Display for Estimator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::ChaoShen => "chao-shen",
            Self::Shannon => "shannon",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EntropyTableOptions {
    pub min_n: usize,
    pub dimension: LabelDimension,
    pub estimator: Estimator,
    /// Count targets labeled with special labels (`` `d ``, `NONSNACS`).
    pub include_specials: bool,
}

impl Default for EntropyTableOptions {
    fn default() -> Self {
        EntropyTableOptions {
            min_n: 20,
            dimension: LabelDimension::Scene,
            estimator: Estimator::ChaoShen,
            include_specials: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyRow<T> {
    pub lemma: String,
    pub entropy: T,
    pub n: usize,
}

/// Per-lemma label entropy for lemmas with at least `min_n` targets, sorted
/// by descending entropy (ties: larger `n`, then lemma).
pub fn target_entropy_table<T: Scalar>(
    corpus: &Corpus,
    options: &EntropyTableOptions,
) -> Vec<EntropyRow<T>> {
    let mut by_lemma: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for t in corpus.targets() {
        if !options.include_specials && corpus.inventory.is_special(&t.construal.scene) {
            continue;
        }
        let label = t.construal.label(options.dimension);
        by_lemma.entry(t.lemma).or_default().push(label);
    }
    let mut rows: Vec<EntropyRow<T>> = by_lemma
        .into_iter()
        .filter(|(_, labels)| labels.len() >= options.min_n.max(1))
        .map(|(lemma, labels)| {
            let n = labels.len();
            let d = CountDistribution::tally(labels);
            let entropy = options
                .estimator
                .estimate(&d)
                .expect("lemma rows are non-empty");
            EntropyRow { lemma, entropy, n }
        })
        .collect();
    rows.sort_by(|a, b| {
        b.entropy
            .partial_cmp(&a.entropy)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| b.n.cmp(&a.n))
            .then_with(|| a.lemma.cmp(&b.lemma))
    });
    rows
}
