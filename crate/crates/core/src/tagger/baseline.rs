use std::collections::BTreeMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bio::{Tag, TagSequence};
use crate::conllulex::{extract_targets, Construal, Corpus, LabelDimension, LabelInventory, Sentence};

/// How the baseline finds targets at tagging time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TargetMode {
    /// Gold spans are given; only labels are predicted.
    Known,
    /// Spans come from the longest match against training target lemmas.
    #[default]
    Unknown,
}

impl FromStr for TargetMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "known" | "targets-known" | "gold" => Ok(TargetMode::Known),
            "unknown" | "targets-unknown" | "lexicon" => Ok(TargetMode::Unknown),
            other => Err(format!("unknown target mode {other:?}")),
        }
    }
}

/// Most-frequent-label baseline. Counts are kept per construal so any
/// label dimension can be queried from one model.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaselineModel {
    /// Lemma to construal text (`Scene` or `Scene~>Function`) to count.
    pub per_lemma: BTreeMap<String, BTreeMap<String, usize>>,
    pub global: BTreeMap<String, usize>,
}

fn project(construal: &str, dim: LabelDimension) -> String {
    construal
        .parse::<Construal>()
        .map_or_else(|_| construal.to_owned(), |c| c.label(dim))
}

fn most_common(counts: &BTreeMap<String, usize>, dim: LabelDimension) -> Option<(String, usize)> {
    let mut by_label: BTreeMap<String, usize> = BTreeMap::new();
    for (c, n) in counts {
        *by_label.entry(project(c, dim)).or_default() += n;
    }
    // ascending key order, so strict > keeps the lexicographically first
    let mut best: Option<(String, usize)> = None;
    for (l, n) in by_label {
        if best.as_ref().is_none_or(|(_, bn)| n > *bn) {
            best = Some((l, n));
        }
    }
    best
}

impl BaselineModel {
    pub fn n_lemmas(&self) -> usize {
        self.per_lemma.len()
    }

    /// Most common label for `lemma` on `dim`, ties broken lexicographically.
    pub fn lemma_label(&self, lemma: &str, dim: LabelDimension) -> Option<String> {
        self.per_lemma
            .get(lemma)
            .and_then(|c| most_common(c, dim))
            .map(|(l, _)| l)
    }

    pub fn global_label(&self, dim: LabelDimension) -> Option<String> {
        most_common(&self.global, dim).map(|(l, _)| l)
    }

    /// The lemma's label, or the global one for unseen lemmas.
    pub fn label_for(&self, lemma: &str, dim: LabelDimension) -> Option<String> {
        self.lemma_label(lemma, dim)
            .or_else(|| self.global_label(dim))
    }

    /// Fraction of training targets whose label equals their lemma's most
    /// common label: Σ max / Σ total.
    pub fn training_accuracy(&self, dim: LabelDimension) -> f64 {
        let (hit, total) = self.per_lemma.values().fold((0, 0), |(h, t), c| {
            let max = most_common(c, dim).map_or(0, |(_, n)| n);
            (h + max, t + c.values().sum::<usize>())
        });
        if total == 0 {
            0.0
        } else {
            hit as f64 / total as f64
        }
    }

    fn longest_word_count(&self) -> usize {
        self.per_lemma
            .keys()
            .map(|k| k.split(' ').count())
            .max()
            .unwrap_or(0)
    }

    /// Tags one sentence. Each predicted span gets `B` on its first token
    /// and `I` on the rest.
    pub fn tag(
        &self,
        sentence: &Sentence,
        inventory: &LabelInventory,
        mode: TargetMode,
        dim: LabelDimension,
    ) -> TagSequence {
        let n = sentence.len();
        let mut tags = vec![Tag::O; n];
        let mut put = |start: usize, len: usize, lemma: &str| {
            if let Some(label) = self.label_for(lemma, dim) {
                tags[start] = Tag::B(label);
                for t in &mut tags[start + 1..start + len] {
                    *t = Tag::I;
                }
            }
        };
        match mode {
            TargetMode::Known => {
                let (targets, _) = extract_targets(sentence, inventory);
                for t in targets {
                    let lemma = inventory.canonical_lemma(&t.lemma);
                    put(t.first() - 1, t.span.len(), lemma);
                }
            }
            TargetMode::Unknown => {
                let toks = &sentence.tokens;
                let max_len = self.longest_word_count();
                let mut i = 0;
                while i < n {
                    let mut matched = None;
                    for len in (1..=max_len.min(n - i)).rev() {
                        let window = &toks[i..i + len];
                        let join = |f: fn(&crate::conllulex::Token) -> &str| {
                            window.iter().map(f).collect::<Vec<_>>().join(" ")
                        };
                        let candidates = [join(|t| &t.form), join(|t| &t.lemma)];
                        if let Some(c) = candidates.iter().find_map(|c| {
                            let c = inventory.canonical_lemma(c);
                            self.per_lemma.contains_key(c).then(|| c.to_owned())
                        }) {
                            matched = Some((len, c));
                            break;
                        }
                    }
                    match matched {
                        Some((len, lemma)) => {
                            put(i, len, &lemma);
                            i += len;
                        }
                        None => i += 1,
                    }
                }
            }
        }
        TagSequence::tokens(tags)
    }
}

/// Counts construals per canonical target lemma.
pub fn train_baseline(train: &Corpus) -> BaselineModel {
    let mut m = BaselineModel::default();
    for t in train.targets() {
        let lemma = train.inventory.canonical_lemma(&t.lemma).to_owned();
        *m.per_lemma
            .entry(lemma)
            .or_default()
            .entry(t.construal.to_string())
            .or_default() += 1;
        *m.global.entry(t.construal.to_string()).or_default() += 1;
    }
    m
}

/// Tags every sentence of `corpus`.
pub fn baseline_tag(
    model: &BaselineModel,
    corpus: &Corpus,
    mode: TargetMode,
    dim: LabelDimension,
) -> Vec<TagSequence> {
    corpus
        .sentences
        .iter()
        .map(|s| model.tag(s, &corpus.inventory, mode, dim))
        .collect()
}
