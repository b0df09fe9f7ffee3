use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::conllulex::{LabelInventory, Sentence, Token};
use crate::Scalar;

/// Produces named, real-valued features for one token of a sentence.
/// `position` is a 0-based token index.
pub trait FeatureProvider<T> {
    /// Recorded in trained models so tagging can check it uses the same
    /// feature set.
    fn id(&self) -> String {
        "custom".to_owned()
    }

    fn features(&self, sentence: &Sentence, position: usize) -> Vec<(String, T)>;
}

impl<T, P: FeatureProvider<T> + ?Sized> FeatureProvider<T> for &P {
    fn id(&self) -> String {
        (**self).id()
    }

    fn features(&self, sentence: &Sentence, position: usize) -> Vec<(String, T)> {
        (**self).features(sentence, position)
    }
}

/// Features of `a` followed by those of `b`.
impl<T, A: FeatureProvider<T>, B: FeatureProvider<T>> FeatureProvider<T> for (A, B) {
    fn id(&self) -> String {
        format!("{}+{}", self.0.id(), self.1.id())
    }

    fn features(&self, sentence: &Sentence, position: usize) -> Vec<(String, T)> {
        let mut f = self.0.features(sentence, position);
        f.extend(self.1.features(sentence, position));
        f
    }
}

/// Maps a token to a fixed-length dense vector.
pub trait EmbeddingProvider<T> {
    fn dim(&self) -> usize;
    fn embed(&self, token: &Token) -> Vec<T>;
}

/// Exposes an [`EmbeddingProvider`] as features `emb[0]`, `emb[1]`, ...
pub struct EmbeddingFeatures<E>(pub E);

impl<T: Scalar, E: EmbeddingProvider<T>> FeatureProvider<T> for EmbeddingFeatures<E> {
    fn features(&self, sentence: &Sentence, position: usize) -> Vec<(String, T)> {
        let v = self.0.embed(&sentence.tokens[position]);
        debug_assert_eq!(v.len(), self.0.dim());
        v.into_iter()
            .enumerate()
            .map(|(k, x)| (format!("emb[{k}]"), x))
            .collect()
    }
}

/// Name recorded in models trained with [`TemplateFeatures`].
pub const TEMPLATE_FEATURES: &str = "templates-v1";

/// Indicator features from a fixed template set: bias; form, lemma and UPOS
/// of the token; forms and lemmas at offsets -2..=2; the lexicon class of
/// the lemma and of two-token windows; form prefixes and suffixes of
/// length 1 to 3; sentence boundary flags.
#[derive(Debug, Clone)]
pub struct TemplateFeatures {
    inventory: Arc<LabelInventory>,
}

impl TemplateFeatures {
    pub fn new(inventory: Arc<LabelInventory>) -> Self {
        TemplateFeatures { inventory }
    }

    fn class_of(&self, token: &Token) -> Option<&'static str> {
        self.inventory
            .lookup_class(&token.lemma)
            .or_else(|| self.inventory.lookup_class(&token.form))
            .map(|c| c.as_str())
    }

    pub fn names(&self, sentence: &Sentence, position: usize) -> Vec<String> {
        let toks = &sentence.tokens;
        let n = toks.len();
        let tok = &toks[position];
        let mut out = vec![
            "bias".to_owned(),
            format!("form={}", tok.form),
            format!("lemma={}", tok.lemma),
            format!("upos={}", tok.upos),
        ];
        for off in [-2isize, -1, 1, 2] {
            let idx = position as isize + off;
            let (form, lemma) = if idx < 0 {
                ("<s>", "<s>")
            } else if idx as usize >= n {
                ("</s>", "</s>")
            } else {
                let t = &toks[idx as usize];
                (t.form.as_str(), t.lemma.as_str())
            };
            out.push(format!("form[{off:+}]={form}"));
            out.push(format!("lemma[{off:+}]={lemma}"));
        }
        out.push(format!("class={}", self.class_of(tok).unwrap_or("none")));
        if position + 1 < n {
            let pair = format!("{} {}", tok.form, toks[position + 1].form);
            if let Some(c) = self.inventory.lookup_class(&pair) {
                out.push(format!("class[0:+1]={c}"));
            }
        }
        if position > 0 {
            let pair = format!("{} {}", toks[position - 1].form, tok.form);
            if let Some(c) = self.inventory.lookup_class(&pair) {
                out.push(format!("class[-1:0]={c}"));
            }
        }
        let chars: Vec<char> = tok.form.chars().collect();
        for k in 1..=3.min(chars.len()) {
            out.push(format!("prefix{k}={}", chars[..k].iter().collect::<String>()));
            out.push(format!(
                "suffix{k}={}",
                chars[chars.len() - k..].iter().collect::<String>()
            ));
        }
        if position == 0 {
            out.push("sent_start".to_owned());
        }
        if position + 1 == n {
            out.push("sent_end".to_owned());
        }
        out
    }
}

impl<T: Scalar> FeatureProvider<T> for TemplateFeatures {
    fn id(&self) -> String {
        TEMPLATE_FEATURES.to_owned()
    }

    fn features(&self, sentence: &Sentence, position: usize) -> Vec<(String, T)> {
        self.names(sentence, position)
            .into_iter()
            .map(|n| (n, T::one()))
            .collect()
    }
}

/// Feature names and their dense ids, in insertion order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "Vec<String>", into = "Vec<String>")]
pub struct FeatureAlphabet {
    names: Vec<String>,
    index: BTreeMap<String, u32>,
}

impl From<Vec<String>> for FeatureAlphabet {
    fn from(names: Vec<String>) -> Self {
        Self::from_names(names)
    }
}

impl From<FeatureAlphabet> for Vec<String> {
    fn from(a: FeatureAlphabet) -> Self {
        a.names
    }
}

impl FeatureAlphabet {
    pub fn from_names(names: Vec<String>) -> Self {
        let index = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i as u32))
            .collect();
        FeatureAlphabet { names, index }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<u32> {
        self.index.get(name).copied()
    }

    pub fn name(&self, id: u32) -> Option<&str> {
        self.names.get(id as usize).map(String::as_str)
    }

    /// Maps named features to ids, dropping names outside the alphabet.
    /// Repeated names are summed; entries come out sorted by id.
    pub fn vectorize<T: Scalar>(&self, named: &[(String, T)]) -> FeatureVector<T> {
        let mut acc: BTreeMap<u32, T> = BTreeMap::new();
        for (name, v) in named {
            if let Some(id) = self.get(name) {
                *acc.entry(id).or_insert_with(T::zero) += *v;
            }
        }
        FeatureVector(acc.into_iter().collect())
    }
}

/// Sparse `(feature id, value)` pairs, sorted by id.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FeatureVector<T>(pub Vec<(u32, T)>);

impl<T> FeatureVector<T> {
    pub fn iter(&self) -> impl Iterator<Item = &(u32, T)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Named features for every token of `sentence`.
pub fn sentence_features<T, P: FeatureProvider<T> + ?Sized>(
    provider: &P,
    sentence: &Sentence,
) -> Vec<Vec<(String, T)>> {
    (0..sentence.len())
        .map(|i| provider.features(sentence, i))
        .collect()
}
