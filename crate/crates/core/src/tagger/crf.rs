use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::features::{FeatureAlphabet, FeatureProvider, FeatureVector};
use super::train::CrfConfig;
use crate::bio::{BioError, Tag, TagSequence};
use crate::conllulex::{LabelDimension, Sentence};
use crate::scalar::log_sum_exp;
use crate::Scalar;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CrfError {
    #[error("feature id {id} outside the alphabet of {len} features")]
    UnknownFeature { id: u32, len: usize },
    #[error("tag {0} is not in the label alphabet")]
    UnknownLabel(String),
    #[error("gold sequence {0} is not valid BIO")]
    InvalidGold(usize),
    #[error("sequence {index}: {features} feature vectors but {tags} tags")]
    Length {
        index: usize,
        features: usize,
        tags: usize,
    },
    #[error("training corpus has no sentences")]
    EmptyTrain,
    #[error("non-finite loss at epoch {epoch}, batch {batch}")]
    NonFinite { epoch: usize, batch: usize },
    #[error("model uses feature set {model:?}, tagger supplied {given:?}")]
    FeatureSet { model: String, given: String },
    #[error(transparent)]
    Bio(#[from] BioError),
}

/// BIO tags by index: `O` first, then `I` if present, then `B` labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct LabelAlphabet {
    tags: Vec<Tag>,
    index: BTreeMap<Tag, usize>,
}

impl LabelAlphabet {
    /// `O`, `I` and one `B` per label, labels sorted.
    pub fn bio<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Self {
        let mut labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        labels.sort();
        labels.dedup();
        let tags = [Tag::O, Tag::I]
            .into_iter()
            .chain(labels.into_iter().map(Tag::B))
            .collect();
        Self::from_tags(tags)
    }

    /// Uses `tags` in the given order; duplicates are dropped.
    pub fn from_tags(tags: Vec<Tag>) -> Self {
        let mut out = LabelAlphabet {
            tags: Vec::new(),
            index: BTreeMap::new(),
        };
        for t in tags {
            if !out.index.contains_key(&t) {
                out.index.insert(t.clone(), out.tags.len());
                out.tags.push(t);
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.tags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tags.is_empty()
    }

    pub fn tags(&self) -> &[Tag] {
        &self.tags
    }

    pub fn tag(&self, i: usize) -> &Tag {
        &self.tags[i]
    }

    pub fn get(&self, tag: &Tag) -> Option<usize> {
        self.index.get(tag).copied()
    }

    /// Whether label `next` may follow label `prev`.
    pub fn allowed(&self, prev: usize, next: usize) -> bool {
        !(self.tags[next] == Tag::I && self.tags[prev] == Tag::O)
    }

    /// Whether a sequence may start with label `first`.
    pub fn allowed_start(&self, first: usize) -> bool {
        self.tags[first] != Tag::I
    }

    /// Label indices for `seq`.
    pub fn indices(&self, seq: &TagSequence) -> Result<Vec<usize>, CrfError> {
        seq.tags
            .iter()
            .map(|t| self.get(t).ok_or_else(|| CrfError::UnknownLabel(t.to_string())))
            .collect()
    }
}

impl TryFrom<Vec<String>> for LabelAlphabet {
    type Error = BioError;

    fn try_from(v: Vec<String>) -> Result<Self, Self::Error> {
        let tags = v.iter().map(|s| s.parse()).collect::<Result<_, _>>()?;
        Ok(Self::from_tags(tags))
    }
}

impl From<LabelAlphabet> for Vec<String> {
    fn from(a: LabelAlphabet) -> Self {
        a.tags.iter().map(Tag::to_string).collect()
    }
}

/// CRF parameters. `emission` is feature-major: the weight of feature `f`
/// for label `y` is at `f * n_labels + y`; `transition[p * n_labels + q]`
/// scores `p` followed by `q`. Masked transitions stay at zero and are
/// excluded at scoring time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Weights<T> {
    pub emission: Vec<T>,
    pub transition: Vec<T>,
    pub start: Vec<T>,
    pub end: Vec<T>,
}

impl<T: Scalar> Weights<T> {
    pub fn zeros(n_labels: usize, n_features: usize) -> Self {
        Weights {
            emission: vec![T::zero(); n_labels * n_features],
            transition: vec![T::zero(); n_labels * n_labels],
            start: vec![T::zero(); n_labels],
            end: vec![T::zero(); n_labels],
        }
    }

    pub fn parts(&self) -> [&[T]; 4] {
        [&self.emission, &self.transition, &self.start, &self.end]
    }

    pub fn parts_mut(&mut self) -> [&mut Vec<T>; 4] {
        [
            &mut self.emission,
            &mut self.transition,
            &mut self.start,
            &mut self.end,
        ]
    }

    pub fn squared_norm(&self) -> T {
        self.parts()
            .iter()
            .flat_map(|p| p.iter())
            .map(|&w| w * w)
            .sum()
    }

    /// `self += alpha * other`.
    pub fn add_scaled(&mut self, alpha: T, other: &Weights<T>) {
        for (dst, src) in self.parts_mut().into_iter().zip(other.parts()) {
            for (d, &s) in dst.iter_mut().zip(src) {
                *d += alpha * s;
            }
        }
    }
}

/// A linear-chain CRF over BIO tags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrfModel<T> {
    pub dimension: LabelDimension,
    /// Identifier of the feature provider used in training.
    pub feature_set: String,
    pub config: CrfConfig<T>,
    pub labels: LabelAlphabet,
    pub features: FeatureAlphabet,
    pub weights: Weights<T>,
}

/// Log-space forward and backward tables, each `n * L`.
struct Lattice<T> {
    emit: Vec<T>,
    alpha: Vec<T>,
    beta: Vec<T>,
    log_z: T,
}

impl<T: Scalar> CrfModel<T> {
    /// A model with all weights zero.
    pub fn new(
        labels: LabelAlphabet,
        features: FeatureAlphabet,
        dimension: LabelDimension,
        config: CrfConfig<T>,
    ) -> Self {
        let weights = Weights::zeros(labels.len(), features.len());
        CrfModel {
            dimension,
            feature_set: String::new(),
            config,
            labels,
            features,
            weights,
        }
    }

    pub fn n_labels(&self) -> usize {
        self.labels.len()
    }

    /// Transition score, `-inf` when masked.
    pub fn transition(&self, prev: usize, next: usize) -> T {
        if self.labels.allowed(prev, next) {
            self.weights.transition[prev * self.n_labels() + next]
        } else {
            T::neg_infinity()
        }
    }

    /// Start score, `-inf` when masked.
    pub fn start(&self, label: usize) -> T {
        if self.labels.allowed_start(label) {
            self.weights.start[label]
        } else {
            T::neg_infinity()
        }
    }

    fn check_features(&self, xs: &[FeatureVector<T>]) -> Result<(), CrfError> {
        let len = self.features.len();
        for x in xs {
            if let Some(&(id, _)) = x.iter().find(|(id, _)| *id as usize >= len) {
                return Err(CrfError::UnknownFeature { id, len });
            }
        }
        Ok(())
    }

    /// Emission scores, `n * L`, position-major.
    pub fn emissions(&self, xs: &[FeatureVector<T>]) -> Result<Vec<T>, CrfError> {
        self.check_features(xs)?;
        let l = self.n_labels();
        let mut out = vec![T::zero(); xs.len() * l];
        for (t, x) in xs.iter().enumerate() {
            let row = &mut out[t * l..(t + 1) * l];
            for &(f, v) in x.iter() {
                let w = &self.weights.emission[f as usize * l..(f as usize + 1) * l];
                for (r, &wy) in row.iter_mut().zip(w) {
                    *r += v * wy;
                }
            }
        }
        Ok(out)
    }

    /// Total score of a label path under precomputed emissions.
    fn path_score(&self, emit: &[T], ys: &[usize]) -> T {
        let l = self.n_labels();
        let Some(&first) = ys.first() else {
            return T::zero();
        };
        let mut s = self.start(first) + emit[first];
        for t in 1..ys.len() {
            s += self.transition(ys[t - 1], ys[t]) + emit[t * l + ys[t]];
        }
        s + self.weights.end[ys[ys.len() - 1]]
    }

    /// Score of `ys` for input `xs`; `-inf` for paths through a mask.
    pub fn score(&self, xs: &[FeatureVector<T>], ys: &[usize]) -> Result<T, CrfError> {
        let emit = self.emissions(xs)?;
        Ok(self.path_score(&emit, ys))
    }

    fn lattice(&self, xs: &[FeatureVector<T>]) -> Result<Lattice<T>, CrfError> {
        let l = self.n_labels();
        let n = xs.len();
        let emit = self.emissions(xs)?;
        let mut alpha = vec![T::neg_infinity(); n * l];
        let mut beta = vec![T::neg_infinity(); n * l];
        if n == 0 {
            return Ok(Lattice {
                emit,
                alpha,
                beta,
                log_z: T::zero(),
            });
        }
        let mut buf = vec![T::zero(); l];
        for y in 0..l {
            alpha[y] = self.start(y) + emit[y];
        }
        for t in 1..n {
            for q in 0..l {
                for p in 0..l {
                    buf[p] = alpha[(t - 1) * l + p] + self.transition(p, q);
                }
                alpha[t * l + q] = log_sum_exp(&buf) + emit[t * l + q];
            }
        }
        beta[(n - 1) * l..].copy_from_slice(&self.weights.end);
        for t in (0..n - 1).rev() {
            for p in 0..l {
                for q in 0..l {
                    buf[q] = self.transition(p, q) + emit[(t + 1) * l + q] + beta[(t + 1) * l + q];
                }
                beta[t * l + p] = log_sum_exp(&buf);
            }
        }
        for y in 0..l {
            buf[y] = alpha[(n - 1) * l + y] + self.weights.end[y];
        }
        let log_z = log_sum_exp(&buf);
        Ok(Lattice {
            emit,
            alpha,
            beta,
            log_z,
        })
    }

    /// Log partition function by the forward recursion.
    pub fn log_partition(&self, xs: &[FeatureVector<T>]) -> Result<T, CrfError> {
        Ok(self.lattice(xs)?.log_z)
    }

    /// Negative log-likelihood of one sequence; adds `nll`'s gradient into
    /// `grad` when given.
    fn sequence_nll(
        &self,
        xs: &[FeatureVector<T>],
        ys: &[usize],
        grad: Option<&mut Weights<T>>,
    ) -> Result<T, CrfError> {
        let lat = self.lattice(xs)?;
        let n = xs.len();
        if n == 0 {
            return Ok(T::zero());
        }
        let gold = self.path_score(&lat.emit, ys);
        let nll = lat.log_z - gold;
        let Some(g) = grad else {
            return Ok(nll);
        };
        let l = self.n_labels();
        let (alpha, beta, emit, log_z) = (&lat.alpha, &lat.beta, &lat.emit, lat.log_z);
        let mut marg = vec![T::zero(); l];
        for t in 0..n {
            for y in 0..l {
                marg[y] = (alpha[t * l + y] + beta[t * l + y] - log_z).exp();
            }
            marg[ys[t]] -= T::one();
            for &(f, v) in xs[t].iter() {
                let row = &mut g.emission[f as usize * l..(f as usize + 1) * l];
                for (gy, &m) in row.iter_mut().zip(&marg) {
                    *gy += v * m;
                }
            }
            if t == 0 {
                for y in 0..l {
                    if self.labels.allowed_start(y) {
                        g.start[y] += marg[y];
                    }
                }
            }
            if t == n - 1 {
                for y in 0..l {
                    g.end[y] += marg[y];
                }
            }
        }
        for t in 1..n {
            for p in 0..l {
                for q in 0..l {
                    if !self.labels.allowed(p, q) {
                        continue;
                    }
                    let lp = alpha[(t - 1) * l + p]
                        + self.weights.transition[p * l + q]
                        + emit[t * l + q]
                        + beta[t * l + q]
                        - log_z;
                    g.transition[p * l + q] += lp.exp();
                }
            }
            g.transition[ys[t - 1] * l + ys[t]] -= T::one();
        }
        Ok(nll)
    }

    /// Objective over indexed sequences: summed NLL plus `l2 / 2 * |w|^2`.
    pub(crate) fn objective(
        &self,
        batch: &[(Vec<FeatureVector<T>>, Vec<usize>)],
        l2: T,
        with_grad: bool,
    ) -> Result<(T, Option<Weights<T>>), CrfError> {
        let mut grad = with_grad.then(|| Weights::zeros(self.n_labels(), self.features.len()));
        let mut total = T::zero();
        for (xs, ys) in batch {
            total += self.sequence_nll(xs, ys, grad.as_mut())?;
        }
        total += l2 * T::lit(0.5) * self.weights.squared_norm();
        if let Some(g) = grad.as_mut() {
            g.add_scaled(l2, &self.weights);
        }
        Ok((total, grad))
    }

    /// Viterbi path and its score. Ties go to the lowest label index.
    pub fn viterbi(&self, xs: &[FeatureVector<T>]) -> Result<(Vec<usize>, T), CrfError> {
        let l = self.n_labels();
        let n = xs.len();
        let emit = self.emissions(xs)?;
        if n == 0 {
            return Ok((Vec::new(), T::zero()));
        }
        let mut delta = vec![T::neg_infinity(); n * l];
        let mut back = vec![0usize; n * l];
        for y in 0..l {
            delta[y] = self.start(y) + emit[y];
        }
        for t in 1..n {
            for q in 0..l {
                let mut best = T::neg_infinity();
                let mut arg = 0;
                for p in 0..l {
                    let s = delta[(t - 1) * l + p] + self.transition(p, q);
                    if s > best {
                        best = s;
                        arg = p;
                    }
                }
                delta[t * l + q] = best + emit[t * l + q];
                back[t * l + q] = arg;
            }
        }
        let mut best = T::neg_infinity();
        let mut last = 0;
        for y in 0..l {
            let s = delta[(n - 1) * l + y] + self.weights.end[y];
            if s > best {
                best = s;
                last = y;
            }
        }
        let mut path = vec![last; n];
        for t in (1..n).rev() {
            path[t - 1] = back[t * l + path[t]];
        }
        Ok((path, best))
    }

    /// Best-scoring tag sequence for `xs`.
    pub fn decode(&self, xs: &[FeatureVector<T>]) -> Result<TagSequence, CrfError> {
        let (path, _) = self.viterbi(xs)?;
        Ok(TagSequence::tokens(
            path.into_iter().map(|y| self.labels.tag(y).clone()).collect(),
        ))
    }

    /// Feature vectors for every token, using this model's alphabet.
    pub fn featurize<P: FeatureProvider<T> + ?Sized>(
        &self,
        provider: &P,
        sentence: &Sentence,
    ) -> Vec<FeatureVector<T>> {
        (0..sentence.len())
            .map(|i| self.features.vectorize(&provider.features(sentence, i)))
            .collect()
    }

    /// Tags one sentence, checking that `provider` matches the training
    /// feature set.
    pub fn tag_sentence<P: FeatureProvider<T> + ?Sized>(
        &self,
        provider: &P,
        sentence: &Sentence,
    ) -> Result<TagSequence, CrfError> {
        let given = provider.id();
        if given != self.feature_set {
            return Err(CrfError::FeatureSet {
                model: self.feature_set.clone(),
                given,
            });
        }
        self.decode(&self.featurize(provider, sentence))
    }
}

/// Objective and gradient for a batch of `(feature sequence, gold tags)`:
/// `Σ [log Z(x) - score(x, y)] + l2 / 2 * |w|^2`, with `l2` from the
/// model's config. Masked transitions get zero gradient.
pub fn crf_loglik_grad<T: Scalar>(
    model: &CrfModel<T>,
    batch: &[(Vec<FeatureVector<T>>, TagSequence)],
) -> Result<(T, Weights<T>), CrfError> {
    let indexed = index_batch(model, batch)?;
    let (obj, grad) = model.objective(&indexed, model.config.l2, true)?;
    Ok((obj, grad.expect("gradient requested")))
}

pub(crate) fn index_batch<T: Scalar>(
    model: &CrfModel<T>,
    batch: &[(Vec<FeatureVector<T>>, TagSequence)],
) -> Result<Vec<(Vec<FeatureVector<T>>, Vec<usize>)>, CrfError> {
    batch
        .iter()
        .enumerate()
        .map(|(index, (xs, seq))| {
            if xs.len() != seq.len() {
                return Err(CrfError::Length {
                    index,
                    features: xs.len(),
                    tags: seq.len(),
                });
            }
            if !seq.is_valid() {
                return Err(CrfError::InvalidGold(index));
            }
            Ok((xs.clone(), model.labels.indices(seq)?))
        })
        .collect()
}

/// Viterbi decoding of one feature sequence.
pub fn viterbi_decode<T: Scalar>(
    model: &CrfModel<T>,
    xs: &[FeatureVector<T>],
) -> Result<TagSequence, CrfError> {
    model.decode(xs)
}
