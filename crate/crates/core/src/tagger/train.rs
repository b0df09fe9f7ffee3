use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::crf::{CrfError, CrfModel, LabelAlphabet};
use super::features::{FeatureAlphabet, FeatureProvider, FeatureVector};
use crate::bio::{encode_bio, TagSequence};
use crate::conllulex::{Corpus, LabelDimension};
use crate::eval::evaluate;
use crate::Scalar;

/// Learning rates worth trying.
pub const LEARNING_RATE_GRID: [f64; 4] = [0.0001, 0.0002, 0.0005, 0.001];
pub const EPOCH_GRID: [usize; 2] = [30, 60];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrfConfig<T> {
    pub learning_rate: T,
    pub epochs: usize,
    pub l2: T,
    pub batch_size: usize,
    pub seed: u64,
    /// Features seen fewer times in training are dropped.
    pub min_feature_count: usize,
}

impl<T: Scalar> Default for CrfConfig<T> {
    fn default() -> Self {
        CrfConfig {
            learning_rate: T::lit(0.001),
            epochs: 30,
            l2: T::lit(1e-4),
            batch_size: 16,
            seed: 42,
            min_feature_count: 1,
        }
    }
}

/// Per-epoch training record.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EpochLog<T> {
    pub epoch: usize,
    /// Full training objective after the epoch's updates.
    pub objective: T,
    /// `None` when the dev corpus is empty.
    pub dev_f1: Option<T>,
}

#[derive(Debug, Clone)]
pub struct Trained<T> {
    pub model: CrfModel<T>,
    pub history: Vec<EpochLog<T>>,
    /// Epoch (1-based) whose weights were kept.
    pub best_epoch: usize,
}

type Instance<T> = (Vec<FeatureVector<T>>, Vec<usize>);

fn gold_sequences(corpus: &Corpus, dim: LabelDimension) -> Result<Vec<TagSequence>, CrfError> {
    corpus
        .sentences
        .iter()
        .map(|s| encode_bio(s, &corpus.inventory, dim).map_err(CrfError::from))
        .collect()
}

/// Trains a CRF by mini-batch gradient descent on `train`, scoring `dev`
/// after every epoch and keeping the weights of the best dev F1 (earliest
/// on ties; the last epoch when `dev` is empty).
pub fn train_crf<T: Scalar, P: FeatureProvider<T> + ?Sized>(
    train: &Corpus,
    dev: &Corpus,
    dimension: LabelDimension,
    config: &CrfConfig<T>,
    provider: &P,
) -> Result<Trained<T>, CrfError> {
    if train.sentences.is_empty() {
        return Err(CrfError::EmptyTrain);
    }
    let gold = gold_sequences(train, dimension)?;
    let labels = LabelAlphabet::bio(
        gold.iter()
            .flat_map(|s| s.tags.iter().filter_map(|t| t.label().map(str::to_owned))),
    );

    let named: Vec<Vec<Vec<(String, T)>>> = train
        .sentences
        .iter()
        .map(|s| (0..s.len()).map(|i| provider.features(s, i)).collect())
        .collect();
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for tok in named.iter().flatten() {
        for (name, _) in tok {
            *counts.entry(name.as_str()).or_default() += 1;
        }
    }
    let features = FeatureAlphabet::from_names(
        counts
            .into_iter()
            .filter(|&(_, c)| c >= config.min_feature_count.max(1))
            .map(|(n, _)| n.to_owned())
            .collect(),
    );

    let mut model = CrfModel::new(labels, features, dimension, config.clone());
    model.feature_set = provider.id();

    let data: Vec<Instance<T>> = named
        .iter()
        .zip(&gold)
        .map(|(toks, seq)| {
            let xs = toks.iter().map(|f| model.features.vectorize(f)).collect();
            Ok((xs, model.labels.indices(seq)?))
        })
        .collect::<Result<_, CrfError>>()?;
    let dev_gold = gold_sequences(dev, dimension)?;
    let dev_x: Vec<Vec<FeatureVector<T>>> = dev
        .sentences
        .iter()
        .map(|s| model.featurize(provider, s))
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut order: Vec<usize> = (0..data.len()).collect();
    let batch_size = config.batch_size.max(1);
    let mut history = Vec::with_capacity(config.epochs);
    let mut best: Option<(T, usize, super::crf::Weights<T>)> = None;

    for epoch in 1..=config.epochs {
        order.shuffle(&mut rng);
        for (b, chunk) in order.chunks(batch_size).enumerate() {
            let batch: Vec<Instance<T>> = chunk.iter().map(|&i| data[i].clone()).collect();
            let (obj, grad) = model.objective(&batch, config.l2, true)?;
            if !obj.is_finite() {
                return Err(CrfError::NonFinite { epoch, batch: b });
            }
            let grad = grad.expect("gradient requested");
            model.weights.add_scaled(-config.learning_rate, &grad);
        }
        let (objective, _) = model.objective(&data, config.l2, false)?;
        if !objective.is_finite() {
            return Err(CrfError::NonFinite {
                epoch,
                batch: usize::MAX,
            });
        }
        let dev_f1 = if dev_x.is_empty() {
            None
        } else {
            let pred = dev_x
                .iter()
                .map(|xs| model.decode(xs))
                .collect::<Result<Vec<_>, _>>()?;
            let report = evaluate::<T>(&dev_gold, &pred, dimension)
                .expect("dev predictions align with gold");
            Some(report.f1)
        };
        match dev_f1 {
            Some(f) => log::info!("epoch {epoch}: objective {objective:.4}, dev F1 {f:.4}"),
            None => log::info!("epoch {epoch}: objective {objective:.4}"),
        }
        let score = dev_f1.unwrap_or(T::zero());
        let improved = match &best {
            None => true,
            Some((s, _, _)) => dev_f1.is_none() || score > *s,
        };
        if improved {
            best = Some((score, epoch, model.weights.clone()));
        }
        history.push(EpochLog {
            epoch,
            objective,
            dev_f1,
        });
    }

    let best_epoch = match best {
        Some((_, epoch, weights)) => {
            model.weights = weights;
            epoch
        }
        None => 0,
    };
    Ok(Trained {
        model,
        history,
        best_epoch,
    })
}
