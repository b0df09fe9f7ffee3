use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::conllulex::Corpus;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SplitError {
    #[error("need at least 3 sentences to split, found {0}")]
    TooSmall(usize),
    #[error("split ratios must be positive and sum to 1, got {0:?}")]
    BadRatios([f64; 3]),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Bucket {
    Train,
    Dev,
    Test,
}

impl Bucket {
    pub const ALL: [Bucket; 3] = [Bucket::Train, Bucket::Dev, Bucket::Test];
}

impl fmt::Display for Bucket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Bucket::Train => "train",
            Bucket::Dev => "dev",
            Bucket::Test => "test",
        })
    }
}

/// A seeded train/dev/test partition of a corpus by sentence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Split {
    pub seed: u64,
    pub ratios: [f64; 3],
    /// `(sent_id, bucket)` in corpus order.
    pub membership: Vec<(String, Bucket)>,
}

impl Split {
    pub fn bucket_of(&self, sent_id: &str) -> Option<Bucket> {
        self.membership
            .iter()
            .find(|(id, _)| id == sent_id)
            .map(|&(_, b)| b)
    }

    pub fn size(&self, bucket: Bucket) -> usize {
        self.membership.iter().filter(|(_, b)| *b == bucket).count()
    }

    /// The sentences of `corpus` in `bucket`, in corpus order.
    pub fn select(&self, corpus: &Corpus, bucket: Bucket) -> Corpus {
        let ids: std::collections::HashSet<&str> = self
            .membership
            .iter()
            .filter(|(_, b)| *b == bucket)
            .map(|(id, _)| id.as_str())
            .collect();
        corpus.filter(|s| ids.contains(s.sent_id.as_str()))
    }
}

pub const DEFAULT_RATIOS: [f64; 3] = [0.8, 0.1, 0.1];

/// Bucket sizes by largest remainder; ties go to the earlier bucket.
pub fn bucket_sizes(n: usize, ratios: [f64; 3]) -> [usize; 3] {
    let quotas = ratios.map(|r| {
        let q = r * n as f64;
        if (q - q.round()).abs() < 1e-9 {
            q.round()
        } else {
            q
        }
    });
    let mut sizes = quotas.map(|q| q.floor() as usize);
    let mut left = n - sizes.iter().sum::<usize>();
    let mut order = [0, 1, 2];
    order.sort_by(|&a, &b| {
        let fa = quotas[a] - quotas[a].floor();
        let fb = quotas[b] - quotas[b].floor();
        fb.partial_cmp(&fa).unwrap_or(std::cmp::Ordering::Equal).then(a.cmp(&b))
    });
    for &i in order.iter().cycle() {
        if left == 0 {
            break;
        }
        sizes[i] += 1;
        left -= 1;
    }
    sizes
}

/// Shuffles sentences with a generator seeded by `seed`, then assigns
/// contiguous runs to train, dev and test.
pub fn split_corpus(corpus: &Corpus, ratios: [f64; 3], seed: u64) -> Result<Split, SplitError> {
    let n = corpus.sentences.len();
    if n < 3 {
        return Err(SplitError::TooSmall(n));
    }
    if ratios.iter().any(|&r| !(r > 0.0)) || (ratios.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
        return Err(SplitError::BadRatios(ratios));
    }
    let mut order: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    order.shuffle(&mut rng);

    let sizes = bucket_sizes(n, ratios);
    let mut assigned = vec![Bucket::Train; n];
    let mut pos = 0;
    for (bucket, size) in Bucket::ALL.into_iter().zip(sizes) {
        for &idx in &order[pos..pos + size] {
            assigned[idx] = bucket;
        }
        pos += size;
    }
    Ok(Split {
        seed,
        ratios,
        membership: corpus
            .sentences
            .iter()
            .zip(assigned)
            .map(|(s, b)| (s.sent_id.clone(), b))
            .collect(),
    })
}
