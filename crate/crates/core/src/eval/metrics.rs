use serde::Serialize;

use crate::bio::{decode_bio, Tag, TagSequence};
use crate::conllulex::{Construal, LabelDimension};
use crate::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("{gold} gold sentences but {pred} predicted")]
    SentenceCount { gold: usize, pred: usize },
    #[error("sentence {index}: gold has {gold} tokens, prediction {pred}")]
    Length {
        index: usize,
        gold: usize,
        pred: usize,
    },
}

/// B-tag precision, recall and F1 for one label dimension.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalReport<T> {
    pub dimension: LabelDimension,
    pub precision: T,
    pub recall: T,
    pub f1: T,
    pub gold_b: usize,
    pub pred_b: usize,
    pub matches: usize,
    /// Stray `I` tags repaired while decoding the predictions.
    pub repairs: usize,
    /// No predicted `B` tags; precision is reported as 0.
    pub precision_undefined: bool,
}

/// Harmonic mean, 0 when both are 0.
pub fn f1<T: Scalar>(precision: T, recall: T) -> T {
    if precision + recall == T::zero() {
        T::zero()
    } else {
        T::lit(2.0) * precision * recall / (precision + recall)
    }
}

fn project(label: &str, dimension: LabelDimension) -> String {
    match label.parse::<Construal>() {
        Ok(c) => c.label(dimension),
        Err(_) => label.to_owned(),
    }
}

/// Scores predicted `B` tags against gold `B` tags.
///
/// A match is a token where both sequences have `B` and the labels agree on
/// `dimension`; labels written as construals (`Scene~>Function`) are
/// projected first. Subword sequences are collapsed to tokens. Counts are
/// micro-averaged over all sentences.
pub fn evaluate<T: Scalar>(
    gold: &[TagSequence],
    pred: &[TagSequence],
    dimension: LabelDimension,
) -> Result<EvalReport<T>, EvalError> {
    if gold.len() != pred.len() {
        return Err(EvalError::SentenceCount {
            gold: gold.len(),
            pred: pred.len(),
        });
    }
    let (mut gold_b, mut pred_b, mut matches, mut repairs) = (0, 0, 0, 0);
    for (index, (g, p)) in gold.iter().zip(pred).enumerate() {
        let (g, p) = (g.to_token_unit(), p.to_token_unit());
        if g.len() != p.len() {
            return Err(EvalError::Length {
                index,
                gold: g.len(),
                pred: p.len(),
            });
        }
        repairs += decode_bio(&p).repairs;
        for (gt, pt) in g.tags.iter().zip(&p.tags) {
            gold_b += usize::from(gt.is_b());
            pred_b += usize::from(pt.is_b());
            if let (Tag::B(gl), Tag::B(pl)) = (gt, pt) {
                matches += usize::from(project(gl, dimension) == project(pl, dimension));
            }
        }
    }
    let ratio = |a: usize, b: usize| {
        if b == 0 {
            T::zero()
        } else {
            T::from_count(a) / T::from_count(b)
        }
    };
    let precision = ratio(matches, pred_b);
    let recall = ratio(matches, gold_b);
    Ok(EvalReport {
        dimension,
        precision,
        recall,
        f1: f1(precision, recall),
        gold_b,
        pred_b,
        matches,
        repairs,
        precision_undefined: pred_b == 0,
    })
}
