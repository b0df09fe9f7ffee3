//! Inter-annotator agreement between two annotation versions of a corpus.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_rational::Ratio;
use serde::Serialize;

use crate::conllulex::{Construal, Corpus, LabelDimension};
use crate::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AgreementError {
    #[error("sentence {0:?} is tokenized differently in the two versions")]
    TokenizationMismatch(String),
    #[error("no aligned pairs")]
    Empty,
    #[error("degenerate marginals: both annotators use one identical label but disagree")]
    DegenerateMarginals,
}

/// The same target as labeled by annotators A and B.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlignedPair {
    pub sent_id: String,
    pub span: Vec<usize>,
    pub lemma: String,
    pub a: Construal,
    pub b: Construal,
}

impl AlignedPair {
    pub fn agrees(&self, dimension: LabelDimension) -> bool {
        match dimension {
            LabelDimension::Scene => self.a.scene == self.b.scene,
            LabelDimension::Function => self.a.function == self.b.function,
            LabelDimension::Construal => self.a == self.b,
        }
    }
}

/// Pairs up targets labeled in both versions, in the order of `a`.
///
/// Sentences are matched by `sent_id`; a shared sentence whose token forms
/// differ is an error. Targets labeled in only one version, or with
/// different spans, are dropped.
pub fn align_double_annotations(a: &Corpus, b: &Corpus) -> Result<Vec<AlignedPair>, AgreementError> {
    let b_sents: HashMap<&str, _> = b
        .sentences
        .iter()
        .map(|s| (s.sent_id.as_str(), s))
        .collect();
    let mut pairs = Vec::new();
    for sa in &a.sentences {
        let Some(sb) = b_sents.get(sa.sent_id.as_str()) else {
            continue;
        };
        let same_tokens = sa.tokens.len() == sb.tokens.len()
            && sa.tokens.iter().zip(&sb.tokens).all(|(x, y)| x.form == y.form);
        if !same_tokens {
            return Err(AgreementError::TokenizationMismatch(sa.sent_id.clone()));
        }
        let (ta, _) = crate::conllulex::extract_targets(sa, &a.inventory);
        let (tb, _) = crate::conllulex::extract_targets(sb, &b.inventory);
        let by_span: HashMap<&[usize], &Construal> =
            tb.iter().map(|t| (t.span.as_slice(), &t.construal)).collect();
        for t in &ta {
            if let Some(&other) = by_span.get(t.span.as_slice()) {
                pairs.push(AlignedPair {
                    sent_id: t.sent_id.clone(),
                    span: t.span.clone(),
                    lemma: t.lemma.clone(),
                    a: t.construal.clone(),
                    b: other.clone(),
                });
            }
        }
    }
    Ok(pairs)
}

/// Exact fraction of pairs whose labels agree on `dimension`.
pub fn raw_agreement_exact(
    pairs: &[AlignedPair],
    dimension: LabelDimension,
) -> Result<Ratio<u64>, AgreementError> {
    if pairs.is_empty() {
        return Err(AgreementError::Empty);
    }
    let agree = pairs.iter().filter(|p| p.agrees(dimension)).count() as u64;
    Ok(Ratio::new(agree, pairs.len() as u64))
}

pub fn raw_agreement<T: Scalar>(
    pairs: &[AlignedPair],
    dimension: LabelDimension,
) -> Result<T, AgreementError> {
    let r = raw_agreement_exact(pairs, dimension)?;
    Ok(ratio_to_scalar(*r.numer() as i64, *r.denom() as i64))
}

/// Cohen's kappa as an exact fraction.
///
/// With `n` pairs, `o` agreements and marginal label counts `a_k`, `b_k` over
/// the union of observed labels,
/// `kappa = (o*n - sum a_k b_k) / (n^2 - sum a_k b_k)`.
pub fn cohens_kappa_exact(
    pairs: &[AlignedPair],
    dimension: LabelDimension,
) -> Result<Ratio<i64>, AgreementError> {
    if pairs.is_empty() {
        return Err(AgreementError::Empty);
    }
    let n = pairs.len() as i64;
    let mut marg_a: BTreeMap<String, i64> = BTreeMap::new();
    let mut marg_b: BTreeMap<String, i64> = BTreeMap::new();
    let mut agree = 0i64;
    for p in pairs {
        *marg_a.entry(p.a.label(dimension)).or_default() += 1;
        *marg_b.entry(p.b.label(dimension)).or_default() += 1;
        agree += i64::from(p.agrees(dimension));
    }
    let labels: BTreeSet<&String> = marg_a.keys().chain(marg_b.keys()).collect();
    let expected: i64 = labels
        .into_iter()
        .map(|k| marg_a.get(k).copied().unwrap_or(0) * marg_b.get(k).copied().unwrap_or(0))
        .sum();
    let denom = n * n - expected;
    if denom == 0 {
        return if agree == n {
            Ok(Ratio::from_integer(1))
        } else {
            Err(AgreementError::DegenerateMarginals)
        };
    }
    Ok(Ratio::new(agree * n - expected, denom))
}

pub fn cohens_kappa<T: Scalar>(
    pairs: &[AlignedPair],
    dimension: LabelDimension,
) -> Result<T, AgreementError> {
    let k = cohens_kappa_exact(pairs, dimension)?;
    Ok(ratio_to_scalar(*k.numer(), *k.denom()))
}

fn ratio_to_scalar<T: Scalar>(num: i64, den: i64) -> T {
    T::from_i64(num).expect("numerator fits") / T::from_i64(den).expect("denominator fits")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaAgreement<T> {
    pub lemma: String,
    pub n: usize,
    pub scene: T,
    pub function: T,
    pub construal: T,
}

/// Raw agreement per lemma for lemmas with at least `min_n` pairs, sorted
/// by construal agreement, descending (ties: larger `n`, then lemma).
pub fn per_lemma_agreement<T: Scalar>(pairs: &[AlignedPair], min_n: usize) -> Vec<LemmaAgreement<T>> {
    let mut groups: BTreeMap<&str, Vec<AlignedPair>> = BTreeMap::new();
    for p in pairs {
        groups.entry(p.lemma.as_str()).or_default().push(p.clone());
    }
    let mut rows: Vec<LemmaAgreement<T>> = groups
        .into_iter()
        .filter(|(_, g)| g.len() >= min_n.max(1))
        .map(|(lemma, g)| LemmaAgreement {
            lemma: lemma.to_owned(),
            n: g.len(),
            scene: raw_agreement(&g, LabelDimension::Scene).expect("non-empty"),
            function: raw_agreement(&g, LabelDimension::Function).expect("non-empty"),
            construal: raw_agreement(&g, LabelDimension::Construal).expect("non-empty"),
        })
        .collect();
    rows.sort_by(|a, b| {
        b.construal
            .partial_cmp(&a.construal)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| b.n.cmp(&a.n))
            .then_with(|| a.lemma.cmp(&b.lemma))
    });
    rows
}
