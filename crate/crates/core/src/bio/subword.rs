use super::codec::{BioError, Tag, TagSequence, Unit};

/// Splits a token into subword strings.
pub trait Segmenter {
    fn segment(&self, token: &str) -> Vec<String>;
}

impl<F: Fn(&str) -> Vec<String>> Segmenter for F {
    fn segment(&self, token: &str) -> Vec<String> {
        self(token)
    }
}

/// Deterministic segmenter that cuts a token into consecutive character
/// pairs (the last piece may be a single character). The first piece is
/// marked with a leading `▁`.
#[derive(Debug, Clone, Copy, Default)]
pub struct CharBigramSegmenter;

impl Segmenter for CharBigramSegmenter {
    fn segment(&self, token: &str) -> Vec<String> {
        let chars: Vec<char> = token.chars().collect();
        if chars.is_empty() {
            return vec!["▁".to_owned()];
        }
        chars
            .chunks(2)
            .enumerate()
            .map(|(i, c)| {
                let piece: String = c.iter().collect();
                if i == 0 {
                    format!("▁{piece}")
                } else {
                    piece
                }
            })
            .collect()
    }
}

/// One subword per token.
#[derive(Debug, Clone, Copy, Default)]
pub struct WholeTokenSegmenter;

impl Segmenter for WholeTokenSegmenter {
    fn segment(&self, token: &str) -> Vec<String> {
        vec![token.to_owned()]
    }
}

pub fn segment_forms<'a, S: Segmenter + ?Sized>(
    segmenter: &S,
    forms: impl IntoIterator<Item = &'a str>,
) -> Vec<Vec<String>> {
    forms.into_iter().map(|f| segmenter.segment(f)).collect()
}

/// Projects token tags onto subwords: the first subword of a token keeps its
/// tag, later subwords of a `B` or `I` token become `I`, and subwords of an
/// `O` token stay `O`.
pub fn project_subwords(
    seq: &TagSequence,
    segmentation: &[Vec<String>],
) -> Result<TagSequence, BioError> {
    let tokens = seq.to_token_unit();
    if segmentation.len() != tokens.len() {
        return Err(BioError::SegmentationLength {
            expected: tokens.len(),
            found: segmentation.len(),
        });
    }
    let mut tags = Vec::new();
    let mut alignment = Vec::new();
    for (tok, (tag, pieces)) in tokens.tags.iter().zip(segmentation).enumerate() {
        if pieces.is_empty() {
            return Err(BioError::EmptySegment(tok));
        }
        for k in 0..pieces.len() {
            tags.push(match (k, tag) {
                (0, t) => t.clone(),
                (_, Tag::O) => Tag::O,
                _ => Tag::I,
            });
            alignment.push(tok);
        }
    }
    Ok(TagSequence {
        tags,
        unit: Unit::Subword,
        alignment: Some(alignment),
    })
}
