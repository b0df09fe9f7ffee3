use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::conllulex::{extract_targets, LabelDimension, LabelInventory, Sentence, Target};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BioError {
    #[error("overlapping targets in sentence {0:?}")]
    OverlappingTargets(String),
    #[error("token {0} has no subwords")]
    EmptySegment(usize),
    #[error("segmentation covers {found} tokens, sequence has {expected}")]
    SegmentationLength { expected: usize, found: usize },
    #[error("cannot parse tag {0:?}")]
    BadTag(String),
    #[error("line {line}: {message}")]
    Interchange { line: usize, message: String },
}

/// A BIO tag. Only `B` carries a label.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Tag {
    O,
    B(String),
    I,
}

impl Tag {
    pub fn label(&self) -> Option<&str> {
        match self {
            Tag::B(l) => Some(l),
            _ => None,
        }
    }

    pub fn is_b(&self) -> bool {
        matches!(self, Tag::B(_))
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tag::O => f.write_str("O"),
            Tag::I => f.write_str("I"),
            Tag::B(l) => write!(f, "B-{l}"),
        }
    }
}

impl FromStr for Tag {
    type Err = BioError;

    /// `O`, `I`, `I-<anything>` or `B-<label>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "O" => Ok(Tag::O),
            "I" => Ok(Tag::I),
            _ if s.starts_with("I-") => Ok(Tag::I),
            _ => match s.strip_prefix("B-") {
                Some(l) if !l.is_empty() => Ok(Tag::B(l.to_owned())),
                _ => Err(BioError::BadTag(s.to_owned())),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Unit {
    Token,
    Subword,
}

/// Tags over tokens, or over subwords with an alignment back to tokens.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TagSequence {
    pub tags: Vec<Tag>,
    pub unit: Unit,
    /// For subword sequences, the token index of each subword.
    pub alignment: Option<Vec<usize>>,
}

impl TagSequence {
    pub fn tokens(tags: Vec<Tag>) -> Self {
        TagSequence {
            tags,
            unit: Unit::Token,
            alignment: None,
        }
    }

    pub fn len(&self) -> usize {
        self.tags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tags.is_empty()
    }

    /// No `I` at the start or directly after `O`.
    pub fn is_valid(&self) -> bool {
        let mut prev = &Tag::O;
        for t in &self.tags {
            if *t == Tag::I && *prev == Tag::O {
                return false;
            }
            prev = t;
        }
        true
    }

    pub fn n_b(&self) -> usize {
        self.tags.iter().filter(|t| t.is_b()).count()
    }

    /// The token-level view: each token takes the tag of its first subword.
    pub fn to_token_unit(&self) -> TagSequence {
        let Some(alignment) = self.alignment.as_ref().filter(|_| self.unit == Unit::Subword)
        else {
            return TagSequence::tokens(self.tags.clone());
        };
        let mut tags = Vec::new();
        for (tag, &tok) in self.tags.iter().zip(alignment) {
            if tok == tags.len() {
                tags.push(tag.clone());
            }
        }
        TagSequence::tokens(tags)
    }
}

/// Token-level BIO tags for `targets` over a sentence of `n_tokens` tokens.
pub fn encode_targets(
    sent_id: &str,
    n_tokens: usize,
    targets: &[Target],
    dimension: LabelDimension,
) -> Result<TagSequence, BioError> {
    let mut tags = vec![Tag::O; n_tokens];
    let mut covered = vec![false; n_tokens];
    for t in targets {
        for (k, &id) in t.span.iter().enumerate() {
            let idx = id - 1;
            if idx >= n_tokens || covered[idx] {
                return Err(BioError::OverlappingTargets(sent_id.to_owned()));
            }
            covered[idx] = true;
            tags[idx] = if k == 0 {
                Tag::B(t.construal.label(dimension))
            } else {
                Tag::I
            };
        }
    }
    Ok(TagSequence::tokens(tags))
}

/// BIO-encodes the targets of `sentence`, labeling `B` tags along
/// `dimension`.
pub fn encode_bio(
    sentence: &Sentence,
    inventory: &LabelInventory,
    dimension: LabelDimension,
) -> Result<TagSequence, BioError> {
    let (targets, _) = extract_targets(sentence, inventory);
    encode_targets(&sentence.sent_id, sentence.len(), &targets, dimension)
}

/// A labeled span over tokens, `start..end` (0-based, end exclusive).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
    pub label: String,
}

impl Span {
    /// 1-based token ids covered by the span.
    pub fn token_ids(&self) -> Vec<usize> {
        (self.start + 1..=self.end).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Decoded {
    pub spans: Vec<Span>,
    /// Number of `I` tags that followed `O` (or opened the sequence) and
    /// were read as `O`.
    pub repairs: usize,
}

/// Reads spans off a tag sequence. Never fails: stray `I` tags are repaired
/// to `O` and counted. Subword sequences are first collapsed to tokens.
pub fn decode_bio(seq: &TagSequence) -> Decoded {
    let tokens = seq.to_token_unit();
    let mut out = Decoded::default();
    let mut open: Option<Span> = None;
    for (i, tag) in tokens.tags.iter().enumerate() {
        match tag {
            Tag::B(label) => {
                out.spans.extend(open.take());
                open = Some(Span {
                    start: i,
                    end: i + 1,
                    label: label.clone(),
                });
            }
            Tag::I => match open.as_mut() {
                Some(span) => span.end = i + 1,
                None => out.repairs += 1,
            },
            Tag::O => out.spans.extend(open.take()),
        }
    }
    out.spans.extend(open);
    out
}
