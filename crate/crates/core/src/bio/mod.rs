//! BIO encoding of targets, projection onto subwords, and decoding back to
//! labeled spans.

mod codec;
mod interchange;
mod subword;

pub use codec::{
    decode_bio, encode_bio, encode_targets, BioError, Decoded, Span, Tag, TagSequence, Unit,
};
pub use interchange::{read_tagged, write_tagged, TaggedSentence};
pub use subword::{
    project_subwords, segment_forms, CharBigramSegmenter, Segmenter, WholeTokenSegmenter,
};
