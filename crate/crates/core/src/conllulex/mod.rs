//! CoNLL-U-Lex corpora: the in-memory model, reader, writer, validation
//! and target extraction.
//!
//! A token line has 19 tab-separated fields: the ten CoNLL-U columns
//! followed by `SMWE LEXCAT LEXLEMMA SS SS2 WMWE WCAT WLEMMA LEXTAG`. Empty
//! fields hold `_`; sentences end with a blank line.

mod diagnostic;
mod inventory;
mod model;
mod reader;
mod targets;
mod validate;
mod writer;

pub use diagnostic::{Diagnostic, Rule, Severity};
pub use inventory::{InventoryError, LabelInventory, TargetClass, DEFAULT_INVENTORY};
pub use model::{
    strip_prefix, Construal, Corpus, LabelDimension, MweSlot, OpaqueLine, Sentence, Target,
    Token, N_COLUMNS,
};
pub use reader::{parse_corpus, read_corpus, CorpusError, ParseMode, Parsed};
pub use targets::extract_targets;
pub use validate::validate;
pub use writer::{write_corpus, write_sentence};
