//! `FORM<TAB>TAG` files: one unit per line, a blank line after each
//! sentence.

use super::codec::{BioError, Tag, TagSequence};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedSentence {
    pub forms: Vec<String>,
    pub tags: TagSequence,
}

pub fn write_tagged<'a>(sentences: impl IntoIterator<Item = (&'a [String], &'a TagSequence)>) -> String {
    let mut out = String::new();
    for (forms, seq) in sentences {
        for (form, tag) in forms.iter().zip(&seq.tags) {
            out.push_str(form);
            out.push('\t');
            out.push_str(&tag.to_string());
            out.push('\n');
        }
        out.push('\n');
    }
    out
}

/// Reads a tagged file as token-unit sequences.
pub fn read_tagged(text: &str) -> Result<Vec<TaggedSentence>, BioError> {
    let mut out = Vec::new();
    let mut forms = Vec::new();
    let mut tags = Vec::new();
    let flush = |forms: &mut Vec<String>, tags: &mut Vec<Tag>, out: &mut Vec<TaggedSentence>| {
        if !forms.is_empty() {
            out.push(TaggedSentence {
                forms: std::mem::take(forms),
                tags: TagSequence::tokens(std::mem::take(tags)),
            });
        }
    };
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            flush(&mut forms, &mut tags, &mut out);
            continue;
        }
        let (form, tag) = line.rsplit_once('\t').ok_or_else(|| BioError::Interchange {
            line: i + 1,
            message: "expected FORM<TAB>TAG".into(),
        })?;
        let tag = tag.parse::<Tag>().map_err(|e| BioError::Interchange {
            line: i + 1,
            message: e.to_string(),
        })?;
        forms.push(form.to_owned());
        tags.push(tag);
    }
    flush(&mut forms, &mut tags, &mut out);
    Ok(out)
}
