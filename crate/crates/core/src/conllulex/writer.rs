use std::fmt::Write;

use super::model::{Corpus, Sentence, Token};

/// Serializes a corpus. Every sentence, including the last, is followed by
/// one blank line; an empty corpus produces an empty string.
pub fn write_corpus(corpus: &Corpus) -> String {
    let mut out = String::new();
    for sentence in &corpus.sentences {
        write_sentence(&mut out, sentence);
    }
    out
}

pub fn write_sentence(out: &mut String, sentence: &Sentence) {
    for c in &sentence.comments {
        out.push_str(c);
        out.push('\n');
    }
    let mut opaque = sentence.opaque_lines.iter().peekable();
    for (idx, token) in sentence.tokens.iter().enumerate() {
        while let Some(o) = opaque.next_if(|o| o.before <= idx) {
            out.push_str(&o.line);
            out.push('\n');
        }
        write_token(out, token);
    }
    for o in opaque {
        out.push_str(&o.line);
        out.push('\n');
    }
    out.push('\n');
}

fn write_token(out: &mut String, t: &Token) {
    let opt = |v: &Option<String>| v.as_deref().unwrap_or("_").to_owned();
    let smwe = t.smwe.map_or_else(|| "_".to_owned(), |s| s.to_string());
    let _ = writeln!(
        out,
        "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
        t.id,
        t.form,
        t.lemma,
        t.upos,
        t.xpos,
        t.feats,
        t.head,
        t.deprel,
        t.deps,
        t.misc,
        smwe,
        opt(&t.lexcat),
        opt(&t.lexlemma),
        opt(&t.ss),
        opt(&t.ss2),
        opt(&t.wmwe),
        opt(&t.wcat),
        opt(&t.wlemma),
        t.lextag,
    );
}
