use std::collections::HashSet;
use std::path::Path;
use std::sync::Arc;

use super::diagnostic::{Diagnostic, Rule};
use super::inventory::LabelInventory;
use super::model::{Corpus, OpaqueLine, Sentence, Token, N_COLUMNS};
use super::validate::check_sentence;

/// How parse errors are handled.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum ParseMode {
    /// Any error-level diagnostic fails the parse.
    #[default]
    Strict,
    /// Malformed token lines are dropped and all diagnostics are returned.
    Lenient,
}

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{}", summarize(.0))]
    Invalid(Vec<Diagnostic>),
}

fn summarize(diags: &[Diagnostic]) -> String {
    let mut msg = diags
        .iter()
        .take(5)
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("\n");
    if diags.len() > 5 {
        msg.push_str(&format!("\n... and {} more", diags.len() - 5));
    }
    msg
}

/// A parsed corpus with the diagnostics that did not stop the parse.
#[derive(Debug, Clone)]
pub struct Parsed {
    pub corpus: Corpus,
    pub diagnostics: Vec<Diagnostic>,
}

/// Parses CoNLL-U-Lex text.
pub fn parse_corpus(
    input: &str,
    inventory: Arc<LabelInventory>,
    mode: ParseMode,
) -> Result<Parsed, CorpusError> {
    let mut builder = Builder::default();
    let mut diags = Vec::new();

    for (i, raw) in input.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim_end_matches(['\r', ' ']);
        if line.is_empty() {
            if let Some(s) = builder.finish(&inventory, &mut diags) {
                builder.sentences.push(s);
            }
            continue;
        }
        if line.starts_with('#') {
            builder.comments.push(line.to_owned());
            continue;
        }
        match parse_token_line(line) {
            Ok(Line::Token(token)) => {
                builder.tokens.push(token);
                builder.lines.push(lineno);
            }
            Ok(Line::Opaque(text)) => builder.opaque.push(OpaqueLine {
                before: builder.tokens.len(),
                line: text,
            }),
            Err(d) => diags.push(d.at_line(Some(lineno))),
        }
    }
    if let Some(s) = builder.finish(&inventory, &mut diags) {
        builder.sentences.push(s);
    }

    let mut seen = HashSet::new();
    for s in &builder.sentences {
        if !seen.insert(s.sent_id.clone()) {
            diags.push(
                Diagnostic::error(
                    Rule::DuplicateSentId,
                    format!("sent_id {:?} appears more than once", s.sent_id),
                )
                .in_sentence(&s.sent_id),
            );
        }
    }

    if mode == ParseMode::Strict && diags.iter().any(Diagnostic::is_error) {
        return Err(CorpusError::Invalid(
            diags.into_iter().filter(Diagnostic::is_error).collect(),
        ));
    }
    Ok(Parsed {
        corpus: Corpus::new(builder.sentences, inventory),
        diagnostics: diags,
    })
}

/// Reads and parses a corpus file.
pub fn read_corpus(
    path: impl AsRef<Path>,
    inventory: Arc<LabelInventory>,
    mode: ParseMode,
) -> Result<Parsed, CorpusError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| CorpusError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_corpus(&text, inventory, mode)
}

#[derive(Default)]
struct Builder {
    sentences: Vec<Sentence>,
    comments: Vec<String>,
    tokens: Vec<Token>,
    lines: Vec<usize>,
    opaque: Vec<OpaqueLine>,
}

impl Builder {
    fn finish(
        &mut self,
        inventory: &LabelInventory,
        diags: &mut Vec<Diagnostic>,
    ) -> Option<Sentence> {
        if self.tokens.is_empty() && self.comments.is_empty() && self.opaque.is_empty() {
            return None;
        }
        let comments = std::mem::take(&mut self.comments);
        let tokens = std::mem::take(&mut self.tokens);
        let lines = std::mem::take(&mut self.lines);
        let opaque_lines = std::mem::take(&mut self.opaque);
        let sent_id = comment_value(&comments, "sent_id")
            .unwrap_or_else(|| format!("auto-{}", self.sentences.len() + 1));
        let text = comment_value(&comments, "text").unwrap_or_default();
        let sentence = Sentence {
            sent_id,
            text,
            tokens,
            comments,
            opaque_lines,
        };
        diags.extend(check_sentence(&sentence, inventory, &|idx| {
            lines.get(idx).copied()
        }));
        Some(sentence)
    }
}

fn comment_value(comments: &[String], key: &str) -> Option<String> {
    comments.iter().find_map(|c| {
        let body = c.trim_start_matches('#').trim_start();
        let (k, v) = body.split_once('=')?;
        (k.trim() == key).then(|| v.trim().to_owned())
    })
}

enum Line {
    Token(Token),
    Opaque(String),
}

fn parse_token_line(line: &str) -> Result<Line, Diagnostic> {
    let f: Vec<&str> = line.split('\t').collect();
    if f.len() != N_COLUMNS {
        return Err(Diagnostic::error(
            Rule::WrongColumnCount,
            format!(
                "expected {N_COLUMNS} fields, found {}",
                f.len()
            ),
        ));
    }
    if f[0].contains(['-', '.']) {
        return Ok(Line::Opaque(line.to_owned()));
    }
    let bad = |what: &str, v: &str| {
        Diagnostic::error(Rule::BadField, format!("{what}: cannot parse {v:?}"))
    };
    let id = f[0]
        .parse::<usize>()
        .ok()
        .filter(|&v| v > 0)
        .ok_or_else(|| bad("id", f[0]))?;
    let head = f[6].parse::<usize>().map_err(|_| bad("head", f[6]))?;
    let opt = |s: &str| (s != "_").then(|| s.to_owned());
    let smwe = match opt(f[10]) {
        Some(s) => Some(s.parse().map_err(|e: String| bad("smwe", &e))?),
        None => None,
    };
    Ok(Line::Token(Token {
        id,
        form: f[1].to_owned(),
        lemma: f[2].to_owned(),
        upos: f[3].to_owned(),
        xpos: f[4].to_owned(),
        feats: f[5].to_owned(),
        head,
        deprel: f[7].to_owned(),
        deps: f[8].to_owned(),
        misc: f[9].to_owned(),
        smwe,
        lexcat: opt(f[11]),
        lexlemma: opt(f[12]),
        ss: opt(f[13]),
        ss2: opt(f[14]),
        wmwe: opt(f[15]),
        wcat: opt(f[16]),
        wlemma: opt(f[17]),
        lextag: f[18].to_owned(),
    }))
}
