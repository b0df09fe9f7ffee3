use std::collections::{BTreeMap, HashSet};

use super::diagnostic::{Diagnostic, Rule};
use super::inventory::LabelInventory;
use super::model::{strip_prefix, Corpus, Sentence};

/// Checks every token and sentence invariant of `corpus` against
/// `inventory`. The result is empty iff the corpus is well formed.
pub fn validate(corpus: &Corpus, inventory: &LabelInventory) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for sentence in &corpus.sentences {
        if !seen.insert(sentence.sent_id.as_str()) {
            out.push(
                Diagnostic::error(
                    Rule::DuplicateSentId,
                    format!("sent_id {:?} appears more than once", sentence.sent_id),
                )
                .in_sentence(&sentence.sent_id),
            );
        }
        out.extend(check_sentence(sentence, inventory, &|_| None));
    }
    out
}

/// Sentence-level checks. `line_of` maps a token index to its source line.
pub(crate) fn check_sentence(
    sentence: &Sentence,
    inventory: &LabelInventory,
    line_of: &dyn Fn(usize) -> Option<usize>,
) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let sid = sentence.sent_id.as_str();
    let diag = |d: Diagnostic, idx: usize, id: usize| {
        d.at_line(line_of(idx)).in_sentence(sid).at_token(id)
    };

    for (idx, token) in sentence.tokens.iter().enumerate() {
        if token.id != idx + 1 {
            out.push(diag(
                Diagnostic::error(
                    Rule::NonConsecutiveIds,
                    format!("expected token id {}, found {}", idx + 1, token.id),
                ),
                idx,
                token.id,
            ));
        }
        match (&token.ss, &token.ss2) {
            (Some(_), None) | (None, Some(_)) => out.push(diag(
                Diagnostic::error(
                    Rule::UnpairedConstrual,
                    "ss and ss2 must both be present or both absent",
                ),
                idx,
                token.id,
            )),
            (Some(ss), Some(ss2)) => {
                let (scene, function) = (strip_prefix(ss), strip_prefix(ss2));
                for label in [scene, function] {
                    if !inventory.contains(label) {
                        out.push(diag(
                            Diagnostic::error(
                                Rule::UnknownLabel,
                                format!("label {label:?} is not in the inventory"),
                            ),
                            idx,
                            token.id,
                        ));
                    }
                }
                if (inventory.is_special(scene) || inventory.is_special(function))
                    && scene != function
                {
                    out.push(diag(
                        Diagnostic::error(
                            Rule::SpecialMismatch,
                            format!("special label construal {scene}~>{function} must be congruent"),
                        ),
                        idx,
                        token.id,
                    ));
                }
                if token.is_mwe_continuation() {
                    out.push(diag(
                        Diagnostic::error(
                            Rule::LabelOnMweContinuation,
                            "labels belong on the first token of a multiword target",
                        ),
                        idx,
                        token.id,
                    ));
                }
            }
            (None, None) => {}
        }
    }

    let mut groups: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for (idx, token) in sentence.tokens.iter().enumerate() {
        if let Some(slot) = token.smwe {
            groups.entry(slot.group).or_default().push((idx, slot.position));
        }
    }
    for (group, members) in groups {
        let positions_ok = members
            .iter()
            .enumerate()
            .all(|(k, &(_, pos))| pos == k + 1);
        let contiguous = members.windows(2).all(|w| w[1].0 == w[0].0 + 1);
        if !positions_ok || !contiguous || members.len() < 2 {
            let (idx, _) = members[0];
            out.push(diag(
                Diagnostic::error(
                    Rule::MalformedMwe,
                    format!(
                        "mwe group {group} must cover consecutive tokens numbered 1..k with k >= 2"
                    ),
                ),
                idx,
                sentence.tokens[idx].id,
            ));
        }
    }
    out
}
