use super::diagnostic::{Diagnostic, Rule};
use super::inventory::{LabelInventory, TargetClass};
use super::model::{Sentence, Target};

/// Extracts one target per labeled token group.
///
/// Spans follow the `smwe` grouping. Tokens whose labels are unpaired, sit on
/// an MWE continuation, or are missing from the inventory yield a diagnostic
/// and no target. Lemmas absent from the lexicon are classified as
/// adpositions with a warning.
pub fn extract_targets(
    sentence: &Sentence,
    inventory: &LabelInventory,
) -> (Vec<Target>, Vec<Diagnostic>) {
    let mut targets = Vec::new();
    let mut diags = Vec::new();
    let sid = sentence.sent_id.as_str();

    for token in &sentence.tokens {
        if token.ss.is_none() && token.ss2.is_none() {
            continue;
        }
        let Some(construal) = token.construal() else {
            diags.push(
                Diagnostic::error(Rule::UnpairedConstrual, "ss and ss2 must both be present")
                    .in_sentence(sid)
                    .at_token(token.id),
            );
            continue;
        };
        if token.is_mwe_continuation() {
            diags.push(
                Diagnostic::error(
                    Rule::LabelOnMweContinuation,
                    "labels belong on the first token of a multiword target",
                )
                .in_sentence(sid)
                .at_token(token.id),
            );
            continue;
        }
        if let Some(bad) = [&construal.scene, &construal.function]
            .into_iter()
            .find(|l| !inventory.contains(l))
        {
            diags.push(
                Diagnostic::error(Rule::UnknownLabel, format!("label {bad:?} is not in the inventory"))
                    .in_sentence(sid)
                    .at_token(token.id),
            );
            continue;
        }

        let span: Vec<usize> = match token.smwe {
            Some(slot) => sentence
                .tokens
                .iter()
                .filter(|t| t.smwe.is_some_and(|s| s.group == slot.group))
                .map(|t| t.id)
                .collect(),
            None => vec![token.id],
        };
        let lemma = match &token.lexlemma {
            Some(l) => l.clone(),
            None => span
                .iter()
                .filter_map(|&id| sentence.token(id))
                .map(|t| t.lemma.as_str())
                .collect::<Vec<_>>()
                .join(" "),
        };
        let klass = match inventory.lookup_class(&lemma) {
            Some(k) => k,
            None => {
                diags.push(
                    Diagnostic::warning(
                        Rule::UnknownTargetLemma,
                        format!("lemma {lemma:?} not in the target lexicon, classified as adposition"),
                    )
                    .in_sentence(sid)
                    .at_token(token.id),
                );
                TargetClass::Adposition
            }
        };
        targets.push(Target {
            sent_id: sentence.sent_id.clone(),
            span,
            lemma,
            klass,
            construal,
        });
    }
    (targets, diags)
}
