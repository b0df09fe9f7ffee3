//! Seeded synthetic corpora for tests and benchmarks.

use std::sync::Arc;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conllulex::{Corpus, LabelInventory, MweSlot, Sentence, Token};

const FILLER: [(&str, &str, &str); 12] = [
    ("vah", "vah", "PRON"),
    ("maiṁ", "maiṁ", "PRON"),
    ("ghar", "ghar", "NOUN"),
    ("kitāb", "kitāb", "NOUN"),
    ("laṛkā", "laṛkā", "NOUN"),
    ("śahar", "śahar", "NOUN"),
    ("ek", "ek", "NUM"),
    ("baṛā", "baṛā", "ADJ"),
    ("gayā", "jā", "VERB"),
    ("dekhā", "dekh", "VERB"),
    ("hai", "ho", "AUX"),
    ("thā", "ho", "AUX"),
];

fn filler(rng: &mut ChaCha8Rng, id: usize) -> Token {
    let &(form, lemma, upos) = FILLER.choose(rng).expect("non-empty");
    let mut t = Token::new(id, form, lemma);
    t.upos = upos.into();
    t.lexcat = Some("N".into());
    t.lexlemma = Some(lemma.into());
    t.lextag = "O-N".into();
    t
}

/// `n` valid sentences drawn from the inventory's target lexicon and
/// label set. Some targets are multiword, some carry distinct scene and
/// function labels, a few use special labels.
pub fn synthetic_corpus(n: usize, seed: u64, inventory: Arc<LabelInventory>) -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lemmas: Vec<&String> = inventory.target_lexicon.keys().collect();
    let labels: Vec<&String> = inventory.supersenses.iter().collect();
    let specials: Vec<&String> = inventory.specials.iter().collect();
    let mut sentences = Vec::with_capacity(n);
    for s in 0..n {
        let mut tokens: Vec<Token> = Vec::new();
        let mut group = 0;
        let len = rng.random_range(3..12);
        while tokens.len() < len {
            if !rng.random_bool(0.3) {
                tokens.push(filler(&mut rng, tokens.len() + 1));
                continue;
            }
            let lemma = lemmas.choose(&mut rng).expect("non-empty lexicon").as_str();
            let (scene, function) = if rng.random_bool(0.05) {
                let sp = specials.choose(&mut rng).expect("specials");
                (sp.as_str(), sp.as_str())
            } else {
                let a = labels.choose(&mut rng).expect("labels").as_str();
                let b = if rng.random_bool(0.3) {
                    labels.choose(&mut rng).expect("labels").as_str()
                } else {
                    a
                };
                (a, b)
            };
            let words: Vec<&str> = lemma.split(' ').collect();
            if words.len() > 1 {
                group += 1;
            }
            let prefix = |l: &str| {
                if specials.iter().any(|sp| sp.as_str() == l) {
                    l.to_owned()
                } else {
                    format!("p.{l}")
                }
            };
            for (k, w) in words.iter().enumerate() {
                let mut t = Token::new(tokens.len() + 1, *w, *w);
                t.upos = "ADP".into();
                if words.len() > 1 {
                    t.smwe = Some(MweSlot {
                        group,
                        position: k + 1,
                    });
                }
                if k == 0 {
                    t.lexcat = Some("P".into());
                    t.lexlemma = Some(lemma.into());
                    t.ss = Some(prefix(scene));
                    t.ss2 = Some(prefix(function));
                    let tag = if scene == function {
                        prefix(scene)
                    } else {
                        format!("{}|{}", prefix(scene), prefix(function))
                    };
                    let bio = if words.len() > 1 { "B" } else { "O" };
                    t.lextag = format!("{bio}-P-{tag}");
                } else {
                    t.lextag = "I_".into();
                }
                tokens.push(t);
            }
        }
        sentences.push(Sentence::new(format!("syn-{seed}-{s}"), tokens));
    }
    Corpus::new(sentences, inventory)
}
