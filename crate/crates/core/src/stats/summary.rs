use std::collections::BTreeSet;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::distribution::percent;
use crate::conllulex::{Corpus, TargetClass};

/// A count and its number of distinct types.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Tally {
    pub count: usize,
    pub types: usize,
}

/// Corpus-level counts. Percentages are derived on demand.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SummaryStats {
    pub n_sentences: usize,
    pub n_tokens: usize,
    pub n_targets: usize,
    /// Distinct target lemmas.
    pub n_types: usize,
    pub case: Tally,
    pub emphatic: Tally,
    pub adposition: Tally,
    /// Distinct construals.
    pub n_construal_types: usize,
    pub role_equals_function: Tally,
    pub role_differs: Tally,
}

impl SummaryStats {
    pub fn class(&self, klass: TargetClass) -> Tally {
        match klass {
            TargetClass::Case => self.case,
            TargetClass::Emphatic => self.emphatic,
            TargetClass::Adposition => self.adposition,
        }
    }

    /// Share of all targets, in percent.
    pub fn percent(&self, count: usize) -> f64 {
        percent(count, self.n_targets)
    }
}

pub fn corpus_summary(corpus: &Corpus) -> SummaryStats {
    let targets = corpus.targets();
    let mut stats = SummaryStats {
        n_sentences: corpus.sentences.len(),
        n_tokens: corpus.n_tokens(),
        n_targets: targets.len(),
        ..Default::default()
    };

    let mut lemmas: [BTreeSet<&str>; 3] = Default::default();
    let mut construals: [BTreeSet<String>; 2] = Default::default();
    for t in &targets {
        let k = t.klass as usize;
        lemmas[k].insert(&t.lemma);
        let c = usize::from(!t.construal.is_congruent());
        construals[c].insert(t.construal.to_string());
        match t.klass {
            TargetClass::Case => stats.case.count += 1,
            TargetClass::Emphatic => stats.emphatic.count += 1,
            TargetClass::Adposition => stats.adposition.count += 1,
        }
        if t.construal.is_congruent() {
            stats.role_equals_function.count += 1;
        } else {
            stats.role_differs.count += 1;
        }
    }
    stats.case.types = lemmas[TargetClass::Case as usize].len();
    stats.emphatic.types = lemmas[TargetClass::Emphatic as usize].len();
    stats.adposition.types = lemmas[TargetClass::Adposition as usize].len();
    stats.n_types = lemmas.iter().flatten().collect::<BTreeSet<_>>().len();
    stats.role_equals_function.types = construals[0].len();
    stats.role_differs.types = construals[1].len();
    stats.n_construal_types = construals[0].len() + construals[1].len();
    stats
}

impl Serialize for SummaryStats {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Row {
            count: usize,
            percent: f64,
            types: usize,
        }
        let row = |t: Tally| Row {
            count: t.count,
            percent: self.percent(t.count),
            types: t.types,
        };
        let mut s = serializer.serialize_struct("SummaryStats", 10)?;
        s.serialize_field("sentences", &self.n_sentences)?;
        s.serialize_field("tokens", &self.n_tokens)?;
        s.serialize_field("targets", &self.n_targets)?;
        s.serialize_field("target_types", &self.n_types)?;
        s.serialize_field("case", &row(self.case))?;
        s.serialize_field("emphatic", &row(self.emphatic))?;
        s.serialize_field("adposition", &row(self.adposition))?;
        s.serialize_field("construal_types", &self.n_construal_types)?;
        s.serialize_field("role_equals_function", &row(self.role_equals_function))?;
        s.serialize_field("role_differs", &row(self.role_differs))?;
        s.end()
    }
}
