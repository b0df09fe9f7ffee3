//! Descriptive corpus statistics and semantic-range entropy.

mod distribution;
mod entropy;
mod summary;

pub use distribution::{label_distribution, CountDistribution, DistributionKey};
pub use entropy::{
    chao_shen_entropy, shannon_entropy, target_entropy_table, EntropyError, EntropyRow,
    EntropyTableOptions, Estimator,
};
pub use summary::{corpus_summary, SummaryStats, Tally};

/// Formats a percentage the way the tables print it.
pub fn format_percent(p: f64) -> String {
    format!("{p:.1}%")
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use approx::assert_abs_diff_eq;

    use super::*;
    use crate::conllulex::{parse_corpus, Corpus, LabelInventory, ParseMode, TargetClass};

    const SMALL: &str = include_str!("../../tests/fixtures/small.conllulex");

    fn small() -> Corpus {
        parse_corpus(SMALL, Arc::new(LabelInventory::builtin()), ParseMode::Strict)
            .unwrap()
            .corpus
    }

    fn dist(counts: &[(&str, usize)]) -> CountDistribution {
        CountDistribution::from_counts(counts.iter().map(|&(k, c)| (k, c)))
    }

    #[test]
    fn shannon_examples() {
        assert_eq!(shannon_entropy::<f64>(&dist(&[("a", 1), ("b", 1)])).unwrap(), 1.0);
        assert_eq!(shannon_entropy::<f64>(&dist(&[("a", 7)])).unwrap(), 0.0);
        // -(1/2 log 1/2 + 2 * 1/4 log 1/4) = 1/2 + 1 = 1.5
        assert_eq!(
            shannon_entropy::<f64>(&dist(&[("a", 2), ("b", 1), ("c", 1)])).unwrap(),
            1.5
        );
        assert_eq!(
            shannon_entropy::<f64>(&dist(&[])),
            Err(EntropyError::Undefined)
        );
    }

    #[test]
    fn zero_counts_contribute_nothing() {
        let h: f64 = shannon_entropy(&dist(&[("a", 1), ("b", 1), ("z", 0)])).unwrap();
        assert_eq!(h, 1.0);
    }

    #[test]
    fn chao_shen_examples() {
        assert_eq!(chao_shen_entropy::<f64>(&dist(&[("a", 107)])).unwrap(), 0.0);
        // Frozen from a standalone script evaluating the estimator formula.
        assert_abs_diff_eq!(
            chao_shen_entropy::<f64>(&dist(&[("a", 3), ("b", 1)])).unwrap(),
            1.2872696988107624,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            chao_shen_entropy::<f64>(&dist(&[("a", 5), ("b", 3), ("c", 2), ("d", 1), ("e", 1)]))
                .unwrap(),
            2.4333913010215107,
            epsilon = 1e-12
        );
        assert!(chao_shen_entropy::<f64>(&dist(&[])).is_err());
    }

    #[test]
    fn chao_shen_all_singletons_uses_guard() {
        let h: f64 = chao_shen_entropy(&dist(&[("a", 1), ("b", 1), ("c", 1)])).unwrap();
        assert!(h.is_finite());
        assert_abs_diff_eq!(h, 3.9010171292482085, epsilon = 1e-12);
    }

    #[test]
    fn chao_shen_f32() {
        let h: f32 = chao_shen_entropy(&dist(&[("a", 3), ("b", 1)])).unwrap();
        assert!((h - 1.287_27).abs() < 1e-4);
    }

    #[test]
    fn chao_shen_converges_to_shannon() {
        let mut last = f64::INFINITY;
        for m in [10, 100, 1000] {
            let d = dist(&[("a", m), ("b", m)]);
            let diff = (chao_shen_entropy::<f64>(&d).unwrap() - shannon_entropy::<f64>(&d).unwrap())
                .abs();
            assert!(diff <= last, "m={m}: {diff} > {last}");
            last = diff;
        }
        assert!(last < 1e-9);
    }

    #[test]
    fn summary_of_fixture() {
        let s = corpus_summary(&small());
        assert_eq!(s.n_sentences, 12);
        assert_eq!(s.n_tokens, 54);
        assert_eq!(s.n_targets, 15);
        // ne ne ko ko kā se meṁ par tak
        assert_eq!(s.case.count, 9);
        assert_eq!(s.case.types, 7);
        // bhī hī to
        assert_eq!(s.emphatic.count, 3);
        // ke pās, ke lie, ` (unknown lemma)
        assert_eq!(s.adposition.count, 3);
        assert_eq!(s.n_types, 13);
        assert_eq!(s.role_differs.count, 3);
        assert_eq!(s.role_equals_function.count, 12);
        assert_eq!(s.case.count + s.emphatic.count + s.adposition.count, s.n_targets);
        assert_abs_diff_eq!(s.percent(s.case.count), 60.0, epsilon = 1e-12);
    }

    #[test]
    fn empty_summary() {
        let c = Corpus::new(vec![], Arc::new(LabelInventory::builtin()));
        let s = corpus_summary(&c);
        assert_eq!(s, SummaryStats::default());
        assert_eq!(s.percent(s.case.count), 0.0);
    }

    #[test]
    fn distribution_sorted_and_filtered() {
        let c = small();
        let d = label_distribution(&c, Some(TargetClass::Case), DistributionKey::Lemma);
        assert_eq!(d.entries()[0], ("ko".to_owned(), 2));
        assert_eq!(d.entries()[1], ("ne".to_owned(), 2));
        assert_eq!(d.total(), 9);
        let all = label_distribution(&c, None, DistributionKey::Scene);
        assert_eq!(all.entries()[0], ("Focus".to_owned(), 3));
        assert_eq!(all.entries()[1], ("Locus".to_owned(), 3));
        assert_abs_diff_eq!(all.percent_of("Focus", 15), 20.0);
    }

    #[test]
    fn class_percentages_sum_to_all_targets() {
        let c = small();
        let n = corpus_summary(&c).n_targets;
        let total: f64 = TargetClass::ALL
            .iter()
            .map(|&k| {
                let d = label_distribution(&c, Some(k), DistributionKey::Scene);
                d.entries().iter().map(|(key, _)| d.percent_of(key, n)).sum::<f64>()
            })
            .sum();
        assert_abs_diff_eq!(total, 100.0, epsilon = 1e-9);
    }

    #[test]
    fn entropy_table_min_n() {
        let c = small();
        let rows = target_entropy_table::<f64>(
            &c,
            &EntropyTableOptions {
                min_n: 2,
                ..Default::default()
            },
        );
        let lemmas: Vec<&str> = rows.iter().map(|r| r.lemma.as_str()).collect();
        assert_eq!(lemmas, ["ko", "ne"]);
        // ne: {Originator, Agent}, ko: {Theme, Experiencer}; both two singletons
        assert!(rows.iter().all(|r| r.n == 2 && r.entropy > 0.0));
        assert!(target_entropy_table::<f64>(&c, &EntropyTableOptions::default()).is_empty());
    }

    #[test]
    fn single_label_lemma_is_zero() {
        let c = small();
        let mut c2 = c.clone();
        c2.sentences.extend(c.sentences.iter().filter(|s| s.sent_id == "s5").map(|s| {
            let mut s = s.clone();
            s.sent_id.push('x');
            s
        }));
        let rows = target_entropy_table::<f64>(
            &c2,
            &EntropyTableOptions {
                min_n: 2,
                ..Default::default()
            },
        );
        let bhi = rows.iter().find(|r| r.lemma == "bhī").unwrap();
        assert_eq!(bhi.entropy, 0.0);
        assert_eq!(rows.last().unwrap().entropy, 0.0);
    }

    #[test]
    fn format_percent_one_decimal() {
        assert_eq!(format_percent(72.12121), "72.1%");
    }

    mod props {
        use proptest::prelude::*;

        use super::super::*;

        fn counts() -> impl Strategy<Value = Vec<usize>> {
            prop::collection::vec(1usize..50, 1..8)
        }

        fn named(counts: &[usize]) -> CountDistribution {
            CountDistribution::from_counts(
                counts.iter().enumerate().map(|(i, &c)| (format!("k{i}"), c)),
            )
        }

        proptest! {
            #[test]
            fn shannon_bounds(c in counts()) {
                let h: f64 = shannon_entropy(&named(&c)).unwrap();
                prop_assert!(h >= 0.0);
                prop_assert!(h <= (c.len() as f64).log2() + 1e-12);
            }

            #[test]
            fn shannon_permutation_and_scale_invariant(c in counts(), m in 1usize..20) {
                let h: f64 = shannon_entropy(&named(&c)).unwrap();
                let mut rev = c.clone();
                rev.reverse();
                let scaled: Vec<usize> = c.iter().map(|x| x * m).collect();
                prop_assert!((shannon_entropy::<f64>(&named(&rev)).unwrap() - h).abs() < 1e-12);
                prop_assert!((shannon_entropy::<f64>(&named(&scaled)).unwrap() - h).abs() < 1e-12);
            }

            #[test]
            fn chao_shen_nonnegative(c in counts()) {
                let h: f64 = chao_shen_entropy(&named(&c)).unwrap();
                prop_assert!(h >= 0.0 && h.is_finite());
            }
        }
    }
}
