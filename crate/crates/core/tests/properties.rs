mod common;

use meritfuse_core::fusion::{fuse, normalize};
use meritfuse_core::objective::{
    confusion, cumulative_accuracy, cumulative_error, metrics, FusionObjective, POSITIVE_CLASS,
};
use meritfuse_core::optimizers::{optimize, OptimizerConfig};
use meritfuse_core::scoreio::{load_labels, load_scores, write_labels, write_scores};
use meritfuse_core::textprep::{clean_text, upsample, TextSample};
use meritfuse_core::{Method, ObjectiveVariant, Predictions, WeightVector};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn weights(m: usize) -> impl Strategy<Value = WeightVector> {
    prop::collection::vec(0.0..1.0f64, m)
        .prop_filter("not all zero", |w| w.iter().any(|&x| x > 0.0))
        .prop_map(|w| WeightVector::new(w).unwrap())
}

fn sized_weights(max_models: usize) -> impl Strategy<Value = (usize, WeightVector)> {
    (1..=max_models).prop_flat_map(|m| (Just(m), weights(m)))
}

fn variant() -> impl Strategy<Value = ObjectiveVariant> {
    prop_oneof![Just(ObjectiveVariant::FusedAccuracy), Just(ObjectiveVariant::ScoreMass)]
}

fn tables(seed: u64, n: usize, m: usize, k: usize) -> meritfuse_core::FusionDataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mats, labels) = common::random_tables(&mut rng, n, m, k);
    common::dataset(mats, labels)
}

proptest! {
    #[test]
    fn normalize_lands_on_simplex_and_is_idempotent(w in weights(5)) {
        let n = normalize(&w).unwrap();
        prop_assert!((n.as_slice().iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        prop_assert_eq!(normalize(&n).unwrap(), n);
    }

    #[test]
    fn fused_rows_stay_on_simplex(seed: u64, (m, w) in sized_weights(4), k in 2usize..5) {
        let d = tables(seed, 12, m, k);
        let f = fuse(&d, &normalize(&w).unwrap()).unwrap();
        for row in f.rows() {
            prop_assert!((row.iter().sum::<f64>() - 1.0).abs() <= 1e-9);
        }
    }

    #[test]
    fn error_and_accuracy_are_complementary(seed: u64, (m, w) in sized_weights(3), v in variant()) {
        let d = tables(seed, 25, m, 3);
        let a = cumulative_accuracy(&d, &w, v).unwrap();
        let e = cumulative_error(&d, &w, v).unwrap();
        prop_assert!((0.0..=1.0).contains(&a));
        prop_assert!((a + e - 1.0).abs() <= 1e-15);
    }

    #[test]
    fn f1_lies_between_precision_and_recall(truth in prop::collection::vec(0usize..2, 1..60), seed: u64) {
        let n = truth.len();
        let pred: Vec<usize> = truth.iter().enumerate().map(|(i, &y)| if (seed >> (i % 64)) & 1 == 1 { 1 - y } else { y }).collect();
        let labels = meritfuse_core::LabelVector::new(common::ids(n), truth).unwrap();
        let p = Predictions { sample_ids: common::ids(n), predicted: pred };
        let c = confusion(&p, &labels, POSITIVE_CLASS).unwrap();
        prop_assert_eq!(c.total(), n);
        let r = metrics(c).unwrap();
        if r.precision + r.recall > 0.0 {
            prop_assert!(r.f1 >= r.precision.min(r.recall) - 1e-12);
            prop_assert!(r.f1 <= r.precision.max(r.recall) + 1e-12);
        } else {
            prop_assert_eq!(r.f1, 0.0);
        }
    }

    #[test]
    fn cleaning_is_idempotent(s in "\\PC{0,60}") {
        let once = clean_text(&s);
        prop_assert_eq!(clean_text(&once), once.clone());
        prop_assert!(!once.contains("  "));
        prop_assert!(!once.contains("http://") && !once.contains("https://"));
    }

    #[test]
    fn upsample_balances_without_inventing_text(labels in prop::collection::vec(0usize..3, 1..40), seed: u64) {
        prop_assume!((0..=*labels.iter().max().unwrap()).all(|k| labels.contains(&k)));
        let samples: Vec<TextSample> = labels
            .iter()
            .enumerate()
            .map(|(i, &l)| TextSample { sample_id: format!("x{i}"), text: format!("t{i}"), label: l, language: "en".into() })
            .collect();
        let out = upsample(&samples, seed).unwrap();
        let top = *labels.iter().max().unwrap();
        let majority = (0..=top).map(|k| labels.iter().filter(|&&l| l == k).count()).max().unwrap();
        for k in 0..=top {
            prop_assert_eq!(out.iter().filter(|s| s.label == k).count(), majority);
        }
        for s in &out {
            prop_assert!(samples.iter().any(|o| o.text == s.text && o.label == s.label));
        }
    }

    #[test]
    fn score_files_round_trip_bit_for_bit(seed: u64, n in 1usize..30, k in 2usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (mats, labels) = common::random_tables(&mut rng, n, 1, k);
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("m1.csv");
        write_scores(&mats[0], &p).unwrap();
        prop_assert_eq!(&load_scores(&p).unwrap(), &mats[0]);
        let lp = dir.path().join("labels.csv");
        write_labels(&labels, &lp).unwrap();
        prop_assert_eq!(load_labels(&lp).unwrap(), labels);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn search_results_are_consistent(seed: u64, m in 1usize..4, method_ix in 0usize..6, budget in 1usize..400) {
        let method = Method::ALL[method_ix];
        let d = tables(seed, 30, m, 2);
        let obj = FusionObjective::new(&d, ObjectiveVariant::FusedAccuracy).unwrap();
        let mut cfg = OptimizerConfig::new(method, seed).with_grid_step(0.25);
        cfg.params.max_evaluations = budget;
        cfg.params.pso.iterations = 10;
        cfg.params.ga.generations = 10;
        let Ok(r) = optimize(&obj, m, &cfg) else {
            // Only the grid can refuse a budget up front.
            prop_assert_eq!(method, Method::BruteForce);
            return Ok(());
        };
        prop_assert!(r.evaluations <= budget);
        prop_assert!(r.best_weights.is_normalized());
        let again = cumulative_error(&d, &r.best_weights, ObjectiveVariant::FusedAccuracy).unwrap();
        prop_assert_eq!(r.best_error, again);
        for pair in r.trace.windows(2) {
            prop_assert!(pair[1].best_error < pair[0].best_error);
            prop_assert!(pair[1].evaluation > pair[0].evaluation);
        }
    }
}
