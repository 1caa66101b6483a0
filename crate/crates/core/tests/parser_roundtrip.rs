mod common;

use fuzzrisk::dsl::parse_model_with_warnings;
use fuzzrisk::models::{builtin, ATTACKER_MODEL, SUCCESS_MODEL};
use fuzzrisk::{parse_model, serialize_model, FisDefinition, Severity};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn round_trips(fis: &FisDefinition) {
    let text = serialize_model(fis);
    let back = parse_model(&text).unwrap_or_else(|d| panic!("{d:?}\n{text}"));
    assert_eq!(&back, fis, "\n{text}");
    assert_eq!(serialize_model(&back), text);
}

#[test]
fn builtins_round_trip() {
    for name in [ATTACKER_MODEL, SUCCESS_MODEL] {
        round_trips(&builtin(name).unwrap());
    }
}

#[test]
fn twenty_random_models_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for i in 0..20 {
        let fis = common::random_model(&mut rng, i % 3 != 0);
        round_trips(&fis);
    }
}

#[test]
fn incomplete_models_parse_with_warnings() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut seen = 0;
    for _ in 0..20 {
        let fis = common::random_model(&mut rng, false);
        let total = fis.combination_count();
        let (_, warnings) = parse_model_with_warnings(&serialize_model(&fis)).unwrap();
        assert!(warnings.iter().all(|w| w.severity == Severity::Warning));
        assert_eq!(warnings.len(), total - fis.rules.len());
        seen += warnings.len();
    }
    assert!(seen > 0);
}

#[test]
fn every_invalid_fixture_is_rejected_with_a_position() {
    let fixtures = common::invalid_fixtures();
    assert!(fixtures.len() >= 10);
    for (path, text) in fixtures {
        let (line, col, fragment) = common::expectation(&text);
        let diags = parse_model(&text).expect_err(&format!("{} parsed", path.display()));
        let first = diags.iter().find(|d| d.is_error()).unwrap();
        assert_eq!(
            (first.line, first.column),
            (line, col),
            "{}: {first}",
            path.display()
        );
        assert!(
            first.message.contains(fragment),
            "{}: {first}",
            path.display()
        );
        for d in &diags {
            assert!(d.line >= 1 && d.column >= 1);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn seeded_models_round_trip(seed in any::<u64>(), complete in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fis = common::random_model(&mut rng, complete);
        let back = parse_model(&serialize_model(&fis)).unwrap();
        prop_assert_eq!(back, fis);
    }

    #[test]
    fn arbitrary_text_never_panics(src in "\\PC{0,200}") {
        let _ = parse_model(&src);
    }

    #[test]
    fn line_damage_is_reported_or_harmless(seed in any::<u64>(), cut in 0usize..400) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fis = common::random_model(&mut rng, true);
        let text = serialize_model(&fis);
        let cut = cut.min(text.len());
        let damaged: String = text.chars().take(cut).collect();
        if let Err(diags) = parse_model(&damaged) {
            prop_assert!(diags.iter().any(|d| d.is_error()));
            let lines = damaged.lines().count().max(1);
            for d in diags {
                prop_assert!(d.line >= 1 && d.line <= lines, "{} beyond {}", d, lines);
            }
        }
    }
}
