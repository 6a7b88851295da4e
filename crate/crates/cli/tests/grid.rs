use std::collections::BTreeSet;

use proptest::prelude::*;
use qreflect::draw::{collides, sample, sample_pooled, unit_rng, MAX_REDRAWS};
use qreflect::grid::{expand, RepSpec};
use qreflect::{parse_config, run_suite};
use qreflect_core::scalars::Scalar;

fn cfg(args: &str) -> qreflect::RunConfig {
    parse_config(args.split_whitespace()).unwrap_or_else(|e| panic!("{args}: {e}"))
}

#[test]
fn cardinality_matches_hand_counts() {
    // (oscillator m=0,1 + fundamental) x (N+1 splits) x 2 draws, N = 2, 3.
    assert_eq!(expand(&cfg("--suite reflection-L --N 2,3 --m 0,1 --repetitions 2")).len(), 3 * 3 * 2 + 3 * 4 * 2);
    // Pooled: one unit per interior split, N = 2, 3, 4 -> 1 + 2 + 3 splits.
    assert_eq!(expand(&cfg("--suite onsager-relations --N 2,3,4 --m 1,2")).len(), 3 * (1 + 2 + 3));
    // No representation axis; two gradations.
    assert_eq!(expand(&cfg("--suite yang-baxter --N 2,3 --gradation principal,mixed")).len(), 2 * 2 * 3);
    // The explicit rank-3 gradation is skipped at N = 2; two variants.
    assert_eq!(
        expand(&cfg("--suite affine-serre --N 2 --m 0 --gradation principal,mixed,1:2,1:1:1")).len(),
        2 * 3 * 2 * 3
    );
    // Ungraded and rep-free checks collapse those axes.
    assert_eq!(expand(&cfg("--suite gl-relations --N 2 --m 0,1,2 --gradation principal,mixed")).len(), 4 * 3);
    assert_eq!(expand(&cfg("--suite reflection-matrix --N 4 --a 0,4,9 --repetitions 1")).len(), 2);
}

#[test]
fn units_are_unique_and_ordered_by_check_first() {
    let units = expand(&cfg("--suite reflection --N 2,3 --m 0,1"));
    let keys: BTreeSet<String> = units.iter().map(|u| u.key()).collect();
    assert_eq!(keys.len(), units.len());
    let checks: Vec<&str> = units.iter().map(|u| u.check.name).collect();
    let mut seen = Vec::new();
    for name in checks {
        if seen.last() != Some(&name) {
            assert!(!seen.contains(&name), "{name} reappears");
            seen.push(name);
        }
    }
}

#[test]
fn oscillator_only_checks_skip_the_fundamental_rep() {
    let units = expand(&cfg("--suite LLbar-product --N 2 --m 0,1"));
    assert!(units.iter().all(|u| matches!(u.rep, RepSpec::Oscillator(_))));
}

#[test]
fn draws_do_not_depend_on_the_rest_of_the_run() {
    let alone = run_suite(&cfg("--suite reflection-L --N 2 --m 1 --seed 7"));
    let mixed = run_suite(&cfg("--suite glrep,reflection-L,constraints --N 2,3 --m 0,1 --seed 7"));
    let pick = |out: &qreflect::RunOutput| {
        out.reports()
            .filter(|e| e.check == "reflection-L" && e.params.iter().any(|(k, v)| k == "rep" && v == "oscillator(m=1)"))
            .filter(|e| e.params.iter().any(|(k, v)| k == "N" && v == "2"))
            .map(|e| (e.params.clone(), e.status, e.residual.clone()))
            .collect::<Vec<_>>()
    };
    assert!(!pick(&alone).is_empty());
    assert_eq!(pick(&alone), pick(&mixed));
}

#[test]
fn fixed_parameters_are_echoed_verbatim() {
    let out = run_suite(&cfg("--suite reflection-matrix --N 2 --a 1 --q 5/3 --x 2/7 --repetitions 1"));
    let entry = out.reports().next().unwrap();
    assert!(entry.params.contains(&("q".into(), "5/3".into())));
    assert!(entry.params.contains(&("x".into(), "2/7".into())));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sampling_is_reproducible_and_collision_free(seed in any::<u64>(), which in 0usize..40) {
        let config = cfg("--suite all --N 2,3 --m 0,1");
        let units = expand(&config);
        let unit = &units[which * units.len() / 40];
        let s = unit.grad.as_ref().map_or(2, |g| g.total());
        let uses = unit.check.uses;
        let first = sample(&config, &mut unit_rng(seed, unit), uses, s);
        let again = sample(&config, &mut unit_rng(seed, unit), uses, s);
        prop_assert_eq!(&first, &again);
        prop_assert!(first.redraws < MAX_REDRAWS);
        prop_assert!(!collides(&first, uses, s));
    }

    #[test]
    fn pooled_draws_share_all_but_the_spectral_parameter(seed in any::<u64>(), count in 2usize..=4) {
        let config = cfg("--suite onsager-relations --N 3 --m 1");
        let unit = &expand(&config)[0];
        let draws = sample_pooled(&config, &mut unit_rng(seed, unit), unit.check.uses, 3, count);
        prop_assert_eq!(draws.len(), count);
        let xs: BTreeSet<String> = draws.iter().map(|d| d.x.to_string()).collect();
        prop_assert_eq!(xs.len(), count);
        for d in &draws[1..] {
            prop_assert_eq!(&d.q, &draws[0].q);
            prop_assert_eq!(&d.eps_plus, &draws[0].eps_plus);
        }
    }

    #[test]
    fn fixed_values_survive_sampling(seed in any::<u64>(), num in 2i64..=9) {
        let config = cfg(&format!("--suite reflection-matrix --N 2 --q {num}/11 --eps-plus -1/2"));
        let unit = &expand(&config)[0];
        let d = sample(&config, &mut unit_rng(seed, unit), unit.check.uses, 2);
        prop_assert_eq!(d.q, Scalar::rational(num, 11));
        prop_assert_eq!(d.eps_plus, Scalar::rational(-1, 2));
    }
}
