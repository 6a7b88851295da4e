use std::io::Write;

use qreflect::config::{parse_config_file, GradSpec, ParamSpec, SplitSpec};
use qreflect::{parse_config, ConfigError, Format};
use qreflect_core::scalars::{Mode, Scalar};

fn parse(args: &str) -> Result<qreflect::RunConfig, ConfigError> {
    parse_config(args.split_whitespace())
}

fn names(cfg: &qreflect::RunConfig) -> Vec<&'static str> {
    cfg.checks.iter().map(|c| c.name).collect()
}

#[test]
fn defaults_cover_the_documented_grid() {
    let cfg = parse("").unwrap();
    assert_eq!(cfg.suite, "all");
    assert_eq!(cfg.ranks, vec![2, 3]);
    assert_eq!(cfg.weights, vec![0, 1, 2]);
    assert_eq!(cfg.splits, SplitSpec::All);
    assert_eq!(cfg.gradations, vec![GradSpec::Principal]);
    assert_eq!(cfg.q, ParamSpec::Random);
    assert_eq!(cfg.mode, Mode::Exact);
    assert_eq!((cfg.seed, cfg.repetitions), (0, 3));
    assert_eq!(cfg.format, Format::Text);
    assert!(!cfg.negative_control);
}

#[test]
fn decimal_parameter_is_rejected_in_exact_mode() {
    let err = parse("--q 1.5 --mode exact").unwrap_err();
    assert!(matches!(err, ConfigError::ModeMismatch { ref key, .. } if key == "q"), "{err}");
}

#[test]
fn rational_parameter_is_promoted_in_float_mode() {
    let cfg = parse("--q 3/2 --mode float").unwrap();
    match cfg.q {
        ParamSpec::Value(s) => {
            assert_eq!(s.mode(), Mode::Float);
            assert_eq!(s.to_complex().re, 1.5);
        }
        other => panic!("{other:?}"),
    }
    let exact = parse("--q 3/2").unwrap();
    assert_eq!(exact.q, ParamSpec::Value(Scalar::rational(3, 2)));
}

#[test]
fn split_all_expands_to_closed_range() {
    let cfg = parse("--a all").unwrap();
    assert_eq!(cfg.splits_for(3), vec![0, 1, 2, 3]);
    let listed = parse("--a 0,2,5").unwrap();
    assert_eq!(listed.splits_for(2), vec![0, 2]);
    assert_eq!(listed.splits_for(4), vec![0, 2]);
}

#[test]
fn float_only_checks_follow_the_mode() {
    let exact = parse("--suite rational").unwrap();
    assert!(names(&exact).contains(&"rational-reflection"));
    assert!(!names(&exact).iter().any(|n| n.ends_with("-limit") || n.ends_with("-convergence")));
    let float = parse("--suite rational --mode float").unwrap();
    assert!(names(&float).contains(&"rational-k-operator-limit"));
    let err = parse("--suite kop-variants").unwrap_err();
    assert!(matches!(err, ConfigError::FloatOnly(_)), "{err}");
}

#[test]
fn selectors_mix_suites_and_checks_in_catalog_order() {
    let cfg = parse("--suite constraints,glrep").unwrap();
    assert_eq!(
        names(&cfg),
        vec!["gl-relations", "root-relations", "recursion-independence", "constraints"]
    );
    assert!(matches!(parse("--suite nonsense").unwrap_err(), ConfigError::UnknownSuite(_)));
}

#[test]
fn malformed_values_are_reported() {
    for args in [
        "--N 1",
        "--N two",
        "--m -1",
        "--repetitions 0",
        "--seed -3",
        "--mode symbolic",
        "--format yaml",
        "--gradation 1:x",
        "--x 1/0",
    ] {
        let err = parse(args).unwrap_err();
        assert!(matches!(err, ConfigError::Malformed { .. }), "{args}: {err}");
    }
}

#[test]
fn gradation_items_are_parsed_and_deduplicated() {
    let cfg = parse("--gradation principal,mixed,2:1:3,mixed").unwrap();
    assert_eq!(
        cfg.gradations,
        vec![GradSpec::Principal, GradSpec::Mixed, GradSpec::Explicit(vec![2, 1, 3])]
    );
    assert_eq!(GradSpec::Mixed.resolve(4).unwrap().entries(), &[2, 1, 1, 3]);
    assert!(GradSpec::Explicit(vec![2, 1, 3]).resolve(2).is_none());
}

#[test]
fn config_file_sections_and_errors() {
    let text = "seed = 5\n[grid]\nN = 2,4 # ranks\n\n[params]\nq = 5/3\n[output]\nformat = json\n";
    let map = parse_config_file(text).unwrap();
    assert_eq!(map["seed"], "5");
    assert_eq!(map["N"], "2,4");
    assert_eq!(map["q"], "5/3");

    let err = parse_config_file("[grid]\nq = 2\n").unwrap_err();
    assert!(matches!(err, ConfigError::UnknownKey { ref section, .. } if section == "grid"), "{err}");
    let err = parse_config_file("colour = red\n").unwrap_err();
    assert!(matches!(err, ConfigError::UnknownKey { .. }), "{err}");
    assert!(matches!(parse_config_file("[extras]\n").unwrap_err(), ConfigError::UnknownSection(_)));
    let err = parse_config_file("[run]\nseed 4\n").unwrap_err();
    assert!(matches!(err, ConfigError::Syntax { line: 2, .. }), "{err}");
}

#[test]
fn flags_override_the_config_file() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(
        file,
        "[run]\nsuite = reflection\nseed = 9\nnegative_control = true\n[grid]\nN = 4\nm = 1\n[params]\nq = 5/3\nx = 2/7"
    )
    .unwrap();
    let path = file.path().display().to_string();
    let from_file = parse(&format!("--config {path}")).unwrap();
    assert_eq!(from_file.suite, "reflection");
    assert_eq!((from_file.seed, from_file.ranks.clone()), (9, vec![4]));
    assert_eq!(from_file.q, ParamSpec::Value(Scalar::rational(5, 3)));
    assert!(from_file.negative_control);

    let merged = parse(&format!("--config {path} --seed 2 --N 2,3 --q 7/4")).unwrap();
    assert_eq!((merged.seed, merged.ranks.clone()), (2, vec![2, 3]));
    assert_eq!(merged.q, ParamSpec::Value(Scalar::rational(7, 4)));
    assert_eq!(merged.x, ParamSpec::Value(Scalar::rational(2, 7)));
    assert_eq!(merged.weights, vec![1]);
}

#[test]
fn missing_config_file_is_an_io_error() {
    let err = parse("--config /nonexistent/qreflect.conf").unwrap_err();
    assert!(matches!(err, ConfigError::Io { .. }), "{err}");
}

#[test]
fn unknown_flags_are_rejected() {
    assert!(matches!(parse("--colour red").unwrap_err(), ConfigError::Cli(_)));
}

#[test]
fn echo_lists_every_result_affecting_setting() {
    let cfg = parse("--suite reflection-L --N 3 --x -2/3 --mode exact --seed 4").unwrap();
    let echo = cfg.echo();
    let keys: Vec<&str> = echo.iter().map(|(k, _)| *k).collect();
    assert_eq!(
        keys,
        vec![
            "suite", "N", "m", "a", "gradation", "q", "q_root", "x", "y", "u", "v", "eps_plus", "eps_minus", "p",
            "mode", "seed", "repetitions", "negative_control"
        ]
    );
    assert!(echo.contains(&("x", "-2/3".to_string())));
}
