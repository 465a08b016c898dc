use gnd_cli::{run_command, Outcome, EXIT_BOUND, EXIT_CONDITION, EXIT_OK, EXIT_USAGE};
use proptest::prelude::*;

fn problem(name: &str) -> String {
    format!("{}/../../problems/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn gnd(args: &[&str]) -> Outcome {
    run_command(std::iter::once("gnd").chain(args.iter().copied()))
}

#[test]
fn desing_two_axes_succeeds() {
    let o = gnd(&["desing", &problem("two_axes.gnd")]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert!(o.stdout.lines().any(|l| l.starts_with("19. ")), "{}", o.stdout);
}

#[test]
fn desing_machine_output_is_json_lines() {
    let o = gnd(&["desing", &problem("hyperbola.gnd"), "--format", "machine"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    for line in o.stdout.lines().filter(|l| !l.is_empty()) {
        serde_json::from_str::<serde_json::Value>(line).unwrap_or_else(|e| panic!("{line}: {e}"));
    }
}

#[test]
fn small_bound_exits_two_with_the_message() {
    let o = gnd(&["desing", &problem("two_axes_n4.gnd")]);
    assert_eq!(o.code, EXIT_BOUND);
    assert!(o.stderr.contains("the algorithm fails since the bound N is too small"));
    assert!(o.stdout.lines().last().unwrap().starts_with("12. "));
}

#[test]
fn hba_reports_each_subsystem() {
    let o = gnd(&["hba", &problem("two_axes.gnd"), "--format", "machine"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let v: serde_json::Value = serde_json::from_str(o.stdout.trim()).unwrap();
    assert_eq!(v["subsets"].as_array().unwrap().len(), 3);
    assert_eq!(v["dimension"], 0);
}

#[test]
fn lift_needs_a_combination_on_the_two_axes() {
    let file = problem("two_axes.gnd");
    let single = gnd(&["lift", &file, "--rho", "4"]);
    assert_eq!(single.code, EXIT_CONDITION);
    let comb = gnd(&["lift", &file, "--rho", "4", "--target-precision", "16", "--combination", "1,1"]);
    assert_eq!(comb.code, EXIT_OK, "{}", comb.stderr);
    assert!(comb.stdout.contains("O(16)"));
    let short = gnd(&["lift", &file, "--rho", "4", "--combination", "1"]);
    assert_eq!(short.code, EXIT_USAGE);
}

#[test]
fn check_reports_preconditions() {
    let ok = gnd(&["check", &problem("two_axes.gnd"), "--rho", "4", "--combination", "1,1"]);
    assert_eq!(ok.code, EXIT_OK, "{}", ok.stdout);
    let no_primes = gnd(&["check", &problem("space_curve.gnd")]);
    assert_eq!(no_primes.code, EXIT_CONDITION);
    assert!(no_primes.stdout.contains("minprimes"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn malformed_invocations_exit_with_usage(
        args in proptest::collection::vec(
            prop_oneof![
                Just("desing".to_string()),
                Just("lift".to_string()),
                Just("--rho".to_string()),
                Just("--combination".to_string()),
                Just("--seed".to_string()),
                "[a-z0-9,./-]{0,8}",
            ],
            0..5,
        )
    ) {
        let o = run_command(std::iter::once("gnd".to_string()).chain(args));
        prop_assert!(o.code == EXIT_USAGE || o.code == EXIT_OK, "{o:?}");
    }
}
