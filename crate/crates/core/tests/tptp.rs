mod common;

use aggsolve::{
    classical::{build_vc, emit_tptp, TptpOptions, VerificationCondition},
    syntax::parse_program,
    translate::Translation,
};
use common::*;

fn vc(translation: Translation) -> VerificationCondition {
    let left = parse_program(SUM_LT_RULE).unwrap();
    let right = parse_program(NOT_SUM_GE_RULE).unwrap();
    build_vc(&left, &right, translation).unwrap()
}

#[test]
fn problem_parses_with_expected_axioms() {
    for standardness in [true, false] {
        let vc = vc(Translation::cli());
        let text = emit_tptp(&vc, &TptpOptions { standardness });
        let roles = tptp_roles(&text).unwrap();
        let predicates = vc.signature.predicates.len();
        let sets = vc.signature.set_symbol_count();
        assert_eq!((predicates, sets), (3, 1));
        assert_eq!(count_roles(&roles, "ht_", "axiom"), predicates);
        assert_eq!(count_roles(&roles, "agg_", "axiom"), 3 * sets);
        assert_eq!(count_roles(&roles, "equivalence", "conjecture"), 1);
        assert_eq!(count_roles(&roles, "std_", "axiom") > 0, standardness);
        let axioms = roles.iter().filter(|(_, r)| r == "axiom").count();
        let std = if standardness {
            vc.standardness_axioms.len()
        } else {
            0
        };
        assert_eq!(axioms, predicates + 3 * sets + std);
    }
}

#[test]
fn dlv_problem_parses() {
    let text = emit_tptp(&vc(Translation::dlv()), &TptpOptions::default());
    assert_eq!(count_roles(&tptp_roles(&text).unwrap(), "agg_", "axiom"), 3);
}

#[test]
fn matches_golden_file() {
    let text = emit_tptp(&vc(Translation::cli()), &TptpOptions::default());
    assert_eq!(text, include_str!("golden/sum_rules_cli.p"));
}
