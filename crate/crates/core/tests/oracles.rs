mod common;

use std::collections::BTreeSet;

use aggsolve::{
    analysis::{build_signature, global_vars},
    folog::{free_vars, parse_formula, Semantics},
    semantics::{
        agg_stable_models, answer_sets, eval_ground_ht, eval_ht, eval_prop, expand_aggregate,
        flp_reduct, ft_reduct, ground_program, herbrand_instances, GroundAtom, HtModel, PropInterp,
    },
    syntax::{parse_program, GroundTerm, Literal, Program, Sign},
    translate::Translation,
};
use common::*;
use proptest::prelude::*;

fn corpus_atoms() -> Vec<GroundAtom> {
    ["p", "q"]
        .iter()
        .flat_map(|p| (0..=1).map(move |i| GroundAtom::new(*p, vec![GroundTerm::numeral(i)])))
        .collect()
}

fn as_set(models: Vec<PropInterp>) -> BTreeSet<PropInterp> {
    models.into_iter().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn program_round_trip(src in program_source()) {
        let program = parse_program(&src).unwrap();
        prop_assert_eq!(parse_program(&program.to_string()).unwrap(), program);
    }

    #[test]
    fn answer_sets_are_agg_stable_models(program in program()) {
        let scope = corpus_scope();
        let sig = build_signature([&program]);
        for x in [Semantics::Cli, Semantics::Dlv] {
            let theory = Translation::new(x).tau_program(&program, &sig).unwrap();
            prop_assert_eq!(
                as_set(answer_sets(&program, &scope, x).unwrap()),
                as_set(agg_stable_models(&theory, &sig, &scope).unwrap()),
                "{} semantics", x
            );
        }
    }

    #[test]
    fn reducts_characterize_ht_models(program in program()) {
        let scope = corpus_scope();
        let sig = build_signature([&program]);
        let ground = ground_program(&program, &scope).unwrap();
        let cli = Translation::cli().tau_program(&program, &sig).unwrap();
        let dlv = Translation::dlv().tau_program(&program, &sig).unwrap();
        for pair in all_pairs(&corpus_atoms()) {
            let model = HtModel::new(&pair, &sig, &scope);
            let (h, i) = (pair.here(), pair.there());
            let model_of_i = eval_prop(&ground, i);
            prop_assert_eq!(
                model.satisfies_all(cli.sentences()).unwrap(),
                model_of_i && eval_prop(&ft_reduct(&ground, i), h),
                "FT at {:?}", pair
            );
            prop_assert_eq!(
                model.satisfies_all(dlv.sentences()).unwrap(),
                model_of_i && eval_prop(&flp_reduct(&ground, i), h),
                "FLP at {:?}", pair
            );
        }
    }

    #[test]
    fn answer_sets_are_minimal(program in program()) {
        let scope = corpus_scope();
        let ground = ground_program(&program, &scope).unwrap();
        for x in [Semantics::Cli, Semantics::Dlv] {
            for i in answer_sets(&program, &scope, x).unwrap() {
                prop_assert!(eval_prop(&ground, &i));
                let reduct = match x {
                    Semantics::Cli => ft_reduct(&ground, &i),
                    Semantics::Dlv => flp_reduct(&ground, &i),
                };
                let atoms: Vec<&GroundAtom> = i.atoms.iter().collect();
                for mask in 0u32..(1 << atoms.len()) - 1 {
                    let h: PropInterp = (0..atoms.len())
                        .filter(|k| mask & (1 << k) != 0)
                        .map(|k| atoms[k].clone())
                        .collect();
                    prop_assert!(!eval_prop(&reduct, &h));
                }
            }
        }
    }

    #[test]
    fn aggregate_translation_matches_expansion(program in program()) {
        let scope = corpus_scope();
        let pairs = all_pairs(&corpus_atoms());
        for rule in &program.rules {
            for instance in herbrand_instances(rule, &scope) {
                let globals = global_vars(&instance);
                let sig = build_signature([&Program { rules: vec![instance.clone()] }]);
                for atom in instance.aggregates() {
                    let literal = Literal::Aggregate { sign: Sign::NoSign, atom: atom.clone() };
                    let formula = Translation::cli().tau_literal(&globals, &literal, &sig).unwrap();
                    prop_assert!(free_vars(&formula).is_empty());
                    let expansion = expand_aggregate(atom, &scope).unwrap();
                    for pair in &pairs {
                        prop_assert_eq!(
                            eval_ht(&formula, pair, &sig, &scope).unwrap(),
                            eval_ground_ht(&expansion, pair),
                            "{} at {:?}", atom, pair
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn translations_are_closed_and_round_trip(program in program()) {
        let sig = build_signature([&program]);
        for x in [Translation::cli(), Translation::dlv()] {
            let theory = x.tau_program(&program, &sig).unwrap();
            prop_assert!(theory.len() <= program.rules.len());
            for f in theory.sentences() {
                prop_assert!(free_vars(f).is_empty());
                prop_assert_eq!(&parse_formula(&f.to_string()).unwrap(), f);
                if x.semantics == Semantics::Cli {
                    prop_assert!(f.is_standard());
                }
            }
        }
    }
}
