//! Generators shared by the property suites and the acceptance harness.
#![allow(dead_code)]

use aggsolve::{
    analysis::{build_signature, Signature},
    folog::{free_vars, parse_formula, FoTerm, Formula, Semantics, SetFn, Var},
    semantics::{GroundAtom, HtPair, PropInterp, Scope},
    syntax::{parse_program, AggregateOp, GroundTerm, Program, Relation},
    translate::Translation,
};
use proptest::{
    prelude::*,
    strategy::ValueTree,
    test_runner::{Config, RngAlgorithm, TestRng, TestRunner},
};
use tptp::{
    top::{AnnotatedFormula, TPTPInput},
    TPTPIterator,
};

pub const RELATIONS: [&str; 6] = ["<", "<=", "=", "!=", ">", ">="];

fn sign() -> impl Strategy<Value = &'static str> {
    prop_oneof![4 => Just(""), 2 => Just("not "), 1 => Just("not not ")]
}

fn predicate() -> impl Strategy<Value = &'static str> {
    prop_oneof![Just("p"), Just("q")]
}

/// A term of a rule outside aggregate elements: `Y` is the only variable.
fn rule_term() -> impl Strategy<Value = &'static str> {
    prop_oneof![Just("0"), Just("1"), Just("Y")]
}

/// A term inside an aggregate element: `X` is the only variable, so the
/// element has at most two instances over `{0, 1}`.
fn element_term() -> impl Strategy<Value = &'static str> {
    prop_oneof![2 => Just("X"), 1 => Just("0"), 1 => Just("1")]
}

fn basic_literal() -> impl Strategy<Value = String> {
    prop_oneof![
        4 => (sign(), predicate(), rule_term()).prop_map(|(s, p, t)| format!("{s}{p}({t})")),
        1 => (rule_term(), 0..RELATIONS.len(), rule_term())
            .prop_map(|(l, r, t)| format!("{l} {} {t}", RELATIONS[r])),
    ]
}

fn condition() -> impl Strategy<Value = String> {
    (sign(), predicate(), element_term()).prop_map(|(s, p, t)| format!("{s}{p}({t})"))
}

fn aggregate_literal() -> impl Strategy<Value = String> {
    (
        sign(),
        prop_oneof![Just("#count"), Just("#sum")],
        prop_oneof![Just("X"), Just("X, 0"), Just("X, 1")],
        prop::collection::vec(condition(), 1..=2),
        0..RELATIONS.len(),
        prop_oneof![Just("0"), Just("1"), Just("2"), Just("Y")],
    )
        .prop_map(|(s, op, terms, conds, r, guard)| {
            format!(
                "{s}{op}{{{terms} : {}}} {} {guard}",
                conds.join(", "),
                RELATIONS[r]
            )
        })
}

fn rule() -> impl Strategy<Value = String> {
    let literal = prop_oneof![3 => basic_literal(), 2 => aggregate_literal()];
    (
        prop::option::weighted(0.85, (predicate(), rule_term())),
        prop::collection::vec(literal, 0..=2),
    )
        .prop_map(|(head, body)| {
            let head = match (head, body.is_empty()) {
                (Some((p, t)), _) => format!("{p}({t})"),
                (None, true) => "p(0)".to_string(),
                (None, false) => String::new(),
            };
            if body.is_empty() {
                format!("{head}.")
            } else {
                format!("{head} :- {}.", body.join(", "))
            }
        })
}

/// Source text of a program with at most three rules over `p/1` and `q/1`
/// whose aggregate elements have at most two instances over `{0, 1}`.
pub fn program_source() -> impl Strategy<Value = String> {
    prop::collection::vec(rule(), 1..=3).prop_map(|rules| rules.join("\n"))
}

pub fn program() -> impl Strategy<Value = Program> {
    program_source().prop_map(|s| parse_program(&s).expect("generated programs parse"))
}

pub fn corpus_scope() -> Scope {
    Scope::ints(0, 1).unwrap()
}

/// `n` programs drawn deterministically from [`program`].
pub fn corpus(n: usize) -> Vec<Program> {
    sample(program(), n)
}

/// `n` values drawn from `strategy` with a fixed seed.
pub fn sample<S: Strategy>(strategy: S, n: usize) -> Vec<S::Value> {
    let rng = TestRng::from_seed(RngAlgorithm::ChaCha, &[7; 32]);
    let mut runner = TestRunner::new_with_rng(Config::default(), rng);
    (0..n)
        .map(|_| strategy.new_tree(&mut runner).expect("value").current())
        .collect()
}

// Formulas over a fixed signature

/// Fixes the predicates `p/1`, `q/1`, `r/1` and two set symbols, one of
/// them with a global variable.
pub const FORMULA_BASE: &str = "p(1) :- #sum{X : q(X), not r(X)} < 1.\n\
                                p(Y) :- q(Y), #count{X : q(X), not p(X), X != Y} > 0.";

pub fn formula_signature() -> Signature {
    build_signature([&parse_program(FORMULA_BASE).unwrap()])
}

pub fn formula_scope() -> Scope {
    Scope::ints(0, 1).unwrap()
}

/// The atoms pairs range over: `p`, `q`, `r` applied to `0` and `1`.
pub fn formula_atoms() -> Vec<GroundAtom> {
    ["p", "q", "r"]
        .iter()
        .flat_map(|p| (0..=1).map(move |i| GroundAtom::new(*p, vec![GroundTerm::numeral(i)])))
        .collect()
}

const BOUND: [&str; 2] = ["V0", "V1"];

fn fo_term() -> impl Strategy<Value = FoTerm> {
    prop_oneof![
        (0i64..=1).prop_map(|i| FoTerm::Ground(GroundTerm::numeral(i))),
        (0..BOUND.len()).prop_map(|i| FoTerm::var(BOUND[i])),
    ]
}

fn ground_fo_term() -> impl Strategy<Value = FoTerm> {
    (0i64..=1).prop_map(|i| FoTerm::Ground(GroundTerm::numeral(i)))
}

fn relation() -> impl Strategy<Value = Relation> {
    prop_oneof![
        Just(Relation::Equal),
        Just(Relation::NotEqual),
        Just(Relation::Less),
        Just(Relation::LessEqual),
        Just(Relation::Greater),
        Just(Relation::GreaterEqual),
    ]
}

/// `s^x_E(args)` for one of the set symbols of [`formula_signature`].
fn set_term(names: Vec<String>) -> impl Strategy<Value = FoTerm> {
    (
        prop_oneof![Just(Semantics::Cli), Just(Semantics::Dlv)],
        0..names.len(),
        fo_term(),
    )
        .prop_map(move |(semantics, i, arg)| FoTerm::SetApp {
            fun: SetFn {
                semantics,
                name: names[i].clone(),
                hatted: false,
            },
            // the second set symbol has one global variable
            args: if i == 0 { vec![] } else { vec![arg] },
        })
}

pub fn predicate_atom(args: impl Strategy<Value = FoTerm>) -> impl Strategy<Value = Formula> {
    (prop_oneof![Just("p"), Just("q"), Just("r")], args)
        .prop_map(|(p, t)| Formula::atom(p, vec![t]))
}

/// An atomic formula without set functions and with constant arguments.
pub fn ground_atom_formula() -> impl Strategy<Value = Formula> {
    predicate_atom(ground_fo_term())
}

fn atomic(names: Vec<String>) -> impl Strategy<Value = Formula> {
    prop_oneof![
        1 => Just(Formula::Bottom),
        4 => predicate_atom(fo_term()),
        1 => (fo_term(), relation(), fo_term()).prop_map(|(l, r, t)| Formula::compare(l, r, t)),
        3 => (
            prop_oneof![Just(AggregateOp::Count), Just(AggregateOp::Sum)],
            set_term(names.clone()),
            relation(),
            0i64..=2,
        )
            .prop_map(|(op, set, r, g)| {
                let value = FoTerm::Agg { op, set: Box::new(set) };
                Formula::compare(value, r, FoTerm::Ground(GroundTerm::numeral(g)))
            }),
        1 => (fo_term(), set_term(names)).prop_map(|(t, s)| Formula::Member(FoTerm::Tuple(vec![t]), s)),
    ]
}

/// A formula possibly containing the free variables `V0` and `V1`.
pub fn open_formula() -> impl Strategy<Value = Formula> {
    let names: Vec<String> = formula_signature()
        .set_symbols()
        .map(|(_, n)| n.to_string())
        .collect();
    atomic(names).prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(f, g)| Formula::and(f, g)),
            (inner.clone(), inner.clone()).prop_map(|(f, g)| Formula::or(f, g)),
            (inner.clone(), inner.clone()).prop_map(|(f, g)| Formula::implies(f, g)),
            inner.clone().prop_map(Formula::not),
            inner.clone().prop_map(Formula::strong_neg),
            (any::<bool>(), 0..BOUND.len(), inner).prop_map(|(universal, i, f)| {
                let v = Var::general(BOUND[i]);
                if universal {
                    Formula::forall([v], f)
                } else {
                    Formula::exists([v], f)
                }
            }),
        ]
    })
}

/// A sentence: [`open_formula`] closed by quantifiers of random kinds.
pub fn sentence() -> impl Strategy<Value = Formula> {
    (open_formula(), any::<[bool; 2]>()).prop_map(|(f, kinds)| {
        free_vars(&f)
            .into_iter()
            .zip(kinds)
            .fold(f.clone(), |g, (v, universal)| {
                if universal {
                    Formula::forall([v], g)
                } else {
                    Formula::exists([v], g)
                }
            })
    })
}

/// A pair over `atoms`: the there-world is chosen by one mask and the
/// here-world by intersecting it with another.
pub fn pair_over(atoms: Vec<GroundAtom>) -> impl Strategy<Value = HtPair> {
    let n = atoms.len();
    (any::<u32>(), any::<u32>()).prop_map(move |(there, here)| {
        let pick = |mask: u32| -> PropInterp {
            (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| atoms[i].clone())
                .collect()
        };
        HtPair::new(pick(there & here), pick(there)).expect("here is a subset of there")
    })
}

pub fn formula_pair() -> impl Strategy<Value = HtPair> {
    pair_over(formula_atoms())
}

/// Every pair `⟨H, I⟩` over `atoms`.
pub fn all_pairs(atoms: &[GroundAtom]) -> Vec<HtPair> {
    let n = atoms.len();
    let mut out = Vec::new();
    for there in 0u32..(1 << n) {
        let mut here = there;
        loop {
            let pick = |mask: u32| -> PropInterp {
                (0..n)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| atoms[i].clone())
                    .collect()
            };
            out.push(HtPair::new(pick(here), pick(there)).unwrap());
            if here == 0 {
                break;
            }
            here = (here - 1) & there;
        }
    }
    out
}

// Example programs

pub const CONTROLS_RULE: &str =
    "controls(C1,C3) :- company(C1), company(C3), #sum{P,C2 : ctrStk(C1,C2,C3,P)} > 50.";
pub const SUM_LT_RULE: &str = "p(1) :- #sum{X : q(X), not r(X)} < 1.";
pub const NOT_SUM_GE_RULE: &str = "p(1) :- not #sum{X : q(X), not r(X)} >= 1.";
pub const MIRROR_CONTEXT: &str =
    "q(1).\nq(-1) :- p(1).\nq(0) :- p(0).\nq(1) :- p(-1).\n:- not p(1).";
pub const DISJOINT_RULE: &str = ":- q(X), r(X).";

/// The translation of a single-rule program, as one sentence.
pub fn translate_rule(x: Translation, src: &str) -> (Formula, Signature) {
    let program = parse_program(src).unwrap();
    let sig = build_signature([&program]);
    let theory = x.tau_program(&program, &sig).unwrap();
    assert_eq!(theory.len(), 1);
    (theory.sentences()[0].clone(), sig)
}

/// Hand-written expected translations of the example rules: a label, the
/// computed sentence and the expected one. `$S` in an expectation stands
/// for the short name of the rule's only set symbol.
pub fn translation_goldens() -> Vec<(String, Formula, Formula)> {
    let cases = [
        ("cli controls", Translation::cli(), CONTROLS_RULE,
         "forall C1 C3 (company(C1) & company(C3) & sum(cli.$S(C1, C3)) > 50 -> controls(C1, C3))"),
        ("dlv controls", Translation::dlv(), CONTROLS_RULE,
         "forall C1 C3 (company(C1) & company(C3) & sum(dlv.$S(C1, C3)) > 50 -> controls(C1, C3))"),
        ("cli sum < 1", Translation::cli(), SUM_LT_RULE, "sum(cli.$S) < 1 -> p(1)"),
        ("dlv sum < 1", Translation::dlv(), SUM_LT_RULE, "sum(dlv.$S) < 1 -> p(1)"),
        ("cli not sum >= 1", Translation::cli(), NOT_SUM_GE_RULE, "not sum(cli.$S) >= 1 -> p(1)"),
        ("dlv not sum >= 1", Translation::dlv(), NOT_SUM_GE_RULE, "NOT sum(dlv.$S) >= 1 -> p(1)"),
        ("strict dlv not sum >= 1", Translation::dlv().strict_item3(true), NOT_SUM_GE_RULE,
         "NOT sum(cli.$S) >= 1 -> p(1)"),
    ];
    cases
        .into_iter()
        .map(|(label, x, src, expected)| {
            let (f, sig) = translate_rule(x, src);
            let (_, name) = sig.set_symbols().next().unwrap();
            let expected = parse_formula(&expected.replace("$S", name)).unwrap();
            (label.to_string(), f, expected)
        })
        .collect()
}

/// The `τ^dlv` translation of NOT_SUM_GE_RULE built directly as a tree, so the
/// check does not depend on the formula parser.
pub fn dlv_not_sum_ge_tree(set_name: &str) -> Formula {
    let sum = FoTerm::Agg {
        op: AggregateOp::Sum,
        set: Box::new(FoTerm::SetApp {
            fun: SetFn {
                semantics: Semantics::Dlv,
                name: set_name.to_string(),
                hatted: false,
            },
            args: vec![],
        }),
    };
    let one = FoTerm::Ground(GroundTerm::numeral(1));
    Formula::implies(
        Formula::strong_neg(Formula::Cmp(sum, Relation::GreaterEqual, one.clone())),
        Formula::atom("p", vec![one]),
    )
}

/// Parses `text` with the `tptp` crate's TFF grammar and returns the name
/// and role of every annotated formula.
pub fn tptp_roles(text: &str) -> Result<Vec<(String, String)>, String> {
    let mut inputs = TPTPIterator::<()>::new(text.as_bytes());
    let mut out = Vec::new();
    for input in &mut inputs {
        let input = input.map_err(|_| "syntax error".to_string())?;
        let TPTPInput::Annotated(annotated) = input else {
            return Err("unexpected include".into());
        };
        let AnnotatedFormula::Tfx(tff) = *annotated else {
            return Err(format!("not a tff formula: {annotated}"));
        };
        out.push((tff.0.name.to_string(), tff.0.role.to_string()));
    }
    if !inputs.remaining.iter().all(u8::is_ascii_whitespace) {
        return Err(format!(
            "unparsed input: {}",
            String::from_utf8_lossy(inputs.remaining)
        ));
    }
    Ok(out)
}

pub fn count_roles(roles: &[(String, String)], prefix: &str, role: &str) -> usize {
    roles
        .iter()
        .filter(|(n, r)| n.starts_with(prefix) && r == role)
        .count()
}
