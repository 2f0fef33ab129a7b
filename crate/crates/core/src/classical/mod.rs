//! Reduction of Here-and-There reasoning to classical first-order logic over
//! the hatted signature: the γ transformation, the HT and AGG axiom
//! schemata, and verification conditions for strong equivalence.

mod interp;
mod tptp;

use std::collections::BTreeSet;

use crate::{
    analysis::{build_signature, Signature},
    folog::{hat, nn, FoTerm, Formula, Predicate, Semantics, SetFn, Sort, Theory, Var},
    syntax::{GroundTerm, Program, Relation},
    translate::{tau_term, TranslateError, Translation},
};

pub use interp::{ih_interpretation, Tabulated};
pub use tptp::{emit_tptp, TptpOptions};

/// The γ transformation. The result is standard and interprets unhatted
/// symbols in the here-world and hatted ones in the there-world.
pub fn gamma(f: &Formula) -> Formula {
    match f {
        Formula::Bottom => Formula::Bottom,
        _ if f.is_atomic() => {
            let there = hat(f);
            if there == *f {
                f.clone()
            } else {
                Formula::and(f.clone(), there)
            }
        }
        Formula::StrongNeg(g) => Formula::and(Formula::not(hat(&nn(g))), Formula::not(nn(g))),
        Formula::Implies(g, h) if **h == Formula::Bottom => Formula::not(hat(&nn(g))),
        Formula::Implies(g, h) => Formula::and(
            Formula::implies(gamma(g), gamma(h)),
            Formula::implies(hat(&nn(g)), hat(&nn(h))),
        ),
        Formula::And(g, h) => Formula::and(gamma(g), gamma(h)),
        Formula::Or(g, h) => Formula::or(gamma(g), gamma(h)),
        Formula::Forall(v, g) => Formula::Forall(v.clone(), Box::new(gamma(g))),
        Formula::Exists(v, g) => Formula::Exists(v.clone(), Box::new(gamma(g))),
        _ => unreachable!("atomic formulas are handled above"),
    }
}

fn general_vars(prefix: &str, n: usize) -> Vec<Var> {
    (1..=n)
        .map(|i| Var::general(format!("{prefix}{i}")))
        .collect()
}

fn var_terms(vars: &[Var]) -> Vec<FoTerm> {
    vars.iter().cloned().map(FoTerm::Var).collect()
}

/// `∀X (p(X) → p̂(X))` for every predicate symbol of `sig`.
pub fn ht_axioms(sig: &Signature) -> Theory {
    sig.predicates
        .iter()
        .map(|p| {
            let vars = general_vars("X", p.arity);
            let pred = Predicate::new(p.name.clone(), p.arity);
            let here = Formula::Atom {
                pred,
                args: var_terms(&vars),
            };
            Formula::forall(vars, Formula::implies(here.clone(), hat(&here)))
        })
        .collect()
}

/// The AGG axioms of `sig`, three per set symbol: the there-world values of
/// both set functions, the here-world value of `s^cli`, and the here-world
/// value of `s^dlv`.
pub fn agg_axioms(sig: &Signature) -> Theory {
    let mut out = Theory::new();
    for (symbol, name) in sig.set_symbols() {
        let used: BTreeSet<String> = symbol
            .element
            .variables()
            .into_iter()
            .map(|v| v.name().to_string())
            .collect();
        let t = fresh_var("T", Sort::Tuple, &used);
        let globals: Vec<Var> = symbol
            .globals
            .iter()
            .map(|v| Var::general(v.name()))
            .collect();
        let locals: Vec<Var> = symbol
            .locals()
            .iter()
            .map(|v| Var::general(v.name()))
            .collect();
        let template = FoTerm::Tuple(symbol.element.terms.iter().map(tau_term).collect());
        let condition = |x: Semantics| {
            let translation = Translation::new(x);
            Formula::conjoin(
                std::iter::once(Formula::Eq(FoTerm::Var(t.clone()), template.clone())).chain(
                    symbol
                        .element
                        .conditions
                        .iter()
                        .map(|l| translation.tau_basic(l)),
                ),
            )
        };
        let axiom = |x: Semantics, hatted: bool, rhs: Formula| {
            let set = FoTerm::SetApp {
                fun: SetFn {
                    semantics: x,
                    name: name.to_string(),
                    hatted,
                },
                args: var_terms(&globals),
            };
            let member = Formula::Member(FoTerm::Var(t.clone()), set);
            Formula::forall(
                globals.iter().cloned().chain([t.clone()]),
                Formula::iff(member, Formula::exists(locals.clone(), rhs)),
            )
        };
        let cli = condition(Semantics::Cli);
        let dlv = condition(Semantics::Dlv);
        out.insert(Formula::and(
            axiom(Semantics::Cli, true, hat(&nn(&cli))),
            axiom(Semantics::Dlv, true, hat(&nn(&dlv))),
        ));
        out.insert(axiom(Semantics::Cli, false, gamma(&cli)));
        out.insert(axiom(Semantics::Dlv, false, nn(&dlv)));
    }
    out
}

fn fresh_var(base: &str, sort: Sort, used: &BTreeSet<String>) -> Var {
    let name = std::iter::once(base.to_string())
        .chain((1..).map(|i| format!("{base}{i}")))
        .find(|n| !used.contains(n))
        .expect("an unused name");
    Var::new(name, sort)
}

/// Ground terms occurring in `f`.
pub fn ground_terms(f: &Formula) -> BTreeSet<GroundTerm> {
    fn term(t: &FoTerm, out: &mut BTreeSet<GroundTerm>) {
        match t {
            FoTerm::Ground(g) => {
                out.insert(g.clone());
            }
            FoTerm::Var(_) => {}
            FoTerm::Tuple(args) | FoTerm::SetApp { args, .. } => {
                args.iter().for_each(|a| term(a, out))
            }
            FoTerm::Agg { set, .. } => term(set, out),
        }
    }
    fn walk(f: &Formula, out: &mut BTreeSet<GroundTerm>) {
        match f {
            Formula::Bottom => {}
            Formula::Atom { args, .. } => args.iter().for_each(|a| term(a, out)),
            Formula::Eq(l, r) | Formula::Cmp(l, _, r) | Formula::Member(l, r) => {
                term(l, out);
                term(r, out);
            }
            Formula::StrongNeg(g) | Formula::Forall(_, g) | Formula::Exists(_, g) => walk(g, out),
            Formula::And(g, h) | Formula::Or(g, h) | Formula::Implies(g, h) => {
                walk(g, out);
                walk(h, out);
            }
        }
    }
    let mut out = BTreeSet::new();
    walk(f, &mut out);
    out
}

/// Axioms that partially pin down the standard interpretation of the
/// non-intensional symbols. They are sound for every standard
/// interpretation but not complete:
///
/// - `<` is a strict total order, and `≤`, `>`, `≥` are defined from it;
/// - `#inf` is least and `#sup` greatest;
/// - the ground terms in `terms`, together with `0`, form a `<`-chain in
///   the order on ground terms;
/// - tuple constructors of the arities in `tuple_arities` are injective and
///   have disjoint ranges;
/// - sets are extensional;
/// - `count` and `sum` of the empty set are `0`.
pub fn standardness_axioms(
    terms: &BTreeSet<GroundTerm>,
    tuple_arities: &BTreeSet<usize>,
) -> Theory {
    let (x, y, z) = (FoTerm::var("X"), FoTerm::var("Y"), FoTerm::var("Z"));
    let xyz = ["X", "Y", "Z"].map(Var::general).to_vec();
    let lt = |a: &FoTerm, b: &FoTerm| Formula::compare(a.clone(), Relation::Less, b.clone());
    let mut out = Theory::new();
    out.insert(Formula::forall(xyz[..1].to_vec(), Formula::not(lt(&x, &x))));
    out.insert(Formula::forall(
        xyz.clone(),
        Formula::implies(Formula::and(lt(&x, &y), lt(&y, &z)), lt(&x, &z)),
    ));
    out.insert(Formula::forall(
        xyz[..2].to_vec(),
        Formula::disjoin([lt(&x, &y), Formula::Eq(x.clone(), y.clone()), lt(&y, &x)]),
    ));
    let definitions = [
        (
            Relation::LessEqual,
            Formula::or(lt(&x, &y), Formula::Eq(x.clone(), y.clone())),
        ),
        (Relation::Greater, lt(&y, &x)),
        (
            Relation::GreaterEqual,
            Formula::or(lt(&y, &x), Formula::Eq(x.clone(), y.clone())),
        ),
    ];
    for (rel, definition) in definitions {
        out.insert(Formula::forall(
            xyz[..2].to_vec(),
            Formula::iff(Formula::compare(x.clone(), rel, y.clone()), definition),
        ));
    }
    let inf = FoTerm::Ground(GroundTerm::Infimum);
    let sup = FoTerm::Ground(GroundTerm::Supremum);
    out.insert(Formula::forall(
        xyz[..1].to_vec(),
        Formula::compare(inf.clone(), Relation::LessEqual, x.clone()),
    ));
    out.insert(Formula::forall(
        xyz[..1].to_vec(),
        Formula::compare(x.clone(), Relation::LessEqual, sup.clone()),
    ));

    let chain: BTreeSet<GroundTerm> = terms
        .iter()
        .cloned()
        .chain([
            GroundTerm::Infimum,
            GroundTerm::numeral(0),
            GroundTerm::Supremum,
        ])
        .collect();
    let chain: Vec<FoTerm> = chain.into_iter().map(FoTerm::Ground).collect();
    for pair in chain.windows(2) {
        out.insert(lt(&pair[0], &pair[1]));
    }

    for &k in tuple_arities {
        if k == 0 {
            continue;
        }
        let xs = general_vars("X", k);
        let ys = general_vars("Y", k);
        let equal_args = Formula::conjoin(
            xs.iter()
                .zip(&ys)
                .map(|(a, b)| Formula::Eq(FoTerm::Var(a.clone()), FoTerm::Var(b.clone()))),
        );
        out.insert(Formula::forall(
            xs.iter().chain(&ys).cloned(),
            Formula::implies(
                Formula::Eq(FoTerm::Tuple(var_terms(&xs)), FoTerm::Tuple(var_terms(&ys))),
                equal_args,
            ),
        ));
    }
    for (&k, &l) in tuple_arities
        .iter()
        .flat_map(|k| tuple_arities.iter().map(move |l| (k, l)))
        .filter(|(k, l)| k < l)
    {
        let xs = general_vars("X", k);
        let ys = general_vars("Y", l);
        out.insert(Formula::forall(
            xs.iter().chain(&ys).cloned(),
            Formula::not(Formula::Eq(
                FoTerm::Tuple(var_terms(&xs)),
                FoTerm::Tuple(var_terms(&ys)),
            )),
        ));
    }

    let s1 = Var::new("S1", Sort::Set);
    let s2 = Var::new("S2", Sort::Set);
    let t = Var::new("T", Sort::Tuple);
    let member = |s: &Var| Formula::Member(FoTerm::Var(t.clone()), FoTerm::Var(s.clone()));
    out.insert(Formula::forall(
        [s1.clone(), s2.clone()],
        Formula::implies(
            Formula::forall([t.clone()], Formula::iff(member(&s1), member(&s2))),
            Formula::Eq(FoTerm::Var(s1.clone()), FoTerm::Var(s2.clone())),
        ),
    ));
    let zero = FoTerm::Ground(GroundTerm::numeral(0));
    let empty_value = |op| {
        Formula::Eq(
            FoTerm::Agg {
                op,
                set: Box::new(FoTerm::Var(s1.clone())),
            },
            zero.clone(),
        )
    };
    out.insert(Formula::forall(
        [s1.clone()],
        Formula::implies(
            Formula::forall([t.clone()], Formula::not(member(&s1))),
            Formula::and(
                empty_value(crate::syntax::AggregateOp::Count),
                empty_value(crate::syntax::AggregateOp::Sum),
            ),
        ),
    ));
    out
}

/// The sentence `∧HT ∧ ∧AGG → (F1 ↔ F2)` whose validity over standard
/// interpretations of the hatted signature characterizes strong equivalence
/// of two programs, with its parts kept apart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationCondition {
    pub semantics: Semantics,
    pub signature: Signature,
    pub ht_axioms: Theory,
    pub agg_axioms: Theory,
    pub standardness_axioms: Theory,
    /// `F1`, the conjunction of `γ` of the translated sentences of the left
    /// program.
    pub left: Formula,
    pub right: Formula,
}

impl VerificationCondition {
    /// `∧HT ∧ ∧AGG → (F1 ↔ F2)`
    pub fn goal(&self) -> Formula {
        Formula::implies(
            Formula::and(self.ht_axioms.conjunction(), self.agg_axioms.conjunction()),
            Formula::iff(self.left.clone(), self.right.clone()),
        )
    }
}

pub fn build_vc(
    left: &Program,
    right: &Program,
    translation: Translation,
) -> Result<VerificationCondition, TranslateError> {
    let signature = build_signature([left, right]);
    let side = |p: &Program| -> Result<Formula, TranslateError> {
        let theory = translation.tau_program(p, &signature)?;
        Ok(Formula::conjoin(theory.sentences().iter().map(gamma)))
    };
    let left = side(left)?;
    let right = side(right)?;
    let ht_axioms = ht_axioms(&signature);
    let agg_axioms = agg_axioms(&signature);
    let mut terms = ground_terms(&left);
    terms.extend(ground_terms(&right));
    for f in agg_axioms.sentences() {
        terms.extend(ground_terms(f));
    }
    let standardness_axioms = standardness_axioms(&terms, &signature.tuple_arities);
    Ok(VerificationCondition {
        semantics: translation.semantics,
        signature,
        ht_axioms,
        agg_axioms,
        standardness_axioms,
        left,
        right,
    })
}
