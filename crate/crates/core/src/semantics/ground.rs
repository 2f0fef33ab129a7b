//! Propositional grounding, reducts and answer sets.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use super::{
    enumerate::{subsets_by_size, subsets_of},
    GroundAtom, HtPair, PropInterp, Result, Scope, SemanticsError, MAX_ATOMS,
};
use crate::{
    analysis::global_vars,
    folog::Semantics,
    syntax::{
        AggregateAtom, AggregateElement, Atom, AtomicFormula, BasicLiteral, Comparison, GroundTerm,
        Head, Literal, Program, Rule, Sign, Term, TupleSet, Variable,
    },
};

/// A finite propositional formula. `¬F` is `F → ⊥` and `⊤` is the empty
/// conjunction.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroundFormula {
    Bottom,
    Atom(GroundAtom),
    And(Vec<GroundFormula>),
    Or(Vec<GroundFormula>),
    Implies(Box<GroundFormula>, Box<GroundFormula>),
    StrongNeg(Box<GroundFormula>),
}

impl GroundFormula {
    pub fn top() -> Self {
        GroundFormula::And(Vec::new())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: GroundFormula) -> Self {
        GroundFormula::implies(f, GroundFormula::Bottom)
    }

    pub fn implies(f: GroundFormula, g: GroundFormula) -> Self {
        GroundFormula::Implies(Box::new(f), Box::new(g))
    }

    pub fn atoms(&self, out: &mut BTreeSet<GroundAtom>) {
        match self {
            GroundFormula::Bottom => {}
            GroundFormula::Atom(a) => {
                out.insert(a.clone());
            }
            GroundFormula::And(fs) | GroundFormula::Or(fs) => {
                fs.iter().for_each(|f| f.atoms(out));
            }
            GroundFormula::Implies(f, g) => {
                f.atoms(out);
                g.atoms(out);
            }
            GroundFormula::StrongNeg(f) => f.atoms(out),
        }
    }
}

type Assignment = BTreeMap<Variable, GroundTerm>;

fn subst_term(t: &Term, sigma: &Assignment) -> Term {
    match t {
        Term::Variable(v) => sigma
            .get(v)
            .cloned()
            .map(Term::Ground)
            .unwrap_or_else(|| t.clone()),
        Term::Ground(_) => t.clone(),
    }
}

fn subst_atom(a: &Atom, sigma: &Assignment) -> Atom {
    Atom::new(
        a.predicate.clone(),
        a.terms.iter().map(|t| subst_term(t, sigma)).collect(),
    )
}

fn subst_basic(l: &BasicLiteral, sigma: &Assignment) -> BasicLiteral {
    let atom = match &l.atom {
        AtomicFormula::Atom(a) => AtomicFormula::Atom(subst_atom(a, sigma)),
        AtomicFormula::Comparison(c) => AtomicFormula::Comparison(Comparison {
            lhs: subst_term(&c.lhs, sigma),
            relation: c.relation,
            rhs: subst_term(&c.rhs, sigma),
        }),
    };
    BasicLiteral { sign: l.sign, atom }
}

fn subst_element(e: &AggregateElement, sigma: &Assignment) -> AggregateElement {
    AggregateElement {
        terms: e.terms.iter().map(|t| subst_term(t, sigma)).collect(),
        conditions: e.conditions.iter().map(|l| subst_basic(l, sigma)).collect(),
    }
}

fn subst_rule(rule: &Rule, sigma: &Assignment) -> Rule {
    let head = match &rule.head {
        Head::Atom(a) => Head::Atom(subst_atom(a, sigma)),
        Head::Falsity => Head::Falsity,
    };
    let body = rule
        .body
        .iter()
        .map(|l| match l {
            Literal::Basic(b) => Literal::Basic(subst_basic(b, sigma)),
            Literal::Aggregate { sign, atom } => Literal::Aggregate {
                sign: *sign,
                atom: AggregateAtom {
                    op: atom.op,
                    element: subst_element(&atom.element, sigma),
                    relation: atom.relation,
                    guard: subst_term(&atom.guard, sigma),
                },
            },
        })
        .collect();
    Rule { head, body }
}

/// Every assignment of pool terms to `vars`, in lexicographic order.
pub(crate) fn assignments(vars: &[Variable], pool: &[GroundTerm]) -> Vec<Assignment> {
    if vars.is_empty() {
        return vec![Assignment::new()];
    }
    vars.iter()
        .map(|_| pool.iter().cloned())
        .multi_cartesian_product()
        .map(|values| vars.iter().cloned().zip(values).collect())
        .collect()
}

/// One instance of `rule` per assignment of pool terms to its global
/// variables. Variables local to aggregate elements are kept.
pub fn herbrand_instances(rule: &Rule, scope: &Scope) -> Vec<Rule> {
    let globals: Vec<Variable> = global_vars(rule).into_iter().collect();
    assignments(&globals, &scope.pool())
        .iter()
        .map(|sigma| subst_rule(rule, sigma))
        .collect()
}

fn ground_of(t: &Term) -> Result<GroundTerm> {
    t.as_ground()
        .cloned()
        .ok_or_else(|| SemanticsError::NotGround(t.to_string()))
}

/// The propositional translation of a ground basic literal; comparisons
/// become `⊤` or `⊥`.
fn tau_ground_basic(l: &BasicLiteral) -> Result<GroundFormula> {
    let inner = match &l.atom {
        AtomicFormula::Atom(a) => GroundFormula::Atom(GroundAtom::from_atom(a)?),
        AtomicFormula::Comparison(c) => {
            if c.relation.holds(&ground_of(&c.lhs)?, &ground_of(&c.rhs)?) {
                GroundFormula::top()
            } else {
                GroundFormula::Bottom
            }
        }
    };
    Ok(apply_sign(l.sign, inner))
}

fn apply_sign(sign: Sign, f: GroundFormula) -> GroundFormula {
    match sign {
        Sign::NoSign => f,
        Sign::Negation => GroundFormula::not(f),
        Sign::DoubleNegation => GroundFormula::not(GroundFormula::not(f)),
    }
}

/// The propositional translation of an aggregate atom whose global variables
/// are already instantiated: for every subset `Δ` of the element instances
/// `Ψ` that does not justify the atom, the implication from the conditions of
/// `Δ` to the disjunction of the conditions of `Ψ \ Δ`.
pub fn expand_aggregate(agg: &AggregateAtom, scope: &Scope) -> Result<GroundFormula> {
    let guard = ground_of(&agg.guard)?;
    let locals: Vec<Variable> = agg.element.variables().into_iter().collect();
    let pool = scope.pool();
    let size = (pool.len() as u128).saturating_pow(locals.len() as u32);
    let limit = scope.max_subset.min(MAX_ATOMS) as u128;
    if size > limit {
        return Err(SemanticsError::ScopeExplosion {
            what: format!("the aggregate element `{}`", agg.element),
            size,
            limit,
        });
    }
    let mut instances = Vec::new();
    for sigma in assignments(&locals, &pool) {
        let element = subst_element(&agg.element, &sigma);
        let tuple = element
            .terms
            .iter()
            .map(ground_of)
            .collect::<Result<Vec<_>>>()?;
        let condition = element
            .conditions
            .iter()
            .map(tau_ground_basic)
            .collect::<Result<Vec<_>>>()?;
        instances.push((tuple, GroundFormula::And(condition)));
    }
    let mut conjuncts = Vec::new();
    for mask in 0u64..(1 << instances.len()) {
        let inside = |i: usize| mask & (1 << i) != 0;
        let delta: TupleSet = instances
            .iter()
            .enumerate()
            .filter(|(i, _)| inside(*i))
            .map(|(_, (t, _))| t.clone())
            .collect();
        if agg.relation.holds(&agg.op.apply(&delta), &guard) {
            continue;
        }
        let (body, head): (Vec<_>, Vec<_>) =
            instances.iter().enumerate().partition_map(|(i, (_, c))| {
                if inside(i) {
                    itertools::Either::Left(c.clone())
                } else {
                    itertools::Either::Right(c.clone())
                }
            });
        conjuncts.push(GroundFormula::implies(
            GroundFormula::And(body),
            GroundFormula::Or(head),
        ));
    }
    Ok(GroundFormula::And(conjuncts))
}

fn tau_ground_rule(rule: &Rule, scope: &Scope) -> Result<GroundFormula> {
    let head = match &rule.head {
        Head::Atom(a) => GroundFormula::Atom(GroundAtom::from_atom(a)?),
        Head::Falsity => GroundFormula::Bottom,
    };
    let body = rule
        .body
        .iter()
        .map(|l| match l {
            Literal::Basic(b) => tau_ground_basic(b),
            Literal::Aggregate { sign, atom } => {
                Ok(apply_sign(*sign, expand_aggregate(atom, scope)?))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GroundFormula::implies(GroundFormula::And(body), head))
}

/// The grounding of the propositional translation of `program`: one
/// implication per rule instance, facts included as `⊤ → head`.
pub fn ground_program(program: &Program, scope: &Scope) -> Result<GroundFormula> {
    let mut conjuncts = Vec::new();
    for rule in &program.rules {
        for instance in herbrand_instances(rule, scope) {
            conjuncts.push(tau_ground_rule(&instance, scope)?);
        }
    }
    Ok(GroundFormula::And(conjuncts))
}

/// Classical satisfaction; `⌐` is classical negation.
pub fn eval_prop(f: &GroundFormula, interp: &PropInterp) -> bool {
    match f {
        GroundFormula::Bottom => false,
        GroundFormula::Atom(a) => interp.contains(a),
        GroundFormula::And(fs) => fs.iter().all(|g| eval_prop(g, interp)),
        GroundFormula::Or(fs) => fs.iter().any(|g| eval_prop(g, interp)),
        GroundFormula::Implies(g, h) => !eval_prop(g, interp) || eval_prop(h, interp),
        GroundFormula::StrongNeg(g) => !eval_prop(g, interp),
    }
}

/// Here-and-There satisfaction of a propositional formula.
pub fn eval_ground_ht(f: &GroundFormula, pair: &HtPair) -> bool {
    match f {
        GroundFormula::Bottom => false,
        GroundFormula::Atom(a) => pair.here().contains(a),
        GroundFormula::And(fs) => fs.iter().all(|g| eval_ground_ht(g, pair)),
        GroundFormula::Or(fs) => fs.iter().any(|g| eval_ground_ht(g, pair)),
        GroundFormula::Implies(g, h) => {
            eval_prop(f, pair.there()) && (!eval_ground_ht(g, pair) || eval_ground_ht(h, pair))
        }
        GroundFormula::StrongNeg(g) => !eval_prop(g, pair.there()) && !eval_prop(g, pair.here()),
    }
}

/// The reduct `F^I`: subformulas false in `I` become `⊥`. Strong negation is
/// reduced like `¬`.
pub fn ft_reduct(f: &GroundFormula, interp: &PropInterp) -> GroundFormula {
    if !eval_prop(f, interp) {
        return GroundFormula::Bottom;
    }
    match f {
        GroundFormula::Bottom => GroundFormula::Bottom,
        GroundFormula::Atom(_) => f.clone(),
        GroundFormula::And(fs) => {
            GroundFormula::And(fs.iter().map(|g| ft_reduct(g, interp)).collect())
        }
        GroundFormula::Or(fs) => {
            GroundFormula::Or(fs.iter().map(|g| ft_reduct(g, interp)).collect())
        }
        GroundFormula::Implies(g, h) => {
            GroundFormula::implies(ft_reduct(g, interp), ft_reduct(h, interp))
        }
        GroundFormula::StrongNeg(g) => {
            GroundFormula::implies(ft_reduct(g, interp), GroundFormula::Bottom)
        }
    }
}

/// Keeps the implications whose antecedent `I` satisfies and replaces the
/// others by `⊤`. Conjuncts that are not implications are kept.
pub fn flp_reduct(f: &GroundFormula, interp: &PropInterp) -> GroundFormula {
    let select = |g: &GroundFormula| match g {
        GroundFormula::Implies(body, _) if !eval_prop(body, interp) => GroundFormula::top(),
        _ => g.clone(),
    };
    match f {
        GroundFormula::And(fs) => GroundFormula::And(fs.iter().map(select).collect()),
        _ => select(f),
    }
}

/// Heads of the top-level implications; no other atom can belong to an
/// answer set.
fn head_atoms(f: &GroundFormula) -> BTreeSet<GroundAtom> {
    let mut out = BTreeSet::new();
    let conjuncts = match f {
        GroundFormula::And(fs) => fs.as_slice(),
        _ => std::slice::from_ref(f),
    };
    for g in conjuncts {
        if let GroundFormula::Implies(_, head) = g {
            head.atoms(&mut out);
        }
    }
    out
}

/// Answer sets of `program` under the clingo (FT-reduct) or dlv
/// (FLP-reduct) semantics, found by brute force over the head atoms of the
/// grounding. The result is in enumeration order.
pub fn answer_sets(program: &Program, scope: &Scope, sem: Semantics) -> Result<Vec<PropInterp>> {
    let ground = ground_program(program, scope)?;
    let atoms: Vec<GroundAtom> = head_atoms(&ground).into_iter().collect();
    if atoms.len() > MAX_ATOMS {
        return Err(SemanticsError::ScopeExplosion {
            what: "the set of candidate atoms".into(),
            size: atoms.len() as u128,
            limit: MAX_ATOMS as u128,
        });
    }
    let mut out = Vec::new();
    for candidate in subsets_by_size(&atoms) {
        let interp = PropInterp::new(candidate.iter().cloned());
        if !eval_prop(&ground, &interp) {
            continue;
        }
        let reduct = match sem {
            Semantics::Cli => ft_reduct(&ground, &interp),
            Semantics::Dlv => flp_reduct(&ground, &interp),
        };
        let minimal = subsets_of(&candidate, true)
            .all(|smaller| !eval_prop(&reduct, &PropInterp::new(smaller)));
        if minimal {
            out.push(interp);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_program, parse_rule};

    fn atom(p: &str, n: i64) -> GroundAtom {
        GroundAtom::new(p, vec![GroundTerm::numeral(n)])
    }

    fn af(p: &str, n: i64) -> GroundFormula {
        GroundFormula::Atom(atom(p, n))
    }

    fn interp(atoms: &[(&str, i64)]) -> PropInterp {
        atoms.iter().map(|(p, n)| atom(p, *n)).collect()
    }

    fn aggregate(src: &str) -> AggregateAtom {
        parse_rule(src)
            .unwrap()
            .aggregates()
            .next()
            .unwrap()
            .clone()
    }

    #[test]
    fn instances() {
        let scope = Scope::ints(-1, 1).unwrap();
        let rule = parse_rule("q(Y) :- p(X), X != Y.").unwrap();
        assert_eq!(herbrand_instances(&rule, &scope).len(), 9);
        let ground = parse_rule("q(1) :- p(1).").unwrap();
        assert_eq!(herbrand_instances(&ground, &scope), vec![ground]);
        let company = parse_rule(
            "controls(C1,C3) :- company(C1), company(C3), #sum{P,C2 : ctrStk(C1,C2,C3,P)} > 50.",
        )
        .unwrap();
        let constants = Scope::new(["c1", "c2", "c3"], None).unwrap();
        let instances = herbrand_instances(&company, &constants);
        assert_eq!(instances.len(), 9);
        // local variables survive instantiation
        assert_eq!(
            instances[0]
                .aggregates()
                .next()
                .unwrap()
                .element
                .variables()
                .len(),
            2
        );
    }

    #[test]
    fn expansion_with_one_instance() {
        let agg = aggregate("p(1) :- #sum{X : q(X), not r(X)} < 1.");
        let f = expand_aggregate(&agg, &Scope::ints(1, 1).unwrap()).unwrap();
        let condition = GroundFormula::And(vec![af("q", 1), GroundFormula::not(af("r", 1))]);
        assert_eq!(
            f,
            GroundFormula::And(vec![GroundFormula::implies(
                GroundFormula::And(vec![condition]),
                GroundFormula::Or(vec![])
            )])
        );
    }

    #[test]
    fn expansion_with_two_instances() {
        let agg = aggregate("p(1) :- #sum{X : q(X), not r(X)} < 1.");
        let f = expand_aggregate(&agg, &Scope::ints(-1, 1).unwrap().with_max_subset(3)).unwrap();
        let cond = |n| GroundFormula::And(vec![af("q", n), GroundFormula::not(af("r", n))]);
        // Ψ = {-1, 0, 1}; the non-justifying subsets are those with sum >= 1:
        // {1}, {0, 1}
        let GroundFormula::And(conjuncts) = f else {
            panic!()
        };
        assert_eq!(
            conjuncts,
            vec![
                GroundFormula::implies(
                    GroundFormula::And(vec![cond(1)]),
                    GroundFormula::Or(vec![cond(-1), cond(0)])
                ),
                GroundFormula::implies(
                    GroundFormula::And(vec![cond(0), cond(1)]),
                    GroundFormula::Or(vec![cond(-1)])
                ),
            ]
        );
    }

    #[test]
    fn trivial_expansion() {
        let agg = aggregate("p :- #count{X : p(X)} >= 0.");
        let f = expand_aggregate(&agg, &Scope::ints(0, 2).unwrap()).unwrap();
        assert_eq!(f, GroundFormula::top());
    }

    #[test]
    fn expansion_limit() {
        let agg = aggregate("p :- #count{X, Y : q(X, Y)} > 0.");
        let err = expand_aggregate(&agg, &Scope::ints(0, 3).unwrap()).unwrap_err();
        assert!(matches!(
            err,
            SemanticsError::ScopeExplosion { size: 16, .. }
        ));
    }

    #[test]
    fn propositional_evaluation() {
        assert!(!eval_prop(&GroundFormula::Bottom, &interp(&[])));
        assert!(eval_prop(
            &GroundFormula::StrongNeg(Box::new(af("p", 1))),
            &interp(&[])
        ));
        let f = GroundFormula::implies(af("p", 1), af("q", 1));
        assert!(!eval_prop(&f, &interp(&[("p", 1)])));
    }

    #[test]
    fn reducts() {
        let i = interp(&[("q", 1)]);
        assert_eq!(ft_reduct(&af("p", 1), &i), GroundFormula::Bottom);
        assert_eq!(ft_reduct(&af("q", 1), &i), af("q", 1));
        // (¬p → q)^I = (⊥ → ⊥) → q
        let f = GroundFormula::implies(GroundFormula::not(af("p", 1)), af("q", 1));
        assert_eq!(
            ft_reduct(&f, &i),
            GroundFormula::implies(
                GroundFormula::implies(GroundFormula::Bottom, GroundFormula::Bottom),
                af("q", 1)
            )
        );
        let rules = GroundFormula::And(vec![
            GroundFormula::implies(af("p", 1), af("q", 1)),
            GroundFormula::implies(af("q", 1), af("p", 1)),
        ]);
        assert_eq!(
            flp_reduct(&rules, &i),
            GroundFormula::And(vec![
                GroundFormula::top(),
                GroundFormula::implies(af("q", 1), af("p", 1))
            ])
        );
        assert_eq!(flp_reduct(&GroundFormula::top(), &i), GroundFormula::top());
    }

    const SUM_LT_RULE: &str = "p(1) :- #sum{X : q(X), not r(X)} < 1.";
    const NOT_SUM_GE_RULE: &str = "p(1) :- not #sum{X : q(X), not r(X)} >= 1.";
    const MIRROR_CONTEXT: &str =
        "q(1).\nq(-1) :- p(1).\nq(0) :- p(0).\nq(1) :- p(-1).\n:- not p(1).";

    fn program(parts: &[&str]) -> Program {
        parse_program(&parts.join("\n")).unwrap()
    }

    #[test]
    fn unique_answer_sets() {
        let scope = Scope::ints(1, 1).unwrap();
        for rule in [SUM_LT_RULE, NOT_SUM_GE_RULE] {
            for sem in [Semantics::Cli, Semantics::Dlv] {
                assert_eq!(
                    answer_sets(&program(&[rule]), &scope, sem).unwrap(),
                    vec![interp(&[("p", 1)])]
                );
            }
        }
    }

    #[test]
    fn answer_sets_with_context() {
        let scope = Scope::ints(-1, 1).unwrap();
        assert!(answer_sets(
            &program(&[SUM_LT_RULE, MIRROR_CONTEXT]),
            &scope,
            Semantics::Cli
        )
        .unwrap()
        .is_empty());
        assert_eq!(
            answer_sets(
                &program(&[NOT_SUM_GE_RULE, MIRROR_CONTEXT]),
                &scope,
                Semantics::Cli
            )
            .unwrap(),
            vec![interp(&[("p", 1), ("q", -1), ("q", 1)])]
        );
    }

    #[test]
    fn non_tight_programs() {
        let scope = Scope::ints(0, 0).unwrap();
        let positive_loop = program(&["p :- q.", "q :- p."]);
        for sem in [Semantics::Cli, Semantics::Dlv] {
            assert_eq!(
                answer_sets(&positive_loop, &scope, sem).unwrap(),
                vec![PropInterp::default()]
            );
        }
        let choice = program(&["p :- not q.", "q :- not p."]);
        assert_eq!(
            answer_sets(&choice, &scope, Semantics::Cli).unwrap().len(),
            2
        );
    }

    #[test]
    fn ht_satisfaction() {
        let pair = HtPair::new(interp(&[]), interp(&[("p", 1)])).unwrap();
        assert!(!eval_ground_ht(&af("p", 1), &pair));
        assert!(eval_ground_ht(
            &GroundFormula::not(GroundFormula::not(af("p", 1))),
            &pair
        ));
        assert!(!eval_ground_ht(
            &GroundFormula::Or(vec![af("p", 1), GroundFormula::not(af("p", 1))]),
            &pair
        ));
    }
}
