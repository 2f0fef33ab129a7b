//! Classical and Here-and-There evaluation of first-order formulas over the
//! target signature, with set-function values derived from the worlds.

use std::{
    cell::RefCell,
    collections::{BTreeSet, HashMap},
};

use super::{ground::assignments, GroundAtom, HtPair, Result, Scope, SemanticsError, World};
use crate::{
    analysis::{SetSymbol, Signature},
    folog::{FoTerm, Formula, Predicate, Semantics, SetFn, Sort, Var},
    syntax::{GroundTerm, Tuple, TupleSet, Variable},
    translate::{tau_term, Translation},
};

/// A domain element of one of the three sorts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    General(GroundTerm),
    Tuple(Tuple),
    Set(TupleSet),
}

/// Interpretation of the intensional symbols; everything else is standard.
pub trait Structure {
    fn holds(&self, pred: &Predicate, args: &[GroundTerm]) -> Result<bool>;
    fn set_value(&self, fun: &SetFn, args: &[GroundTerm]) -> Result<TupleSet>;
}

/// Variable bindings, innermost last.
pub type Env = Vec<(Var, Value)>;

/// The elements quantifiers range over: the scope's pool for the general
/// sort, and for the tuple sort every pool tuple of a constructor arity
/// together with every tuple an aggregate element can produce over the pool.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Domain {
    pub general: Vec<GroundTerm>,
    pub tuples: Vec<Tuple>,
}

impl Domain {
    pub fn new(scope: &Scope, sig: &Signature) -> Self {
        let pool = scope.pool();
        let mut tuples = BTreeSet::new();
        for &k in &sig.tuple_arities {
            let vars: Vec<Variable> = (0..k).map(|i| Variable::new(format!("V{i}"))).collect();
            for sigma in assignments(&vars, &pool) {
                tuples.insert(sigma.into_values().collect::<Tuple>());
            }
        }
        for (symbol, _) in sig.set_symbols() {
            let vars: Vec<Variable> = symbol.element.variables().into_iter().collect();
            for sigma in assignments(&vars, &pool) {
                let tuple = symbol
                    .element
                    .terms
                    .iter()
                    .map(|t| match t {
                        crate::syntax::Term::Ground(g) => g.clone(),
                        crate::syntax::Term::Variable(v) => sigma[v].clone(),
                    })
                    .collect();
                tuples.insert(tuple);
            }
        }
        Domain {
            general: pool,
            tuples: tuples.into_iter().collect(),
        }
    }
}

fn lookup<'e>(env: &'e Env, var: &Var) -> Option<&'e Value> {
    env.iter()
        .rev()
        .find(|(v, _)| v == var)
        .map(|(_, value)| value)
}

fn general_args(args: &[FoTerm], s: &dyn Structure, env: &Env) -> Result<Vec<GroundTerm>> {
    args.iter()
        .map(|a| match eval_term(a, s, env)? {
            Value::General(g) => Ok(g),
            _ => Err(SemanticsError::IllSorted(a.to_string())),
        })
        .collect()
}

pub fn eval_term(t: &FoTerm, s: &dyn Structure, env: &Env) -> Result<Value> {
    match t {
        FoTerm::Ground(g) => Ok(Value::General(g.clone())),
        FoTerm::Var(v) => lookup(env, v)
            .cloned()
            .ok_or_else(|| SemanticsError::NotGround(v.name.clone())),
        FoTerm::Tuple(args) => Ok(Value::Tuple(general_args(args, s, env)?)),
        FoTerm::SetApp { fun, args } => {
            Ok(Value::Set(s.set_value(fun, &general_args(args, s, env)?)?))
        }
        FoTerm::Agg { op, set } => match eval_term(set, s, env)? {
            Value::Set(delta) => Ok(Value::General(op.apply(&delta))),
            _ => Err(SemanticsError::IllSorted(t.to_string())),
        },
    }
}

fn quantifier_range(var: &Var, domain: &Domain) -> Result<Vec<Value>> {
    match var.sort {
        Sort::General => Ok(domain.general.iter().cloned().map(Value::General).collect()),
        Sort::Tuple => Ok(domain.tuples.iter().cloned().map(Value::Tuple).collect()),
        Sort::Set => Err(SemanticsError::UnsupportedQuantifier(Sort::Set)),
    }
}

/// Classical satisfaction in a single structure; `⌐` is classical negation.
/// General and tuple quantifiers range over `domain`.
pub fn eval_classical(
    f: &Formula,
    s: &dyn Structure,
    domain: &Domain,
    env: &mut Env,
) -> Result<bool> {
    match f {
        Formula::Bottom => Ok(false),
        Formula::Atom { pred, args } => s.holds(pred, &general_args(args, s, env)?),
        Formula::Eq(l, r) => Ok(eval_term(l, s, env)? == eval_term(r, s, env)?),
        Formula::Cmp(l, rel, r) => match (eval_term(l, s, env)?, eval_term(r, s, env)?) {
            (Value::General(a), Value::General(b)) => Ok(rel.holds(&a, &b)),
            _ => Err(SemanticsError::IllSorted(f.to_string())),
        },
        Formula::Member(t, set) => match (eval_term(t, s, env)?, eval_term(set, s, env)?) {
            (Value::Tuple(tuple), Value::Set(delta)) => Ok(delta.contains(&tuple)),
            _ => Err(SemanticsError::IllSorted(f.to_string())),
        },
        Formula::StrongNeg(g) => Ok(!eval_classical(g, s, domain, env)?),
        Formula::And(g, h) => {
            Ok(eval_classical(g, s, domain, env)? && eval_classical(h, s, domain, env)?)
        }
        Formula::Or(g, h) => {
            Ok(eval_classical(g, s, domain, env)? || eval_classical(h, s, domain, env)?)
        }
        Formula::Implies(g, h) => {
            Ok(!eval_classical(g, s, domain, env)? || eval_classical(h, s, domain, env)?)
        }
        Formula::Forall(v, g) | Formula::Exists(v, g) => {
            let universal = matches!(f, Formula::Forall(..));
            for value in quantifier_range(v, domain)? {
                env.push((v.clone(), value));
                let holds = eval_classical(g, s, domain, env);
                env.pop();
                if holds? != universal {
                    return Ok(!universal);
                }
            }
            Ok(universal)
        }
    }
}

type SetKey = (Semantics, String, World, Vec<GroundTerm>);

/// An agg-ht-interpretation: an [`HtPair`] together with the set-function
/// values it determines, computed on demand.
pub struct HtModel<'a> {
    pair: &'a HtPair,
    sig: &'a Signature,
    scope: &'a Scope,
    domain: Domain,
    cache: RefCell<HashMap<SetKey, TupleSet>>,
}

/// One world of an [`HtModel`] seen as a classical structure.
pub struct WorldView<'m, 'a> {
    model: &'m HtModel<'a>,
    world: World,
}

impl Structure for WorldView<'_, '_> {
    fn holds(&self, pred: &Predicate, args: &[GroundTerm]) -> Result<bool> {
        if pred.hatted {
            return Err(SemanticsError::HattedSymbol(pred.to_string()));
        }
        let atom = GroundAtom::new(pred.name.clone(), args.to_vec());
        Ok(self.model.pair.world(self.world).contains(&atom))
    }

    fn set_value(&self, fun: &SetFn, args: &[GroundTerm]) -> Result<TupleSet> {
        if fun.hatted {
            return Err(SemanticsError::HattedSymbol(fun.to_string()));
        }
        self.model
            .set_value(fun.semantics, &fun.name, self.world, args)
    }
}

impl<'a> HtModel<'a> {
    pub fn new(pair: &'a HtPair, sig: &'a Signature, scope: &'a Scope) -> Self {
        HtModel {
            pair,
            sig,
            scope,
            domain: Domain::new(scope, sig),
            cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn pair(&self) -> &HtPair {
        self.pair
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn view(&self, world: World) -> WorldView<'_, 'a> {
        WorldView { model: self, world }
    }

    /// The value of `s^x_name(args)` in `world`.
    pub fn set_value(
        &self,
        x: Semantics,
        name: &str,
        world: World,
        args: &[GroundTerm],
    ) -> Result<TupleSet> {
        let key = (x, name.to_string(), world, args.to_vec());
        if let Some(v) = self.cache.borrow().get(&key) {
            return Ok(v.clone());
        }
        let symbol = self
            .sig
            .set_symbol(name)
            .ok_or_else(|| SemanticsError::UnknownSetSymbol(name.to_string()))?;
        let value = agg_set_value(symbol, x, world, args, self.pair, self.scope)?;
        self.cache.borrow_mut().insert(key, value.clone());
        Ok(value)
    }

    /// Here-and-There satisfaction with free variables bound by `env`.
    pub fn eval_ht_in(&self, f: &Formula, env: &mut Env) -> Result<bool> {
        let classical = |g: &Formula, world: World, env: &mut Env| {
            eval_classical(g, &self.view(world), &self.domain, env)
        };
        match f {
            Formula::Bottom => Ok(false),
            Formula::Atom { .. } | Formula::Eq(..) | Formula::Cmp(..) | Formula::Member(..) => {
                Ok(classical(f, World::Here, env)? && classical(f, World::There, env)?)
            }
            Formula::StrongNeg(g) => {
                Ok(!classical(g, World::There, env)? && !classical(g, World::Here, env)?)
            }
            Formula::And(g, h) => Ok(self.eval_ht_in(g, env)? && self.eval_ht_in(h, env)?),
            Formula::Or(g, h) => Ok(self.eval_ht_in(g, env)? || self.eval_ht_in(h, env)?),
            Formula::Implies(g, h) => Ok(classical(f, World::There, env)?
                && (!self.eval_ht_in(g, env)? || self.eval_ht_in(h, env)?)),
            Formula::Forall(v, g) | Formula::Exists(v, g) => {
                if v.sort != Sort::General {
                    return Err(SemanticsError::UnsupportedQuantifier(v.sort));
                }
                let universal = matches!(f, Formula::Forall(..));
                for value in self.domain.general.clone() {
                    env.push((v.clone(), Value::General(value)));
                    let holds = self.eval_ht_in(g, env);
                    env.pop();
                    if holds? != universal {
                        return Ok(!universal);
                    }
                }
                Ok(universal)
            }
        }
    }

    /// `⟨H, I⟩ ⊨_ht f` for a sentence `f`.
    pub fn satisfies(&self, f: &Formula) -> Result<bool> {
        self.eval_ht_in(f, &mut Env::new())
    }

    pub fn satisfies_all<'f>(&self, fs: impl IntoIterator<Item = &'f Formula>) -> Result<bool> {
        for f in fs {
            if !self.satisfies(f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `⟨H, I⟩ ⊨_ht f`. Quantifiers must be over the general sort.
pub fn eval_ht(f: &Formula, pair: &HtPair, sig: &Signature, scope: &Scope) -> Result<bool> {
    HtModel::new(pair, sig, scope).satisfies(f)
}

/// The value of `s^x_{E/X}(args)` in one world of an agg-ht-interpretation.
///
/// In the there-world it collects the tuples whose condition instance holds
/// classically in `I`. In the here-world it requires `⟨H, I⟩ ⊨_ht` of the
/// condition for cli, and classical satisfaction in `H` for dlv.
pub fn agg_set_value(
    symbol: &SetSymbol,
    x: Semantics,
    world: World,
    args: &[GroundTerm],
    pair: &HtPair,
    scope: &Scope,
) -> Result<TupleSet> {
    if args.len() != symbol.globals.len() {
        return Err(SemanticsError::IllSorted(format!(
            "{} arguments for a set symbol with {} global variables",
            args.len(),
            symbol.globals.len()
        )));
    }
    let translation = Translation::new(x);
    let condition = Formula::conjoin(
        symbol
            .element
            .conditions
            .iter()
            .map(|l| translation.tau_basic(l)),
    );
    let template = FoTerm::Tuple(symbol.element.terms.iter().map(tau_term).collect());
    let sig = Signature::default();
    let model = HtModel::new(pair, &sig, scope);
    let mut env: Env = symbol
        .globals
        .iter()
        .zip(args)
        .map(|(v, a)| (Var::general(v.name()), Value::General(a.clone())))
        .collect();
    let locals = symbol.locals();
    let mut out = TupleSet::new();
    for sigma in assignments(&locals, &scope.pool()) {
        let depth = env.len();
        env.extend(
            sigma
                .into_iter()
                .map(|(v, g)| (Var::general(v.name()), Value::General(g))),
        );
        let holds = match (world, x) {
            (World::There, _) => eval_classical(
                &condition,
                &model.view(World::There),
                &model.domain,
                &mut env,
            ),
            (World::Here, Semantics::Cli) => model.eval_ht_in(&condition, &mut env),
            (World::Here, Semantics::Dlv) => eval_classical(
                &condition,
                &model.view(World::Here),
                &model.domain,
                &mut env,
            ),
        };
        if holds? {
            match eval_term(&template, &model.view(world), &env)? {
                Value::Tuple(t) => {
                    out.insert(t);
                }
                _ => unreachable!("a tuple constructor evaluates to a tuple"),
            }
        }
        env.truncate(depth);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{
        analysis::build_signature, folog::Theory, semantics::PropInterp, syntax::parse_program,
    };

    fn n(i: i64) -> GroundTerm {
        GroundTerm::numeral(i)
    }

    fn c(s: &str) -> GroundTerm {
        GroundTerm::symbol(s)
    }

    fn interp(atoms: &[(&str, Vec<GroundTerm>)]) -> PropInterp {
        atoms
            .iter()
            .map(|(p, args)| GroundAtom::new(*p, args.clone()))
            .collect()
    }

    fn theory(x: Translation, sig: &Signature, src: &str) -> Theory {
        x.tau_program(&parse_program(src).unwrap(), sig).unwrap()
    }

    const SUM_LT_RULE: &str = "p(1) :- #sum{X : q(X), not r(X)} < 1.";

    #[test]
    fn company_control_set_values() {
        let program = parse_program(
            "controls(C1,C3) :- company(C1), company(C3), #sum{P,C2 : ctrStk(C1,C2,C3,P)} > 50.",
        )
        .unwrap();
        let sig = build_signature([&program]);
        let (symbol, _) = sig.set_symbols().next().unwrap();
        let scope = Scope::new(["c1", "c2", "c3", "c4"], Some((10.into(), 20.into())))
            .unwrap()
            .with_max_subset(100);
        let there = interp(&[
            ("ctrStk", vec![c("c1"), c("c2"), c("c3"), n(10)]),
            ("ctrStk", vec![c("c1"), c("c4"), c("c3"), n(20)]),
        ]);
        let here = interp(&[("ctrStk", vec![c("c1"), c("c2"), c("c3"), n(10)])]);
        let pair = HtPair::new(here, there).unwrap();
        let args = [c("c1"), c("c3")];
        for x in [Semantics::Cli, Semantics::Dlv] {
            let i_value = agg_set_value(symbol, x, World::There, &args, &pair, &scope).unwrap();
            assert_eq!(i_value, [vec![n(10), c("c2")], vec![n(20), c("c4")]].into());
            let h_value = agg_set_value(symbol, x, World::Here, &args, &pair, &scope).unwrap();
            assert_eq!(h_value, [vec![n(10), c("c2")]].into());
        }
    }

    fn example_pair() -> HtPair {
        // p^H = r^H = ∅, p^I = q^I = q^H = r^I = {1}
        HtPair::new(
            interp(&[("q", vec![n(1)])]),
            interp(&[("p", vec![n(1)]), ("q", vec![n(1)]), ("r", vec![n(1)])]),
        )
        .unwrap()
    }

    #[test]
    fn here_values_differ_between_semantics() {
        let program = parse_program(SUM_LT_RULE).unwrap();
        let sig = build_signature([&program]);
        let (symbol, _) = sig.set_symbols().next().unwrap();
        let scope = Scope::ints(1, 1).unwrap();
        let pair = example_pair();
        let value = |x, w| agg_set_value(symbol, x, w, &[], &pair, &scope).unwrap();
        assert_eq!(value(Semantics::Cli, World::Here), TupleSet::new());
        assert_eq!(value(Semantics::Dlv, World::Here), [vec![n(1)]].into());
        assert_eq!(value(Semantics::Cli, World::There), TupleSet::new());
        assert_eq!(value(Semantics::Dlv, World::There), TupleSet::new());
    }

    #[test]
    fn rule_satisfaction_differs_between_semantics() {
        let program = parse_program(SUM_LT_RULE).unwrap();
        let sig = build_signature([&program]);
        let scope = Scope::ints(1, 1).unwrap();
        let pair = example_pair();
        let cli = theory(Translation::cli(), &sig, SUM_LT_RULE);
        let dlv = theory(Translation::dlv(), &sig, SUM_LT_RULE);
        assert!(!eval_ht(&cli.sentences()[0], &pair, &sig, &scope).unwrap());
        assert!(eval_ht(&dlv.sentences()[0], &pair, &sig, &scope).unwrap());
    }

    #[test]
    fn total_pairs_are_classical() {
        let src = "p(1) :- not #sum{X : q(X), not r(X)} >= 1.\n:- q(X), not p(X).";
        let program = parse_program(src).unwrap();
        let sig = build_signature([&program]);
        let scope = Scope::ints(0, 1).unwrap();
        let dlv = theory(Translation::dlv(), &sig, src);
        let i = interp(&[("q", vec![n(1)]), ("p", vec![n(1)])]);
        let pair = HtPair::total(i);
        let model = HtModel::new(&pair, &sig, &scope);
        for f in dlv.sentences() {
            let classical = eval_classical(
                f,
                &model.view(World::There),
                model.domain(),
                &mut Env::new(),
            )
            .unwrap();
            assert_eq!(model.satisfies(f).unwrap(), classical, "{f}");
        }
    }

    #[test]
    fn tuple_quantifiers_are_rejected_in_ht() {
        let pair = HtPair::total(PropInterp::default());
        let sig = Signature::default();
        let scope = Scope::ints(0, 0).unwrap();
        let f = crate::folog::parse_formula("forall T:tuple (T = T)").unwrap();
        assert_eq!(
            eval_ht(&f, &pair, &sig, &scope),
            Err(SemanticsError::UnsupportedQuantifier(Sort::Tuple))
        );
    }
}
