use std::collections::{BTreeMap, BTreeSet};

use crate::{
    analysis::Signature,
    folog::{Formula, Predicate, Semantics, SetFn},
    semantics::{
        assignments, eval_classical, Domain, Env, HtModel, HtPair, Result, Scope, SemanticsError,
        Structure, World,
    },
    syntax::{GroundTerm, TupleSet, Variable},
};

/// A finite interpretation of the intensional symbols of the hatted
/// signature. Atoms not listed are false; set-function applications not
/// listed are an error.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tabulated {
    pub atoms: BTreeSet<(Predicate, Vec<GroundTerm>)>,
    pub sets: BTreeMap<(SetFn, Vec<GroundTerm>), TupleSet>,
}

impl Structure for Tabulated {
    fn holds(&self, pred: &Predicate, args: &[GroundTerm]) -> Result<bool> {
        Ok(self.atoms.contains(&(pred.clone(), args.to_vec())))
    }

    fn set_value(&self, fun: &SetFn, args: &[GroundTerm]) -> Result<TupleSet> {
        self.sets
            .get(&(fun.clone(), args.to_vec()))
            .cloned()
            .ok_or_else(|| SemanticsError::UnknownSetSymbol(fun.to_string()))
    }
}

impl Tabulated {
    /// Classical satisfaction of a sentence.
    pub fn satisfies(&self, f: &Formula, domain: &Domain) -> Result<bool> {
        eval_classical(f, self, domain, &mut Env::new())
    }
}

/// The interpretation `I^H` of the hatted signature: `p` and `s^x` take their
/// here-world values, `p̂` and `ŝ^x` their there-world values. Set functions
/// are tabulated for every argument vector over the scope's pool.
pub fn ih_interpretation(pair: &HtPair, sig: &Signature, scope: &Scope) -> Result<Tabulated> {
    let mut out = Tabulated::default();
    for (world, hatted) in [(World::Here, false), (World::There, true)] {
        for atom in &pair.world(world).atoms {
            let pred = Predicate {
                name: atom.predicate.clone(),
                arity: atom.args.len(),
                hatted,
            };
            out.atoms.insert((pred, atom.args.clone()));
        }
    }
    let model = HtModel::new(pair, sig, scope);
    let pool = scope.pool();
    for (symbol, name) in sig.set_symbols() {
        let globals: Vec<Variable> = symbol.globals.clone();
        for sigma in assignments(&globals, &pool) {
            let args: Vec<GroundTerm> = globals.iter().map(|v| sigma[v].clone()).collect();
            for x in [Semantics::Cli, Semantics::Dlv] {
                for (world, hatted) in [(World::Here, false), (World::There, true)] {
                    let value = model.set_value(x, name, world, &args)?;
                    let fun = SetFn {
                        semantics: x,
                        name: name.to_string(),
                        hatted,
                    };
                    out.sets.insert((fun, args.clone()), value);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{
        analysis::build_signature,
        semantics::{GroundAtom, PropInterp},
        syntax::parse_program,
    };

    fn atom(p: &str, i: i64) -> GroundAtom {
        GroundAtom::new(p, vec![GroundTerm::numeral(i)])
    }

    #[test]
    fn hatted_predicates_take_there_values() {
        let pair = HtPair::new(PropInterp::default(), PropInterp::new([atom("p", 1)])).unwrap();
        let ih =
            ih_interpretation(&pair, &Signature::default(), &Scope::ints(1, 1).unwrap()).unwrap();
        let args = vec![GroundTerm::numeral(1)];
        let mut p = Predicate::new("p", 1);
        assert!(!ih.holds(&p, &args).unwrap());
        p.hatted = true;
        assert!(ih.holds(&p, &args).unwrap());
    }

    #[test]
    fn example_set_values() {
        // p^H = r^H = ∅, p^I = q^I = q^H = r^I = {1}
        let program = parse_program("p(1) :- #sum{X : q(X), not r(X)} < 1.").unwrap();
        let sig = build_signature([&program]);
        let (_, name) = sig.set_symbols().next().unwrap();
        let pair = HtPair::new(
            PropInterp::new([atom("q", 1)]),
            PropInterp::new([atom("p", 1), atom("q", 1), atom("r", 1)]),
        )
        .unwrap();
        let ih = ih_interpretation(&pair, &sig, &Scope::ints(1, 1).unwrap()).unwrap();
        let value = |semantics, hatted| {
            let fun = SetFn {
                semantics,
                name: name.to_string(),
                hatted,
            };
            ih.set_value(&fun, &[]).unwrap()
        };
        assert!(value(Semantics::Cli, true).is_empty());
        assert!(value(Semantics::Cli, false).is_empty());
        assert_eq!(
            value(Semantics::Dlv, false),
            [vec![GroundTerm::numeral(1)]].into()
        );
    }

    #[test]
    fn total_pair_agrees_on_hats() {
        let there = PropInterp::new([atom("p", 0), atom("q", 1)]);
        let ih = ih_interpretation(
            &HtPair::total(there),
            &Signature::default(),
            &Scope::ints(0, 1).unwrap(),
        )
        .unwrap();
        let hatted: BTreeSet<_> = ih
            .atoms
            .iter()
            .filter(|(p, _)| p.hatted)
            .map(|(p, a)| (p.name.clone(), a.clone()))
            .collect();
        let plain: BTreeSet<_> = ih
            .atoms
            .iter()
            .filter(|(p, _)| !p.hatted)
            .map(|(p, a)| (p.name.clone(), a.clone()))
            .collect();
        assert_eq!(hatted, plain);
    }
}
