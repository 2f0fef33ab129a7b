use std::collections::BTreeSet;

use super::{
    enumerate::{subsets_by_size, subsets_of},
    ground::assignments,
    GroundAtom, HtModel, HtPair, PropInterp, Result, Scope, SemanticsError, MAX_ATOMS,
};
use crate::{
    analysis::Signature,
    folog::{FoTerm, Formula, Theory},
    syntax::{AtomicFormula, GroundTerm, Term, Variable},
};

// `None` stands for an argument ranging over the whole pool: a variable or a
// term whose value depends on set functions.
type ArgPattern = Option<GroundTerm>;

fn collect_atom_patterns(f: &Formula, out: &mut Vec<(String, Vec<ArgPattern>)>) {
    match f {
        Formula::Atom { pred, args } => {
            let pattern = args
                .iter()
                .map(|a| match a {
                    FoTerm::Ground(g) => Some(g.clone()),
                    _ => None,
                })
                .collect();
            out.push((pred.name.clone(), pattern));
        }
        Formula::StrongNeg(g) | Formula::Forall(_, g) | Formula::Exists(_, g) => {
            collect_atom_patterns(g, out)
        }
        Formula::And(g, h) | Formula::Or(g, h) | Formula::Implies(g, h) => {
            collect_atom_patterns(g, out);
            collect_atom_patterns(h, out);
        }
        _ => {}
    }
}

/// Every instance over the pool of an atom occurring in `theories` or in the
/// conditions of a set symbol of `sig`. Atoms outside this set are false in
/// every agg-stable model.
pub fn candidate_atoms<'t>(
    theories: impl IntoIterator<Item = &'t Theory>,
    sig: &Signature,
    scope: &Scope,
) -> BTreeSet<GroundAtom> {
    let mut patterns = Vec::new();
    for theory in theories {
        for f in theory.sentences() {
            collect_atom_patterns(f, &mut patterns);
        }
    }
    for (symbol, _) in sig.set_symbols() {
        for l in &symbol.element.conditions {
            if let AtomicFormula::Atom(a) = &l.atom {
                let pattern = a
                    .terms
                    .iter()
                    .map(|t| match t {
                        Term::Ground(g) => Some(g.clone()),
                        Term::Variable(_) => None,
                    })
                    .collect();
                patterns.push((a.predicate.clone(), pattern));
            }
        }
    }
    let pool = scope.pool();
    let mut out = BTreeSet::new();
    for (predicate, pattern) in patterns {
        let slots: Vec<Variable> = (0..pattern.len())
            .filter(|i| pattern[*i].is_none())
            .map(|i| Variable::new(format!("A{i}")))
            .collect();
        for sigma in assignments(&slots, &pool) {
            let args = pattern
                .iter()
                .enumerate()
                .map(|(i, p)| match p {
                    Some(g) => g.clone(),
                    None => sigma[&Variable::new(format!("A{i}"))].clone(),
                })
                .collect();
            out.insert(GroundAtom::new(predicate.clone(), args));
        }
    }
    out
}

pub(crate) fn check_atom_count(atoms: usize) -> Result<()> {
    if atoms > MAX_ATOMS {
        return Err(SemanticsError::ScopeExplosion {
            what: "the set of candidate atoms".into(),
            size: atoms as u128,
            limit: MAX_ATOMS as u128,
        });
    }
    Ok(())
}

/// Interpretations `I` that satisfy `theory` such that no `⟨H, I⟩` with
/// `H ⊊ I` satisfies it, in enumeration order.
pub fn agg_stable_models(
    theory: &Theory,
    sig: &Signature,
    scope: &Scope,
) -> Result<Vec<PropInterp>> {
    let atoms: Vec<GroundAtom> = candidate_atoms([theory], sig, scope).into_iter().collect();
    check_atom_count(atoms.len())?;
    let mut out = Vec::new();
    for candidate in subsets_by_size(&atoms) {
        let there = PropInterp::new(candidate.iter().cloned());
        let total = HtPair::total(there.clone());
        if !HtModel::new(&total, sig, scope).satisfies_all(theory.sentences())? {
            continue;
        }
        let mut stable = true;
        for smaller in subsets_of(&candidate, true) {
            let pair = HtPair::new(PropInterp::new(smaller), there.clone())?;
            if HtModel::new(&pair, sig, scope).satisfies_all(theory.sentences())? {
                stable = false;
                break;
            }
        }
        if stable {
            out.push(there);
        }
    }
    Ok(out)
}
