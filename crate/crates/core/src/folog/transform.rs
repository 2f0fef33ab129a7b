use std::collections::{BTreeMap, BTreeSet};

use super::{FoError, FoTerm, Formula, Var};

/// A substitution of closed terms for variables.
pub type Binding = BTreeMap<Var, FoTerm>;

fn term_vars(t: &FoTerm, out: &mut BTreeSet<Var>) {
    match t {
        FoTerm::Ground(_) => {}
        FoTerm::Var(v) => {
            out.insert(v.clone());
        }
        FoTerm::Tuple(args) | FoTerm::SetApp { args, .. } => {
            args.iter().for_each(|a| term_vars(a, out));
        }
        FoTerm::Agg { set, .. } => term_vars(set, out),
    }
}

/// Free variables of `f`.
pub fn free_vars(f: &Formula) -> BTreeSet<Var> {
    let mut out = BTreeSet::new();
    collect_free(f, &mut out);
    out
}

fn collect_free(f: &Formula, out: &mut BTreeSet<Var>) {
    match f {
        Formula::Bottom => {}
        Formula::Atom { args, .. } => args.iter().for_each(|a| term_vars(a, out)),
        Formula::Eq(l, r) | Formula::Cmp(l, _, r) | Formula::Member(l, r) => {
            term_vars(l, out);
            term_vars(r, out);
        }
        Formula::StrongNeg(g) => collect_free(g, out),
        Formula::And(g, h) | Formula::Or(g, h) | Formula::Implies(g, h) => {
            collect_free(g, out);
            collect_free(h, out);
        }
        Formula::Forall(v, g) | Formula::Exists(v, g) => {
            let mut inner = BTreeSet::new();
            collect_free(g, &mut inner);
            inner.remove(v);
            out.extend(inner);
        }
    }
}

fn substitute_term(t: &FoTerm, binding: &Binding) -> FoTerm {
    match t {
        FoTerm::Ground(_) => t.clone(),
        FoTerm::Var(v) => binding.get(v).cloned().unwrap_or_else(|| t.clone()),
        FoTerm::Tuple(args) => {
            FoTerm::Tuple(args.iter().map(|a| substitute_term(a, binding)).collect())
        }
        FoTerm::SetApp { fun, args } => FoTerm::SetApp {
            fun: fun.clone(),
            args: args.iter().map(|a| substitute_term(a, binding)).collect(),
        },
        FoTerm::Agg { op, set } => FoTerm::Agg {
            op: *op,
            set: Box::new(substitute_term(set, binding)),
        },
    }
}

/// Replaces the free occurrences of the bound variables. Replacements must be
/// closed and of the variable's sort, so no capture can occur.
pub fn substitute(f: &Formula, binding: &Binding) -> Result<Formula, FoError> {
    for (var, term) in binding {
        if term.sort() != Some(var.sort) {
            return Err(FoError::SortMismatch {
                var: var.name.clone(),
                expected: var.sort,
                found: term
                    .sort()
                    .map_or_else(|| "ill-sorted".to_string(), |s| s.to_string()),
                term: term.to_string(),
            });
        }
        let mut vars = BTreeSet::new();
        term_vars(term, &mut vars);
        if !vars.is_empty() {
            return Err(FoError::OpenReplacement(term.to_string()));
        }
    }
    Ok(substitute_unchecked(f, binding))
}

pub(crate) fn substitute_unchecked(f: &Formula, binding: &Binding) -> Formula {
    let sub = |t: &FoTerm| substitute_term(t, binding);
    let rec = |g: &Formula| Box::new(substitute_unchecked(g, binding));
    match f {
        Formula::Bottom => Formula::Bottom,
        Formula::Atom { pred, args } => Formula::Atom {
            pred: pred.clone(),
            args: args.iter().map(sub).collect(),
        },
        Formula::Eq(l, r) => Formula::Eq(sub(l), sub(r)),
        Formula::Cmp(l, rel, r) => Formula::Cmp(sub(l), *rel, sub(r)),
        Formula::Member(l, r) => Formula::Member(sub(l), sub(r)),
        Formula::StrongNeg(g) => Formula::StrongNeg(rec(g)),
        Formula::And(g, h) => Formula::And(rec(g), rec(h)),
        Formula::Or(g, h) => Formula::Or(rec(g), rec(h)),
        Formula::Implies(g, h) => Formula::Implies(rec(g), rec(h)),
        Formula::Forall(v, g) | Formula::Exists(v, g) => {
            let body = if binding.contains_key(v) {
                let mut inner = binding.clone();
                inner.remove(v);
                substitute_unchecked(g, &inner)
            } else {
                substitute_unchecked(g, binding)
            };
            match f {
                Formula::Forall(..) => Formula::Forall(v.clone(), Box::new(body)),
                _ => Formula::Exists(v.clone(), Box::new(body)),
            }
        }
    }
}

/// Renames every set function `s^x` to `ŝ^x`.
pub fn hat_term(t: &FoTerm) -> FoTerm {
    match t {
        FoTerm::Ground(_) | FoTerm::Var(_) => t.clone(),
        FoTerm::Tuple(args) => FoTerm::Tuple(args.iter().map(hat_term).collect()),
        FoTerm::SetApp { fun, args } => {
            let mut fun = fun.clone();
            fun.hatted = true;
            FoTerm::SetApp {
                fun,
                args: args.iter().map(hat_term).collect(),
            }
        }
        FoTerm::Agg { op, set } => FoTerm::Agg {
            op: *op,
            set: Box::new(hat_term(set)),
        },
    }
}

/// Renames every predicate `p` to `p̂` and every set function `s^x` to `ŝ^x`.
/// Comparisons, equality, membership, tuples, `count` and `sum` are kept.
pub fn hat(f: &Formula) -> Formula {
    map_formula(f, &|g| match g {
        Formula::Atom { pred, args } => {
            let mut pred = pred.clone();
            pred.hatted = true;
            Some(Formula::Atom {
                pred,
                args: args.iter().map(hat_term).collect(),
            })
        }
        Formula::Eq(l, r) => Some(Formula::Eq(hat_term(l), hat_term(r))),
        Formula::Cmp(l, rel, r) => Some(Formula::Cmp(hat_term(l), *rel, hat_term(r))),
        Formula::Member(l, r) => Some(Formula::Member(hat_term(l), hat_term(r))),
        _ => None,
    })
}

/// Replaces every `⌐` by `¬`.
pub fn nn(f: &Formula) -> Formula {
    map_formula(f, &|g| match g {
        Formula::StrongNeg(h) => Some(Formula::not(nn(h))),
        _ => None,
    })
}

/// Rebuilds `f` bottom-up, letting `visit` replace any subformula.
fn map_formula(f: &Formula, visit: &dyn Fn(&Formula) -> Option<Formula>) -> Formula {
    if let Some(g) = visit(f) {
        return g;
    }
    let rec = |g: &Formula| Box::new(map_formula(g, visit));
    match f {
        Formula::StrongNeg(g) => Formula::StrongNeg(rec(g)),
        Formula::And(g, h) => Formula::And(rec(g), rec(h)),
        Formula::Or(g, h) => Formula::Or(rec(g), rec(h)),
        Formula::Implies(g, h) => Formula::Implies(rec(g), rec(h)),
        Formula::Forall(v, g) => Formula::Forall(v.clone(), rec(g)),
        Formula::Exists(v, g) => Formula::Exists(v.clone(), rec(g)),
        _ => f.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::folog::{parse_formula, Sort};
    use crate::syntax::GroundTerm;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn bind(pairs: &[(&str, i64)]) -> Binding {
        pairs
            .iter()
            .map(|(v, n)| (Var::general(*v), FoTerm::Ground(GroundTerm::numeral(*n))))
            .collect()
    }

    #[test]
    fn substitution() {
        assert_eq!(
            substitute(&f("p(X)"), &bind(&[("X", 1)])).unwrap(),
            f("p(1)")
        );
        assert_eq!(
            substitute(&f("forall X (p(X))"), &bind(&[("X", 1)])).unwrap(),
            f("forall X (p(X))")
        );
        let company = f("forall C2 (company(C1) & company(C3) & sum(cli.s_0_aaaa(C1, C3)) > 50 -> controls(C1, C3) & p(C2))");
        let binding: Binding = [
            (Var::general("C1"), FoTerm::Ground(GroundTerm::symbol("c1"))),
            (Var::general("C3"), FoTerm::Ground(GroundTerm::symbol("c3"))),
        ]
        .into();
        assert_eq!(
            substitute(&company, &binding).unwrap(),
            f("forall C2 (company(c1) & company(c3) & sum(cli.s_0_aaaa(c1, c3)) > 50 -> controls(c1, c3) & p(C2))")
        );
    }

    #[test]
    fn substitution_checks_sorts() {
        let binding: Binding = [(
            Var::new("T", Sort::Tuple),
            FoTerm::Ground(GroundTerm::numeral(1)),
        )]
        .into();
        assert!(matches!(
            substitute(&f("T:tuple in cli.s_0_aaaa"), &binding),
            Err(FoError::SortMismatch { .. })
        ));
        let open: Binding = [(Var::general("X"), FoTerm::var("Y"))].into();
        assert!(matches!(
            substitute(&f("p(X)"), &open),
            Err(FoError::OpenReplacement(_))
        ));
    }

    #[test]
    fn hatting() {
        assert_eq!(hat(&f("p(X) & X < 3")), f("p^(X) & X < 3"));
        assert_eq!(
            hat(&f("sum(cli.s_0_aaaa) < 1")),
            f("sum(cli.s_0_aaaa^) < 1")
        );
        assert_eq!(hat(&Formula::Bottom), Formula::Bottom);
        assert_eq!(
            hat(&f("forall T:tuple (T in dlv.s_1_bbbb(a) <-> NOT q(a))")),
            f("forall T:tuple (T in dlv.s_1_bbbb^(a) <-> NOT q^(a))")
        );
    }

    #[test]
    fn strong_negation_removal() {
        assert_eq!(nn(&f("NOT p(1)")), f("not p(1)"));
        assert_eq!(nn(&f("NOT NOT q(X)")), f("not not q(X)"));
        let rule10 = f("sum(dlv.s_0_aaaa) < 1 -> p(1)");
        assert_eq!(nn(&rule10), rule10);
        assert!(nn(&f("NOT (p & NOT q) | NOT r")).is_standard());
    }

    #[test]
    fn free_variables() {
        let g = f("forall X (p(X, Y)) & exists T:tuple (T in cli.s_0_aaaa(Z))");
        let names: Vec<String> = free_vars(&g).into_iter().map(|v| v.name).collect();
        assert_eq!(names, ["Y", "Z"]);
    }
}
