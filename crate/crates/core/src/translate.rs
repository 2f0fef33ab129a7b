//! Translation of programs into first-order theories over the target
//! signature, for either semantics.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::{
    analysis::{global_vars, SetSymbol, Signature},
    folog::{FoTerm, Formula, Semantics, SetFn, Theory, Var},
    syntax::{
        AggregateAtom, AtomicFormula, BasicLiteral, Head, Literal, Program, Rule, Sign, Term,
        Variable,
    },
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("the signature has no set symbol for `{0}`")]
    MissingSetSymbol(String),
}

/// Selects the semantics of a translation.
///
/// With `strict_item3` set, a single `not` in front of an aggregate literal
/// is translated with `s^cli` inside the strong negation even for dlv.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Translation {
    pub semantics: Semantics,
    pub strict_item3: bool,
}

impl Translation {
    pub fn new(semantics: Semantics) -> Self {
        Translation {
            semantics,
            strict_item3: false,
        }
    }

    pub fn cli() -> Self {
        Translation::new(Semantics::Cli)
    }

    pub fn dlv() -> Self {
        Translation::new(Semantics::Dlv)
    }

    pub fn strict_item3(mut self, strict: bool) -> Self {
        self.strict_item3 = strict;
        self
    }
}

pub fn tau_term(t: &Term) -> FoTerm {
    match t {
        Term::Ground(g) => FoTerm::Ground(g.clone()),
        Term::Variable(v) => FoTerm::var(v.name()),
    }
}

pub fn tau_atomic(a: &AtomicFormula) -> Formula {
    match a {
        AtomicFormula::Atom(atom) => Formula::atom(
            atom.predicate.clone(),
            atom.terms.iter().map(tau_term).collect(),
        ),
        AtomicFormula::Comparison(c) => {
            Formula::compare(tau_term(&c.lhs), c.relation, tau_term(&c.rhs))
        }
    }
}

impl Translation {
    fn negate(self, sign: Sign, inner: impl Fn(Semantics) -> Formula) -> Formula {
        match (sign, self.semantics) {
            (Sign::NoSign, x) => inner(x),
            (Sign::Negation, Semantics::Cli) => Formula::not(inner(Semantics::Cli)),
            (Sign::DoubleNegation, Semantics::Cli) => {
                Formula::not(Formula::not(inner(Semantics::Cli)))
            }
            (Sign::Negation, Semantics::Dlv) => {
                let x = if self.strict_item3 {
                    Semantics::Cli
                } else {
                    Semantics::Dlv
                };
                Formula::strong_neg(inner(x))
            }
            (Sign::DoubleNegation, Semantics::Dlv) => {
                Formula::strong_neg(Formula::strong_neg(inner(Semantics::Dlv)))
            }
        }
    }

    /// τ of a basic literal; also used for the conditions of aggregate
    /// elements.
    pub fn tau_basic(self, l: &BasicLiteral) -> Formula {
        self.negate(l.sign, |_| tau_atomic(&l.atom))
    }

    /// τ of a literal of a rule whose global variables are `globals`.
    pub fn tau_literal(
        self,
        globals: &BTreeSet<Variable>,
        literal: &Literal,
        sig: &Signature,
    ) -> Result<Formula, TranslateError> {
        match literal {
            Literal::Basic(l) => Ok(self.tau_basic(l)),
            Literal::Aggregate { sign, atom } => {
                let symbol = SetSymbol::new(atom.element.clone(), globals);
                let name = sig
                    .short_name(&symbol)
                    .ok_or_else(|| TranslateError::MissingSetSymbol(atom.element.to_string()))?;
                Ok(self.negate(*sign, |x| aggregate_formula(x, atom, &symbol, name)))
            }
        }
    }

    /// The universal closure of `B1 ∧ … ∧ Bn → Head` over the global
    /// variables; a fact becomes its closed head.
    pub fn tau_rule(self, rule: &Rule, sig: &Signature) -> Result<Formula, TranslateError> {
        let globals = global_vars(rule);
        let head = match &rule.head {
            Head::Atom(a) => tau_atomic(&AtomicFormula::Atom(a.clone())),
            Head::Falsity => Formula::Bottom,
        };
        let body = rule
            .body
            .iter()
            .map(|l| self.tau_literal(&globals, l, sig))
            .collect::<Result<Vec<_>, _>>()?;
        let matrix = if body.is_empty() {
            head
        } else {
            Formula::implies(Formula::conjoin(body), head)
        };
        Ok(Formula::forall(
            globals.iter().map(|v| Var::general(v.name())),
            matrix,
        ))
    }

    pub fn tau_program(self, program: &Program, sig: &Signature) -> Result<Theory, TranslateError> {
        program
            .rules
            .iter()
            .map(|r| self.tau_rule(r, sig))
            .collect()
    }
}

/// `op(s^x_E(X)) ≺ u`
fn aggregate_formula(
    x: Semantics,
    atom: &AggregateAtom,
    symbol: &SetSymbol,
    name: &str,
) -> Formula {
    let set = FoTerm::SetApp {
        fun: SetFn {
            semantics: x,
            name: name.to_string(),
            hatted: false,
        },
        args: symbol
            .globals
            .iter()
            .map(|v| FoTerm::var(v.name()))
            .collect(),
    };
    let value = FoTerm::Agg {
        op: atom.op,
        set: Box::new(set),
    };
    Formula::compare(value, atom.relation, tau_term(&atom.guard))
}
