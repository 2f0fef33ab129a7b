//! Three-sorted first-order formulas with default negation `¬F` (written as
//! `F → ⊥`) and strong negation `⌐` as a primitive connective.
//!
//! The ASCII syntax used by [`fmt::Display`] and [`parse_formula`]:
//!
//! | construct              | syntax                          |
//! |------------------------|---------------------------------|
//! | ⊥, ⊤                   | `#false`, `#true`               |
//! | ¬F, ⌐F                 | `not F`, `NOT F`                |
//! | ∧, ∨, →, ↔             | `&`, `\|`, `->`, `<->`          |
//! | ∀X, ∃T of sort tuple   | `forall X (F)`, `exists T:tuple (F)` |
//! | p̂(X)                   | `p^(X)`                         |
//! | s^cli_E(X), ŝ^dlv_E    | `cli.s_0_ab12(X)`, `dlv.s_0_ab12^` |
//! | membership             | `T in cli.s_0_ab12`             |
//! | terms                  | `tuple(X, a)`, `count(S)`, `sum(S)` |
//!
//! Binary connectives bind in the order `&`, `|`, `->`, `<->` (tightest
//! first); `->` associates to the right, `&` and `|` to the left.

mod parser;
mod transform;

use std::fmt;

use thiserror::Error;

use crate::syntax::{AggregateOp, GroundTerm, Relation};

pub use parser::{parse_formula, parse_term};
pub use transform::{free_vars, hat, hat_term, nn, substitute, Binding};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sort {
    General,
    Tuple,
    Set,
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sort::General => "general",
            Sort::Tuple => "tuple",
            Sort::Set => "set",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub name: String,
    pub sort: Sort,
}

impl Var {
    pub fn new(name: impl Into<String>, sort: Sort) -> Self {
        Var {
            name: name.into(),
            sort,
        }
    }

    pub fn general(name: impl Into<String>) -> Self {
        Var::new(name, Sort::General)
    }
}

/// Which answer-set semantics an intensional set function belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Semantics {
    Cli,
    Dlv,
}

impl Semantics {
    pub fn name(self) -> &'static str {
        match self {
            Semantics::Cli => "cli",
            Semantics::Dlv => "dlv",
        }
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `s^x_E`, or its hatted copy `ŝ^x_E`, where `E` is the short name of a set
/// symbol.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetFn {
    pub semantics: Semantics,
    pub name: String,
    pub hatted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FoTerm {
    Ground(GroundTerm),
    Var(Var),
    Tuple(Vec<FoTerm>),
    SetApp { fun: SetFn, args: Vec<FoTerm> },
    Agg { op: AggregateOp, set: Box<FoTerm> },
}

impl FoTerm {
    /// The sort of the term, or `None` if an argument has the wrong sort.
    pub fn sort(&self) -> Option<Sort> {
        let all_general = |args: &[FoTerm]| args.iter().all(|a| a.sort() == Some(Sort::General));
        match self {
            FoTerm::Ground(_) => Some(Sort::General),
            FoTerm::Var(v) => Some(v.sort),
            FoTerm::Tuple(args) => all_general(args).then_some(Sort::Tuple),
            FoTerm::SetApp { args, .. } => all_general(args).then_some(Sort::Set),
            FoTerm::Agg { set, .. } => (set.sort() == Some(Sort::Set)).then_some(Sort::General),
        }
    }

    pub fn var(name: impl Into<String>) -> Self {
        FoTerm::Var(Var::general(name))
    }
}

impl From<GroundTerm> for FoTerm {
    fn from(g: GroundTerm) -> Self {
        FoTerm::Ground(g)
    }
}

/// A predicate symbol `p/n` of the program, or its hatted copy `p̂/n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Predicate {
    pub name: String,
    pub arity: usize,
    pub hatted: bool,
}

impl Predicate {
    pub fn new(name: impl Into<String>, arity: usize) -> Self {
        Predicate {
            name: name.into(),
            arity,
            hatted: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Bottom,
    Atom {
        pred: Predicate,
        args: Vec<FoTerm>,
    },
    Eq(FoTerm, FoTerm),
    /// A comparison other than equality.
    Cmp(FoTerm, Relation, FoTerm),
    Member(FoTerm, FoTerm),
    StrongNeg(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall(Var, Box<Formula>),
    Exists(Var, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>, args: Vec<FoTerm>) -> Self {
        Formula::Atom {
            pred: Predicate::new(name, args.len()),
            args,
        }
    }

    /// `lhs rel rhs`, using [`Formula::Eq`] for equality.
    pub fn compare(lhs: FoTerm, relation: Relation, rhs: FoTerm) -> Self {
        match relation {
            Relation::Equal => Formula::Eq(lhs, rhs),
            _ => Formula::Cmp(lhs, relation, rhs),
        }
    }

    pub fn strong_neg(f: Formula) -> Self {
        Formula::StrongNeg(Box::new(f))
    }

    pub fn and(f: Formula, g: Formula) -> Self {
        Formula::And(Box::new(f), Box::new(g))
    }

    pub fn or(f: Formula, g: Formula) -> Self {
        Formula::Or(Box::new(f), Box::new(g))
    }

    pub fn implies(f: Formula, g: Formula) -> Self {
        Formula::Implies(Box::new(f), Box::new(g))
    }

    /// `¬F`, that is `F → ⊥`.
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::implies(f, Formula::Bottom)
    }

    /// `⊤`, that is `⊥ → ⊥`.
    pub fn top() -> Self {
        Formula::implies(Formula::Bottom, Formula::Bottom)
    }

    pub fn iff(f: Formula, g: Formula) -> Self {
        Formula::and(
            Formula::implies(f.clone(), g.clone()),
            Formula::implies(g, f),
        )
    }

    /// Left-nested conjunction; `⊤` when empty.
    pub fn conjoin(fs: impl IntoIterator<Item = Formula>) -> Self {
        fs.into_iter()
            .reduce(Formula::and)
            .unwrap_or_else(Formula::top)
    }

    /// Left-nested disjunction; `⊥` when empty.
    pub fn disjoin(fs: impl IntoIterator<Item = Formula>) -> Self {
        fs.into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::Bottom)
    }

    pub fn forall(vars: impl IntoIterator<Item = Var>, f: Formula) -> Self {
        let vars: Vec<Var> = vars.into_iter().collect();
        vars.into_iter()
            .rev()
            .fold(f, |f, v| Formula::Forall(v, Box::new(f)))
    }

    pub fn exists(vars: impl IntoIterator<Item = Var>, f: Formula) -> Self {
        let vars: Vec<Var> = vars.into_iter().collect();
        vars.into_iter()
            .rev()
            .fold(f, |f, v| Formula::Exists(v, Box::new(f)))
    }

    pub fn is_atomic(&self) -> bool {
        matches!(
            self,
            Formula::Atom { .. } | Formula::Eq(..) | Formula::Cmp(..) | Formula::Member(..)
        )
    }

    /// The operand `F` if this formula is `¬F`.
    pub fn as_negation(&self) -> Option<&Formula> {
        match self {
            Formula::Implies(f, g) if **g == Formula::Bottom => Some(f),
            _ => None,
        }
    }

    pub fn is_top(&self) -> bool {
        matches!(self, Formula::Implies(f, g) if **f == Formula::Bottom && **g == Formula::Bottom)
    }

    /// The two sides if this formula has the shape `(F → G) ∧ (G → F)`.
    pub fn as_iff(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::And(l, r) => match (&**l, &**r) {
                (Formula::Implies(a, b), Formula::Implies(c, d)) if a == d && b == c => {
                    Some((a, b))
                }
                _ => None,
            },
            _ => None,
        }
    }

    /// A formula is standard if it does not contain `⌐`.
    pub fn is_standard(&self) -> bool {
        match self {
            Formula::StrongNeg(_) => false,
            Formula::And(f, g) | Formula::Or(f, g) | Formula::Implies(f, g) => {
                f.is_standard() && g.is_standard()
            }
            Formula::Forall(_, f) | Formula::Exists(_, f) => f.is_standard(),
            _ => true,
        }
    }

    /// The top-level conjuncts of a left- or right-nested conjunction.
    pub fn conjuncts(&self) -> Vec<&Formula> {
        match self {
            Formula::And(f, g) if self.as_iff().is_none() => {
                let mut out = f.conjuncts();
                out.extend(g.conjuncts());
                out
            }
            _ => vec![self],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FoError {
    #[error("variable {var} of sort {expected} cannot be replaced by {term} of sort {found}")]
    SortMismatch {
        var: String,
        expected: Sort,
        found: String,
        term: String,
    },
    #[error("replacement {0} for a variable is not closed")]
    OpenReplacement(String),
}

/// A finite set of sentences, kept in insertion order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Theory {
    sentences: Vec<Formula>,
}

impl Theory {
    pub fn new() -> Self {
        Theory::default()
    }

    pub fn insert(&mut self, f: Formula) -> bool {
        if self.sentences.contains(&f) {
            return false;
        }
        self.sentences.push(f);
        true
    }

    pub fn sentences(&self) -> &[Formula] {
        &self.sentences
    }

    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.sentences.contains(f)
    }

    /// Conjunction of all sentences; `⊤` for the empty theory.
    pub fn conjunction(&self) -> Formula {
        Formula::conjoin(self.sentences.iter().cloned())
    }
}

impl FromIterator<Formula> for Theory {
    fn from_iter<I: IntoIterator<Item = Formula>>(iter: I) -> Self {
        let mut theory = Theory::new();
        for f in iter {
            theory.insert(f);
        }
        theory
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.sentences {
            writeln!(f, "{s}.")?;
        }
        Ok(())
    }
}

// Printing

fn write_args(f: &mut fmt::Formatter<'_>, args: &[FoTerm]) -> fmt::Result {
    write!(f, "(")?;
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{a}")?;
    }
    write!(f, ")")
}

impl fmt::Display for SetFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.semantics, self.name)?;
        if self.hatted {
            write!(f, "^")?;
        }
        Ok(())
    }
}

impl fmt::Display for FoTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FoTerm::Ground(g) => write!(f, "{g}"),
            FoTerm::Var(v) => write!(f, "{}", v.name),
            FoTerm::Tuple(args) => {
                write!(f, "tuple")?;
                write_args(f, args)
            }
            FoTerm::SetApp { fun, args } => {
                write!(f, "{fun}")?;
                if args.is_empty() {
                    Ok(())
                } else {
                    write_args(f, args)
                }
            }
            FoTerm::Agg { op, set } => write!(f, "{op}({set})"),
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        if self.hatted {
            write!(f, "^")?;
        }
        Ok(())
    }
}

const PREC_IFF: u8 = 1;
const PREC_IMPLIES: u8 = 2;
const PREC_OR: u8 = 3;
const PREC_AND: u8 = 4;
const PREC_UNARY: u8 = 5;

fn precedence(f: &Formula) -> u8 {
    if f.is_top() {
        return PREC_UNARY + 1;
    }
    if f.as_iff().is_some() {
        return PREC_IFF;
    }
    if f.as_negation().is_some() {
        return PREC_UNARY;
    }
    match f {
        Formula::And(..) => PREC_AND,
        Formula::Or(..) => PREC_OR,
        Formula::Implies(..) => PREC_IMPLIES,
        Formula::StrongNeg(_) => PREC_UNARY,
        _ => PREC_UNARY + 1,
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, g: &Formula, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({g})")
    } else {
        write!(f, "{g}")
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_top() {
            return write!(f, "#true");
        }
        if let Some((l, r)) = self.as_iff() {
            write_operand(f, l, precedence(l) <= PREC_IFF)?;
            write!(f, " <-> ")?;
            return write_operand(f, r, precedence(r) <= PREC_IFF);
        }
        if let Some(g) = self.as_negation() {
            write!(f, "not ")?;
            return write_operand(f, g, precedence(g) < PREC_UNARY);
        }
        let binary = |f: &mut fmt::Formatter<'_>, l: &Formula, op: &str, r: &Formula, p: u8| {
            // `->` nests to the right, `&` and `|` to the left
            let (left_parens, right_parens) = if p == PREC_IMPLIES {
                (precedence(l) <= p, precedence(r) < p)
            } else {
                (precedence(l) < p, precedence(r) <= p)
            };
            write_operand(f, l, left_parens)?;
            write!(f, " {op} ")?;
            write_operand(f, r, right_parens)
        };
        match self {
            Formula::Bottom => write!(f, "#false"),
            Formula::Atom { pred, args } => {
                write!(f, "{pred}")?;
                if args.is_empty() {
                    Ok(())
                } else {
                    write_args(f, args)
                }
            }
            Formula::Eq(l, r) => write!(f, "{l} = {r}"),
            Formula::Cmp(l, rel, r) => write!(f, "{l} {rel} {r}"),
            Formula::Member(t, s) => write!(f, "{t} in {s}"),
            Formula::StrongNeg(g) => {
                write!(f, "NOT ")?;
                write_operand(f, g, precedence(g) < PREC_UNARY)
            }
            Formula::And(l, r) => binary(f, l, "&", r, PREC_AND),
            Formula::Or(l, r) => binary(f, l, "|", r, PREC_OR),
            Formula::Implies(l, r) => binary(f, l, "->", r, PREC_IMPLIES),
            Formula::Forall(var, body) | Formula::Exists(var, body) => {
                let universal = matches!(self, Formula::Forall(..));
                write!(f, "{}", if universal { "forall" } else { "exists" })?;
                let (mut var, mut body) = (var, body);
                // group directly nested binders of the same kind
                loop {
                    write!(f, " {}", var.name)?;
                    if var.sort != Sort::General {
                        write!(f, ":{}", var.sort)?;
                    }
                    match &**body {
                        Formula::Forall(v, b) if universal => (var, body) = (v, b),
                        Formula::Exists(v, b) if !universal => (var, body) = (v, b),
                        _ => break,
                    }
                }
                write!(f, " ({body})")
            }
        }
    }
}
