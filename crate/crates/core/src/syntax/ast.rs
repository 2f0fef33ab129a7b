use std::{collections::BTreeSet, fmt};

use super::{ops::AggregateOp, term::*};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub predicate: String,
    pub terms: Vec<Term>,
}

impl Atom {
    pub fn new(predicate: impl Into<String>, terms: Vec<Term>) -> Self {
        Atom {
            predicate: predicate.into(),
            terms,
        }
    }

    pub fn predicate_symbol(&self) -> PredicateSymbol {
        PredicateSymbol {
            name: self.predicate.clone(),
            arity: self.terms.len(),
        }
    }
}

/// A predicate symbol `p/n`; the same name at two arities names two symbols.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PredicateSymbol {
    pub name: String,
    pub arity: usize,
}

impl fmt::Display for PredicateSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.name, self.arity)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Comparison {
    pub lhs: Term,
    pub relation: Relation,
    pub rhs: Term,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AtomicFormula {
    Atom(Atom),
    Comparison(Comparison),
}

/// Number of `not` occurrences in front of a literal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    NoSign,
    Negation,
    DoubleNegation,
}

impl Sign {
    pub fn from_count(count: usize) -> Option<Sign> {
        match count {
            0 => Some(Sign::NoSign),
            1 => Some(Sign::Negation),
            2 => Some(Sign::DoubleNegation),
            _ => None,
        }
    }

    fn prefix(self) -> &'static str {
        match self {
            Sign::NoSign => "",
            Sign::Negation => "not ",
            Sign::DoubleNegation => "not not ",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasicLiteral {
    pub sign: Sign,
    pub atom: AtomicFormula,
}

/// `t1, ..., tk : l1, ..., lm`
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AggregateElement {
    pub terms: Vec<Term>,
    pub conditions: Vec<BasicLiteral>,
}

/// `#op{E} rel guard`
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AggregateAtom {
    pub op: AggregateOp,
    pub element: AggregateElement,
    pub relation: Relation,
    pub guard: Term,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Literal {
    Basic(BasicLiteral),
    Aggregate { sign: Sign, atom: AggregateAtom },
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Head {
    Atom(Atom),
    Falsity,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    pub head: Head,
    pub body: Vec<Literal>,
}

impl Rule {
    pub fn is_constraint(&self) -> bool {
        matches!(self.head, Head::Falsity)
    }

    pub fn is_fact(&self) -> bool {
        matches!(self.head, Head::Atom(_)) && self.body.is_empty()
    }

    pub fn aggregates(&self) -> impl Iterator<Item = &AggregateAtom> {
        self.body.iter().filter_map(|l| match l {
            Literal::Aggregate { atom, .. } => Some(atom),
            Literal::Basic(_) => None,
        })
    }
}

/// An ordered list of rules. Duplicates are kept; [`Program::rule_set`] gives
/// the set view used for program equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Program {
    pub rules: Vec<Rule>,
}

impl Program {
    pub fn new(rules: Vec<Rule>) -> Self {
        Program { rules }
    }

    pub fn rule_set(&self) -> BTreeSet<&Rule> {
        self.rules.iter().collect()
    }

    pub fn same_rules(&self, other: &Program) -> bool {
        self.rule_set() == other.rule_set()
    }

    /// Union of two programs, as used for adding a context.
    pub fn extended(&self, other: &Program) -> Program {
        let mut rules = self.rules.clone();
        rules.extend(other.rules.iter().cloned());
        Program { rules }
    }
}

// Variable collection

impl Term {
    pub(crate) fn collect_variables(&self, out: &mut BTreeSet<Variable>) {
        if let Term::Variable(v) = self {
            out.insert(v.clone());
        }
    }
}

impl Atom {
    pub fn variables(&self) -> BTreeSet<Variable> {
        let mut out = BTreeSet::new();
        self.terms
            .iter()
            .for_each(|t| t.collect_variables(&mut out));
        out
    }
}

impl AtomicFormula {
    pub fn variables(&self) -> BTreeSet<Variable> {
        match self {
            AtomicFormula::Atom(a) => a.variables(),
            AtomicFormula::Comparison(c) => {
                let mut out = BTreeSet::new();
                c.lhs.collect_variables(&mut out);
                c.rhs.collect_variables(&mut out);
                out
            }
        }
    }
}

impl BasicLiteral {
    pub fn variables(&self) -> BTreeSet<Variable> {
        self.atom.variables()
    }
}

impl AggregateElement {
    pub fn variables(&self) -> BTreeSet<Variable> {
        let mut out = BTreeSet::new();
        self.terms
            .iter()
            .for_each(|t| t.collect_variables(&mut out));
        for l in &self.conditions {
            out.extend(l.variables());
        }
        out
    }
}

impl Literal {
    pub fn variables(&self) -> BTreeSet<Variable> {
        match self {
            Literal::Basic(l) => l.variables(),
            Literal::Aggregate { atom, .. } => {
                let mut out = atom.element.variables();
                atom.guard.collect_variables(&mut out);
                out
            }
        }
    }
}

impl Rule {
    pub fn variables(&self) -> BTreeSet<Variable> {
        let mut out = match &self.head {
            Head::Atom(a) => a.variables(),
            Head::Falsity => BTreeSet::new(),
        };
        for l in &self.body {
            out.extend(l.variables());
        }
        out
    }
}

// Pretty printing; the output is accepted by the parser.

fn write_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{item}")?;
    }
    Ok(())
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.predicate)?;
        if !self.terms.is_empty() {
            write!(f, "(")?;
            write_list(f, &self.terms)?;
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.lhs, self.relation, self.rhs)
    }
}

impl fmt::Display for AtomicFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AtomicFormula::Atom(a) => a.fmt(f),
            AtomicFormula::Comparison(c) => c.fmt(f),
        }
    }
}

impl fmt::Display for BasicLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.sign.prefix(), self.atom)
    }
}

impl fmt::Display for AggregateElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.terms)?;
        if !self.conditions.is_empty() {
            write!(f, " : ")?;
            write_list(f, &self.conditions)?;
        }
        Ok(())
    }
}

impl fmt::Display for AggregateAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "#{}{{{}}} {} {}",
            self.op, self.element, self.relation, self.guard
        )
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Literal::Basic(l) => l.fmt(f),
            Literal::Aggregate { sign, atom } => write!(f, "{}{}", sign.prefix(), atom),
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.head, self.body.is_empty()) {
            (Head::Atom(a), true) => write!(f, "{a}."),
            (Head::Falsity, true) => write!(f, "#false."),
            (head, false) => {
                if let Head::Atom(a) = head {
                    write!(f, "{a} ")?;
                }
                write!(f, ":- ")?;
                write_list(f, &self.body)?;
                write!(f, ".")
            }
        }
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for rule in &self.rules {
            writeln!(f, "{rule}")?;
        }
        Ok(())
    }
}
