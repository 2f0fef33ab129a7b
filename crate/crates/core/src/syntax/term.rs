use std::{cmp::Ordering, fmt};

use num_bigint::BigInt;

/// A variable-free program term.
///
/// Ground terms are totally ordered: `#inf` is least and `#sup` greatest,
/// numerals compare as integers, every numeral precedes every symbolic
/// constant, and symbolic constants compare lexicographically by name.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroundTerm {
    Infimum,
    Numeral(BigInt),
    Symbol(String),
    Supremum,
}

impl GroundTerm {
    pub fn numeral(n: impl Into<BigInt>) -> Self {
        GroundTerm::Numeral(n.into())
    }

    pub fn symbol(name: impl Into<String>) -> Self {
        GroundTerm::Symbol(name.into())
    }

    pub fn as_numeral(&self) -> Option<&BigInt> {
        match self {
            GroundTerm::Numeral(n) => Some(n),
            _ => None,
        }
    }

    fn rank(&self) -> u8 {
        match self {
            GroundTerm::Infimum => 0,
            GroundTerm::Numeral(_) => 1,
            GroundTerm::Symbol(_) => 2,
            GroundTerm::Supremum => 3,
        }
    }
}

/// The total order on ground terms.
pub fn ground_term_cmp(a: &GroundTerm, b: &GroundTerm) -> Ordering {
    match (a, b) {
        (GroundTerm::Numeral(m), GroundTerm::Numeral(n)) => m.cmp(n),
        (GroundTerm::Symbol(c), GroundTerm::Symbol(d)) => c.cmp(d),
        _ => a.rank().cmp(&b.rank()),
    }
}

impl Ord for GroundTerm {
    fn cmp(&self, other: &Self) -> Ordering {
        ground_term_cmp(self, other)
    }
}

impl PartialOrd for GroundTerm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GroundTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroundTerm::Infimum => write!(f, "#inf"),
            GroundTerm::Numeral(n) => write!(f, "{n}"),
            GroundTerm::Symbol(s) => write!(f, "{s}"),
            GroundTerm::Supremum => write!(f, "#sup"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable(pub String);

impl Variable {
    pub fn new(name: impl Into<String>) -> Self {
        Variable(name.into())
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Ground(GroundTerm),
    Variable(Variable),
}

impl Term {
    pub fn numeral(n: impl Into<BigInt>) -> Self {
        Term::Ground(GroundTerm::numeral(n))
    }

    pub fn symbol(name: impl Into<String>) -> Self {
        Term::Ground(GroundTerm::symbol(name))
    }

    pub fn variable(name: impl Into<String>) -> Self {
        Term::Variable(Variable::new(name))
    }

    pub fn is_ground(&self) -> bool {
        matches!(self, Term::Ground(_))
    }

    pub fn as_ground(&self) -> Option<&GroundTerm> {
        match self {
            Term::Ground(g) => Some(g),
            Term::Variable(_) => None,
        }
    }

    pub fn as_variable(&self) -> Option<&Variable> {
        match self {
            Term::Variable(v) => Some(v),
            Term::Ground(_) => None,
        }
    }
}

impl From<GroundTerm> for Term {
    fn from(g: GroundTerm) -> Self {
        Term::Ground(g)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Ground(g) => g.fmt(f),
            Term::Variable(v) => v.fmt(f),
        }
    }
}

/// The six comparison symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    Equal,
    NotEqual,
    Less,
    Greater,
    LessEqual,
    GreaterEqual,
}

impl Relation {
    pub const ALL: [Relation; 6] = [
        Relation::Equal,
        Relation::NotEqual,
        Relation::Less,
        Relation::Greater,
        Relation::LessEqual,
        Relation::GreaterEqual,
    ];

    pub fn holds(self, lhs: &GroundTerm, rhs: &GroundTerm) -> bool {
        let ord = ground_term_cmp(lhs, rhs);
        match self {
            Relation::Equal => ord == Ordering::Equal,
            Relation::NotEqual => ord != Ordering::Equal,
            Relation::Less => ord == Ordering::Less,
            Relation::Greater => ord == Ordering::Greater,
            Relation::LessEqual => ord != Ordering::Greater,
            Relation::GreaterEqual => ord != Ordering::Less,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Equal => "=",
            Relation::NotEqual => "!=",
            Relation::Less => "<",
            Relation::Greater => ">",
            Relation::LessEqual => "<=",
            Relation::GreaterEqual => ">=",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}
