//! Executable semantics over a finite scope: grounding, reducts and answer
//! sets, Here-and-There evaluation of translated theories, agg-stable models,
//! and a bounded strong-equivalence checker.

mod enumerate;
mod equivalence;
mod eval;
mod ground;
mod stable;

use std::{collections::BTreeSet, fmt};

use num_bigint::BigInt;
use thiserror::Error;

use crate::{
    folog::Sort,
    syntax::{Atom, GroundTerm, Term},
    translate::TranslateError,
};

pub use enumerate::{subsets_by_size, subsets_of};
pub use equivalence::{check_strong_equivalence, CheckOptions, Mode, Verdict};
pub use eval::{
    agg_set_value, eval_classical, eval_ht, Domain, Env, HtModel, Structure, Value, WorldView,
};
pub use ground::{
    answer_sets, eval_ground_ht, eval_prop, expand_aggregate, flp_reduct, ft_reduct,
    ground_program, herbrand_instances, GroundFormula,
};
pub use stable::{agg_stable_models, candidate_atoms};

pub(crate) use ground::assignments;

/// Default bound on the number of instances of an aggregate element.
pub const DEFAULT_MAX_SUBSET: usize = 12;

/// Largest number of atoms the brute-force enumerators accept.
pub const MAX_ATOMS: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("scope explosion: {what} has {size} elements, the limit is {limit}")]
    ScopeExplosion {
        what: String,
        size: u128,
        limit: u128,
    },
    #[error("invalid scope: {0}")]
    InvalidScope(String),
    #[error("the here-world is not a subset of the there-world")]
    NotHtPair,
    #[error("quantifiers over the {0} sort are not supported here")]
    UnsupportedQuantifier(Sort),
    #[error("`{0}` is not ground")]
    NotGround(String),
    #[error("ill-sorted term `{0}`")]
    IllSorted(String),
    #[error("unknown set symbol `{0}`")]
    UnknownSetSymbol(String),
    #[error("hatted symbol `{0}` cannot be evaluated in a single world")]
    HattedSymbol(String),
    #[error(transparent)]
    Translate(#[from] TranslateError),
}

pub type Result<T, E = SemanticsError> = std::result::Result<T, E>;

/// The finite universe bounding instantiation: an integer interval and a set
/// of symbolic constants. `#inf` and `#sup` are never instantiated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scope {
    constants: BTreeSet<String>,
    ints: Option<(BigInt, BigInt)>,
    pub max_subset: usize,
}

impl Scope {
    pub fn new<S: Into<String>>(
        constants: impl IntoIterator<Item = S>,
        ints: Option<(BigInt, BigInt)>,
    ) -> Result<Self> {
        if let Some((min, max)) = &ints {
            if min > max {
                return Err(SemanticsError::InvalidScope(format!(
                    "empty integer range {min}..{max}"
                )));
            }
        }
        let constants: BTreeSet<String> = constants.into_iter().map(Into::into).collect();
        if let Some(bad) = constants
            .iter()
            .find(|c| !c.starts_with(|ch: char| ch.is_ascii_lowercase()))
        {
            return Err(SemanticsError::InvalidScope(format!(
                "`{bad}` is not a symbolic constant"
            )));
        }
        Ok(Scope {
            constants,
            ints,
            max_subset: DEFAULT_MAX_SUBSET,
        })
    }

    /// The integers `min..=max` and no constants.
    pub fn ints(min: i64, max: i64) -> Result<Self> {
        Scope::new(Vec::<String>::new(), Some((min.into(), max.into())))
    }

    pub fn with_max_subset(mut self, max_subset: usize) -> Self {
        self.max_subset = max_subset;
        self
    }

    pub fn constants(&self) -> &BTreeSet<String> {
        &self.constants
    }

    pub fn int_range(&self) -> Option<&(BigInt, BigInt)> {
        self.ints.as_ref()
    }

    /// The instantiation pool in ascending term order.
    pub fn pool(&self) -> Vec<GroundTerm> {
        let mut pool = Vec::new();
        if let Some((min, max)) = &self.ints {
            let mut n = min.clone();
            while &n <= max {
                pool.push(GroundTerm::Numeral(n.clone()));
                n += 1;
            }
        }
        pool.extend(self.constants.iter().cloned().map(GroundTerm::Symbol));
        pool
    }
}

/// A variable-free atom.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundAtom {
    pub predicate: String,
    pub args: Vec<GroundTerm>,
}

impl GroundAtom {
    pub fn new(predicate: impl Into<String>, args: Vec<GroundTerm>) -> Self {
        GroundAtom {
            predicate: predicate.into(),
            args,
        }
    }

    pub fn from_atom(atom: &Atom) -> Result<Self> {
        let args = atom
            .terms
            .iter()
            .map(|t| t.as_ground().cloned())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| SemanticsError::NotGround(atom.to_string()))?;
        Ok(GroundAtom::new(atom.predicate.clone(), args))
    }

    pub fn to_atom(&self) -> Atom {
        Atom::new(
            self.predicate.clone(),
            self.args.iter().cloned().map(Term::Ground).collect(),
        )
    }
}

impl fmt::Display for GroundAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_atom().fmt(f)
    }
}

/// A propositional interpretation: the set of true ground atoms.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PropInterp {
    pub atoms: BTreeSet<GroundAtom>,
}

impl PropInterp {
    pub fn new(atoms: impl IntoIterator<Item = GroundAtom>) -> Self {
        PropInterp {
            atoms: atoms.into_iter().collect(),
        }
    }

    pub fn contains(&self, atom: &GroundAtom) -> bool {
        self.atoms.contains(atom)
    }

    pub fn is_subset(&self, other: &PropInterp) -> bool {
        self.atoms.is_subset(&other.atoms)
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }
}

impl FromIterator<GroundAtom> for PropInterp {
    fn from_iter<I: IntoIterator<Item = GroundAtom>>(iter: I) -> Self {
        PropInterp::new(iter)
    }
}

impl fmt::Display for PropInterp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}

/// A pair of worlds `⟨H, I⟩` with `H ⊆ I`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HtPair {
    here: PropInterp,
    there: PropInterp,
}

impl HtPair {
    pub fn new(here: PropInterp, there: PropInterp) -> Result<Self> {
        if !here.is_subset(&there) {
            return Err(SemanticsError::NotHtPair);
        }
        Ok(HtPair { here, there })
    }

    /// `⟨I, I⟩`
    pub fn total(interp: PropInterp) -> Self {
        HtPair {
            here: interp.clone(),
            there: interp,
        }
    }

    pub fn here(&self) -> &PropInterp {
        &self.here
    }

    pub fn there(&self) -> &PropInterp {
        &self.there
    }

    pub fn world(&self, w: World) -> &PropInterp {
        match w {
            World::Here => &self.here,
            World::There => &self.there,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum World {
    Here,
    There,
}
