use std::{collections::BTreeSet, fmt};

use num_bigint::BigInt;
use num_traits::Zero;

use super::term::GroundTerm;

pub type Tuple = Vec<GroundTerm>;

/// A finite set of tuples of ground terms.
pub type TupleSet = BTreeSet<Tuple>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AggregateOp {
    Count,
    Sum,
}

impl AggregateOp {
    pub fn apply(self, delta: &TupleSet) -> GroundTerm {
        match self {
            AggregateOp::Count => op_count(delta),
            AggregateOp::Sum => op_sum(delta),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AggregateOp::Count => "count",
            AggregateOp::Sum => "sum",
        }
    }
}

impl fmt::Display for AggregateOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Cardinality of `delta` as a numeral.
///
/// Only finite sets exist here, so the `#sup` result reserved for infinite
/// sets never arises.
pub fn op_count(delta: &TupleSet) -> GroundTerm {
    GroundTerm::Numeral(BigInt::from(delta.len()))
}

/// The weight of a tuple is its first member when that is a numeral, else 0.
pub fn weight(tuple: &[GroundTerm]) -> BigInt {
    match tuple.first() {
        Some(GroundTerm::Numeral(n)) => n.clone(),
        _ => BigInt::zero(),
    }
}

/// Sum of the weights of the tuples in `delta`.
pub fn op_sum(delta: &TupleSet) -> GroundTerm {
    GroundTerm::Numeral(delta.iter().map(|t| weight(t)).sum())
}
