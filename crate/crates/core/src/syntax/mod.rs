//! Source language: terms, programs, and the aggregate operations.

pub mod ast;
pub mod ops;
pub mod parser;
pub mod term;

pub use ast::*;
pub use ops::{op_count, op_sum, weight, AggregateOp, Tuple, TupleSet};
pub use parser::{parse_program, parse_rule, ParseError};
pub use term::{ground_term_cmp, GroundTerm, Relation, Term, Variable};
