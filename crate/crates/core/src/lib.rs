//! Translation of logic programs with `#count` and `#sum` aggregates into
//! many-sorted first-order theories under the clingo and dlv semantics,
//! bounded Here-and-There model checking of the translations, and reduction
//! of strong equivalence to classical first-order validity.

pub mod analysis;
pub mod classical;
pub mod folog;
pub mod semantics;
pub mod syntax;
pub mod translate;

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] syntax::ParseError),
    #[error(transparent)]
    FirstOrder(#[from] folog::FoError),
    #[error(transparent)]
    Translate(#[from] translate::TranslateError),
    #[error(transparent)]
    Semantics(#[from] semantics::SemanticsError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
