//! Parser for the ASCII formula syntax printed by [`Formula`]'s `Display`.

use crate::syntax::{
    parser::{tokenize, Cursor, Token},
    AggregateOp, GroundTerm, ParseError,
};

use super::{FoTerm, Formula, Predicate, Semantics, SetFn, Sort, Var};

/// Parses a formula. A variable takes the sort of its innermost binder; free
/// variables are general unless annotated (`T:tuple`). `NOT`, `not`,
/// `forall`, `exists` and `in` are reserved.
pub fn parse_formula(source: &str) -> Result<Formula, ParseError> {
    let mut parser = Parser {
        cursor: Cursor::new(tokenize(source)?),
        bound: Vec::new(),
    };
    let f = parser.formula()?;
    if *parser.cursor.peek() != Token::Eof {
        return Err(parser.cursor.unexpected("end of input"));
    }
    Ok(f)
}

pub fn parse_term(source: &str) -> Result<FoTerm, ParseError> {
    let mut parser = Parser {
        cursor: Cursor::new(tokenize(source)?),
        bound: Vec::new(),
    };
    let t = parser.term()?;
    if *parser.cursor.peek() != Token::Eof {
        return Err(parser.cursor.unexpected("end of input"));
    }
    Ok(t)
}

struct Parser {
    cursor: Cursor,
    bound: Vec<Var>,
}

fn is_keyword(name: &str) -> bool {
    matches!(name, "not" | "forall" | "exists" | "in")
}

impl Parser {
    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.implication()?;
        if self.cursor.eat_punct("<->") {
            let rhs = self.implication()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.cursor.eat_punct("->") {
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.conjunction()?;
        while self.cursor.eat_punct("|") {
            f = Formula::or(f, self.conjunction()?);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.unary()?;
        while self.cursor.eat_punct("&") {
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.cursor.peek().clone() {
            Token::Lower(k) if k == "not" => {
                self.cursor.next();
                Ok(Formula::not(self.unary()?))
            }
            Token::Upper(k) if k == "NOT" => {
                self.cursor.next();
                Ok(Formula::strong_neg(self.unary()?))
            }
            Token::Lower(k) if k == "forall" || k == "exists" => {
                self.cursor.next();
                self.quantified(k == "forall")
            }
            _ => self.primary(),
        }
    }

    fn quantified(&mut self, universal: bool) -> Result<Formula, ParseError> {
        let mut vars = Vec::new();
        while let Token::Upper(name) = self.cursor.peek().clone() {
            self.cursor.next();
            let sort = self.sort_annotation()?.unwrap_or(Sort::General);
            vars.push(Var::new(name, sort));
        }
        if vars.is_empty() {
            return Err(self.cursor.unexpected("a variable"));
        }
        self.cursor.expect_punct("(")?;
        let depth = self.bound.len();
        self.bound.extend(vars.iter().cloned());
        let body = self.formula();
        self.bound.truncate(depth);
        let body = body?;
        self.cursor.expect_punct(")")?;
        Ok(if universal {
            Formula::forall(vars, body)
        } else {
            Formula::exists(vars, body)
        })
    }

    fn sort_annotation(&mut self) -> Result<Option<Sort>, ParseError> {
        if !self.cursor.eat_punct(":") {
            return Ok(None);
        }
        let sort = match self.cursor.peek() {
            Token::Lower(s) if s == "general" => Sort::General,
            Token::Lower(s) if s == "tuple" => Sort::Tuple,
            Token::Lower(s) if s == "set" => Sort::Set,
            _ => return Err(self.cursor.unexpected("`general`, `tuple` or `set`")),
        };
        self.cursor.next();
        Ok(Some(sort))
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        match self.cursor.peek().clone() {
            Token::Punct("(") => {
                self.cursor.next();
                let f = self.formula()?;
                self.cursor.expect_punct(")")?;
                Ok(f)
            }
            Token::Hash(h) if h == "false" => {
                self.cursor.next();
                Ok(Formula::Bottom)
            }
            Token::Hash(h) if h == "true" => {
                self.cursor.next();
                Ok(Formula::top())
            }
            Token::Lower(name) if !is_keyword(&name) && !self.at_set_function() => {
                self.cursor.next();
                let hatted = self.cursor.eat_punct("^");
                let args = if self.cursor.at_punct("(") {
                    Some(self.arguments()?)
                } else {
                    None
                };
                if self.at_relation() {
                    let lhs = self.term_from_application(name, hatted, args)?;
                    return self.comparison(lhs);
                }
                let args = args.unwrap_or_default();
                Ok(Formula::Atom {
                    pred: Predicate {
                        name,
                        arity: args.len(),
                        hatted,
                    },
                    args,
                })
            }
            _ => {
                let lhs = self.term()?;
                self.comparison(lhs)
            }
        }
    }

    fn at_relation(&self) -> bool {
        self.cursor.relation().is_some()
            || matches!(self.cursor.peek(), Token::Lower(s) if s == "in")
    }

    fn at_set_function(&self) -> bool {
        matches!(self.cursor.peek(), Token::Lower(s) if s == "cli" || s == "dlv")
            && self.cursor.peek_at(1) == &Token::Punct(".")
    }

    fn comparison(&mut self, lhs: FoTerm) -> Result<Formula, ParseError> {
        if matches!(self.cursor.peek(), Token::Lower(s) if s == "in") {
            self.cursor.next();
            let rhs = self.term()?;
            return Ok(Formula::Member(lhs, rhs));
        }
        let relation = self
            .cursor
            .relation()
            .ok_or_else(|| self.cursor.unexpected("a comparison symbol or `in`"))?;
        self.cursor.next();
        let rhs = self.term()?;
        Ok(Formula::compare(lhs, relation, rhs))
    }

    fn arguments(&mut self) -> Result<Vec<FoTerm>, ParseError> {
        self.cursor.expect_punct("(")?;
        let mut args = Vec::new();
        if !self.cursor.at_punct(")") {
            args.push(self.term()?);
            while self.cursor.eat_punct(",") {
                args.push(self.term()?);
            }
        }
        self.cursor.expect_punct(")")?;
        Ok(args)
    }

    fn term_from_application(
        &self,
        name: String,
        hatted: bool,
        args: Option<Vec<FoTerm>>,
    ) -> Result<FoTerm, ParseError> {
        if hatted {
            return Err(self
                .cursor
                .error(format!("`{name}^` is a predicate, not a term")));
        }
        let Some(mut args) = args else {
            return Ok(FoTerm::Ground(GroundTerm::Symbol(name)));
        };
        match (name.as_str(), args.len()) {
            ("tuple", _) => Ok(FoTerm::Tuple(args)),
            ("count", 1) | ("sum", 1) => Ok(FoTerm::Agg {
                op: if name == "count" {
                    AggregateOp::Count
                } else {
                    AggregateOp::Sum
                },
                set: Box::new(args.pop().expect("one argument")),
            }),
            _ => Err(self.cursor.error(format!(
                "`{name}` with {} arguments is not a term",
                args.len()
            ))),
        }
    }

    fn term(&mut self) -> Result<FoTerm, ParseError> {
        if self.at_set_function() {
            let semantics = match self.cursor.next() {
                Token::Lower(s) if s == "cli" => Semantics::Cli,
                _ => Semantics::Dlv,
            };
            self.cursor.next();
            let name = match self.cursor.next() {
                Token::Lower(name) => name,
                _ => return Err(self.cursor.unexpected("a set symbol name")),
            };
            let hatted = self.cursor.eat_punct("^");
            let args = if self.cursor.at_punct("(") {
                self.arguments()?
            } else {
                Vec::new()
            };
            return Ok(FoTerm::SetApp {
                fun: SetFn {
                    semantics,
                    name,
                    hatted,
                },
                args,
            });
        }
        match self.cursor.peek().clone() {
            Token::Upper(name) => {
                self.cursor.next();
                let annotated = self.sort_annotation()?;
                let sort = self
                    .bound
                    .iter()
                    .rev()
                    .find(|v| v.name == name)
                    .map(|v| v.sort)
                    .or(annotated)
                    .unwrap_or(Sort::General);
                Ok(FoTerm::Var(Var::new(name, sort)))
            }
            Token::Lower(name) if !is_keyword(&name) => {
                self.cursor.next();
                if !self.cursor.at_punct("(") {
                    return Ok(FoTerm::Ground(GroundTerm::Symbol(name)));
                }
                let args = self.arguments()?;
                self.term_from_application(name, false, Some(args))
            }
            _ => Ok(FoTerm::Ground(
                self.cursor
                    .program_term()?
                    .as_ground()
                    .cloned()
                    .ok_or_else(|| self.cursor.unexpected("a term"))?,
            )),
        }
    }
}
