//! Lexer and recursive-descent parser for the program language.
//!
//! ```text
//! program    := { rule }
//! rule       := atom "." | [ atom | "#false" ] ":-" body "." | "#false" "."
//! body       := literal { "," literal }
//! literal    := { "not" } ( atom | comparison | aggatom )
//! aggatom    := ("#count" | "#sum") "{" terms [ ":" [ conditions ] ] "}" relop term
//! comparison := term relop term
//! relop      := "=" | "!=" | "<" | ">" | "<=" | ">="
//! term       := integer | lowercase-id | UPPERCASE-ID | "#inf" | "#sup"
//! ```
//!
//! `%` starts a line comment.

use num_bigint::BigInt;
use thiserror::Error;

use super::{ast::*, ops::AggregateOp, term::*};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{column}: lexical error: {message}")]
    Lexical {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{line}:{column}: syntax error: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
}

impl ParseError {
    pub fn location(&self) -> (usize, usize) {
        match self {
            ParseError::Lexical { line, column, .. } | ParseError::Syntax { line, column, .. } => {
                (*line, *column)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Token {
    Lower(String),
    Upper(String),
    Integer(BigInt),
    Hash(String),
    Punct(&'static str),
    Eof,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Lower(s) | Token::Upper(s) => format!("`{s}`"),
            Token::Integer(n) => format!("`{n}`"),
            Token::Hash(s) => format!("`#{s}`"),
            Token::Punct(p) => format!("`{p}`"),
            Token::Eof => "end of input".to_string(),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Spanned {
    pub token: Token,
    pub line: usize,
    pub column: usize,
}

// Longest match first.
const PUNCTUATION: &[&str] = &[
    "<->", ":-", "!=", "<=", ">=", "->", "(", ")", "{", "}", ",", ".", ":", "=", "<", ">", "&",
    "|", "^",
];

/// Splits `source` into tokens. Shared with the formula parser, which uses a
/// few extra punctuation symbols; the program parser rejects those.
pub(crate) fn tokenize(source: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = source.chars().collect();
    let mut tokens = Vec::new();
    let (mut i, mut line, mut column) = (0usize, 1usize, 1usize);

    let advance = |i: &mut usize, line: &mut usize, column: &mut usize, n: usize| {
        for _ in 0..n {
            if chars[*i] == '\n' {
                *line += 1;
                *column = 1;
            } else {
                *column += 1;
            }
            *i += 1;
        }
    };

    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut column, 1);
            continue;
        }
        if c == '%' {
            while i < chars.len() && chars[i] != '\n' {
                advance(&mut i, &mut line, &mut column, 1);
            }
            continue;
        }
        let (start_line, start_column) = (line, column);
        let ident_len = |from: usize| {
            chars[from..]
                .iter()
                .take_while(|c| c.is_ascii_alphanumeric() || **c == '_')
                .count()
        };
        let token = if c.is_ascii_lowercase() || c.is_ascii_uppercase() {
            let len = ident_len(i);
            let text: String = chars[i..i + len].iter().collect();
            advance(&mut i, &mut line, &mut column, len);
            if c.is_ascii_lowercase() {
                Token::Lower(text)
            } else {
                Token::Upper(text)
            }
        } else if c.is_ascii_digit()
            || (c == '-' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()))
        {
            let sign = usize::from(c == '-');
            let len = sign
                + chars[i + sign..]
                    .iter()
                    .take_while(|c| c.is_ascii_digit())
                    .count();
            let text: String = chars[i..i + len].iter().collect();
            advance(&mut i, &mut line, &mut column, len);
            Token::Integer(text.parse().expect("digits form an integer"))
        } else if c == '#' {
            let len = ident_len(i + 1);
            if len == 0 {
                return Err(ParseError::Lexical {
                    line,
                    column,
                    message: "expected a directive name after `#`".into(),
                });
            }
            let text: String = chars[i + 1..i + 1 + len].iter().collect();
            advance(&mut i, &mut line, &mut column, len + 1);
            Token::Hash(text)
        } else if let Some(p) = PUNCTUATION.iter().find(|p| {
            let p: Vec<char> = p.chars().collect();
            chars[i..].starts_with(&p)
        }) {
            advance(&mut i, &mut line, &mut column, p.chars().count());
            Token::Punct(p)
        } else {
            return Err(ParseError::Lexical {
                line,
                column,
                message: format!("unexpected character `{c}`"),
            });
        };
        tokens.push(Spanned {
            token,
            line: start_line,
            column: start_column,
        });
    }
    tokens.push(Spanned {
        token: Token::Eof,
        line,
        column,
    });
    Ok(tokens)
}

pub(crate) struct Cursor {
    tokens: Vec<Spanned>,
    pos: usize,
}

impl Cursor {
    pub(crate) fn new(tokens: Vec<Spanned>) -> Self {
        Cursor { tokens, pos: 0 }
    }

    pub(crate) fn peek(&self) -> &Token {
        &self.tokens[self.pos].token
    }

    pub(crate) fn peek_at(&self, offset: usize) -> &Token {
        let idx = (self.pos + offset).min(self.tokens.len() - 1);
        &self.tokens[idx].token
    }

    pub(crate) fn next(&mut self) -> Token {
        let token = self.tokens[self.pos].token.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        token
    }

    pub(crate) fn at_punct(&self, p: &str) -> bool {
        matches!(self.peek(), Token::Punct(q) if *q == p)
    }

    pub(crate) fn eat_punct(&mut self, p: &str) -> bool {
        if self.at_punct(p) {
            self.next();
            true
        } else {
            false
        }
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> ParseError {
        let here = &self.tokens[self.pos];
        ParseError::Syntax {
            line: here.line,
            column: here.column,
            message: message.into(),
        }
    }

    pub(crate) fn unexpected(&self, expected: &str) -> ParseError {
        self.error(format!(
            "expected {expected}, found {}",
            self.peek().describe()
        ))
    }

    pub(crate) fn expect_punct(&mut self, p: &str) -> Result<(), ParseError> {
        if self.eat_punct(p) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{p}`")))
        }
    }

    pub(crate) fn relation(&self) -> Option<Relation> {
        match self.peek() {
            Token::Punct("=") => Some(Relation::Equal),
            Token::Punct("!=") => Some(Relation::NotEqual),
            Token::Punct("<") => Some(Relation::Less),
            Token::Punct(">") => Some(Relation::Greater),
            Token::Punct("<=") => Some(Relation::LessEqual),
            Token::Punct(">=") => Some(Relation::GreaterEqual),
            _ => None,
        }
    }

    pub(crate) fn is_term_start(&self) -> bool {
        match self.peek() {
            Token::Lower(_) | Token::Upper(_) | Token::Integer(_) => true,
            Token::Hash(h) => h == "inf" || h == "sup",
            _ => false,
        }
    }

    /// integer | lowercase-id | UPPERCASE-ID | #inf | #sup
    pub(crate) fn program_term(&mut self) -> Result<Term, ParseError> {
        let term = match self.peek() {
            Token::Integer(n) => Term::Ground(GroundTerm::Numeral(n.clone())),
            Token::Lower(s) => Term::Ground(GroundTerm::Symbol(s.clone())),
            Token::Upper(s) => Term::Variable(Variable(s.clone())),
            Token::Hash(h) if h == "inf" => Term::Ground(GroundTerm::Infimum),
            Token::Hash(h) if h == "sup" => Term::Ground(GroundTerm::Supremum),
            _ => return Err(self.unexpected("a term")),
        };
        self.next();
        Ok(term)
    }
}

pub fn parse_program(source: &str) -> Result<Program, ParseError> {
    let mut cursor = Cursor::new(tokenize(source)?);
    let mut rules = Vec::new();
    while *cursor.peek() != Token::Eof {
        rules.push(rule(&mut cursor)?);
    }
    Ok(Program { rules })
}

pub fn parse_rule(source: &str) -> Result<Rule, ParseError> {
    let mut cursor = Cursor::new(tokenize(source)?);
    let r = rule(&mut cursor)?;
    if *cursor.peek() != Token::Eof {
        return Err(cursor.unexpected("end of input"));
    }
    Ok(r)
}

fn rule(c: &mut Cursor) -> Result<Rule, ParseError> {
    let head = match c.peek() {
        Token::Punct(":-") => Head::Falsity,
        Token::Hash(h) if h == "false" => {
            c.next();
            Head::Falsity
        }
        Token::Lower(_) => Head::Atom(atom(c)?),
        _ => return Err(c.unexpected("a rule")),
    };
    if c.eat_punct(".") {
        return Ok(Rule { head, body: vec![] });
    }
    c.expect_punct(":-")?;
    let mut body = vec![literal(c)?];
    while c.eat_punct(",") {
        body.push(literal(c)?);
    }
    c.expect_punct(".")?;
    Ok(Rule { head, body })
}

fn atom(c: &mut Cursor) -> Result<Atom, ParseError> {
    let predicate = match c.next() {
        Token::Lower(name) if name != "not" => name,
        _ => return Err(c.unexpected("a predicate name")),
    };
    let mut terms = Vec::new();
    if c.eat_punct("(") {
        terms.push(c.program_term()?);
        while c.eat_punct(",") {
            terms.push(c.program_term()?);
        }
        c.expect_punct(")")?;
    }
    Ok(Atom { predicate, terms })
}

fn sign(c: &mut Cursor) -> Result<Sign, ParseError> {
    let mut count = 0;
    while matches!(c.peek(), Token::Lower(s) if s == "not") {
        // `not` followed by a relation symbol is a constant named `not`
        if c.peek_at(1) == &Token::Punct("(") || matches!(c.peek_at(1), Token::Punct(_)) {
            break;
        }
        c.next();
        count += 1;
    }
    Sign::from_count(count)
        .ok_or_else(|| c.error("a literal may be preceded by at most two occurrences of `not`"))
}

fn literal(c: &mut Cursor) -> Result<Literal, ParseError> {
    let sign = sign(c)?;
    if let Token::Hash(h) = c.peek() {
        let op = match h.as_str() {
            "count" => Some(AggregateOp::Count),
            "sum" => Some(AggregateOp::Sum),
            _ => None,
        };
        if let Some(op) = op {
            c.next();
            return Ok(Literal::Aggregate {
                sign,
                atom: aggregate(c, op)?,
            });
        }
    }
    Ok(Literal::Basic(BasicLiteral {
        sign,
        atom: atomic_formula(c)?,
    }))
}

fn basic_literal(c: &mut Cursor) -> Result<BasicLiteral, ParseError> {
    let sign = sign(c)?;
    if matches!(c.peek(), Token::Hash(h) if h == "count" || h == "sum") {
        return Err(c.error("aggregates cannot be nested inside aggregate elements"));
    }
    Ok(BasicLiteral {
        sign,
        atom: atomic_formula(c)?,
    })
}

fn atomic_formula(c: &mut Cursor) -> Result<AtomicFormula, ParseError> {
    let is_atom = matches!(c.peek(), Token::Lower(_))
        && (c.peek_at(1) == &Token::Punct("(") || {
            c.pos += 1;
            let rel = c.relation().is_none();
            c.pos -= 1;
            rel
        });
    if is_atom {
        return Ok(AtomicFormula::Atom(atom(c)?));
    }
    if !c.is_term_start() {
        return Err(c.unexpected("an atom, comparison or aggregate"));
    }
    let lhs = c.program_term()?;
    let relation = c
        .relation()
        .ok_or_else(|| c.unexpected("a comparison symbol"))?;
    c.next();
    let rhs = c.program_term()?;
    Ok(AtomicFormula::Comparison(Comparison { lhs, relation, rhs }))
}

fn aggregate(c: &mut Cursor, op: AggregateOp) -> Result<AggregateAtom, ParseError> {
    c.expect_punct("{")?;
    let mut terms = vec![c.program_term()?];
    while c.eat_punct(",") {
        terms.push(c.program_term()?);
    }
    let mut conditions = Vec::new();
    if c.eat_punct(":") && !c.at_punct("}") {
        conditions.push(basic_literal(c)?);
        while c.eat_punct(",") {
            conditions.push(basic_literal(c)?);
        }
    }
    c.expect_punct("}")?;
    let relation = c.relation().ok_or_else(|| {
        c.unexpected("a comparison symbol after the aggregate (guards go on the right)")
    })?;
    c.next();
    let guard = c.program_term()?;
    Ok(AggregateAtom {
        op,
        element: AggregateElement { terms, conditions },
        relation,
        guard,
    })
}
