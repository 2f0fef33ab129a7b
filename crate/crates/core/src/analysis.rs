//! Global variables, set symbols and the target signature of a program.

use std::collections::BTreeSet;

use indexmap::IndexMap;
use sha2::{Digest, Sha256};

use crate::syntax::{
    AggregateElement, AtomicFormula, BasicLiteral, Head, Literal, PredicateSymbol, Program, Rule,
    Variable,
};

/// Variables occurring in the head, in a non-aggregate literal, or in the
/// guard of an aggregate literal. Sorted by name.
pub fn global_vars(rule: &Rule) -> BTreeSet<Variable> {
    let mut out = match &rule.head {
        Head::Atom(a) => a.variables(),
        Head::Falsity => BTreeSet::new(),
    };
    for literal in &rule.body {
        match literal {
            Literal::Basic(l) => out.extend(l.variables()),
            Literal::Aggregate { atom, .. } => atom.guard.collect_variables(&mut out),
        }
    }
    out
}

/// An aggregate element together with those of its variables that are global
/// in the rule it occurs in.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetSymbol {
    pub element: AggregateElement,
    pub globals: Vec<Variable>,
}

impl SetSymbol {
    pub fn new(element: AggregateElement, globals: &BTreeSet<Variable>) -> Self {
        let globals = element
            .variables()
            .into_iter()
            .filter(|v| globals.contains(v))
            .collect();
        SetSymbol { element, globals }
    }

    /// Variables of the element that are not global, sorted by name.
    pub fn locals(&self) -> Vec<Variable> {
        self.element
            .variables()
            .into_iter()
            .filter(|v| !self.globals.contains(v))
            .collect()
    }

    pub fn tuple_arity(&self) -> usize {
        self.element.terms.len()
    }

    fn content_key(&self) -> String {
        let globals: Vec<&str> = self.globals.iter().map(Variable::name).collect();
        format!("{}/{}", self.element, globals.join(","))
    }
}

/// Set symbols of the aggregate literals of `rule`, in occurrence order and
/// without duplicates.
pub fn set_symbols_of(rule: &Rule) -> Vec<SetSymbol> {
    let globals = global_vars(rule);
    let mut out: Vec<SetSymbol> = Vec::new();
    for agg in rule.aggregates() {
        let symbol = SetSymbol::new(agg.element.clone(), &globals);
        if !out.contains(&symbol) {
            out.push(symbol);
        }
    }
    out
}

/// Predicate symbols `P`, set symbols `S` with their short names, and the
/// tuple-constructor arities of the target signature. The comparison
/// predicates, membership, `count` and `sum` are always present and are not
/// stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    pub predicates: BTreeSet<PredicateSymbol>,
    set_symbols: IndexMap<SetSymbol, String>,
    pub tuple_arities: BTreeSet<usize>,
}

impl Signature {
    pub fn set_symbols(&self) -> impl Iterator<Item = (&SetSymbol, &str)> {
        self.set_symbols.iter().map(|(s, n)| (s, n.as_str()))
    }

    pub fn set_symbol_count(&self) -> usize {
        self.set_symbols.len()
    }

    pub fn short_name(&self, symbol: &SetSymbol) -> Option<&str> {
        self.set_symbols.get(symbol).map(String::as_str)
    }

    pub fn set_symbol(&self, short_name: &str) -> Option<&SetSymbol> {
        self.set_symbols
            .iter()
            .find(|(_, n)| *n == short_name)
            .map(|(s, _)| s)
    }

    fn add_rule(&mut self, rule: &Rule) {
        if let Head::Atom(a) = &rule.head {
            self.predicates.insert(a.predicate_symbol());
        }
        for literal in &rule.body {
            match literal {
                Literal::Basic(l) => self.add_atoms(std::slice::from_ref(l)),
                Literal::Aggregate { atom, .. } => self.add_atoms(&atom.element.conditions),
            }
        }
        for symbol in set_symbols_of(rule) {
            if self.set_symbols.contains_key(&symbol) {
                continue;
            }
            self.tuple_arities.insert(symbol.tuple_arity());
            let name = short_name(self.set_symbols.len(), &symbol);
            self.set_symbols.insert(symbol, name);
        }
    }

    fn add_atoms(&mut self, literals: &[BasicLiteral]) {
        for l in literals {
            if let AtomicFormula::Atom(a) = &l.atom {
                self.predicates.insert(a.predicate_symbol());
            }
        }
    }
}

/// `s_<index>_<hash>`: the index is the position in the enumeration, the
/// four hex digits are a content hash of the element and its globals.
fn short_name(index: usize, symbol: &SetSymbol) -> String {
    let digest = Sha256::digest(symbol.content_key().as_bytes());
    format!("s_{index}_{:02x}{:02x}", digest[0], digest[1])
}

/// Signature of the union of `programs`, enumerating set symbols in program
/// order, then rule order, then literal order.
pub fn build_signature<'a>(programs: impl IntoIterator<Item = &'a Program>) -> Signature {
    let mut sig = Signature::default();
    for program in programs {
        for rule in &program.rules {
            sig.add_rule(rule);
        }
    }
    sig
}
